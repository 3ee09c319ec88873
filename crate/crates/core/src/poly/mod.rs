//! Sparse multivariate polynomials over [`CycNum`].
//!
//! A polynomial lives in a [`VarSet`]: `n` base variables repeated over one,
//! two or three alphabets (`x`, `y`, `z`). The alphabets are laid out
//! contiguously, so `y_i` has index `n + i` and `z_i` has index `2n + i`.

mod det;
mod diff;

pub use det::{determinant, hessian};
pub use diff::{difference_derivative, divide_by_difference};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{CycField, CycNum, Rational};

const ALPHABET: [char; 3] = ['x', 'y', 'z'];

/// `copies` alphabets of `n` variables each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarSet {
    n: usize,
    copies: usize,
}

impl VarSet {
    pub fn new(n: usize, copies: usize) -> Self {
        assert!((1..=ALPHABET.len()).contains(&copies), "1 to 3 alphabets");
        VarSet { n, copies }
    }

    /// The plain `x` alphabet.
    pub fn single(n: usize) -> Self {
        Self::new(n, 1)
    }

    pub fn base_len(&self) -> usize {
        self.n
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn len(&self) -> usize {
        self.n * self.copies
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of variable `i` (0-based) of alphabet `copy`.
    pub fn index(&self, copy: usize, i: usize) -> usize {
        debug_assert!(copy < self.copies && i < self.n);
        copy * self.n + i
    }

    /// The same base variables with one more alphabet appended.
    pub fn extended(&self) -> Self {
        Self::new(self.n, self.copies + 1)
    }

    pub fn name(&self, idx: usize) -> String {
        format!(
            "{}{}",
            ALPHABET[idx / self.n.max(1)],
            idx % self.n.max(1) + 1
        )
    }
}

/// Exponent vector, one entry per variable of the ambient [`VarSet`].
///
/// Ordered by total degree, then lexicographically with the highest variable
/// index most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(len: usize, idx: usize, exp: u32) -> Self {
        let mut m = Self::one(len);
        m.0[idx] = exp;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, idx: usize) -> u32 {
        self.0[idx]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Support: indices with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Text form over a [`VarSet`], `1` for the unit monomial.
    pub fn display(&self, vars: &VarSet) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.support()
            .map(|i| match self.0[i] {
                1 => vars.name(i),
                e => format!("{}^{}", vars.name(i), e),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with coefficients in a fixed cyclotomic field.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: VarSet,
    field: Arc<CycField>,
    terms: BTreeMap<Monomial, CycNum>,
}

impl Poly {
    pub fn zero(vars: VarSet, field: &Arc<CycField>) -> Self {
        Poly {
            vars,
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarSet, c: CycNum) -> Self {
        let mut p = Self::zero(vars, c.field());
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(vars: VarSet, field: &Arc<CycField>) -> Self {
        Self::constant(vars, CycNum::one(field))
    }

    pub fn var(vars: VarSet, field: &Arc<CycField>, idx: usize) -> Self {
        Self::term(vars, Monomial::var(vars.len(), idx, 1), CycNum::one(field))
    }

    pub fn term(vars: VarSet, m: Monomial, c: CycNum) -> Self {
        let mut p = Self::zero(vars, c.field());
        p.add_term(m, c);
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&CycNum> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: CycNum) {
        debug_assert_eq!(m.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &CycNum) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars, &self.field);
        }
        Poly {
            vars: self.vars,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> Poly {
        self.scale(&CycNum::from_rational(&self.field, c))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.vars, &self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_ambient(&self, other: &Poly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ambient(other)?;
        let mut out = Poly::zero(self.vars, &self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn partial_derivative(&self, idx: usize) -> Result<Poly> {
        if idx >= self.vars.len() {
            return Err(Error::UnknownVariable(idx));
        }
        let mut out = Poly::zero(self.vars, &self.field);
        for (m, c) in &self.terms {
            let e = m.exp(idx);
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] -= 1;
            out.add_term(Monomial(exps), c.scale_int(e as i64));
        }
        Ok(out)
    }

    /// Composition `p(images[0], images[1], …)`; every image lives in `target`.
    pub fn substitute(&self, target: VarSet, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.vars.len() {
            return Err(Error::UnknownVariable(images.len().min(self.vars.len())));
        }
        if images.iter().any(|q| q.vars != target) {
            return Err(Error::AmbientMismatch);
        }
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|q| vec![Poly::one(target, &self.field), q.clone()])
            .collect();
        let mut out = Poly::zero(target, &self.field);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (idx, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[idx].len() <= e as usize {
                    let next = &powers[idx][powers[idx].len() - 1] * &images[idx];
                    powers[idx].push(next);
                }
                t = &t * &powers[idx][e as usize];
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Substitution where variable `k` maps to `scales[k] · target_var[k]`
    /// or to zero; the fast path for diagonal actions and restrictions.
    pub fn substitute_linear(&self, target: VarSet, images: &[LinearImage]) -> Result<Poly> {
        if images.len() != self.vars.len() {
            return Err(Error::UnknownVariable(images.len().min(self.vars.len())));
        }
        let mut out = Poly::zero(target, &self.field);
        'terms: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = vec![0u32; target.len()];
            for (idx, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &images[idx] {
                    LinearImage::Zero => continue 'terms,
                    LinearImage::Var(v) => {
                        if *v >= target.len() {
                            return Err(Error::UnknownVariable(*v));
                        }
                        exps[*v] += e;
                    }
                    LinearImage::Scaled(s, v) => {
                        if *v >= target.len() {
                            return Err(Error::UnknownVariable(*v));
                        }
                        exps[*v] += e;
                        coeff = &coeff * &s.pow(e as i64)?;
                    }
                }
            }
            out.add_term(Monomial(exps), coeff);
        }
        Ok(out)
    }

    /// The same polynomial viewed in a larger [`VarSet`] with the same base
    /// size (the first alphabets are kept in place).
    pub fn widen(&self, target: VarSet) -> Result<Poly> {
        if target.base_len() != self.vars.base_len() || target.copies() < self.vars.copies() {
            return Err(Error::AmbientMismatch);
        }
        let images: Vec<LinearImage> = (0..self.vars.len()).map(LinearImage::Var).collect();
        self.substitute_linear(target, &images)
    }

    /// Moves coefficients into a larger cyclotomic field.
    pub fn embed(&self, field: &Arc<CycField>) -> Result<Poly> {
        let mut out = Poly::zero(self.vars, field);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.embed(field)?);
        }
        Ok(out)
    }

    /// Sets the listed variables to zero.
    pub fn restrict_zero(&self, zeroed: &[usize]) -> Poly {
        let mut out = Poly::zero(self.vars, &self.field);
        for (m, c) in &self.terms {
            if zeroed.iter().all(|&i| m.exp(i) == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Weighted degree if all terms share one.
    pub fn homogeneous_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Variables that occur in some term.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0))
            .collect()
    }
}

/// Image of one variable under [`Poly::substitute_linear`].
#[derive(Debug, Clone)]
pub enum LinearImage {
    Zero,
    Var(usize),
    Scaled(CycNum, usize),
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs)
            .expect("adding polynomials over different variable sets")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs)
            .expect("multiplying polynomials over different variable sets")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono = m.display(&self.vars);
                match (c.is_one(), m.is_one()) {
                    (true, _) => mono,
                    (false, true) => format!("({})", c),
                    (false, false) => format!("({})*{}", c, mono),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self)
    }
}
