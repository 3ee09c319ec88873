//! Sector Jacobian algebras `Jac(f^g)`.
//!
//! The Jacobian ideal of a weighted-homogeneous polynomial is graded, so the
//! quotient is computed one weighted degree at a time: the relations
//! `m·∂_i f^g` spanning a degree are row-reduced over Q with the columns in
//! descending order (lexicographic, last variable most significant), and the
//! non-pivot monomials form the basis.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::invpoly::InvertiblePolynomial;
use crate::linalg;
use crate::poly::{hessian, Monomial, Poly, VarSet};
use crate::scalar::{CycField, CycNum, Rational};
use crate::symmetry::GroupElement;

/// `f^g`: `f` with the moved variables set to zero.
pub fn restrict(f: &Poly, g: &GroupElement) -> Poly {
    f.restrict_zero(&g.moved())
}

/// Coordinates of a class over its sector's basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraClass {
    fixed: Vec<usize>,
    coeffs: Vec<CycNum>,
}

impl AlgebraClass {
    /// Surviving variables of the sector the class lives in.
    pub fn sector(&self) -> &[usize] {
        &self.fixed
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycNum::is_zero)
    }

    pub fn scale(&self, c: &CycNum) -> AlgebraClass {
        AlgebraClass {
            fixed: self.fixed.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &AlgebraClass) -> Result<AlgebraClass> {
        if self.fixed != other.fixed {
            return Err(Error::AmbientMismatch);
        }
        Ok(AlgebraClass {
            fixed: self.fixed.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

impl fmt::Debug for AlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraClass{:?}{:?}", self.fixed, self.coeffs)
    }
}

/// Normal form of one monomial: `(basis index, coefficient)` pairs.
type Reduction = Vec<(usize, Rational)>;

/// `Jac(f^g)` for the sector with surviving variables `fixed`.
pub struct SectorAlgebra {
    fixed: Vec<usize>,
    vars: VarSet,
    field: Arc<CycField>,
    weights: Vec<i64>,
    restricted: Poly,
    basis: Vec<Monomial>,
    top_degree: i64,
    reducer: HashMap<Monomial, Reduction>,
    hess: AlgebraClass,
}

impl SectorAlgebra {
    /// Builds the sector of `f` whose surviving variables are `fixed`.
    pub fn build(f: &InvertiblePolynomial, fixed: &[usize], field: &Arc<CycField>) -> Result<Self> {
        let n = f.n();
        let vars = VarSet::single(n);
        let weights = f.weights().to_vec();
        let d = f.degree();
        let moved: Vec<usize> = (0..n).filter(|i| !fixed.contains(i)).collect();
        let restricted = f.poly_in(field).restrict_zero(&moved);
        let top_degree: i64 = fixed.iter().map(|&i| d - 2 * weights[i]).sum();
        let partials: Vec<Poly> = fixed
            .iter()
            .map(|&i| restricted.partial_derivative(i))
            .collect::<Result<_>>()?;

        let mut basis = Vec::new();
        let mut reducer = HashMap::new();
        for delta in 0..=top_degree {
            let mut cols = monomials_of_degree(n, fixed, &weights, delta);
            cols.sort_by(|a, b| lex_last_major(b, a));
            if cols.is_empty() {
                continue;
            }
            let col_of: HashMap<&Monomial, usize> =
                cols.iter().enumerate().map(|(k, m)| (m, k)).collect();
            let mut rows: linalg::Matrix = Vec::new();
            for (k, &i) in fixed.iter().enumerate() {
                let shift = d - weights[i];
                if delta < shift {
                    continue;
                }
                for m in monomials_of_degree(n, fixed, &weights, delta - shift) {
                    let mut row = vec![Rational::zero(); cols.len()];
                    for (pm, c) in partials[k].terms() {
                        let col = col_of[&m.mul(pm)];
                        row[col] += c.as_rational().expect("f has rational coefficients");
                    }
                    rows.push(row);
                }
            }
            let red = linalg::rref(rows, cols.len());
            let mut is_pivot = vec![false; cols.len()];
            for &p in &red.pivots {
                is_pivot[p] = true;
            }
            let mut basis_index = HashMap::new();
            for (c, m) in cols.iter().enumerate() {
                if !is_pivot[c] {
                    basis_index.insert(c, basis.len());
                    reducer.insert(
                        m.clone(),
                        vec![(basis.len(), Rational::from_integer(1.into()))],
                    );
                    basis.push(m.clone());
                }
            }
            for (row, &p) in red.rows.iter().zip(&red.pivots) {
                let nf: Reduction = row
                    .iter()
                    .enumerate()
                    .filter(|(c, v)| !is_pivot[*c] && !v.is_zero())
                    .map(|(c, v)| (basis_index[&c], -v.clone()))
                    .collect();
                reducer.insert(cols[p].clone(), nf);
            }
        }

        let mut sector = SectorAlgebra {
            fixed: fixed.to_vec(),
            vars,
            field: field.clone(),
            weights,
            restricted,
            basis,
            top_degree,
            reducer,
            hess: AlgebraClass {
                fixed: fixed.to_vec(),
                coeffs: Vec::new(),
            },
        };
        sector.check_milnor_number(d)?;
        let hess = hessian(&sector.restricted, fixed)?;
        sector.hess = sector.normal_form(&hess);
        if sector.hess.is_zero() {
            return Err(Error::DegenerateSector(format!(
                "hessian of the sector {:?} vanishes in its Jacobian algebra",
                fixed
            )));
        }
        Ok(sector)
    }

    fn check_milnor_number(&self, d: i64) -> Result<()> {
        let socle = self
            .basis
            .iter()
            .filter(|m| m.weighted_degree(&self.weights) == self.top_degree)
            .count();
        if socle != 1 {
            return Err(Error::DegenerateSector(format!(
                "sector {:?} has a {}-dimensional socle",
                self.fixed, socle
            )));
        }
        let expected = self
            .fixed
            .iter()
            .map(|&i| Rational::new((d - self.weights[i]).into(), self.weights[i].into()))
            .product::<Rational>();
        if Rational::from_integer(self.basis.len().into()) != expected {
            return Err(Error::DegenerateSector(format!(
                "sector {:?} has {} basis monomials, the weights predict {}",
                self.fixed,
                self.basis.len(),
                expected
            )));
        }
        Ok(())
    }

    pub fn fixed(&self) -> &[usize] {
        &self.fixed
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn restricted_poly(&self) -> &Poly {
        &self.restricted
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn milnor_number(&self) -> usize {
        self.basis.len()
    }

    pub fn top_degree(&self) -> i64 {
        self.top_degree
    }

    /// `[hess(f^g)]`.
    pub fn hess_class(&self) -> &AlgebraClass {
        &self.hess
    }

    /// Index of the basis monomial spanning the socle.
    pub fn socle_index(&self) -> usize {
        self.basis
            .iter()
            .position(|m| m.weighted_degree(&self.weights) == self.top_degree)
            .expect("socle is one-dimensional")
    }

    pub fn zero(&self) -> AlgebraClass {
        AlgebraClass {
            fixed: self.fixed.clone(),
            coeffs: vec![CycNum::zero(&self.field); self.basis.len()],
        }
    }

    pub fn one(&self) -> AlgebraClass {
        self.basis_class(0)
    }

    pub fn basis_class(&self, k: usize) -> AlgebraClass {
        let mut c = self.zero();
        c.coeffs[k] = CycNum::one(&self.field);
        c
    }

    /// Class of `p`; variables outside the sector are set to zero first.
    pub fn normal_form(&self, p: &Poly) -> AlgebraClass {
        debug_assert_eq!(p.vars().len(), self.vars.len());
        let mut out = self.zero();
        for (m, c) in p.terms() {
            if m.support().any(|i| !self.fixed.contains(&i)) {
                continue;
            }
            if m.weighted_degree(&self.weights) > self.top_degree {
                continue;
            }
            for (k, r) in &self.reducer[m] {
                out.coeffs[*k] += &c.scale(r);
            }
        }
        out
    }

    /// The class as a polynomial in the basis monomials.
    pub fn lift(&self, a: &AlgebraClass) -> Poly {
        let mut p = Poly::zero(self.vars, &self.field);
        for (m, c) in self.basis.iter().zip(&a.coeffs) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn mul(&self, a: &AlgebraClass, b: &AlgebraClass) -> AlgebraClass {
        self.normal_form(&(&self.lift(a) * &self.lift(b)))
    }

    pub fn display(&self, a: &AlgebraClass) -> String {
        let parts: Vec<String> = self
            .basis
            .iter()
            .zip(&a.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| {
                let mono = if m.is_one() {
                    "1".to_string()
                } else {
                    m.display(&self.vars)
                };
                if c.is_one() {
                    format!("[{}]", mono)
                } else {
                    format!("({})*[{}]", c, mono)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for SectorAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SectorAlgebra")
            .field("fixed", &self.fixed)
            .field("basis", &self.basis)
            .field("top_degree", &self.top_degree)
            .finish()
    }
}

/// The unique `λ` with `a = λ·b`.
pub fn socle_ratio(a: &AlgebraClass, b: &AlgebraClass) -> Result<CycNum> {
    if a.fixed != b.fixed {
        return Err(Error::AmbientMismatch);
    }
    let k = b
        .coeffs
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::ZeroDenominator)?;
    let lambda = a.coeffs[k].div(&b.coeffs[k])?;
    if a.coeffs
        .iter()
        .zip(&b.coeffs)
        .any(|(x, y)| *x != y * &lambda)
    {
        return Err(Error::NotProportional);
    }
    Ok(lambda)
}

/// All sectors of one polynomial over one field, built on demand.
pub struct Sectors {
    f: InvertiblePolynomial,
    field: Arc<CycField>,
    poly: Poly,
    cache: Mutex<HashMap<Vec<usize>, Arc<SectorAlgebra>>>,
}

impl Sectors {
    pub fn new(f: &InvertiblePolynomial, field: &Arc<CycField>) -> Self {
        Sectors {
            f: f.clone(),
            field: field.clone(),
            poly: f.poly_in(field),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn polynomial(&self) -> &InvertiblePolynomial {
        &self.f
    }

    /// `f` with coefficients in the run field.
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn vars(&self) -> VarSet {
        VarSet::single(self.f.n())
    }

    pub fn get(&self, fixed: &[usize]) -> Result<Arc<SectorAlgebra>> {
        if let Some(s) = self.cache.lock().unwrap().get(fixed) {
            return Ok(s.clone());
        }
        let built = Arc::new(SectorAlgebra::build(&self.f, fixed, &self.field)?);
        Ok(self
            .cache
            .lock()
            .unwrap()
            .entry(fixed.to_vec())
            .or_insert(built)
            .clone())
    }

    pub fn of(&self, g: &GroupElement) -> Result<Arc<SectorAlgebra>> {
        self.get(&g.fixed())
    }

    pub fn identity(&self) -> Result<Arc<SectorAlgebra>> {
        self.get(&(0..self.f.n()).collect::<Vec<_>>())
    }

    /// `(H_{g,g^{-1}}, m̃)`: the class `[m̃·det(∂²f)_{I_g^c}]` in `Jac(f)`,
    /// with `m̃` fixed by matching hessian socles.
    pub fn h_class(&self, g: &GroupElement) -> Result<(AlgebraClass, CycNum)> {
        let jac = self.identity()?;
        let one = CycNum::one(&self.field);
        if g.is_identity() {
            return Ok((jac.one(), one));
        }
        let sector = self.of(g)?;
        let moved = g.moved();
        let d_poly = hessian(&self.poly, &moved)?;
        let hess_g = hessian(sector.restricted_poly(), sector.fixed())?;
        let lhs = jac.normal_form(&(&hess_g * &d_poly));
        let rhs = jac.hess_class();
        let ratio = socle_ratio(rhs, &lhs).map_err(|_| {
            Error::SocleMismatch(format!(
                "hess(f^g)·det is not a nonzero multiple of hess(f) for g = {}",
                g
            ))
        })?;
        let mu_ratio = Rational::new(
            (sector.milnor_number() as i64).into(),
            (jac.milnor_number() as i64).into(),
        );
        let m_tilde = ratio.scale(&mu_ratio);
        let h = jac.normal_form(&d_poly.scale(&m_tilde));
        Ok((h, m_tilde))
    }
}

/// Exponent vectors supported on `vars` with weighted degree `delta`.
pub fn monomials_of_degree(n: usize, vars: &[usize], weights: &[i64], delta: i64) -> Vec<Monomial> {
    fn rec(
        vars: &[usize],
        weights: &[i64],
        left: i64,
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        let Some((&v, rest)) = vars.split_first() else {
            if left == 0 {
                out.push(Monomial::from_exponents(exps.clone()));
            }
            return;
        };
        let w = weights[v];
        let mut e = 0;
        while e * w <= left {
            exps[v] = e as u32;
            rec(rest, weights, left - e * w, exps, out);
            e += 1;
        }
        exps[v] = 0;
    }
    let mut out = Vec::new();
    if delta >= 0 {
        rec(vars, weights, delta, &mut vec![0; n], &mut out);
    }
    out
}

/// Lexicographic comparison with the last variable most significant.
fn lex_last_major(a: &Monomial, b: &Monomial) -> Ordering {
    a.exponents().iter().rev().cmp(b.exponents().iter().rev())
}
