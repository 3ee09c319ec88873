//! Invertible polynomials: exponent matrix, weights and the decomposition
//! into chain and loop atoms.

mod parse;

pub use parse::{parse, parse_monomials};

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Monomial, Poly, VarSet};
use crate::scalar::{CycField, CycNum, Rational};

/// Row `i` holds the exponent vector of monomial `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentMatrix {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl ExponentMatrix {
    pub fn as_rational(&self) -> linalg::Matrix {
        linalg::from_ints(&self.rows)
    }

    pub fn determinant(&self) -> i64 {
        linalg::determinant(&self.as_rational())
            .to_integer()
            .to_i64()
            .expect("determinant fits in i64")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AtomKind {
    Chain,
    Loop,
}

/// One Thom–Sebastiani summand.
///
/// A chain realises `x_{v1}^{a1} x_{v2} + … + x_{vm}^{am}`, a loop
/// `x_{v1}^{a1} x_{v2} + … + x_{vm}^{am} x_{v1}`. `vars` are global 0-based
/// indices in that order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Atom {
    pub kind: AtomKind,
    pub vars: Vec<usize>,
    pub exps: Vec<u32>,
}

impl Atom {
    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// Monomials of the atom in local variables `0..m`.
    pub fn local_monomials(&self) -> Vec<Monomial> {
        let m = self.len();
        (0..m)
            .map(|i| {
                let mut e = vec![0u32; m];
                e[i] = self.exps[i];
                match self.kind {
                    AtomKind::Chain if i + 1 < m => e[i + 1] += 1,
                    AtomKind::Loop => e[(i + 1) % m] += 1,
                    _ => {}
                }
                Monomial::from_exponents(e)
            })
            .collect()
    }

    /// |det| of the atom's exponent matrix.
    pub fn abs_determinant(&self) -> i64 {
        let prod: i64 = self.exps.iter().map(|&a| a as i64).product();
        match self.kind {
            AtomKind::Chain => prod,
            AtomKind::Loop => {
                let sign = if self.len() % 2 == 0 { 1 } else { -1 };
                (prod - sign).abs()
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            AtomKind::Chain => "chain",
            AtomKind::Loop => "loop",
        };
        let vars: Vec<String> = self.vars.iter().map(|v| format!("x{}", v + 1)).collect();
        let exps: Vec<String> = self.exps.iter().map(|a| a.to_string()).collect();
        write!(f, "{} ({}) a=({})", kind, vars.join(","), exps.join(","))
    }
}

/// A classified invertible polynomial with coefficients 1.
#[derive(Debug, Clone)]
pub struct InvertiblePolynomial {
    poly: Poly,
    exponents: ExponentMatrix,
    weights: Vec<i64>,
    degree: i64,
    atoms: Vec<Atom>,
}

impl InvertiblePolynomial {
    pub fn parse(text: &str) -> Result<Self> {
        let (n, monomials) = parse_monomials(text)?;
        parse(text)?;
        classify_monomials(n, &monomials)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn n(&self) -> usize {
        self.exponents.n
    }

    pub fn exponents(&self) -> &ExponentMatrix {
        &self.exponents
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Index of the atom containing global variable `v`.
    pub fn atom_of(&self, v: usize) -> usize {
        self.atoms
            .iter()
            .position(|a| a.vars.contains(&v))
            .expect("atoms partition the variables")
    }

    /// The atom as a standalone invertible polynomial in its own variables
    /// (local index `k` is global variable `atom.vars[k]`).
    pub fn atom_polynomial(&self, idx: usize) -> InvertiblePolynomial {
        let atom = &self.atoms[idx];
        classify_monomials(atom.len(), &atom.local_monomials())
            .expect("atoms of an invertible polynomial are invertible")
    }

    /// The polynomial with coefficients moved into `field`.
    pub fn poly_in(&self, field: &std::sync::Arc<CycField>) -> Poly {
        self.poly
            .embed(field)
            .expect("rational polynomial embeds anywhere")
    }
}

/// Monomials in exponent-matrix row order, so the text parses back to the
/// same matrix.
impl fmt::Display for InvertiblePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.poly.vars();
        let parts: Vec<String> = self
            .exponents
            .rows
            .iter()
            .map(|row| {
                Monomial::from_exponents(row.iter().map(|&e| e as u32).collect()).display(vars)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Certifies that `p` is invertible and decomposes it.
pub fn classify(p: &Poly) -> Result<InvertiblePolynomial> {
    if p.terms().any(|(_, c)| !c.is_one()) {
        return Err(Error::NonUnitCoefficient(0));
    }
    let monomials: Vec<Monomial> = p.terms().map(|(m, _)| m.clone()).collect();
    classify_monomials(p.vars().base_len(), &monomials)
}

pub(crate) fn classify_monomials(n: usize, monomials: &[Monomial]) -> Result<InvertiblePolynomial> {
    if monomials.len() != n {
        return Err(Error::NotSquare {
            monomials: monomials.len(),
            vars: n,
        });
    }
    let rows: Vec<Vec<i64>> = monomials
        .iter()
        .map(|m| m.exponents().iter().map(|&e| e as i64).collect())
        .collect();
    let exponents = ExponentMatrix { n, rows };
    let e_rat = exponents.as_rational();
    if linalg::determinant(&e_rat).is_zero() {
        return Err(Error::SingularExponentMatrix);
    }

    // E w = 1, then clear denominators
    let inv = linalg::inverse(&e_rat).ok_or(Error::SingularExponentMatrix)?;
    let ones = vec![crate::scalar::int(1); n];
    let w = linalg::mat_vec(&inv, &ones);
    if w.iter().any(|x| !x.is_positive()) {
        return Err(Error::NonPositiveWeights);
    }
    let d = w
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let degree = d.to_i64().expect("degree fits in i64");
    let weights: Vec<i64> = w
        .iter()
        .map(|x| {
            (x * Rational::from_integer(d.clone()))
                .to_integer()
                .to_i64()
                .unwrap()
        })
        .collect();
    if let Some(v) = weights.iter().position(|&wi| wi >= degree) {
        return Err(Error::WeightNotBelowDegree { var: v + 1, degree });
    }

    let atoms = decompose(n, monomials)?;
    let field = CycField::get(1);
    let mut poly = Poly::zero(VarSet::single(n), &field);
    for m in monomials {
        poly.add_term(m.clone(), CycNum::one(&field));
    }
    Ok(InvertiblePolynomial {
        poly,
        exponents,
        weights,
        degree,
        atoms,
    })
}

/// Owner/next candidates per monomial: `x_o^a x_next`, or `x_o^a` with
/// `next == o`.
fn candidates(m: &Monomial) -> Result<Vec<(usize, usize)>> {
    let support: Vec<usize> = m.support().collect();
    match support.as_slice() {
        [v] => Ok(vec![(*v, *v)]),
        [u, v] => {
            let mut c = Vec::new();
            if m.exp(*v) == 1 {
                c.push((*u, *v));
            }
            if m.exp(*u) == 1 {
                c.push((*v, *u));
            }
            if c.is_empty() {
                return Err(Error::UnclassifiableShape(format!(
                    "monomial {} is neither x^a*y nor x^a",
                    m.display(&VarSet::single(m.len()))
                )));
            }
            Ok(c)
        }
        _ => Err(Error::UnclassifiableShape(format!(
            "monomial {} has {} variables",
            m.display(&VarSet::single(m.len())),
            support.len()
        ))),
    }
}

fn decompose(n: usize, monomials: &[Monomial]) -> Result<Vec<Atom>> {
    let cands: Vec<Vec<(usize, usize)>> =
        monomials.iter().map(candidates).collect::<Result<_>>()?;
    let mut choice = vec![None; n];
    let mut owned = vec![false; n];
    search(0, monomials, &cands, &mut choice, &mut owned)
        .ok_or_else(|| Error::UnclassifiableShape("monomials do not form chains and loops".into()))
}

fn search(
    row: usize,
    monomials: &[Monomial],
    cands: &[Vec<(usize, usize)>],
    choice: &mut Vec<Option<(usize, usize, u32)>>,
    owned: &mut Vec<bool>,
) -> Option<Vec<Atom>> {
    if row == monomials.len() {
        // choice is indexed by owner variable
        return build_atoms(choice);
    }
    for &(o, nx) in &cands[row] {
        if owned[o] {
            continue;
        }
        owned[o] = true;
        choice[o] = Some((o, nx, monomials[row].exp(o)));
        if let Some(atoms) = search(row + 1, monomials, cands, choice, owned) {
            return Some(atoms);
        }
        owned[o] = false;
        choice[o] = None;
    }
    None
}

fn build_atoms(choice: &[Option<(usize, usize, u32)>]) -> Option<Vec<Atom>> {
    let n = choice.len();
    let next: Vec<usize> = choice.iter().map(|c| c.unwrap().1).collect();
    let exp: Vec<u32> = choice.iter().map(|c| c.unwrap().2).collect();
    let mut indeg = vec![0usize; n];
    for v in 0..n {
        if next[v] != v {
            indeg[next[v]] += 1;
        }
    }
    if indeg.iter().any(|&k| k > 1) {
        return None;
    }
    let mut seen = vec![false; n];
    let mut atoms = Vec::new();
    for head in 0..n {
        if indeg[head] != 0 || seen[head] {
            continue;
        }
        let mut vars = vec![head];
        seen[head] = true;
        let mut cur = head;
        while next[cur] != cur {
            cur = next[cur];
            if seen[cur] {
                return None;
            }
            seen[cur] = true;
            vars.push(cur);
        }
        let exps = vars.iter().map(|&v| exp[v]).collect();
        atoms.push(Atom {
            kind: AtomKind::Chain,
            vars,
            exps,
        });
    }
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut vars = vec![start];
        seen[start] = true;
        let mut cur = next[start];
        while cur != start {
            if seen[cur] {
                return None;
            }
            seen[cur] = true;
            vars.push(cur);
            cur = next[cur];
        }
        if vars.len() < 2 {
            return None;
        }
        let exps = vars.iter().map(|&v| exp[v]).collect();
        atoms.push(Atom {
            kind: AtomKind::Loop,
            vars,
            exps,
        });
    }
    atoms.sort_by_key(|a| *a.vars.iter().min().unwrap());
    Some(atoms)
}
