//! Diagonal symmetry groups of an invertible polynomial.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::invpoly::{AtomKind, InvertiblePolynomial};
use crate::linalg;
use crate::scalar::{frac, parse_rational, root_of_unity, CycField, CycNum, Rational};

/// `(e[α_1], …, e[α_n])` with every `α_i` in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    alphas: Vec<Rational>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            alphas: vec![Rational::zero(); n],
        }
    }

    /// Reduces every coordinate modulo 1.
    pub fn new(alphas: Vec<Rational>) -> Self {
        GroupElement {
            alphas: alphas.iter().map(frac).collect(),
        }
    }

    /// Parses `"a/b,c/d,..."`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != n {
            return Err(Error::BadGroupElement(format!(
                "'{}' has {} coordinates, expected {}",
                text.trim(),
                parts.len(),
                n
            )));
        }
        let alphas = parts
            .iter()
            .map(|p| {
                parse_rational(p).ok_or_else(|| {
                    Error::BadGroupElement(format!("'{}' is not a rational", p.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement::new(alphas))
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn alpha(&self, i: usize) -> &Rational {
        &self.alphas[i]
    }

    pub fn is_identity(&self) -> bool {
        self.alphas.iter().all(Zero::is_zero)
    }

    /// Indices with `α_i = 0`: the variables surviving on the fixed locus.
    pub fn fixed(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.alphas[i].is_zero())
            .collect()
    }

    /// Indices with `α_i ≠ 0`.
    pub fn moved(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| !self.alphas[i].is_zero())
            .collect()
    }

    /// Codimension of the fixed locus.
    pub fn codim(&self) -> usize {
        self.alphas.iter().filter(|a| !a.is_zero()).count()
    }

    pub fn age(&self) -> Rational {
        self.alphas.iter().sum()
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement::new(
            self.alphas
                .iter()
                .zip(&other.alphas)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement::new(self.alphas.iter().map(|a| -a).collect())
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.alphas
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
            .to_u64()
            .expect("order fits in u64")
    }

    /// `e[α_i]` in `field`.
    pub fn eigenvalue(&self, i: usize, field: &Arc<CycField>) -> Result<CycNum> {
        root_of_unity(&self.alphas[i], field)
    }

    /// Restriction to a subset of coordinates, in the given order.
    pub fn project(&self, vars: &[usize]) -> GroupElement {
        GroupElement {
            alphas: vars.iter().map(|&v| self.alphas[v].clone()).collect(),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alphas.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite group of diagonal symmetries, elements sorted lexicographically.
/// Equality ignores the recorded generators.
#[derive(Debug, Clone)]
pub struct Group {
    n: usize,
    elements: Vec<GroupElement>,
    generators: Vec<GroupElement>,
}

impl Group {
    pub fn trivial(n: usize) -> Self {
        Group {
            n,
            elements: vec![GroupElement::identity(n)],
            generators: Vec::new(),
        }
    }

    /// Closure of `generators` under multiplication.
    fn closure(n: usize, generators: Vec<GroupElement>) -> Self {
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let id = GroupElement::identity(n);
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(g) = queue.pop_front() {
            for s in &generators {
                let p = g.mul(s);
                if seen.insert(p.clone()) {
                    queue.push_back(p);
                }
            }
        }
        Group {
            n,
            elements: seen.into_iter().collect(),
            generators,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index_of(g).is_some()
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u32 {
        self.elements
            .iter()
            .fold(1u64, |acc, g| acc.lcm(&g.order()))
            .try_into()
            .expect("exponent fits in u32")
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.elements == other.elements
    }
}

impl Eq for Group {}

/// `E·α ∈ Z^n`.
pub fn is_symmetry(ip: &InvertiblePolynomial, g: &GroupElement) -> bool {
    g.n() == ip.n()
        && ip.exponents().rows.iter().all(|row| {
            let s: Rational = row
                .iter()
                .zip(g.alphas())
                .map(|(&e, a)| a * Rational::from_integer(BigInt::from(e)))
                .sum();
            s.is_integer()
        })
}

/// Checks the fixed-locus shape: on each chain atom the moved variables form
/// a head-first prefix, on each loop atom they are all or nothing.
pub fn check_fixed_locus(ip: &InvertiblePolynomial, g: &GroupElement) -> Result<()> {
    for atom in ip.atoms() {
        let moved: Vec<bool> = atom.vars.iter().map(|&v| !g.alpha(v).is_zero()).collect();
        let k = moved.iter().take_while(|&&m| m).count();
        let ok = match atom.kind {
            AtomKind::Chain => moved[k..].iter().all(|&m| !m),
            AtomKind::Loop => moved.iter().all(|&m| m == moved[0]),
        };
        if !ok {
            return Err(Error::Internal(format!(
                "element {} has an irregular fixed locus on atom {}",
                g, atom
            )));
        }
    }
    Ok(())
}

/// `G_f`, generated by the columns of `E^{-1}`.
pub fn maximal_group(ip: &InvertiblePolynomial) -> Result<Group> {
    let n = ip.n();
    let inv =
        linalg::inverse(&ip.exponents().as_rational()).ok_or(Error::SingularExponentMatrix)?;
    let generators: Vec<GroupElement> = (0..n)
        .map(|j| GroupElement::new((0..n).map(|i| inv[i][j].clone()).collect()))
        .filter(|g| !g.is_identity())
        .collect();
    let group = Group::closure(n, generators);
    let expected = ip.exponents().determinant().unsigned_abs() as usize;
    if group.order() != expected {
        return Err(Error::Internal(format!(
            "enumerated {} symmetries, expected |det E| = {}",
            group.order(),
            expected
        )));
    }
    for g in group.elements() {
        debug_assert!(is_symmetry(ip, g));
        check_fixed_locus(ip, g)?;
    }
    Ok(group)
}

/// Subgroup generated by `gens`, which must be symmetries of `ip`.
pub fn generated_subgroup(ip: &InvertiblePolynomial, gens: Vec<GroupElement>) -> Result<Group> {
    for g in &gens {
        if g.n() != ip.n() {
            return Err(Error::BadGroupElement(format!(
                "{} has {} coordinates, expected {}",
                g,
                g.n(),
                ip.n()
            )));
        }
        if !is_symmetry(ip, g) {
            return Err(Error::NotASymmetry(g.to_string()));
        }
    }
    Ok(Group::closure(ip.n(), gens))
}

/// Parses `"a/b,c/d;e/f,g/h;..."` and generates the subgroup.
pub fn parse_subgroup(ip: &InvertiblePolynomial, text: &str) -> Result<Group> {
    let gens = text
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| GroupElement::parse(s, ip.n()))
        .collect::<Result<Vec<_>>>()?;
    generated_subgroup(ip, gens)
}

/// Elements of integer age, i.e. of determinant 1.
pub fn sl_filter(group: &Group) -> Group {
    let elements: Vec<GroupElement> = group
        .elements()
        .iter()
        .filter(|g| g.age().is_integer())
        .cloned()
        .collect();
    Group {
        n: group.n,
        generators: elements
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect(),
        elements,
    }
}

/// Conductor of the run field: four times the exponent of `G_f`, enough for
/// every `e[α_i/2]` and for `e[1/4]`.
pub fn minimal_conductor(gf: &Group) -> u32 {
    4 * gf.exponent()
}
