//! G-graded, Z/2-graded twisted algebras `⊕_g Jac(f^g)·v_g`.
//!
//! Both sides of the comparison share this representation: one structure
//! class per ordered pair of group elements, with products of general
//! elements obtained by lifting basis monomials, multiplying and reducing in
//! the target sector.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::milnor::{AlgebraClass, SectorAlgebra, Sectors};
use crate::scalar::{frac, root_of_unity, CycNum, Rational};
use crate::symmetry::{Group, GroupElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Orbifold,
    Hochschild,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Orbifold => "orbifold",
            Side::Hochschild => "hochschild",
        })
    }
}

/// Sum of sector components, keyed by group element index; zero components
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwistedElement {
    components: BTreeMap<usize, AlgebraClass>,
}

impl TwistedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(g: usize, class: AlgebraClass) -> Self {
        let mut e = Self::zero();
        e.add_component(g, class);
        e
    }

    pub fn components(&self) -> &BTreeMap<usize, AlgebraClass> {
        &self.components
    }

    pub fn component(&self, g: usize) -> Option<&AlgebraClass> {
        self.components.get(&g)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add_component(&mut self, g: usize, class: AlgebraClass) {
        let sum = match self.components.remove(&g) {
            Some(old) => old.add(&class).expect("components of one sector"),
            None => class,
        };
        if !sum.is_zero() {
            self.components.insert(g, sum);
        }
    }

    pub fn add(&self, other: &TwistedElement) -> TwistedElement {
        let mut out = self.clone();
        for (g, c) in &other.components {
            out.add_component(*g, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CycNum) -> TwistedElement {
        let mut out = Self::zero();
        for (g, a) in &self.components {
            out.add_component(*g, a.scale(c));
        }
        out
    }
}

/// Structure classes `C_{g,h}` over a group `G`: `[φ]v_g ∘ [ψ]v_h =
/// [φ·ψ·C_{g,h}] v_{gh}`, with `None` for a vanishing product.
pub struct ProductTable {
    side: Side,
    group: Group,
    sectors: Arc<Sectors>,
    sector_of: Vec<Arc<SectorAlgebra>>,
    product_index: Vec<Vec<usize>>,
    entries: Vec<Vec<Option<AlgebraClass>>>,
}

impl ProductTable {
    /// Evaluates `entry(g, h)` for every ordered pair, in parallel when asked.
    pub fn build<F>(
        side: Side,
        group: &Group,
        sectors: &Arc<Sectors>,
        parallel: bool,
        entry: F,
    ) -> Result<Self>
    where
        F: Fn(&GroupElement, &GroupElement) -> Result<Option<AlgebraClass>> + Sync,
    {
        let elements = group.elements();
        let sector_of = elements
            .iter()
            .map(|g| sectors.of(g))
            .collect::<Result<Vec<_>>>()?;
        let product_index: Vec<Vec<usize>> = elements
            .iter()
            .map(|g| {
                elements
                    .iter()
                    .map(|h| group.index_of(&g.mul(h)).expect("group is closed"))
                    .collect()
            })
            .collect();
        let pairs: Vec<(usize, usize)> = (0..elements.len())
            .flat_map(|i| (0..elements.len()).map(move |j| (i, j)))
            .collect();
        let compute = |&(i, j): &(usize, usize)| entry(&elements[i], &elements[j]);
        let flat: Vec<Option<AlgebraClass>> = if parallel {
            pairs.par_iter().map(compute).collect::<Result<_>>()?
        } else {
            pairs.iter().map(compute).collect::<Result<_>>()?
        };
        let mut entries = vec![Vec::with_capacity(elements.len()); elements.len()];
        for ((i, _), e) in pairs.into_iter().zip(flat) {
            entries[i].push(e.filter(|c| !c.is_zero()));
        }
        Ok(ProductTable {
            side,
            group: group.clone(),
            sectors: sectors.clone(),
            sector_of,
            product_index,
            entries,
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn sectors(&self) -> &Arc<Sectors> {
        &self.sectors
    }

    pub fn sector(&self, g: usize) -> &Arc<SectorAlgebra> {
        &self.sector_of[g]
    }

    pub fn product_index(&self, g: usize, h: usize) -> usize {
        self.product_index[g][h]
    }

    pub fn entry(&self, g: usize, h: usize) -> Option<&AlgebraClass> {
        self.entries[g][h].as_ref()
    }

    pub fn identity_index(&self) -> usize {
        self.group
            .index_of(&GroupElement::identity(self.group.n()))
            .expect("groups contain the identity")
    }

    fn element(&self, g: usize) -> &GroupElement {
        &self.group.elements()[g]
    }

    /// `(-1)^{d_g}` parity of the sector.
    pub fn parity(&self, g: usize) -> usize {
        self.element(g).codim() % 2
    }

    /// All `(sector, basis index)` pairs.
    pub fn basis(&self) -> Vec<(usize, usize)> {
        (0..self.group.order())
            .flat_map(|g| (0..self.sector_of[g].milnor_number()).map(move |k| (g, k)))
            .collect()
    }

    pub fn basis_element(&self, g: usize, k: usize) -> TwistedElement {
        TwistedElement::single(g, self.sector_of[g].basis_class(k))
    }

    pub fn unit(&self) -> TwistedElement {
        let id = self.identity_index();
        TwistedElement::single(id, self.sector_of[id].one())
    }

    pub fn mul(&self, a: &TwistedElement, b: &TwistedElement) -> TwistedElement {
        let mut out = TwistedElement::zero();
        for (&g, x) in &a.components {
            for (&h, y) in &b.components {
                let Some(c) = self.entry(g, h) else { continue };
                let gh = self.product_index(g, h);
                let target = &self.sector_of[gh];
                let p =
                    &(&self.sector_of[g].lift(x) * &self.sector_of[h].lift(y)) * &target.lift(c);
                out.add_component(gh, target.normal_form(&p));
            }
        }
        out
    }

    /// Eigenvalue of `h` on the basis vector `k` of sector `g`:
    /// `e[Σ_i m_i α_i(h) − Σ_{i ∈ I_g^c} α_i(h)]` for basis monomial `m`.
    pub fn character(&self, h: &GroupElement, g: usize, k: usize) -> CycNum {
        let m = &self.sector_of[g].basis()[k];
        let mut angle: Rational = (0..h.n())
            .map(|i| h.alpha(i) * Rational::from_integer(m.exp(i).into()))
            .sum();
        for i in self.element(g).moved() {
            angle -= h.alpha(i);
        }
        root_of_unity(&frac(&angle), self.sectors.field()).expect("conductor covers the group")
    }

    /// Action of `h` on a twisted element.
    pub fn act(&self, h: &GroupElement, a: &TwistedElement) -> TwistedElement {
        let mut out = TwistedElement::zero();
        for (&g, x) in &a.components {
            let mut y = self.sector_of[g].zero();
            for (k, c) in x.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let scaled = self.sector_of[g]
                        .basis_class(k)
                        .scale(&(c * &self.character(h, g, k)));
                    y = y.add(&scaled).expect("same sector");
                }
            }
            out.add_component(g, y);
        }
        out
    }

    /// Basis vectors fixed by every element of the group.
    pub fn invariant_basis(&self) -> Vec<(usize, usize)> {
        self.basis()
            .into_iter()
            .filter(|&(g, k)| {
                self.group
                    .elements()
                    .iter()
                    .all(|h| self.character(h, g, k).is_one())
            })
            .collect()
    }

    /// `(1/|G|) Σ_h tr(h)`, computed independently of [`Self::invariant_basis`].
    pub fn burnside_dimension(&self) -> Rational {
        let field = self.sectors.field();
        let mut total = CycNum::zero(field);
        for h in self.group.elements() {
            for (g, k) in self.basis() {
                total += &self.character(h, g, k);
            }
        }
        let total = total.as_rational().unwrap_or_else(Rational::zero);
        total / Rational::from_integer(self.group.order().into())
    }

    /// Products of invariant basis vectors, expressed in the invariant basis.
    pub fn invariant_table(&self) -> std::result::Result<InvariantTable, String> {
        let basis = self.invariant_basis();
        let mut products = Vec::new();
        for &(g1, k1) in &basis {
            let mut row = Vec::new();
            for &(g2, k2) in &basis {
                let p = self.mul(&self.basis_element(g1, k1), &self.basis_element(g2, k2));
                let mut coords = Vec::new();
                for (&g, c) in p.components() {
                    for (k, v) in c.coeffs().iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let idx = basis.iter().position(|&b| b == (g, k)).ok_or_else(|| {
                            format!(
                                "product of invariants leaves the invariant subspace in sector {}",
                                self.element(g)
                            )
                        })?;
                        coords.push((idx, v.clone()));
                    }
                }
                row.push(coords);
            }
            products.push(row);
        }
        Ok(InvariantTable { basis, products })
    }

    /// `v_id` is a two-sided unit.
    pub fn check_unit(&self) -> std::result::Result<(), String> {
        let unit = self.unit();
        for (g, k) in self.basis() {
            let b = self.basis_element(g, k);
            if self.mul(&unit, &b) != b || self.mul(&b, &unit) != b {
                return Err(format!(
                    "unit fails on basis vector {} of sector {}",
                    k,
                    self.element(g)
                ));
            }
        }
        Ok(())
    }

    /// `a∘b = (-1)^{d_g d_h} (g^*b)∘a` on basis vectors.
    pub fn check_twisted_commutativity(&self) -> std::result::Result<(), String> {
        let basis = self.basis();
        let minus = CycNum::from_int(self.sectors.field(), -1);
        for &(g, k) in &basis {
            let a = self.basis_element(g, k);
            for &(h, l) in &basis {
                let b = self.basis_element(h, l);
                let mut rhs = self.mul(&self.act(self.element(g), &b), &a);
                if self.parity(g) * self.parity(h) == 1 {
                    rhs = rhs.scale(&minus);
                }
                if self.mul(&a, &b) != rhs {
                    return Err(format!(
                        "twisted commutativity fails for sectors {} and {}",
                        self.element(g),
                        self.element(h)
                    ));
                }
            }
        }
        Ok(())
    }

    /// `h^*(a∘b) = h^*a ∘ h^*b` on basis vectors, for every `h`.
    pub fn check_invariance(&self) -> std::result::Result<(), String> {
        let basis = self.basis();
        for h in self.group.elements() {
            for &(g1, k1) in &basis {
                let a = self.basis_element(g1, k1);
                let ha = self.act(h, &a);
                for &(g2, k2) in &basis {
                    let b = self.basis_element(g2, k2);
                    if self.act(h, &self.mul(&a, &b)) != self.mul(&ha, &self.act(h, &b)) {
                        return Err(format!(
                            "product of sectors {} and {} is not invariant under {}",
                            self.element(g1),
                            self.element(g2),
                            h
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `(a∘b)∘c = a∘(b∘c)` on all basis triples.
    pub fn check_associativity(&self) -> std::result::Result<(), String> {
        let basis = self.basis();
        let elems: Vec<TwistedElement> = basis
            .iter()
            .map(|&(g, k)| self.basis_element(g, k))
            .collect();
        let products: Vec<Vec<TwistedElement>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| self.mul(a, b)).collect())
            .collect();
        let failure = (0..elems.len()).into_par_iter().find_map_any(|i| {
            for j in 0..elems.len() {
                for (k, c) in elems.iter().enumerate() {
                    let left = self.mul(&products[i][j], c);
                    let right = self.mul(&elems[i], &products[j][k]);
                    if left != right {
                        return Some(format!(
                            "associativity fails for sectors {}, {}, {}",
                            self.element(basis[i].0),
                            self.element(basis[j].0),
                            self.element(basis[k].0)
                        ));
                    }
                }
            }
            None
        });
        failure.map_or(Ok(()), Err)
    }
}

/// Multiplication table of the invariant subalgebra: `products[i][j]` lists
/// `(index, coefficient)` pairs over `basis`.
#[derive(Debug, Clone)]
pub struct InvariantTable {
    pub basis: Vec<(usize, usize)>,
    pub products: Vec<Vec<Vec<(usize, CycNum)>>>,
}
