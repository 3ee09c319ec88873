//! The orbifold Jacobian algebra: structure classes on single atoms, glued
//! across atoms with Koszul and reordering signs.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{ProductTable, Side};
use crate::error::{Error, Result};
use crate::milnor::{AlgebraClass, Sectors};
use crate::poly::{LinearImage, Poly, VarSet};
use crate::scalar::{rat, root_of_unity, CycNum};
use crate::symmetry::{Group, GroupElement};

/// Sign of the permutation sorting `a` followed by `b`; the two index sets
/// must be disjoint.
pub fn kuenneth_sign(a: &[usize], b: &[usize]) -> Result<i32> {
    if a.iter().any(|x| b.contains(x)) {
        return Err(Error::OverlappingSupports(a.to_vec(), b.to_vec()));
    }
    let mut seq = a.to_vec();
    seq.extend_from_slice(b);
    Ok(permutation_sign(&seq))
}

/// Sign of the permutation sorting a sequence of distinct values.
pub fn permutation_sign(seq: &[usize]) -> i32 {
    let inversions = (0..seq.len())
        .flat_map(|i| (i + 1..seq.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| seq[i] > seq[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^{d(d-1)/2}·e[-age(g)/2]`, the scalar in front of `H_{g,g^{-1}}`.
pub fn pairing_scalar(g: &GroupElement, field: &Arc<crate::scalar::CycField>) -> Result<CycNum> {
    let d = g.codim() as i64;
    let phase = root_of_unity(&(-g.age() * rat(1, 2)), field)?;
    Ok(if (d * (d - 1) / 2) % 2 == 0 {
        phase
    } else {
        -phase
    })
}

/// Structure class of a single invertible polynomial under the atomic rule:
/// units for the identity, the hessian-type class for inverse pairs and zero
/// otherwise.
pub fn atomic_structure_class(
    sectors: &Sectors,
    g: &GroupElement,
    h: &GroupElement,
) -> Result<Option<AlgebraClass>> {
    let gh = g.mul(h);
    if g.is_identity() || h.is_identity() {
        return Ok(Some(sectors.of(&gh)?.one()));
    }
    if !gh.is_identity() {
        return Ok(None);
    }
    let (class, _) = sectors.h_class(g)?;
    Ok(Some(class.scale(&pairing_scalar(g, sectors.field())?)))
}

/// Per-atom data for the Künneth assembly.
pub struct OrbifoldJacobian {
    sectors: Arc<Sectors>,
    atoms: Vec<(Vec<usize>, Arc<Sectors>)>,
}

impl OrbifoldJacobian {
    pub fn new(sectors: &Arc<Sectors>) -> Self {
        let f = sectors.polynomial();
        let atoms = (0..f.atoms().len())
            .map(|k| {
                let local = f.atom_polynomial(k);
                (
                    f.atoms()[k].vars.clone(),
                    Arc::new(Sectors::new(&local, sectors.field())),
                )
            })
            .collect();
        OrbifoldJacobian {
            sectors: sectors.clone(),
            atoms,
        }
    }

    /// Global indices of the moved variables, atom by atom, each atom in its
    /// own variable order.
    fn atomwise_moved(&self, g: &GroupElement) -> Vec<usize> {
        self.atoms
            .iter()
            .flat_map(|(vars, _)| vars.iter().copied().filter(|&v| !g.alpha(v).is_zero()))
            .collect()
    }

    /// Global variables and sector cache of each atom.
    pub fn atoms(&self) -> &[(Vec<usize>, Arc<Sectors>)] {
        &self.atoms
    }

    /// `C_{g,h}` in `Jac(f^{gh})`, or `None` when the product vanishes.
    pub fn structure_class(
        &self,
        g: &GroupElement,
        h: &GroupElement,
    ) -> Result<Option<AlgebraClass>> {
        self.assemble(g, h, |_, sectors, g, h| {
            atomic_structure_class(sectors, g, h)
        })
    }

    /// Tensor product of per-atom classes, with the reordering signs of the
    /// moved variables and the Koszul signs of passing `v_{h_μ}` over `v_{g_ν}`.
    /// `atomic(k, sectors, g_k, h_k)` supplies the class of atom `k`.
    pub fn assemble<F>(
        &self,
        g: &GroupElement,
        h: &GroupElement,
        atomic: F,
    ) -> Result<Option<AlgebraClass>>
    where
        F: Fn(usize, &Sectors, &GroupElement, &GroupElement) -> Result<Option<AlgebraClass>>,
    {
        let field = self.sectors.field();
        let vars = self.sectors.vars();
        let mut product = Poly::one(vars, field);
        let mut sign = permutation_sign(&self.atomwise_moved(g))
            * permutation_sign(&self.atomwise_moved(h))
            * permutation_sign(&self.atomwise_moved(&g.mul(h)));
        let mut parity_h_before = 0;
        for (k, (atom_vars, atom_sectors)) in self.atoms.iter().enumerate() {
            let g_local = g.project(atom_vars);
            let h_local = h.project(atom_vars);
            if g_local.codim() % 2 == 1 && parity_h_before % 2 == 1 {
                sign = -sign;
            }
            parity_h_before += h_local.codim();
            let Some(class) = atomic(k, atom_sectors, &g_local, &h_local)? else {
                return Ok(None);
            };
            let sector = atom_sectors.of(&g_local.mul(&h_local))?;
            let local = sector.lift(&class);
            let images: Vec<LinearImage> = atom_vars.iter().map(|&v| LinearImage::Var(v)).collect();
            product = &product * &local.substitute_linear(VarSet::single(vars.len()), &images)?;
        }
        if sign < 0 {
            product = -&product;
        }
        let target = self.sectors.of(&g.mul(h))?;
        Ok(Some(target.normal_form(&product)))
    }

    /// The inverse-pair class computed for `f` as a whole, without splitting
    /// into atoms.
    pub fn direct_pairing_class(&self, g: &GroupElement) -> Result<AlgebraClass> {
        let (class, _) = self.sectors.h_class(g)?;
        Ok(class.scale(&pairing_scalar(g, self.sectors.field())?))
    }

    pub fn build_table(&self, group: &Group, parallel: bool) -> Result<ProductTable> {
        ProductTable::build(Side::Orbifold, group, &self.sectors, parallel, |g, h| {
            self.structure_class(g, h)
        })
    }
}
