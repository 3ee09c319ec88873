//! Closed-form determinant expressions for `σ_{g,g^{-1}}` on a single chain
//! or loop, used as an independent oracle for the general formula.

use crate::error::{Error, Result};
use crate::invpoly::{AtomKind, InvertiblePolynomial};
use crate::milnor::{AlgebraClass, Sectors};
use crate::poly::{determinant, Monomial, Poly, VarSet};
use crate::scalar::CycNum;
use crate::symmetry::GroupElement;

/// `(-1)^{d(d-1)/2} [det M_g]` for a polynomial consisting of one atom, in
/// the atom's own variable order. `d` is `d_g` for chains and `n` for loops.
pub fn closed_form_sigma(sectors: &Sectors, g: &GroupElement) -> Result<AlgebraClass> {
    let f: &InvertiblePolynomial = sectors.polynomial();
    let [atom] = f.atoms() else {
        return Err(Error::UnclassifiableShape(
            "closed forms need a single atom".into(),
        ));
    };
    if g.is_identity() {
        return Err(Error::DegenerateSector("closed forms need g ≠ id".into()));
    }
    if atom.vars.iter().enumerate().any(|(k, &v)| k != v) {
        return Err(Error::UnclassifiableShape(
            "atom variables must be x1..xn in order".into(),
        ));
    }
    let n = f.n();
    let field = sectors.field();
    let vars = VarSet::single(n);
    let one = CycNum::one(field);
    let a: Vec<u32> = atom.exps.clone();
    let size = match atom.kind {
        AtomKind::Chain => g.codim(),
        AtomKind::Loop => n,
    };
    let gs: Vec<CycNum> = (0..n)
        .map(|k| g.eigenvalue(k, field))
        .collect::<Result<_>>()?;
    // x_i^e, with x_n := 1 past the tail of a chain
    let mono = |pairs: &[(usize, u32)]| {
        let mut exps = vec![0u32; n];
        for &(i, e) in pairs {
            match atom.kind {
                AtomKind::Chain if i >= n => {}
                _ => exps[i % n] += e,
            }
        }
        Monomial::from_exponents(exps)
    };
    let term = |m: Monomial, c: CycNum| Poly::term(vars, m, c);

    let mut matrix = vec![vec![Poly::zero(vars, field); size]; size];
    for i in 0..size {
        let gi = &gs[i];
        let inv_gm1 = (gi - &one).inv()?;
        let inv_1mg = -&inv_gm1;
        if a[i] >= 2 {
            let geo = (&one - &gi.pow(a[i] as i64)?).div(&(&one - gi))?;
            let c = -&(&inv_gm1 * &(&geo - &CycNum::from_int(field, a[i] as i64)));
            let p = term(mono(&[(i, a[i] - 2), (i + 1, 1)]), c);
            matrix[i][i] = &matrix[i][i] + &p;
        }
        if i + 1 < size {
            let c = &gi.pow(a[i] as i64)? * &inv_1mg;
            let p = term(mono(&[(i, a[i] - 1)]), c);
            matrix[i][i + 1] = &matrix[i][i + 1] + &p;
        }
        if i >= 1 {
            let prev = &gs[i - 1];
            let c = (prev - &one).inv()?;
            let p = term(mono(&[(i - 1, a[i - 1] - 1)]), c);
            matrix[i][i - 1] = &matrix[i][i - 1] + &p;
        }
    }
    if atom.kind == AtomKind::Loop {
        let last = n - 1;
        let gn = &gs[last];
        let inv_gm1 = (gn - &one).inv()?;
        let corner_low = term(
            mono(&[(last, a[last] - 1)]),
            &gn.pow(a[last] as i64)? * &(-&inv_gm1),
        );
        let corner_high = term(mono(&[(last, a[last] - 1)]), inv_gm1);
        matrix[last][0] = &matrix[last][0] + &corner_low;
        matrix[0][last] = &matrix[0][last] + &corner_high;
    }
    let det = determinant(&matrix, vars, field)?;
    let jac = sectors.identity()?;
    let class = jac.normal_form(&det);
    let d = size as i64;
    Ok(if (d * (d - 1) / 2) % 2 == 0 {
        class
    } else {
        class.scale(&CycNum::from_int(field, -1))
    })
}
