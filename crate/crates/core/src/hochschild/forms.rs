//! The hessian-type forms entering the cup product.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::Result;
use crate::poly::{difference_derivative, LinearImage, Poly, VarSet};
use crate::scalar::{CycField, CycNum};
use crate::symmetry::GroupElement;

/// `(i, j, coefficient)` for the term `coefficient·θ_i ⊗ θ_j`.
pub type TensorTerm = (usize, usize, Poly);

/// `(j, i, coefficient)` with `j < i` for the term `coefficient·θ_j θ_i`.
pub type WedgeTerm = (usize, usize, Poly);

/// `Σ_{j ≤ i} ∇_j^{y→(y,z)} ∇_i^{x→(x,y)}(f) θ_i ⊗ θ_j` over `C[x,y,z]`.
pub fn three_point_form(f: &Poly) -> Result<Vec<TensorTerm>> {
    let n = f.vars().base_len();
    let mut out = Vec::new();
    for i in 0..n {
        let first = difference_derivative(f, i)?;
        for j in 0..=i {
            let second = difference_derivative(&first, j)?;
            if !second.is_zero() {
                out.push((i, j, second));
            }
        }
    }
    Ok(out)
}

/// `x_k ↦ e[α_k] x_k` images into the `x` alphabet.
fn scaled_images(g: &GroupElement, field: &Arc<CycField>) -> Result<Vec<LinearImage>> {
    (0..g.n())
        .map(|k| {
            if g.alpha(k).is_zero() {
                Ok(LinearImage::Var(k))
            } else {
                Ok(LinearImage::Scaled(g.eigenvalue(k, field)?, k))
            }
        })
        .collect()
}

/// The form on `{y = g(x), z = x}`.
pub fn restrict_three_point(form: &[TensorTerm], g: &GroupElement) -> Result<Vec<TensorTerm>> {
    let Some((_, _, first)) = form.first() else {
        return Ok(Vec::new());
    };
    let n = g.n();
    let field = first.field();
    let mut images: Vec<LinearImage> = (0..n).map(LinearImage::Var).collect();
    images.extend(scaled_images(g, field)?);
    images.extend((0..n).map(LinearImage::Var));
    let target = VarSet::single(n);
    let mut out = Vec::new();
    for (i, j, p) in form {
        let r = p.substitute_linear(target, &images)?;
        if !r.is_zero() {
            out.push((*i, *j, r));
        }
    }
    Ok(out)
}

/// `H_{f,g}(x) = Σ_{j<i ∈ I_g^c} 1/(1-g_j) ∇_j^{x→(x,x^g)} ∇_i^{x→(x,g(x))}(f) θ_j θ_i`.
pub fn boundary_form(f: &Poly, g: &GroupElement) -> Result<Vec<WedgeTerm>> {
    let n = g.n();
    let field = f.field();
    let x = VarSet::single(n);
    let moved = g.moved();
    let mut at_g: Vec<LinearImage> = (0..n).map(LinearImage::Var).collect();
    at_g.extend(scaled_images(g, field)?);
    let mut at_fixed: Vec<LinearImage> = (0..n).map(LinearImage::Var).collect();
    at_fixed.extend((0..n).map(|k| {
        if g.alpha(k).is_zero() {
            LinearImage::Var(k)
        } else {
            LinearImage::Zero
        }
    }));
    let mut out = Vec::new();
    for &i in &moved {
        let inner = difference_derivative(f, i)?.substitute_linear(x, &at_g)?;
        for &j in moved.iter().filter(|&&j| j < i) {
            let outer = difference_derivative(&inner, j)?.substitute_linear(x, &at_fixed)?;
            let coeff = (&CycNum::one(field) - &g.eigenvalue(j, field)?).inv()?;
            let term = outer.scale(&coeff);
            if !term.is_zero() {
                out.push((j, i, term));
            }
        }
    }
    Ok(out)
}

/// Substitutes `x ↦ g(x)` in a boundary form.
pub fn shift_boundary_form(form: &[WedgeTerm], g: &GroupElement) -> Result<Vec<WedgeTerm>> {
    let Some((_, _, first)) = form.first() else {
        return Ok(Vec::new());
    };
    let images = scaled_images(g, first.field())?;
    form.iter()
        .map(|(j, i, p)| Ok((*j, *i, p.substitute_linear(VarSet::single(g.n()), &images)?)))
        .collect()
}
