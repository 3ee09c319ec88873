use std::sync::Arc;

use super::{Poly, VarSet};
use crate::error::{Error, Result};
use crate::scalar::CycField;

/// Determinant by cofactor expansion along the first row. The empty matrix
/// has determinant 1.
pub fn determinant(matrix: &[Vec<Poly>], vars: VarSet, field: &Arc<CycField>) -> Result<Poly> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::ShapeMismatch);
    }
    if matrix.iter().flatten().any(|p| *p.vars() != vars) {
        return Err(Error::AmbientMismatch);
    }
    let rows: Vec<usize> = (0..n).collect();
    Ok(cofactor(matrix, &rows, &mut vec![false; n], vars, field))
}

fn cofactor(
    matrix: &[Vec<Poly>],
    rows: &[usize],
    used_cols: &mut Vec<bool>,
    vars: VarSet,
    field: &Arc<CycField>,
) -> Poly {
    let Some((&row, rest)) = rows.split_first() else {
        return Poly::one(vars, field);
    };
    let mut acc = Poly::zero(vars, field);
    let mut sign_neg = false;
    for col in 0..used_cols.len() {
        if used_cols[col] {
            continue;
        }
        let entry = &matrix[row][col];
        if !entry.is_zero() {
            used_cols[col] = true;
            let minor = cofactor(matrix, rest, used_cols, vars, field);
            used_cols[col] = false;
            let t = entry * &minor;
            acc = if sign_neg { &acc - &t } else { &acc + &t };
        }
        sign_neg = !sign_neg;
    }
    acc
}

/// `det(∂²p / ∂x_i ∂x_j)` over the listed variable indices.
pub fn hessian(p: &Poly, indices: &[usize]) -> Result<Poly> {
    let firsts: Vec<Poly> = indices
        .iter()
        .map(|&i| p.partial_derivative(i))
        .collect::<Result<_>>()?;
    let matrix: Vec<Vec<Poly>> = firsts
        .iter()
        .map(|d| indices.iter().map(|&j| d.partial_derivative(j)).collect())
        .collect::<Result<_>>()?;
    determinant(&matrix, *p.vars(), p.field())
}
