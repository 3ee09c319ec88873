//! Difference derivatives ∇_i.
//!
//! For `p` whose last alphabet is `u`, `∇_i(p) = (l_i(p) - l_{i+1}(p)) / (u_i - v_i)`
//! where `v` is a fresh alphabet and `l_i` replaces `u_1..u_{i-1}` by
//! `v_1..v_{i-1}`. Applied to a polynomial in `x` this is `∇^{x→(x,y)}`; applied
//! to a polynomial in `(x, y)` it is `∇^{y→(y,z)}` with `x` as parameters.

use super::{LinearImage, Monomial, Poly, VarSet};
use crate::error::{Error, Result};

/// ∇_i on the last alphabet of `p`; `i` is 0-based.
pub fn difference_derivative(p: &Poly, i: usize) -> Result<Poly> {
    let vars = *p.vars();
    let n = vars.base_len();
    if i >= n {
        return Err(Error::UnknownVariable(i));
    }
    if vars.copies() >= 3 {
        return Err(Error::AmbientMismatch);
    }
    let active = vars.copies() - 1;
    let target = vars.extended();
    let shifted = |upto: usize| -> Result<Poly> {
        let images: Vec<LinearImage> = (0..vars.len())
            .map(|idx| {
                let (copy, j) = (idx / n, idx % n);
                if copy == active && j < upto {
                    LinearImage::Var(target.index(active + 1, j))
                } else {
                    LinearImage::Var(idx)
                }
            })
            .collect();
        p.substitute_linear(target, &images)
    };
    let numerator = &shifted(i)? - &shifted(i + 1)?;
    divide_by_difference(
        &numerator,
        target.index(active, i),
        target.index(active + 1, i),
    )
}

/// Exact quotient of `q` by `(var_u - var_v)`, by univariate division in
/// `var_u`. A nonzero remainder is reported as [`Error::InexactDivision`].
pub fn divide_by_difference(q: &Poly, u: usize, v: usize) -> Result<Poly> {
    let vars: VarSet = *q.vars();
    if u >= vars.len() {
        return Err(Error::UnknownVariable(u));
    }
    if v >= vars.len() {
        return Err(Error::UnknownVariable(v));
    }
    let mut rem = q.clone();
    let mut quot = Poly::zero(vars, q.field());
    loop {
        let Some((m, c)) = rem
            .terms()
            .max_by_key(|(m, _)| m.exp(u))
            .map(|(m, c)| (m.clone(), c.clone()))
        else {
            break;
        };
        if m.exp(u) == 0 {
            return Err(Error::InexactDivision(format!(
                "remainder {} after dividing by {} - {}",
                rem,
                vars.name(u),
                vars.name(v)
            )));
        }
        let mut lowered = m.exponents().to_vec();
        lowered[u] -= 1;
        let lowered = Monomial::from_exponents(lowered);
        let mut shifted = lowered.exponents().to_vec();
        shifted[v] += 1;
        quot.add_term(lowered, c.clone());
        rem.add_term(m, -&c);
        rem.add_term(Monomial::from_exponents(shifted), c);
    }
    Ok(quot)
}
