//! Comparison of the orbifold and Hochschild structure classes.
//!
//! The two algebras are isomorphic through a diagonal rescaling
//! `v_g ↦ c_g ξ_g`, but `c_g` involves square roots outside the run field.
//! Instead of constructing it, the comparison certifies the ratios
//! `ρ_{g,h} = C_{g,h}/σ_{g,h}`: they must form a 2-cocycle, satisfy
//! `ρ² = t_g t_h / t_{gh}` with `t_g = ∏_{i∈I_g^c}(e[α_i/2] − e[−α_i/2])`, and
//! `ρ·e[−d_{g,h}/4]` must be a positive real number.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::ProductTable;
use crate::error::{Error, Result};
use crate::hochschild::closed_form_sigma;
use crate::invpoly::AtomKind;
use crate::milnor::{socle_ratio, AlgebraClass, Sectors};
use crate::orbjac::pairing_scalar;
use crate::poly::{Monomial, Poly};
use crate::scalar::{rat, root_of_unity, CycField, CycNum, Rational};
use crate::symmetry::{Group, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairStatus {
    BothZero,
    Match,
    Mismatch(String),
}

#[derive(Debug, Clone)]
pub struct PairReport {
    pub g: usize,
    pub h: usize,
    pub status: PairStatus,
    /// `C_{g,h}/σ_{g,h}` when both are nonzero and proportional.
    pub ratio: Option<CycNum>,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub conductor: u32,
    pub group: Group,
    pub pairs: Vec<PairReport>,
    /// `ρ_{g,g^{-1}}` per element.
    pub element_ratios: Vec<Option<CycNum>>,
    pub checks: Vec<Check>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &PairReport> {
        self.pairs
            .iter()
            .filter(|p| matches!(p.status, PairStatus::Mismatch(_)))
    }
}

/// `∏_{i∈I_g^c} (e[α_i/2] − e[−α_i/2])`.
pub fn half_angle_product(g: &GroupElement, field: &Arc<CycField>) -> Result<CycNum> {
    let mut t = CycNum::one(field);
    for i in g.moved() {
        let half = g.alpha(i) * rat(1, 2);
        let diff = &root_of_unity(&half, field)? - &root_of_unity(&-half, field)?;
        t = &t * &diff;
    }
    Ok(t)
}

/// The closed value `(−1)^{d(d−1)/2} e[−age/2] ∏(e[α_i/2]−e[−α_i/2])^{−1} [H_{g,g^{-1}}]`
/// predicted for `σ_{g,g^{-1}}`.
pub fn predicted_pairing(sectors: &Sectors, g: &GroupElement) -> Result<AlgebraClass> {
    let (h, _) = sectors.h_class(g)?;
    let field = sectors.field();
    let scalar = &pairing_scalar(g, field)? * &half_angle_product(g, field)?.inv()?;
    Ok(h.scale(&scalar))
}

/// Explicit monomial forms of `[det M_g]` for a single chain or loop, signed
/// like `σ_{g,g^{-1}}`. `None` when the shape has no such form (a chain with
/// leading exponent 1).
pub fn explicit_pairing(sectors: &Sectors, g: &GroupElement) -> Result<Option<AlgebraClass>> {
    let f = sectors.polynomial();
    let [atom] = f.atoms() else { return Ok(None) };
    let n = f.n();
    let field = sectors.field();
    let one = CycNum::one(field);
    let d = g.codim();
    let mut exps = vec![0u32; n];
    let mut c = CycNum::one(field);
    let size = match atom.kind {
        AtomKind::Chain => {
            if atom.exps[0] < 2 {
                return Ok(None);
            }
            for i in 0..d {
                exps[i] += atom.exps[i] - 1;
                let gi = g.eigenvalue(i, field)?;
                c = &c * &(&one - &gi).inv()?.scale_int(-(atom.exps[i] as i64));
            }
            exps[0] -= 1;
            if d < n {
                exps[d] += 1;
            }
            d
        }
        AtomKind::Loop => {
            for i in 0..n {
                exps[i] = atom.exps[i] - 1;
                c = &c * &(&g.eigenvalue(i, field)? - &one).inv()?;
            }
            let prod: i64 = atom.exps.iter().map(|&a| a as i64).product();
            let sign = if n % 2 == 0 { 1 } else { -1 };
            c = c.scale_int(prod - sign);
            n
        }
    };
    let d = size as i64;
    if (d * (d - 1) / 2) % 2 == 1 {
        c = -c;
    }
    let jac = sectors.identity()?;
    let p = Poly::term(jac.vars(), Monomial::from_exponents(exps), c);
    Ok(Some(jac.normal_form(&p)))
}

struct Checker {
    checks: Vec<Check>,
}

impl Checker {
    fn record(&mut self, name: &'static str, failures: Vec<String>, applicable: bool) {
        let detail = if !applicable {
            "not applicable".to_string()
        } else if failures.is_empty() {
            "ok".to_string()
        } else {
            let mut s = format!("{} failure(s): ", failures.len());
            s.push_str(
                &failures
                    .iter()
                    .take(3)
                    .cloned()
                    .collect::<Vec<_>>()
                    .join("; "),
            );
            s
        };
        self.checks.push(Check {
            name,
            passed: failures.is_empty(),
            detail,
        });
    }
}

/// Compares the two tables pair by pair and certifies the rescaling.
pub fn compare(orbifold: &ProductTable, hochschild: &ProductTable) -> Result<ComparisonReport> {
    let field = orbifold.sectors().field().clone();
    let other = hochschild.sectors().field().conductor();
    if field.conductor() != other {
        return Err(Error::ConductorMismatch(field.conductor(), other));
    }
    if orbifold.group() != hochschild.group() {
        return Err(Error::Internal("tables over different groups".into()));
    }
    let group = orbifold.group().clone();
    let elements = group.elements();
    let sectors = orbifold.sectors();
    let order = group.order();
    let id = orbifold.identity_index();
    let mut checker = Checker { checks: Vec::new() };

    // (a) zero patterns and (b) ratios
    let mut pairs = Vec::with_capacity(order * order);
    let mut ratio = vec![vec![None; order]; order];
    let mut zero_failures = Vec::new();
    let mut ratio_failures = Vec::new();
    for g in 0..order {
        for h in 0..order {
            let (status, r) = match (orbifold.entry(g, h), hochschild.entry(g, h)) {
                (None, None) => (PairStatus::BothZero, None),
                (Some(_), None) | (None, Some(_)) => {
                    let msg = format!("({}, {}): only one side vanishes", elements[g], elements[h]);
                    zero_failures.push(msg.clone());
                    (PairStatus::Mismatch(msg), None)
                }
                (Some(c), Some(s)) => match socle_ratio(c, s) {
                    Ok(r) => (PairStatus::Match, Some(r)),
                    Err(_) => {
                        let msg = format!(
                            "({}, {}): classes not proportional",
                            elements[g], elements[h]
                        );
                        ratio_failures.push(msg.clone());
                        (PairStatus::Mismatch(msg), None)
                    }
                },
            };
            ratio[g][h] = r.clone();
            pairs.push(PairReport {
                g,
                h,
                status,
                ratio: r,
            });
        }
    }
    checker.record("zero pattern", zero_failures, true);
    checker.record("proportional classes", ratio_failures, true);

    // (c) ratio consistency
    let one = CycNum::one(&field);
    let mut unit_failures = Vec::new();
    for g in 0..order {
        for r in [&ratio[id][g], &ratio[g][id]] {
            if r.as_ref() != Some(&one) {
                unit_failures.push(format!("unit ratio at {} is not 1", elements[g]));
            }
        }
    }
    checker.record("unit ratios", unit_failures, true);

    let inverse: Vec<usize> = elements
        .iter()
        .map(|g| group.index_of(&g.inverse()).expect("closed under inverses"))
        .collect();
    let element_ratios: Vec<Option<CycNum>> =
        (0..order).map(|g| ratio[g][inverse[g]].clone()).collect();
    let mut inverse_failures = Vec::new();
    for g in 0..order {
        if element_ratios[g].is_none() || element_ratios[g] != element_ratios[inverse[g]] {
            inverse_failures.push(format!("ratio at {} differs from its inverse", elements[g]));
        }
    }
    checker.record("inverse symmetry", inverse_failures, true);

    let mut cocycle_failures = Vec::new();
    for g in 0..order {
        for h in 0..order {
            let gh = orbifold.product_index(g, h);
            for k in 0..order {
                let hk = orbifold.product_index(h, k);
                let (Some(a), Some(b), Some(c), Some(d)) =
                    (&ratio[g][h], &ratio[gh][k], &ratio[h][k], &ratio[g][hk])
                else {
                    continue;
                };
                if a * b != c * d {
                    cocycle_failures.push(format!(
                        "({}, {}, {})",
                        elements[g], elements[h], elements[k]
                    ));
                }
            }
        }
    }
    checker.record("cocycle", cocycle_failures, true);

    // rescaling: ρ² = t_g t_h / t_gh and ρ·e[−d_{g,h}/4] > 0
    let t: Vec<CycNum> = elements
        .iter()
        .map(|g| half_angle_product(g, &field))
        .collect::<Result<_>>()?;
    let mut rescale_failures = Vec::new();
    for g in 0..order {
        for h in 0..order {
            let Some(r) = &ratio[g][h] else { continue };
            let gh = orbifold.product_index(g, h);
            if &(r * r) * &t[gh] != &t[g] * &t[h] {
                rescale_failures.push(format!(
                    "squared ratio at ({}, {})",
                    elements[g], elements[h]
                ));
                continue;
            }
            let twice = elements[g].codim() + elements[h].codim() - elements[gh].codim();
            let phase = root_of_unity(&-Rational::new((twice as i64).into(), 8.into()), &field)?;
            let real = r * &phase;
            if real.conj() != real || real.to_complex().0 <= 0.0 {
                rescale_failures.push(format!("phase at ({}, {})", elements[g], elements[h]));
            }
        }
    }
    checker.record("rescaling", rescale_failures, true);

    // (d) the closed pairing formula, independent of both tables' code paths
    let mut pairing_failures = Vec::new();
    for (g, elt) in elements.iter().enumerate() {
        if elt.is_identity() {
            continue;
        }
        let predicted = predicted_pairing(sectors, elt)?;
        if hochschild.entry(g, inverse[g]) != Some(&predicted) {
            pairing_failures.push(format!("σ at {}", elt));
        }
    }
    checker.record("pairing formula", pairing_failures, true);

    // determinant oracles, for a single atom in its own variable order
    let f = sectors.polynomial();
    let single = f.atoms().len() == 1 && f.atoms()[0].vars.iter().enumerate().all(|(k, &v)| k == v);
    let mut closed_failures = Vec::new();
    if single {
        for (g, elt) in elements.iter().enumerate() {
            if elt.is_identity() {
                continue;
            }
            let sigma = hochschild.entry(g, inverse[g]);
            let det = closed_form_sigma(sectors, elt)?;
            if sigma != Some(&det) {
                closed_failures.push(format!("determinant form at {}", elt));
            }
            if let Some(explicit) = explicit_pairing(sectors, elt)? {
                if explicit != det {
                    closed_failures.push(format!("explicit form at {}", elt));
                }
            }
        }
    }
    checker.record("closed forms", closed_failures, single);

    Ok(ComparisonReport {
        conductor: field.conductor(),
        group,
        pairs,
        element_ratios,
        checks: checker.checks,
    })
}

/// `∏ 2 sin(α_i π)` over the moved coordinates, in floating point.
pub fn sine_product(g: &GroupElement) -> f64 {
    g.moved()
        .iter()
        .map(|&i| {
            let a = g.alpha(i);
            let x = a.numer().to_string().parse::<f64>().unwrap()
                / a.denom().to_string().parse::<f64>().unwrap();
            2.0 * (x * std::f64::consts::PI).sin()
        })
        .product()
}

/// Floating-point view of the rescaling factors `e[−d_g/8](∏ 2 sin α_iπ)^{−1/2}`;
/// for display only.
pub fn rescaling_display(group: &Group) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<24} {:>4} {:>14} {:>28}",
        "element", "d_g", "prod 2sin", "e[-d/8] (prod)^(-1/2)"
    );
    for g in group.elements() {
        let s = sine_product(g);
        let d = g.codim() as f64;
        let angle = -2.0 * std::f64::consts::PI * d / 8.0;
        let scale = s.powf(-0.5);
        // adding 0.0 turns -0.0 into 0.0
        let (re, im) = (angle.cos() * scale + 0.0, angle.sin() * scale + 0.0);
        let _ = writeln!(
            out,
            "{:<24} {:>4} {:>14.7} {:>13.7} {:+13.7}i",
            g.to_string(),
            g.codim(),
            s,
            re,
            im
        );
    }
    out
}
