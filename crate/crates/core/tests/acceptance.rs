//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbjac_core::algebra::ProductTable;
use orbjac_core::catalog::CATALOG;
use orbjac_core::hochschild::clifford::{upsilon, ThetaWord};
use orbjac_core::hochschild::{closed_form_sigma, Hochschild};
use orbjac_core::invpoly::InvertiblePolynomial;
use orbjac_core::milnor::{AlgebraClass, Sectors};
use orbjac_core::orbjac::OrbifoldJacobian;
use orbjac_core::poly::{difference_derivative, LinearImage, Monomial, Poly, VarSet};
use orbjac_core::scalar::{int, CycField, CycNum, Rational};
use orbjac_core::symmetry::{maximal_group, Group};
use orbjac_core::verify::{compare, explicit_pairing};

type Outcome = Result<String, String>;

struct Entry {
    name: &'static str,
    f: InvertiblePolynomial,
    group: Group,
    sectors: Arc<Sectors>,
    orbifold: ProductTable,
    hochschild: ProductTable,
}

fn build(name: &'static str, text: &str) -> orbjac_core::Result<Entry> {
    let f = InvertiblePolynomial::parse(text)?;
    let group = maximal_group(&f)?;
    let field = CycField::get(4 * group.exponent());
    let sectors = Arc::new(Sectors::new(&f, &field));
    let orbifold = OrbifoldJacobian::new(&sectors).build_table(&group, true)?;
    let hochschild = Hochschild::new(&sectors)?.build_table(&group, true)?;
    Ok(Entry {
        name,
        f,
        group,
        sectors,
        orbifold,
        hochschild,
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nonzero(c: Option<AlgebraClass>) -> Option<AlgebraClass> {
    c.filter(|c| !c.is_zero())
}

fn catalog_comparison(entries: &mut Vec<Entry>) -> Outcome {
    let start = Instant::now();
    for (name, text) in CATALOG {
        let entry = build(name, text).map_err(|e| format!("{name}: {e}"))?;
        let report =
            compare(&entry.orbifold, &entry.hochschild).map_err(|e| format!("{name}: {e}"))?;
        if !report.passed() {
            let failed: Vec<String> = report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect();
            return Err(format!("{name}: {}", failed.join(", ")));
        }
        entries.push(entry);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{} entries in {:.2?}", entries.len(), elapsed))
}

fn vanishing(entries: &[Entry]) -> Outcome {
    let mut computed = 0;
    let mut pairs = 0;
    for e in entries.iter().filter(|e| e.f.atoms().len() == 1) {
        let hh = Hochschild::new(&e.sectors).map_err(|x| x.to_string())?;
        for g in e.group.elements() {
            for h in e.group.elements() {
                if g.is_identity() || h.is_identity() || g.mul(h).is_identity() {
                    continue;
                }
                pairs += 1;
                let (gi, hi) = (e.group.index_of(g).unwrap(), e.group.index_of(h).unwrap());
                ensure(e.orbifold.entry(gi, hi).is_none(), || {
                    format!("{}: C at ({g}, {h})", e.name)
                })?;
                let sigma = hh.sigma(g, h).map_err(|x| x.to_string())?;
                if sigma.value.is_some() {
                    computed += 1;
                }
                ensure(nonzero(sigma.value).is_none(), || {
                    format!("{}: σ at ({g}, {h})", e.name)
                })?;
            }
        }
    }
    Ok(format!(
        "{pairs} pairs, {computed} through the full cup product"
    ))
}

fn closed_forms() -> Outcome {
    // every atom of every entry, renamed to local variables
    let mut atoms: BTreeMap<String, InvertiblePolynomial> = BTreeMap::new();
    for (_, text) in CATALOG {
        let f = InvertiblePolynomial::parse(text).map_err(|e| e.to_string())?;
        for k in 0..f.atoms().len() {
            let a = f.atom_polynomial(k);
            atoms.insert(a.poly().to_string(), a);
        }
    }
    let mut checked = 0;
    for (text, f) in &atoms {
        let err = |e: orbjac_core::Error| format!("{text}: {e}");
        let group = maximal_group(f).map_err(err)?;
        let field = CycField::get(4 * group.exponent());
        let sectors = Arc::new(Sectors::new(f, &field));
        let hh = Hochschild::new(&sectors).map_err(err)?;
        for g in group.elements().iter().filter(|g| !g.is_identity()) {
            let sigma = hh.sigma(g, &g.inverse()).map_err(err)?.value;
            let det = closed_form_sigma(&sectors, g).map_err(err)?;
            ensure(sigma.as_ref() == Some(&det), || {
                format!("{text}: determinant at {g}")
            })?;
            if let Some(explicit) = explicit_pairing(&sectors, g).map_err(err)? {
                ensure(explicit == det, || format!("{text}: explicit form at {g}"))?;
            }
            // [det M_g] = ∏ (g_i − 1)^{-1} [H_{g,g^{-1}}]
            let (h, _) = sectors.h_class(g).map_err(err)?;
            let mut c = CycNum::one(&field);
            for i in g.moved() {
                let gi = g.eigenvalue(i, &field).map_err(err)?;
                c = &c * &(&gi - &CycNum::one(&field)).inv().map_err(err)?;
            }
            let d = g.codim() as i64;
            if (d * (d - 1) / 2) % 2 == 1 {
                c = -c;
            }
            ensure(h.scale(&c) == det, || {
                format!("{text}: hessian form at {g}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} elements over {} atoms", atoms.len()))
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> Poly {
    let field = CycField::get(1);
    let mut p = Poly::zero(VarSet::single(n), &field);
    for _ in 0..rng.gen_range(1..=6) {
        let mut exps = vec![0u32; n];
        let mut budget = rng.gen_range(0..=6);
        while budget > 0 {
            exps[rng.gen_range(0..n)] += 1;
            budget -= 1;
        }
        p.add_term(
            Monomial::from_exponents(exps),
            CycNum::from_int(&field, rng.gen_range(-5..=5)),
        );
    }
    p
}

fn difference_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let cases = 150;
    for case in 0..cases {
        let n = rng.gen_range(1..=4);
        let p = random_poly(&mut rng, n);
        let vars = VarSet::single(n);
        let two = vars.extended();
        let field = p.field().clone();
        let x_of = |i| Poly::var(two, &field, two.index(0, i));
        let y_of = |i| Poly::var(two, &field, two.index(1, i));
        let mut lhs = Poly::zero(two, &field);
        for i in 0..n {
            let d = difference_derivative(&p, i).map_err(|e| e.to_string())?;
            lhs = &lhs + &(&(&x_of(i) - &y_of(i)) * &d);
        }
        let as_x = p.widen(two).map_err(|e| e.to_string())?;
        let images: Vec<LinearImage> = (0..n).map(|i| LinearImage::Var(two.index(1, i))).collect();
        let as_y = p
            .substitute_linear(two, &images)
            .map_err(|e| e.to_string())?;
        ensure(lhs == &as_x - &as_y, || format!("case {case}: {p}"))?;
    }
    Ok(format!("{cases} seeded polynomials"))
}

fn milnor_numbers(entries: &[Entry]) -> Outcome {
    let mut sectors = 0;
    for e in entries {
        let (w, d) = (e.f.weights(), e.f.degree());
        for g in e.group.elements() {
            let s = e.sectors.of(g).map_err(|x| x.to_string())?;
            let expect = g.fixed().iter().fold(int(1), |acc, &i| {
                acc * Rational::new((d - w[i]).into(), w[i].into())
            });
            ensure(
                Rational::from_integer((s.milnor_number() as i64).into()) == expect,
                || {
                    format!(
                        "{}: sector {g} has μ = {}, expected {expect}",
                        e.name,
                        s.milnor_number()
                    )
                },
            )?;
            sectors += 1;
        }
        if e.name.starts_with("loop") {
            let prod: u32 = e.f.atoms()[0].exps.iter().product();
            let mu = e
                .sectors
                .identity()
                .map_err(|x| x.to_string())?
                .milnor_number();
            ensure(mu == prod as usize, || {
                format!("{}: μ = {mu}, expected {prod}", e.name)
            })?;
        }
    }
    Ok(format!("{sectors} sectors"))
}

fn axioms(entries: &[Entry]) -> Outcome {
    for e in entries {
        for table in [&e.orbifold, &e.hochschild] {
            let tag = |m: String| format!("{} ({}): {m}", e.name, table.side());
            table.check_unit().map_err(tag)?;
            table.check_twisted_commutativity().map_err(tag)?;
            table.check_invariance().map_err(tag)?;
            table.check_associativity().map_err(tag)?;
            table.invariant_table().map_err(tag)?;
        }
    }
    Ok(format!("{} entries, both sides", entries.len()))
}

fn kuenneth(entries: &[Entry]) -> Outcome {
    let mut pairs = 0;
    for e in entries.iter().filter(|e| e.f.atoms().len() > 1) {
        let oj = OrbifoldJacobian::new(&e.sectors);
        let atomic: Vec<Hochschild> = oj
            .atoms()
            .iter()
            .map(|(_, s)| Hochschild::new(s))
            .collect::<orbjac_core::Result<_>>()
            .map_err(|x| x.to_string())?;
        for (gi, g) in e.group.elements().iter().enumerate() {
            for (hi, h) in e.group.elements().iter().enumerate() {
                let assembled = oj
                    .assemble(g, h, |k, _, gk, hk| Ok(atomic[k].sigma(gk, hk)?.value))
                    .map_err(|x| x.to_string())?;
                ensure(
                    nonzero(assembled).as_ref() == e.hochschild.entry(gi, hi),
                    || format!("{}: σ at ({g}, {h})", e.name),
                )?;
                pairs += 1;
            }
            if !g.is_identity() {
                let hi = e.group.index_of(&g.inverse()).unwrap();
                let direct = oj.direct_pairing_class(g).map_err(|x| x.to_string())?;
                ensure(e.orbifold.entry(gi, hi) == Some(&direct), || {
                    format!("{}: C at ({g}, {})", e.name, g.inverse())
                })?;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn invariants(entries: &[Entry]) -> Outcome {
    for e in entries {
        for table in [&e.orbifold, &e.hochschild] {
            let dim = table.invariant_basis().len();
            let avg = table.burnside_dimension();
            ensure(Rational::from_integer((dim as i64).into()) == avg, || {
                format!("{} ({}): {dim} vs average {avg}", e.name, table.side())
            })?;
        }
    }
    let cube = entries
        .iter()
        .find(|e| e.name == "chain (3)")
        .ok_or("missing x^3")?;
    ensure(cube.orbifold.invariant_basis().len() == 1, || {
        "x^3 with Z/3".into()
    })?;
    let trivial = Group::trivial(1);
    let table = OrbifoldJacobian::new(&cube.sectors)
        .build_table(&trivial, false)
        .map_err(|x| x.to_string())?;
    ensure(table.invariant_basis().len() == 2, || {
        "x^3 with the trivial group".into()
    })?;
    Ok(format!("{} entries, both sides", entries.len()))
}

/// Generators of the Clifford algebra on two copies of `n` letters: `θ`
/// (copy, index) and `∂θ` (copy, index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Letter {
    Theta(u8, u8),
    Dual(u8, u8),
}

/// Rewrites a word by moving every `θ` to the right, using
/// `θ ∂ = −∂ θ + δ`, and dropping words that end in `θ`. Returns a map from
/// the remaining `∂θ` words to coefficients.
fn rewrite(word: Vec<Letter>) -> BTreeMap<Vec<Letter>, i64> {
    let mut out = BTreeMap::new();
    let mut stack = vec![(word, 1i64)];
    while let Some((w, c)) = stack.pop() {
        let pos = w
            .windows(2)
            .position(|p| matches!((p[0], p[1]), (Letter::Theta(..), Letter::Dual(..))));
        match pos {
            None => {
                if !matches!(w.last(), Some(Letter::Theta(..))) {
                    *out.entry(w).or_insert(0) += c;
                }
            }
            Some(k) => {
                let (Letter::Theta(a, i), Letter::Dual(b, j)) = (w[k], w[k + 1]) else {
                    unreachable!()
                };
                let mut swapped = w.clone();
                swapped.swap(k, k + 1);
                stack.push((swapped, -c));
                if a == b && i == j {
                    let mut removed = w.clone();
                    removed.drain(k..k + 2);
                    stack.push((removed, c));
                }
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Sorts a `∂θ` word into increasing order, forgetting the copy.
fn sort_duals(word: &[Letter]) -> Option<(i64, u32)> {
    let mut idx: Vec<u8> = word
        .iter()
        .map(|l| match l {
            Letter::Dual(_, i) => *i,
            Letter::Theta(..) => unreachable!(),
        })
        .collect();
    let mut sign = 1;
    for a in 0..idx.len() {
        for b in 0..idx.len() - 1 - a {
            match idx[b].cmp(&idx[b + 1]) {
                std::cmp::Ordering::Greater => {
                    idx.swap(b, b + 1);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some((sign, idx.iter().fold(0, |m, &i| m | (1 << i))))
}

fn brute_upsilon(n: usize, p1: u32, p2: u32, q1: u32, q2: u32) -> BTreeMap<u32, i64> {
    let letters = |mask: u32, make: fn(u8) -> Letter| -> Vec<Letter> {
        (0..n as u8)
            .filter(|&i| mask & (1 << i) != 0)
            .map(make)
            .collect()
    };
    let mut word = letters(p1, |i| Letter::Theta(0, i));
    word.extend(letters(p2, |i| Letter::Theta(1, i)));
    word.extend(letters(q1, |i| Letter::Dual(0, i)));
    word.extend(letters(q2, |i| Letter::Dual(1, i)));
    let mut out = BTreeMap::new();
    for (w, c) in rewrite(word) {
        // copy-0 letters stay ahead of copy-1 letters throughout the rewrite
        if let Some((s, mask)) = sort_duals(&w) {
            *out.entry(mask).or_insert(0) += s * c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn clifford_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = 600;
    let mut nonzero_cases = 0;
    for _ in 0..cases {
        let n = rng.gen_range(1..=4);
        let full = (1u32 << n) - 1;
        let mut mask = || rng.gen_range(0..=full);
        let (p1, p2, q1, q2) = (mask(), mask(), mask(), mask());
        let expect = brute_upsilon(n, p1, p2, q1, q2);
        let got: BTreeMap<u32, i64> =
            upsilon(ThetaWord(p1), ThetaWord(p2), ThetaWord(q1), ThetaWord(q2))
                .map(|(s, w)| BTreeMap::from([(w.0, s as i64)]))
                .unwrap_or_default();
        ensure(got == expect, || {
            format!("n={n} p=({p1:b},{p2:b}) q=({q1:b},{q2:b})")
        })?;
        if !got.is_empty() {
            nonzero_cases += 1;
        }
    }
    Ok(format!("{cases} random cases, {nonzero_cases} nonzero"))
}

fn main() -> ExitCode {
    let mut entries = Vec::new();
    let mut results: Vec<(&str, Outcome)> = vec![(
        "comparison on the catalog",
        catalog_comparison(&mut entries),
    )];
    if entries.len() < CATALOG.len() {
        // later criteria fall back to whatever did build
        for (name, text) in CATALOG.iter().skip(entries.len()) {
            if let Ok(e) = build(name, text) {
                entries.push(e);
            }
        }
    }
    results.push(("vanishing for atomic polynomials", vanishing(&entries)));
    results.push(("closed-form oracles", closed_forms()));
    results.push(("difference-derivative identity", difference_identity()));
    results.push(("Milnor numbers", milnor_numbers(&entries)));
    results.push(("algebra axioms", axioms(&entries)));
    results.push(("Kunneth assembly", kuenneth(&entries)));
    results.push(("invariant dimensions", invariants(&entries)));
    results.push(("Clifford contraction oracle", clifford_oracle()));

    let mut ok = true;
    for (k, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", k + 1),
            Err(why) => {
                ok = false;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
