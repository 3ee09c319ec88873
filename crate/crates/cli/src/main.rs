//! `orbjac`: command-line front end.
//!
//! Exit codes: 0 success, 2 comparison mismatch, 64 usage error, 70 internal
//! failure.

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use orbjac_core::algebra::{ProductTable, Side};
use orbjac_core::catalog::CATALOG;
use orbjac_core::hochschild::Hochschild;
use orbjac_core::invpoly::InvertiblePolynomial;
use orbjac_core::json::{class_to_json, cycnum_to_json, element_to_json, table_to_json};
use orbjac_core::milnor::Sectors;
use orbjac_core::orbjac::OrbifoldJacobian;
use orbjac_core::poly::{difference_derivative, LinearImage, Monomial, Poly, VarSet};
use orbjac_core::scalar::{CycField, CycNum};
use orbjac_core::symmetry::{
    is_symmetry, maximal_group, minimal_conductor, parse_subgroup, sl_filter, Group, GroupElement,
};
use orbjac_core::verify::{compare, rescaling_display, PairStatus};
use orbjac_core::Error;

const EXIT_MISMATCH: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "orbjac",
    version,
    about = "Orbifold Jacobian algebras of invertible polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Conductor of the coefficient field; a multiple of the minimal one.
    #[arg(long, global = true)]
    conductor: Option<u32>,
    /// Build product tables on all cores.
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exponent matrix, weights, degree and atoms.
    Analyze { poly: String },
    /// Elements of the maximal diagonal symmetry group or a subgroup.
    Group {
        poly: String,
        /// Keep only elements of integer age.
        #[arg(long)]
        sl: bool,
        /// Generators "a/b,c/d;..." of a subgroup.
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Milnor algebra of the whole polynomial or of one sector.
    Jacobian {
        poly: String,
        /// Group element "a/b,..." whose fixed locus is used.
        #[arg(long)]
        sector: Option<String>,
    },
    /// Full structure-constant table of one side.
    Product {
        poly: String,
        #[arg(long, default_value = "maximal")]
        group: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Compares the two sides; exits 2 on mismatch.
    Compare {
        poly: String,
        #[arg(long, default_value = "maximal")]
        group: String,
    },
    /// Invariant subalgebra of one side, with the other side's dimension.
    Invariants {
        poly: String,
        #[arg(long, default_value = "maximal")]
        group: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Runs the invariant suites on the built-in catalog.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree bound for the random polynomials.
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Orbifold,
    Hochschild,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Orbifold => Side::Orbifold,
            SideArg::Hochschild => Side::Hochschild,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Mismatch,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_)
            | Error::SocleMismatch(_)
            | Error::DegenerateSector(_)
            | Error::AmbientMismatch
            | Error::InexactDivision(_)
            | Error::ConductorMismatch(..)
            | Error::NotProportional
            | Error::ZeroDenominator
            | Error::DivisionByZero
            | Error::OverlappingSupports(..) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run = Result<(), Failure>;

struct Context {
    f: InvertiblePolynomial,
    maximal: Group,
    field: Arc<CycField>,
    parallel: bool,
}

impl Context {
    fn new(text: &str, conductor: Option<u32>, parallel: bool) -> Result<Self, Failure> {
        let f = InvertiblePolynomial::parse(text)?;
        let maximal = maximal_group(&f)?;
        let min = minimal_conductor(&maximal);
        let m = conductor.unwrap_or(min);
        if m == 0 || m % min != 0 {
            return Err(Failure::Usage(format!(
                "conductor {m} is not a multiple of the minimal conductor {min}"
            )));
        }
        Ok(Context {
            f,
            maximal,
            field: CycField::get(m),
            parallel,
        })
    }

    fn group(&self, spec: &str) -> Result<Group, Failure> {
        Ok(match spec.trim() {
            "maximal" => self.maximal.clone(),
            "sl" | "SL" => sl_filter(&self.maximal),
            text => parse_subgroup(&self.f, text)?,
        })
    }

    fn sectors(&self) -> Arc<Sectors> {
        Arc::new(Sectors::new(&self.f, &self.field))
    }

    fn table(
        &self,
        sectors: &Arc<Sectors>,
        group: &Group,
        side: Side,
    ) -> Result<ProductTable, Failure> {
        Ok(match side {
            Side::Orbifold => OrbifoldJacobian::new(sectors).build_table(group, self.parallel)?,
            Side::Hochschild => Hochschild::new(sectors)?.build_table(group, self.parallel)?,
        })
    }
}

/// Writes the report; a closed pipe is not an error.
fn emit(json: bool, value: Value, text: String) {
    let mut out = std::io::stdout().lock();
    let _ = if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        )
    } else {
        out.write_all(text.as_bytes())
    };
}

fn indices(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn tuple<T: ToString>(items: &[T]) -> String {
    format!(
        "({})",
        items
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn analyze(cli: &Cli, poly: &str) -> Run {
    let ctx = Context::new(poly, cli.conductor, cli.parallel)?;
    let f = &ctx.f;
    let e = f.exponents();
    let atoms: Vec<String> = f.atoms().iter().map(|a| a.to_string()).collect();
    let value = json!({
        "polynomial": f.to_string(),
        "exponent_matrix": e.rows,
        "determinant": e.determinant(),
        "weights": f.weights(),
        "degree": f.degree(),
        "atoms": f
            .atoms()
            .iter()
            .map(|a| json!({"kind": a.kind, "vars": indices(&a.vars), "exponents": a.exps}))
            .collect::<Vec<_>>(),
        "group_order": ctx.maximal.order(),
    });
    let mut text = format!("polynomial: {f}\nexponent matrix:\n");
    for row in &e.rows {
        text += &format!("  {row:?}\n");
    }
    text += &format!(
        "det E: {}\nweights: {}\ndegree: {}\natoms:\n",
        e.determinant(),
        tuple(f.weights()),
        f.degree()
    );
    for a in &atoms {
        text += &format!("  {a}\n");
    }
    text += &format!("|G_f|: {}\n", ctx.maximal.order());
    emit(cli.json, value, text);
    Ok(())
}

fn group(cli: &Cli, poly: &str, sl: bool, subgroup: Option<&str>) -> Run {
    let ctx = Context::new(poly, cli.conductor, cli.parallel)?;
    let mut group = match subgroup {
        Some(spec) => ctx.group(spec)?,
        None => ctx.maximal.clone(),
    };
    if sl {
        group = sl_filter(&group);
    }
    let rows: Vec<Value> = group
        .elements()
        .iter()
        .map(|g| {
            json!({
                "element": element_to_json(g),
                "age": g.age().to_string(),
                "moved": indices(&g.moved()),
                "codim": g.codim(),
            })
        })
        .collect();
    let mut text = format!(
        "order {}\n{:<20} {:>6} {:>12} {:>4}\n",
        group.order(),
        "element",
        "age",
        "moved",
        "d"
    );
    for g in group.elements() {
        text += &format!(
            "{:<20} {:>6} {:>12} {:>4}\n",
            g.to_string(),
            g.age().to_string(),
            tuple(&indices(&g.moved())),
            g.codim()
        );
    }
    emit(
        cli.json,
        json!({"order": group.order(), "elements": rows}),
        text,
    );
    Ok(())
}

fn jacobian(cli: &Cli, poly: &str, sector: Option<&str>) -> Run {
    let ctx = Context::new(poly, cli.conductor, cli.parallel)?;
    let g = match sector {
        Some(text) => {
            let g = GroupElement::parse(text, ctx.f.n())?;
            if !is_symmetry(&ctx.f, &g) {
                return Err(Failure::Usage(format!(
                    "{g} is not a symmetry of {}",
                    ctx.f
                )));
            }
            g
        }
        None => GroupElement::identity(ctx.f.n()),
    };
    let sectors = ctx.sectors();
    let s = sectors.of(&g)?;
    let vars = s.vars();
    let basis: Vec<String> = s.basis().iter().map(|m| m.display(&vars)).collect();
    let value = json!({
        "sector": element_to_json(&g),
        "fixed": indices(s.fixed()),
        "basis": basis,
        "milnor_number": s.milnor_number(),
        "top_degree": s.top_degree(),
        "hessian": class_to_json(&s, s.hess_class()),
    });
    let text = format!(
        "sector {g}\nfixed variables: {}\nbasis: {}\nmilnor number: {}\ntop degree: {}\nhessian: {}\n",
        tuple(&indices(s.fixed())),
        basis.join(", "),
        s.milnor_number(),
        s.top_degree(),
        s.display(s.hess_class())
    );
    emit(cli.json, value, text);
    Ok(())
}

fn table_text(table: &ProductTable) -> String {
    let elements = table.group().elements();
    let mut text = format!(
        "{} products over {} elements\n",
        table.side(),
        elements.len()
    );
    for (g, ge) in elements.iter().enumerate() {
        for (h, he) in elements.iter().enumerate() {
            let class = match table.entry(g, h) {
                Some(c) => table.sector(table.product_index(g, h)).display(c),
                None => "0".into(),
            };
            text += &format!("{ge} * {he} -> {class}\n");
        }
    }
    text
}

fn product(cli: &Cli, poly: &str, spec: &str, side: Side) -> Run {
    let ctx = Context::new(poly, cli.conductor, cli.parallel)?;
    let group = ctx.group(spec)?;
    let table = ctx.table(&ctx.sectors(), &group, side)?;
    emit(cli.json, table_to_json(&table), table_text(&table));
    Ok(())
}

fn compare_cmd(cli: &Cli, poly: &str, spec: &str) -> Run {
    let ctx = Context::new(poly, cli.conductor, cli.parallel)?;
    let group = ctx.group(spec)?;
    let sectors = ctx.sectors();
    let orbifold = ctx.table(&sectors, &group, Side::Orbifold)?;
    let hochschild = ctx.table(&sectors, &group, Side::Hochschild)?;
    let report = compare(&orbifold, &hochschild)?;
    let elements = group.elements();
    let verdict = if report.passed() { "PASS" } else { "MISMATCH" };

    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    let pairs: Vec<Value> = report
        .pairs
        .iter()
        .map(|p| {
            let status = match &p.status {
                PairStatus::BothZero => json!("both zero"),
                PairStatus::Match => json!("match"),
                PairStatus::Mismatch(why) => json!({"mismatch": why}),
            };
            json!({
                "g": element_to_json(&elements[p.g]),
                "h": element_to_json(&elements[p.h]),
                "status": status,
                "ratio": p.ratio.as_ref().map(cycnum_to_json),
            })
        })
        .collect();
    let value = json!({
        "polynomial": ctx.f.to_string(),
        "conductor": report.conductor,
        "verdict": verdict,
        "checks": checks,
        "pairs": pairs,
    });

    let mut text = format!(
        "{} with |G| = {}, conductor {}\n",
        ctx.f,
        group.order(),
        report.conductor
    );
    for c in &report.checks {
        text += &format!("  {:<22} {}\n", c.name, c.detail);
    }
    text += "ratios C/sigma on inverse pairs:\n";
    for (g, r) in elements.iter().zip(&report.element_ratios) {
        let shown = r.as_ref().map_or("-".to_string(), |r| r.to_string());
        text += &format!("  {g:<20} {shown}\n");
    }
    if report.passed() {
        text += "rescaling factors (floating point, for inspection):\n";
        text += &rescaling_display(&group);
    }
    text += &format!("{verdict}\n");
    emit(cli.json, value, text);
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn invariants(cli: &Cli, poly: &str, spec: &str, side: Side) -> Run {
    let ctx = Context::new(poly, cli.conductor, cli.parallel)?;
    let group = ctx.group(spec)?;
    let sectors = ctx.sectors();
    let table = ctx.table(&sectors, &group, side)?;
    let other_side = match side {
        Side::Orbifold => Side::Hochschild,
        Side::Hochschild => Side::Orbifold,
    };
    let other = ctx.table(&sectors, &group, other_side)?;
    let inv = table.invariant_table().map_err(Failure::Internal)?;
    let elements = group.elements();
    let label = |&(g, k): &(usize, usize)| {
        let s = table.sector(g);
        format!("[{}] v{}", s.basis()[k].display(&s.vars()), elements[g])
    };
    let basis: Vec<String> = inv.basis.iter().map(label).collect();
    let other_dim = other.invariant_basis().len();

    let products: Vec<Value> = inv
        .products
        .iter()
        .enumerate()
        .flat_map(|(a, row)| {
            row.iter().enumerate().map(move |(b, coords)| {
                let terms: Vec<Value> = coords
                    .iter()
                    .map(|(k, c)| json!({"basis": k, "coeff": cycnum_to_json(c)}))
                    .collect();
                json!({"left": a, "right": b, "product": terms})
            })
        })
        .collect();
    let value = json!({
        "side": side.to_string(),
        "dimension": basis.len(),
        "other_dimension": other_dim,
        "basis": basis,
        "products": products,
    });

    let mut text = format!("{side} invariants: dimension {}\n", basis.len());
    for (k, b) in basis.iter().enumerate() {
        text += &format!("  e{k} = {b}\n");
    }
    for (a, row) in inv.products.iter().enumerate() {
        for (b, coords) in row.iter().enumerate() {
            let rhs: Vec<String> = coords.iter().map(|(k, c)| format!("({c})*e{k}")).collect();
            let rhs = if rhs.is_empty() {
                "0".into()
            } else {
                rhs.join(" + ")
            };
            text += &format!("  e{a} * e{b} = {rhs}\n");
        }
    }
    let verdict = if other_dim == basis.len() {
        "equal"
    } else {
        "DIFFERENT"
    };
    text += &format!("{other_side} invariants: dimension {other_dim} ({verdict})\n");
    emit(cli.json, value, text);
    if other_dim == basis.len() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Poly {
    let field = CycField::get(1);
    let mut p = Poly::zero(VarSet::single(n), &field);
    for _ in 0..rng.gen_range(1..=6) {
        let mut exps = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=max_degree) {
            exps[rng.gen_range(0..n)] += 1;
        }
        p.add_term(
            Monomial::from_exponents(exps),
            CycNum::from_int(&field, rng.gen_range(-5..=5)),
        );
    }
    p
}

/// `Σ (x_i − y_i)∇_i(p) = p(x) − p(y)`.
fn telescopes(p: &Poly) -> Result<bool, Error> {
    let n = p.vars().base_len();
    let two = p.vars().extended();
    let field = p.field().clone();
    let mut lhs = Poly::zero(two, &field);
    for i in 0..n {
        let diff =
            &Poly::var(two, &field, two.index(0, i)) - &Poly::var(two, &field, two.index(1, i));
        lhs = &lhs + &(&diff * &difference_derivative(p, i)?);
    }
    let images: Vec<LinearImage> = (0..n).map(|i| LinearImage::Var(two.index(1, i))).collect();
    Ok(lhs == &p.widen(two)? - &p.substitute_linear(two, &images)?)
}

fn selftest(cli: &Cli, seed: u64, max_degree: u32) -> Run {
    let mut failures = 0;
    let mut mismatches = 0;
    let mut lines = Vec::new();
    for (name, text) in CATALOG {
        let ctx = Context::new(text, cli.conductor, cli.parallel)?;
        let sectors = ctx.sectors();
        let orbifold = ctx.table(&sectors, &ctx.maximal, Side::Orbifold)?;
        let hochschild = ctx.table(&sectors, &ctx.maximal, Side::Hochschild)?;
        let mut problems = Vec::new();
        for table in [&orbifold, &hochschild] {
            let checks = [
                table.check_unit(),
                table.check_twisted_commutativity(),
                table.check_invariance(),
                table.check_associativity(),
            ];
            for err in checks.into_iter().filter_map(|c| c.err()) {
                failures += 1;
                problems.push(format!("{}: {err}", table.side()));
            }
        }
        let report = compare(&orbifold, &hochschild)?;
        if !report.passed() {
            mismatches += 1;
            problems.push("comparison mismatch".into());
        }
        let status = if problems.is_empty() {
            "ok".to_string()
        } else {
            problems.join("; ")
        };
        lines.push(json!({"entry": name, "group_order": ctx.maximal.order(), "status": status}));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = 100;
    let mut bad = 0;
    for _ in 0..cases {
        let n = rng.gen_range(1..=4);
        if !telescopes(&random_poly(&mut rng, n, max_degree))? {
            bad += 1;
        }
    }
    failures += bad;

    let mut text = String::new();
    for l in &lines {
        text += &format!(
            "{:<24} |G| = {:<3} {}\n",
            l["entry"].as_str().unwrap_or_default(),
            l["group_order"],
            l["status"].as_str().unwrap_or_default()
        );
    }
    text += &format!(
        "difference derivatives: {}/{cases} random polynomials (seed {seed})\n",
        cases - bad
    );
    let ok = failures == 0 && mismatches == 0;
    text += if ok {
        "selftest passed\n"
    } else {
        "selftest FAILED\n"
    };
    let value = json!({"entries": lines, "seed": seed, "random_cases": cases, "random_failures": bad, "passed": ok});
    emit(cli.json, value, text);
    if failures > 0 {
        Err(Failure::Internal("selftest invariants failed".into()))
    } else if mismatches > 0 {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Analyze { poly } => analyze(cli, poly),
        Command::Group { poly, sl, subgroup } => group(cli, poly, *sl, subgroup.as_deref()),
        Command::Jacobian { poly, sector } => jacobian(cli, poly, sector.as_deref()),
        Command::Product { poly, group, side } => product(cli, poly, group, (*side).into()),
        Command::Compare { poly, group } => compare_cmd(cli, poly, group),
        Command::Invariants { poly, group, side } => invariants(cli, poly, group, (*side).into()),
        Command::Selftest { seed, max_degree } => selftest(cli, *seed, *max_degree),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(EXIT_MISMATCH),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
