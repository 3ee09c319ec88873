//! Built-in examples: small chains, loops and sums with their maximal groups.

/// `(name, polynomial text)` for every built-in example.
pub const CATALOG: &[(&str, &str)] = &[
    ("chain (3)", "x1^3"),
    ("chain (4)", "x1^4"),
    ("chain (2,2)", "x1^2*x2 + x2^2"),
    ("chain (3,2)", "x1^3*x2 + x2^2"),
    ("chain (2,3)", "x1^2*x2 + x2^3"),
    ("chain (2,2,2)", "x1^2*x2 + x2^2*x3 + x3^2"),
    ("loop (2,2)", "x1^2*x2 + x2^2*x1"),
    ("loop (3,2)", "x1^3*x2 + x2^2*x1"),
    ("loop (2,2,2)", "x1^2*x2 + x2^2*x3 + x3^2*x1"),
    ("two cubes", "x1^3 + x2^3"),
    ("cube plus loop (2,2)", "x1^3 + x2^2*x3 + x3^2*x2"),
];

/// Entries with more than one atom.
pub fn sums() -> impl Iterator<Item = &'static (&'static str, &'static str)> {
    CATALOG.iter().skip(9)
}
