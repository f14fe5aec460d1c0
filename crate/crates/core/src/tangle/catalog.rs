//! Named link diagrams shipped with the crate. The tangle words live in
//! `catalog/*.tangle`; `#` starts a comment line.

use super::ast::TangleExpr;
use super::parser::{parse, ParseError};

const ENTRIES: &[(&str, &str)] = &[
    ("unknot", include_str!("../../catalog/unknot.tangle")),
    ("trefoil", include_str!("../../catalog/trefoil.tangle")),
    ("figure8", include_str!("../../catalog/figure8.tangle")),
    ("hopf", include_str!("../../catalog/hopf.tangle")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(name, _)| *name)
}

/// The tangle word for a catalog entry, comments stripped.
pub fn word(name: &str) -> Option<String> {
    let name = name.trim().to_ascii_lowercase();
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, text)| strip_comments(text))
}

/// The first comment line of an entry.
pub fn description(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).and_then(|(_, text)| {
        text.lines().find_map(|l| l.trim().strip_prefix('#')).map(str::trim)
    })
}

pub fn lookup(name: &str) -> Option<TangleExpr> {
    word(name).map(|w| parse(&w).expect("catalog entries are well-typed"))
}

/// A catalog name, or else an expression in the surface syntax.
pub fn resolve(input: &str) -> Result<TangleExpr, ParseError> {
    match lookup(input) {
        Some(expr) => Ok(expr),
        None => parse(input),
    }
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}
