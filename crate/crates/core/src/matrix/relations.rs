//! The defining relations of the tangle category, checked as matrix
//! identities. Each relation is written in the surface syntax with `;` in
//! bottom-to-top order.

use std::fmt;

use serde::Serialize;

use super::color_matrix::{ColorMatrix, MatrixError};
use super::evaluate::evaluate;
use crate::quandle::Quandle;
use crate::tangle::{parse, TangleExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RelationFamily {
    /// Zig-zag: a maximum followed by a minimum straightens out.
    T0,
    /// A crossing slides through a minimum, changing handedness.
    T0Prime,
    /// Reidemeister I.
    T1,
    /// Reidemeister II.
    T2,
    /// Reidemeister III.
    T3,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 5] = [
        RelationFamily::T0,
        RelationFamily::T0Prime,
        RelationFamily::T1,
        RelationFamily::T2,
        RelationFamily::T3,
    ];
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationFamily::T0 => "T0",
            RelationFamily::T0Prime => "T0'",
            RelationFamily::T1 => "T1",
            RelationFamily::T2 => "T2",
            RelationFamily::T3 => "T3",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RelationInstance {
    pub family: RelationFamily,
    pub variant: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
}

impl RelationInstance {
    pub fn sides(&self) -> (TangleExpr, TangleExpr) {
        let parse_side = |s| parse(s).expect("built-in relations are well-typed");
        (parse_side(self.lhs), parse_side(self.rhs))
    }
}

const INSTANCES: &[RelationInstance] = &[
    RelationInstance {
        family: RelationFamily::T0,
        variant: "left zig-zag",
        lhs: "(id(1) * cap) ; (cup * id(1))",
        rhs: "id(1)",
    },
    RelationInstance {
        family: RelationFamily::T0,
        variant: "right zig-zag",
        lhs: "(cap * id(1)) ; (id(1) * cup)",
        rhs: "id(1)",
    },
    RelationInstance {
        family: RelationFamily::T0Prime,
        variant: "xp through cup",
        lhs: "(xp * id(1)) ; (id(1) * cup)",
        rhs: "(id(1) * xm) ; (cup * id(1))",
    },
    RelationInstance {
        family: RelationFamily::T0Prime,
        variant: "xm through cup",
        lhs: "(xm * id(1)) ; (id(1) * cup)",
        rhs: "(id(1) * xp) ; (cup * id(1))",
    },
    RelationInstance { family: RelationFamily::T1, variant: "xp kink", lhs: "xp ; cup", rhs: "cup" },
    RelationInstance { family: RelationFamily::T1, variant: "xm kink", lhs: "xm ; cup", rhs: "cup" },
    RelationInstance { family: RelationFamily::T2, variant: "xp then xm", lhs: "xp ; xm", rhs: "id(2)" },
    RelationInstance { family: RelationFamily::T2, variant: "xm then xp", lhs: "xm ; xp", rhs: "id(2)" },
    RelationInstance {
        family: RelationFamily::T3,
        variant: "xp braid move",
        lhs: "(xp * id(1)) ; (id(1) * xp) ; (xp * id(1))",
        rhs: "(id(1) * xp) ; (xp * id(1)) ; (id(1) * xp)",
    },
    RelationInstance {
        family: RelationFamily::T3,
        variant: "xm braid move",
        lhs: "(xm * id(1)) ; (id(1) * xm) ; (xm * id(1))",
        rhs: "(id(1) * xm) ; (xm * id(1)) ; (id(1) * xm)",
    },
];

/// Every built-in relation instance, grouped by family.
pub fn relation_instances() -> &'static [RelationInstance] {
    INSTANCES
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub family: RelationFamily,
    pub variant: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    /// Number of matrix entries where the two sides differ.
    pub differing_entries: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub quandle: String,
    pub checks: Vec<RelationCheck>,
    pub all_pass: bool,
}

impl RelationReport {
    pub fn family_passes(&self, family: RelationFamily) -> bool {
        self.checks.iter().filter(|c| c.family == family).all(|c| c.pass)
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "relations over {}", self.quandle)?;
        for family in RelationFamily::ALL {
            let verdict = if self.family_passes(family) { "PASS" } else { "FAIL" };
            writeln!(f, "{family:<4} {verdict}")?;
            for c in self.checks.iter().filter(|c| c.family == family) {
                let mark = if c.pass { "ok" } else { "MISMATCH" };
                write!(f, "     {:<15} {mark}", c.variant)?;
                if !c.pass {
                    write!(f, " ({} entries differ)", c.differing_entries)?;
                }
                writeln!(f)?;
            }
        }
        write!(f, "overall: {}", if self.all_pass { "PASS" } else { "FAIL" })
    }
}

fn differing_entries(a: &ColorMatrix, b: &ColorMatrix) -> usize {
    let mut keys: Vec<(u64, u64)> = a.entries().iter().chain(b.entries()).map(|&(r, c, _)| (r, c)).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter().filter(|&(r, c)| a.get(r, c) != b.get(r, c)).count()
}

/// Evaluates both sides of every relation and compares the matrices exactly.
/// Mismatches are report content; errors are only for unusable quandles.
pub fn verify_relations(q: &Quandle) -> Result<RelationReport, MatrixError> {
    q.require_involutory()?;
    let mut checks = Vec::with_capacity(INSTANCES.len());
    for inst in INSTANCES {
        let (lhs, rhs) = inst.sides();
        let (a, b) = (evaluate(&lhs, q)?, evaluate(&rhs, q)?);
        let differing = differing_entries(&a, &b);
        checks.push(RelationCheck {
            family: inst.family,
            variant: inst.variant.to_string(),
            lhs: inst.lhs.to_string(),
            rhs: inst.rhs.to_string(),
            pass: differing == 0,
            differing_entries: differing,
        });
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(RelationReport { quandle: q.display_name(), checks, all_pass })
}
