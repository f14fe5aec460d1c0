use std::fmt;

use thiserror::Error;

/// The generating tangles. Arities are `(bottom, top)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Right-handed crossing; the strand entering bottom-left passes over.
    Xp,
    /// Left-handed crossing; the strand entering bottom-right passes over.
    Xm,
    /// Local minimum: joins two bottom endpoints.
    Cup,
    /// Local maximum: joins two top endpoints.
    Cap,
    Id(usize),
}

impl Generator {
    pub fn arity(self) -> (usize, usize) {
        match self {
            Generator::Xp | Generator::Xm => (2, 2),
            Generator::Cup => (2, 0),
            Generator::Cap => (0, 2),
            Generator::Id(n) => (n, n),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Xp => f.write_str("xp"),
            Generator::Xm => f.write_str("xm"),
            Generator::Cup => f.write_str("cup"),
            Generator::Cap => f.write_str("cap"),
            Generator::Id(n) => write!(f, "id({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Atom(Generator),
    /// `lower ; upper`: `lower` sits at the bottom and is traversed first.
    Then(Box<TangleExpr>, Box<TangleExpr>),
    /// `left * right`: side by side, `left` takes the leftmost strands.
    Beside(Box<TangleExpr>, Box<TangleExpr>),
}

/// A well-typed tangle expression. Every node knows its bottom and top
/// arity; the constructors refuse ill-typed sequential compositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleExpr {
    kind: ExprKind,
    bottom: usize,
    top: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error(
    "arity mismatch: `{lower}` has arity ({}, {}) but `{upper}` has arity ({}, {}); {} top endpoints cannot meet {} bottom endpoints",
    lower_arity.0, lower_arity.1, upper_arity.0, upper_arity.1, lower_arity.1, upper_arity.0
)]
pub struct ArityError {
    pub lower: String,
    pub lower_arity: (usize, usize),
    pub upper: String,
    pub upper_arity: (usize, usize),
}

impl TangleExpr {
    pub fn atom(g: Generator) -> Self {
        let (bottom, top) = g.arity();
        TangleExpr { kind: ExprKind::Atom(g), bottom, top }
    }

    pub fn xp() -> Self {
        Self::atom(Generator::Xp)
    }

    pub fn xm() -> Self {
        Self::atom(Generator::Xm)
    }

    pub fn cup() -> Self {
        Self::atom(Generator::Cup)
    }

    pub fn cap() -> Self {
        Self::atom(Generator::Cap)
    }

    pub fn id(n: usize) -> Self {
        Self::atom(Generator::Id(n))
    }

    /// `lower ; upper`.
    pub fn then(lower: TangleExpr, upper: TangleExpr) -> Result<Self, ArityError> {
        if lower.top != upper.bottom {
            return Err(ArityError {
                lower: lower.to_string(),
                lower_arity: lower.arity(),
                upper: upper.to_string(),
                upper_arity: upper.arity(),
            });
        }
        let (bottom, top) = (lower.bottom, upper.top);
        Ok(TangleExpr { kind: ExprKind::Then(Box::new(lower), Box::new(upper)), bottom, top })
    }

    /// `left * right`.
    pub fn beside(left: TangleExpr, right: TangleExpr) -> Self {
        let (bottom, top) = (left.bottom + right.bottom, left.top + right.top);
        TangleExpr { kind: ExprKind::Beside(Box::new(left), Box::new(right)), bottom, top }
    }

    /// Sequential composition of a non-empty list, bottom first.
    pub fn stack(layers: impl IntoIterator<Item = TangleExpr>) -> Result<Self, ArityError> {
        let mut it = layers.into_iter();
        let first = it.next().unwrap_or_else(|| Self::id(0));
        it.try_fold(first, Self::then)
    }

    /// Monoidal product of a list, leftmost first. Empty gives `id(0)`.
    pub fn tensor(factors: impl IntoIterator<Item = TangleExpr>) -> Self {
        let mut it = factors.into_iter();
        let first = it.next().unwrap_or_else(|| Self::id(0));
        it.fold(first, Self::beside)
    }

    pub fn kind(&self) -> &ExprKind {
        &self.kind
    }

    /// Number of bottom endpoints.
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Number of top endpoints.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.bottom, self.top)
    }

    /// A link: no free endpoints.
    pub fn is_closed(&self) -> bool {
        self.bottom == 0 && self.top == 0
    }

    /// Largest boundary width at any node, the width that bounds matrix sizes.
    pub fn max_width(&self) -> usize {
        let own = self.bottom.max(self.top);
        match &self.kind {
            ExprKind::Atom(_) => own,
            ExprKind::Then(a, b) | ExprKind::Beside(a, b) => {
                own.max(a.max_width()).max(b.max_width())
            }
        }
    }

    pub fn crossing_count(&self) -> usize {
        match &self.kind {
            ExprKind::Atom(Generator::Xp | Generator::Xm) => 1,
            ExprKind::Atom(_) => 0,
            ExprKind::Then(a, b) | ExprKind::Beside(a, b) => a.crossing_count() + b.crossing_count(),
        }
    }
}

impl fmt::Display for TangleExpr {
    /// Prints in the surface syntax; the output re-parses to an equal tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Atom(g) => write!(f, "{g}"),
            ExprKind::Then(a, b) => {
                write!(f, "{a} ; ")?;
                match b.kind {
                    ExprKind::Then(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            ExprKind::Beside(a, b) => {
                match a.kind {
                    ExprKind::Then(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                f.write_str(" * ")?;
                match b.kind {
                    ExprKind::Atom(_) => write!(f, "{b}"),
                    _ => write!(f, "({b})"),
                }
            }
        }
    }
}
