//! Coloring spans `X^m ← Col(T) → X^n` and their decategorification.
//!
//! The apex of a span is a materialized list of opaque records. Spans built
//! from a tangle hold one record per coloring (the color of every arc);
//! composites hold the concatenation of their constituents' records. Two
//! spans are only ever compared up to isomorphism, by counting double
//! preimages, never by record identity.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::matrix::{ColorMatrix, Encoding, MatrixError};
use crate::quandle::{Element, Quandle};
use crate::tangle::{compile_diagram, enumerate_colorings_with_budget, ColoringError, TangleExpr, DEFAULT_BUDGET};

#[derive(Debug, Error)]
pub enum SpanError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("cannot compose: the first span ends on {left} strands, the second starts on {right}")]
    WidthMismatch { left: usize, right: usize },
    #[error("spans are colored by different quandles")]
    QuandleMismatch,
    #[error("spans have different shapes: ({}, {}) vs ({}, {})", left.0, left.1, right.0, right.1)]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
}

/// A coloring of `n` endpoints, an element of `X^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryColoring(Vec<Element>);

impl BoundaryColoring {
    pub fn new(colors: Vec<Element>) -> Self {
        BoundaryColoring(colors)
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn colors(&self) -> &[Element] {
        &self.0
    }

    fn concat(&self, other: &BoundaryColoring) -> BoundaryColoring {
        BoundaryColoring([self.0.as_slice(), other.0.as_slice()].concat())
    }
}

/// One point of a span's apex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ApexPoint(Vec<Element>);

impl ApexPoint {
    pub fn record(&self) -> &[Element] {
        &self.0
    }

    fn concat(&self, other: &ApexPoint) -> ApexPoint {
        ApexPoint([self.0.as_slice(), other.0.as_slice()].concat())
    }
}

#[derive(Clone, Debug)]
pub struct ColoringSpan {
    quandle: Arc<Quandle>,
    m: usize,
    n: usize,
    apex: Vec<ApexPoint>,
    leg_left: Vec<BoundaryColoring>,
    leg_right: Vec<BoundaryColoring>,
}

impl ColoringSpan {
    pub fn quandle(&self) -> &Quandle {
        &self.quandle
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apex(&self) -> &[ApexPoint] {
        &self.apex
    }

    pub fn apex_size(&self) -> usize {
        self.apex.len()
    }

    /// Restriction of apex point `i` to the bottom endpoints.
    pub fn leg_left(&self, i: usize) -> &BoundaryColoring {
        &self.leg_left[i]
    }

    /// Restriction of apex point `i` to the top endpoints.
    pub fn leg_right(&self, i: usize) -> &BoundaryColoring {
        &self.leg_right[i]
    }

    fn same_quandle(&self, other: &ColoringSpan) -> Result<(), SpanError> {
        if Arc::ptr_eq(&self.quandle, &other.quandle) || *self.quandle == *other.quandle {
            Ok(())
        } else {
            Err(SpanError::QuandleMismatch)
        }
    }

    /// `|F_{a,b}|` for every pair of boundary colorings with a nonempty
    /// double preimage.
    pub fn double_preimages(&self) -> BTreeMap<(&BoundaryColoring, &BoundaryColoring), u64> {
        let mut counts = BTreeMap::new();
        for (l, r) in self.leg_left.iter().zip(&self.leg_right) {
            *counts.entry((l, r)).or_insert(0) += 1;
        }
        counts
    }

    /// Histogram of double-preimage sizes: size → number of `(a, b)` pairs.
    pub fn preimage_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for count in self.double_preimages().into_values() {
            *hist.entry(count).or_insert(0) += 1;
        }
        hist
    }
}

pub fn span_of(expr: &TangleExpr, q: &Quandle) -> Result<ColoringSpan, SpanError> {
    span_of_with_budget(expr, q, DEFAULT_BUDGET)
}

/// The coloring span of a tangle: every coloring of its diagram, with legs
/// restricting to the bottom and top endpoints.
pub fn span_of_with_budget(expr: &TangleExpr, q: &Quandle, budget: u64) -> Result<ColoringSpan, SpanError> {
    let diag = compile_diagram(expr);
    let colorings = enumerate_colorings_with_budget(&diag, q, budget)?;
    let restrict = |c: &Vec<Element>, arcs: &[usize]| BoundaryColoring(arcs.iter().map(|&a| c[a]).collect());
    let leg_left = colorings.iter().map(|c| restrict(c, &diag.bottom_arcs)).collect();
    let leg_right = colorings.iter().map(|c| restrict(c, &diag.top_arcs)).collect();
    Ok(ColoringSpan {
        quandle: Arc::new(q.clone()),
        m: expr.bottom(),
        n: expr.top(),
        apex: colorings.into_iter().map(ApexPoint).collect(),
        leg_left,
        leg_right,
    })
}

/// Composite by pullback: pairs of apex points that agree on the shared
/// boundary. Apex order is lexicographic in `(f index, g index)`.
pub fn compose_spans(f: &ColoringSpan, g: &ColoringSpan) -> Result<ColoringSpan, SpanError> {
    f.same_quandle(g)?;
    if f.n != g.m {
        return Err(SpanError::WidthMismatch { left: f.n, right: g.m });
    }
    let mut by_left: HashMap<&BoundaryColoring, Vec<usize>> = HashMap::new();
    for (j, l) in g.leg_left.iter().enumerate() {
        by_left.entry(l).or_default().push(j);
    }
    let mut apex = Vec::new();
    let mut leg_left = Vec::new();
    let mut leg_right = Vec::new();
    for (i, x) in f.apex.iter().enumerate() {
        let Some(matches) = by_left.get(&f.leg_right[i]) else { continue };
        for &j in matches {
            apex.push(x.concat(&g.apex[j]));
            leg_left.push(f.leg_left[i].clone());
            leg_right.push(g.leg_right[j].clone());
        }
    }
    Ok(ColoringSpan { quandle: Arc::clone(&f.quandle), m: f.m, n: g.n, apex, leg_left, leg_right })
}

/// Cartesian product, with `f`'s endpoints leftmost.
pub fn product_spans(f: &ColoringSpan, g: &ColoringSpan) -> Result<ColoringSpan, SpanError> {
    f.same_quandle(g)?;
    let size = f.apex.len() * g.apex.len();
    let mut apex = Vec::with_capacity(size);
    let mut leg_left = Vec::with_capacity(size);
    let mut leg_right = Vec::with_capacity(size);
    for (i, x) in f.apex.iter().enumerate() {
        for (j, y) in g.apex.iter().enumerate() {
            apex.push(x.concat(y));
            leg_left.push(f.leg_left[i].concat(&g.leg_left[j]));
            leg_right.push(f.leg_right[i].concat(&g.leg_right[j]));
        }
    }
    Ok(ColoringSpan { quandle: Arc::clone(&f.quandle), m: f.m + g.m, n: f.n + g.n, apex, leg_left, leg_right })
}

/// The matrix of double-preimage cardinalities.
pub fn decategorify(s: &ColoringSpan) -> Result<ColorMatrix, SpanError> {
    let d = s.quandle.size();
    let (bottom, top) = (Encoding::new(d, s.m), Encoding::new(d, s.n));
    let triplets = s
        .leg_left
        .iter()
        .zip(&s.leg_right)
        .map(|(l, r)| (bottom.index(&l.0), top.index(&r.0), 1));
    Ok(ColorMatrix::from_triplets(d, s.m, s.n, triplets)?)
}

fn check_comparable(f: &ColoringSpan, g: &ColoringSpan) -> Result<(), SpanError> {
    f.same_quandle(g)?;
    if (f.m, f.n) != (g.m, g.n) {
        return Err(SpanError::ShapeMismatch { left: (f.m, f.n), right: (g.m, g.n) });
    }
    Ok(())
}

/// Whether the spans are isomorphic over their common feet, i.e. every
/// double preimage has the same size on both sides.
pub fn spans_isomorphic(f: &ColoringSpan, g: &ColoringSpan) -> Result<bool, SpanError> {
    check_comparable(f, g)?;
    Ok(f.double_preimages() == g.double_preimages())
}

/// An explicit apex bijection respecting both legs: `result[i]` is the
/// point of `g` matched with point `i` of `f`. `None` when the spans are not
/// isomorphic.
pub fn apex_bijection(f: &ColoringSpan, g: &ColoringSpan) -> Result<Option<Vec<usize>>, SpanError> {
    check_comparable(f, g)?;
    if f.apex.len() != g.apex.len() {
        return Ok(None);
    }
    let mut pool: HashMap<(&BoundaryColoring, &BoundaryColoring), Vec<usize>> = HashMap::new();
    for j in (0..g.apex.len()).rev() {
        pool.entry((&g.leg_left[j], &g.leg_right[j])).or_default().push(j);
    }
    let mut map = Vec::with_capacity(f.apex.len());
    for i in 0..f.apex.len() {
        match pool.get_mut(&(&f.leg_left[i], &f.leg_right[i])).and_then(Vec::pop) {
            Some(j) => map.push(j),
            None => return Ok(None),
        }
    }
    Ok(Some(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::dihedral;
    use crate::tangle::parse;

    fn span(src: &str, n: usize) -> ColoringSpan {
        span_of(&crate::tangle::catalog::resolve(src).unwrap(), &dihedral(n).unwrap()).unwrap()
    }

    #[test]
    fn identity_span() {
        let s = span("id(1)", 3);
        assert_eq!(s.apex_size(), 3);
        for i in 0..3 {
            assert_eq!(s.leg_left(i), s.leg_right(i));
            assert_eq!(s.leg_left(i).colors(), &[i]);
        }
    }

    #[test]
    fn crossing_span() {
        let s = span("xp", 3);
        assert_eq!(s.apex_size(), 9);
        let i = (0..9).find(|&i| s.leg_left(i).colors() == [0, 1]).unwrap();
        assert_eq!(s.leg_right(i).colors(), &[2, 0]);
    }

    #[test]
    fn trefoil_span() {
        let s = span("trefoil", 3);
        assert_eq!(s.apex_size(), 9);
        assert!((0..9).all(|i| s.leg_left(i).width() == 0 && s.leg_right(i).width() == 0));
        assert_eq!(decategorify(&s).unwrap().scalar(), Some(9));
    }

    #[test]
    fn compose_with_identity() {
        let s = span("xp * id(1) ; id(1) * cup", 3);
        let id = span("id(3)", 3);
        let c = compose_spans(&id, &s).unwrap();
        assert_eq!(c.apex_size(), s.apex_size());
        assert!(apex_bijection(&c, &s).unwrap().is_some());
    }

    #[test]
    fn reidemeister_two_by_pullback() {
        let c = compose_spans(&span("xp", 3), &span("xm", 3)).unwrap();
        assert_eq!(c.apex_size(), 9);
        assert!(spans_isomorphic(&c, &span("id(2)", 3)).unwrap());
    }

    #[test]
    fn cap_then_cup() {
        let c = compose_spans(&span("cap", 3), &span("cup", 3)).unwrap();
        assert_eq!(c.apex_size(), 3);
        assert_eq!((c.m(), c.n()), (0, 0));
    }

    #[test]
    fn compose_width_mismatch() {
        assert!(matches!(
            compose_spans(&span("cup", 3), &span("xp", 3)),
            Err(SpanError::WidthMismatch { left: 0, right: 2 })
        ));
    }

    #[test]
    fn quandle_mismatch() {
        assert!(matches!(compose_spans(&span("id(1)", 3), &span("id(1)", 5)), Err(SpanError::QuandleMismatch)));
    }

    #[test]
    fn products() {
        let unit = span("id(0)", 3);
        let s = span("xp", 3);
        let p = product_spans(&s, &unit).unwrap();
        assert!(spans_isomorphic(&p, &s).unwrap());
        let cups = product_spans(&span("cup", 3), &span("cup", 3)).unwrap();
        assert_eq!((cups.apex_size(), cups.m(), cups.n()), (9, 4, 0));
        let side = span("xp * cup", 3);
        let prod = product_spans(&span("xp", 3), &span("cup", 3)).unwrap();
        assert!(apex_bijection(&side, &prod).unwrap().is_some());
    }

    #[test]
    fn decategorify_cup_and_empty() {
        let cup = decategorify(&span("cup", 3)).unwrap();
        assert_eq!(cup.entries(), &[(0, 0, 1), (4, 0, 1), (8, 0, 1)]);
        // a 0 -> 0 span with empty apex
        let empty = ColoringSpan {
            quandle: Arc::new(dihedral(3).unwrap()),
            m: 0,
            n: 0,
            apex: vec![],
            leg_left: vec![],
            leg_right: vec![],
        };
        let m = decategorify(&empty).unwrap();
        assert_eq!((m.rows(), m.cols(), m.scalar()), (1, 1, Some(0)));
    }

    #[test]
    fn isomorphism_checks() {
        let s = span("trefoil", 3);
        assert!(spans_isomorphic(&s, &s).unwrap());
        let lhs = span("(xp * id(1)) ; (id(1) * xp) ; (xp * id(1))", 3);
        let rhs = span("(id(1) * xp) ; (xp * id(1)) ; (id(1) * xp)", 3);
        assert!(spans_isomorphic(&lhs, &rhs).unwrap());
        assert!(matches!(
            spans_isomorphic(&span("cup", 3), &span("cap", 3)),
            Err(SpanError::ShapeMismatch { left: (2, 0), right: (0, 2) })
        ));
        // same shape, different counts
        assert!(!spans_isomorphic(&span("xp", 3), &span("id(2)", 3)).unwrap());
        assert!(apex_bijection(&span("xp", 3), &span("id(2)", 3)).unwrap().is_none());
    }

    #[test]
    fn histogram() {
        let s = span_of(&parse("cap * cap ; id(1) * cup * id(1)").unwrap(), &dihedral(3).unwrap()).unwrap();
        // the two maxima joined in the middle form a single arc
        assert_eq!(s.preimage_histogram(), BTreeMap::from([(1, 3)]));
        let circle = span("xp ; cup ; cap", 3);
        assert_eq!(circle.preimage_histogram(), BTreeMap::from([(1, 9)]));
    }
}
