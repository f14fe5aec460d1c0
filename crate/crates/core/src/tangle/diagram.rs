//! Compilation of a tangle expression into arcs and crossings.
//!
//! Every generator contributes strand segments. Sequential composition glues
//! the top segments of the lower piece to the bottom segments of the upper
//! piece; a union-find over segments collects the glued pieces into arcs.
//! Over-strands stay one segment through their crossing, under-strands are
//! two segments, which is exactly the arc structure of a diagram.

use super::ast::{ExprKind, Generator, TangleExpr};

pub type ArcId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

/// At a crossing the under-arc `under_in` passes beneath `over` and emerges
/// as `under_out`; a coloring must satisfy `color(under_out) = color(over) ▷
/// color(under_in)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub under_in: ArcId,
    pub over: ArcId,
    pub under_out: ArcId,
    pub sign: Sign,
}

impl Crossing {
    pub fn arcs(&self) -> [ArcId; 3] {
        [self.under_in, self.over, self.under_out]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcDiagram {
    pub arc_count: usize,
    pub crossings: Vec<Crossing>,
    /// Arc at each bottom endpoint, left to right.
    pub bottom_arcs: Vec<ArcId>,
    /// Arc at each top endpoint, left to right.
    pub top_arcs: Vec<ArcId>,
}

impl ArcDiagram {
    /// Arcs that touch neither the boundary nor any crossing: closed
    /// unknotted circles, each a free color choice.
    pub fn free_circles(&self) -> Vec<ArcId> {
        let mut touched = vec![false; self.arc_count];
        for &a in self.bottom_arcs.iter().chain(&self.top_arcs) {
            touched[a] = true;
        }
        for c in &self.crossings {
            for a in c.arcs() {
                touched[a] = true;
            }
        }
        (0..self.arc_count).filter(|&a| !touched[a]).collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn add(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

struct Piece {
    bottom: Vec<usize>,
    top: Vec<usize>,
}

struct Builder {
    segments: UnionFind,
    crossings: Vec<Crossing>,
}

impl Builder {
    fn build(&mut self, expr: &TangleExpr) -> Piece {
        match expr.kind() {
            ExprKind::Atom(g) => self.generator(*g),
            ExprKind::Then(lower, upper) => {
                let lo = self.build(lower);
                let up = self.build(upper);
                for (&a, &b) in lo.top.iter().zip(&up.bottom) {
                    self.segments.union(a, b);
                }
                Piece { bottom: lo.bottom, top: up.top }
            }
            ExprKind::Beside(left, right) => {
                let mut l = self.build(left);
                let r = self.build(right);
                l.bottom.extend(r.bottom);
                l.top.extend(r.top);
                l
            }
        }
    }

    fn generator(&mut self, g: Generator) -> Piece {
        match g {
            Generator::Id(n) => {
                let strands: Vec<_> = (0..n).map(|_| self.segments.add()).collect();
                Piece { bottom: strands.clone(), top: strands }
            }
            Generator::Cup => {
                let s = self.segments.add();
                Piece { bottom: vec![s, s], top: vec![] }
            }
            Generator::Cap => {
                let s = self.segments.add();
                Piece { bottom: vec![], top: vec![s, s] }
            }
            Generator::Xp => {
                // over: bottom-left to top-right; under: bottom-right to top-left
                let over = self.segments.add();
                let under_in = self.segments.add();
                let under_out = self.segments.add();
                self.crossings.push(Crossing { under_in, over, under_out, sign: Sign::Positive });
                Piece { bottom: vec![over, under_in], top: vec![under_out, over] }
            }
            Generator::Xm => {
                // over: bottom-right to top-left; under: bottom-left to top-right
                let over = self.segments.add();
                let under_in = self.segments.add();
                let under_out = self.segments.add();
                self.crossings.push(Crossing { under_in, over, under_out, sign: Sign::Negative });
                Piece { bottom: vec![under_in, over], top: vec![over, under_out] }
            }
        }
    }
}

/// Compiles an expression to its arc diagram. Arc ids are assigned in order
/// of first appearance: bottom endpoints, then crossings, then top
/// endpoints, then closed circles.
pub fn compile_diagram(expr: &TangleExpr) -> ArcDiagram {
    let mut b = Builder { segments: UnionFind { parent: Vec::new() }, crossings: Vec::new() };
    let piece = b.build(expr);
    let seg_count = b.segments.parent.len();

    const UNSET: usize = usize::MAX;
    let mut arc_of_root = vec![UNSET; seg_count];
    let mut arc_count = 0;
    let mut label = |seg: usize, uf: &mut UnionFind| {
        let root = uf.find(seg);
        if arc_of_root[root] == UNSET {
            arc_of_root[root] = arc_count;
            arc_count += 1;
        }
        arc_of_root[root]
    };

    let bottom_arcs: Vec<_> = piece.bottom.iter().map(|&s| label(s, &mut b.segments)).collect();
    let crossings: Vec<_> = b
        .crossings
        .iter()
        .map(|c| Crossing {
            under_in: label(c.under_in, &mut b.segments),
            over: label(c.over, &mut b.segments),
            under_out: label(c.under_out, &mut b.segments),
            sign: c.sign,
        })
        .collect();
    let top_arcs: Vec<_> = piece.top.iter().map(|&s| label(s, &mut b.segments)).collect();
    for s in 0..seg_count {
        label(s, &mut b.segments);
    }

    ArcDiagram { arc_count, crossings, bottom_arcs, top_arcs }
}
