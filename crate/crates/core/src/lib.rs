//! Quandle colorings of tangles.
//!
//! A finite involutory quandle `X` colors the arcs of a tangle diagram.
//! Collecting the colorings of a tangle `T: m -> n` gives a span of sets
//! `X^m ← Col(T) → X^n`; counting the colorings over each pair of boundary
//! colorings gives a `d^m × d^n` natural-number matrix. Gluing tangles end to
//! end multiplies these matrices and placing them side by side takes
//! Kronecker products, so the matrix of any tangle can be assembled from the
//! four generators `xp`, `xm`, `cup` and `cap`. For a link the matrix is
//! `1x1` and holds the number of colorings.
//!
//! ```
//! use tanglecolor::{matrix::evaluate, quandle::dihedral, tangle::catalog};
//!
//! let trefoil = catalog::lookup("trefoil").unwrap();
//! let m = evaluate(&trefoil, &dihedral(3).unwrap()).unwrap();
//! assert_eq!(m.scalar(), Some(9));
//! ```

pub mod cli;
pub mod matrix;
pub mod quandle;
pub mod random;
pub mod span;
pub mod tangle;
