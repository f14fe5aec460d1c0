//! Coloring matrices: exact sparse natural-number matrices indexed by
//! colorings of the bottom (rows) and top (columns) endpoints.

mod braid;
mod color_matrix;
mod evaluate;
mod relations;

pub use braid::{braid_expr, braid_generator, braid_generator_expr, braid_matrix, parse_braid_word, BraidLetter};
pub use color_matrix::{state_count, ColorMatrix, Encoding, MatrixDocument, MatrixError, DENSE_LIMIT};
pub use evaluate::{evaluate, evaluate_with, generator_matrix, EvalOptions, DEFAULT_MAX_STATES};
pub use relations::{
    relation_instances, verify_relations, RelationCheck, RelationFamily, RelationInstance, RelationReport,
};
