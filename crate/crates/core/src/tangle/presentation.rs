use serde::Serialize;

use super::coloring::{ColoringError, Coloring};
use super::diagram::ArcDiagram;
use crate::quandle::Quandle;

/// Presentation of the fundamental involutory quandle of a diagram: one
/// generator per arc and, for every crossing, a relation `c = b ▷ a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuandlePresentation {
    pub generators: usize,
    /// `(a, b, c)` meaning `c = b ▷ a`, with `b` the over-arc.
    pub relations: Vec<(usize, usize, usize)>,
    pub marked_bottom: Vec<usize>,
    pub marked_top: Vec<usize>,
}

pub fn extract_presentation(diag: &ArcDiagram) -> QuandlePresentation {
    QuandlePresentation {
        generators: diag.arc_count,
        relations: diag.crossings.iter().map(|c| (c.under_in, c.over, c.under_out)).collect(),
        marked_bottom: diag.bottom_arcs.clone(),
        marked_top: diag.top_arcs.clone(),
    }
}

impl QuandlePresentation {
    /// Homomorphisms to `q`: generator assignments satisfying every
    /// relation, found by scanning all `d^generators` assignments in
    /// lexicographic order. `budget` bounds the number of assignments.
    pub fn homomorphisms_to(&self, q: &Quandle, budget: u64) -> Result<Vec<Coloring>, ColoringError> {
        q.require_involutory()?;
        let d = q.size();
        let total = (d as u64)
            .checked_pow(self.generators as u32)
            .filter(|&t| t <= budget)
            .ok_or(ColoringError::BudgetExceeded { budget })?;
        let mut out = Vec::new();
        let mut assignment = vec![0; self.generators];
        for _ in 0..total {
            let ok = self.relations.iter().all(|&(a, b, c)| {
                assignment[c] == q.op_right(assignment[b], assignment[a]).expect("in range")
            });
            if ok {
                out.push(assignment.clone());
            }
            // odometer, last generator fastest
            for slot in assignment.iter_mut().rev() {
                *slot += 1;
                if *slot < d {
                    break;
                }
                *slot = 0;
            }
        }
        Ok(out)
    }
}
