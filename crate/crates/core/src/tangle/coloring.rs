//! Brute-force enumeration of quandle colorings of an arc diagram.
//!
//! Arcs are assigned in index order, so the output is lexicographic. A
//! crossing is checked as soon as its last arc is assigned, and an under-arc
//! whose partner and over-arc are already fixed only gets its forced color.

use thiserror::Error;

use super::diagram::ArcDiagram;
use crate::quandle::{Element, Quandle, QuandleError};

/// Default cap on search work: candidate assignments plus relation checks.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A color for every arc, indexed by arc id.
pub type Coloring = Vec<Element>;

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error("coloring search exceeded its budget of {budget} steps")]
    BudgetExceeded { budget: u64 },
}

#[derive(Clone, Copy)]
enum Role {
    UnderIn,
    UnderOut,
    // the over-arc, or an arc the crossing does not determine
    Over,
}

struct Search<'a> {
    q: &'a Quandle,
    d: usize,
    // per arc: crossings whose highest arc is this one, with this arc's role
    closing: Vec<Vec<(usize, Role)>>,
    crossings: Vec<[usize; 3]>,
    colors: Vec<Element>,
    out: Vec<Coloring>,
    spent: u64,
    budget: u64,
}

impl Search<'_> {
    fn charge(&mut self, n: u64) -> Result<(), ColoringError> {
        self.spent += n;
        if self.spent > self.budget {
            Err(ColoringError::BudgetExceeded { budget: self.budget })
        } else {
            Ok(())
        }
    }

    fn forced(&self, arc: usize) -> Option<Element> {
        self.closing[arc].iter().find_map(|&(c, role)| {
            let [under_in, over, under_out] = self.crossings[c];
            match role {
                Role::UnderOut => Some(self.q.act(self.colors[over], self.colors[under_in])),
                // involutory: b ▷ (b ▷ a) = a
                Role::UnderIn => Some(self.q.act(self.colors[over], self.colors[under_out])),
                Role::Over => None,
            }
        })
    }

    fn consistent(&self, arc: usize) -> bool {
        self.closing[arc].iter().all(|&(c, _)| {
            let [under_in, over, under_out] = self.crossings[c];
            self.colors[under_out] == self.q.act(self.colors[over], self.colors[under_in])
        })
    }

    fn descend(&mut self, arc: usize) -> Result<(), ColoringError> {
        if arc == self.colors.len() {
            self.out.push(self.colors.clone());
            return Ok(());
        }
        let candidates = match self.forced(arc) {
            Some(v) => v..v + 1,
            None => 0..self.d,
        };
        for v in candidates {
            self.charge(1 + self.closing[arc].len() as u64)?;
            self.colors[arc] = v;
            if self.consistent(arc) {
                self.descend(arc + 1)?;
            }
        }
        Ok(())
    }
}

pub fn enumerate_colorings(diag: &ArcDiagram, q: &Quandle) -> Result<Vec<Coloring>, ColoringError> {
    enumerate_colorings_with_budget(diag, q, DEFAULT_BUDGET)
}

/// All colorings of `diag` by the involutory quandle `q`, in lexicographic
/// order of the arc color vectors.
pub fn enumerate_colorings_with_budget(
    diag: &ArcDiagram,
    q: &Quandle,
    budget: u64,
) -> Result<Vec<Coloring>, ColoringError> {
    q.require_involutory()?;

    let mut closing = vec![Vec::new(); diag.arc_count];
    let crossings: Vec<[usize; 3]> = diag.crossings.iter().map(|c| c.arcs()).collect();
    for (i, arcs) in crossings.iter().enumerate() {
        let last = *arcs.iter().max().expect("three arcs");
        // a forced value needs the other two arcs already colored
        let role = if arcs[0] == arcs[2] || arcs[1] == last {
            Role::Over
        } else if arcs[2] == last {
            Role::UnderOut
        } else {
            Role::UnderIn
        };
        closing[last].push((i, role));
    }

    let mut search = Search {
        q,
        d: q.size(),
        closing,
        crossings,
        colors: vec![0; diag.arc_count],
        out: Vec::new(),
        spent: 0,
        budget,
    };
    search.descend(0)?;
    Ok(search.out)
}

/// Number of colorings, without keeping them.
pub fn count_colorings(diag: &ArcDiagram, q: &Quandle, budget: u64) -> Result<u64, ColoringError> {
    Ok(enumerate_colorings_with_budget(diag, q, budget)?.len() as u64)
}
