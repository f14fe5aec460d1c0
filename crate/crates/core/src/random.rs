//! Seeded generation of well-typed tangle expressions for cross-checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tangle::TangleExpr;

/// Size limits for generated expressions.
#[derive(Clone, Copy, Debug)]
pub struct ExprShape {
    /// Upper bound on the number of strands at every layer boundary.
    pub max_width: usize,
    /// Upper bound on the number of stacked layers.
    pub max_layers: usize,
}

impl Default for ExprShape {
    fn default() -> Self {
        ExprShape { max_width: 4, max_layers: 6 }
    }
}

/// Deterministic generator; identical seeds give identical expressions on
/// every platform.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One horizontal layer taking `width_in` strands, built from generators
/// laid side by side. Its top width never exceeds `max_width`.
pub fn random_layer<R: Rng>(rng: &mut R, width_in: usize, max_width: usize) -> TangleExpr {
    let mut atoms = Vec::new();
    let mut remaining = width_in;
    let mut width_out = 0;
    loop {
        // ids, crossings and cups never widen, so `remaining` bounds what is left
        let cap_fits = width_out + remaining + 2 <= max_width;
        if cap_fits && rng.gen_bool(0.2) {
            atoms.push(TangleExpr::cap());
            width_out += 2;
            continue;
        }
        if remaining == 0 {
            break;
        }
        let pick = if remaining >= 2 { rng.gen_range(0..5) } else { 4 };
        let atom = match pick {
            0 => TangleExpr::xp(),
            1 => TangleExpr::xm(),
            2 => TangleExpr::cup(),
            3 => {
                let k = rng.gen_range(2..=remaining);
                TangleExpr::id(k)
            }
            _ => TangleExpr::id(1),
        };
        remaining -= atom.bottom();
        width_out += atom.top();
        atoms.push(atom);
    }
    if atoms.is_empty() {
        return TangleExpr::id(0);
    }
    group(rng, atoms, TangleExpr::beside)
}

/// Layers stacked from a bottom of `bottom` strands.
pub fn random_layers<R: Rng>(rng: &mut R, bottom: usize, shape: ExprShape) -> Vec<TangleExpr> {
    let count = rng.gen_range(1..=shape.max_layers.max(1));
    let mut width = bottom;
    let mut layers = Vec::with_capacity(count);
    for _ in 0..count {
        let layer = random_layer(rng, width, shape.max_width);
        width = layer.top();
        layers.push(layer);
    }
    layers
}

/// Stacks layers with a random bracketing.
pub fn assemble<R: Rng>(rng: &mut R, layers: Vec<TangleExpr>) -> TangleExpr {
    group(rng, layers, |a, b| TangleExpr::then(a, b).expect("adjacent layers agree on width"))
}

fn group<R: Rng>(rng: &mut R, mut items: Vec<TangleExpr>, join: fn(TangleExpr, TangleExpr) -> TangleExpr) -> TangleExpr {
    if items.len() == 1 {
        return items.pop().expect("one item");
    }
    let split = rng.gen_range(1..items.len());
    let right = items.split_off(split);
    let l = group(rng, items, join);
    let r = group(rng, right, join);
    join(l, r)
}

pub fn random_expr_from<R: Rng>(rng: &mut R, bottom: usize, shape: ExprShape) -> TangleExpr {
    let layers = random_layers(rng, bottom, shape);
    assemble(rng, layers)
}

pub fn random_expr<R: Rng>(rng: &mut R, shape: ExprShape) -> TangleExpr {
    let bottom = rng.gen_range(0..=shape.max_width);
    random_expr_from(rng, bottom, shape)
}

/// `(A, B)` with `A`'s top width equal to `B`'s bottom width.
pub fn random_composable_pair<R: Rng>(rng: &mut R, shape: ExprShape) -> (TangleExpr, TangleExpr) {
    let a = random_expr(rng, shape);
    let b = random_expr_from(rng, a.top(), shape);
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::parse;

    #[test]
    fn generated_expressions_respect_shape() {
        let mut rng = rng_from_seed(7);
        let shape = ExprShape::default();
        for _ in 0..500 {
            let e = random_expr(&mut rng, shape);
            assert!(e.max_width() <= shape.max_width, "{e}");
            // display re-parses to the same tree
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let shape = ExprShape::default();
        let a: Vec<String> = (0..20).map(|s| random_expr(&mut rng_from_seed(s), shape).to_string()).collect();
        let b: Vec<String> = (0..20).map(|s| random_expr(&mut rng_from_seed(s), shape).to_string()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn pairs_compose() {
        let mut rng = rng_from_seed(11);
        for _ in 0..100 {
            let (a, b) = random_composable_pair(&mut rng, ExprShape::default());
            assert!(TangleExpr::then(a, b).is_ok());
        }
    }
}
