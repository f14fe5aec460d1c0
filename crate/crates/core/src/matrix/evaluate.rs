use super::color_matrix::{state_count, ColorMatrix, MatrixError};
use crate::quandle::Quandle;
use crate::tangle::{ExprKind, Generator, TangleExpr};

/// Default bound on `d^width` for any intermediate boundary.
pub const DEFAULT_MAX_STATES: u64 = 1 << 32;

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub max_states: u64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { max_states: DEFAULT_MAX_STATES }
    }
}

/// Coloring matrix of a generating tangle.
///
/// For `xp` the bottom pair `(a, b)` goes to the top pair `(a ▷ b, a)`: the
/// left strand passes over and keeps its color. For `xm` the right strand
/// passes over, `(a, b)` goes to `(b, b ▷ a)`; this is the inverse
/// permutation of `xp`.
pub fn generator_matrix(gen: Generator, q: &Quandle) -> Result<ColorMatrix, MatrixError> {
    q.require_involutory()?;
    let d = q.size();
    let du = d as u64;
    let pairs = || (0..d).flat_map(move |a| (0..d).map(move |b| (a, b)));
    let idx = |a: usize, b: usize| a as u64 * du + b as u64;
    match gen {
        Generator::Xp => ColorMatrix::from_triplets(
            d,
            2,
            2,
            pairs().map(|(a, b)| (idx(a, b), idx(q.act(a, b), a), 1)),
        ),
        Generator::Xm => ColorMatrix::from_triplets(
            d,
            2,
            2,
            pairs().map(|(a, b)| (idx(a, b), idx(b, q.act(b, a)), 1)),
        ),
        Generator::Cup => ColorMatrix::from_triplets(d, 2, 0, (0..d).map(|a| (idx(a, a), 0, 1))),
        Generator::Cap => ColorMatrix::from_triplets(d, 0, 2, (0..d).map(|a| (0, idx(a, a), 1))),
        Generator::Id(n) => ColorMatrix::identity(d, n),
    }
}

pub fn evaluate(expr: &TangleExpr, q: &Quandle) -> Result<ColorMatrix, MatrixError> {
    evaluate_with(expr, q, &EvalOptions::default())
}

/// Coloring matrix of an expression, assembled from generator matrices by
/// matrix products (sequential composition) and Kronecker products
/// (side by side).
pub fn evaluate_with(expr: &TangleExpr, q: &Quandle, opts: &EvalOptions) -> Result<ColorMatrix, MatrixError> {
    q.require_involutory()?;
    Evaluator { q, opts }.eval(expr)
}

struct Evaluator<'a> {
    q: &'a Quandle,
    opts: &'a EvalOptions,
}

impl Evaluator<'_> {
    fn guard(&self, width: usize) -> Result<(), MatrixError> {
        let d = self.q.size();
        let too_wide = MatrixError::WidthExceeded { width, d, limit: self.opts.max_states };
        match state_count(d, width) {
            Ok(states) if states <= self.opts.max_states => Ok(()),
            _ => Err(too_wide),
        }
    }

    fn eval(&self, expr: &TangleExpr) -> Result<ColorMatrix, MatrixError> {
        self.guard(expr.bottom().max(expr.top()))?;
        match expr.kind() {
            ExprKind::Atom(g) => generator_matrix(*g, self.q),
            ExprKind::Then(lower, upper) => self.eval(lower)?.multiply(&self.eval(upper)?),
            ExprKind::Beside(left, right) => self.eval(left)?.kronecker(&self.eval(right)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::dihedral;
    use crate::tangle::{catalog, parse};

    fn d3() -> Quandle {
        dihedral(3).unwrap()
    }

    #[test]
    fn cup_and_cap_vectors() {
        let cup = generator_matrix(Generator::Cup, &d3()).unwrap();
        assert_eq!((cup.rows(), cup.cols()), (9, 1));
        assert_eq!(cup.entries(), &[(0, 0, 1), (4, 0, 1), (8, 0, 1)]);
        let cap = generator_matrix(Generator::Cap, &d3()).unwrap();
        assert_eq!(cap, cup.transpose());
    }

    #[test]
    fn crossing_bottom_01_goes_to_20() {
        let xp = generator_matrix(Generator::Xp, &d3()).unwrap();
        assert_eq!(xp.get(1, 6), 1);
        assert!(xp.is_permutation());
    }

    #[test]
    fn xm_inverts_xp() {
        for n in 1..=7 {
            let q = dihedral(n).unwrap();
            let xp = generator_matrix(Generator::Xp, &q).unwrap();
            let xm = generator_matrix(Generator::Xm, &q).unwrap();
            assert_eq!(xm, xp.transpose());
            let id = ColorMatrix::identity(n, 2).unwrap();
            assert_eq!(xp.multiply(&xm).unwrap(), id);
            assert_eq!(xm.multiply(&xp).unwrap(), id);
        }
    }

    #[test]
    fn empty_identity() {
        let m = generator_matrix(Generator::Id(0), &d3()).unwrap();
        assert_eq!(m.scalar(), Some(1));
    }

    #[test]
    fn link_scalars() {
        let eval = |name: &str, n: usize| evaluate(&catalog::lookup(name).unwrap(), &dihedral(n).unwrap()).unwrap();
        assert_eq!(eval("unknot", 3).scalar(), Some(3));
        assert_eq!(eval("trefoil", 3).scalar(), Some(9));
        assert_eq!(eval("figure8", 5).scalar(), Some(25));
        assert_eq!(eval("hopf", 3).scalar(), Some(3));
    }

    #[test]
    fn zigzags_are_identity() {
        for n in [3, 4, 5] {
            let q = dihedral(n).unwrap();
            let id = ColorMatrix::identity(n, 1).unwrap();
            assert_eq!(evaluate(&parse("(id(1) * cap) ; (cup * id(1))").unwrap(), &q).unwrap(), id);
            assert_eq!(evaluate(&parse("(cap * id(1)) ; (id(1) * cup)").unwrap(), &q).unwrap(), id);
        }
    }

    #[test]
    fn width_guard() {
        let opts = EvalOptions { max_states: 81 };
        let q = d3();
        assert!(evaluate_with(&TangleExpr::id(4), &q, &opts).is_ok());
        assert!(matches!(
            evaluate_with(&TangleExpr::id(5), &q, &opts),
            Err(MatrixError::WidthExceeded { width: 5, d: 3, limit: 81 })
        ));
    }

    #[test]
    fn rejects_non_involutory() {
        let right = vec![vec![0, 2, 3, 1], vec![3, 1, 0, 2], vec![1, 3, 2, 0], vec![2, 0, 1, 3]];
        let q = Quandle::from_right_table(right).unwrap();
        assert!(matches!(evaluate(&TangleExpr::xp(), &q), Err(MatrixError::Quandle(_))));
        assert!(generator_matrix(Generator::Cup, &q).is_err());
    }
}
