//! Braid group representations: a braid on `n` strands is a tangle from
//! `n` to `n`, and its coloring matrix is a permutation of `X^n`.

use super::color_matrix::{ColorMatrix, MatrixError};
use super::evaluate::evaluate;
use crate::quandle::Quandle;
use crate::tangle::{Sign, TangleExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BraidLetter {
    /// 1-based: `s_i` crosses strands `i` and `i + 1`.
    pub index: usize,
    pub sign: Sign,
}

/// Parses words like `"s1 s2 -s1"`; `-` marks an inverse generator.
pub fn parse_braid_word(word: &str) -> Result<Vec<BraidLetter>, MatrixError> {
    word.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|tok| {
            let (sign, rest) = match tok.strip_prefix('-') {
                Some(rest) => (Sign::Negative, rest),
                None => (Sign::Positive, tok),
            };
            let index = rest
                .strip_prefix(['s', 'S'])
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| MatrixError::BraidWord(tok.to_string()))?;
            Ok(BraidLetter { index, sign })
        })
        .collect()
}

/// `id(i-1) * x± * id(n-i-1)`.
pub fn braid_generator_expr(index: usize, strands: usize, sign: Sign) -> Result<TangleExpr, MatrixError> {
    if index == 0 || index >= strands {
        return Err(MatrixError::BraidIndex { index, strands });
    }
    let crossing = match sign {
        Sign::Positive => TangleExpr::xp(),
        Sign::Negative => TangleExpr::xm(),
    };
    Ok(TangleExpr::tensor([TangleExpr::id(index - 1), crossing, TangleExpr::id(strands - index - 1)]))
}

pub fn braid_generator(index: usize, strands: usize, sign: Sign, q: &Quandle) -> Result<ColorMatrix, MatrixError> {
    evaluate(&braid_generator_expr(index, strands, sign)?, q)
}

/// The braid word as a tangle, first letter at the bottom. The empty word
/// is `id(n)`.
pub fn braid_expr(word: &[BraidLetter], strands: usize) -> Result<TangleExpr, MatrixError> {
    let layers = word
        .iter()
        .map(|l| braid_generator_expr(l.index, strands, l.sign))
        .collect::<Result<Vec<_>, _>>()?;
    if layers.is_empty() {
        return Ok(TangleExpr::id(strands));
    }
    Ok(TangleExpr::stack(layers).expect("braid layers share a width"))
}

/// Product of generator matrices, left to right.
pub fn braid_matrix(word: &[BraidLetter], strands: usize, q: &Quandle) -> Result<ColorMatrix, MatrixError> {
    q.require_involutory()?;
    let mut acc = ColorMatrix::identity(q.size(), strands)?;
    for letter in word {
        acc = acc.multiply(&braid_generator(letter.index, strands, letter.sign, q)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::generator_matrix;
    use crate::quandle::dihedral;
    use crate::tangle::Generator;

    #[test]
    fn parse_words() {
        let w = parse_braid_word("s1 s2 -s1").unwrap();
        assert_eq!(
            w,
            vec![
                BraidLetter { index: 1, sign: Sign::Positive },
                BraidLetter { index: 2, sign: Sign::Positive },
                BraidLetter { index: 1, sign: Sign::Negative },
            ]
        );
        assert!(parse_braid_word("").unwrap().is_empty());
        assert!(matches!(parse_braid_word("s1 t2"), Err(MatrixError::BraidWord(t)) if t == "t2"));
    }

    #[test]
    fn single_generator_is_crossing() {
        let q = dihedral(3).unwrap();
        assert_eq!(
            braid_generator(1, 2, Sign::Positive, &q).unwrap(),
            generator_matrix(Generator::Xp, &q).unwrap()
        );
    }

    #[test]
    fn index_bounds() {
        let q = dihedral(3).unwrap();
        assert!(matches!(braid_generator(0, 3, Sign::Positive, &q), Err(MatrixError::BraidIndex { .. })));
        assert!(matches!(braid_generator(3, 3, Sign::Positive, &q), Err(MatrixError::BraidIndex { .. })));
    }

    #[test]
    fn inverse_pairs_cancel() {
        let q = dihedral(3).unwrap();
        for n in 2..=4 {
            let id = ColorMatrix::identity(3, n).unwrap();
            for i in 1..n {
                let s = braid_generator(i, n, Sign::Positive, &q).unwrap();
                let t = braid_generator(i, n, Sign::Negative, &q).unwrap();
                assert_eq!(s.multiply(&t).unwrap(), id);
                assert!(s.is_permutation());
            }
        }
    }

    #[test]
    fn word_matrix_matches_expression() {
        let q = dihedral(5).unwrap();
        let w = parse_braid_word("s1 -s2 s1 s3 -s2").unwrap();
        assert_eq!(braid_matrix(&w, 4, &q).unwrap(), evaluate(&braid_expr(&w, 4).unwrap(), &q).unwrap());
        assert_eq!(braid_matrix(&[], 2, &q).unwrap(), ColorMatrix::identity(5, 2).unwrap());
    }
}
