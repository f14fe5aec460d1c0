//! Finite quandles stored as explicit operation tables.
//!
//! Elements are the integers `0..size`. The right table is indexed operator
//! first: `right[b][a]` is `b ▷ a`, the color an under-arc `a` takes after
//! passing beneath an over-arc `b`. The left table holds the inverse
//! operation, `left[a][b] = a ◁ b`, so that `(b ▷ a) ◁ b = a`.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An element of a finite quandle.
pub type Element = usize;

#[derive(Debug, Error)]
pub enum QuandleError {
    #[error("element {element} out of range for quandle of size {size}")]
    OutOfRange { element: Element, size: usize },
    #[error("quandle size must be positive")]
    EmptyCarrier,
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("not a group table: {0}")]
    NotAGroup(String),
    #[error("row {row} of the right table is not a bijection, so the left operation cannot be derived")]
    NotDerivable { row: Element },
    #[error("table violates the quandle axioms: {0}")]
    AxiomFailure(AxiomReport),
    #[error("quandle is not involutory (witness {witness}); colorings of unoriented diagrams need an involutory quandle")]
    NotInvolutory { witness: Witness },
    #[error("cannot parse quandle document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("cannot read quandle file: {0}")]
    Io(#[from] std::io::Error),
    #[error("unknown quandle source `{0}` (expected `dihedral:N` or a file path)")]
    UnknownSource(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    Q1,
    Q2,
    Q3,
    QInv,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Q1 => "Q1",
            Axiom::Q2 => "Q2",
            Axiom::Q3 => "Q3",
            Axiom::QInv => "QInv",
        };
        f.write_str(s)
    }
}

/// A concrete tuple on which an axiom fails.
///
/// `Q1` carries one element, `Q2` and `QInv` carry `(a, b)`, `Q3` carries
/// `(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub axiom: Axiom,
    pub elements: Vec<Element>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = match self.axiom {
            Axiom::Q1 => &["a"][..],
            Axiom::Q3 => &["a", "b", "c"][..],
            _ => &["a", "b"][..],
        };
        write!(f, "{}:", self.axiom)?;
        for (name, e) in names.iter().zip(&self.elements) {
            write!(f, " {name}={e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub q1_holds: bool,
    pub q2_holds: bool,
    pub q3_holds: bool,
    pub involutory: bool,
    pub counterexamples: Vec<Witness>,
}

impl AxiomReport {
    /// Q1-Q3 all hold.
    pub fn is_quandle(&self) -> bool {
        self.q1_holds && self.q2_holds && self.q3_holds
    }

    pub fn first_witness(&self, axiom: Axiom) -> Option<&Witness> {
        self.counterexamples.iter().find(|w| w.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |b: bool| if b { "holds" } else { "FAILS" };
        write!(
            f,
            "Q1 {}, Q2 {}, Q3 {}, QInv {}",
            flag(self.q1_holds),
            flag(self.q2_holds),
            flag(self.q3_holds),
            flag(self.involutory)
        )?;
        if !self.counterexamples.is_empty() {
            f.write_str(" [")?;
            for (i, w) in self.counterexamples.iter().enumerate() {
                if i > 0 {
                    f.write_str("; ")?;
                }
                write!(f, "{w}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// A finite quandle with both operation tables materialized.
#[derive(Clone, Debug)]
pub struct Quandle {
    size: usize,
    // row-major, right[b * size + a] = b ▷ a
    right: Vec<Element>,
    // row-major, left[a * size + b] = a ◁ b
    left: Vec<Element>,
    label: Option<String>,
    names: Option<Vec<String>>,
}

impl PartialEq for Quandle {
    /// Two quandles are equal when their tables agree; labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.right == other.right && self.left == other.left
    }
}

impl Eq for Quandle {}

impl Quandle {
    /// Builds a quandle from nested tables, checking shape and range but not
    /// the axioms. Used by test harnesses that need deliberately broken tables.
    pub fn from_tables_unchecked(
        right: Vec<Vec<Element>>,
        left: Vec<Vec<Element>>,
    ) -> Result<Self, QuandleError> {
        let size = right.len();
        if size == 0 {
            return Err(QuandleError::EmptyCarrier);
        }
        let right = flatten_table("right", right, size)?;
        let left = flatten_table("left", left, size)?;
        Ok(Quandle { size, right, left, label: None, names: None })
    }

    /// Builds and verifies a quandle. Violations of Q1-Q3 are rejected;
    /// non-involutory quandles are accepted.
    pub fn from_tables(
        right: Vec<Vec<Element>>,
        left: Vec<Vec<Element>>,
    ) -> Result<Self, QuandleError> {
        let q = Self::from_tables_unchecked(right, left)?;
        let report = q.verify_axioms();
        if !report.is_quandle() {
            return Err(QuandleError::AxiomFailure(report));
        }
        Ok(q)
    }

    /// Builds a quandle from its right table alone, deriving `◁` by
    /// inverting each row map `a ↦ b ▷ a`.
    pub fn from_right_table(right: Vec<Vec<Element>>) -> Result<Self, QuandleError> {
        let size = right.len();
        if size == 0 {
            return Err(QuandleError::EmptyCarrier);
        }
        let flat = flatten_table("right", right, size)?;
        let left = derive_left(&flat, size)?;
        let q = Quandle { size, right: flat, left, label: None, names: None };
        let report = q.verify_axioms();
        if !report.is_quandle() {
            return Err(QuandleError::AxiomFailure(report));
        }
        Ok(q)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// `b ▷ a`: the color of the under-arc `a` after crossing under `b`.
    pub fn op_right(&self, b: Element, a: Element) -> Result<Element, QuandleError> {
        self.check(b)?;
        self.check(a)?;
        Ok(self.right[b * self.size + a])
    }

    /// `a ◁ b`.
    pub fn op_left(&self, a: Element, b: Element) -> Result<Element, QuandleError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.left[a * self.size + b])
    }

    /// Unchecked `b ▷ a` for hot loops whose indices are already in range.
    #[inline]
    pub(crate) fn act(&self, b: Element, a: Element) -> Element {
        self.right[b * self.size + a]
    }

    #[inline]
    fn act_left(&self, a: Element, b: Element) -> Element {
        self.left[a * self.size + b]
    }

    fn check(&self, e: Element) -> Result<(), QuandleError> {
        if e < self.size {
            Ok(())
        } else {
            Err(QuandleError::OutOfRange { element: e, size: self.size })
        }
    }

    /// `right_table()[b][a] = b ▷ a`.
    pub fn right_table(&self) -> Vec<Vec<Element>> {
        self.right.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    /// `left_table()[a][b] = a ◁ b`.
    pub fn left_table(&self) -> Vec<Vec<Element>> {
        self.left.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    /// Exhaustive check of Q1, Q2, Q3 and QInv. Every failing tuple is
    /// recorded, so the report can be large for badly broken tables.
    pub fn verify_axioms(&self) -> AxiomReport {
        let d = self.size;
        let mut witnesses = Vec::new();

        for a in 0..d {
            if self.act(a, a) != a {
                witnesses.push(Witness { axiom: Axiom::Q1, elements: vec![a] });
            }
        }
        for a in 0..d {
            for b in 0..d {
                if self.act_left(self.act(b, a), b) != a || self.act(b, self.act_left(a, b)) != a {
                    witnesses.push(Witness { axiom: Axiom::Q2, elements: vec![a, b] });
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let lhs = self.act(a, self.act(b, c));
                    let rhs = self.act(self.act(a, b), self.act(a, c));
                    if lhs != rhs {
                        witnesses.push(Witness { axiom: Axiom::Q3, elements: vec![a, b, c] });
                    }
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                if self.act(b, a) != self.act_left(a, b) {
                    witnesses.push(Witness { axiom: Axiom::QInv, elements: vec![a, b] });
                }
            }
        }

        let holds = |ax| !witnesses.iter().any(|w: &Witness| w.axiom == ax);
        AxiomReport {
            q1_holds: holds(Axiom::Q1),
            q2_holds: holds(Axiom::Q2),
            q3_holds: holds(Axiom::Q3),
            involutory: holds(Axiom::QInv),
            counterexamples: witnesses,
        }
    }

    /// First QInv failure, if any. Cheaper than a full report.
    pub fn involution_witness(&self) -> Option<Witness> {
        let d = self.size;
        for a in 0..d {
            for b in 0..d {
                if self.act(b, a) != self.act_left(a, b) {
                    return Some(Witness { axiom: Axiom::QInv, elements: vec![a, b] });
                }
            }
        }
        None
    }

    pub fn is_involutory(&self) -> bool {
        self.involution_witness().is_none()
    }

    /// Error unless the quandle is involutory; every coloring operation
    /// calls this first.
    pub fn require_involutory(&self) -> Result<(), QuandleError> {
        match self.involution_witness() {
            None => Ok(()),
            Some(witness) => Err(QuandleError::NotInvolutory { witness }),
        }
    }

    pub fn to_document(&self) -> QuandleDocument {
        QuandleDocument {
            size: self.size,
            right: self.right_table(),
            left: Some(self.left_table()),
            label: self.label.clone(),
            names: self.names.clone(),
        }
    }

    pub fn display_name(&self) -> String {
        self.label.clone().unwrap_or_else(|| format!("quandle of order {}", self.size))
    }
}

fn flatten_table(
    which: &str,
    table: Vec<Vec<Element>>,
    size: usize,
) -> Result<Vec<Element>, QuandleError> {
    if table.len() != size {
        return Err(QuandleError::Malformed(format!(
            "{which} table has {} rows, expected {size}",
            table.len()
        )));
    }
    let mut flat = Vec::with_capacity(size * size);
    for (i, row) in table.into_iter().enumerate() {
        if row.len() != size {
            return Err(QuandleError::Malformed(format!(
                "{which} table row {i} has {} entries, expected {size}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&e| e >= size) {
            return Err(QuandleError::Malformed(format!(
                "{which} table row {i} contains {bad}, outside 0..{size}"
            )));
        }
        flat.extend(row);
    }
    Ok(flat)
}

// left[x][b] = the unique a with b ▷ a = x
fn derive_left(right: &[Element], size: usize) -> Result<Vec<Element>, QuandleError> {
    const UNSET: Element = Element::MAX;
    let mut left = vec![UNSET; size * size];
    for b in 0..size {
        for a in 0..size {
            let x = right[b * size + a];
            let slot = &mut left[x * size + b];
            if *slot != UNSET {
                return Err(QuandleError::NotDerivable { row: b });
            }
            *slot = a;
        }
    }
    Ok(left)
}

/// The dihedral quandle on `ℤ/n`, with `b ▷ a = a ◁ b = 2b - a mod n`.
pub fn dihedral(n: usize) -> Result<Quandle, QuandleError> {
    if n == 0 {
        return Err(QuandleError::EmptyCarrier);
    }
    let reflect = |b: usize, a: usize| (2 * b + n - a) % n;
    let right = (0..n).map(|b| (0..n).map(|a| reflect(b, a)).collect()).collect();
    let left = (0..n).map(|a| (0..n).map(|b| reflect(b, a)).collect()).collect();
    Ok(Quandle::from_tables_unchecked(right, left)?.with_label(format!("D(Z{n})")))
}

/// The conjugation quandle `Conj(G)` of a finite group given by its Cayley
/// table `cayley[g][h] = g·h`: `b ▷ a = b a b⁻¹` and `a ◁ b = b⁻¹ a b`.
pub fn conjugation(cayley: &[Vec<Element>]) -> Result<Quandle, QuandleError> {
    let group = Group::new(cayley)?;
    let n = group.order;
    let right = (0..n)
        .map(|b| (0..n).map(|a| group.mul(group.mul(b, a), group.inv[b])).collect())
        .collect();
    let left = (0..n)
        .map(|a| (0..n).map(|b| group.mul(group.mul(group.inv[b], a), b)).collect())
        .collect();
    Quandle::from_tables(right, left)
}

struct Group {
    order: usize,
    table: Vec<Element>,
    inv: Vec<Element>,
}

impl Group {
    fn new(cayley: &[Vec<Element>]) -> Result<Self, QuandleError> {
        let order = cayley.len();
        if order == 0 {
            return Err(QuandleError::EmptyCarrier);
        }
        let table = flatten_table("group", cayley.to_vec(), order)?;
        let mul = |g: usize, h: usize| table[g * order + h];

        for g in 0..order {
            for h in 0..order {
                for k in 0..order {
                    if mul(mul(g, h), k) != mul(g, mul(h, k)) {
                        return Err(QuandleError::NotAGroup(format!(
                            "associativity fails at ({g}, {h}, {k})"
                        )));
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul(e, g) == g && mul(g, e) == g))
            .ok_or_else(|| QuandleError::NotAGroup("no identity element".into()))?;
        let mut inv = Vec::with_capacity(order);
        for g in 0..order {
            let h = (0..order)
                .find(|&h| mul(g, h) == identity && mul(h, g) == identity)
                .ok_or_else(|| QuandleError::NotAGroup(format!("element {g} has no inverse")))?;
            inv.push(h);
        }
        Ok(Group { order, table, inv })
    }

    fn mul(&self, g: Element, h: Element) -> Element {
        self.table[g * self.order + h]
    }
}

/// On-disk quandle description (JSON).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuandleDocument {
    pub size: usize,
    pub right: Vec<Vec<Element>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Vec<Vec<Element>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl QuandleDocument {
    pub fn parse(text: &str) -> Result<Self, QuandleError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Shape-checks the document and builds the tables without checking the
    /// axioms. A missing left table is derived from the right one.
    pub fn into_unchecked(self) -> Result<Quandle, QuandleError> {
        let size = self.size;
        if size == 0 {
            return Err(QuandleError::EmptyCarrier);
        }
        if self.right.len() != size {
            return Err(QuandleError::Malformed(format!(
                "`size` is {size} but `right` has {} rows",
                self.right.len()
            )));
        }
        if let Some(names) = &self.names {
            if names.len() != size {
                return Err(QuandleError::Malformed(format!(
                    "`names` has {} entries, expected {size}",
                    names.len()
                )));
            }
        }
        let right = flatten_table("right", self.right, size)?;
        let left = match self.left {
            Some(left) => flatten_table("left", left, size)?,
            None => derive_left(&right, size)?,
        };
        Ok(Quandle { size, right, left, label: self.label, names: self.names })
    }
}

/// Parses a quandle document and rejects tables that violate Q1-Q3.
pub fn load_quandle(text: &str) -> Result<Quandle, QuandleError> {
    let q = QuandleDocument::parse(text)?.into_unchecked()?;
    let report = q.verify_axioms();
    if !report.is_quandle() {
        return Err(QuandleError::AxiomFailure(report));
    }
    Ok(q)
}

pub fn load_quandle_file(path: impl AsRef<Path>) -> Result<Quandle, QuandleError> {
    load_quandle(&std::fs::read_to_string(path)?)
}

/// Resolves `dihedral:N` or a path to a quandle document.
pub fn resolve_quandle(source: &str) -> Result<Quandle, QuandleError> {
    if let Some(n) = source.strip_prefix("dihedral:") {
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| QuandleError::UnknownSource(source.to_string()))?;
        return dihedral(n);
    }
    let path = Path::new(source);
    if path.exists() {
        return load_quandle_file(path);
    }
    Err(QuandleError::UnknownSource(source.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_cayley() -> Vec<Vec<Element>> {
        // elements as permutations of {0,1,2} in image notation
        let perms = s3_elements();
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        perms
            .iter()
            .map(|g| perms.iter().map(|h| idx(compose(*g, *h))).collect())
            .collect()
    }

    fn s3_elements() -> Vec<[usize; 3]> {
        vec![[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]]
    }

    // (g·h)(x) = g(h(x))
    fn compose(g: [usize; 3], h: [usize; 3]) -> [usize; 3] {
        [g[h[0]], g[h[1]], g[h[2]]]
    }

    fn klein_cayley() -> Vec<Vec<Element>> {
        (0..4).map(|g| (0..4).map(|h| g ^ h).collect()).collect()
    }

    #[test]
    fn dihedral_three_right_op() {
        let q = dihedral(3).unwrap();
        assert_eq!(q.op_right(0, 1).unwrap(), 2);
        assert_eq!(q.right_table()[1][0], 2);
        for a in 0..3 {
            assert_eq!(q.op_right(a, a).unwrap(), a);
        }
    }

    #[test]
    fn op_out_of_range() {
        let q = dihedral(3).unwrap();
        assert!(matches!(q.op_right(3, 0), Err(QuandleError::OutOfRange { element: 3, size: 3 })));
        assert!(q.op_left(0, 7).is_err());
    }

    #[test]
    fn conj_s3_transpositions() {
        let q = conjugation(&s3_cayley()).unwrap();
        let perms = s3_elements();
        let idx = |p: [usize; 3]| perms.iter().position(|&x| x == p).unwrap();
        // (12) = swap 0,1; (13) = swap 0,2; (23) = swap 1,2
        let t12 = idx([1, 0, 2]);
        let t13 = idx([2, 1, 0]);
        let t23 = idx([0, 2, 1]);
        assert_eq!(q.op_right(t12, t13).unwrap(), t23);
        assert_eq!(q.op_right(t12, q.op_right(t12, t13).unwrap()).unwrap(), t13);
    }

    #[test]
    fn conj_s3_is_quandle_but_not_involutory() {
        let report = conjugation(&s3_cayley()).unwrap().verify_axioms();
        assert!(report.q1_holds && report.q2_holds && report.q3_holds);
        assert!(!report.involutory);
        assert!(report.first_witness(Axiom::QInv).is_some());
    }

    #[test]
    fn dihedral_five_is_involutory() {
        let report = dihedral(5).unwrap().verify_axioms();
        assert!(report.is_quandle() && report.involutory);
        assert!(report.counterexamples.is_empty());
    }

    #[test]
    fn dihedral_one_and_four() {
        let one = dihedral(1).unwrap();
        assert_eq!(one.op_right(0, 0).unwrap(), 0);
        assert_eq!(one.op_left(0, 0).unwrap(), 0);
        let r = dihedral(4).unwrap().verify_axioms();
        assert!(r.is_quandle() && r.involutory);
        assert!(matches!(dihedral(0), Err(QuandleError::EmptyCarrier)));
    }

    #[test]
    fn q1_violation_witness() {
        let mut t = dihedral(3).unwrap().right_table();
        t[0][0] = 1;
        let q = Quandle::from_tables_unchecked(t.clone(), t).unwrap();
        let report = q.verify_axioms();
        assert!(!report.q1_holds);
        assert_eq!(
            report.first_witness(Axiom::Q1),
            Some(&Witness { axiom: Axiom::Q1, elements: vec![0] })
        );
    }

    #[test]
    fn abelian_conjugation_is_trivial() {
        let z2 = vec![vec![0, 1], vec![1, 0]];
        let q = conjugation(&z2).unwrap();
        assert_eq!(q.right_table(), vec![vec![0, 1], vec![0, 1]]);
        let klein = conjugation(&klein_cayley()).unwrap();
        assert!(klein.is_involutory());
    }

    #[test]
    fn conjugation_rejects_non_group() {
        let bad = vec![vec![0, 1], vec![0, 1]];
        let err = conjugation(&bad).unwrap_err();
        assert!(matches!(err, QuandleError::NotAGroup(_)), "{err}");
    }

    #[test]
    fn load_derives_left_table() {
        let doc = r#"{"size": 3, "right": [[0,2,1],[2,1,0],[1,0,2]], "label": "D3"}"#;
        let q = load_quandle(doc).unwrap();
        assert_eq!(q, dihedral(3).unwrap());
        assert_eq!(q.label(), Some("D3"));
    }

    #[test]
    fn load_round_trip() {
        let q = dihedral(3).unwrap();
        let text = serde_json::to_string(&q.to_document()).unwrap();
        assert_eq!(load_quandle(&text).unwrap(), q);
    }

    #[test]
    fn load_rejects_unknown_fields() {
        let doc = r#"{"size": 1, "right": [[0]], "colour": "red"}"#;
        assert!(matches!(load_quandle(doc), Err(QuandleError::Parse(_))));
    }

    #[test]
    fn load_rejects_non_bijective_rows() {
        let doc = r#"{"size": 2, "right": [[0,0],[1,1]]}"#;
        assert!(matches!(load_quandle(doc), Err(QuandleError::NotDerivable { row: 0 })));
    }

    #[test]
    fn load_reports_q3_violation() {
        // involutory rows, Q1/Q2 fine, Q3 broken at (2, 3, 0)
        let doc = r#"{"size": 4, "right": [[0,1,2,3],[0,1,2,3],[1,0,2,3],[2,1,0,3]]}"#;
        match load_quandle(doc) {
            Err(QuandleError::AxiomFailure(report)) => {
                assert!(report.q1_holds && report.q2_holds && !report.q3_holds);
                assert_eq!(report.first_witness(Axiom::Q3).unwrap().elements, vec![2, 3, 0]);
            }
            other => panic!("expected axiom failure, got {other:?}"),
        }
    }

    #[test]
    fn resolve_sources() {
        assert_eq!(resolve_quandle("dihedral:5").unwrap().size(), 5);
        assert!(matches!(resolve_quandle("dihedral:x"), Err(QuandleError::UnknownSource(_))));
        assert!(matches!(resolve_quandle("/no/such/file.json"), Err(QuandleError::UnknownSource(_))));
    }
}
