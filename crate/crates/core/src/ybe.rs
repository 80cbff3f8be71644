//! The set-theoretic Yang–Baxter solution attached to a left brace, with an
//! exhaustive checker for the braid relation, involutivity and
//! non-degeneracy.
//!
//! Every left brace induces s(a,b) = (λ_a(b), λ⁻¹_{λ_a(b)}(a)) on its
//! element set, and s is the flip (a,b) ↦ (b,a) exactly when the brace is
//! trivial. The checker scans all order³ triples, so its verdict cannot be
//! skewed by a convention mismatch hiding in some unchecked corner.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::brace::{Brace, LambdaMap};

/// A map X×X → X×X on element indices, stored as a table of pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionMap {
    order: usize,
    pairs: Vec<(u16, u16)>,
}

/// Shape problems when wrapping a raw table of pairs.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolutionShapeError {
    #[error("expected {want} = {order}² pairs, found {found}")]
    WrongLength {
        order: usize,
        want: usize,
        found: usize,
    },
    #[error("image pair ({0}, {1}) out of range")]
    OutOfRange(u16, u16),
}

impl SolutionMap {
    /// Wrap a raw row-major table; only well-formedness is checked here,
    /// the mathematical invariants are `verify_yang_baxter`'s business.
    pub fn from_pairs(
        order: usize,
        pairs: Vec<(u16, u16)>,
    ) -> Result<SolutionMap, SolutionShapeError> {
        if pairs.len() != order * order {
            return Err(SolutionShapeError::WrongLength {
                order,
                want: order * order,
                found: pairs.len(),
            });
        }
        for &(x, y) in &pairs {
            if x as usize >= order || y as usize >= order {
                return Err(SolutionShapeError::OutOfRange(x, y));
            }
        }
        Ok(SolutionMap { order, pairs })
    }

    /// Number of elements of the carrier X.
    pub fn order(&self) -> usize {
        self.order
    }

    /// s(a, b) as a pair of element indices.
    pub fn image(&self, a: usize, b: usize) -> (usize, usize) {
        let (x, y) = self.pairs[a * self.order + b];
        (x as usize, y as usize)
    }

    /// The row-major table: entry a·order + b holds s(a, b).
    pub fn pairs(&self) -> &[(u16, u16)] {
        &self.pairs
    }

    /// True when s(a, b) = (b, a) everywhere.
    pub fn is_flip(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.image(a, b) == (b, a)))
    }
}

/// The solution s(a,b) = (λ_a(b), λ⁻¹_{λ_a(b)}(a)) attached to a brace.
///
/// Involutivity and both non-degeneracy families are asserted at
/// construction — they hold for every left brace, and involutivity already
/// makes s a bijection of X×X.
pub fn solution_from_brace(b: &Brace) -> SolutionMap {
    let n = b.order() as usize;
    let lm = LambdaMap::from_brace(b);
    let mut pairs = Vec::with_capacity(n * n);
    for a in 0..n {
        for x in 0..n {
            let first = lm.apply(a, x);
            let second = lm.apply_inv(first, a);
            pairs.push((first as u16, second as u16));
        }
    }
    let m = SolutionMap { order: n, pairs };
    assert!(
        involutive_witness(&m).is_none(),
        "a brace solution is involutive"
    );
    assert!(
        degeneracy_witness(&m).is_none(),
        "a brace solution is non-degenerate"
    );
    m
}

/// One failed solution property, carrying the earliest witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum YbeViolation {
    /// The braid relation fails at the triple (a, b, c).
    Braid { a: usize, b: usize, c: usize },
    /// s(s(a, b)) ≠ (a, b).
    NotInvolutive { a: usize, b: usize },
    /// b ↦ first(s(a, b)) is not a bijection at this a.
    DegenerateFirst { a: usize },
    /// a ↦ second(s(a, b)) is not a bijection at this b.
    DegenerateSecond { b: usize },
}

impl fmt::Display for YbeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YbeViolation::Braid { a, b, c } => {
                write!(f, "braid relation fails at indices (a,b,c) = ({a},{b},{c})")
            }
            YbeViolation::NotInvolutive { a, b } => {
                write!(f, "s∘s ≠ id at indices (a,b) = ({a},{b})")
            }
            YbeViolation::DegenerateFirst { a } => {
                write!(f, "b ↦ first(s(a,b)) is not bijective at a = {a}")
            }
            YbeViolation::DegenerateSecond { b } => {
                write!(f, "a ↦ second(s(a,b)) is not bijective at b = {b}")
            }
        }
    }
}

/// Outcome of the exhaustive solution check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YbeReport {
    pub order: usize,
    pub braid: bool,
    pub involutive: bool,
    pub non_degenerate: bool,
    pub violations: Vec<YbeViolation>,
}

impl YbeReport {
    pub fn ok(&self) -> bool {
        self.braid && self.involutive && self.non_degenerate
    }

    pub fn first_violation(&self) -> Option<&YbeViolation> {
        self.violations.first()
    }
}

impl fmt::Display for YbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(
                f,
                "involutive non-degenerate solution on {} elements: braid relation holds on all {} triples",
                self.order,
                self.order * self.order * self.order
            );
        }
        write!(f, "not a valid solution ({} elements):", self.order)?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Check the braid relation (s×id)(id×s)(s×id) = (id×s)(s×id)(id×s) on all
/// order³ triples, then involutivity, then per-coordinate non-degeneracy.
/// Witnesses are the lexicographically first failures; the braid scan is a
/// parallel reduction over the read-only table.
pub fn verify_yang_baxter(m: &SolutionMap) -> YbeReport {
    let n = m.order;
    let mut violations = Vec::new();

    let braid_witness = (0..n)
        .into_par_iter()
        .filter_map(|a| {
            for b in 0..n {
                for c in 0..n {
                    if braid_sides(m, a, b, c).is_some() {
                        return Some((a, b, c));
                    }
                }
            }
            None
        })
        .min();
    let braid = braid_witness.is_none();
    if let Some((a, b, c)) = braid_witness {
        violations.push(YbeViolation::Braid { a, b, c });
    }

    let inv_witness = involutive_witness(m);
    let involutive = inv_witness.is_none();
    if let Some((a, b)) = inv_witness {
        violations.push(YbeViolation::NotInvolutive { a, b });
    }

    let deg_witness = degeneracy_witness(m);
    let non_degenerate = deg_witness.is_none();
    if let Some(v) = deg_witness {
        violations.push(v);
    }

    YbeReport {
        order: n,
        braid,
        involutive,
        non_degenerate,
        violations,
    }
}

type Triple = (usize, usize, usize);

/// Both sides of the braid relation at (a, b, c) when they differ.
fn braid_sides(m: &SolutionMap, a: usize, b: usize, c: usize) -> Option<(Triple, Triple)> {
    // (s×id)(id×s)(s×id): act on positions 1-2, then 2-3, then 1-2.
    let (x1, y1) = m.image(a, b);
    let (x2, y2) = m.image(y1, c);
    let (x3, y3) = m.image(x1, x2);
    let lhs = (x3, y3, y2);
    // (id×s)(s×id)(id×s): act on positions 2-3, then 1-2, then 2-3.
    let (u1, v1) = m.image(b, c);
    let (u2, v2) = m.image(a, u1);
    let (u3, v3) = m.image(v2, v1);
    let rhs = (u2, u3, v3);
    (lhs != rhs).then_some((lhs, rhs))
}

fn involutive_witness(m: &SolutionMap) -> Option<(usize, usize)> {
    let n = m.order;
    for a in 0..n {
        for b in 0..n {
            let (x, y) = m.image(a, b);
            if m.image(x, y) != (a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

fn degeneracy_witness(m: &SolutionMap) -> Option<YbeViolation> {
    let n = m.order;
    for a in 0..n {
        let mut seen = vec![false; n];
        for b in 0..n {
            let (x, _) = m.image(a, b);
            if seen[x] {
                return Some(YbeViolation::DegenerateFirst { a });
            }
            seen[x] = true;
        }
    }
    for b in 0..n {
        let mut seen = vec![false; n];
        for a in 0..n {
            let (_, y) = m.image(a, b);
            if seen[y] {
                return Some(YbeViolation::DegenerateSecond { b });
            }
            seen[y] = true;
        }
    }
    None
}
