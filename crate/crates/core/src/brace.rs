//! Left braces as finite tables over a fixed abelian p-group, with the
//! axiom verifier, λ-maps, socle, powers, quotients by the socle, and
//! identification of the multiplicative group by its order statistics.
//!
//! A left brace is (B, +, ·) where (B, +) is abelian, (B, ·) is a group,
//! and a·(b+c) + a = a·b + a·c. The multiplicative neutral is then forced
//! to be the additive zero, and λ_a(b) := a·b − a is an additive
//! automorphism for every a. All structure here lives in flat index-level
//! tables; the additive side always comes from an [`AbelianGroup`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::abelian::{
    apply, automorphism_from_permutation, AbelianGroup, Automorphism, GroupElement,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("table has {found} entries, expected {expected} for order {order}")]
    WrongSize {
        found: usize,
        expected: usize,
        order: u64,
    },
    #[error("table entry {value} at position {position} is out of range for order {order}")]
    EntryOutOfRange {
        position: usize,
        value: u16,
        order: u64,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CocycleError {
    #[error("member list and image list have different lengths")]
    LengthMismatch,
    #[error("member count {0} does not match group order {1}")]
    WrongMemberCount(usize, u64),
    #[error("images are not a bijection onto the group")]
    NotBijective,
    #[error("members are not closed under composition")]
    NotClosed,
    #[error("cocycle identity fails at member pair ({0}, {1})")]
    IdentityFails(usize, usize),
}

/// A left-brace candidate: an abelian group plus a full product table.
///
/// Construction never checks the axioms; [`verify_brace`] does.
#[derive(Clone, PartialEq, Eq)]
pub struct Brace {
    group: AbelianGroup,
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl Brace {
    /// The trivial brace on a group: a·b = a + b.
    pub fn trivial(group: AbelianGroup) -> Brace {
        let add = group.addition_table();
        Brace {
            mul: add.clone(),
            add,
            group,
        }
    }

    /// Wrap an explicit product table (row-major, index-level).
    pub fn from_tables(group: AbelianGroup, mul: Vec<u16>) -> Result<Brace, TableError> {
        let n = group.order() as usize;
        if mul.len() != n * n {
            return Err(TableError::WrongSize {
                found: mul.len(),
                expected: n * n,
                order: group.order(),
            });
        }
        if let Some((position, &value)) = mul.iter().enumerate().find(|(_, &v)| v as usize >= n) {
            return Err(TableError::EntryOutOfRange {
                position,
                value,
                order: group.order(),
            });
        }
        Ok(Brace {
            add: group.addition_table(),
            group,
            mul,
        })
    }

    /// Build the product table by evaluating a closed formula on coordinates.
    pub fn from_product_fn<F>(group: AbelianGroup, f: F) -> Brace
    where
        F: Fn(&GroupElement, &GroupElement) -> GroupElement,
    {
        let n = group.order() as usize;
        let elems: Vec<GroupElement> = group.elements().collect();
        let mut mul = vec![0u16; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                mul[i * n + j] = f(a, b).index() as u16;
            }
        }
        Brace {
            add: group.addition_table(),
            group,
            mul,
        }
    }

    /// Build from a λ-table: a·b = a + λ_a(b), one permutation per element.
    pub fn from_lambda_perms(group: AbelianGroup, perms: &[Vec<u16>]) -> Brace {
        let n = group.order() as usize;
        assert_eq!(perms.len(), n, "one permutation per element");
        let add = group.addition_table();
        let mut mul = vec![0u16; n * n];
        for (a, perm) in perms.iter().enumerate() {
            for b in 0..n {
                mul[a * n + b] = add[a * n + perm[b] as usize];
            }
        }
        Brace { add, group, mul }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn mul_table(&self) -> &[u16] {
        &self.mul
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.add[a * self.group.order() as usize + b] as usize
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.group.order() as usize + b] as usize
    }

    pub fn neg_idx(&self, a: usize) -> usize {
        self.group.neg(&self.group.element(a)).index()
    }

    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    /// λ_a as a permutation of indices: b ↦ a·b − a.
    pub fn lambda_perm(&self, a: usize) -> Vec<u16> {
        let n = self.group.order() as usize;
        (0..n)
            .map(|b| self.sub_idx(self.mul_idx(a, b), a) as u16)
            .collect()
    }

    /// Multiplicative inverse, assuming the Latin property holds.
    pub fn mult_inverse(&self, a: usize) -> usize {
        let n = self.group.order() as usize;
        (0..n)
            .find(|&j| self.mul_idx(a, j) == 0)
            .expect("row contains the neutral")
    }

    /// Multiplicative order of an element.
    pub fn mult_order(&self, a: usize) -> u64 {
        let mut acc = a;
        let mut n = 1;
        while acc != 0 {
            acc = self.mul_idx(acc, a);
            n += 1;
            assert!(n <= self.order(), "order runaway; not a group table");
        }
        n
    }

    pub fn is_commutative_mult(&self) -> bool {
        let n = self.group.order() as usize;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul_idx(a, b) == self.mul_idx(b, a)))
    }

    /// True when · coincides with + everywhere.
    pub fn is_trivial(&self) -> bool {
        self.mul == self.add
    }
}

impl fmt::Debug for Brace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Brace({}, {0}²-entry table)", self.group.token())
    }
}

/// One axiom failure, carrying the earliest witness in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The multiplicative neutral is absent or differs from additive zero.
    NeutralMismatch {
        found: Option<usize>,
    },
    RowNotBijective {
        row: usize,
    },
    ColumnNotBijective {
        col: usize,
    },
    NotAssociative {
        a: usize,
        b: usize,
        c: usize,
    },
    NotLeftCompatible {
        a: usize,
        b: usize,
        c: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NeutralMismatch { found: None } => {
                write!(f, "product table has no two-sided neutral element")
            }
            Violation::NeutralMismatch { found: Some(e) } => {
                write!(f, "multiplicative neutral is index {e}, not additive zero")
            }
            Violation::RowNotBijective { row } => {
                write!(f, "row {row} of the product table is not a bijection")
            }
            Violation::ColumnNotBijective { col } => {
                write!(f, "column {col} of the product table is not a bijection")
            }
            Violation::NotAssociative { a, b, c } => {
                write!(f, "(a·b)·c ≠ a·(b·c) at indices (a,b,c) = ({a},{b},{c})")
            }
            Violation::NotLeftCompatible { a, b, c } => {
                write!(
                    f,
                    "a·(b+c) + a ≠ a·b + a·c at indices (a,b,c) = ({a},{b},{c})"
                )
            }
        }
    }
}

/// Outcome of the four-stage axiom check, one flag and one earliest witness
/// per failed stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub order: u64,
    pub neutral_is_zero: bool,
    pub latin: bool,
    pub associative: bool,
    pub left_compatible: bool,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.neutral_is_zero && self.latin && self.associative && self.left_compatible
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "left brace of order {}: all axioms hold", self.order);
        }
        write!(f, "not a left brace (order {}):", self.order)?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Check the left-brace axioms in a fixed order: (1) the multiplicative
/// neutral exists and is the additive zero, (2) every row and column of the
/// product table is a bijection, (3) associativity, (4) the compatibility
/// law a·(b+c) + a = a·b + a·c. Witness triples are the lexicographically
/// first failures; the scan is parallel but the reduction keeps that order.
pub fn verify_brace(b: &Brace) -> VerifyReport {
    let n = b.group.order() as usize;
    let mut violations = Vec::new();

    let neutral = (0..n)
        .find(|&e| (0..n).all(|x| b.mul_idx(e, x) == x) && (0..n).all(|x| b.mul_idx(x, e) == x));
    let neutral_is_zero = neutral == Some(0);
    if !neutral_is_zero {
        violations.push(Violation::NeutralMismatch { found: neutral });
    }

    let mut latin = true;
    'rows: for row in 0..n {
        let mut seen = vec![false; n];
        for j in 0..n {
            let v = b.mul_idx(row, j);
            if seen[v] {
                latin = false;
                violations.push(Violation::RowNotBijective { row });
                break 'rows;
            }
            seen[v] = true;
        }
    }
    if latin {
        'cols: for col in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                let v = b.mul_idx(i, col);
                if seen[v] {
                    latin = false;
                    violations.push(Violation::ColumnNotBijective { col });
                    break 'cols;
                }
                seen[v] = true;
            }
        }
    }

    let assoc_witness = (0..n)
        .into_par_iter()
        .filter_map(|a| {
            for bb in 0..n {
                let ab = b.mul_idx(a, bb);
                for c in 0..n {
                    if b.mul_idx(ab, c) != b.mul_idx(a, b.mul_idx(bb, c)) {
                        return Some((a, bb, c));
                    }
                }
            }
            None
        })
        .min();
    let associative = assoc_witness.is_none();
    if let Some((a, bb, c)) = assoc_witness {
        violations.push(Violation::NotAssociative { a, b: bb, c });
    }

    let compat_witness = (0..n)
        .into_par_iter()
        .filter_map(|a| {
            for bb in 0..n {
                let ab = b.mul_idx(a, bb);
                for c in 0..n {
                    let lhs = b.add_idx(b.mul_idx(a, b.add_idx(bb, c)), a);
                    let rhs = b.add_idx(ab, b.mul_idx(a, c));
                    if lhs != rhs {
                        return Some((a, bb, c));
                    }
                }
            }
            None
        })
        .min();
    let left_compatible = compat_witness.is_none();
    if let Some((a, bb, c)) = compat_witness {
        violations.push(Violation::NotLeftCompatible { a, b: bb, c });
    }

    VerifyReport {
        order: b.order(),
        neutral_is_zero,
        latin,
        associative,
        left_compatible,
        violations,
    }
}

/// First triple (a, b, c) violating the right-sided law
/// (b + c)·a + a = b·a + c·a, if any. Braces satisfying both laws are
/// two-sided; this diagnostic exposes the one-sided ones.
pub fn right_brace_witness(b: &Brace) -> Option<(usize, usize, usize)> {
    let n = b.group.order() as usize;
    (0..n)
        .into_par_iter()
        .filter_map(|a| {
            for bb in 0..n {
                for c in 0..n {
                    let lhs = b.add_idx(b.mul_idx(b.add_idx(bb, c), a), a);
                    let rhs = b.add_idx(b.mul_idx(bb, a), b.mul_idx(c, a));
                    if lhs != rhs {
                        return Some((a, bb, c));
                    }
                }
            }
            None
        })
        .min()
}

/// The socle: all a with λ_a = id, i.e. a·b = a + b for every b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleInfo {
    /// Member indices, ascending.
    pub members: Vec<usize>,
}

impl SocleInfo {
    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }
}

pub fn socle(b: &Brace) -> SocleInfo {
    let n = b.group.order() as usize;
    let members = (0..n)
        .filter(|&a| (0..n).all(|x| b.mul_idx(a, x) == b.add_idx(a, x)))
        .collect();
    SocleInfo { members }
}

/// n-th multiplicative power by iterated products (a⁰ = 0, the neutral).
pub fn power(b: &Brace, a: usize, n: u64) -> usize {
    let mut acc = 0;
    for _ in 0..n {
        acc = b.mul_idx(acc, a);
    }
    acc
}

/// n-th power through the λ-sum identity aⁿ = (id + λ_a + ⋯ + λ_a^{n−1})(a).
pub fn power_by_lambda_sum(b: &Brace, a: usize, n: u64) -> usize {
    let perm = b.lambda_perm(a);
    let mut term = a;
    let mut total = 0;
    for _ in 0..n {
        total = b.add_idx(total, term);
        term = perm[term] as usize;
    }
    total
}

/// The map a ↦ λ_a with all permutations and their inverses materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaMap {
    order: usize,
    perms: Vec<u16>,
    inv: Vec<u16>,
}

impl LambdaMap {
    pub fn from_brace(b: &Brace) -> LambdaMap {
        let n = b.group.order() as usize;
        let mut perms = vec![0u16; n * n];
        let mut inv = vec![0u16; n * n];
        for a in 0..n {
            let perm = b.lambda_perm(a);
            for (x, &y) in perm.iter().enumerate() {
                perms[a * n + x] = y;
                inv[a * n + y as usize] = x as u16;
            }
        }
        LambdaMap {
            order: n,
            perms,
            inv,
        }
    }

    /// λ_a(x).
    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.perms[a * self.order + x] as usize
    }

    /// λ_a⁻¹(x).
    pub fn apply_inv(&self, a: usize, x: usize) -> usize {
        self.inv[a * self.order + x] as usize
    }

    pub fn perm(&self, a: usize) -> &[u16] {
        &self.perms[a * self.order..(a + 1) * self.order]
    }

    /// λ_a as a typed automorphism of the additive group, when it is one.
    pub fn automorphism(&self, g: &AbelianGroup, a: usize) -> Option<Automorphism> {
        automorphism_from_permutation(g, self.perm(a))
    }
}

/// Names of the groups arising as multiplicative groups at these orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupName {
    /// Abelian with the given invariant-style moduli, ascending (e.g. [2,4]).
    Abelian(Vec<u64>),
    /// Dihedral of order 8.
    Dihedral,
    /// Quaternion of order 8.
    Quaternion,
    /// Heisenberg group of order p³ and exponent p (p odd).
    Heisenberg(u64),
    /// Modular maximal-cyclic group of order p³ and exponent p².
    ModularMaximal(u64),
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::Abelian(moduli) => {
                let parts: Vec<String> = moduli.iter().map(|m| format!("z{m}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            GroupName::Dihedral => write!(f, "d4"),
            GroupName::Quaternion => write!(f, "q"),
            GroupName::Heisenberg(p) => write!(f, "m({p})"),
            GroupName::ModularMaximal(p) => write!(f, "m3({p})"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unrecognized group name `{0}`")]
pub struct ParseGroupNameError(String);

impl FromStr for GroupName {
    type Err = ParseGroupNameError;

    fn from_str(s: &str) -> Result<GroupName, ParseGroupNameError> {
        let err = || ParseGroupNameError(s.to_string());
        match s {
            "d4" => return Ok(GroupName::Dihedral),
            "q" => return Ok(GroupName::Quaternion),
            _ => {}
        }
        if let Some(inner) = s.strip_prefix("m3(").and_then(|r| r.strip_suffix(')')) {
            return inner
                .parse()
                .map(GroupName::ModularMaximal)
                .map_err(|_| err());
        }
        if let Some(inner) = s.strip_prefix("m(").and_then(|r| r.strip_suffix(')')) {
            return inner.parse().map(GroupName::Heisenberg).map_err(|_| err());
        }
        let moduli: Result<Vec<u64>, _> = s
            .split('x')
            .map(|part| {
                part.strip_prefix('z')
                    .ok_or_else(err)?
                    .parse()
                    .map_err(|_| err())
            })
            .collect();
        let moduli = moduli?;
        if moduli.is_empty() {
            return Err(err());
        }
        Ok(GroupName::Abelian(moduli))
    }
}

/// Identify the multiplicative group of a verified brace purely from its
/// order statistics (element-order multiset plus commutativity), which
/// suffices at orders dividing p³.
pub fn mult_group_name(b: &Brace) -> GroupName {
    let n = b.order();
    let p = b.group.p();
    if n == 1 {
        return GroupName::Abelian(vec![1]);
    }
    let orders: Vec<u64> = (0..n as usize).map(|a| b.mult_order(a)).collect();
    let exponent = orders.iter().copied().max().expect("nonempty");
    if b.is_commutative_mult() {
        let moduli = match (n, exponent) {
            (n, e) if n == e => vec![n],
            (q, e) if q == p * p && e == p => vec![p, p],
            (q, e) if q == p * p * p && e == p * p => vec![p, p * p],
            (q, e) if q == p * p * p && e == p => vec![p, p, p],
            _ => unreachable!("abelian p-group of order ≤ p³"),
        };
        return GroupName::Abelian(moduli);
    }
    // Non-abelian groups only occur at order p³ here.
    assert_eq!(n, p * p * p, "non-abelian group below order p³");
    if p == 2 {
        let involutions = orders.iter().filter(|&&o| o == 2).count();
        return match involutions {
            1 => GroupName::Quaternion,
            5 => GroupName::Dihedral,
            _ => unreachable!("non-abelian order 8 has 1 or 5 involutions"),
        };
    }
    if exponent == p {
        GroupName::Heisenberg(p)
    } else {
        GroupName::ModularMaximal(p)
    }
}

/// A brace quotient B/Soc(B), re-coordinatized onto a standard group shape.
#[derive(Debug, Clone)]
pub struct QuotientBrace {
    /// The quotient as a brace on a fresh standard carrier.
    pub brace: Brace,
    /// For each quotient index, the minimal parent index in that coset.
    pub reps: Vec<usize>,
    /// For each parent index, the quotient index of its coset.
    pub projection: Vec<usize>,
}

/// Quotient of a brace by its socle. Cosets are represented by their
/// minimal element index; the quotient carrier shape is read off from the
/// coset orders, and coset generators are chosen greedily by minimal
/// representative, so the outcome is deterministic.
pub fn quotient_by_socle(b: &Brace) -> QuotientBrace {
    let n = b.group.order() as usize;
    let p = b.group.p();
    let soc = socle(b);
    let s = soc.members.len();

    // Partition indices into additive cosets of the socle.
    let mut coset_of = vec![usize::MAX; n];
    let mut coset_reps: Vec<usize> = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = coset_reps.len();
        coset_reps.push(x);
        for &t in &soc.members {
            coset_of[b.add_idx(x, t)] = id;
        }
    }
    let q = n / s;
    debug_assert_eq!(coset_reps.len(), q);

    let cadd = |i: usize, j: usize| coset_of[b.add_idx(coset_reps[i], coset_reps[j])];
    let additive_order = |i: usize| -> u64 {
        let mut acc = i;
        let mut k = 1;
        while acc != 0 {
            acc = cadd(acc, i);
            k += 1;
        }
        k
    };

    // Determine the carrier shape from order and exponent.
    let exponent = (0..q).map(additive_order).max().expect("nonempty");
    let moduli: Vec<u64> = match (q as u64, exponent) {
        (1, _) => vec![1],
        (o, e) if o == e => vec![o],
        (o, e) if o == p * p && e == p => vec![p, p],
        (o, e) if o == p * p * p && e == p * p => vec![p, p * p],
        (o, e) if o == p * p * p && e == p => vec![p, p, p],
        _ => unreachable!("abelian p-group of order ≤ p³"),
    };
    let carrier = AbelianGroup::new(p, &moduli).expect("standard shape");

    // Choose generator cosets greedily (smallest representative first) and
    // lay the cosets out on the carrier's coordinates.
    let span = |gens: &[(usize, u64)]| -> Vec<usize> {
        // All combinations Σ kᵢ·gᵢ with kᵢ < order of gᵢ's coordinate.
        let mut out = vec![0usize];
        for &(g, m) in gens {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for &base in &out {
                let mut acc = base;
                for _ in 0..m {
                    next.push(acc);
                    acc = cadd(acc, g);
                }
            }
            out = next;
        }
        out
    };
    // Pick the largest-order generator first; each later candidate must have
    // no nonzero multiple inside the span built so far, so the spans meet
    // trivially and the layout below is bijective.
    let mut positions: Vec<usize> = (0..moduli.len()).filter(|&i| moduli[i] != 1).collect();
    positions.sort_by_key(|&i| std::cmp::Reverse(moduli[i]));
    let mut gens: Vec<(usize, u64)> = Vec::new();
    let mut gen_at_position = vec![0usize; moduli.len()];
    for &pos in &positions {
        let m = moduli[pos];
        let covered = span(&gens);
        let g = (0..q)
            .find(|&cand| {
                if additive_order(cand) != m {
                    return false;
                }
                let mut mult = cand;
                for _ in 1..m {
                    if covered.contains(&mult) {
                        return false;
                    }
                    mult = cadd(mult, cand);
                }
                true
            })
            .expect("generator of required order exists");
        gens.push((g, m));
        gen_at_position[pos] = g;
    }
    // Carrier coordinates, in the same order as the moduli; map each carrier
    // index to its coset.
    let mut coset_at = vec![usize::MAX; q];
    for idx in 0..q {
        let coords = carrier.element(idx);
        let mut acc = 0usize;
        for (pos, &m) in moduli.iter().enumerate() {
            if m == 1 {
                continue;
            }
            let k = coords.coord(pos).value();
            for _ in 0..k {
                acc = cadd(acc, gen_at_position[pos]);
            }
        }
        assert!(
            coset_at.iter().take(idx).all(|&c| c != acc),
            "generator layout must be bijective"
        );
        coset_at[idx] = acc;
    }
    let mut index_of_coset = vec![usize::MAX; q];
    for (idx, &c) in coset_at.iter().enumerate() {
        index_of_coset[c] = idx;
    }

    let mut mul = vec![0u16; q * q];
    for i in 0..q {
        let ri = coset_reps[coset_at[i]];
        for j in 0..q {
            let rj = coset_reps[coset_at[j]];
            mul[i * q + j] = index_of_coset[coset_of[b.mul_idx(ri, rj)]] as u16;
        }
    }
    let brace = Brace::from_tables(carrier, mul).expect("table is square by construction");
    let reps = coset_at.iter().map(|&c| coset_reps[c]).collect();
    let projection = coset_of.iter().map(|&c| index_of_coset[c]).collect();
    QuotientBrace {
        brace,
        reps,
        projection,
    }
}

/// A bijective 1-cocycle π: P → A for a subgroup P ⊆ Aut(A), given by the
/// member list and π's images (π(members[i]) = group.element(images[i])).
///
/// The defining identity is π(F∘G) = π(F) + F(π(G)); a valid table yields a
/// left brace on A with trivial socle and multiplicative group ≅ P.
#[derive(Debug, Clone)]
pub struct CocycleTable {
    pub group: AbelianGroup,
    pub members: Vec<Automorphism>,
    pub images: Vec<usize>,
}

impl CocycleTable {
    /// Check bijectivity, closure of the member list, and the cocycle
    /// identity on all pairs.
    pub fn validate(&self) -> Result<(), CocycleError> {
        if self.members.len() != self.images.len() {
            return Err(CocycleError::LengthMismatch);
        }
        if self.members.len() != self.group.order() as usize {
            return Err(CocycleError::WrongMemberCount(
                self.members.len(),
                self.group.order(),
            ));
        }
        let n = self.group.order() as usize;
        let mut seen = vec![false; n];
        for &img in &self.images {
            if img >= n || seen[img] {
                return Err(CocycleError::NotBijective);
            }
            seen[img] = true;
        }
        let index_of: HashMap<Automorphism, usize> = self
            .members
            .iter()
            .enumerate()
            .map(|(i, f)| (*f, i))
            .collect();
        if index_of.len() != self.members.len() {
            return Err(CocycleError::NotClosed);
        }
        for (i, f) in self.members.iter().enumerate() {
            for (j, g) in self.members.iter().enumerate() {
                let Some(&k) = index_of.get(&f.compose(g)) else {
                    return Err(CocycleError::NotClosed);
                };
                let want = self.group.add(
                    &self.group.element(self.images[i]),
                    &apply(f, &self.group, &self.group.element(self.images[j])),
                );
                if self.images[k] != want.index() {
                    return Err(CocycleError::IdentityFails(i, j));
                }
            }
        }
        Ok(())
    }
}

/// Build the left brace induced by a valid bijective 1-cocycle:
/// addition from A, product π(F)·π(G) = π(F∘G).
pub fn brace_from_cocycle(t: &CocycleTable) -> Result<Brace, CocycleError> {
    t.validate()?;
    let n = t.group.order() as usize;
    let index_of: HashMap<Automorphism, usize> =
        t.members.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut member_at = vec![0usize; n]; // element index -> member position
    for (i, &img) in t.images.iter().enumerate() {
        member_at[img] = i;
    }
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        let fa = &t.members[member_at[a]];
        for bidx in 0..n {
            let fb = &t.members[member_at[bidx]];
            let k = index_of[&fa.compose(fb)];
            mul[a * n + bidx] = t.images[k] as u16;
        }
    }
    Ok(Brace::from_tables(t.group.clone(), mul).expect("square by construction"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::MixedMatrix;
    use crate::modint::lift;

    fn z4_nontrivial() -> Brace {
        // x·y = x + y + 2xy on ℤ/4.
        let g = AbelianGroup::cyclic(2, 2);
        Brace::from_product_fn(g.clone(), |a, b| {
            let (x, y) = (a.coord(0), b.coord(0));
            g.element_from_coords(&[(x.add(y).add(x.mul(y).scale(2))).value() as i64])
        })
    }

    #[test]
    fn trivial_brace_verifies() {
        for g in [
            AbelianGroup::cyclic(2, 3),
            AbelianGroup::mixed(3),
            AbelianGroup::elementary(2, 3),
        ] {
            let b = Brace::trivial(g);
            let report = verify_brace(&b);
            assert!(report.ok(), "{report}");
            assert!(b.is_trivial());
            assert_eq!(socle(&b).order(), b.order());
            assert_eq!(right_brace_witness(&b), None);
        }
    }

    #[test]
    fn z4_brace_verifies_with_socle_two() {
        let b = z4_nontrivial();
        assert!(verify_brace(&b).ok());
        assert!(!b.is_trivial());
        assert_eq!(socle(&b).members, vec![0, 2]);
        assert_eq!(mult_group_name(&b), GroupName::Abelian(vec![2, 2]));
        // Commutative product, hence two-sided.
        assert_eq!(right_brace_witness(&b), None);
    }

    #[test]
    fn broken_tables_are_rejected_with_first_witness() {
        let b = z4_nontrivial();
        let n = b.order() as usize;

        // Shift every row: neutral disappears.
        let shifted: Vec<u16> = (0..n * n)
            .map(|pos| b.mul_table()[(pos + 1) % (n * n)])
            .collect();
        let bad = Brace::from_tables(b.group().clone(), shifted).unwrap();
        let report = verify_brace(&bad);
        assert!(!report.ok());

        // Duplicate one entry: Latin property fails.
        let mut dup = b.mul_table().to_vec();
        dup[1] = dup[2];
        let bad = Brace::from_tables(b.group().clone(), dup).unwrap();
        let report = verify_brace(&bad);
        assert!(!report.latin);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::RowNotBijective { row: 0 })));

        // Out-of-range entry rejected at construction.
        let mut oob = b.mul_table().to_vec();
        oob[5] = 99;
        assert_eq!(
            Brace::from_tables(b.group().clone(), oob),
            Err(TableError::EntryOutOfRange {
                position: 5,
                value: 99,
                order: 4
            })
        );
    }

    #[test]
    fn lambda_is_additive_and_power_formula_holds() {
        let b = z4_nontrivial();
        let lm = LambdaMap::from_brace(&b);
        for a in 0..4 {
            assert!(lm.automorphism(b.group(), a).is_some());
            for x in 0..4 {
                assert_eq!(lm.apply_inv(a, lm.apply(a, x)), x);
            }
        }
        for a in 0..4 {
            for n in 0..=8 {
                assert_eq!(power(&b, a, n), power_by_lambda_sum(&b, a, n));
            }
        }
    }

    #[test]
    fn power_zero_is_neutral_and_powers_cycle() {
        let b = z4_nontrivial();
        for a in 0..4 {
            assert_eq!(power(&b, a, 0), 0);
            let o = b.mult_order(a);
            assert_eq!(power(&b, a, o), 0);
            assert_eq!(b.mul_idx(a, b.mult_inverse(a)), 0);
        }
    }

    #[test]
    fn quotient_of_z4_brace_is_trivial_brace_on_z2() {
        let b = z4_nontrivial();
        let q = quotient_by_socle(&b);
        assert_eq!(q.brace.order(), 2);
        assert_eq!(q.brace.group().moduli(), &[2]);
        assert!(q.brace.is_trivial());
        assert_eq!(q.reps, vec![0, 1]);
        assert_eq!(q.projection, vec![0, 1, 0, 1]);
        // The projection is a brace homomorphism on all pairs.
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(
                    q.projection[b.mul_idx(x, y)],
                    q.brace.mul_idx(q.projection[x], q.projection[y])
                );
            }
        }
    }

    #[test]
    fn quotient_of_trivial_brace_has_order_one() {
        let b = Brace::trivial(AbelianGroup::mixed(2));
        let q = quotient_by_socle(&b);
        assert_eq!(q.brace.order(), 1);
        assert_eq!(q.brace.group().moduli(), &[1]);
        assert_eq!(mult_group_name(&q.brace), GroupName::Abelian(vec![1]));
    }

    #[test]
    fn group_name_tokens_roundtrip() {
        for name in [
            GroupName::Abelian(vec![8]),
            GroupName::Abelian(vec![2, 4]),
            GroupName::Abelian(vec![3, 3, 3]),
            GroupName::Dihedral,
            GroupName::Quaternion,
            GroupName::Heisenberg(3),
            GroupName::ModularMaximal(5),
        ] {
            let token = name.to_string();
            assert_eq!(token.parse::<GroupName>().unwrap(), name, "{token}");
        }
        assert!("m4(3)".parse::<GroupName>().is_err());
        assert!("zx".parse::<GroupName>().is_err());
        assert!("".parse::<GroupName>().is_err());
    }

    /// A full worked example: the bijective 1-cocycle from the order-8
    /// Sylow subgroup of Aut(ℤ/2 × ℤ/4) onto ℤ/2 × ℤ/4 whose brace has
    /// trivial socle and dihedral multiplicative group.
    #[test]
    fn dihedral_cocycle_brace_on_z2xz4() {
        type Row = ((i64, i64, i64, i64), (i64, i64));
        let g = AbelianGroup::mixed(2);
        let assign: [Row; 8] = [
            ((1, 0, 0, 1), (0, 0)),
            ((1, 1, 1, 1), (0, 1)),
            ((1, 0, 0, 3), (1, 2)),
            ((1, 1, 1, 3), (1, 1)),
            ((1, 0, 1, 1), (1, 3)),
            ((1, 0, 1, 3), (0, 3)),
            ((1, 1, 0, 1), (0, 2)),
            ((1, 1, 0, 3), (1, 0)),
        ];
        let members: Vec<Automorphism> = assign
            .iter()
            .map(|&((x, y, z, t), _)| Automorphism::Mixed(MixedMatrix::new(2, x, y, z, t)))
            .collect();
        let images: Vec<usize> = assign
            .iter()
            .map(|&(_, (u, w))| g.element_from_coords(&[u, w]).index())
            .collect();
        let table = CocycleTable {
            group: g.clone(),
            members,
            images,
        };
        assert_eq!(table.validate(), Ok(()));
        let b = brace_from_cocycle(&table).unwrap();
        assert!(verify_brace(&b).ok());
        assert_eq!(socle(&b).members, vec![0]);
        assert_eq!(mult_group_name(&b), GroupName::Dihedral);
        // Socle-trivial quotient is the brace itself up to relabeling.
        let q = quotient_by_socle(&b);
        assert_eq!(q.brace.order(), 8);
        assert!(verify_brace(&q.brace).ok());
    }

    #[test]
    fn lambda_sum_power_matches_on_cocycle_brace() {
        let b = {
            let g = AbelianGroup::cyclic(2, 3);
            // x·y = x + 5^x y on ℤ/8 (α = 2 pattern: 5^x = 1 + 4x mod 8).
            Brace::from_product_fn(g.clone(), |a, c| {
                let x = lift(a.coord(0));
                let y = lift(c.coord(0));
                g.element_from_coords(&[(x + y + 4 * x * y) as i64])
            })
        };
        assert!(verify_brace(&b).ok());
        for a in 0..8 {
            for n in 0..=16 {
                assert_eq!(power(&b, a, n), power_by_lambda_sum(&b, a, n));
            }
        }
        assert_eq!(socle(&b).members, vec![0, 2, 4, 6]);
    }
}
