//! Finite abelian p-groups as additive carriers, together with their
//! automorphism groups and the distinguished Sylow p-subgroups used by the
//! trivial-socle searches.
//!
//! Supported shapes (moduli lists): `[p]`, `[p²]`, `[p³]`, `[p,p]`,
//! `[p,p,p]`, `[p,p²]`, plus the degenerate `[1]` so quotients of order one
//! are representable. Elements are indexed in mixed radix with the last
//! coordinate fastest-varying; automorphism enumeration is lexicographic on
//! the payload, so every run that iterates automorphisms is reproducible.

use std::fmt;

use thiserror::Error;

use crate::modint::{binom, gcd, Residue};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("unsupported moduli shape {0:?} for prime {1}")]
    Unsupported(Vec<u64>, u64),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutomorphismError {
    #[error("matrix is not in the (1, c; pa, 1+pb) Sylow subgroup")]
    NotInSylowMp,
}

/// A finite abelian p-group presented as a product of cyclic groups.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    p: u64,
    moduli: Vec<u64>,
    order: u64,
}

impl AbelianGroup {
    pub fn new(p: u64, moduli: &[u64]) -> Result<AbelianGroup, ShapeError> {
        let ok = matches!(moduli, [1])
            || matches!(moduli, [m] if *m == p || *m == p * p || *m == p * p * p)
            || matches!(moduli, [m, n] if *m == p && (*n == p || *n == p * p))
            || matches!(moduli, [m, n, k] if *m == p && *n == p && *k == p);
        if !ok {
            return Err(ShapeError::Unsupported(moduli.to_vec(), p));
        }
        Ok(AbelianGroup {
            p,
            moduli: moduli.to_vec(),
            order: moduli.iter().product(),
        })
    }

    pub fn cyclic(p: u64, k: u32) -> AbelianGroup {
        AbelianGroup::new(p, &[p.pow(k)]).expect("cyclic shape")
    }

    pub fn elementary(p: u64, n: usize) -> AbelianGroup {
        AbelianGroup::new(p, &vec![p; n]).expect("elementary shape")
    }

    /// The group ℤ/p × ℤ/p².
    pub fn mixed(p: u64) -> AbelianGroup {
        AbelianGroup::new(p, &[p, p * p]).expect("mixed shape")
    }

    pub fn trivial(p: u64) -> AbelianGroup {
        AbelianGroup::new(p, &[1]).expect("trivial shape")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Short, stable token naming the concrete group, e.g. "z8" or "z2xz4".
    pub fn token(&self) -> String {
        self.moduli
            .iter()
            .map(|m| format!("z{m}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn zero(&self) -> GroupElement {
        self.element(0)
    }

    /// Element from its mixed-radix index (last coordinate fastest).
    pub fn element(&self, index: usize) -> GroupElement {
        assert!((index as u64) < self.order, "element index out of range");
        let mut coords = Vec::with_capacity(self.moduli.len());
        let mut rest = index as u64;
        for &m in self.moduli.iter().rev() {
            coords.push(Residue::from_u64(rest % m, m));
            rest /= m;
        }
        coords.reverse();
        GroupElement { coords, index }
    }

    pub fn element_from_coords(&self, coords: &[i64]) -> GroupElement {
        assert_eq!(coords.len(), self.moduli.len(), "coordinate arity mismatch");
        let coords: Vec<Residue> = coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| Residue::new(c, m))
            .collect();
        let index = self.index_of(&coords);
        GroupElement { coords, index }
    }

    fn index_of(&self, coords: &[Residue]) -> usize {
        let mut idx = 0u64;
        for (c, &m) in coords.iter().zip(&self.moduli) {
            idx = idx * m + c.value();
        }
        idx as usize
    }

    fn element_from_residues(&self, coords: Vec<Residue>) -> GroupElement {
        let index = self.index_of(&coords);
        GroupElement { coords, index }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(|i| self.element(i))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| x.add(*y))
            .collect();
        self.element_from_residues(coords)
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let coords = a.coords.iter().map(|x| x.neg()).collect();
        self.element_from_residues(coords)
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| x.sub(*y))
            .collect();
        self.element_from_residues(coords)
    }

    /// Additive order of an element.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.coords
            .iter()
            .map(|c| c.modulus() / gcd(c.value(), c.modulus()))
            .fold(1, |acc, o| acc * o / gcd(acc, o))
    }

    /// Index-level addition table, row-major (`table[i * order + j] = i + j`).
    pub fn addition_table(&self) -> Vec<u16> {
        let n = self.order as usize;
        let elems: Vec<GroupElement> = self.elements().collect();
        let mut table = vec![0u16; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                table[i * n + j] = self.add(a, b).index as u16;
            }
        }
        table
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({})", self.token())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

/// A tuple of residues, one per modulus, plus its mixed-radix rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coords: Vec<Residue>,
    index: usize,
}

impl GroupElement {
    pub fn coords(&self) -> &[Residue] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> Residue {
        self.coords[i]
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c.value())?;
        }
        write!(f, ")")
    }
}

/// An invertible n×n matrix over F_p (n = 2 or 3), acting on column vectors.
///
/// Entries are stored 3×3 with identity padding so both sizes share the same
/// composition and inversion code.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GlMatrix {
    p: u64,
    n: usize,
    entries: [[u64; 3]; 3],
}

impl GlMatrix {
    pub fn new(p: u64, rows: &[&[i64]]) -> GlMatrix {
        let n = rows.len();
        assert!(n == 2 || n == 3, "GlMatrix supports n in {{2, 3}}");
        let mut entries = [[0u64; 3]; 3];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                entries[i][j] = v.rem_euclid(p as i64) as u64;
            }
        }
        for (k, row) in entries.iter_mut().enumerate().skip(n) {
            row[k] = 1;
        }
        let m = GlMatrix { p, n, entries };
        assert!(m.det() != 0, "singular matrix over F_{p}");
        m
    }

    fn from_entries(p: u64, n: usize, entries: [[u64; 3]; 3]) -> GlMatrix {
        GlMatrix { p, n, entries }
    }

    pub fn identity(p: u64, n: usize) -> GlMatrix {
        let mut entries = [[0u64; 3]; 3];
        for (k, row) in entries.iter_mut().enumerate() {
            row[k] = 1;
        }
        GlMatrix { p, n, entries }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn det(&self) -> u64 {
        let e = |i: usize, j: usize| self.entries[i][j] as i64;
        let d =
            e(0, 0) * e(1, 1) * e(2, 2) + e(0, 1) * e(1, 2) * e(2, 0) + e(0, 2) * e(1, 0) * e(2, 1)
                - e(0, 2) * e(1, 1) * e(2, 0)
                - e(0, 0) * e(1, 2) * e(2, 1)
                - e(0, 1) * e(1, 0) * e(2, 2);
        d.rem_euclid(self.p as i64) as u64
    }

    pub fn mul(&self, other: &GlMatrix) -> GlMatrix {
        assert_eq!(self.p, other.p);
        assert_eq!(self.n, other.n);
        let mut entries = [[0u64; 3]; 3];
        for (i, out_row) in entries.iter_mut().enumerate() {
            for (j, cell) in out_row.iter_mut().enumerate() {
                let mut acc = 0;
                for (k, row) in other.entries.iter().enumerate() {
                    acc += self.entries[i][k] * row[j];
                }
                *cell = acc % self.p;
            }
        }
        GlMatrix::from_entries(self.p, self.n, entries)
    }

    pub fn inverse(&self) -> GlMatrix {
        let p = self.p as i64;
        let e = |i: usize, j: usize| self.entries[i][j] as i64;
        let det_inv = Residue::new(self.det() as i64, self.p)
            .inverse()
            .expect("invertible by construction")
            .value() as i64;
        // Adjugate of the padded 3×3; the identity padding keeps the 2×2
        // case correct.
        let mut entries = [[0u64; 3]; 3];
        for (i, out_row) in entries.iter_mut().enumerate() {
            for (j, cell) in out_row.iter_mut().enumerate() {
                let rows: Vec<usize> = (0..3).filter(|&k| k != j).collect();
                let cols: Vec<usize> = (0..3).filter(|&k| k != i).collect();
                let minor = e(rows[0], cols[0]) * e(rows[1], cols[1])
                    - e(rows[0], cols[1]) * e(rows[1], cols[0]);
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                *cell = (sign * minor * det_inv).rem_euclid(p) as u64;
            }
        }
        GlMatrix::from_entries(self.p, self.n, entries)
    }

    pub fn is_identity(&self) -> bool {
        *self == GlMatrix::identity(self.p, self.n)
    }

    fn apply_coords(&self, v: &[Residue]) -> Vec<Residue> {
        (0..self.n)
            .map(|i| {
                let mut acc = 0;
                for (j, c) in v.iter().enumerate() {
                    acc += self.entries[i][j] * c.value();
                }
                Residue::from_u64(acc % self.p, self.p)
            })
            .collect()
    }
}

impl fmt::Debug for GlMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entries[i][j])?;
            }
        }
        write!(f, "] mod {}", self.p)
    }
}

/// An automorphism of ℤ/p × ℤ/p², stored as the matrix `(x, y; p·z, t)`
/// with `x·t` a unit mod p.
///
/// Products reduce the first row mod p and the second row mod p². Only
/// `z mod p` affects the action, so `z` is kept canonical in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MixedMatrix {
    x: Residue,
    y: Residue,
    z: Residue,
    t: Residue,
}

impl MixedMatrix {
    pub fn new(p: u64, x: i64, y: i64, z: i64, t: i64) -> MixedMatrix {
        let p2 = p * p;
        let m = MixedMatrix {
            x: Residue::new(x, p),
            y: Residue::new(y, p),
            z: Residue::from_u64(Residue::new(z, p2).value() % p, p2),
            t: Residue::new(t, p2),
        };
        assert!(
            m.x.value() % p != 0 && m.t.value() % p != 0,
            "xt must be a unit mod {p}"
        );
        m
    }

    pub fn identity(p: u64) -> MixedMatrix {
        MixedMatrix::new(p, 1, 0, 0, 1)
    }

    pub fn p(&self) -> u64 {
        self.x.modulus()
    }

    pub fn x(&self) -> Residue {
        self.x
    }

    pub fn y(&self) -> Residue {
        self.y
    }

    pub fn z(&self) -> Residue {
        self.z
    }

    pub fn t(&self) -> Residue {
        self.t
    }

    pub fn is_identity(&self) -> bool {
        *self == MixedMatrix::identity(self.p())
    }

    /// Member of the Sylow subgroup M_p = {(1, c; pa, 1+pb)}?
    pub fn in_sylow_mp(&self) -> bool {
        let p = self.p();
        self.x.value() == 1 && self.t.value() % p == 1
    }

    pub fn inverse(&self) -> MixedMatrix {
        let p = self.p();
        let (x, y, z, t) = (self.x, self.y, self.z, self.t);
        let xi = x.inverse().expect("x unit").value() as i64;
        // Solve (x y; pz t)(a b; pc d) = Id under the row-wise reductions:
        //   a = x⁻¹ (mod p), c = −t⁻¹ z a (mod p),
        //   d = (t − p z x⁻¹ y)⁻¹ (mod p²), b = −x⁻¹ y d (mod p).
        let a = xi;
        let t_inv_mod_p = Residue::new(t.value() as i64, p).inverse().expect("t unit");
        let c = -(t_inv_mod_p.value() as i64) * (z.value() as i64) * a;
        let d = Residue::new(
            t.value() as i64 - (p * z.value()) as i64 * xi * (y.value() as i64),
            p * p,
        )
        .inverse()
        .expect("unit mod p²")
        .value() as i64;
        let b = -xi * (y.value() as i64) * d;
        MixedMatrix::new(p, a, b, c, d)
    }

    fn apply_coords(&self, v: &[Residue]) -> Vec<Residue> {
        let p = self.p();
        let (u, w) = (v[0].value(), v[1].value());
        vec![
            Residue::from_u64((self.x.value() * u + self.y.value() * (w % p)) % p, p),
            Residue::from_u64(
                (p * self.z.value() * u + self.t.value() * w) % (p * p),
                p * p,
            ),
        ]
    }
}

impl fmt::Debug for MixedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p();
        write!(
            f,
            "({},{};{},{}) mod ({},{})",
            self.x.value(),
            self.y.value(),
            p * self.z.value(),
            self.t.value(),
            p,
            p * p
        )
    }
}

/// Product in the mixed-modulus automorphism group: integer 2×2 product,
/// first row reduced mod p and second row mod p².
pub fn mixed_mul(a: &MixedMatrix, b: &MixedMatrix) -> MixedMatrix {
    assert_eq!(a.p(), b.p(), "mixed prime mismatch");
    let p = a.p();
    let x = a.x.value() * b.x.value();
    let y = a.x.value() * b.y.value() + a.y.value() * (b.t.value() % p);
    let z = a.z.value() * b.x.value() + (a.t.value() % p) * b.z.value();
    let t = a.t.value() * b.t.value() + p * a.z.value() * b.y.value();
    MixedMatrix::new(p, x as i64, y as i64, z as i64, t as i64)
}

/// Closed-form power of a Sylow element `A = (1, c; pa, 1+pb)`:
/// `Aⁿ = (1, nc; p·na, 1 + p·nb + p·C(n,2)·ac)`.
pub fn mixed_pow(m: &MixedMatrix, n: u64) -> Result<MixedMatrix, AutomorphismError> {
    if !m.in_sylow_mp() {
        return Err(AutomorphismError::NotInSylowMp);
    }
    let p = m.p();
    let (a, c) = (m.z.value(), m.y.value());
    let b = (m.t.value() - 1) / p;
    let t =
        1 + p * ((n % (p * p)) * b % (p * p) + binom(n, 2) % (p * p) * a % (p * p) * c % (p * p));
    Ok(MixedMatrix::new(
        p,
        1,
        (n % p * c) as i64,
        (n % p * a) as i64,
        t as i64,
    ))
}

/// An invertible additive map of a supported abelian group.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Automorphism {
    /// n×n matrix over F_p for the elementary shapes [p,p] and [p,p,p].
    Gl(GlMatrix),
    /// Mixed-modulus matrix for [p,p²].
    Mixed(MixedMatrix),
    /// Multiplication by a unit for the cyclic shapes (and the trivial group).
    Scalar(Residue),
}

impl Automorphism {
    pub fn identity(g: &AbelianGroup) -> Automorphism {
        match g.moduli() {
            [m] => Automorphism::Scalar(Residue::one(*m)),
            [m, n] if m == n => Automorphism::Gl(GlMatrix::identity(g.p(), 2)),
            [_, _] => Automorphism::Mixed(MixedMatrix::identity(g.p())),
            [_, _, _] => Automorphism::Gl(GlMatrix::identity(g.p(), 3)),
            _ => unreachable!("validated shape"),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Automorphism::Gl(m) => m.is_identity(),
            Automorphism::Mixed(m) => m.is_identity(),
            Automorphism::Scalar(r) => r.value() == 1 % r.modulus(),
        }
    }

    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        match (self, other) {
            (Automorphism::Gl(a), Automorphism::Gl(b)) => Automorphism::Gl(a.mul(b)),
            (Automorphism::Mixed(a), Automorphism::Mixed(b)) => {
                Automorphism::Mixed(mixed_mul(a, b))
            }
            (Automorphism::Scalar(a), Automorphism::Scalar(b)) => Automorphism::Scalar(a.mul(*b)),
            _ => panic!("composing automorphisms of different shapes"),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        match self {
            Automorphism::Gl(m) => Automorphism::Gl(m.inverse()),
            Automorphism::Mixed(m) => Automorphism::Mixed(m.inverse()),
            Automorphism::Scalar(r) => Automorphism::Scalar(r.inverse().expect("unit scalar")),
        }
    }

    pub fn pow(&self, mut n: u64, g: &AbelianGroup) -> Automorphism {
        let mut base = *self;
        let mut acc = Automorphism::identity(g);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative order, by iteration (fine at these sizes).
    pub fn order(&self, g: &AbelianGroup) -> u64 {
        let mut acc = *self;
        let mut n = 1;
        while !acc.is_identity() {
            acc = acc.compose(self);
            n += 1;
            assert!(n <= g.order() * g.order(), "order runaway");
        }
        n
    }

    /// Whether this automorphism's payload matches the group's shape.
    pub fn acts_on(&self, g: &AbelianGroup) -> bool {
        match self {
            Automorphism::Gl(m) => {
                m.p() == g.p() && m.size() == g.rank() && g.moduli().iter().all(|&x| x == g.p())
            }
            Automorphism::Mixed(m) => g.moduli() == [m.p(), m.p() * m.p()],
            Automorphism::Scalar(r) => g.moduli() == [r.modulus()],
        }
    }

    /// The automorphism as a permutation of element indices.
    pub fn as_permutation(&self, g: &AbelianGroup) -> Vec<u16> {
        g.elements()
            .map(|v| apply(self, g, &v).index() as u16)
            .collect()
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Automorphism::Gl(m) => write!(f, "{m:?}"),
            Automorphism::Mixed(m) => write!(f, "{m:?}"),
            Automorphism::Scalar(r) => write!(f, "*{} mod {}", r.value(), r.modulus()),
        }
    }
}

/// Image of `v` under `f`; panics on shape mismatch.
pub fn apply(f: &Automorphism, g: &AbelianGroup, v: &GroupElement) -> GroupElement {
    let coords = match f {
        Automorphism::Gl(m) => {
            assert!(
                m.size() == g.rank() && g.moduli().iter().all(|&x| x == g.p()),
                "automorphism shape mismatch"
            );
            m.apply_coords(v.coords())
        }
        Automorphism::Mixed(m) => {
            assert_eq!(
                g.moduli(),
                [m.p(), m.p() * m.p()],
                "automorphism shape mismatch"
            );
            m.apply_coords(v.coords())
        }
        Automorphism::Scalar(r) => {
            assert_eq!(g.moduli(), [r.modulus()], "automorphism shape mismatch");
            vec![r.mul(v.coord(0))]
        }
    };
    g.element_from_residues(coords)
}

/// Number of automorphisms of a supported shape, by the closed formulas.
pub fn automorphism_count(g: &AbelianGroup) -> u64 {
    let p = g.p();
    match g.moduli() {
        [1] => 1,
        [m] => *m - *m / p, // φ(pᵏ)
        [a, b] if a == b => (p * p - 1) * (p * p - p),
        [_, _] => p * p * p * (p - 1) * (p - 1),
        [_, _, _] => {
            let q = p * p * p;
            (q - 1) * (q - p) * (q - p * p)
        }
        _ => unreachable!("validated shape"),
    }
}

/// Every automorphism of the group, each exactly once, lexicographic on the
/// payload (matrix entries in row-major order, or the scalar).
pub fn automorphism_group(g: &AbelianGroup) -> Box<dyn Iterator<Item = Automorphism>> {
    let p = g.p();
    match g.moduli() {
        [1] => Box::new(std::iter::once(Automorphism::Scalar(Residue::one(1)))),
        [m] => {
            let m = *m;
            Box::new(
                (1..m)
                    .filter(move |u| u % p != 0)
                    .map(move |u| Automorphism::Scalar(Residue::from_u64(u, m))),
            )
        }
        [a, b] if a == b => Box::new(gl_iter(p, 2).map(Automorphism::Gl)),
        [_, _] => Box::new(mixed_iter(p).map(Automorphism::Mixed)),
        [_, _, _] => Box::new(gl_iter(p, 3).map(Automorphism::Gl)),
        _ => unreachable!("validated shape"),
    }
}

fn gl_iter(p: u64, n: usize) -> impl Iterator<Item = GlMatrix> {
    let cells = n * n;
    let total = p.pow(cells as u32);
    (0..total).filter_map(move |code| {
        let mut entries = [[0u64; 3]; 3];
        let mut rest = code;
        for idx in (0..cells).rev() {
            entries[idx / n][idx % n] = rest % p;
            rest /= p;
        }
        for (k, row) in entries.iter_mut().enumerate().skip(n) {
            row[k] = 1;
        }
        let m = GlMatrix::from_entries(p, n, entries);
        (m.det() != 0).then_some(m)
    })
}

fn mixed_iter(p: u64) -> impl Iterator<Item = MixedMatrix> {
    let p2 = p * p;
    (0..p * p * p * p2).filter_map(move |code| {
        let t = code % p2;
        let rest = code / p2;
        let z = rest % p;
        let rest = rest / p;
        let y = rest % p;
        let x = rest / p;
        (x % p != 0 && t % p != 0)
            .then(|| MixedMatrix::new(p, x as i64, y as i64, z as i64, t as i64))
    })
}

/// All p³ upper unitriangular 3×3 matrices over F_p, lexicographic on
/// (a, b, c) in `(1 a b; 0 1 c; 0 0 1)`.
pub fn sylow_tp(p: u64) -> impl Iterator<Item = GlMatrix> {
    (0..p * p * p).map(move |code| {
        let c = code % p;
        let b = code / p % p;
        let a = code / (p * p);
        GlMatrix::new(
            p,
            &[&[1, a as i64, b as i64], &[0, 1, c as i64], &[0, 0, 1]],
        )
    })
}

/// All p³ matrices `(1, c; pa, 1+pb)`, lexicographic on (a, b, c).
pub fn sylow_mp(p: u64) -> impl Iterator<Item = MixedMatrix> {
    (0..p * p * p).map(move |code| {
        let c = code % p;
        let b = code / p % p;
        let a = code / (p * p);
        MixedMatrix::new(p, 1, c as i64, a as i64, (1 + p * b) as i64)
    })
}

/// Reconstruct a typed automorphism from its permutation of element indices.
///
/// Reads the images of the standard generators, builds the candidate matrix
/// or scalar, and verifies it against every entry of `perm`; returns `None`
/// when the permutation is not an additive automorphism.
pub fn automorphism_from_permutation(g: &AbelianGroup, perm: &[u16]) -> Option<Automorphism> {
    if perm.len() != g.order() as usize {
        return None;
    }
    let p = g.p();
    let image = |coords: &[i64]| -> GroupElement {
        let src = g.element_from_coords(coords);
        g.element(perm[src.index()] as usize)
    };
    let candidate = match g.moduli() {
        [1] => Automorphism::Scalar(Residue::one(1)),
        [m] => {
            let u = image(&[1]).coord(0).value();
            if gcd(u, *m) != 1 {
                return None;
            }
            Automorphism::Scalar(Residue::from_u64(u, *m))
        }
        [a, b] if a == b => {
            let c0 = image(&[1, 0]);
            let c1 = image(&[0, 1]);
            let rows = [
                [c0.coord(0).value(), c1.coord(0).value(), 0],
                [c0.coord(1).value(), c1.coord(1).value(), 0],
                [0, 0, 1],
            ];
            let m = GlMatrix::from_entries(p, 2, rows);
            if m.det() == 0 {
                return None;
            }
            Automorphism::Gl(m)
        }
        [_, _] => {
            let c0 = image(&[1, 0]);
            let c1 = image(&[0, 1]);
            // Additivity forces the (1,0)-image's second coordinate into pℤ/p².
            if c0.coord(1).value() % p != 0 {
                return None;
            }
            let (x, z) = (c0.coord(0).value(), c0.coord(1).value() / p);
            let (y, t) = (c1.coord(0).value(), c1.coord(1).value());
            if x % p == 0 || t % p == 0 {
                return None;
            }
            Automorphism::Mixed(MixedMatrix::new(p, x as i64, y as i64, z as i64, t as i64))
        }
        [_, _, _] => {
            let cols = [image(&[1, 0, 0]), image(&[0, 1, 0]), image(&[0, 0, 1])];
            let mut rows = [[0u64; 3]; 3];
            for (j, c) in cols.iter().enumerate() {
                for (i, row) in rows.iter_mut().enumerate() {
                    row[j] = c.coord(i).value();
                }
            }
            let m = GlMatrix::from_entries(p, 3, rows);
            if m.det() == 0 {
                return None;
            }
            Automorphism::Gl(m)
        }
        _ => unreachable!("validated shape"),
    };
    (candidate.as_permutation(g) == perm).then_some(candidate)
}

/// An element of the holomorph A ⋊ Aut(A), with the product law
/// `(a, f)(b, g) = (a + f(b), f∘g)`.
#[derive(Clone, PartialEq, Eq)]
pub struct HolomorphElement {
    pub translation: GroupElement,
    pub twist: Automorphism,
}

impl HolomorphElement {
    pub fn identity(g: &AbelianGroup) -> HolomorphElement {
        HolomorphElement {
            translation: g.zero(),
            twist: Automorphism::identity(g),
        }
    }

    pub fn mul(&self, g: &AbelianGroup, other: &HolomorphElement) -> HolomorphElement {
        HolomorphElement {
            translation: g.add(
                &self.translation,
                &apply(&self.twist, g, &other.translation),
            ),
            twist: self.twist.compose(&other.twist),
        }
    }

    pub fn inverse(&self, g: &AbelianGroup) -> HolomorphElement {
        let fi = self.twist.inverse();
        HolomorphElement {
            translation: apply(&fi, g, &g.neg(&self.translation)),
            twist: fi,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_last_coordinate_fastest() {
        let g = AbelianGroup::mixed(2); // moduli [2, 4]
        assert_eq!(g.element(0).coord(0).value(), 0);
        assert_eq!(g.element(1), g.element_from_coords(&[0, 1]));
        assert_eq!(g.element(4), g.element_from_coords(&[1, 0]));
        for i in 0..g.order() as usize {
            assert_eq!(g.element(i).index(), i);
        }
    }

    #[test]
    fn addition_is_coordinatewise() {
        let g = AbelianGroup::mixed(3);
        let a = g.element_from_coords(&[2, 7]);
        let b = g.element_from_coords(&[2, 5]);
        assert_eq!(g.add(&a, &b), g.element_from_coords(&[1, 3]));
        assert_eq!(g.add(&a, &g.neg(&a)), g.zero());
        assert_eq!(g.sub(&a, &b), g.element_from_coords(&[0, 2]));
    }

    #[test]
    fn element_orders() {
        let g = AbelianGroup::mixed(2);
        assert_eq!(g.element_order(&g.zero()), 1);
        assert_eq!(g.element_order(&g.element_from_coords(&[1, 0])), 2);
        assert_eq!(g.element_order(&g.element_from_coords(&[1, 1])), 4);
        let c = AbelianGroup::cyclic(3, 3);
        assert_eq!(c.element_order(&c.element_from_coords(&[9])), 3);
    }

    #[test]
    fn mixed_mul_reduces_rows() {
        // (1,1;2·1,1)·(1,0;2·1,1) = (1,1;2·0,1) at p = 2.
        let a = MixedMatrix::new(2, 1, 1, 1, 1);
        let b = MixedMatrix::new(2, 1, 0, 1, 1);
        assert_eq!(mixed_mul(&a, &b), MixedMatrix::new(2, 1, 1, 0, 1));
    }

    #[test]
    fn mixed_group_laws() {
        let id = MixedMatrix::identity(3);
        let all: Vec<MixedMatrix> = sylow_mp(3).collect();
        for m in &all {
            assert_eq!(mixed_mul(m, &id), *m);
            assert_eq!(mixed_mul(&id, m), *m);
            assert_eq!(mixed_mul(m, &m.inverse()), id);
            assert_eq!(mixed_mul(&m.inverse(), m), id);
        }
        for a in all.iter().take(9) {
            for b in all.iter().take(9) {
                for c in all.iter().take(9) {
                    assert_eq!(
                        mixed_mul(&mixed_mul(a, b), c),
                        mixed_mul(a, &mixed_mul(b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn mixed_pow_matches_iteration() {
        for p in [2u64, 3] {
            for m in sylow_mp(p) {
                let mut acc = MixedMatrix::identity(p);
                for n in 0..=(2 * p * p * p) {
                    assert_eq!(mixed_pow(&m, n).unwrap(), acc, "{m:?}^{n}");
                    acc = mixed_mul(&acc, &m);
                }
            }
        }
    }

    #[test]
    fn mixed_pow_squares_example() {
        let a = MixedMatrix::new(2, 1, 1, 1, 1);
        assert_eq!(mixed_pow(&a, 2).unwrap(), MixedMatrix::new(2, 1, 0, 0, 3));
    }

    #[test]
    fn mixed_pow_rejects_outside_sylow() {
        let m = MixedMatrix::new(3, 2, 0, 0, 1);
        assert_eq!(mixed_pow(&m, 2), Err(AutomorphismError::NotInSylowMp));
    }

    #[test]
    fn mixed_inverse_roundtrip() {
        for p in [2u64, 3, 5] {
            let id = MixedMatrix::identity(p);
            let mut checked = 0;
            for f in mixed_iter(p) {
                assert_eq!(mixed_mul(&f, &f.inverse()), id);
                assert_eq!(mixed_mul(&f.inverse(), &f), id);
                checked += 1;
            }
            assert_eq!(checked, p * p * p * (p - 1) * (p - 1));
        }
    }

    #[test]
    fn gl_inverse_and_det() {
        let m = GlMatrix::new(3, &[&[1, 2], &[1, 1]]);
        assert_eq!(m.det(), 2);
        assert!(m.mul(&m.inverse()).is_identity());
        let j = GlMatrix::new(5, &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        assert_eq!(j.det(), 1);
        assert!(j.inverse().mul(&j).is_identity());
    }

    #[test]
    fn sylow_tp_is_closed_under_product() {
        for p in [2u64, 3] {
            let all: Vec<GlMatrix> = sylow_tp(p).collect();
            assert_eq!(all.len(), (p * p * p) as usize);
            for a in &all {
                assert_eq!(a.det(), 1);
                for b in &all {
                    let ab = a.mul(b);
                    assert!(all.contains(&ab), "not closed: {a:?} * {b:?}");
                }
            }
        }
    }

    #[test]
    fn sylow_counts() {
        assert_eq!(sylow_tp(5).count(), 125);
        assert_eq!(sylow_mp(5).count(), 125);
    }

    #[test]
    fn automorphism_counts_match_formulas() {
        for (g, want) in [
            (AbelianGroup::trivial(2), 1),
            (AbelianGroup::cyclic(2, 1), 1),
            (AbelianGroup::cyclic(3, 1), 2),
            (AbelianGroup::cyclic(2, 3), 4),
            (AbelianGroup::cyclic(3, 3), 18),
            (AbelianGroup::mixed(2), 8),
            (AbelianGroup::mixed(3), 108),
            (AbelianGroup::elementary(2, 3), 168),
            (AbelianGroup::elementary(3, 2), 48),
            (AbelianGroup::elementary(3, 3), 11232),
        ] {
            assert_eq!(automorphism_count(&g), want, "{g:?}");
            assert_eq!(automorphism_group(&g).count() as u64, want, "{g:?}");
        }
    }

    #[test]
    fn automorphisms_are_additive_bijections() {
        for g in [
            AbelianGroup::cyclic(2, 3),
            AbelianGroup::mixed(2),
            AbelianGroup::elementary(2, 3),
            AbelianGroup::mixed(3),
        ] {
            for f in automorphism_group(&g) {
                let perm = f.as_permutation(&g);
                let mut seen = vec![false; g.order() as usize];
                for &i in &perm {
                    assert!(!seen[i as usize], "not injective: {f:?}");
                    seen[i as usize] = true;
                }
                for a in g.elements() {
                    for b in g.elements() {
                        assert_eq!(
                            apply(&f, &g, &g.add(&a, &b)),
                            g.add(&apply(&f, &g, &a), &apply(&f, &g, &b)),
                            "not additive: {f:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn automorphism_compose_matches_permutation_composition() {
        let g = AbelianGroup::mixed(2);
        let fs: Vec<Automorphism> = automorphism_group(&g).collect();
        for f1 in &fs {
            for f2 in &fs {
                let left = f1.compose(f2).as_permutation(&g);
                let p1 = f1.as_permutation(&g);
                let p2 = f2.as_permutation(&g);
                let composed: Vec<u16> = (0..g.order() as usize)
                    .map(|i| p1[p2[i] as usize])
                    .collect();
                assert_eq!(left, composed);
            }
        }
    }

    #[test]
    fn apply_examples() {
        let g = AbelianGroup::elementary(5, 2);
        let jordan = Automorphism::Gl(GlMatrix::new(5, &[&[1, 1], &[0, 1]]));
        let v = g.element_from_coords(&[2, 3]);
        assert_eq!(apply(&jordan, &g, &v), g.element_from_coords(&[0, 3]));

        let m = AbelianGroup::mixed(2);
        let f = Automorphism::Mixed(MixedMatrix::new(2, 1, 1, 1, 1));
        let w = m.element_from_coords(&[1, 1]);
        assert_eq!(apply(&f, &m, &w), m.element_from_coords(&[0, 3]));
    }

    #[test]
    fn automorphism_pow_and_order() {
        let g = AbelianGroup::mixed(2);
        let f = Automorphism::Mixed(MixedMatrix::new(2, 1, 1, 1, 1));
        assert_eq!(f.order(&g), 4);
        assert_eq!(f.pow(4, &g), Automorphism::identity(&g));
        assert_eq!(f.pow(3, &g), f.inverse());
        let c = AbelianGroup::cyclic(3, 2);
        let s = Automorphism::Scalar(Residue::new(2, 9));
        assert_eq!(s.order(&c), 6);
    }

    #[test]
    fn holomorph_group_laws() {
        for g in [AbelianGroup::cyclic(2, 3), AbelianGroup::mixed(2)] {
            let id = HolomorphElement::identity(&g);
            let elems: Vec<HolomorphElement> = automorphism_group(&g)
                .flat_map(|f| {
                    g.elements().map(move |t| HolomorphElement {
                        translation: t,
                        twist: f,
                    })
                })
                .collect();
            for h in &elems {
                assert!(h.mul(&g, &id) == *h && id.mul(&g, h) == *h);
                assert!(h.mul(&g, &h.inverse(&g)) == id);
                assert!(h.inverse(&g).mul(&g, h) == id);
            }
            for a in elems.iter().take(12) {
                for b in elems.iter().take(12) {
                    for c in elems.iter().take(12) {
                        assert!(a.mul(&g, b).mul(&g, c) == a.mul(&g, &b.mul(&g, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn automorphism_permutation_roundtrip() {
        for g in [
            AbelianGroup::trivial(3),
            AbelianGroup::cyclic(2, 3),
            AbelianGroup::cyclic(3, 2),
            AbelianGroup::mixed(2),
            AbelianGroup::mixed(3),
            AbelianGroup::elementary(2, 3),
            AbelianGroup::elementary(3, 2),
        ] {
            for f in automorphism_group(&g) {
                let perm = f.as_permutation(&g);
                assert_eq!(automorphism_from_permutation(&g, &perm), Some(f), "{g:?}");
            }
        }
    }

    #[test]
    fn non_additive_permutation_rejected() {
        let g = AbelianGroup::cyclic(2, 2);
        // Swapping 0 and 1 fixes no additive structure.
        assert_eq!(automorphism_from_permutation(&g, &[1, 0, 2, 3]), None);
        // Translation by 1 is bijective but not additive.
        assert_eq!(automorphism_from_permutation(&g, &[1, 2, 3, 0]), None);
        // Wrong length.
        assert_eq!(automorphism_from_permutation(&g, &[0, 1, 2]), None);
    }

    #[test]
    fn unsupported_shape_rejected() {
        assert!(AbelianGroup::new(2, &[4, 2]).is_err());
        assert!(AbelianGroup::new(2, &[2, 8]).is_err());
        assert!(AbelianGroup::new(3, &[2]).is_err());
        assert!(AbelianGroup::new(2, &[16]).is_err());
    }
}
