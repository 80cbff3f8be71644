//! The classified braces of order p, p², and p³, materialized as tables.
//!
//! Each entry pairs a closed-form product with its declared invariants: the
//! additive shape, the socle order, and the multiplicative group. Entries
//! carry stable ids of the form `order.shape.socle.family(params)`, e.g.
//! `p3.zp_p2.socp.family3(p=5,λ=2)`; the `p=` parameter always comes first
//! and pins the id to a concrete prime.
//!
//! Every closed form is transcribed with the canonical-lift convention of
//! [`crate::modint`]: a residue used as an exponent or a binomial argument
//! means its representative in `[0, m)`. The two order-8 entries with
//! trivial socle are additionally rebuilt from frozen bijective 1-cocycles,
//! and table equality between the two constructions is asserted every time
//! they are materialized.

use rayon::prelude::*;

use crate::abelian::{AbelianGroup, Automorphism, GlMatrix, GroupElement, MixedMatrix};
use crate::brace::{brace_from_cocycle, Brace, CocycleTable, GroupName};
use crate::modint::{is_prime, lift, tri_sum, Residue};

/// Largest prime accepted by the default order-p³ constructors (343² tables).
pub const DEFAULT_PRIME_BOUND: u64 = 7;

/// The smallest positive quadratic non-residue mod an odd prime.
///
/// This is the fixed choice of ε used by every family that needs a
/// non-residue; any other choice yields an isomorphic family member-wise.
pub fn epsilon(p: u64) -> Residue {
    assert!(p != 2, "every residue is a square mod 2");
    assert!(is_prime(p), "epsilon is defined modulo a prime");
    for n in 2..p {
        // Euler's criterion: n is a non-residue iff n^((p-1)/2) = -1.
        if Residue::from_u64(n, p).pow((p - 1) / 2).value() == p - 1 {
            return Residue::from_u64(n, p);
        }
    }
    unreachable!("half the units mod an odd prime are non-residues")
}

/// Coefficients for the mixed-shape closed form on ℤ/p × ℤ/p²:
///
/// ```text
/// x₃ = x₁ + x₂ + g·y₁y₂ + h·C(y₁,2)·y₂                                (mod p)
/// y₃ = y₁ + y₂ + p(a·x₁+c·y₁)·x₂ + p(b·x₁+d·y₁)·y₂ + p·e·C(y₁,2)·y₂  (mod p²)
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct MixedCoeffs {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    e: u64,
    g: u64,
    h: u64,
}

impl MixedCoeffs {
    const ZERO: MixedCoeffs = MixedCoeffs {
        a: 0,
        b: 0,
        c: 0,
        d: 0,
        e: 0,
        g: 0,
        h: 0,
    };
}

/// Coefficients for the elementary-shape closed form on (ℤ/p)³:
///
/// ```text
/// x₃ = x₁ + x₂ + (a·y₁+c·z₁)·y₂ + (b·y₁+d·z₁)·z₂ + e·C(z₁,2)·z₂
/// y₃ = y₁ + y₂ + f·z₁z₂
/// z₃ = z₁ + z₂
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct CubedCoeffs {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    e: u64,
    f: u64,
}

impl CubedCoeffs {
    const ZERO: CubedCoeffs = CubedCoeffs {
        a: 0,
        b: 0,
        c: 0,
        d: 0,
        e: 0,
        f: 0,
    };
}

/// A closed-form multiplication; all coefficients are stored reduced mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Formula {
    /// x·y = x + y.
    Trivial,
    /// x·y = x + y + pᵏ·xy on a cyclic carrier.
    CyclicPk { k: u32 },
    /// x·y = x + (1+2α)ˣ·y on ℤ/8.
    CyclicUnit { alpha: u64 },
    /// (x₁,y₁)·(x₂,y₂) = (x₁+x₂+y₁y₂, y₁+y₂) on (ℤ/p)².
    SquareV,
    /// The coefficient scheme on ℤ/p × ℤ/p².
    Mixed(MixedCoeffs),
    /// The trivial-socle product on ℤ/2 × ℤ/4, written in the standard
    /// coordinates (u,w) via z := w mod 2, x := (w−z)/2.
    MixedSocOne,
    /// The coefficient scheme on (ℤ/p)³.
    Cubed(CubedCoeffs),
    /// The trivial-socle product on (ℤ/2)³.
    CubedSocOne,
}

impl Formula {
    fn multiply(&self, g: &AbelianGroup, u: &GroupElement, v: &GroupElement) -> GroupElement {
        let p = g.p();
        match self {
            Formula::Trivial => g.add(u, v),
            Formula::CyclicPk { k } => {
                let m = g.moduli()[0];
                let (x, y) = (lift(u.coord(0)), lift(v.coord(0)));
                let q = p.pow(*k);
                g.element_from_coords(&[((x + y) % m + q * x % m * y % m) as i64])
            }
            Formula::CyclicUnit { alpha } => {
                let (x, y) = (lift(u.coord(0)), lift(v.coord(0)));
                let unit = Residue::from_u64(1 + 2 * alpha, 8).pow(x).value();
                g.element_from_coords(&[(x + unit * y) as i64])
            }
            Formula::SquareV => {
                let (x1, y1) = (lift(u.coord(0)), lift(u.coord(1)));
                let (x2, y2) = (lift(v.coord(0)), lift(v.coord(1)));
                g.element_from_coords(&[(x1 + x2 + y1 * y2) as i64, (y1 + y2) as i64])
            }
            Formula::Mixed(co) => {
                let (x1, y1) = (lift(u.coord(0)), lift(u.coord(1)));
                let (x2, y2) = (lift(v.coord(0)), lift(v.coord(1)));
                let tri = tri_sum(y1) % p;
                let first = x1 + x2 + co.g * (y1 % p) * (y2 % p) + co.h * tri * (y2 % p);
                let second = y1
                    + y2
                    + p * ((co.a * x1 + co.c * y1) % p) * x2
                    + p * ((co.b * x1 + co.d * y1) % p) * (y2 % p)
                    + p * (co.e * tri % p) * (y2 % p);
                g.element_from_coords(&[first as i64, second as i64])
            }
            Formula::MixedSocOne => {
                let (u1, w1) = (lift(u.coord(0)), lift(u.coord(1)));
                let (u2, w2) = (lift(v.coord(0)), lift(v.coord(1)));
                let (z1, z2) = (w1 % 2, w2 % 2);
                let x1 = (w1 - z1) / 2;
                let first = u1 + u2 + (x1 + u1 + z1 + u1 * z1) * z2;
                let second = w1 + w2 + 2 * z1 * u2 + 2 * (u1 + x1 * z1) * z2;
                g.element_from_coords(&[first as i64, second as i64])
            }
            Formula::Cubed(co) => {
                let (x1, y1, z1) = (lift(u.coord(0)), lift(u.coord(1)), lift(u.coord(2)));
                let (x2, y2, z2) = (lift(v.coord(0)), lift(v.coord(1)), lift(v.coord(2)));
                let first = x1
                    + x2
                    + (co.a * y1 + co.c * z1) * y2
                    + (co.b * y1 + co.d * z1) * z2
                    + co.e * tri_sum(z1) * z2;
                let second = y1 + y2 + co.f * z1 * z2;
                g.element_from_coords(&[first as i64, second as i64, (z1 + z2) as i64])
            }
            Formula::CubedSocOne => {
                let (x1, y1, z1) = (lift(u.coord(0)), lift(u.coord(1)), lift(u.coord(2)));
                let (x2, y2, z2) = (lift(v.coord(0)), lift(v.coord(1)), lift(v.coord(2)));
                let first = x1 + x2 + z1 * y2 + x1 * z2 + y1 * z2 + x1 * z1 * z2;
                let second = y1 + y2 + z1 * z2 + x1 * z2 + y1 * z1 * z2;
                g.element_from_coords(&[first as i64, second as i64, (z1 + z2) as i64])
            }
        }
    }

    fn display(&self, p: u64, moduli: &[u64]) -> String {
        match self {
            Formula::Trivial => "x·y = x+y".to_string(),
            Formula::CyclicPk { k } => {
                format!("x·y = x+y+{}xy (mod {})", p.pow(*k), moduli[0])
            }
            Formula::CyclicUnit { alpha } => {
                format!("x·y = x+{}^x·y (mod 8)", 1 + 2 * alpha)
            }
            Formula::SquareV => "(x1,y1)·(x2,y2) = (x1+x2+y1y2, y1+y2)".to_string(),
            Formula::Mixed(co) => {
                let mut first = "x1+x2".to_string();
                push_term(&mut first, co.g, "y1y2");
                push_term(&mut first, co.h, "C(y1,2)y2");
                let mut second = "y1+y2".to_string();
                push_scaled_pair(&mut second, p, co.a, "x1", co.c, "y1", "x2");
                push_scaled_pair(&mut second, p, co.b, "x1", co.d, "y1", "y2");
                push_term(&mut second, p * co.e, "C(y1,2)y2");
                format!("(x1,y1)·(x2,y2) = ({first}, {second})")
            }
            Formula::MixedSocOne => "(u1,w1)·(u2,w2) = (u1+u2+(x1+u1+z1+u1z1)z2, \
                 w1+w2+2z1u2+2(u1+x1z1)z2) with zi = wi mod 2, xi = (wi-zi)/2"
                .to_string(),
            Formula::Cubed(co) => {
                let mut first = "x1+x2".to_string();
                push_scaled_pair(&mut first, 1, co.a, "y1", co.c, "z1", "y2");
                push_scaled_pair(&mut first, 1, co.b, "y1", co.d, "z1", "z2");
                push_term(&mut first, co.e, "C(z1,2)z2");
                let mut second = "y1+y2".to_string();
                push_term(&mut second, co.f, "z1z2");
                format!("(x1,y1,z1)·(x2,y2,z2) = ({first}, {second}, z1+z2)")
            }
            Formula::CubedSocOne => "(x1,y1,z1)·(x2,y2,z2) = \
                 (x1+x2+z1y2+x1z2+y1z2+x1z1z2, y1+y2+z1z2+x1z2+y1z1z2, z1+z2)"
                .to_string(),
        }
    }
}

fn push_term(s: &mut String, coef: u64, term: &str) {
    match coef {
        0 => {}
        1 => {
            s.push('+');
            s.push_str(term);
        }
        c => s.push_str(&format!("+{c}{term}")),
    }
}

/// Appends `+scale(ca·va + cb·vb)·w`, eliding zero terms and unit factors.
fn push_scaled_pair(s: &mut String, scale: u64, ca: u64, va: &str, cb: u64, vb: &str, w: &str) {
    if ca == 0 && cb == 0 {
        return;
    }
    let mut inner = Vec::new();
    match ca {
        0 => {}
        1 => inner.push(va.to_string()),
        c => inner.push(format!("{c}{va}")),
    }
    match cb {
        0 => {}
        1 => inner.push(vb.to_string()),
        c => inner.push(format!("{c}{vb}")),
    }
    let inner = inner.join("+");
    if scale == 1 {
        s.push_str(&format!("+({inner}){w}"));
    } else {
        s.push_str(&format!("+{scale}({inner}){w}"));
    }
}

/// One classified brace: a stable id, the closed-form product that generates
/// its table, and the invariants declared for it (socle order and
/// multiplicative group), which verification re-derives independently.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    id: String,
    p: u64,
    group: AbelianGroup,
    socle_order: u64,
    claimed_mult_group: GroupName,
    family: String,
    params: Vec<(String, u64)>,
    formula: Formula,
}

impl CatalogEntry {
    /// The stable id, e.g. `p3.zp_p2.socp.family5(p=3,a=2)`.
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The additive carrier.
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// The socle order this entry declares.
    pub fn socle_order(&self) -> u64 {
        self.socle_order
    }

    /// The multiplicative group this entry declares.
    pub fn claimed_mult_group(&self) -> &GroupName {
        &self.claimed_mult_group
    }

    /// Family name within the entry's (shape, socle) block.
    pub fn family(&self) -> &str {
        &self.family
    }

    /// Named parameters other than p (λ, a, c, α, ε as applicable).
    pub fn params(&self) -> &[(String, u64)] {
        &self.params
    }

    /// Looks up one named parameter.
    pub fn param(&self, name: &str) -> Option<u64> {
        self.params.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }

    /// Human-readable rendering of the closed form, coefficients inlined.
    pub fn formula_display(&self) -> String {
        self.formula.display(self.p, self.group.moduli())
    }

    /// Evaluates the closed form on two elements of the carrier.
    pub fn multiply(&self, u: &GroupElement, v: &GroupElement) -> GroupElement {
        self.formula.multiply(&self.group, u, v)
    }

    /// Materializes the full multiplication table.
    ///
    /// For the two trivial-socle entries this also rebuilds the table from
    /// the frozen 1-cocycle data and asserts the two constructions agree.
    pub fn brace(&self) -> Brace {
        let b = Brace::from_product_fn(self.group.clone(), |u, v| self.multiply(u, v));
        let cocycle = match self.formula {
            Formula::MixedSocOne => Some(mixed_soc_one_cocycle()),
            Formula::CubedSocOne => Some(cubed_soc_one_cocycle()),
            _ => None,
        };
        if let Some(t) = cocycle {
            let c = brace_from_cocycle(&t).expect("frozen cocycle data validates");
            assert_eq!(
                b.mul_table(),
                c.mul_table(),
                "{}: closed form disagrees with the cocycle construction",
                self.id
            );
        }
        b
    }
}

/// Evaluates an entry's closed form; the free-function spelling of
/// [`CatalogEntry::multiply`].
pub fn entry_multiply(e: &CatalogEntry, u: &GroupElement, v: &GroupElement) -> GroupElement {
    e.multiply(u, v)
}

fn order_token(p: u64, order: u64) -> &'static str {
    if order == p {
        "p"
    } else if order == p * p {
        "p2"
    } else {
        "p3"
    }
}

fn shape_token(g: &AbelianGroup) -> &'static str {
    let p = g.p();
    match g.moduli() {
        [m] if *m == p => "zp",
        [m] if *m == p * p => "zp2",
        [_] => "zp3",
        [m, n] if m == n => "zp_p",
        [_, _] => "zp_p2",
        _ => "zp_p_p",
    }
}

fn socle_token(p: u64, socle_order: u64) -> &'static str {
    if socle_order == 1 {
        "soc1"
    } else if socle_order == p {
        "socp"
    } else if socle_order == p * p {
        "socp2"
    } else {
        "socp3"
    }
}

fn entry(
    p: u64,
    group: &AbelianGroup,
    socle_order: u64,
    family: &str,
    params: Vec<(&str, u64)>,
    claimed_mult_group: GroupName,
    formula: Formula,
) -> CatalogEntry {
    let mut rendered = vec![format!("p={p}")];
    rendered.extend(params.iter().map(|(k, v)| format!("{k}={v}")));
    let id = format!(
        "{}.{}.{}.{}({})",
        order_token(p, group.order()),
        shape_token(group),
        socle_token(p, socle_order),
        family,
        rendered.join(",")
    );
    CatalogEntry {
        id,
        p,
        group: group.clone(),
        socle_order,
        claimed_mult_group,
        family: family.to_string(),
        params: params
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        formula,
    }
}

/// Multiplicative-group claims that deviate from their family's generic
/// rule, keyed by (family path, p, parameter value). Families without a
/// parameter use 0 in the parameter slot.
fn exceptional_claim(family_path: &str, p: u64, param: u64) -> Option<GroupName> {
    match (family_path, p, param) {
        ("zp_p2.socp.family5", 3, 2) => Some(GroupName::Heisenberg(3)),
        ("zp_p2.socp.family6", 3, 2) => Some(GroupName::Abelian(vec![3, 3, 3])),
        // In family8 the second coordinate of u³ is 3y(1+ε) mod 9, and mod 3
        // the only non-residue is ε = 2, so every cube is the identity: the
        // multiplicative group has exponent 3, not 9.
        ("zp_p2.socp2.family8", 3, 0) => Some(GroupName::Heisenberg(3)),
        ("zp_p_p.socp.family4", 3, 1) => Some(GroupName::Abelian(vec![3, 9])),
        ("zp_p_p.socp.family4", 3, 2) => Some(GroupName::ModularMaximal(3)),
        ("zp_p_p.socp2.family3", 3, 0) => Some(GroupName::ModularMaximal(3)),
        _ => None,
    }
}

fn small_entries(p: u64) -> Vec<CatalogEntry> {
    let zp = AbelianGroup::cyclic(p, 1);
    let zp2 = AbelianGroup::cyclic(p, 2);
    let sq = AbelianGroup::elementary(p, 2);
    let ab_p = GroupName::Abelian(vec![p]);
    let ab_p2 = GroupName::Abelian(vec![p * p]);
    let ab_pp = GroupName::Abelian(vec![p, p]);
    vec![
        entry(p, &zp, p, "trivial", vec![], ab_p, Formula::Trivial),
        entry(
            p,
            &zp2,
            p * p,
            "trivial",
            vec![],
            ab_p2.clone(),
            Formula::Trivial,
        ),
        entry(
            p,
            &zp2,
            p,
            "family1",
            vec![],
            if p == 2 {
                GroupName::Abelian(vec![2, 2])
            } else {
                ab_p2
            },
            Formula::CyclicPk { k: 1 },
        ),
        entry(
            p,
            &sq,
            p * p,
            "trivial",
            vec![],
            ab_pp.clone(),
            Formula::Trivial,
        ),
        entry(
            p,
            &sq,
            p,
            "family1",
            vec![],
            if p == 2 {
                GroupName::Abelian(vec![4])
            } else {
                ab_pp
            },
            Formula::SquareV,
        ),
    ]
}

/// The 27 braces of order 8, in shape-then-socle order.
fn p3_entries_two() -> Vec<CatalogEntry> {
    let z8 = AbelianGroup::cyclic(2, 3);
    let mix = AbelianGroup::mixed(2);
    let cub = AbelianGroup::elementary(2, 3);
    let ab8 = GroupName::Abelian(vec![8]);
    let ab24 = GroupName::Abelian(vec![2, 4]);
    let ab222 = GroupName::Abelian(vec![2, 2, 2]);
    let d4 = GroupName::Dihedral;
    let q = GroupName::Quaternion;
    let mut es = Vec::new();

    // ℤ/8.
    es.push(entry(
        2,
        &z8,
        2,
        "family1",
        vec![],
        ab24.clone(),
        Formula::CyclicPk { k: 1 },
    ));
    for (alpha, claimed) in [(1, q.clone()), (2, ab8.clone()), (3, d4.clone())] {
        es.push(entry(
            2,
            &z8,
            4,
            "family1",
            vec![("α", alpha)],
            claimed,
            Formula::CyclicUnit { alpha },
        ));
    }
    es.push(entry(2, &z8, 8, "trivial", vec![], ab8, Formula::Trivial));

    // ℤ/2 × ℤ/4.
    es.push(entry(
        2,
        &mix,
        1,
        "family1",
        vec![],
        d4.clone(),
        Formula::MixedSocOne,
    ));
    let z = MixedCoeffs::ZERO;
    let soc2 = [
        (ab24.clone(), MixedCoeffs { a: 1, d: 1, ..z }),
        (
            d4.clone(),
            MixedCoeffs {
                a: 1,
                c: 1,
                d: 1,
                ..z
            },
        ),
        (ab24.clone(), MixedCoeffs { b: 1, c: 1, ..z }),
        (
            ab222.clone(),
            MixedCoeffs {
                b: 1,
                c: 1,
                d: 1,
                ..z
            },
        ),
        (
            ab24.clone(),
            MixedCoeffs {
                b: 1,
                c: 1,
                g: 1,
                ..z
            },
        ),
        (d4.clone(), MixedCoeffs { d: 1, h: 1, ..z }),
    ];
    for (i, (claimed, co)) in soc2.into_iter().enumerate() {
        es.push(entry(
            2,
            &mix,
            2,
            &format!("family{}", i + 1),
            vec![],
            claimed,
            Formula::Mixed(co),
        ));
    }
    let soc4 = [
        (d4.clone(), MixedCoeffs { b: 1, ..z }),
        (ab222.clone(), MixedCoeffs { d: 1, ..z }),
        (d4.clone(), MixedCoeffs { c: 1, ..z }),
        (ab24.clone(), MixedCoeffs { a: 1, ..z }),
        (q.clone(), MixedCoeffs { a: 1, c: 1, ..z }),
        (ab24.clone(), MixedCoeffs { g: 1, ..z }),
    ];
    for (i, (claimed, co)) in soc4.into_iter().enumerate() {
        es.push(entry(
            2,
            &mix,
            4,
            &format!("family{}", i + 1),
            vec![],
            claimed,
            Formula::Mixed(co),
        ));
    }
    es.push(entry(
        2,
        &mix,
        8,
        "trivial",
        vec![],
        ab24.clone(),
        Formula::Trivial,
    ));

    // (ℤ/2)³.
    es.push(entry(
        2,
        &cub,
        1,
        "family1",
        vec![],
        d4.clone(),
        Formula::CubedSocOne,
    ));
    let z = CubedCoeffs::ZERO;
    let soc2 = [
        (ab222.clone(), CubedCoeffs { b: 1, c: 1, ..z }),
        (ab24.clone(), CubedCoeffs { a: 1, d: 1, ..z }),
        (
            q,
            CubedCoeffs {
                a: 1,
                c: 1,
                d: 1,
                ..z
            },
        ),
        (
            ab24.clone(),
            CubedCoeffs {
                b: 1,
                c: 1,
                f: 1,
                ..z
            },
        ),
    ];
    for (i, (claimed, co)) in soc2.into_iter().enumerate() {
        es.push(entry(
            2,
            &cub,
            2,
            &format!("family{}", i + 1),
            vec![],
            claimed,
            Formula::Cubed(co),
        ));
    }
    let soc4 = [
        (ab24, CubedCoeffs { a: 1, ..z }),
        (d4, CubedCoeffs { c: 1, ..z }),
    ];
    for (i, (claimed, co)) in soc4.into_iter().enumerate() {
        es.push(entry(
            2,
            &cub,
            4,
            &format!("family{}", i + 1),
            vec![],
            claimed,
            Formula::Cubed(co),
        ));
    }
    es.push(entry(
        2,
        &cub,
        8,
        "trivial",
        vec![],
        ab222,
        Formula::Trivial,
    ));
    es
}

/// The 6p+19 braces of order p³ for an odd prime, in shape-then-socle order.
fn p3_entries_odd(p: u64) -> Vec<CatalogEntry> {
    let eps = epsilon(p).value();
    let p2 = p * p;
    let zp3 = AbelianGroup::cyclic(p, 3);
    let mix = AbelianGroup::mixed(p);
    let cub = AbelianGroup::elementary(p, 3);
    let ab_p3 = GroupName::Abelian(vec![p * p2]);
    let ab_mix = GroupName::Abelian(vec![p, p2]);
    let ab_cub = GroupName::Abelian(vec![p, p, p]);
    let heis = GroupName::Heisenberg(p);
    let m3 = GroupName::ModularMaximal(p);
    let mut es = Vec::new();

    // ℤ/p³.
    es.push(entry(
        p,
        &zp3,
        p,
        "family1",
        vec![],
        ab_p3.clone(),
        Formula::CyclicPk { k: 1 },
    ));
    es.push(entry(
        p,
        &zp3,
        p2,
        "family1",
        vec![],
        ab_p3.clone(),
        Formula::CyclicPk { k: 2 },
    ));
    es.push(entry(
        p,
        &zp3,
        p * p2,
        "trivial",
        vec![],
        ab_p3,
        Formula::Trivial,
    ));

    // ℤ/p × ℤ/p², socle of order p.
    let z = MixedCoeffs::ZERO;
    for lam in 0..=(p - 1) / 2 {
        let claimed = if lam == 0 { ab_mix.clone() } else { m3.clone() };
        let co = MixedCoeffs {
            a: eps,
            c: lam,
            d: 1,
            ..z
        };
        es.push(entry(
            p,
            &mix,
            p,
            "family1",
            vec![("λ", lam), ("ε", eps)],
            claimed,
            Formula::Mixed(co),
        ));
    }
    for lam in 0..=(p - 1) / 2 {
        let claimed = if lam == 0 { ab_mix.clone() } else { m3.clone() };
        let co = MixedCoeffs {
            a: 1,
            c: lam,
            d: 1,
            ..z
        };
        es.push(entry(
            p,
            &mix,
            p,
            "family2",
            vec![("λ", lam)],
            claimed,
            Formula::Mixed(co),
        ));
    }
    for lam in 1..p {
        let claimed = if lam == 1 { ab_mix.clone() } else { m3.clone() };
        let co = MixedCoeffs { b: 1, c: lam, ..z };
        es.push(entry(
            p,
            &mix,
            p,
            "family3",
            vec![("λ", lam)],
            claimed,
            Formula::Mixed(co),
        ));
    }
    let co = MixedCoeffs {
        b: 1,
        c: p - 1,
        d: 1,
        ..z
    };
    es.push(entry(
        p,
        &mix,
        p,
        "family4",
        vec![],
        m3.clone(),
        Formula::Mixed(co),
    ));
    for a in 0..p {
        let generic = if a == 1 { ab_mix.clone() } else { m3.clone() };
        let claimed = exceptional_claim("zp_p2.socp.family5", p, a).unwrap_or(generic);
        let co = MixedCoeffs {
            b: 1,
            c: a,
            e: (a + p - 1) % p,
            g: 1,
            ..z
        };
        es.push(entry(
            p,
            &mix,
            p,
            "family5",
            vec![("a", a)],
            claimed,
            Formula::Mixed(co),
        ));
    }
    for a in 0..p {
        let generic = if a == eps { ab_mix.clone() } else { m3.clone() };
        let claimed = exceptional_claim("zp_p2.socp.family6", p, a).unwrap_or(generic);
        let co = MixedCoeffs {
            b: eps,
            c: a,
            e: (a + p - eps) % p,
            g: 1,
            ..z
        };
        es.push(entry(
            p,
            &mix,
            p,
            "family6",
            vec![("a", a), ("ε", eps)],
            claimed,
            Formula::Mixed(co),
        ));
    }

    // ℤ/p × ℤ/p², socle of order p².
    let soc_p2 = [
        (m3.clone(), MixedCoeffs { b: 1, ..z }, vec![]),
        (ab_mix.clone(), MixedCoeffs { d: 1, ..z }, vec![]),
        (m3.clone(), MixedCoeffs { c: 1, ..z }, vec![]),
        (ab_mix.clone(), MixedCoeffs { a: 1, ..z }, vec![]),
        (m3.clone(), MixedCoeffs { a: 1, c: 1, ..z }, vec![]),
        (ab_mix.clone(), MixedCoeffs { g: 1, ..z }, vec![]),
        (
            m3.clone(),
            MixedCoeffs {
                c: 1,
                e: 1,
                g: 1,
                ..z
            },
            vec![],
        ),
        (
            exceptional_claim("zp_p2.socp2.family8", p, 0).unwrap_or(m3.clone()),
            MixedCoeffs {
                c: eps,
                e: eps,
                g: 1,
                ..z
            },
            vec![("ε", eps)],
        ),
    ];
    for (i, (claimed, co, params)) in soc_p2.into_iter().enumerate() {
        es.push(entry(
            p,
            &mix,
            p2,
            &format!("family{}", i + 1),
            params,
            claimed,
            Formula::Mixed(co),
        ));
    }
    es.push(entry(
        p,
        &mix,
        p * p2,
        "trivial",
        vec![],
        ab_mix,
        Formula::Trivial,
    ));

    // (ℤ/p)³, socle of order p.
    let z = CubedCoeffs::ZERO;
    let co = CubedCoeffs {
        b: 1,
        c: p - 1,
        ..z
    };
    es.push(entry(
        p,
        &cub,
        p,
        "family1",
        vec![],
        heis.clone(),
        Formula::Cubed(co),
    ));
    for lam in 0..=(p - 1) / 2 {
        let claimed = if lam == 0 {
            ab_cub.clone()
        } else {
            heis.clone()
        };
        let co = CubedCoeffs {
            a: 1,
            c: lam,
            d: 1,
            ..z
        };
        es.push(entry(
            p,
            &cub,
            p,
            "family2",
            vec![("λ", lam)],
            claimed,
            Formula::Cubed(co),
        ));
    }
    for lam in 0..=(p - 1) / 2 {
        let claimed = if lam == 0 {
            ab_cub.clone()
        } else {
            heis.clone()
        };
        let co = CubedCoeffs {
            a: eps,
            c: lam,
            d: 1,
            ..z
        };
        es.push(entry(
            p,
            &cub,
            p,
            "family3",
            vec![("λ", lam), ("ε", eps)],
            claimed,
            Formula::Cubed(co),
        ));
    }
    for cpar in 0..p {
        let generic = if cpar == 1 {
            ab_cub.clone()
        } else {
            heis.clone()
        };
        let claimed = exceptional_claim("zp_p_p.socp.family4", p, cpar).unwrap_or(generic);
        let co = CubedCoeffs {
            b: 1,
            c: cpar,
            e: (cpar + p - 1) % p,
            f: 1,
            ..z
        };
        es.push(entry(
            p,
            &cub,
            p,
            "family4",
            vec![("c", cpar)],
            claimed,
            Formula::Cubed(co),
        ));
    }

    // (ℤ/p)³, socle of order p².
    let soc_p2 = [
        (ab_cub.clone(), CubedCoeffs { a: 1, ..z }),
        (heis.clone(), CubedCoeffs { c: 1, ..z }),
        (
            exceptional_claim("zp_p_p.socp2.family3", p, 0).unwrap_or(heis),
            CubedCoeffs {
                c: 1,
                e: 1,
                f: 1,
                ..z
            },
        ),
    ];
    for (i, (claimed, co)) in soc_p2.into_iter().enumerate() {
        es.push(entry(
            p,
            &cub,
            p2,
            &format!("family{}", i + 1),
            vec![],
            claimed,
            Formula::Cubed(co),
        ));
    }
    es.push(entry(
        p,
        &cub,
        p * p2,
        "trivial",
        vec![],
        ab_cub,
        Formula::Trivial,
    ));
    es
}

fn p3_entries(p: u64) -> Vec<CatalogEntry> {
    if p == 2 {
        p3_entries_two()
    } else {
        p3_entries_odd(p)
    }
}

fn with_braces(entries: Vec<CatalogEntry>) -> Vec<(CatalogEntry, Brace)> {
    entries
        .into_par_iter()
        .map(|e| {
            let b = e.brace();
            (e, b)
        })
        .collect()
}

/// The five braces of order p and p²: the trivial brace on each of ℤ/p,
/// ℤ/p², (ℤ/p)², plus one nontrivial brace on each order-p² shape.
pub fn small_catalog(p: u64) -> Vec<(CatalogEntry, Brace)> {
    assert!(
        is_prime(p),
        "catalog orders are prime powers; {p} is not prime"
    );
    with_braces(small_entries(p))
}

/// The braces of order p³ — 27 for p = 2, 6p+19 for odd p — with the prime
/// capped at `bound` (table sizes grow as p⁶).
pub fn catalog_p3_bounded(p: u64, bound: u64) -> Vec<(CatalogEntry, Brace)> {
    assert!(
        is_prime(p),
        "catalog orders are prime powers; {p} is not prime"
    );
    assert!(
        p <= bound,
        "order-p³ catalog capped at p ≤ {bound}, got p = {p}"
    );
    with_braces(p3_entries(p))
}

/// [`catalog_p3_bounded`] at the default bound.
pub fn catalog_p3(p: u64) -> Vec<(CatalogEntry, Brace)> {
    catalog_p3_bounded(p, DEFAULT_PRIME_BOUND)
}

/// Every catalog entry for the prime p: orders p, p², and p³.
pub fn catalog_all(p: u64) -> Vec<(CatalogEntry, Brace)> {
    let mut all = small_catalog(p);
    all.extend(catalog_p3(p));
    all
}

/// Resolves a stable id (the prime is read from its `p=` parameter) and
/// materializes just that entry, subject to the given prime bound.
pub fn entry_by_id_bounded(id: &str, bound: u64) -> Option<(CatalogEntry, Brace)> {
    let args = id.split_once('(')?.1.strip_suffix(')')?;
    let p: u64 = args
        .split(',')
        .find_map(|kv| kv.strip_prefix("p="))?
        .parse()
        .ok()?;
    if !is_prime(p) || p > bound {
        return None;
    }
    let e = small_entries(p)
        .into_iter()
        .chain(p3_entries(p))
        .find(|e| e.id() == id)?;
    let b = e.brace();
    Some((e, b))
}

/// [`entry_by_id_bounded`] at the default bound.
pub fn entry_by_id(id: &str) -> Option<(CatalogEntry, Brace)> {
    entry_by_id_bounded(id, DEFAULT_PRIME_BOUND)
}

/// The frozen 1-cocycle from the Sylow 2-subgroup of Aut(ℤ/2 × ℤ/4) onto
/// ℤ/2 × ℤ/4 realizing the trivial-socle brace of that shape.
fn mixed_soc_one_cocycle() -> CocycleTable {
    let g = AbelianGroup::mixed(2);
    let data: [(i64, i64, i64, i64, i64, i64); 8] = [
        (1, 0, 0, 1, 0, 0),
        (1, 1, 1, 1, 0, 1),
        (1, 0, 0, 3, 1, 2),
        (1, 1, 1, 3, 1, 1),
        (1, 0, 1, 1, 1, 3),
        (1, 0, 1, 3, 0, 3),
        (1, 1, 0, 1, 0, 2),
        (1, 1, 0, 3, 1, 0),
    ];
    let members = data
        .iter()
        .map(|&(x, y, zz, t, _, _)| Automorphism::Mixed(MixedMatrix::new(2, x, y, zz, t)))
        .collect();
    let images = data
        .iter()
        .map(|&(_, _, _, _, c0, c1)| g.element_from_coords(&[c0, c1]).index())
        .collect();
    CocycleTable {
        group: g,
        members,
        images,
    }
}

/// The frozen 1-cocycle from the unitriangular subgroup of GL₃(F₂) onto
/// (ℤ/2)³ realizing the trivial-socle brace of that shape:
/// π(I + n·E₁₂ + x·E₁₃ + y·E₂₃) = (y+n+xn, y+x+ny, n).
fn cubed_soc_one_cocycle() -> CocycleTable {
    let g = AbelianGroup::elementary(2, 3);
    let mut members = Vec::new();
    let mut images = Vec::new();
    for n in 0..2i64 {
        for x in 0..2i64 {
            for y in 0..2i64 {
                members.push(Automorphism::Gl(GlMatrix::new(
                    2,
                    &[&[1, n, x], &[0, 1, y], &[0, 0, 1]],
                )));
                images.push(
                    g.element_from_coords(&[y + n + x * n, y + x + n * y, n])
                        .index(),
                );
            }
        }
    }
    CocycleTable {
        group: g,
        members,
        images,
    }
}
