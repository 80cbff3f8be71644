//! Building braces as extensions of a smaller base brace, and recovering
//! the extension data back from a brace.
//!
//! The data is (H, B, σ, h): an abelian carrier H, a base brace B, an
//! injective multiplicative homomorphism σ: (B,·) → Aut(H,+), and a
//! surjective additive map h: H → (B,+) satisfying h(σ_g(m)) = λ_g(h(m)).
//! Then x·y := x + σ(h(x))(y) is a left brace on H whose socle is ker h and
//! whose quotient by the socle is B. Conversely, every brace G induces such
//! data with H = (G,+), B = G/Soc(G), σ from its λ-maps and h the natural
//! projection.

use std::collections::HashSet;

use thiserror::Error;

use crate::abelian::{apply, automorphism_group, AbelianGroup, Automorphism};
use crate::brace::{quotient_by_socle, Brace, LambdaMap};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("σ or h has the wrong length for the given groups")]
    SizeMismatch,
    #[error("σ({g}) does not act on the carrier group")]
    SigmaWrongShape { g: usize },
    #[error("σ is not multiplicative at base pair ({x}, {y})")]
    SigmaNotHomomorphism { x: usize, y: usize },
    #[error("σ is not injective: σ({x}) = σ({y})")]
    SigmaNotInjective { x: usize, y: usize },
    #[error("h({m}) is out of range for the base brace")]
    HOutOfRange { m: usize },
    #[error("h is not additive at carrier pair ({m1}, {m2})")]
    HNotAdditive { m1: usize, m2: usize },
    #[error("h is not surjective: base element {missing} has no preimage")]
    HNotSurjective { missing: usize },
    #[error("h(σ_g(m)) ≠ λ_g(h(m)) at (g, m) = ({g}, {m})")]
    CompatibilityFails { g: usize, m: usize },
    #[error("λ_{a} of the input brace is not an additive automorphism")]
    LambdaNotAdditive { a: usize },
}

/// Extension data (H, B, σ, h); see the module docs for the conditions.
#[derive(Debug, Clone)]
pub struct ExtensionData {
    /// The abelian carrier H the extension lives on.
    pub carrier: AbelianGroup,
    /// The base brace B.
    pub base: Brace,
    /// σ indexed by base element: σ[g] ∈ Aut(H,+).
    pub sigma: Vec<Automorphism>,
    /// h indexed by carrier element: h[m] is a base element index.
    pub h: Vec<usize>,
}

/// Validate all extension-data conditions, in a fixed order: sizes and
/// shapes, σ multiplicative and injective, h additive and surjective, then
/// the compatibility law on every (g, m) pair.
pub fn check_extension_data(d: &ExtensionData) -> Result<(), ExtensionError> {
    let nb = d.base.order() as usize;
    let nh = d.carrier.order() as usize;
    if d.sigma.len() != nb || d.h.len() != nh {
        return Err(ExtensionError::SizeMismatch);
    }
    if let Some(g) = (0..nb).find(|&g| !d.sigma[g].acts_on(&d.carrier)) {
        return Err(ExtensionError::SigmaWrongShape { g });
    }
    for x in 0..nb {
        for y in 0..nb {
            if d.sigma[d.base.mul_idx(x, y)] != d.sigma[x].compose(&d.sigma[y]) {
                return Err(ExtensionError::SigmaNotHomomorphism { x, y });
            }
        }
    }
    for x in 0..nb {
        for y in x + 1..nb {
            if d.sigma[x] == d.sigma[y] {
                return Err(ExtensionError::SigmaNotInjective { x, y });
            }
        }
    }
    if let Some(m) = (0..nh).find(|&m| d.h[m] >= nb) {
        return Err(ExtensionError::HOutOfRange { m });
    }
    for m1 in 0..nh {
        for m2 in 0..nh {
            let sum = d
                .carrier
                .add(&d.carrier.element(m1), &d.carrier.element(m2));
            if d.h[sum.index()] != d.base.add_idx(d.h[m1], d.h[m2]) {
                return Err(ExtensionError::HNotAdditive { m1, m2 });
            }
        }
    }
    let image: HashSet<usize> = d.h.iter().copied().collect();
    if let Some(missing) = (0..nb).find(|g| !image.contains(g)) {
        return Err(ExtensionError::HNotSurjective { missing });
    }
    let base_lambda = LambdaMap::from_brace(&d.base);
    for (g, f) in d.sigma.iter().enumerate() {
        let perm = f.as_permutation(&d.carrier);
        for (m, &pm) in perm.iter().enumerate() {
            if d.h[pm as usize] != base_lambda.apply(g, d.h[m]) {
                return Err(ExtensionError::CompatibilityFails { g, m });
            }
        }
    }
    Ok(())
}

/// Materialize the extension brace x·y = x + σ(h(x))(y) on the carrier.
/// The data is validated first.
pub fn build_extension(d: &ExtensionData) -> Result<Brace, ExtensionError> {
    check_extension_data(d)?;
    let nh = d.carrier.order() as usize;
    let perms: Vec<Vec<u16>> = d
        .sigma
        .iter()
        .map(|f| f.as_permutation(&d.carrier))
        .collect();
    let lambda_perms: Vec<Vec<u16>> = (0..nh).map(|x| perms[d.h[x]].clone()).collect();
    Ok(Brace::from_lambda_perms(d.carrier.clone(), &lambda_perms))
}

/// Recover extension data from a brace: carrier (G,+), base G/Soc(G),
/// σ(g) = λ at the coset representative, h the coset projection.
pub fn induced_extension(b: &Brace) -> Result<ExtensionData, ExtensionError> {
    let q = quotient_by_socle(b);
    let lm = LambdaMap::from_brace(b);
    let sigma = q
        .reps
        .iter()
        .map(|&rep| {
            lm.automorphism(b.group(), rep)
                .ok_or(ExtensionError::LambdaNotAdditive { a: rep })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExtensionData {
        carrier: b.group().clone(),
        base: q.brace,
        sigma,
        h: q.projection,
    })
}

/// Multiplicative inverse in the extension, computed from the data alone:
/// u⁻¹ = −σ(h(u)⁻¹)(u), where the inverse of h(u) is taken in (B,·).
pub fn extension_inverse(d: &ExtensionData, u: usize) -> usize {
    let ginv = d.base.mult_inverse(d.h[u]);
    let moved = apply(&d.sigma[ginv], &d.carrier, &d.carrier.element(u));
    d.carrier.neg(&moved).index()
}

/// Search Aut(H,+) for an equivalence between two extension data over the
/// same carrier and base: an F with σ'(h'(m)) = F⁻¹ ∘ σ(h(F(m))) ∘ F for
/// every m (primed = `d_primed`). Such an F identifies the two extension
/// braces; the first match in enumeration order is returned.
pub fn sigma_h_equivalent(d_primed: &ExtensionData, d: &ExtensionData) -> Option<Automorphism> {
    if d_primed.carrier != d.carrier
        || d_primed.base.group() != d.base.group()
        || d_primed.base.mul_table() != d.base.mul_table()
    {
        return None;
    }
    let nh = d.carrier.order() as usize;
    automorphism_group(&d.carrier).find(|f| {
        let finv = f.inverse();
        let fperm = f.as_permutation(&d.carrier);
        (0..nh).all(|m| {
            let lhs = &d_primed.sigma[d_primed.h[m]];
            let rhs = finv.compose(&d.sigma[d.h[fperm[m] as usize]]).compose(f);
            *lhs == rhs
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::MixedMatrix;
    use crate::brace::{brace_from_cocycle, socle, verify_brace, CocycleTable};
    use crate::modint::{lift, Residue};

    fn z4_nontrivial() -> Brace {
        let g = AbelianGroup::cyclic(2, 2);
        Brace::from_product_fn(g.clone(), |a, b| {
            let (x, y) = (lift(a.coord(0)), lift(b.coord(0)));
            g.element_from_coords(&[(x + y + 2 * x * y) as i64])
        })
    }

    fn z8_unit_brace(alpha: u64) -> Brace {
        // x·y = x + (1+2α)^x y on ℤ/8.
        let g = AbelianGroup::cyclic(2, 3);
        Brace::from_product_fn(g.clone(), |a, b| {
            let x = lift(a.coord(0));
            let scale = Residue::new((1 + 2 * alpha) as i64, 8).pow(x);
            g.element_from_coords(&[(x + scale.value() * lift(b.coord(0))) as i64])
        })
    }

    fn dihedral_cocycle_brace() -> Brace {
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
        let table = CocycleTable {
            group: g.clone(),
            members: assign
                .iter()
                .map(|&((x, y, z, t), _)| Automorphism::Mixed(MixedMatrix::new(2, x, y, z, t)))
                .collect(),
            images: assign
                .iter()
                .map(|&(_, (u, w))| g.element_from_coords(&[u, w]).index())
                .collect(),
        };
        brace_from_cocycle(&table).unwrap()
    }

    #[test]
    fn hand_built_data_reproduces_z4_brace() {
        let carrier = AbelianGroup::cyclic(2, 2);
        let base = Brace::trivial(AbelianGroup::cyclic(2, 1));
        let d = ExtensionData {
            carrier,
            base,
            sigma: vec![
                Automorphism::Scalar(Residue::new(1, 4)),
                Automorphism::Scalar(Residue::new(3, 4)),
            ],
            h: vec![0, 1, 0, 1],
        };
        assert_eq!(check_extension_data(&d), Ok(()));
        let built = build_extension(&d).unwrap();
        assert_eq!(built, z4_nontrivial());
        for u in 0..4 {
            assert_eq!(extension_inverse(&d, u), built.mult_inverse(u));
        }
    }

    #[test]
    fn invalid_data_is_rejected() {
        let carrier = AbelianGroup::cyclic(2, 2);
        let base = Brace::trivial(AbelianGroup::cyclic(2, 1));
        let good = ExtensionData {
            carrier: carrier.clone(),
            base: base.clone(),
            sigma: vec![
                Automorphism::Scalar(Residue::new(1, 4)),
                Automorphism::Scalar(Residue::new(3, 4)),
            ],
            h: vec![0, 1, 0, 1],
        };

        // σ not a homomorphism: σ(1)² should be σ(1·1) = σ(0) = id.
        let mut bad = good.clone();
        bad.sigma[0] = Automorphism::Scalar(Residue::new(3, 4));
        assert!(matches!(
            check_extension_data(&bad),
            Err(ExtensionError::SigmaNotHomomorphism { .. })
                | Err(ExtensionError::SigmaNotInjective { .. })
        ));

        // h not additive.
        let mut bad = good.clone();
        bad.h = vec![0, 1, 1, 0];
        assert!(matches!(
            check_extension_data(&bad),
            Err(ExtensionError::HNotAdditive { .. })
        ));

        // h not surjective.
        let mut bad = good.clone();
        bad.h = vec![0, 0, 0, 0];
        assert!(matches!(
            check_extension_data(&bad),
            Err(ExtensionError::HNotSurjective { missing: 1 })
        ));

        // Wrong σ shape for the carrier.
        let mut bad = good.clone();
        bad.sigma[1] = Automorphism::Scalar(Residue::new(1, 2));
        assert!(matches!(
            check_extension_data(&bad),
            Err(ExtensionError::SigmaWrongShape { g: 1 })
        ));

        // Compatibility failure: base with a nontrivial λ but σ, h from the
        // trivial setup cannot satisfy h(σ_g(m)) = λ_g(h(m)).
        let bad = ExtensionData {
            carrier: AbelianGroup::cyclic(2, 2),
            base: z4_nontrivial(),
            sigma: vec![
                Automorphism::Scalar(Residue::new(1, 4)),
                Automorphism::Scalar(Residue::new(3, 4)),
                Automorphism::Scalar(Residue::new(5, 4)),
                Automorphism::Scalar(Residue::new(7, 4)),
            ],
            h: vec![0, 1, 2, 3],
        };
        assert!(check_extension_data(&bad).is_err());
    }

    #[test]
    fn induced_data_round_trips_exactly() {
        for b in [
            Brace::trivial(AbelianGroup::cyclic(2, 3)),
            Brace::trivial(AbelianGroup::mixed(3)),
            z4_nontrivial(),
            z8_unit_brace(1),
            z8_unit_brace(2),
            z8_unit_brace(3),
            dihedral_cocycle_brace(),
        ] {
            assert!(verify_brace(&b).ok());
            let d = induced_extension(&b).unwrap();
            assert_eq!(check_extension_data(&d), Ok(()), "{b:?}");
            let rebuilt = build_extension(&d).unwrap();
            assert_eq!(rebuilt.mul_table(), b.mul_table(), "{b:?}");
            // Socle of the extension is exactly ker h.
            let soc = socle(&b);
            for m in 0..b.order() as usize {
                assert_eq!(soc.contains(m), d.h[m] == 0);
            }
            for u in 0..b.order() as usize {
                assert_eq!(extension_inverse(&d, u), b.mult_inverse(u));
            }
        }
    }

    #[test]
    fn equivalence_finds_identity_for_same_data() {
        let d = induced_extension(&z8_unit_brace(1)).unwrap();
        let f = sigma_h_equivalent(&d, &d).unwrap();
        assert!(f.is_identity());
    }

    #[test]
    fn distinct_unit_braces_are_inequivalent() {
        let d1 = induced_extension(&z8_unit_brace(1)).unwrap();
        let d3 = induced_extension(&z8_unit_brace(3)).unwrap();
        // Same carrier ℤ/8 and same (trivial, order-2) base, but no F works.
        assert_eq!(
            d1.base.mul_table(),
            d3.base.mul_table(),
            "bases must agree for the test to be meaningful"
        );
        assert_eq!(sigma_h_equivalent(&d1, &d3), None);
        assert_eq!(sigma_h_equivalent(&d3, &d1), None);
    }

    #[test]
    fn twisted_data_is_equivalent_and_builds_the_pullback() {
        let b = dihedral_cocycle_brace();
        let d = induced_extension(&b).unwrap();
        let f = Automorphism::Mixed(MixedMatrix::new(2, 1, 1, 0, 1));
        let finv = f.inverse();
        let fperm = f.as_permutation(&d.carrier);
        let d2 = ExtensionData {
            carrier: d.carrier.clone(),
            base: d.base.clone(),
            sigma: d
                .sigma
                .iter()
                .map(|s| finv.compose(s).compose(&f))
                .collect(),
            h: (0..d.h.len()).map(|m| d.h[fperm[m] as usize]).collect(),
        };
        assert_eq!(check_extension_data(&d2), Ok(()));
        let witness = sigma_h_equivalent(&d2, &d).unwrap();
        // The witness satisfies the defining identity by construction of the
        // search; the chosen twist F is one valid witness.
        let nh = d.carrier.order() as usize;
        let wperm = witness.as_permutation(&d.carrier);
        for (m, &wm) in wperm.iter().enumerate() {
            let lhs = &d2.sigma[d2.h[m]];
            let rhs = witness
                .inverse()
                .compose(&d.sigma[d.h[wm as usize]])
                .compose(&witness);
            assert_eq!(*lhs, rhs);
        }
        // And the twisted data builds the pullback of the original brace.
        let built = build_extension(&d2).unwrap();
        let finv_perm = finv.as_permutation(&d.carrier);
        for x in 0..nh {
            for y in 0..nh {
                let expect = finv_perm[b.mul_idx(fperm[x] as usize, fperm[y] as usize)] as usize;
                assert_eq!(built.mul_idx(x, y), expect);
            }
        }
    }
}
