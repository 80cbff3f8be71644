//! Exact-arithmetic engine for finite left braces of order p, p² and p³.
//!
//! A left brace is a set with two group operations (B, +) and (B, ·), the
//! first abelian, tied together by a · (b + c) + a = a · b + a · c. Every
//! such structure yields an involutive non-degenerate set-theoretic solution
//! of the Yang–Baxter equation. This crate constructs the full catalog of
//! left braces on abelian p-groups of order up to p³, verifies the defining
//! axioms table-by-table over ℤ/pᵏ (no floating point anywhere), classifies
//! braces up to isomorphism, cross-checks the catalog against an independent
//! brute-force enumerator, and exports the associated Yang–Baxter solutions.

pub mod abelian;
pub mod brace;
pub mod catalog;
pub mod classify;
pub mod extension;
pub mod modint;
pub mod ybe;

pub use abelian::{
    apply, automorphism_count, automorphism_from_permutation, automorphism_group, mixed_mul,
    mixed_pow, sylow_mp, sylow_tp, AbelianGroup, Automorphism, GlMatrix, GroupElement,
    HolomorphElement, MixedMatrix,
};
pub use brace::{
    brace_from_cocycle, mult_group_name, power, power_by_lambda_sum, quotient_by_socle,
    right_brace_witness, socle, verify_brace, Brace, CocycleTable, GroupName, LambdaMap,
    QuotientBrace, SocleInfo, VerifyReport, Violation,
};
pub use catalog::{
    catalog_all, catalog_p3, catalog_p3_bounded, entry_by_id, entry_by_id_bounded, entry_multiply,
    epsilon, small_catalog, CatalogEntry, DEFAULT_PRIME_BOUND,
};
pub use classify::{
    are_isomorphic, classify_braces, classify_catalog, enumerate_braces, fingerprint,
    nonexistence_checks, trivial_socle_braces, ClassificationReport, EnumerateOptions,
    EnumerationOutcome, Fingerprint, IsoWitness, NonexistenceReport,
};
pub use extension::{
    build_extension, check_extension_data, extension_inverse, induced_extension,
    sigma_h_equivalent, ExtensionData,
};
pub use modint::{binom, is_prime, lift, tri_sum, Residue};
pub use ybe::{
    solution_from_brace, verify_yang_baxter, SolutionMap, SolutionShapeError, YbeReport,
    YbeViolation,
};
