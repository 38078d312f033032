//! Direct-product decompositions of finite join-semilattices.
//!
//! A decomposition `A = A1 x A2` is described internally by a base element
//! `c` and two subsemilattices `I1`, `I2` forming a *c-direct sum*. This
//! crate checks the defining axioms, builds the isomorphism `I1 x I2 -> A`
//! and translates between direct sums and pairs of complementary factor
//! congruences. On top of that sit full factorization, the strict refinement
//! join, the bounded-case criteria and an exhaustive corpus of small
//! semilattices used to search for axiom-independence witnesses.

pub mod bounded;
pub mod congruence;
pub mod directsum;
pub mod dot;
pub mod enumerate;
pub mod factorize;
pub mod iso;
pub mod semilattice;
pub mod slat;

pub use bounded::{check_one_case, check_zero_case, BoundedReport};
pub use congruence::{
    all_congruences, complementary_factor_pairs, is_congruence, quotient, Congruence,
    CongruencePair,
};
pub use directsum::{
    build_isomorphism, check_axioms, eval_phi, is_direct_sum, map_i, map_k, projections, Axiom,
    AxiomReport, PhiWitness, SummandPair,
};
pub use enumerate::{enumerate_semilattices, independence_search, Witness};
pub use factorize::{factor_congruence_boolean_check, factorize, refine_join, Factorization};
pub use iso::{canonical_form, isomorphism_check, ElementMap};
pub use semilattice::{direct_product, validate_semilattice, Product, Semilattice};

/// Size limits for the exhaustive operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier for which congruences are enumerated.
    pub congruence_cap: usize,
    /// Largest carrier of a direct product.
    pub product_cap: usize,
    /// Largest size handed to the corpus generator.
    pub enumeration_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            congruence_cap: congruence::DEFAULT_CONGRUENCE_CAP,
            product_cap: semilattice::DEFAULT_PRODUCT_CAP,
            enumeration_cap: enumerate::DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl Limits {
    /// Environment variable overriding `congruence_cap`.
    pub const SIZE_CAP_VAR: &'static str = "SLAT_SIZE_CAP";

    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(Self::SIZE_CAP_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.congruence_cap = cap;
        }
        limits
    }
}
