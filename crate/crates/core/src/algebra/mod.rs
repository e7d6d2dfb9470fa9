//! Exact scalars, multi-indices, the system description and sparse
//! generalized vector fields.

mod gvf;
mod index;
mod scalar;
mod system;

pub use gvf::{initial_field, CoeffVector, Gvf};
pub use index::{MultiIndex, PhaseExponent};
pub use scalar::{ParseScalarError, Scalar};
pub use system::{parse_system, Parameter, SystemSpec};

/// `L(mu)`; see [`SystemSpec::exponent_map`].
pub fn exponent_map(spec: &SystemSpec, mu: &MultiIndex) -> PhaseExponent {
    spec.exponent_map(mu)
}

/// `<L(mu), lambda>`; see [`SystemSpec::resonance_weight`].
pub fn resonance_weight(spec: &SystemSpec, mu: &MultiIndex) -> Scalar {
    spec.resonance_weight(mu)
}

/// Terms of `f` at level `s`.
pub fn level_slice(f: &Gvf, s: usize) -> Gvf {
    f.level_slice(s)
}
