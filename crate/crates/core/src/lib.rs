//! Exact computer algebra for invariant differential operators on nilpotent
//! homogeneous spaces.
//!
//! Given a finite-dimensional nilpotent Lie algebra `g` over Q with rational
//! structure constants, a subalgebra `h`, and a character functional `lambda`
//! of `h`, this crate computes in the quotient `U(g) / U(g)h_lambda` of the
//! universal enveloping algebra by the left ideal generated by
//! `{H + lambda(H) : H in h}`:
//!
//! * PBW straightening, products, and the symmetrization map `beta`;
//! * the space of `h`-invariants of the quotient up to a degree bound,
//!   both at a fixed `lambda` and as a polynomial family in `t*lambda`;
//! * coadjoint-orbit data: orbit dimensions, stabilizers, the lagrangian
//!   condition `dim h.f = (1/2) dim g.f` on `lambda + h^perp`, Vergne
//!   polarizations along complete ideal flags, and adapted supplements;
//! * two linear characters of the invariant algebra (a change-of-supplement
//!   evaluation and a polarization-side reduction) together with exact
//!   comparison machinery, including the exponential correction operator of
//!   the five-dimensional worked example.
//!
//! Everything is exact: scalars are arbitrary-precision rationals, univariate
//! polynomials in a parameter `t`, or rational functions in `t`. There is no
//! floating point anywhere, and all randomized entry points take explicit
//! seeded generators so runs are reproducible.

pub mod builtins;
pub mod chars;
pub mod coeff;
pub mod dsl;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod orbits;
pub mod pbw;
pub mod poly;
pub mod quotient;
pub mod ratfunc;

pub use builtins::load_builtin;
pub use coeff::{rat, rat_int, Coeff, FieldCoeff, Rat};
pub use dsl::{parse_algebra, AlgebraFile, ParseError};
pub use error::Error;
pub use lie::{CharacterFunctional, LieAlgebra, LinearForm, Subalgebra, Subspace};
pub use linalg::Matrix;
pub use chars::{
    compare_characters, compare_with_search, exp_diff_op, gamma_ct, oracle_character,
    verify_example_correction, verify_example_correction_symbolic, CharacterReport,
    ComparisonReport, Convention, CorrectionReport, Method, OracleValue, PolyDiffOp,
};
pub use orbits::{
    adapted_supplement, lagrangian_check, orbit_dims, vergne_polarization, LagrangianReport,
    OrbitDims, Polarization, SkewForm,
};
pub use pbw::{adjoint, sym_adjoint, symmetrize, Pbw, SymPoly, Symmetrizer};
pub use poly::ParamPoly;
pub use quotient::{
    change_of_supplement, family_context, invariants_family, specialize_family, QuotientContext,
};
pub use ratfunc::RatFunc;
