//! The `qtoric` batch language: declarations of rings, ideals, matrices, cones
//! and circuits followed by commands that print canonical results.

pub mod parser;
pub mod run;

pub use parser::{parse_polynomial, parse_program, Command, ParseError, ParseErrorKind, Program};
pub use run::{execute, run, run_source, RunError, RunOptions, EXIT_DOMAIN, EXIT_OK, EXIT_SYNTAX};

/// Each command and the library operations it reaches. Polynomial arithmetic
/// is reached through every polynomial argument.
pub const DISPATCH: &[(&str, &[&str])] = &[
    ("gb", &["buchberger"]),
    ("nf", &["quotient_ring_nf"]),
    ("member", &["member"]),
    ("intersect", &["intersect", "buchberger"]),
    ("quot", &["quotient_by_ideal", "quotient_by_poly", "buchberger"]),
    ("check-quotients", &["verify_quotient_identities"]),
    ("expand", &["poly_arith"]),
    ("lm", &["leading_monomial"]),
    ("spoly", &["s_polynomial"]),
    ("reduce", &["reduce_mod_set"]),
    ("compare", &["compare_monomials"]),
    ("skew-nf", &["skew_normal_form"]),
    ("twist", &["skew_normal_form", "twist_product"]),
    ("defect", &["faithfulness_defect"]),
    ("braid-check", &["braid_check"]),
    ("involutive-q", &["involutive_q"]),
    ("clifford", &["clifford_product"]),
    ("grassmann", &["grassmann_product"]),
    ("basis-dim", &["basis_dimension"]),
    ("clh-check", &["clh_morphism_check"]),
    ("clh-apply", &["clh_apply"]),
    ("dual-cone", &["dual_cone"]),
    ("hilbert", &["hilbert_basis"]),
    ("regular", &["is_regular"]),
    ("toric-ideal", &["toric_ideal", "hilbert_basis"]),
    ("fan", &["projective_fan"]),
    ("complete", &["is_complete", "projective_fan"]),
    ("amplitude", &["amplitude"]),
    ("estimate", &["additive_estimate"]),
    ("decide", &["bqp_decide"]),
    ("bench", &["gb_scaling_bench"]),
];
