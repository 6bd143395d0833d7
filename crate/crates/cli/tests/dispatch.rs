use std::collections::BTreeSet;

use qtoric_cli::DISPATCH;

const MODULE_OPS: &[&str] = &[
    "compare_monomials",
    "leading_monomial",
    "poly_arith",
    "reduce_mod_set",
    "s_polynomial",
    "buchberger",
    "member",
    "intersect",
    "quotient_by_poly",
    "quotient_by_ideal",
    "verify_quotient_identities",
    "quotient_ring_nf",
    "skew_normal_form",
    "twist_product",
    "faithfulness_defect",
    "braid_check",
    "involutive_q",
    "clifford_product",
    "grassmann_product",
    "basis_dimension",
    "clh_apply",
    "clh_morphism_check",
    "dual_cone",
    "is_regular",
    "projective_fan",
    "is_complete",
    "hilbert_basis",
    "toric_ideal",
    "amplitude",
    "additive_estimate",
    "bqp_decide",
    "gb_scaling_bench",
];

#[test]
fn every_operation_is_reachable() {
    let reached: BTreeSet<&str> = DISPATCH.iter().flat_map(|(_, ops)| ops.iter().copied()).collect();
    for op in MODULE_OPS {
        assert!(reached.contains(op), "`{op}` has no command");
    }
}

#[test]
fn command_names_are_unique() {
    let names: BTreeSet<&str> = DISPATCH.iter().map(|(c, _)| *c).collect();
    assert_eq!(names.len(), DISPATCH.len());
}
