use num_bigint::BigUint;

use gqx_core::groupzoo::four_group_normalizer_recipe;
use gqx_core::permgroup::Budget;
use gqx_core::ree::{
    exponent_set_ree, fixed_point_formula_only, model_order3_report, ree_group,
    verify_order3_in_subgroups, ReeMaxSubgroupKind, ReeModel,
};

#[test]
fn r27_order_and_sylow_three() {
    let ree = ree_group(1).unwrap();
    let q = 27u64;
    assert_eq!(ree.group.order(), BigUint::from(q.pow(3) * (q.pow(3) + 1) * (q - 1)));
    let u = ree.unipotent_radical().unwrap();
    assert_eq!(u.order(), BigUint::from(q.pow(3)));
    let x = ree.real_order3();
    assert!(u.generators().iter().all(|s| s.commutes_with(&x)));
    assert!(u.contains(&x).unwrap());
}

#[test]
fn unipotent_order3_count() {
    assert_eq!(ReeModel::new(1).unwrap().unipotent_order3_count(), 728);
}

#[test]
fn model_suite_at_q27() {
    let b = Budget::default();
    let reports = verify_order3_in_subgroups(1, &b).unwrap();
    assert_eq!(reports.len(), 4);
    for r in &reports {
        assert!(r.holds, "{}", r.kind);
        assert_eq!(r.order3_classes, 2);
        assert!(r.mutually_inverse);
    }
    assert_eq!(reports[0].centralizer_orders, vec![54, 54]);
    assert_eq!(reports[1].involutions, 31);
}

#[test]
fn trivial_dihedral_action_fails_the_centralizer_check() {
    let b = Budget::default();
    let recipe = four_group_normalizer_recipe(7, true).unwrap();
    let r = model_order3_report("control", &recipe, 6, &b).unwrap();
    assert!(!r.holds);
    assert_eq!(r.centralizer_orders, vec![42, 42]);
}

#[test]
fn formula_level_fixed_points() {
    for m in 1..=3 {
        for k in ReeMaxSubgroupKind::all(m).into_iter().skip(1) {
            let p = fixed_point_formula_only(m, k, None).unwrap();
            assert!(p.holds);
            let a = k.fixed_point_exponent(m).unwrap();
            assert_eq!(p.expected, BigUint::from(3u32).pow(a).to_string());
        }
    }
    assert!(fixed_point_formula_only(1, ReeMaxSubgroupKind::Parabolic, None).is_err());
}

#[test]
fn exponent_sets() {
    assert_eq!(exponent_set_ree(1).into_iter().collect::<Vec<_>>(), vec![3, 5]);
    assert_eq!(exponent_set_ree(4).into_iter().collect::<Vec<_>>(), vec![9, 12, 17]);
}
