use num_bigint::BigUint;

use gqx_core::groupzoo::elements_of_order;
use gqx_core::permgroup::{
    centralizer_transitive_on_fixed, class_fusion_check, coset_action, Budget,
};
use gqx_core::suzuki::{
    exponent_set_suzuki, fixed_point_profile, subfield_embedding, sylow_centralizer_bound, suzuki_group, SuzukiModel,
    SzMaxSubgroupKind,
};

fn sz_order(q: u64) -> BigUint {
    BigUint::from(q * q * (q * q + 1) * (q - 1))
}

#[test]
fn orders_and_sylow_two() {
    for m in 1..=2 {
        let sz = suzuki_group(m).unwrap();
        let q = sz.q() as u64;
        assert_eq!(sz.group.order(), sz_order(q));
        let b = Budget::default();
        let p = sz.maximal_subgroup(SzMaxSubgroupKind::Parabolic, &b).unwrap();
        let sylow = sz.group.subgroup(p.normal.clone()).unwrap();
        assert_eq!(sylow.order(), BigUint::from(q * q));
    }
}

#[test]
fn ovoid_points_are_indexed_consistently() {
    let model = SuzukiModel::new(2).unwrap();
    for i in 0..model.degree() as u32 {
        assert_eq!(model.index_of(model.point(i)), Some(i));
    }
}

#[test]
fn fusion_and_transitivity_agree_on_sz8() {
    let sz = suzuki_group(1).unwrap();
    let b = Budget::default();
    for kind in [
        SzMaxSubgroupKind::Parabolic,
        SzMaxSubgroupKind::Dihedral,
        SzMaxSubgroupKind::FrobeniusPlus,
        SzMaxSubgroupKind::FrobeniusMinus,
    ] {
        let h = sz.maximal_subgroup(kind, &b).unwrap();
        let g = elements_of_order(&h.group, 2).unwrap().remove(0);
        let fusion = class_fusion_check(&sz.group, h.group.generators(), &g, &b).unwrap();
        let action = coset_action(&sz.group, h.group.generators(), &b).unwrap();
        assert_eq!(
            BigUint::from(action.degree()) * h.group.order(),
            sz.group.order()
        );
        let fixed = action.fixed_points(&g).len();
        if fixed > 0 {
            let ct = centralizer_transitive_on_fixed(&sz.group, &g, &action, &b).unwrap();
            assert_eq!(fusion.holds, ct.transitive, "{kind}");
            if fusion.holds {
                assert_eq!(ct.centralizer_index, fixed.to_string());
            }
        }
    }
}

#[test]
fn profiles_on_sz8() {
    let sz = suzuki_group(1).unwrap();
    let b = Budget::default();
    for (kind, fixed) in [
        (SzMaxSubgroupKind::Dihedral, "32"),
        (SzMaxSubgroupKind::FrobeniusPlus, "16"),
        (SzMaxSubgroupKind::FrobeniusMinus, "16"),
    ] {
        let p = fixed_point_profile(&sz, kind, &b).unwrap();
        assert!(p.holds, "{kind}");
        assert_eq!(p.observed.as_deref(), Some(fixed));
        assert_eq!(p.formula.as_deref(), Some(fixed));
    }
    assert!(fixed_point_profile(&sz, SzMaxSubgroupKind::Parabolic, &b).is_err());
}

#[test]
fn subfield_subgroup_of_sz512() {
    let e = subfield_embedding(4, 3).unwrap();
    assert!(e.holds);
    assert_eq!(e.sub_ovoid_size, 65);
    assert_eq!(e.sub_order, "29120");
    assert!(subfield_embedding(4, 2).is_err());
}

#[test]
fn exponent_sets() {
    assert_eq!(exponent_set_suzuki(1).into_iter().collect::<Vec<_>>(), vec![4, 5]);
    assert_eq!(exponent_set_suzuki(4).into_iter().collect::<Vec<_>>(), vec![12, 16, 17]);
    // e = 15: subfields 2^5 and 2^3.
    assert_eq!(exponent_set_suzuki(7).into_iter().collect::<Vec<_>>(), vec![20, 24, 28, 29]);
}

#[test]
fn subfield_involution_centralizer_bounds_in_sz512() {
    let b = sylow_centralizer_bound(4, 3).unwrap();
    assert_eq!((b.q, b.q0), (512, 8));
    assert_eq!(b.ambient, 262_144);
    assert_eq!(b.subfield, 64);
    assert!(b.holds);
    // (q/q0)^2 = 4096 = 2^12, the subfield exponent.
    assert_eq!(b.ambient / b.subfield, 4096);
}
