use num_bigint::BigUint;

use gqx_core::groupzoo::{
    elements_of_order, four_group_normalizer_recipe, frobenius_recipe, involution_census,
    order_n_centralizing_involution, realize, Recipe,
};
use gqx_core::permgroup::{element_into_complement, Budget};

#[test]
fn odd_dihedral_involutions_form_one_class() {
    for n in [3u64, 5, 7, 9, 13, 31] {
        let r = realize(&Recipe::Dihedral(n)).unwrap();
        let c = involution_census(&r.group, &Budget::default()).unwrap();
        assert_eq!(c.count, n);
        assert_eq!(c.class_sizes, vec![n]);
    }
}

#[test]
fn realized_orders_match_recipes() {
    let cases: Vec<(Recipe, u64)> = vec![
        (frobenius_recipe(7, 3), 21),
        (frobenius_recipe(13, 4), 52),
        (frobenius_recipe(19, 6), 114),
        (frobenius_recipe(37, 6), 222),
        (four_group_normalizer_recipe(7, false).unwrap(), 168),
        (Recipe::Psl2(8), 504),
        (Recipe::Psl2(27), 9828),
        (Recipe::Direct(vec![Recipe::Cyclic(2), Recipe::Psl2(27)]), 19656),
        (Recipe::ElementaryAbelian { p: 2, k: 3 }, 8),
    ];
    for (r, n) in cases {
        let g = realize(&r).unwrap();
        assert_eq!(g.group.order(), BigUint::from(n), "{r}");
        assert_eq!(r.to_string().parse::<Recipe>().unwrap(), r);
    }
}

#[test]
fn order3_elements_enter_the_c6_complement() {
    for n in [7u64, 13, 19, 37] {
        let r = realize(&frobenius_recipe(n, 6)).unwrap();
        let k = r.group.subgroup(r.complement_gens.clone()).unwrap();
        for g in elements_of_order(&r.group, 3).unwrap() {
            let h = element_into_complement(&r.group, &r.normal_gens, &r.complement_gens, &g).unwrap();
            assert!(k.contains(&g.conjugate(&h.inverse())).unwrap());
        }
    }
}

#[test]
fn four_group_normalizer_at_q27() {
    let r = realize(&four_group_normalizer_recipe(7, false).unwrap()).unwrap();
    let c = involution_census(&r.group, &Budget::default()).unwrap();
    assert_eq!(c.count, 27 + 4);
    let (n3, central) = order_n_centralizing_involution(&r.group, 3).unwrap();
    assert_eq!(n3, central);
    assert_eq!(n3, 56);
}
