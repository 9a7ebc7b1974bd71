use gqx_core::finitefield::GaloisField;
use proptest::prelude::*;

#[test]
fn tits_squares_to_frobenius() {
    for (p, k) in [(2, 3), (2, 5), (2, 7), (2, 9), (3, 3), (3, 5)] {
        let f = GaloisField::new(p, k).unwrap();
        for a in f.elements() {
            let t = f.tits_endo(a).unwrap();
            assert_eq!(f.tits_endo(t).unwrap(), f.pow(a, p as u64), "GF({p}^{k}) at {a}");
        }
    }
}

#[test]
fn frobenius_is_a_ring_map() {
    for (p, k) in [(2, 3), (3, 3), (2, 5)] {
        let f = GaloisField::new(p, k).unwrap();
        for e in 0..k {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b), e), f.add(f.frobenius(a, e), f.frobenius(b, e)));
                    assert_eq!(f.frobenius(f.mul(a, b), e), f.mul(f.frobenius(a, e), f.frobenius(b, e)));
                }
            }
        }
    }
}

#[test]
fn units_have_order_dividing_q_minus_one() {
    for (p, k) in [(2, 7), (3, 5), (3, 2)] {
        let f = GaloisField::new(p, k).unwrap();
        let q = f.order() as u64;
        assert!(f.elements().filter(|&a| a != 0).all(|a| f.pow(a, q - 1) == 1));
        // The primitive element has order exactly q - 1.
        let g = f.primitive();
        assert!((1..q - 1).all(|e| f.pow(g, e) != 1));
    }
}

#[test]
fn independent_instances_agree() {
    let a = GaloisField::new(3, 5).unwrap();
    let b = GaloisField::new(3, 5).unwrap();
    assert_eq!(a.modulus(), b.modulus());
    assert_eq!(a.primitive(), b.primitive());
    for x in a.elements().step_by(7) {
        for y in a.elements().step_by(11) {
            assert_eq!(a.mul(x, y), b.mul(x, y));
        }
    }
}

proptest! {
    #[test]
    fn field_axioms_gf512(a in 0u32..512, b in 0u32..512, c in 0u32..512) {
        let f = GaloisField::new(2, 9).unwrap();
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        prop_assert_eq!(f.parse(&f.format(a)).unwrap(), a);
    }

    #[test]
    fn field_axioms_gf243(a in 0u32..243, b in 0u32..243) {
        let f = GaloisField::new(3, 5).unwrap();
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.frobenius(a, 5), a);
    }
}

#[test]
fn other_characteristics_rejected() {
    assert!(GaloisField::new(5, 2).is_err());
    assert!(GaloisField::new(2, 0).is_err());
}
