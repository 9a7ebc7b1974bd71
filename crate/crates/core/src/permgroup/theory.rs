//! Fixed points, class fusion, centralizer transitivity on fixed sets, and
//! complement conjugacy for coprime split extensions.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::class::{centralizer_generators, conjugacy_class, ConjugacyClass};
use super::{Budget, GroupAction, PermError, PermGroup, Permutation, StabChain};

/// Largest group whose elements are walked one by one.
const ENUMERATION_LIMIT: u64 = 20_000_000;

pub fn fixed_points(action: &GroupAction, g: &Permutation) -> Vec<u32> {
    action.fixed_points(g)
}

/// `|Omega| * |g^G ∩ G_a| / |g^G|`, required to be an exact integer.
pub fn fixed_count_formula(
    omega_size: u64,
    class_in_stabilizer: u64,
    class_size: u64,
) -> Result<u64, PermError> {
    if class_size == 0 || omega_size == 0 {
        return Err(PermError::Hypothesis("sizes must be positive".into()));
    }
    let num = BigUint::from(omega_size) * BigUint::from(class_in_stabilizer);
    let (q, r) = num.div_rem(&BigUint::from(class_size));
    if !r.is_zero() {
        return Err(PermError::NotIntegral(format!(
            "{omega_size} * {class_in_stabilizer} / {class_size}"
        )));
    }
    q.to_u64()
        .ok_or_else(|| PermError::Unsupported("fixed-point count exceeds u64".into()))
}

fn check_enumerable(order: &BigUint) -> Result<(), PermError> {
    if *order > BigUint::from(ENUMERATION_LIMIT) {
        return Err(PermError::Unsupported(format!(
            "group of order {order} is too large to enumerate"
        )));
    }
    Ok(())
}

/// Number of elements of `sub` lying in `class` (a class of `group`).
pub fn count_class_members_in(
    group: &PermGroup,
    class: &ConjugacyClass,
    sub: &StabChain,
) -> Result<u64, PermError> {
    check_enumerable(&sub.order())?;
    let base = group.chain().base();
    let packer = class.packer();
    let mut imgs = vec![0u32; base.len()];
    let mut hits = 0u64;
    sub.for_each_factors(|f| {
        for (j, &b) in base.iter().enumerate() {
            imgs[j] = sub.eval_factored(f, b);
        }
        if class.contains_key(packer.pack(&imgs)) {
            hits += 1;
        }
    });
    Ok(hits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionReport {
    /// `|x^G ∩ H|`
    pub ambient_hits: u64,
    /// `|x^H|`
    pub local_class: u64,
    pub ambient_class: u64,
    pub holds: bool,
}

/// Whether `x^G ∩ H = x^H`, i.e. the class does not split in `H`.
pub fn class_fusion_check(
    group: &PermGroup,
    stabilizer_gens: &[Permutation],
    x: &Permutation,
    budget: &Budget,
) -> Result<FusionReport, PermError> {
    let ambient = conjugacy_class(group, x, budget, false)?;
    class_fusion_with(group, &ambient, stabilizer_gens, budget)
}

/// As [`class_fusion_check`] with the ambient class already enumerated.
pub fn class_fusion_with(
    group: &PermGroup,
    ambient: &ConjugacyClass,
    stabilizer_gens: &[Permutation],
    budget: &Budget,
) -> Result<FusionReport, PermError> {
    let sub = group.subgroup(stabilizer_gens.to_vec())?;
    let x = ambient.representative();
    if !sub.contains(x)? {
        return Err(PermError::Hypothesis("element not in the stabilizer".into()));
    }
    let local = conjugacy_class(&sub, x, budget, false)?;
    let hits = count_class_members_in(group, ambient, sub.chain())?;
    Ok(FusionReport {
        ambient_hits: hits,
        local_class: local.size(),
        ambient_class: ambient.size(),
        holds: hits == local.size(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerTransitivity {
    pub transitive: bool,
    pub orbit_count: usize,
    pub fixed_count: usize,
    pub centralizer_order: String,
    /// `|C_G(x) ∩ G_a|` for the first fixed point `a`, counted element by
    /// element.
    pub centralizer_point_stabilizer: String,
    /// `|C_G(x) : C_G(x) ∩ G_a|`
    pub centralizer_index: String,
}

/// Orbits of `C_G(x)` on the fixed points of `x`.
pub fn centralizer_transitive_on_fixed(
    group: &PermGroup,
    x: &Permutation,
    action: &GroupAction,
    budget: &Budget,
) -> Result<CentralizerTransitivity, PermError> {
    if action.fixed_points(x).is_empty() {
        return Err(PermError::Hypothesis("element has no fixed points".into()));
    }
    let class = conjugacy_class(group, x, budget, true)?;
    centralizer_transitive_with(group, &class, action, budget.seed)
}

/// As [`centralizer_transitive_on_fixed`] for a class enumerated with its
/// BFS tree.
pub fn centralizer_transitive_with(
    group: &PermGroup,
    class: &ConjugacyClass,
    action: &GroupAction,
    seed: u64,
) -> Result<CentralizerTransitivity, PermError> {
    let fixed = action.fixed_points(class.representative());
    if fixed.is_empty() {
        return Err(PermError::Hypothesis("element has no fixed points".into()));
    }
    let (cgens, cchain) = centralizer_generators(group, class, seed)?;
    let corder = cchain.order();

    let mut orbit_id = vec![u32::MAX; action.degree()];
    let mut orbit_count = 0;
    for &start in &fixed {
        if orbit_id[start as usize] != u32::MAX {
            continue;
        }
        let mut queue = vec![start];
        orbit_id[start as usize] = orbit_count;
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for c in &cgens {
                let q = action.image(p, c);
                if orbit_id[q as usize] == u32::MAX {
                    orbit_id[q as usize] = orbit_count;
                    queue.push(q);
                }
            }
        }
        orbit_count += 1;
    }

    let alpha = fixed[0];
    check_enumerable(&corder)?;
    let mut stab = 0u64;
    cchain.for_each_factors(|f| {
        let c = cchain.element_from_factors(f);
        if action.image(alpha, &c) == alpha {
            stab += 1;
        }
    });
    let index = &corder / BigUint::from(stab);
    Ok(CentralizerTransitivity {
        transitive: orbit_count == 1,
        orbit_count: orbit_count as usize,
        fixed_count: fixed.len(),
        centralizer_order: corder.to_string(),
        centralizer_point_stabilizer: stab.to_string(),
        centralizer_index: index.to_string(),
    })
}

fn check_coprime_split(
    whole: &PermGroup,
    normal: &PermGroup,
    complement: &PermGroup,
) -> Result<(), PermError> {
    for n in normal.generators() {
        for g in whole.generators() {
            if !normal.contains(&n.conjugate(g))? {
                return Err(PermError::Hypothesis("subgroup is not normal".into()));
            }
        }
    }
    let (n, k, g) = (normal.order(), complement.order(), whole.order());
    if !n.gcd(&k).eq(&BigUint::from(1u32)) {
        return Err(PermError::Hypothesis(format!("gcd({n}, {k}) != 1")));
    }
    if &n * &k != g {
        return Err(PermError::Hypothesis(format!("{n} * {k} != {g}")));
    }
    check_enumerable(&g)
}

/// For `G = N:K` with coprime orders and a probe subgroup `M` with
/// `|M| = |K|`, searches `x` with `K^x = M`. `Ok(None)` means no such `x`
/// exists, which would contradict Schur-Zassenhaus.
pub fn complement_conjugacy_check(
    whole: &PermGroup,
    normal_gens: &[Permutation],
    complement_gens: &[Permutation],
    probe: &PermGroup,
) -> Result<Option<Permutation>, PermError> {
    let normal = whole.subgroup(normal_gens.to_vec())?;
    let complement = whole.subgroup(complement_gens.to_vec())?;
    check_coprime_split(whole, &normal, &complement)?;
    for m in probe.generators() {
        if !whole.contains(m)? {
            return Err(PermError::Hypothesis("probe is not a subgroup".into()));
        }
    }
    if probe.order() != complement.order() {
        return Err(PermError::Hypothesis("probe order differs from complement".into()));
    }
    let mut found = None;
    let chain = whole.chain();
    let mut stop = false;
    chain.for_each_factors(|f| {
        if stop {
            return;
        }
        let x = chain.element_from_factors(f);
        if complement_gens
            .iter()
            .all(|k| probe.chain().contains(&k.conjugate(&x)))
        {
            found = Some(x);
            stop = true;
        }
    });
    Ok(found)
}

/// For `G = N:K` with coprime orders and `|g|` dividing `|K|`, finds `h`
/// with `g ∈ K^h`.
pub fn element_into_complement(
    whole: &PermGroup,
    normal_gens: &[Permutation],
    complement_gens: &[Permutation],
    g: &Permutation,
) -> Result<Permutation, PermError> {
    let normal = whole.subgroup(normal_gens.to_vec())?;
    let complement = whole.subgroup(complement_gens.to_vec())?;
    check_coprime_split(whole, &normal, &complement)?;
    if !whole.contains(g)? {
        return Err(PermError::NotContained);
    }
    if !(complement.order() % g.order()).is_zero() {
        return Err(PermError::Hypothesis("element order does not divide |K|".into()));
    }
    let chain = whole.chain();
    let mut found = None;
    chain.for_each_factors(|f| {
        if found.is_some() {
            return;
        }
        let h = chain.element_from_factors(f);
        // g ∈ K^h  <=>  h g h^-1 ∈ K
        if complement.chain().contains(&g.conjugate(&h.inverse())) {
            found = Some(h);
        }
    });
    found.ok_or_else(|| PermError::SearchFailed("no conjugate of K contains g".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_edges() {
        assert_eq!(fixed_count_formula(2080, 7, 455).unwrap(), 32);
        assert_eq!(fixed_count_formula(560, 13, 455).unwrap(), 16);
        assert_eq!(fixed_count_formula(10, 0, 5).unwrap(), 0);
        assert!(matches!(
            fixed_count_formula(10, 1, 3),
            Err(PermError::NotIntegral(_))
        ));
        assert!(fixed_count_formula(10, 1, 0).is_err());
    }

    /// C7:C3 on 7 points: x -> x+1 and x -> 2x.
    fn c7c3() -> (PermGroup, Permutation, Permutation) {
        let t = Permutation::from_images((0..7).map(|x| (x + 1) % 7).collect()).unwrap();
        let m = Permutation::from_images((0..7).map(|x| (2 * x) % 7).collect()).unwrap();
        (PermGroup::new(7, vec![t.clone(), m.clone()]).unwrap(), t, m)
    }

    #[test]
    fn frobenius_21_complements_conjugate() {
        let (g, t, m) = c7c3();
        assert_eq!(g.order_u64(), 21);
        let mut probes = 0;
        for x in g.elements() {
            if x.order() == BigUint::from(3u32) {
                let probe = PermGroup::new(7, vec![x.clone()]).unwrap();
                let w = complement_conjugacy_check(&g, std::slice::from_ref(&t), std::slice::from_ref(&m), &probe)
                    .unwrap()
                    .expect("conjugate complement");
                assert!(probe.contains(&m.conjugate(&w)).unwrap());
                let h = element_into_complement(&g, std::slice::from_ref(&t), std::slice::from_ref(&m), &x).unwrap();
                assert!(PermGroup::new(7, vec![m.clone()])
                    .unwrap()
                    .contains(&x.conjugate(&h.inverse()))
                    .unwrap());
                probes += 1;
            }
        }
        assert_eq!(probes, 14);
        let own = PermGroup::new(7, vec![m.clone()]).unwrap();
        let w = complement_conjugacy_check(&g, std::slice::from_ref(&t), std::slice::from_ref(&m), &own)
            .unwrap()
            .unwrap();
        assert!(w.is_identity());
        assert!(element_into_complement(&g, std::slice::from_ref(&t), std::slice::from_ref(&m), &m)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn hypothesis_violations_are_distinct() {
        let (g, t, m) = c7c3();
        // <m> is not normal.
        let probe = PermGroup::new(7, vec![t.clone()]).unwrap();
        assert!(matches!(
            complement_conjugacy_check(&g, std::slice::from_ref(&m), std::slice::from_ref(&t), &probe),
            Err(PermError::Hypothesis(_))
        ));
        assert!(matches!(
            element_into_complement(&g, std::slice::from_ref(&t), std::slice::from_ref(&m), &t),
            Err(PermError::Hypothesis(_))
        ));
    }

    #[test]
    fn transitivity_and_fusion_in_s4() {
        let g = PermGroup::new(
            4,
            vec![
                Permutation::parse("1 2 3 0").unwrap(),
                Permutation::parse("1 0 2 3").unwrap(),
            ],
        )
        .unwrap();
        let b = Budget::default();
        let action = GroupAction::natural(&g);
        let t = Permutation::parse("1 0 2 3").unwrap();
        let r = centralizer_transitive_on_fixed(&g, &t, &action, &b).unwrap();
        assert_eq!(r.fixed_count, 2);
        assert!(r.transitive);
        assert_eq!(r.centralizer_index, "2");
        let id = g.identity();
        let r = centralizer_transitive_on_fixed(&g, &id, &action, &b).unwrap();
        assert!(r.transitive);
        assert_eq!(r.fixed_count, 4);
        // Point stabilizer S3 of 3: transpositions do not split.
        let s3 = vec![
            Permutation::parse("1 2 0 3").unwrap(),
            Permutation::parse("1 0 2 3").unwrap(),
        ];
        let f = class_fusion_check(&g, &s3, &t, &b).unwrap();
        assert_eq!((f.ambient_hits, f.local_class), (3, 3));
        assert!(f.holds);
        assert!(class_fusion_check(&g, &s3, &id, &b).unwrap().holds);
    }
}
