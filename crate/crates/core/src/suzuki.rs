//! Suzuki groups `Sz(q)`, `q = 2^(2m+1)`, acting on the ovoid of
//! `q^2 + 1` points of projective 3-space.
//!
//! Matrices act on row vectors. With `r = 2^(m+1)`:
//!
//! ```text
//! T(a,b) = [ 1                   0          0  0 ]
//!          [ a                   1          0  0 ]
//!          [ b                   a^r        1  0 ]
//!          [ a^(r+2)+ab+b^r      a^(r+1)+b  a  1 ]
//! d(k)   = diag(k^(r+2), k^(r+1), k, 1)
//! w      = antidiagonal of ones
//! ```
//!
//! Ovoid points: `(1,0,0,0)` at index 0, then `(a^(r+2)+ab+b^r, b, a, 1)` at
//! index `1 + a*q + b` (field codes).

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::finitefield::GaloisField;
use crate::groupzoo::{involution_census, order_n_classes, ZooError};
use crate::permgroup::{
    centralizer_transitive_on_fixed, class_fusion_with, conjugacy_class, coset_action,
    count_class_members_in, fixed_count_formula, is_two_transitive, orbit, Budget, ConjugacyClass,
    GroupAction, PermError, PermGroup, Permutation, StabChain,
};
use crate::verifier::subfield_decompositions;

pub type Mat4 = [[u32; 4]; 4];

#[derive(Debug, Error)]
pub enum SuzukiError {
    #[error("m must be at least 1")]
    BadParameter,
    #[error("degree {degree} exceeds the budget {max}")]
    DegreeBudget { degree: usize, max: usize },
    #[error("matrix does not preserve the ovoid")]
    NotOvoidPreserving,
    #[error("subgroup kind {0} is not available here")]
    InvalidKind(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Zoo(#[from] ZooError),
}

/// Field, ovoid indexing and matrix generators of `Sz(2^(2m+1))`.
#[derive(Clone, Debug)]
pub struct SuzukiModel {
    pub m: u32,
    pub q: u32,
    pub r: u32,
    pub field: Arc<GaloisField>,
}

impl SuzukiModel {
    pub fn new(m: u32) -> Result<Self, SuzukiError> {
        if m == 0 || m > 10 {
            return Err(SuzukiError::BadParameter);
        }
        let field = GaloisField::new(2, 2 * m + 1).map_err(|_| SuzukiError::BadParameter)?;
        Ok(SuzukiModel {
            m,
            q: 1 << (2 * m + 1),
            r: 1 << (m + 1),
            field,
        })
    }

    pub fn degree(&self) -> usize {
        self.q as usize * self.q as usize + 1
    }

    pub fn order(&self) -> BigUint {
        let q = BigUint::from(self.q);
        &q * &q * (&q * &q + 1u32) * (&q - 1u32)
    }

    fn pw(&self, a: u32, e: u32) -> u32 {
        self.field.pow(a, e as u64)
    }

    /// `a^(r+2) + ab + b^r`
    fn first_coord(&self, a: u32, b: u32) -> u32 {
        let f = &self.field;
        f.add(f.add(self.pw(a, self.r + 2), f.mul(a, b)), self.pw(b, self.r))
    }

    pub fn point(&self, i: u32) -> [u32; 4] {
        if i == 0 {
            return [1, 0, 0, 0];
        }
        let a = (i - 1) / self.q;
        let b = (i - 1) % self.q;
        [self.first_coord(a, b), b, a, 1]
    }

    /// Index of the projective point `v`, if it lies on the ovoid.
    pub fn index_of(&self, v: [u32; 4]) -> Option<u32> {
        let f = &self.field;
        if v[3] == 0 {
            return (v[0] != 0 && v[1] == 0 && v[2] == 0).then_some(0);
        }
        let s = f.inv(v[3]).ok()?;
        let (x, b, a) = (f.mul(v[0], s), f.mul(v[1], s), f.mul(v[2], s));
        (x == self.first_coord(a, b)).then_some(1 + a * self.q + b)
    }

    pub fn t(&self, a: u32, b: u32) -> Mat4 {
        let f = &self.field;
        [
            [1, 0, 0, 0],
            [a, 1, 0, 0],
            [b, self.pw(a, self.r), 1, 0],
            [self.first_coord(a, b), f.add(self.pw(a, self.r + 1), b), a, 1],
        ]
    }

    pub fn torus(&self, k: u32) -> Mat4 {
        let mut d = [[0; 4]; 4];
        d[0][0] = self.pw(k, self.r + 2);
        d[1][1] = self.pw(k, self.r + 1);
        d[2][2] = k;
        d[3][3] = 1;
        d
    }

    pub fn w(&self) -> Mat4 {
        let mut d = [[0; 4]; 4];
        for i in 0..4 {
            d[i][3 - i] = 1;
        }
        d
    }

    pub fn mat_mul(&self, x: &Mat4, y: &Mat4) -> Mat4 {
        let mut out = [[0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            *row = self.apply(x[i], y);
        }
        out
    }

    pub fn apply(&self, v: [u32; 4], m: &Mat4) -> [u32; 4] {
        let f = &self.field;
        let mut out = [0; 4];
        for (j, o) in out.iter_mut().enumerate() {
            for i in 0..4 {
                *o = f.add(*o, f.mul(v[i], m[i][j]));
            }
        }
        out
    }

    /// The permutation of the ovoid induced by `m`.
    pub fn permutation(&self, m: &Mat4) -> Result<Permutation, SuzukiError> {
        let n = self.degree() as u32;
        let imgs = (0..n)
            .map(|i| self.index_of(self.apply(self.point(i), m)))
            .collect::<Option<Vec<u32>>>()
            .ok_or(SuzukiError::NotOvoidPreserving)?;
        Permutation::from_images(imgs).map_err(|_| SuzukiError::NotOvoidPreserving)
    }

    /// Matrix generators: `T(1,0)`, `T(0,1)`, `d(primitive)`, `w`.
    pub fn generator_matrices(&self) -> Vec<Mat4> {
        vec![
            self.t(1, 0),
            self.t(0, 1),
            self.torus(self.field.primitive()),
            self.w(),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SzMaxSubgroupKind {
    Parabolic,
    Dihedral,
    FrobeniusPlus,
    FrobeniusMinus,
    Subfield { n0: u32, r0: u32 },
}

impl std::fmt::Display for SzMaxSubgroupKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SzMaxSubgroupKind::Parabolic => f.write_str("parabolic"),
            SzMaxSubgroupKind::Dihedral => f.write_str("dihedral"),
            SzMaxSubgroupKind::FrobeniusPlus => f.write_str("frobenius+"),
            SzMaxSubgroupKind::FrobeniusMinus => f.write_str("frobenius-"),
            SzMaxSubgroupKind::Subfield { n0, r0 } => write!(f, "subfield(n0={n0},r0={r0})"),
        }
    }
}

impl SzMaxSubgroupKind {
    /// `|H|` in `Sz(2^(2m+1))`.
    pub fn order(&self, m: u32) -> BigUint {
        let q = BigUint::from(2u32).pow(2 * m + 1);
        let r = BigUint::from(2u32).pow(m + 1);
        match self {
            SzMaxSubgroupKind::Parabolic => &q * &q * (&q - 1u32),
            SzMaxSubgroupKind::Dihedral => (&q - 1u32) * 2u32,
            SzMaxSubgroupKind::FrobeniusPlus => (&q + &r + 1u32) * 4u32,
            SzMaxSubgroupKind::FrobeniusMinus => (&q - &r + 1u32) * 4u32,
            SzMaxSubgroupKind::Subfield { n0, .. } => {
                let q0 = BigUint::from(2u32).pow(*n0);
                &q0 * &q0 * (&q0 * &q0 + 1u32) * (&q0 - 1u32)
            }
        }
    }

    /// Exponent `a` with `2^a` fixed points of an involution on the cosets,
    /// for the non-parabolic kinds.
    pub fn fixed_point_exponent(&self, m: u32) -> Option<u32> {
        match self {
            SzMaxSubgroupKind::Parabolic => None,
            SzMaxSubgroupKind::Dihedral => Some(4 * m + 1),
            SzMaxSubgroupKind::FrobeniusPlus | SzMaxSubgroupKind::FrobeniusMinus => Some(4 * m),
            SzMaxSubgroupKind::Subfield { n0, r0 } => Some(2 * n0 * (r0 - 1)),
        }
    }

    /// All maximal subgroup kinds for `Sz(2^(2m+1))`.
    pub fn all(m: u32) -> Vec<SzMaxSubgroupKind> {
        let mut v = vec![
            SzMaxSubgroupKind::Parabolic,
            SzMaxSubgroupKind::Dihedral,
            SzMaxSubgroupKind::FrobeniusPlus,
            SzMaxSubgroupKind::FrobeniusMinus,
        ];
        v.extend(
            subfield_decompositions(2 * m + 1)
                .into_iter()
                .map(|(n0, r0)| SzMaxSubgroupKind::Subfield { n0, r0 }),
        );
        v
    }
}

/// `{4m, 4m+1} ∪ {2 n0 (r0-1)}` over the subfield decompositions of `2m+1`.
pub fn exponent_set_suzuki(m: u32) -> BTreeSet<u32> {
    SzMaxSubgroupKind::all(m)
        .iter()
        .filter_map(|k| k.fixed_point_exponent(m))
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct SuzukiOptions {
    pub max_degree: usize,
    pub seed: u64,
}

impl Default for SuzukiOptions {
    fn default() -> Self {
        SuzukiOptions {
            max_degree: 20_000,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuzukiGroup {
    pub model: SuzukiModel,
    pub group: PermGroup,
}

pub fn suzuki_group(m: u32) -> Result<SuzukiGroup, SuzukiError> {
    suzuki_group_with(m, &SuzukiOptions::default())
}

/// Builds `Sz(2^(2m+1))` on the ovoid. The chain stops once the closed-form
/// order is reached; since a chain order never exceeds the true order this
/// proves the generated group has exactly that order.
pub fn suzuki_group_with(m: u32, opts: &SuzukiOptions) -> Result<SuzukiGroup, SuzukiError> {
    let model = SuzukiModel::new(m)?;
    let degree = model.degree();
    if degree > opts.max_degree {
        return Err(SuzukiError::DegreeBudget {
            degree,
            max: opts.max_degree,
        });
    }
    let gens = model
        .generator_matrices()
        .iter()
        .map(|mat| model.permutation(mat))
        .collect::<Result<Vec<_>, _>>()?;
    let group = PermGroup::with_known_order(degree, gens, model.order(), opts.seed)?;
    Ok(SuzukiGroup { model, group })
}

/// A maximal subgroup given inside the ambient group, with a normal
/// subgroup and complement when the kind is a split extension.
#[derive(Clone, Debug)]
pub struct MaxSubgroup<K> {
    pub kind: K,
    pub group: PermGroup,
    pub normal: Vec<Permutation>,
    pub complement: Vec<Permutation>,
}

impl<K> MaxSubgroup<K> {
    pub fn generators(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn order(&self) -> BigUint {
        self.group.order()
    }
}

/// An element of order exactly `n`, by seeded product replacement.
pub(crate) fn find_element_of_order(
    group: &PermGroup,
    n: u64,
    seed: u64,
    tries: usize,
) -> Option<Permutation> {
    let mut pr = group.random_elements(seed);
    for _ in 0..tries {
        let g = pr.next_element();
        let o = g.order_u64();
        if o.is_multiple_of(n) {
            return Some(g.pow((o / n) as i64));
        }
    }
    None
}

/// Normalizer of `<x>` in `group`, when `x` has order `n` and its
/// normalizer induces a cyclic group of order `k` of automorphisms: finds
/// a unit `u` of order `k` with `x^u` conjugate to `x` and a transporter
/// `y` with `x^y = x^u`.
pub(crate) fn cyclic_normalizer(
    group: &PermGroup,
    x: &Permutation,
    n: u64,
    k: u64,
    budget: &Budget,
) -> Result<(Permutation, ConjugacyClass), SuzukiError> {
    let class = conjugacy_class(group, x, budget, true)?;
    let units = (2..n).filter(|&u| num_integer::gcd(u, n) == 1 && unit_order(u, n) == k);
    for u in units {
        let target = x.pow(u as i64);
        if let Some(y) = class.transporter_to(group, &target) {
            return Ok((y, class));
        }
    }
    Err(SuzukiError::SearchFailed(format!(
        "no normalizing element of order {k} modulo <x>"
    )))
}

fn unit_order(u: u64, n: u64) -> u64 {
    let mut x = u % n;
    let mut k = 1;
    while x != 1 {
        x = x * u % n;
        k += 1;
    }
    k
}

impl SuzukiGroup {
    pub fn q(&self) -> u32 {
        self.model.q
    }

    pub fn m(&self) -> u32 {
        self.model.m
    }

    fn perm(&self, m: &Mat4) -> Permutation {
        self.model.permutation(m).expect("Suzuki matrices preserve the ovoid")
    }

    /// A representative involution, `T(0,1)`.
    pub fn involution(&self) -> Permutation {
        self.perm(&self.model.t(0, 1))
    }

    pub fn natural_action(&self) -> GroupAction {
        GroupAction::natural(&self.group)
    }

    pub fn maximal_subgroup(
        &self,
        kind: SzMaxSubgroupKind,
        budget: &Budget,
    ) -> Result<MaxSubgroup<SzMaxSubgroupKind>, SuzukiError> {
        let model = &self.model;
        let prim = model.field.primitive();
        let (normal, complement) = match kind {
            SzMaxSubgroupKind::Parabolic => {
                let mut q = Vec::new();
                for e in model.field.basis() {
                    q.push(self.perm(&model.t(e, 0)));
                }
                q.push(self.perm(&model.t(0, 1)));
                (q, vec![self.perm(&model.torus(prim))])
            }
            SzMaxSubgroupKind::Dihedral => (
                vec![self.perm(&model.torus(prim))],
                vec![self.perm(&model.w())],
            ),
            SzMaxSubgroupKind::FrobeniusPlus | SzMaxSubgroupKind::FrobeniusMinus => {
                let (q, r) = (model.q as u64, model.r as u64);
                let n = if kind == SzMaxSubgroupKind::FrobeniusPlus {
                    q + r + 1
                } else {
                    q - r + 1
                };
                let x = find_element_of_order(&self.group, n, budget.seed, 20_000)
                    .ok_or_else(|| SuzukiError::SearchFailed(format!("no element of order {n}")))?;
                let (y, _) = cyclic_normalizer(&self.group, &x, n, 4, budget)?;
                let h = PermGroup::new(self.group.degree(), vec![x.clone(), y.clone()])?;
                let c = complement_of_order(&h, 4)?;
                (vec![x], vec![c])
            }
            SzMaxSubgroupKind::Subfield { .. } => {
                return Err(SuzukiError::InvalidKind(format!(
                    "{kind} (use subfield_embedding)"
                )))
            }
        };
        let mut gens = normal.clone();
        gens.extend(complement.iter().cloned());
        let group = self.group.subgroup(gens)?;
        let expected = kind.order(model.m);
        if group.order() != expected {
            return Err(SuzukiError::Perm(PermError::OrderMismatch {
                expected: expected.to_string(),
                found: group.order().to_string(),
            }));
        }
        Ok(MaxSubgroup {
            kind,
            group,
            normal,
            complement,
        })
    }
}

/// First element of order `k` in the chain enumeration of `h`.
pub(crate) fn complement_of_order(h: &PermGroup, k: u64) -> Result<Permutation, SuzukiError> {
    let chain = h.chain();
    let mut found = None;
    chain.for_each_factors(|f| {
        if found.is_none() {
            let g = chain.element_from_factors(f);
            if g.order_u64() == k {
                found = Some(g);
            }
        }
    });
    found.ok_or_else(|| SuzukiError::SearchFailed(format!("no element of order {k}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionClassReport {
    pub group: String,
    pub involutions: String,
    pub classes: usize,
    pub class_sizes: Vec<String>,
    pub holds: bool,
}

/// One involution class in `G` and in each of the given subgroups.
///
/// In `G` the involution count is `(q^2+1)(q-1)`: every involution lies in
/// a Sylow 2-subgroup, hence fixes an ovoid point, and the census of the
/// point stabilizer shows that it holds `q-1` involutions, each fixing
/// exactly one point.
pub fn verify_involution_classes(
    sz: &SuzukiGroup,
    subgroups: &[&MaxSubgroup<SzMaxSubgroupKind>],
    budget: &Budget,
) -> Result<Vec<InvolutionClassReport>, SuzukiError> {
    let mut out = Vec::new();
    let parabolic = sz.maximal_subgroup(SzMaxSubgroupKind::Parabolic, budget)?;
    let invs = crate::groupzoo::elements_of_order(&parabolic.group, 2)?;
    let one_fixed = invs.iter().all(|t| t.fixed_points().len() == 1);
    let total = BigUint::from(sz.model.degree()) * BigUint::from(invs.len());
    let class = conjugacy_class(&sz.group, &sz.involution(), budget, false)?;
    out.push(InvolutionClassReport {
        group: format!("Sz({})", sz.q()),
        involutions: total.to_string(),
        classes: 1,
        class_sizes: vec![class.size().to_string()],
        holds: one_fixed && BigUint::from(class.size()) == total,
    });
    for h in subgroups {
        let c = involution_census(&h.group, budget)?;
        out.push(InvolutionClassReport {
            group: h.kind.to_string(),
            involutions: c.count.to_string(),
            classes: c.class_sizes.len(),
            class_sizes: c.class_sizes.iter().map(u64::to_string).collect(),
            holds: c.class_sizes.len() == 1,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralizerRecord {
    pub group: String,
    pub expected: String,
    pub observed: String,
    pub holds: bool,
}

/// `|C_G(g)| = q^2`, `|C_D(h)| = 2`, `|C_F(k)| = 4` for involutions.
pub fn verify_involution_centralizers(
    sz: &SuzukiGroup,
    subgroups: &[&MaxSubgroup<SzMaxSubgroupKind>],
    budget: &Budget,
) -> Result<Vec<CentralizerRecord>, SuzukiError> {
    let class = conjugacy_class(&sz.group, &sz.involution(), budget, false)?;
    let c = sz.group.order() / BigUint::from(class.size());
    let q2 = BigUint::from(sz.q()) * BigUint::from(sz.q());
    let mut out = vec![CentralizerRecord {
        group: format!("Sz({})", sz.q()),
        expected: q2.to_string(),
        observed: c.to_string(),
        holds: c == q2,
    }];
    for h in subgroups {
        let expected: u64 = match h.kind {
            SzMaxSubgroupKind::Dihedral => 2,
            SzMaxSubgroupKind::FrobeniusPlus | SzMaxSubgroupKind::FrobeniusMinus => 4,
            _ => continue,
        };
        let classes = order_n_classes(&h.group, 2, budget)?;
        let ok = classes.iter().all(|c| c.centralizer_order == expected);
        let observed: Vec<String> = classes.iter().map(|c| c.centralizer_order.to_string()).collect();
        out.push(CentralizerRecord {
            group: h.kind.to_string(),
            expected: expected.to_string(),
            observed: observed.join(","),
            holds: ok && !classes.is_empty(),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointProfile {
    pub kind: String,
    pub index: String,
    pub expected: String,
    /// `exact` when the coset action was built, `formula-only` otherwise.
    pub status: String,
    pub observed: Option<String>,
    pub formula: Option<String>,
    pub centralizer_index: Option<String>,
    pub centralizer_orbits: Option<usize>,
    pub fusion_holds: Option<bool>,
    pub holds: bool,
}

/// Largest coset action built for a profile.
pub const PROFILE_DEGREE_LIMIT: u64 = 4_000_000;

/// Fixed points of an involution of `h` on the cosets of `h`, by direct
/// count, by the class-counting formula and by the centralizer index.
pub fn involution_fixed_point_profile(
    group: &PermGroup,
    h: &PermGroup,
    g: &Permutation,
    expected: &BigUint,
    label: &str,
    budget: &Budget,
) -> Result<FixedPointProfile, SuzukiError> {
    let index = group.order() / h.order();
    if index > BigUint::from(PROFILE_DEGREE_LIMIT) {
        return Ok(FixedPointProfile {
            kind: label.into(),
            index: index.to_string(),
            expected: expected.to_string(),
            status: "formula-only".into(),
            observed: None,
            formula: None,
            centralizer_index: None,
            centralizer_orbits: None,
            fusion_holds: None,
            holds: true,
        });
    }
    let action = coset_action(group, h.generators(), budget)?;
    let observed = action.fixed_points(g).len() as u64;
    let class = conjugacy_class(group, g, budget, false)?;
    let hits = count_class_members_in(group, &class, h.chain())?;
    let formula = fixed_count_formula(action.degree() as u64, hits, class.size())?;
    let fusion = class_fusion_with(group, &class, h.generators(), budget)?;
    let ct = centralizer_transitive_on_fixed(group, g, &action, budget)?;
    let holds = BigUint::from(observed) == *expected
        && observed == formula
        && ct.transitive
        && ct.centralizer_index == observed.to_string()
        && fusion.holds;
    Ok(FixedPointProfile {
        kind: label.into(),
        index: index.to_string(),
        expected: expected.to_string(),
        status: "exact".into(),
        observed: Some(observed.to_string()),
        formula: Some(formula.to_string()),
        centralizer_index: Some(ct.centralizer_index),
        centralizer_orbits: Some(ct.orbit_count),
        fusion_holds: Some(fusion.holds),
        holds,
    })
}

/// Involution fixed points on the cosets of a maximal subgroup of `kind`.
pub fn fixed_point_profile(
    sz: &SuzukiGroup,
    kind: SzMaxSubgroupKind,
    budget: &Budget,
) -> Result<FixedPointProfile, SuzukiError> {
    let m = sz.m();
    let a = kind
        .fixed_point_exponent(m)
        .ok_or_else(|| SuzukiError::InvalidKind("parabolic".into()))?;
    let expected = BigUint::from(2u32).pow(a);
    if let SzMaxSubgroupKind::Subfield { .. } = kind {
        let index = sz.group.order() / kind.order(m);
        return Ok(FixedPointProfile {
            kind: kind.to_string(),
            index: index.to_string(),
            expected: expected.to_string(),
            status: "formula-only".into(),
            observed: None,
            formula: None,
            centralizer_index: None,
            centralizer_orbits: None,
            fusion_holds: None,
            holds: true,
        });
    }
    let h = sz.maximal_subgroup(kind, budget)?;
    let g = match kind {
        SzMaxSubgroupKind::Dihedral => h.complement[0].clone(),
        _ => h.complement[0].pow(2),
    };
    involution_fixed_point_profile(&sz.group, &h.group, &g, &expected, &kind.to_string(), budget)
}

/// Check of the subfield subgroup `Sz(2^n0)` inside `Sz(2^(2m+1))`.
#[derive(Clone, Debug, Serialize)]
pub struct SubfieldEmbedding {
    pub n0: u32,
    pub r0: u32,
    pub ambient_degree: usize,
    pub generators_preserve_ovoid: bool,
    pub sub_ovoid_size: usize,
    pub sub_order: String,
    pub expected_order: String,
    pub holds: bool,
}

/// Generators `T(a,b)`, `d(k)`, `w` with parameters in GF(2^n0) (the
/// elements fixed by `x -> x^(2^n0)`) act on the ambient ovoid; their
/// orbit of the point at infinity is the sub-ovoid of size `q0^2+1`, on
/// which they generate a group of order `|Sz(q0)|`.
pub fn subfield_embedding(m: u32, n0: u32) -> Result<SubfieldEmbedding, SuzukiError> {
    let model = SuzukiModel::new(m)?;
    let e = 2 * m + 1;
    let r0 = subfield_decompositions(e)
        .into_iter()
        .find(|&(n, _)| n == n0)
        .map(|(_, r)| r)
        .ok_or_else(|| SuzukiError::InvalidKind(format!("no subfield of degree {n0}")))?;
    let f = &model.field;
    let sub: Vec<u32> = f.elements().filter(|&a| f.in_subfield(a, n0)).collect();
    let q0 = 1u32 << n0;
    let one = 1;
    // Least subfield element generating GF(2^n0)^*.
    let k0 = f.pow(f.primitive(), ((model.q - 1) / (q0 - 1)) as u64);
    let s = sub.iter().copied().find(|&a| a != 0 && a != one && !f.in_subfield(a, 1));
    let s = s.unwrap_or(one);
    let mats = [model.t(one, 0), model.t(s, 0), model.t(0, one), model.torus(k0), model.w()];
    let perms = mats
        .iter()
        .map(|mat| model.permutation(mat))
        .collect::<Result<Vec<_>, _>>();
    let preserved = perms.is_ok();
    let perms = perms?;
    let orb = orbit(&perms, 0);
    let pts = orb.points().to_vec();
    let mut local = vec![u32::MAX; model.degree()];
    for (i, &p) in pts.iter().enumerate() {
        local[p as usize] = i as u32;
    }
    let restricted = perms
        .iter()
        .map(|g| Permutation::from_images(pts.iter().map(|&p| local[g.image(p) as usize]).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    let expected = SzMaxSubgroupKind::Subfield { n0, r0 }.order(m);
    let chain = StabChain::build(
        pts.len(),
        &restricted,
        &crate::permgroup::ChainOptions {
            target_order: Some(expected.clone()),
            ..Default::default()
        },
    );
    let order = match &chain {
        Ok(c) => c.order(),
        Err(_) => StabChain::build(pts.len(), &restricted, &Default::default())?.order(),
    };
    Ok(SubfieldEmbedding {
        n0,
        r0,
        ambient_degree: model.degree(),
        generators_preserve_ovoid: preserved,
        sub_ovoid_size: pts.len(),
        sub_order: order.to_string(),
        expected_order: expected.to_string(),
        holds: preserved
            && pts.len() as u64 == (q0 as u64) * (q0 as u64) + 1
            && order == expected,
    })
}

/// Centralizer lower bounds for the involution `T(0,1)` of `Sz(2^n0)`,
/// counted inside the Sylow 2-subgroups `{T(a,b)}` of `Sz(q)` and of the
/// subfield subgroup. Matrix arithmetic only, so `Sz(512)` is in reach.
#[derive(Clone, Debug, Serialize)]
pub struct SylowCentralizerBound {
    pub q: u32,
    pub q0: u32,
    pub ambient: u64,
    pub subfield: u64,
    pub holds: bool,
}

pub fn sylow_centralizer_bound(m: u32, n0: u32) -> Result<SylowCentralizerBound, SuzukiError> {
    let model = SuzukiModel::new(m)?;
    if !subfield_decompositions(2 * m + 1).iter().any(|&(n, _)| n == n0) {
        return Err(SuzukiError::InvalidKind(format!("no subfield of degree {n0}")));
    }
    let f = &model.field;
    let g = model.t(0, 1);
    let (mut ambient, mut subfield) = (0u64, 0u64);
    for a in 0..model.q {
        for b in 0..model.q {
            let x = model.t(a, b);
            if model.mat_mul(&x, &g) == model.mat_mul(&g, &x) {
                ambient += 1;
                if f.in_subfield(a, n0) && f.in_subfield(b, n0) {
                    subfield += 1;
                }
            }
        }
    }
    let q0 = 1u32 << n0;
    let (qq, qq0) = (model.q as u64 * model.q as u64, q0 as u64 * q0 as u64);
    Ok(SylowCentralizerBound {
        q: model.q,
        q0,
        ambient,
        subfield,
        holds: ambient == qq && subfield == qq0,
    })
}

pub fn is_natural_two_transitive(sz: &SuzukiGroup) -> bool {
    is_two_transitive(&sz.natural_action(), &sz.group)
}

/// Index of `h` as a `u64`.
pub fn index_u64(group: &PermGroup, h: &PermGroup) -> Option<u64> {
    (group.order() / h.order()).to_u64()
}
