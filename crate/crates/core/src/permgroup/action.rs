//! Transitive actions: the natural action and actions on right cosets.
//!
//! Right cosets of `H` are realized as the `G`-orbit of an `H`-invariant
//! point set whose set stabilizer is exactly `H`. For a maximal `H` any
//! proper `H`-orbit works; otherwise unions of two orbits and orbits on
//! unordered pairs are tried, and as a last resort the `H`-orbit of the
//! base tuple, whose set stabilizer is `H` because a base determines each
//! element.

use std::hash::{Hash, Hasher};

use hashbrown::HashTable;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rustc_hash::FxHasher;

use super::{orbit, Budget, PermError, PermGroup, Permutation};

/// What the members of a domain set are.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objects {
    Points,
    /// Unordered pairs coded as `min * n + max`.
    Pairs,
    /// Ordered `k`-tuples coded in base `n`.
    Tuples(usize),
}

pub enum Domain {
    Natural,
    /// Each point is a sorted set of objects, stored flat.
    Sets {
        set_len: usize,
        flat: Vec<u32>,
        table: HashTable<u32>,
        objects: Objects,
    },
}

impl std::fmt::Debug for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Domain::Natural => f.write_str("Natural"),
            Domain::Sets { set_len, flat, .. } => {
                write!(f, "Sets({} sets of size {})", flat.len() / set_len.max(&1), set_len)
            }
        }
    }
}

/// A transitive action of a permutation group.
#[derive(Debug)]
pub struct GroupAction {
    degree: usize,
    natural_degree: usize,
    domain: Domain,
}

fn hash_slice(s: &[u32]) -> u64 {
    let mut h = FxHasher::default();
    s.hash(&mut h);
    h.finish()
}

impl GroupAction {
    pub fn natural(group: &PermGroup) -> Self {
        GroupAction {
            degree: group.degree(),
            natural_degree: group.degree(),
            domain: Domain::Natural,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Natural points forming domain point `i` (coset actions only).
    pub fn set(&self, i: u32) -> Option<&[u32]> {
        match &self.domain {
            Domain::Natural => None,
            Domain::Sets { set_len, flat, .. } => {
                let s = i as usize * set_len;
                Some(&flat[s..s + set_len])
            }
        }
    }

    pub fn lookup(&self, set: &[u32]) -> Option<u32> {
        match &self.domain {
            Domain::Natural => None,
            Domain::Sets {
                set_len, flat, table, ..
            } => table
                .find(hash_slice(set), |&i| {
                    let s = i as usize * set_len;
                    &flat[s..s + set_len] == set
                })
                .copied(),
        }
    }

    fn image_set(&self, g: &Permutation, set: &[u32], buf: &mut Vec<u32>) {
        let objects = match self.domain {
            Domain::Sets { objects, .. } => objects,
            Domain::Natural => Objects::Points,
        };
        image_objects(g, set, objects, self.natural_degree, buf);
    }

    /// Image of domain point `pt` under the natural permutation `g`.
    pub fn image(&self, pt: u32, g: &Permutation) -> u32 {
        match &self.domain {
            Domain::Natural => g.image(pt),
            Domain::Sets { .. } => {
                let mut buf = Vec::new();
                self.image_set(g, self.set(pt).expect("set domain"), &mut buf);
                self.lookup(&buf).expect("domain is closed under the group")
            }
        }
    }

    /// The permutation induced by `g` on the domain.
    pub fn act(&self, g: &Permutation) -> Permutation {
        debug_assert_eq!(g.degree(), self.natural_degree);
        match &self.domain {
            Domain::Natural => g.clone(),
            Domain::Sets { .. } => {
                let mut buf = Vec::new();
                let images = (0..self.degree as u32)
                    .map(|i| {
                        self.image_set(g, self.set(i).unwrap(), &mut buf);
                        self.lookup(&buf).expect("domain is closed under the group")
                    })
                    .collect();
                Permutation::from_images_unchecked(images)
            }
        }
    }

    /// Domain points fixed by `g`.
    pub fn fixed_points(&self, g: &Permutation) -> Vec<u32> {
        match &self.domain {
            Domain::Natural => g.fixed_points(),
            Domain::Sets { .. } => {
                let mut buf = Vec::new();
                (0..self.degree as u32)
                    .filter(|&i| {
                        let s = self.set(i).unwrap();
                        self.image_set(g, s, &mut buf);
                        buf == s
                    })
                    .collect()
            }
        }
    }

    /// The acting group as a permutation group on the domain.
    pub fn permutation_group(&self, group: &PermGroup) -> PermGroup {
        let gens = group.generators().iter().map(|g| self.act(g)).collect();
        PermGroup::new(self.degree, gens)
            .expect("induced generators have the domain degree")
            .with_seed(group.seed())
    }
}

fn image_tuple(g: &Permutation, mut c: u32, k: usize, n: u32) -> u32 {
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..k {
        out += g.image(c % n) * scale;
        c /= n;
        scale *= n;
    }
    out
}

fn image_objects(g: &Permutation, set: &[u32], objects: Objects, n: usize, buf: &mut Vec<u32>) {
    buf.clear();
    let n = n as u32;
    match objects {
        Objects::Points => buf.extend(set.iter().map(|&p| g.image(p))),
        Objects::Pairs => buf.extend(set.iter().map(|&c| {
            let (a, b) = (g.image(c / n), g.image(c % n));
            a.min(b) * n + a.max(b)
        })),
        Objects::Tuples(k) => buf.extend(set.iter().map(|&c| image_tuple(g, c, k, n))),
    }
    buf.sort_unstable();
}

fn set_orbit(
    group: &PermGroup,
    start: &[u32],
    objects: Objects,
    limit: usize,
) -> Option<(Vec<u32>, HashTable<u32>)> {
    let k = start.len();
    let mut flat = start.to_vec();
    let mut table = HashTable::new();
    table.insert_unique(hash_slice(start), 0u32, |_| 0);
    let mut head = 0;
    let mut buf = Vec::with_capacity(k);
    while head * k < flat.len() {
        for g in group.generators() {
            image_objects(g, &flat[head * k..(head + 1) * k], objects, group.degree(), &mut buf);
            let h = hash_slice(&buf);
            let found = table
                .find(h, |&i| flat[i as usize * k..(i as usize + 1) * k] == buf[..])
                .is_some();
            if !found {
                let n = (flat.len() / k) as u32;
                if n as usize >= limit {
                    return None;
                }
                flat.extend_from_slice(&buf);
                let flat_ref = &flat;
                table.insert_unique(h, n, |&i| {
                    hash_slice(&flat_ref[i as usize * k..(i as usize + 1) * k])
                });
            }
        }
        head += 1;
    }
    Some((flat, table))
}

/// The action of `group` on the right cosets of `<subgroup_gens>`.
pub fn coset_action(
    group: &PermGroup,
    subgroup_gens: &[Permutation],
    budget: &Budget,
) -> Result<GroupAction, PermError> {
    let sub = group.subgroup(subgroup_gens.to_vec())?;
    let index_big = group.order() / sub.order();
    let index = index_big
        .to_usize()
        .ok_or_else(|| PermError::Unsupported(format!("index {index_big} too large")))?;
    if BigUint::from(index) * sub.order() != group.order() {
        return Err(PermError::NotIntegral("subgroup order does not divide group order".into()));
    }
    if index == 1 {
        return Ok(GroupAction {
            degree: 1,
            natural_degree: group.degree(),
            domain: Domain::Sets {
                set_len: group.degree(),
                flat: (0..group.degree() as u32).collect(),
                table: {
                    let mut t = HashTable::new();
                    let all: Vec<u32> = (0..group.degree() as u32).collect();
                    t.insert_unique(hash_slice(&all), 0u32, |_| 0);
                    t
                },
                objects: Objects::Points,
            },
        });
    }

    let mut seen = vec![false; group.degree()];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    for p in 0..group.degree() as u32 {
        if seen[p as usize] {
            continue;
        }
        let mut o = orbit(sub.generators(), p).points().to_vec();
        if sub.generators().is_empty() {
            o = vec![p];
        }
        for &q in &o {
            seen[q as usize] = true;
        }
        o.sort_unstable();
        orbits.push(o);
    }
    orbits.sort_by_key(|o| (o.len(), o[0]));

    let mut candidates: Vec<(Vec<u32>, Objects)> = orbits
        .iter()
        .filter(|o| o.len() < group.degree())
        .map(|o| (o.clone(), Objects::Points))
        .collect();
    for i in 0..orbits.len().min(12) {
        for j in i + 1..orbits.len().min(12) {
            let mut u: Vec<u32> = orbits[i].iter().chain(&orbits[j]).copied().collect();
            u.sort_unstable();
            candidates.push((u, Objects::Points));
        }
    }
    if group.degree() <= PAIR_DEGREE_LIMIT {
        candidates.extend(pair_orbits(&sub).into_iter().map(|o| (o, Objects::Pairs)));
    }
    if let Some(t) = base_tuple_orbit(group, &sub) {
        candidates.push(t);
    }
    for (cand, objects) in candidates {
        let projected = (index as u64) * (cand.len() as u64 * 4 + 16);
        if projected > budget.memory_cap {
            return Err(PermError::MemoryCap {
                projected,
                cap: budget.memory_cap,
            });
        }
        if let Some((flat, table)) = set_orbit(group, &cand, objects, index) {
            if flat.len() / cand.len() == index {
                return Ok(GroupAction {
                    degree: index,
                    natural_degree: group.degree(),
                    domain: Domain::Sets {
                        set_len: cand.len(),
                        flat,
                        table,
                        objects,
                    },
                });
            }
        }
    }
    Err(PermError::Unsupported(
        "no invariant set of the subgroup has it as exact set stabilizer".into(),
    ))
}

const PAIR_DEGREE_LIMIT: usize = 2048;

/// Largest `|H|` for the base-tuple fallback.
const TUPLE_SUBGROUP_LIMIT: u64 = 1 << 16;

/// `H`-orbit of the base tuple of `group`, when tuple codes fit in `u32`.
fn base_tuple_orbit(group: &PermGroup, sub: &PermGroup) -> Option<(Vec<u32>, Objects)> {
    let base = group.chain().base();
    let k = base.len();
    let n = group.degree() as u64;
    if k == 0 || n.checked_pow(k as u32)? > u32::MAX as u64 {
        return None;
    }
    if sub.order() > BigUint::from(TUPLE_SUBGROUP_LIMIT) {
        return None;
    }
    let n = n as u32;
    let start = base.iter().rev().fold(0u32, |acc, &b| acc * n + b);
    let mut seen = vec![start];
    let mut set: std::collections::HashSet<u32> = [start].into();
    let mut head = 0;
    while head < seen.len() {
        for g in sub.generators() {
            let c = image_tuple(g, seen[head], k, n);
            if set.insert(c) {
                seen.push(c);
            }
        }
        head += 1;
    }
    seen.sort_unstable();
    Some((seen, Objects::Tuples(k)))
}

/// Orbits of the subgroup on unordered pairs, smallest first.
fn pair_orbits(sub: &PermGroup) -> Vec<Vec<u32>> {
    let n = sub.degree() as u32;
    let mut seen = vec![false; (n * n) as usize];
    let mut out = Vec::new();
    let mut buf = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let code = a * n + b;
            if seen[code as usize] {
                continue;
            }
            seen[code as usize] = true;
            let mut o = vec![code];
            let mut head = 0;
            while head < o.len() {
                for g in sub.generators() {
                    image_objects(g, &o[head..head + 1], Objects::Pairs, n as usize, &mut buf);
                    if !seen[buf[0] as usize] {
                        seen[buf[0] as usize] = true;
                        o.push(buf[0]);
                    }
                }
                head += 1;
            }
            o.sort_unstable();
            out.push(o);
        }
    }
    out.sort_by_key(|o| (o.len(), o[0]));
    out
}

/// Whether a transitive action is 2-transitive: the point stabilizer is
/// transitive on the remaining points.
pub fn is_two_transitive(action: &GroupAction, group: &PermGroup) -> bool {
    let n = action.degree();
    if n <= 1 {
        return true;
    }
    // A faithful action has the order of the group, which makes the
    // induced chain exact.
    let induced = match action.domain {
        Domain::Natural => None,
        Domain::Sets { .. } => {
            let gens: Vec<Permutation> = group.generators().iter().map(|g| action.act(g)).collect();
            Some(
                PermGroup::with_known_order(n, gens.clone(), group.order(), group.seed())
                    .unwrap_or_else(|_| PermGroup::new(n, gens).expect("induced degree")),
            )
        }
    };
    let chain = induced.as_ref().map_or_else(|| group.chain(), |g| g.chain());
    let lens = chain.orbit_lengths();
    match lens.as_slice() {
        [] => false,
        [first] => *first == n && n == 2,
        [first, second, ..] => *first == n && *second == n - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> PermGroup {
        PermGroup::new(
            4,
            vec![
                Permutation::parse("1 2 3 0").unwrap(),
                Permutation::parse("1 0 2 3").unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn whole_group_gives_trivial_action() {
        let g = s4();
        let a = coset_action(&g, g.generators(), &Budget::default()).unwrap();
        assert_eq!(a.degree(), 1);
        assert_eq!(a.fixed_points(&g.generators()[0]), vec![0]);
    }

    #[test]
    fn cosets_of_point_stabilizer_and_of_d8() {
        let g = s4();
        // Stabilizer of 3 is S3 on {0,1,2}.
        let s3 = vec![
            Permutation::parse("1 2 0 3").unwrap(),
            Permutation::parse("1 0 2 3").unwrap(),
        ];
        let a = coset_action(&g, &s3, &Budget::default()).unwrap();
        assert_eq!(a.degree(), 4);
        assert!(is_two_transitive(&a, &g));
        let d8 = vec![
            Permutation::parse("1 2 3 0").unwrap(),
            Permutation::parse("2 1 0 3").unwrap(),
        ];
        let a = coset_action(&g, &d8, &Budget::default()).unwrap();
        assert_eq!(a.degree(), 3);
        let t = Permutation::parse("1 0 2 3").unwrap();
        assert_eq!(a.fixed_points(&t).len(), 1);
        let moved = a.act(&t);
        assert_eq!(moved.order(), BigUint::from(2u32));
    }

    #[test]
    fn rejects_foreign_subgroup() {
        let g = PermGroup::new(4, vec![Permutation::parse("1 2 3 0").unwrap()]).unwrap();
        let t = Permutation::parse("1 0 2 3").unwrap();
        assert!(matches!(
            coset_action(&g, &[t], &Budget::default()),
            Err(PermError::NotContained)
        ));
    }
}
