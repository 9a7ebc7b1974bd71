//! Conjugacy classes by breadth-first conjugation closure.
//!
//! Class members are never stored as permutations. A member is identified
//! by its base images (packed into a `u64`), and the images of other points
//! are recovered through the stabilizer chain when the member is expanded.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use super::{Budget, Packer, PermError, PermGroup, Permutation, StabChain};

/// Rough resident cost of one class member: key list, hash entry with
/// growth slack.
const BYTES_PER_MEMBER: u64 = 48;
const BYTES_PER_TREE_NODE: u64 = 8;

#[derive(Debug)]
pub struct ConjugacyClass {
    rep: Permutation,
    packer: Packer,
    keys: Vec<u64>,
    index: FxHashMap<u64, u32>,
    // (parent member, generator) for each member but the first.
    tree: Option<Vec<(u32, u32)>>,
}

impl ConjugacyClass {
    pub fn representative(&self) -> &Permutation {
        &self.rep
    }

    pub fn size(&self) -> u64 {
        self.keys.len() as u64
    }

    pub fn fingerprint(&self, chain: &StabChain, g: &Permutation) -> u64 {
        self.packer.pack(&chain.base_images(g))
    }

    pub fn contains(&self, chain: &StabChain, g: &Permutation) -> bool {
        self.contains_key(self.fingerprint(chain, g))
    }

    pub fn contains_key(&self, key: u64) -> bool {
        self.index.contains_key(&key)
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    pub fn packer(&self) -> Packer {
        self.packer
    }

    pub fn has_tree(&self) -> bool {
        self.tree.is_some()
    }

    /// Member `i` as a permutation.
    pub fn member(&self, chain: &StabChain, i: usize) -> Permutation {
        let mut imgs = vec![0; self.packer.len()];
        self.packer.unpack(self.keys[i], &mut imgs);
        chain
            .element_from_base_images(&imgs)
            .expect("class member lies in the group")
    }

    /// Element `w` with `rep^w` equal to member `i` (needs the BFS tree).
    pub fn transporter(&self, group: &PermGroup, i: usize) -> Option<Permutation> {
        let tree = self.tree.as_ref()?;
        let mut word = Vec::new();
        let mut cur = i;
        while cur != 0 {
            let (parent, g) = tree[cur];
            word.push(g);
            cur = parent as usize;
        }
        let mut w = group.identity();
        for &g in word.iter().rev() {
            w.mul_assign(&group.generators()[g as usize]);
        }
        Some(w)
    }

    /// Element conjugating the representative onto `target`, if `target`
    /// is in the class.
    pub fn transporter_to(&self, group: &PermGroup, target: &Permutation) -> Option<Permutation> {
        let key = self.fingerprint(group.chain(), target);
        let i = *self.index.get(&key)?;
        self.transporter(group, i as usize)
    }

    pub fn index_of_key(&self, key: u64) -> Option<usize> {
        self.index.get(&key).map(|&i| i as usize)
    }
}

/// Enumerates `x^G`. With `keep_tree` the BFS tree is retained so
/// transporters and centralizer generators can be recovered.
pub fn conjugacy_class(
    group: &PermGroup,
    x: &Permutation,
    budget: &Budget,
    keep_tree: bool,
) -> Result<ConjugacyClass, PermError> {
    if !group.contains(x)? {
        return Err(PermError::NotContained);
    }
    let chain = group.chain();
    let per = BYTES_PER_MEMBER + if keep_tree { BYTES_PER_TREE_NODE } else { 0 };
    let base = chain.base();
    let packer = Packer::new(group.degree(), base.len())?;
    let gens = group.generators();
    let inv: Vec<Permutation> = gens.iter().map(Permutation::inverse).collect();

    let first = packer.pack(&chain.base_images(x));
    let mut keys = vec![first];
    let mut index = FxHashMap::default();
    index.insert(first, 0u32);
    let mut tree = keep_tree.then(|| vec![(0u32, 0u32)]);

    let k = base.len();
    let mut imgs = vec![0u32; k];
    let mut factors = vec![0u32; k];
    let mut next = vec![0u32; k];
    let mut head = 0;
    while head < keys.len() {
        packer.unpack(keys[head], &mut imgs);
        let ok = chain.factor(&imgs, &mut factors);
        debug_assert!(ok);
        for (gi, (s, s_inv)) in gens.iter().zip(&inv).enumerate() {
            // b^(s^-1 y s) for each base point b.
            for (j, &b) in base.iter().enumerate() {
                next[j] = s.image(chain.eval_factored(&factors, s_inv.image(b)));
            }
            let key = packer.pack(&next);
            if index.contains_key(&key) {
                continue;
            }
            let projected = (keys.len() as u64 + 1) * per;
            if projected > budget.memory_cap {
                return Err(PermError::MemoryCap {
                    projected,
                    cap: budget.memory_cap,
                });
            }
            index.insert(key, keys.len() as u32);
            keys.push(key);
            if let Some(t) = tree.as_mut() {
                t.push((head as u32, gi as u32));
            }
        }
        head += 1;
    }
    Ok(ConjugacyClass {
        rep: x.clone(),
        packer,
        keys,
        index,
        tree,
    })
}

/// `|C_G(x)| = |G| / |x^G|`.
pub fn centralizer_order(
    group: &PermGroup,
    x: &Permutation,
    budget: &Budget,
) -> Result<BigUint, PermError> {
    let class = conjugacy_class(group, x, budget, false)?;
    Ok(group.order() / BigUint::from(class.size()))
}

/// Whether `x` is conjugate to its inverse.
pub fn is_real(group: &PermGroup, x: &Permutation, budget: &Budget) -> Result<bool, PermError> {
    let class = conjugacy_class(group, x, budget, false)?;
    Ok(class.contains(group.chain(), &x.inverse()))
}

/// Generators of `C_G(x)` drawn from the Schreier generators of the
/// conjugation orbit, chosen by a seeded stream. Stops exactly when the
/// generated subgroup reaches `|G| / |x^G|`; the returned chain is a
/// complete stabilizer chain of the centralizer.
pub fn centralizer_generators(
    group: &PermGroup,
    class: &ConjugacyClass,
    seed: u64,
) -> Result<(Vec<Permutation>, StabChain), PermError> {
    let tree_less = || PermError::CentralizerFailure("class enumerated without BFS tree".into());
    if !class.has_tree() {
        return Err(tree_less());
    }
    let chain = group.chain();
    let target = group.order() / BigUint::from(class.size());
    let x = class.representative();
    let gset = group.generators();
    if class.size() == 1 {
        return Ok((gset.to_vec(), chain.clone()));
    }
    let mut sub = StabChain::trivial(group.degree());
    let mut gens = Vec::new();
    if !x.is_identity() {
        sub.sift_and_extend(x);
        gens.push(x.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let packer = class.packer();
    let mut imgs = vec![0u32; packer.len()];
    let mut factors = vec![0u32; packer.len()];
    let base = chain.base();
    let budget = 200 + 40 * target.bits() as usize;
    let mut tries = 0;
    while sub.order() != target {
        if tries == budget || sub.order() > target {
            return Err(PermError::CentralizerFailure(format!(
                "reached order {} of {} after {} Schreier generators",
                sub.order(),
                target,
                tries
            )));
        }
        tries += 1;
        let j = rng.gen_range(0..class.size() as usize);
        let gi = rng.gen_range(0..gset.len());
        let s = &gset[gi];
        packer.unpack(class.keys()[j], &mut imgs);
        chain.factor(&imgs, &mut factors);
        let s_inv = s.inverse();
        let next: Vec<u32> = base
            .iter()
            .map(|&b| s.image(chain.eval_factored(&factors, s_inv.image(b))))
            .collect();
        let l = class
            .index_of_key(packer.pack(&next))
            .ok_or_else(|| PermError::CentralizerFailure("class not closed".into()))?;
        let wj = class.transporter(group, j).ok_or_else(tree_less)?;
        let wl = class.transporter(group, l).ok_or_else(tree_less)?;
        let c = wj.mul(s).mul(&wl.inverse());
        debug_assert!(c.commutes_with(x));
        if sub.sift_and_extend(&c) {
            gens.push(c);
        }
        // Random subproducts fill in stabilizer levels the Schreier
        // generators alone reach slowly.
        for _ in 0..2 {
            let mut p = group.identity();
            for g in &gens {
                if rng.gen_bool(0.5) {
                    p.mul_assign(g);
                }
            }
            if sub.sift_and_extend(&p) {
                gens.push(p);
            }
        }
    }
    Ok((gens, sub))
}

/// Exact class size as `u64`, for callers comparing with closed forms.
pub fn class_size_u64(group: &PermGroup, x: &Permutation, budget: &Budget) -> Result<u64, PermError> {
    let order = centralizer_order(group, x, budget)?;
    (group.order() / order)
        .to_u64()
        .ok_or_else(|| PermError::Unsupported("class size exceeds u64".into()))
}
