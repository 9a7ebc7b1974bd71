//! Base and strong generating set built by randomized Schreier-Sims.
//!
//! Every level keeps a breadth-first Schreier tree and, for each orbit
//! point, the word (from the root) of strong generators reaching it. Words
//! are shallow, so transversal elements are never stored as permutations;
//! points are pushed through words instead.

use num_bigint::BigUint;

use super::random::ProductReplacement;
use super::{PermError, Permutation};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Level {
    base: u32,
    gens: Vec<u32>,
    orbit: Vec<u32>,
    // word_off[p] indexes `words`; NONE when p is outside the orbit.
    word_off: Vec<u32>,
    word_len: Vec<u16>,
    words: Vec<u32>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            word_off: vec![NONE; degree],
            word_len: vec![0; degree],
            words: Vec::new(),
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.gens
    }

    #[inline]
    pub fn in_orbit(&self, p: u32) -> bool {
        self.word_off[p as usize] != NONE
    }

    #[inline]
    fn word(&self, p: u32) -> &[u32] {
        let off = self.word_off[p as usize] as usize;
        &self.words[off..off + self.word_len[p as usize] as usize]
    }

    pub fn depth(&self) -> usize {
        self.word_len.iter().copied().max().unwrap_or(0) as usize
    }
}

/// Tuning knobs for chain construction.
#[derive(Clone, Debug)]
pub struct ChainOptions {
    pub seed: u64,
    /// Consecutive random elements that must sift to the identity.
    pub sift_streak: usize,
    /// Known order; construction stops as soon as the chain reaches it.
    pub target_order: Option<BigUint>,
    /// Random elements tried after the streak when a target is set.
    pub extra_budget: usize,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            seed: 1,
            sift_streak: 40,
            target_order: None,
            extra_budget: 20_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn trivial(degree: usize) -> Self {
        StabChain {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// Randomized Schreier-Sims. Each input generator is sifted in first,
    /// so the chain always contains them. New base points are the first
    /// point moved by the residue that opened the level.
    pub fn build(
        degree: usize,
        gens: &[Permutation],
        opts: &ChainOptions,
    ) -> Result<Self, PermError> {
        let mut chain = StabChain::trivial(degree);
        for g in gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()));
            }
            chain.sift_and_extend(g);
        }
        if chain.levels.is_empty() {
            return Ok(chain);
        }
        let mut pr = ProductReplacement::new(gens, degree, opts.seed);
        let reached = |c: &StabChain| {
            opts.target_order
                .as_ref()
                .is_some_and(|t| c.order() == *t)
        };
        let mut streak = 0;
        while streak < opts.sift_streak && !reached(&chain) {
            if chain.sift_and_extend(&pr.next_element()) {
                streak = 0;
            } else {
                streak += 1;
            }
        }
        if let Some(target) = &opts.target_order {
            let mut budget = opts.extra_budget;
            while chain.order() != *target {
                if chain.order() > *target || budget == 0 {
                    return Err(PermError::OrderMismatch {
                        expected: target.to_string(),
                        found: chain.order().to_string(),
                    });
                }
                chain.sift_and_extend(&pr.next_element());
                budget -= 1;
            }
        }
        Ok(chain)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    /// Product of the fundamental orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Sifts `g`; returns the residue and the level where sifting stopped
    /// (`levels().len()` when every level was passed).
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        let mut r = g.clone();
        for (i, level) in self.levels.iter().enumerate() {
            let beta = r.image(level.base);
            if !level.in_orbit(beta) {
                return (r, i);
            }
            for &s in level.word(beta).iter().rev() {
                r.mul_assign(&self.strong_inv[s as usize]);
            }
        }
        let n = self.levels.len();
        (r, n)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g).0.is_identity()
    }

    /// Sifts `g` and, if the residue is not the identity, adds it as a
    /// strong generator. Returns whether the chain changed.
    pub fn sift_and_extend(&mut self, g: &Permutation) -> bool {
        let (residue, level) = self.sift(g);
        if residue.is_identity() {
            return false;
        }
        self.add_strong(residue, level);
        true
    }

    fn add_strong(&mut self, g: Permutation, upto: usize) {
        let idx = self.strong.len() as u32;
        self.strong_inv.push(g.inverse());
        if upto == self.levels.len() {
            let base = g.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(base, self.degree));
        }
        self.strong.push(g);
        for i in 0..=upto {
            self.levels[i].gens.push(idx);
            self.rebuild_level(i);
        }
    }

    fn rebuild_level(&mut self, i: usize) {
        let strong = &self.strong;
        let level = &mut self.levels[i];
        for &p in &level.orbit {
            level.word_off[p as usize] = NONE;
            level.word_len[p as usize] = 0;
        }
        level.orbit.clear();
        level.words.clear();
        let base = level.base;
        level.word_off[base as usize] = 0;
        level.word_len[base as usize] = 0;
        level.orbit.push(base);
        let mut head = 0;
        while head < level.orbit.len() {
            let p = level.orbit[head];
            head += 1;
            for gi in 0..level.gens.len() {
                let s = level.gens[gi];
                let q = strong[s as usize].image(p);
                if level.word_off[q as usize] != NONE {
                    continue;
                }
                let off = level.word_off[p as usize] as usize;
                let len = level.word_len[p as usize] as usize;
                let new_off = level.words.len();
                level.words.extend_from_within(off..off + len);
                level.words.push(s);
                level.word_off[q as usize] = new_off as u32;
                level.word_len[q as usize] = (len + 1) as u16;
                level.orbit.push(q);
            }
        }
    }

    /// Deterministic completeness test: every Schreier generator of every
    /// level sifts to the identity through the levels below it.
    pub fn verify_complete(&self) -> bool {
        for (i, level) in self.levels.iter().enumerate() {
            let below = StabChain {
                degree: self.degree,
                strong: self.strong.clone(),
                strong_inv: self.strong_inv.clone(),
                levels: self.levels[i + 1..].to_vec(),
            };
            for &gamma in &level.orbit {
                let u = self.transversal(i, gamma);
                for &s in &level.gens {
                    let s = &self.strong[s as usize];
                    let image = s.image(gamma);
                    let schreier = u.mul(s).mul(&self.transversal(i, image).inverse());
                    if !below.sift(&schreier).0.is_identity() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Transversal element of `level` mapping its base point to `gamma`.
    pub fn transversal(&self, level: usize, gamma: u32) -> Permutation {
        let mut u = Permutation::identity(self.degree);
        for &s in self.levels[level].word(gamma) {
            u.mul_assign(&self.strong[s as usize]);
        }
        u
    }

    #[inline]
    fn apply_word(&self, level: usize, gamma: u32, mut p: u32) -> u32 {
        for &s in self.levels[level].word(gamma) {
            p = self.strong[s as usize].image(p);
        }
        p
    }

    #[inline]
    fn apply_word_inv(&self, level: usize, gamma: u32, mut p: u32) -> u32 {
        for &s in self.levels[level].word(gamma).iter().rev() {
            p = self.strong_inv[s as usize].image(p);
        }
        p
    }

    pub fn base_images(&self, g: &Permutation) -> Vec<u32> {
        self.levels.iter().map(|l| g.image(l.base)).collect()
    }

    /// Converts base images of an element into its transversal factor
    /// points `gamma_1..gamma_k` (the element is `u_k ... u_1`). Returns
    /// `false` when no group element has these base images.
    pub fn factor(&self, images: &[u32], out: &mut [u32]) -> bool {
        for i in 0..self.levels.len() {
            let mut gamma = images[i];
            for j in 0..i {
                gamma = self.apply_word_inv(j, out[j], gamma);
            }
            if !self.levels[i].in_orbit(gamma) {
                return false;
            }
            out[i] = gamma;
        }
        true
    }

    /// Image of `p` under the element with transversal factors `factors`.
    #[inline]
    pub fn eval_factored(&self, factors: &[u32], mut p: u32) -> u32 {
        for i in (0..factors.len()).rev() {
            p = self.apply_word(i, factors[i], p);
        }
        p
    }

    pub fn element_from_factors(&self, factors: &[u32]) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for i in (0..factors.len()).rev() {
            for &s in self.levels[i].word(factors[i]) {
                g.mul_assign(&self.strong[s as usize]);
            }
        }
        g
    }

    /// The unique element with the given base images, if it exists.
    pub fn element_from_base_images(&self, images: &[u32]) -> Option<Permutation> {
        let mut f = vec![0; self.levels.len()];
        if !self.factor(images, &mut f) {
            return None;
        }
        let g = self.element_from_factors(&f);
        (self.base_images(&g) == images).then_some(g)
    }

    /// Visits the transversal factors of every group element in mixed-radix
    /// order of the fundamental orbits.
    pub fn for_each_factors<F: FnMut(&[u32])>(&self, mut f: F) {
        let k = self.levels.len();
        let mut idx = vec![0usize; k];
        let mut cur: Vec<u32> = self.levels.iter().map(|l| l.orbit[0]).collect();
        loop {
            f(&cur);
            let mut i = 0;
            loop {
                if i == k {
                    return;
                }
                idx[i] += 1;
                if idx[i] < self.levels[i].orbit.len() {
                    cur[i] = self.levels[i].orbit[idx[i]];
                    break;
                }
                idx[i] = 0;
                cur[i] = self.levels[i].orbit[0];
                i += 1;
            }
        }
    }

    /// All elements as permutations. Intended for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        self.for_each_factors(|f| out.push(self.element_from_factors(f)));
        out
    }
}

/// Packs base-image tuples into `u64` fingerprints.
#[derive(Clone, Copy, Debug)]
pub struct Packer {
    bits: u32,
    len: usize,
}

impl Packer {
    pub fn new(degree: usize, base_len: usize) -> Result<Self, PermError> {
        let bits = (usize::BITS - degree.saturating_sub(1).leading_zeros()).max(1);
        if bits as usize * base_len > 64 {
            return Err(PermError::FingerprintTooWide { degree, base_len });
        }
        Ok(Packer { bits, len: base_len })
    }

    #[inline]
    pub fn pack(&self, images: &[u32]) -> u64 {
        images
            .iter()
            .fold(0u64, |acc, &p| (acc << self.bits) | p as u64)
    }

    #[inline]
    pub fn unpack(&self, mut key: u64, out: &mut [u32]) {
        let mask = (1u64 << self.bits) - 1;
        for i in (0..self.len).rev() {
            out[i] = (key & mask) as u32;
            key >>= self.bits;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}
