//! Permutation groups: stabilizer chains, conjugacy classes, coset actions
//! and the fixed-point machinery used by the lemma checks.

mod action;
mod chain;
mod class;
mod perm;
mod random;
mod theory;

use std::sync::OnceLock;

use num_bigint::BigUint;
use thiserror::Error;

pub use action::{coset_action, is_two_transitive, Domain, GroupAction, Objects};
pub use chain::{ChainOptions, Level, Packer, StabChain};
pub use class::{
    centralizer_generators, centralizer_order, class_size_u64, conjugacy_class, is_real, ConjugacyClass,
};
pub use perm::{element_order, format_group_fixture, parse_group_fixture, Permutation};
pub use random::ProductReplacement;
pub use theory::{
    centralizer_transitive_on_fixed, centralizer_transitive_with, class_fusion_check, class_fusion_with, complement_conjugacy_check, count_class_members_in,
    element_into_complement, fixed_count_formula, fixed_points, CentralizerTransitivity,
    FusionReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image list is not a bijection")]
    NotBijection,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cannot parse permutation data: {0}")]
    Parse(String),
    #[error("expected group order {expected}, chain reached {found}")]
    OrderMismatch { expected: String, found: String },
    #[error("memory cap exceeded: projected {projected} bytes, cap {cap} bytes")]
    MemoryCap { projected: u64, cap: u64 },
    #[error("base of length {base_len} on {degree} points does not fit a 64-bit fingerprint")]
    FingerprintTooWide { degree: usize, base_len: usize },
    #[error("element is not in the group")]
    NotContained,
    #[error("centralizer generation failed: {0}")]
    CentralizerFailure(String),
    #[error("non-integral result: {0}")]
    NotIntegral(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Resource limits for enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub memory_cap: u64,
    pub seed: u64,
}

pub const DEFAULT_MEMORY_CAP: u64 = 2 << 30;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            memory_cap: DEFAULT_MEMORY_CAP,
            seed: 1,
        }
    }
}

/// A permutation group given by generators, with a lazily built chain.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    seed: u64,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            gens: self.gens.clone(),
            seed: self.seed,
            chain,
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
        Ok(PermGroup {
            degree,
            gens,
            seed: 1,
            chain: OnceLock::new(),
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Builds the chain now, stopping as soon as `order` is reached; fails
    /// if the generators do not reach it.
    pub fn with_known_order(
        degree: usize,
        gens: Vec<Permutation>,
        order: BigUint,
        seed: u64,
    ) -> Result<Self, PermError> {
        let g = PermGroup::new(degree, gens)?.with_seed(seed);
        let opts = ChainOptions {
            seed,
            target_order: Some(order),
            ..Default::default()
        };
        let chain = StabChain::build(degree, &g.gens, &opts)?;
        let _ = g.chain.set(chain);
        Ok(g)
    }

    pub fn from_chain(degree: usize, gens: Vec<Permutation>, chain: StabChain) -> Self {
        let g = PermGroup {
            degree,
            gens,
            seed: 1,
            chain: OnceLock::new(),
        };
        let _ = g.chain.set(chain);
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            let opts = ChainOptions {
                seed: self.seed,
                ..Default::default()
            };
            StabChain::build(self.degree, &self.gens, &opts)
                .expect("generator degrees validated at construction")
        })
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> u64 {
        u64::try_from(self.order()).expect("group order exceeds u64")
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool, PermError> {
        if g.degree() != self.degree {
            return Err(PermError::DegreeMismatch(self.degree, g.degree()));
        }
        Ok(self.chain().contains(g))
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn random_elements(&self, seed: u64) -> ProductReplacement {
        ProductReplacement::new(&self.gens, self.degree, seed)
    }

    pub fn random_element(&self, seed: u64) -> Permutation {
        self.random_elements(seed).next_element()
    }

    /// Subgroup generated by `gens`, which must lie in this group.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup, PermError> {
        for g in &gens {
            if !self.contains(g)? {
                return Err(PermError::NotContained);
            }
        }
        Ok(PermGroup::new(self.degree, gens)?.with_seed(self.seed))
    }

    pub fn elements(&self) -> Vec<Permutation> {
        self.chain().elements()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || orbit(&self.gens, 0).len() == self.degree
    }
}

/// Orbit of a point with a Schreier vector.
#[derive(Clone, Debug)]
pub struct Orbit {
    points: Vec<u32>,
    // (parent point, generator index) per orbit point, indexed by point.
    edge: Vec<(u32, u32)>,
}

const NO_EDGE: (u32, u32) = (u32::MAX, u32::MAX);

impl Orbit {
    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: u32) -> bool {
        self.edge.get(p as usize).is_some_and(|&e| e != NO_EDGE)
    }

    /// Element mapping the root to `p`, rebuilt from the Schreier vector.
    pub fn transporter(&self, gens: &[Permutation], p: u32) -> Option<Permutation> {
        if !self.contains(p) {
            return None;
        }
        let mut word = Vec::new();
        let mut cur = p;
        while cur != self.points[0] {
            let (parent, g) = self.edge[cur as usize];
            word.push(g);
            cur = parent;
        }
        let degree = self.edge.len();
        let mut t = Permutation::identity(degree);
        for &g in word.iter().rev() {
            t.mul_assign(&gens[g as usize]);
        }
        Some(t)
    }
}

/// Breadth-first orbit of `point`, generators tried in the given order.
pub fn orbit(gens: &[Permutation], point: u32) -> Orbit {
    let degree = gens.first().map_or(point as usize + 1, |g| g.degree());
    let mut edge = vec![NO_EDGE; degree];
    edge[point as usize] = (point, u32::MAX - 1);
    let mut points = vec![point];
    let mut head = 0;
    while head < points.len() {
        let p = points[head];
        head += 1;
        for (gi, g) in gens.iter().enumerate() {
            let q = g.image(p);
            if edge[q as usize] == NO_EDGE {
                edge[q as usize] = (p, gi as u32);
                points.push(q);
            }
        }
    }
    Orbit { points, edge }
}

/// Convenience: chain options for a seeded build.
pub fn stabilizer_chain(group: &PermGroup) -> &StabChain {
    group.chain()
}
