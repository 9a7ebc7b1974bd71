use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Permutation;

/// Product-replacement generator of pseudo-random group elements.
///
/// The stream is a pure function of the generator list and the seed.
pub struct ProductReplacement {
    slots: Vec<Permutation>,
    acc: Permutation,
    rng: ChaCha8Rng,
}

const MIN_SLOTS: usize = 10;
const WARMUP: usize = 60;

impl ProductReplacement {
    pub fn new(gens: &[Permutation], degree: usize, seed: u64) -> Self {
        let mut slots: Vec<Permutation> = if gens.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            gens.to_vec()
        };
        let base_len = slots.len();
        while slots.len() < MIN_SLOTS {
            let next = slots[slots.len() % base_len].clone();
            slots.push(next);
        }
        let mut pr = ProductReplacement {
            slots,
            acc: Permutation::identity(degree),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..WARMUP {
            pr.step();
        }
        pr
    }

    fn step(&mut self) {
        let n = self.slots.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let invert = self.rng.gen_bool(0.5);
        let left = self.rng.gen_bool(0.5);
        let other = if invert {
            self.slots[j].inverse()
        } else {
            self.slots[j].clone()
        };
        self.slots[i] = if left {
            other.mul(&self.slots[i])
        } else {
            self.slots[i].mul(&other)
        };
        self.acc.mul_assign(&self.slots[i]);
    }

    pub fn next_element(&mut self) -> Permutation {
        self.step();
        self.acc.clone()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

impl Iterator for ProductReplacement {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        Some(self.next_element())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_under_seed() {
        let gens = vec![
            Permutation::parse("1 2 3 4 0").unwrap(),
            Permutation::parse("1 0 2 3 4").unwrap(),
        ];
        let a: Vec<_> = ProductReplacement::new(&gens, 5, 7).take(20).collect();
        let b: Vec<_> = ProductReplacement::new(&gens, 5, 7).take(20).collect();
        let c: Vec<_> = ProductReplacement::new(&gens, 5, 8).take(20).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
