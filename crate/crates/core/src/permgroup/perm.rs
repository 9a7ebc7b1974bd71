use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use super::PermError;

/// A bijection of `{0, ..., n-1}` acting on the right: `p^(gh) = (p^g)^h`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.images.len() <= 64 {
            write!(f, "Perm({})", self.to_text())
        } else {
            write!(f, "Perm(degree {}, moved {})", self.degree(), self.support_len())
        }
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let slot = seen.get_mut(i as usize).ok_or(PermError::NotBijection)?;
            if *slot {
                return Err(PermError::NotBijection);
            }
            *slot = true;
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees bijectivity.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                if p as usize >= n || next as usize >= n {
                    return Err(PermError::NotBijection);
                }
                images[p as usize] = next;
            }
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, p: u32) -> u32 {
        self.images[p as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    /// In place `self <- self * other`.
    #[inline]
    pub fn mul_assign(&mut self, other: &Permutation) {
        for p in self.images.iter_mut() {
            *p = other.images[*p as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g^-1 self g`.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        g.inverse().mul(self).mul(g)
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc.mul_assign(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&s, &o)| other.images[s as usize] == self.images[o as usize])
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens
    }

    /// Exact order: lcm of cycle lengths.
    pub fn order(&self) -> BigUint {
        let mut lens = self.cycle_lengths();
        lens.sort_unstable();
        lens.dedup();
        lens.into_iter()
            .fold(BigUint::from(1u32), |acc, l| acc.lcm(&BigUint::from(l)))
    }

    /// Order as `u64`; panics only if the order exceeds `u64`.
    pub fn order_u64(&self) -> u64 {
        u64::try_from(self.order()).expect("element order exceeds u64")
    }

    pub fn fixed_points(&self) -> Vec<u32> {
        (0..self.degree() as u32)
            .filter(|&p| self.images[p as usize] == p)
            .collect()
    }

    pub fn support_len(&self) -> usize {
        self.degree() - self.fixed_points().len()
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &p)| *i as u32 != p)
            .map(|(i, _)| i as u32)
    }

    /// One-line image list, e.g. `3 0 2 1`.
    pub fn to_text(&self) -> String {
        self.images
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(s: &str) -> Result<Self, PermError> {
        let images = s
            .split_whitespace()
            .map(|t| t.parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| PermError::Parse(e.to_string()))?;
        Self::from_images(images)
    }
}

/// Parses the group fixture format: `degree n` followed by one generator
/// per line. Blank lines and `#` comments are ignored.
pub fn parse_group_fixture(text: &str) -> Result<(usize, Vec<Permutation>), PermError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| PermError::Parse("missing header".into()))?;
    let degree = header
        .strip_prefix("degree")
        .and_then(|d| d.trim().parse::<usize>().ok())
        .ok_or_else(|| PermError::Parse(format!("bad header {header:?}")))?;
    let gens = lines
        .map(Permutation::parse)
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(PermError::DegreeMismatch(degree, g.degree()));
    }
    Ok((degree, gens))
}

pub fn format_group_fixture(degree: usize, gens: &[Permutation]) -> String {
    let mut out = format!("degree {degree}\n");
    for g in gens {
        out.push_str(&g.to_text());
        out.push('\n');
    }
    out
}

/// Order of a permutation; lcm of its cycle lengths.
pub fn element_order(p: &Permutation) -> BigUint {
    p.order()
}
