//! Exact arithmetic in GF(2^k) and GF(3^k).
//!
//! Elements are stored as their integer code `sum c_i p^i`, where `c_0` is
//! the constant coefficient in the polynomial basis `1, x, ..., x^(k-1)`.
//! [`GaloisField`] does arithmetic on raw codes for the matrix kernels;
//! [`FieldElement`] is the checked wrapper carrying its field.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported characteristic {0}; only 2 and 3 are implemented")]
    UnsupportedCharacteristic(u32),
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("field of size {0}^{1} exceeds the supported range")]
    TooLarge(u32, u32),
    #[error("no irreducible polynomial of degree {1} over GF({0}) found")]
    NoIrreducible(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MismatchedFields,
    #[error("Tits endomorphism needs odd degree, got {0}")]
    EvenDegree(u32),
    #[error("cannot parse field element: {0}")]
    Parse(String),
}

/// Largest field order for which log tables are built.
const TABLE_LIMIT: u32 = 1 << 22;

/// Description of GF(p^k) together with its arithmetic tables.
pub struct GaloisField {
    p: u32,
    k: u32,
    modulus: Vec<u32>,
    order: u32,
    // exp[i] = g^i for a fixed primitive g, doubled to skip a modulo.
    exp: Vec<u32>,
    log: Vec<u32>,
    pow_p: Vec<u32>,
}

pub type FieldSpec = GaloisField;

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.k, self.modulus)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for GaloisField {}

impl GaloisField {
    /// Builds GF(p^k) with the lexicographically least monic irreducible
    /// modulus: lower coefficients read as a base-p integer, smallest first.
    pub fn new(p: u32, k: u32) -> Result<Arc<Self>, FieldError> {
        if p != 2 && p != 3 {
            return Err(FieldError::UnsupportedCharacteristic(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (p as u64).checked_pow(k).filter(|&o| o <= TABLE_LIMIT as u64);
        let order = order.ok_or(FieldError::TooLarge(p, k))? as u32;
        let modulus = (0..order)
            .map(|code| {
                let mut f = digits(code, p, k);
                f.push(1);
                f
            })
            .find(|f| poly::is_irreducible(f, p))
            .ok_or(FieldError::NoIrreducible(p, k))?;
        let mut field = GaloisField {
            p,
            k,
            modulus,
            order,
            exp: Vec::new(),
            log: Vec::new(),
            pow_p: Vec::new(),
        };
        field.build_tables()?;
        Ok(Arc::new(field))
    }

    fn build_tables(&mut self) -> Result<(), FieldError> {
        let n = self.order - 1;
        let factors = prime_factors(n);
        let generator = (1..self.order)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&f| self.slow_pow(g, (n / f) as u64) != 1)
            })
            .ok_or(FieldError::NoIrreducible(self.p, self.k))?;
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; self.order as usize];
        let mut acc = 1u32;
        for i in 0..n {
            exp[i as usize] = acc;
            exp[(i + n) as usize] = acc;
            log[acc as usize] = i;
            acc = self.slow_mul(acc, generator);
        }
        self.exp = exp;
        self.log = log;
        self.pow_p = (0..self.order).map(|a| self.pow(a, self.p as u64)).collect();
        Ok(())
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Monic modulus, constant coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Fixed primitive element (generator of the multiplicative group).
    pub fn primitive(&self) -> u32 {
        if self.order == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order
    }

    /// Code of the element `x` (the polynomial generator), reduced.
    pub fn x(&self) -> u32 {
        if self.k == 1 {
            self.from_coeffs(&[0, 1])
        } else {
            self.p
        }
    }

    /// Basis `1, x, ..., x^(k-1)` as codes.
    pub fn basis(&self) -> Vec<u32> {
        (0..self.k).map(|i| self.p.pow(i)).collect()
    }

    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        digits(a, self.p, self.k)
    }

    /// Reduces an arbitrary coefficient list modulo p and the modulus.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> u32 {
        let c: Vec<u32> = coeffs.iter().map(|&c| c % self.p).collect();
        let r = poly::rem(&c, &self.modulus, self.p);
        r.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        while a | b != 0 {
            out += ((a % 3 + b % 3) % 3) * place;
            a /= 3;
            b /= 3;
            place *= 3;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a != 0 {
            out += ((3 - a % 3) % 3) * place;
            a /= 3;
            place *= 3;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.order - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; negative exponents invert first.
    pub fn pow_signed(&self, a: u32, e: i64) -> Result<u32, FieldError> {
        if e < 0 {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        } else {
            Ok(self.pow(a, e as u64))
        }
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(p^e)`.
    pub fn frobenius(&self, a: u32, e: u32) -> u32 {
        (0..e % self.k).fold(a, |acc, _| self.pow_p[acc as usize])
    }

    /// The Tits endomorphism `a -> a^(p^(m+1))` of GF(p^(2m+1)); applying
    /// it twice gives `a^p`.
    pub fn tits_endo(&self, a: u32) -> Result<u32, FieldError> {
        if self.k.is_multiple_of(2) {
            return Err(FieldError::EvenDegree(self.k));
        }
        Ok(self.frobenius(a, (self.k - 1) / 2 + 1))
    }

    /// Whether `a` lies in the subfield GF(p^d) (`d` must divide k).
    pub fn in_subfield(&self, a: u32, d: u32) -> bool {
        self.frobenius(a, d) == a
    }

    pub fn format(&self, a: u32) -> String {
        self.coeffs(a)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(&self, s: &str) -> Result<u32, FieldError> {
        let coeffs: Vec<u32> = s
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|e| FieldError::Parse(e.to_string()))?;
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::Parse(s.to_string()));
        }
        Ok(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let prod = poly::mul(&self.coeffs(a), &self.coeffs(b), self.p);
        self.from_coeffs(&prod)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Builds GF(p^k).
pub fn field_make(p: u32, k: u32) -> Result<Arc<GaloisField>, FieldError> {
    GaloisField::new(p, k)
}

fn digits(mut code: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over GF(p), constant term first.
pub(crate) mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        (1..p).find(|&x| a * x % p == 1).expect("nonzero residue")
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let m = trim(m.to_vec());
        let mut r = trim(a.to_vec());
        let lead_inv = inv_mod(*m.last().expect("nonzero modulus"), p);
        while r.len() >= m.len() {
            let shift = r.len() - m.len();
            let c = r.last().unwrap() * lead_inv % p;
            for (i, &mc) in m.iter().enumerate() {
                r[i + shift] = (r[i + shift] + p * p - c * mc % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn powmod_x(e: u64, m: &[u32], p: u32) -> Vec<u32> {
        // x^e mod m by square-and-multiply.
        let mut base = rem(&[0, 1], m, p);
        let mut acc = vec![1];
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), m, p);
            }
            base = rem(&mul(&base, &base, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Deterministic test: no factor of degree d <= k/2, checked through
    /// gcd(f, x^(p^d) - x).
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        if k == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        (1..=k / 2).all(|d| {
            let xp = powmod_x((p as u64).pow(d as u32), f, p);
            let g = gcd(f, &sub(&xp, &[0, 1], p), p);
            g.len() == 1
        })
    }
}

/// A field element bound to its field; arithmetic checks that both
/// operands share a field.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<GaloisField>,
    code: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.field.format(self.code))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.code))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && *self.field == *other.field
    }
}
impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(field: &Arc<GaloisField>, code: u32) -> Self {
        assert!(code < field.order(), "code out of range");
        FieldElement {
            field: Arc::clone(field),
            code,
        }
    }

    pub fn zero(field: &Arc<GaloisField>) -> Self {
        Self::new(field, 0)
    }

    pub fn one(field: &Arc<GaloisField>) -> Self {
        Self::new(field, 1)
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same(&self, other: &Self) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(FieldError::MismatchedFields)
        }
    }

    fn with(&self, code: u32) -> Self {
        FieldElement {
            field: Arc::clone(&self.field),
            code,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same(other)?;
        Ok(self.with(self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same(other)?;
        Ok(self.with(self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same(other)?;
        Ok(self.with(self.field.mul(self.code, other.code)))
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        self.same(other)?;
        Ok(self.with(self.field.div(self.code, other.code)?))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Ok(self.with(self.field.inv(self.code)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.code, e))
    }

    pub fn frobenius(&self, e: u32) -> Self {
        self.with(self.field.frobenius(self.code, e))
    }

    pub fn tits_endo(&self) -> Result<Self, FieldError> {
        Ok(self.with(self.field.tits_endo(self.code)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(f: &Arc<GaloisField>) -> Vec<FieldElement> {
        f.elements().map(|c| FieldElement::new(f, c)).collect()
    }

    #[test]
    fn prime_field_gf2() {
        let f = field_make(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.mul(1, 1), 1);
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn gf8_modulus_and_group() {
        let f = field_make(2, 3).unwrap();
        // x^3 + x + 1 is the least monic irreducible cubic over GF(2).
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        assert_eq!(f.order(), 8);
        let nonzero: Vec<u32> = (1..8).collect();
        for &a in &nonzero {
            for &b in &nonzero {
                assert_ne!(f.mul(a, b), 0);
            }
        }
        let max_order = nonzero
            .iter()
            .map(|&a| (1..=7).find(|&e| f.pow(a, e) == 1).unwrap())
            .max()
            .unwrap();
        assert_eq!(max_order, 7);
    }

    #[test]
    fn gf27_cyclic_of_order_26() {
        let f = field_make(3, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 2, 0, 1]);
        let g = f.primitive();
        let ord = (1..=26).find(|&e| f.pow(g, e) == 1).unwrap();
        assert_eq!(ord, 26);
        for a in 1..27 {
            assert_eq!(f.pow(a, 26), 1);
        }
    }

    #[test]
    fn inverse_and_sum_gf8() {
        let f = field_make(2, 3).unwrap();
        let els = all(&f);
        for a in els.iter().filter(|a| !a.is_zero()) {
            assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), FieldElement::one(&f));
        }
        let sum = els
            .iter()
            .fold(FieldElement::zero(&f), |acc, a| acc.add(a).unwrap());
        assert!(sum.is_zero());
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        let f = field_make(3, 2).unwrap();
        let g = field_make(3, 3).unwrap();
        let one = FieldElement::one(&f);
        assert_eq!(
            one.div(&FieldElement::zero(&f)),
            Err(FieldError::DivisionByZero)
        );
        assert_eq!(
            one.add(&FieldElement::one(&g)),
            Err(FieldError::MismatchedFields)
        );
        assert!(matches!(
            field_make(5, 2),
            Err(FieldError::UnsupportedCharacteristic(5))
        ));
        assert!(matches!(f.tits_endo(1), Err(FieldError::EvenDegree(2))));
    }

    #[test]
    fn frobenius_identities() {
        let f8 = field_make(2, 3).unwrap();
        for a in f8.elements() {
            assert_eq!(f8.frobenius(a, 0), a);
            assert_eq!(f8.frobenius(a, 3), a);
        }
        let f27 = field_make(3, 3).unwrap();
        for a in f27.elements() {
            for b in f27.elements() {
                assert_eq!(
                    f27.frobenius(f27.add(a, b), 1),
                    f27.add(f27.frobenius(a, 1), f27.frobenius(b, 1))
                );
                assert_eq!(
                    f27.frobenius(f27.mul(a, b), 1),
                    f27.mul(f27.frobenius(a, 1), f27.frobenius(b, 1))
                );
            }
        }
    }

    #[test]
    fn tits_endo_small_cases() {
        let f8 = field_make(2, 3).unwrap();
        for a in f8.elements() {
            let t = f8.tits_endo(a).unwrap();
            assert_eq!(t, f8.pow(a, 4));
            assert_eq!(f8.tits_endo(t).unwrap(), f8.pow(a, 2));
        }
        let f27 = field_make(3, 3).unwrap();
        for a in f27.elements() {
            let t = f27.tits_endo(a).unwrap();
            assert_eq!(t, f27.pow(a, 9));
            assert_eq!(f27.tits_endo(t).unwrap(), f27.pow(a, 3));
        }
        assert_eq!(f27.tits_endo(0).unwrap(), 0);
        assert_eq!(f27.tits_endo(1).unwrap(), 1);
    }

    #[test]
    fn tits_endo_squares_to_frobenius_exhaustive() {
        for (p, k) in [(2, 1), (2, 3), (2, 5), (2, 7), (2, 9), (3, 1), (3, 3), (3, 5)] {
            let f = field_make(p, k).unwrap();
            for a in f.elements() {
                let t = f.tits_endo(f.tits_endo(a).unwrap()).unwrap();
                assert_eq!(t, f.pow(a, p as u64), "GF({p}^{k})");
            }
        }
    }

    #[test]
    fn moduli_are_irreducible_and_deterministic() {
        for (p, k) in [(2, 2), (2, 4), (2, 5), (2, 9), (3, 2), (3, 4), (3, 5)] {
            let a = field_make(p, k).unwrap();
            let b = field_make(p, k).unwrap();
            assert_eq!(*a, *b);
            assert!(poly::is_irreducible(a.modulus(), p));
            for r in 0..p {
                let val = a
                    .modulus()
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| (acc * r + c) % p);
                assert_ne!(val, 0, "root {r} in modulus of GF({p}^{k})");
            }
        }
        // x^4 + x^2 + 1 = (x^2+x+1)^2 has no roots but is reducible.
        assert!(!poly::is_irreducible(&[1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn text_encoding() {
        let f = field_make(2, 3).unwrap();
        let a = f.parse("1,0,1").unwrap();
        assert_eq!(a, 5);
        assert_eq!(f.format(a), "1,0,1");
        assert!(f.parse("1,2,0").is_err());
        assert!(f.parse("1,0").is_err());
    }

    #[test]
    fn subfield_membership() {
        let f = field_make(2, 9).unwrap();
        let count = f.elements().filter(|&a| f.in_subfield(a, 3)).count();
        assert_eq!(count, 8);
    }
}
