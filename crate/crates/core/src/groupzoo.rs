//! Small abstract groups realized as permutation groups, plus element
//! censuses by order.
//!
//! Recipe grammar (whitespace is ignored):
//!
//! ```text
//! recipe := "C(" n ")" | "D(" n ")" | "E(" p "," k ")" | "PSL2(" q ")"
//!         | "direct(" recipe ("," recipe)+ ")"
//!         | "semidirect(" recipe "," "C(" k ")" "," "auto=" auto ")"
//! auto   := "unit(" u ")" | "least(" k ")" | "perm(" image* ")"
//! ```
//!
//! `unit(u)` acts by `x -> u*x` on a cyclic or dihedral normal factor,
//! `least(k)` picks the least unit of multiplicative order `k`, and
//! `perm(...)` gives the automorphism as a permutation of the normal
//! factor's domain that normalizes it.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rustc_hash::FxHashSet;
use serde::Serialize;
use thiserror::Error;

use crate::finitefield::GaloisField;
use crate::permgroup::{conjugacy_class, Budget, PermError, PermGroup, Permutation};

#[derive(Debug, Error)]
pub enum ZooError {
    #[error("cannot parse recipe: {0}")]
    Parse(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("unsupported recipe: {0}")]
    Unsupported(String),
    #[error("realized order {found} differs from recipe order {expected}")]
    OrderMismatch { expected: String, found: String },
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Auto {
    Unit(u64),
    Least(u64),
    Perm(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Cyclic(u64),
    Dihedral(u64),
    ElementaryAbelian { p: u64, k: u32 },
    Direct(Vec<Recipe>),
    Semidirect {
        normal: Box<Recipe>,
        k: u64,
        auto: Auto,
    },
    Psl2(u64),
}

pub type AbstractGroupSpec = Recipe;

impl fmt::Display for Auto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Auto::Unit(u) => write!(f, "unit({u})"),
            Auto::Least(k) => write!(f, "least({k})"),
            Auto::Perm(v) => {
                let s: Vec<String> = v.iter().map(u32::to_string).collect();
                write!(f, "perm({})", s.join(" "))
            }
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Cyclic(n) => write!(f, "C({n})"),
            Recipe::Dihedral(n) => write!(f, "D({n})"),
            Recipe::ElementaryAbelian { p, k } => write!(f, "E({p},{k})"),
            Recipe::Psl2(q) => write!(f, "PSL2({q})"),
            Recipe::Direct(parts) => {
                let s: Vec<String> = parts.iter().map(Recipe::to_string).collect();
                write!(f, "direct({})", s.join(","))
            }
            Recipe::Semidirect { normal, k, auto } => {
                write!(f, "semidirect({normal},C({k}),auto={auto})")
            }
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> ZooError {
        ZooError::Parse(format!("{what} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ZooError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{tok}'")))
        }
    }

    fn number(&mut self) -> Result<u64, ZooError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected a number"))
    }

    fn recipe(&mut self) -> Result<Recipe, ZooError> {
        if self.eat("direct(") {
            let mut parts = vec![self.recipe()?];
            while self.eat(",") {
                parts.push(self.recipe()?);
            }
            self.expect(")")?;
            return Ok(Recipe::Direct(parts));
        }
        if self.eat("semidirect(") {
            let normal = Box::new(self.recipe()?);
            self.expect(",")?;
            self.expect("C(")?;
            let k = self.number()?;
            self.expect(")")?;
            self.expect(",")?;
            self.expect("auto=")?;
            let auto = if self.eat("unit(") {
                Auto::Unit(self.number()?)
            } else if self.eat("least(") {
                Auto::Least(self.number()?)
            } else if self.eat("perm(") {
                let mut v = Vec::new();
                loop {
                    self.skip_ws();
                    if self.s.get(self.pos) == Some(&b')') {
                        break;
                    }
                    v.push(self.number()? as u32);
                    self.eat(",");
                }
                Auto::Perm(v)
            } else {
                return Err(self.err("unknown automorphism"));
            };
            self.expect(")")?;
            self.expect(")")?;
            return Ok(Recipe::Semidirect { normal, k, auto });
        }
        if self.eat("PSL2(") {
            let q = self.number()?;
            self.expect(")")?;
            return Ok(Recipe::Psl2(q));
        }
        if self.eat("C(") {
            let n = self.number()?;
            self.expect(")")?;
            return Ok(Recipe::Cyclic(n));
        }
        if self.eat("D(") {
            let n = self.number()?;
            self.expect(")")?;
            return Ok(Recipe::Dihedral(n));
        }
        if self.eat("E(") {
            let p = self.number()?;
            self.expect(",")?;
            let k = self.number()? as u32;
            self.expect(")")?;
            return Ok(Recipe::ElementaryAbelian { p, k });
        }
        Err(self.err("unknown recipe"))
    }
}

impl std::str::FromStr for Recipe {
    type Err = ZooError;

    fn from_str(s: &str) -> Result<Self, ZooError> {
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
        };
        let r = p.recipe()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(r)
    }
}

/// Least unit modulo `n` of multiplicative order exactly `k`.
pub fn least_unit_of_order(n: u64, k: u64) -> Option<u64> {
    (2..n).find(|&u| u.gcd(&n) == 1 && mult_order(u, n) == k)
}

fn mult_order(u: u64, n: u64) -> u64 {
    let mut x = u % n;
    let mut k = 1;
    while x != 1 {
        x = x * u % n;
        k += 1;
    }
    k
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl Recipe {
    /// Order predicted by the recipe arithmetic.
    pub fn order(&self) -> BigUint {
        match self {
            Recipe::Cyclic(n) => BigUint::from(*n),
            Recipe::Dihedral(n) => BigUint::from(2 * n),
            Recipe::ElementaryAbelian { p, k } => BigUint::from(*p).pow(*k),
            Recipe::Direct(parts) => parts.iter().map(Recipe::order).product(),
            Recipe::Semidirect { normal, k, .. } => normal.order() * BigUint::from(*k),
            Recipe::Psl2(q) => {
                let q = BigUint::from(*q);
                let d = if q.is_even() { 1u32 } else { 2 };
                &q * (&q * &q - 1u32) / d
            }
        }
    }
}

/// A recipe realized as a permutation group.
#[derive(Clone, Debug)]
pub struct Realized {
    pub group: PermGroup,
    /// Generators of the normal factor for semidirect recipes.
    pub normal_gens: Vec<Permutation>,
    /// Generators of the cyclic complement for semidirect recipes.
    pub complement_gens: Vec<Permutation>,
}

fn cyclic_gens(n: u64) -> Vec<Permutation> {
    let n = n as u32;
    vec![Permutation::from_images_unchecked((0..n).map(|x| (x + 1) % n).collect())]
}

fn dihedral_gens(n: u64) -> Vec<Permutation> {
    let n = n as u32;
    vec![
        Permutation::from_images_unchecked((0..n).map(|x| (x + 1) % n).collect()),
        Permutation::from_images_unchecked((0..n).map(|x| (n - x) % n).collect()),
    ]
}

fn elementary_gens(p: u64, k: u32) -> Vec<Permutation> {
    let p = p as u32;
    let n = p.pow(k);
    (0..k)
        .map(|i| {
            let step = p.pow(i);
            Permutation::from_images_unchecked(
                (0..n)
                    .map(|x| {
                        let digit = (x / step) % p;
                        x - digit * step + ((digit + 1) % p) * step
                    })
                    .collect(),
            )
        })
        .collect()
}

/// `PSL(2,q)` on the projective line: field codes `0..q`, infinity `q`.
pub fn psl2(q: u64) -> Result<PermGroup, ZooError> {
    let (p, k) = prime_power(q).ok_or_else(|| ZooError::Unsupported(format!("{q} is not a prime power")))?;
    if q < 4 || !(p == 2 || p == 3) {
        return Err(ZooError::Unsupported(format!("PSL2({q})")));
    }
    let f = GaloisField::new(p as u32, k).map_err(|e| ZooError::Unsupported(e.to_string()))?;
    let inf = q as u32;
    let w2 = f.mul(f.primitive(), f.primitive());
    let map = |g: &dyn Fn(u32) -> u32| -> Permutation {
        Permutation::from_images_unchecked((0..=inf).map(g).collect())
    };
    let translate = map(&|x| if x == inf { inf } else { f.add(x, 1) });
    let scale = map(&|x| if x == inf { inf } else { f.mul(x, w2) });
    let invert = map(&|x| {
        if x == inf {
            0
        } else if x == 0 {
            inf
        } else {
            f.neg(f.inv(x).unwrap())
        }
    });
    let order = Recipe::Psl2(q).order();
    Ok(PermGroup::with_known_order(
        q as usize + 1,
        vec![translate, scale, invert],
        order,
        1,
    )?)
}

fn shift(g: &Permutation, offset: u32, total: usize) -> Permutation {
    let mut imgs: Vec<u32> = (0..total as u32).collect();
    for (i, &x) in g.images().iter().enumerate() {
        imgs[offset as usize + i] = offset + x;
    }
    Permutation::from_images_unchecked(imgs)
}

fn realize_gens(recipe: &Recipe) -> Result<(usize, Vec<Permutation>), ZooError> {
    let r = realize(recipe)?;
    Ok((r.group.degree(), r.group.generators().to_vec()))
}

/// Builds the permutation model of `recipe` and checks its order.
pub fn realize(recipe: &Recipe) -> Result<Realized, ZooError> {
    let expected = recipe.order();
    let (degree, gens, normal_gens, complement_gens) = match recipe {
        Recipe::Cyclic(n) if *n >= 1 => (*n as usize, cyclic_gens(*n), vec![], vec![]),
        Recipe::Dihedral(n) if *n >= 3 => (*n as usize, dihedral_gens(*n), vec![], vec![]),
        Recipe::ElementaryAbelian { p, k } if is_prime(*p) && *k >= 1 => {
            (p.pow(*k) as usize, elementary_gens(*p, *k), vec![], vec![])
        }
        Recipe::Psl2(q) => {
            let g = psl2(*q)?;
            return Ok(Realized {
                group: g,
                normal_gens: vec![],
                complement_gens: vec![],
            });
        }
        Recipe::Direct(parts) if !parts.is_empty() => {
            let realized: Vec<_> = parts.iter().map(realize_gens).collect::<Result<_, _>>()?;
            let total: usize = realized.iter().map(|r| r.0).sum();
            let mut gens = Vec::new();
            let mut offset = 0;
            for (d, gs) in &realized {
                gens.extend(gs.iter().map(|g| shift(g, offset, total)));
                offset += *d as u32;
            }
            (total, gens, vec![], vec![])
        }
        Recipe::Semidirect { normal, k, auto } => realize_semidirect(normal, *k, auto)?,
        _ => return Err(ZooError::Unsupported(recipe.to_string())),
    };
    let group = PermGroup::new(degree, gens)?;
    if group.order() != expected {
        return Err(ZooError::OrderMismatch {
            expected: expected.to_string(),
            found: group.order().to_string(),
        });
    }
    Ok(Realized {
        group,
        normal_gens,
        complement_gens,
    })
}

type Parts = (usize, Vec<Permutation>, Vec<Permutation>, Vec<Permutation>);

fn realize_semidirect(normal: &Recipe, k: u64, auto: &Auto) -> Result<Parts, ZooError> {
    let (d, ngens) = realize_gens(normal)?;
    let nmod = match normal {
        Recipe::Cyclic(n) | Recipe::Dihedral(n) => Some(*n),
        _ => None,
    };
    let unit_perm = |u: u64| -> Result<Permutation, ZooError> {
        let n = nmod.ok_or_else(|| {
            ZooError::Unsupported("unit automorphisms need a cyclic or dihedral factor".into())
        })?;
        if u.gcd(&n) != 1 {
            return Err(ZooError::InvalidAutomorphism(format!("{u} is not a unit mod {n}")));
        }
        Ok(Permutation::from_images_unchecked(
            (0..n).map(|x| (x * u % n) as u32).collect(),
        ))
    };
    let sigma = match auto {
        Auto::Unit(u) => unit_perm(*u)?,
        Auto::Least(ord) => {
            let n = nmod.ok_or_else(|| ZooError::Unsupported("least() needs a cyclic factor".into()))?;
            let u = least_unit_of_order(n, *ord).ok_or_else(|| {
                ZooError::InvalidAutomorphism(format!("no unit of order {ord} mod {n}"))
            })?;
            unit_perm(u)?
        }
        Auto::Perm(v) => Permutation::from_images(v.clone())
            .map_err(|e| ZooError::InvalidAutomorphism(e.to_string()))?,
    };
    if sigma.degree() != d {
        return Err(ZooError::InvalidAutomorphism(format!(
            "automorphism has degree {}, normal factor {d}",
            sigma.degree()
        )));
    }
    let ngroup = PermGroup::new(d, ngens.clone())?;
    for g in &ngens {
        if !ngroup.contains(&g.conjugate(&sigma))? {
            return Err(ZooError::InvalidAutomorphism("does not normalize the factor".into()));
        }
    }
    // Order of sigma as an automorphism: least j with sigma^j centralizing N.
    let sorder = sigma.order_u64();
    let aut_order = (1..=sorder)
        .filter(|j| sorder % j == 0)
        .find(|&j| {
            let s = sigma.pow(j as i64);
            ngens.iter().all(|g| g.commutes_with(&s))
        })
        .unwrap_or(sorder);
    if !k.is_multiple_of(aut_order) {
        return Err(ZooError::InvalidAutomorphism(format!(
            "automorphism order {aut_order} does not divide {k}"
        )));
    }
    // A k-cycle on extra points keeps the complement faithful when sigma
    // alone does not have order k or meets N.
    let plain = PermGroup::new(d, {
        let mut g = ngens.clone();
        g.push(sigma.clone());
        g
    })?;
    let expected = ngroup.order() * BigUint::from(k);
    if sorder == k && plain.order() == expected {
        return Ok((d, plain.generators().to_vec(), ngens, vec![sigma]));
    }
    let total = d + k as usize;
    let mut imgs: Vec<u32> = sigma.images().to_vec();
    imgs.extend((0..k as u32).map(|i| d as u32 + (i + 1) % k as u32));
    let sigma_ext = Permutation::from_images_unchecked(imgs);
    let ngens_ext: Vec<_> = ngens.iter().map(|g| shift(g, 0, total)).collect();
    let mut gens = ngens_ext.clone();
    gens.push(sigma_ext.clone());
    Ok((total, gens, ngens_ext, vec![sigma_ext]))
}

/// Elements of a given order, grouped into conjugacy classes.
#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub representative: String,
    pub size: u64,
    pub centralizer_order: u64,
    pub real: bool,
}

/// Largest group enumerated element by element.
pub const CENSUS_LIMIT: u64 = 2_000_000;

/// All classes of elements of order `n`, in order of first appearance in
/// the chain enumeration.
pub fn order_n_classes(group: &PermGroup, n: u64, budget: &Budget) -> Result<Vec<ClassInfo>, ZooError> {
    let order = group.order();
    if order > BigUint::from(CENSUS_LIMIT) {
        return Err(ZooError::Unsupported(format!("census of a group of order {order}")));
    }
    let gorder = order.to_u64().unwrap();
    let chain = group.chain();
    let mut found: Vec<Permutation> = Vec::new();
    chain.for_each_factors(|f| {
        let g = chain.element_from_factors(f);
        if g.order_u64() == n {
            found.push(g);
        }
    });
    let mut seen: FxHashSet<u64> = FxHashSet::default();
    let mut out = Vec::new();
    for g in &found {
        let class = conjugacy_class(group, g, budget, false)?;
        if seen.contains(&class.fingerprint(chain, g)) {
            continue;
        }
        seen.extend(class.keys().iter().copied());
        out.push(ClassInfo {
            representative: g.to_text(),
            size: class.size(),
            centralizer_order: gorder / class.size(),
            real: class.contains(chain, &g.inverse()),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub count: u64,
    pub class_sizes: Vec<u64>,
}

pub fn involution_census(group: &PermGroup, budget: &Budget) -> Result<Census, ZooError> {
    let classes = order_n_classes(group, 2, budget)?;
    Ok(Census {
        count: classes.iter().map(|c| c.size).sum(),
        class_sizes: classes.iter().map(|c| c.size).collect(),
    })
}

pub fn elements_of_order(group: &PermGroup, n: u64) -> Result<Vec<Permutation>, ZooError> {
    if group.order() > BigUint::from(CENSUS_LIMIT) {
        return Err(ZooError::Unsupported("group too large to enumerate".into()));
    }
    let chain = group.chain();
    let mut out = Vec::new();
    chain.for_each_factors(|f| {
        let g = chain.element_from_factors(f);
        if g.order_u64() == n {
            out.push(g);
        }
    });
    Ok(out)
}

/// `(elements of order n, those commuting with some involution)`.
pub fn order_n_centralizing_involution(group: &PermGroup, n: u64) -> Result<(u64, u64), ZooError> {
    let invs = elements_of_order(group, 2)?;
    let xs = elements_of_order(group, n)?;
    let hit = xs
        .iter()
        .filter(|x| invs.iter().any(|t| t.commutes_with(x)))
        .count();
    Ok((xs.len() as u64, hit as u64))
}

/// The H2 model `(E4 x D_n):C3`: the complement cycles the involutions of
/// `E4` and multiplies the rotations of `D_n` by a unit of order 3, or
/// fixes `D_n` when `trivial_on_dihedral` is set.
pub fn four_group_normalizer_recipe(n: u64, trivial_on_dihedral: bool) -> Result<Recipe, ZooError> {
    let u = if trivial_on_dihedral {
        1
    } else {
        least_unit_of_order(n, 3)
            .ok_or_else(|| ZooError::InvalidAutomorphism(format!("no unit of order 3 mod {n}")))?
    };
    let mut imgs = vec![0, 2, 3, 1];
    imgs.extend((0..n).map(|x| 4 + (x * u % n) as u32));
    Ok(Recipe::Semidirect {
        normal: Box::new(Recipe::Direct(vec![
            Recipe::ElementaryAbelian { p: 2, k: 2 },
            Recipe::Dihedral(n),
        ])),
        k: 3,
        auto: Auto::Perm(imgs),
    })
}

/// `C_n : C_k` with the least unit of order `k`.
pub fn frobenius_recipe(n: u64, k: u64) -> Recipe {
    Recipe::Semidirect {
        normal: Box::new(Recipe::Cyclic(n)),
        k,
        auto: Auto::Least(k),
    }
}

impl Realized {
    pub fn order(&self) -> BigUint {
        self.group.order()
    }
}
