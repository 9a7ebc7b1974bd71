//! Finite generalized quadrangles: incidence structures, the axiom check
//! through the incidence graph, classical fixtures, duality, fixed
//! substructures of automorphisms and the prime-power parameter solver.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuadError {
    #[error("incidence ({0}, {1}) out of range")]
    OutOfRange(u32, u32),
    #[error("repeated incidence ({0}, {1})")]
    Repeated(u32, u32),
    #[error("cannot parse incidence data: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("fixed substructure is not a generalized quadrangle: {0}")]
    Falsified(Diagnosis),
}

/// Points `0..points`, lines `0..lines`, and incidences between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    points: usize,
    lines: usize,
    pairs: Vec<(u32, u32)>,
}

impl IncidenceStructure {
    pub fn new(points: usize, lines: usize, mut pairs: Vec<(u32, u32)>) -> Result<Self, QuadError> {
        for &(p, l) in &pairs {
            if p as usize >= points || l as usize >= lines {
                return Err(QuadError::OutOfRange(p, l));
            }
        }
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(QuadError::Repeated(w[0].0, w[0].1));
        }
        Ok(IncidenceStructure { points, lines, pairs })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn lines(&self) -> usize {
        self.lines
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn is_incident(&self, p: u32, l: u32) -> bool {
        self.pairs.binary_search(&(p, l)).is_ok()
    }

    /// Lines through each point.
    pub fn point_lines(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.points];
        for &(p, l) in &self.pairs {
            out[p as usize].push(l);
        }
        out
    }

    /// Points on each line.
    pub fn line_points(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.lines];
        for &(p, l) in &self.pairs {
            out[l as usize].push(p);
        }
        out
    }

    /// Text format: `points N`, `lines M`, then one `p l` pair per line.
    pub fn parse(text: &str) -> Result<Self, QuadError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let mut header = |key: &str| -> Result<usize, QuadError> {
            let l = lines
                .next()
                .ok_or_else(|| QuadError::Parse(format!("missing '{key}' header")))?;
            let rest = l
                .strip_prefix(key)
                .ok_or_else(|| QuadError::Parse(format!("expected '{key} N', got '{l}'")))?;
            rest.trim()
                .parse()
                .map_err(|_| QuadError::Parse(format!("bad count in '{l}'")))
        };
        let points = header("points")?;
        let nlines = header("lines")?;
        let mut pairs = Vec::new();
        for l in lines {
            let mut it = l.split_whitespace().map(str::parse::<u32>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(p)), Some(Ok(q)), None) => pairs.push((p, q)),
                _ => return Err(QuadError::Parse(format!("bad incidence line '{l}'"))),
            }
        }
        IncidenceStructure::new(points, nlines, pairs)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("points {}\nlines {}\n", self.points, self.lines);
        for (p, l) in &self.pairs {
            s.push_str(&format!("{p} {l}\n"));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GQOrder {
    pub s: u64,
    pub t: u64,
}

impl GQOrder {
    pub fn is_thick(&self) -> bool {
        self.s >= 2 && self.t >= 2
    }
}

impl fmt::Display for GQOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.t)
    }
}

/// Which axiom failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Diagnosis {
    Empty,
    IrregularLines { line: u32, size: usize, expected: usize },
    IrregularPoints { point: u32, degree: usize, expected: usize },
    Degenerate,
    Disconnected,
    Girth { found: usize },
    Diameter { found: usize },
    Counts { points: usize, lines: usize },
}

impl fmt::Display for Diagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnosis::Empty => f.write_str("empty structure"),
            Diagnosis::IrregularLines { line, size, expected } => {
                write!(f, "regularity: line {line} has {size} points, expected {expected}")
            }
            Diagnosis::IrregularPoints { point, degree, expected } => {
                write!(f, "regularity: point {point} is on {degree} lines, expected {expected}")
            }
            Diagnosis::Degenerate => f.write_str("lines with fewer than two points or points on fewer than two lines"),
            Diagnosis::Disconnected => f.write_str("incidence graph is disconnected"),
            Diagnosis::Girth { found } => write!(f, "girth {found}, expected 8"),
            Diagnosis::Diameter { found } => write!(f, "diameter {found}, expected 4"),
            Diagnosis::Counts { points, lines } => {
                write!(f, "{points} points and {lines} lines do not match the order")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GqCheck {
    pub order: Option<GQOrder>,
    pub thin: bool,
    pub diagnosis: Option<Diagnosis>,
}

impl GqCheck {
    fn fail(d: Diagnosis) -> Self {
        GqCheck {
            order: None,
            thin: false,
            diagnosis: Some(d),
        }
    }
}

/// Girth and diameter of the bipartite incidence graph (vertices: points,
/// then lines). `None` when disconnected.
fn girth_and_diameter(s: &IncidenceStructure) -> Option<(usize, usize)> {
    let n = s.points + s.lines;
    let mut adj = vec![Vec::new(); n];
    for &(p, l) in &s.pairs {
        adj[p as usize].push(s.points + l as usize);
        adj[s.points + l as usize].push(p as usize);
    }
    let mut girth = usize::MAX;
    let mut diameter = 0;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for src in 0..n {
        dist.fill(usize::MAX);
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    reached += 1;
                    diameter = diameter.max(dist[v]);
                    queue.push_back(v);
                } else if parent[u] != v {
                    girth = girth.min(dist[u] + dist[v] + 1);
                }
            }
        }
        if reached != n {
            return None;
        }
    }
    Some((girth, diameter))
}

/// `(s,t)` when the incidence graph has diameter 4 and girth 8 and the
/// structure is regular; otherwise the first failed condition.
pub fn gq_check(s: &IncidenceStructure) -> GqCheck {
    if s.points == 0 || s.lines == 0 {
        return GqCheck::fail(Diagnosis::Empty);
    }
    let lp = s.line_points();
    let pl = s.point_lines();
    let k = lp[0].len();
    if let Some((i, l)) = lp.iter().enumerate().find(|(_, l)| l.len() != k) {
        return GqCheck::fail(Diagnosis::IrregularLines {
            line: i as u32,
            size: l.len(),
            expected: k,
        });
    }
    let r = pl[0].len();
    if let Some((i, p)) = pl.iter().enumerate().find(|(_, p)| p.len() != r) {
        return GqCheck::fail(Diagnosis::IrregularPoints {
            point: i as u32,
            degree: p.len(),
            expected: r,
        });
    }
    if k < 2 || r < 2 {
        return GqCheck::fail(Diagnosis::Degenerate);
    }
    let Some((girth, diameter)) = girth_and_diameter(s) else {
        return GqCheck::fail(Diagnosis::Disconnected);
    };
    if girth != 8 {
        return GqCheck::fail(Diagnosis::Girth { found: girth });
    }
    if diameter != 4 {
        return GqCheck::fail(Diagnosis::Diameter { found: diameter });
    }
    let order = GQOrder {
        s: k as u64 - 1,
        t: r as u64 - 1,
    };
    let st1 = order.s * order.t + 1;
    if (order.s + 1) * st1 != s.points as u64 || (order.t + 1) * st1 != s.lines as u64 {
        return GqCheck::fail(Diagnosis::Counts {
            points: s.points,
            lines: s.lines,
        });
    }
    GqCheck {
        order: Some(order),
        thin: !order.is_thick(),
        diagnosis: None,
    }
}

/// Points and lines swapped.
pub fn dual(s: &IncidenceStructure) -> IncidenceStructure {
    let pairs = s.pairs.iter().map(|&(p, l)| (l, p)).collect();
    IncidenceStructure::new(s.lines, s.points, pairs).expect("dual of a valid structure")
}

/// The `n x n` grid: points `(i,j)` at `i*n + j`, rows then columns as
/// lines. A GQ of order `(n-1, 1)`.
pub fn grid(n: usize) -> IncidenceStructure {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = (i * n + j) as u32;
            pairs.push((p, i as u32));
            pairs.push((p, (n + j) as u32));
        }
    }
    IncidenceStructure::new(n * n, 2 * n, pairs).expect("grid incidences are valid")
}

/// Points of PG(3,q) as normalized vectors (first nonzero coordinate 1).
pub fn projective_points(q: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for lead in 0..4 {
        let free = 3 - lead;
        for code in 0..q.pow(free as u32) {
            let mut v = [0u32; 4];
            v[lead] = 1;
            let mut c = code;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = c % q;
                c /= q;
            }
            out.push(v);
        }
    }
    out
}

fn normalize(v: [u32; 4], q: u32) -> [u32; 4] {
    let lead = v.iter().copied().find(|&c| c != 0).expect("nonzero vector");
    // Prime q: the inverse is lead^(q-2).
    let inv = (0..q - 2).fold(1, |acc, _| acc * lead % q);
    v.map(|c| c * inv % q)
}

fn symplectic(x: &[u32; 4], y: &[u32; 4], q: u32) -> u32 {
    (x[0] * y[1] + q * q - x[1] * y[0] % q + x[2] * y[3] + q * q - x[3] * y[2] % q) % q
}

/// The symplectic quadrangle `W(q)` for prime `q`: points of PG(3,q),
/// lines the totally isotropic lines of `x0y1 - x1y0 + x2y3 - x3y2`.
/// Returns the structure and the point coordinates.
pub fn w_q_with_points(q: u32) -> Result<(IncidenceStructure, Vec<[u32; 4]>), QuadError> {
    if q != 2 && q != 3 {
        return Err(QuadError::Unsupported(format!("W({q})")));
    }
    let pts = projective_points(q);
    let index = |v: [u32; 4]| pts.iter().position(|p| *p == v).expect("normalized point");
    let mut lines: BTreeSet<Vec<u32>> = BTreeSet::new();
    for (i, x) in pts.iter().enumerate() {
        for (j, y) in pts.iter().enumerate().skip(i + 1) {
            if symplectic(x, y, q) != 0 {
                continue;
            }
            let mut line: Vec<u32> = vec![i as u32, j as u32];
            for a in 1..q {
                let v = [0, 1, 2, 3].map(|k| (x[k] * a + y[k]) % q);
                line.push(index(normalize(v, q)) as u32);
            }
            line.sort_unstable();
            line.dedup();
            lines.insert(line);
        }
    }
    let mut pairs = Vec::new();
    for (l, line) in lines.iter().enumerate() {
        for &p in line {
            pairs.push((p, l as u32));
        }
    }
    Ok((IncidenceStructure::new(pts.len(), lines.len(), pairs)?, pts))
}

pub fn w_q(q: u32) -> Result<IncidenceStructure, QuadError> {
    Ok(w_q_with_points(q)?.0)
}

/// Permutations of the points and lines of `W(q)` induced by a linear map
/// (row vectors, `v -> v M` mod q).
pub fn w_q_automorphism(
    s: &IncidenceStructure,
    pts: &[[u32; 4]],
    q: u32,
    m: &[[u32; 4]; 4],
) -> (Vec<u32>, Vec<u32>) {
    let image = |v: &[u32; 4]| -> [u32; 4] {
        let w = [0, 1, 2, 3].map(|j| (0..4).map(|i| v[i] * m[i][j]).sum::<u32>() % q);
        normalize(w, q)
    };
    let pmap: Vec<u32> = pts
        .iter()
        .map(|v| pts.iter().position(|p| *p == image(v)).unwrap() as u32)
        .collect();
    let lp = s.line_points();
    let mut keyed: Vec<(Vec<u32>, u32)> = lp
        .iter()
        .enumerate()
        .map(|(l, ps)| (ps.clone(), l as u32))
        .collect();
    keyed.sort();
    let lmap = lp
        .iter()
        .map(|ps| {
            let mut img: Vec<u32> = ps.iter().map(|&p| pmap[p as usize]).collect();
            img.sort_unstable();
            keyed
                .binary_search_by(|(k, _)| k.cmp(&img))
                .map(|i| keyed[i].1)
                .unwrap_or(u32::MAX)
        })
        .collect();
    (pmap, lmap)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSubstructure {
    /// Ambient indices of the fixed points and lines.
    pub points: Vec<u32>,
    pub lines: Vec<u32>,
    /// Induced incidence, reindexed to `0..points.len()`, `0..lines.len()`.
    pub structure: IncidenceStructure,
}

/// Fixed points and lines of the automorphism `(point_map, line_map)`.
pub fn fixed_substructure(
    s: &IncidenceStructure,
    point_map: &[u32],
    line_map: &[u32],
) -> Result<FixedSubstructure, QuadError> {
    if point_map.len() != s.points || line_map.len() != s.lines {
        return Err(QuadError::NotAutomorphism("map sizes differ from the structure".into()));
    }
    let bijective = |m: &[u32]| {
        let mut seen = vec![false; m.len()];
        m.iter().all(|&x| (x as usize) < m.len() && !std::mem::replace(&mut seen[x as usize], true))
    };
    if !bijective(point_map) || !bijective(line_map) {
        return Err(QuadError::NotAutomorphism("maps are not bijections".into()));
    }
    for &(p, l) in &s.pairs {
        if !s.is_incident(point_map[p as usize], line_map[l as usize]) {
            return Err(QuadError::NotAutomorphism(format!("incidence ({p}, {l}) not preserved")));
        }
    }
    let points: Vec<u32> = (0..s.points as u32).filter(|&p| point_map[p as usize] == p).collect();
    let lines: Vec<u32> = (0..s.lines as u32).filter(|&l| line_map[l as usize] == l).collect();
    let mut pidx = vec![u32::MAX; s.points];
    for (i, &p) in points.iter().enumerate() {
        pidx[p as usize] = i as u32;
    }
    let mut lidx = vec![u32::MAX; s.lines];
    for (i, &l) in lines.iter().enumerate() {
        lidx[l as usize] = i as u32;
    }
    let pairs = s
        .pairs
        .iter()
        .filter(|&&(p, l)| pidx[p as usize] != u32::MAX && lidx[l as usize] != u32::MAX)
        .map(|&(p, l)| (pidx[p as usize], lidx[l as usize]))
        .collect();
    let structure = IncidenceStructure::new(points.len(), lines.len(), pairs)?;
    Ok(FixedSubstructure {
        points,
        lines,
        structure,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransitivityWitness {
    pub point_transitive: bool,
    pub line_transitive: bool,
}

/// A fixed substructure with at least two points and two lines, admitting
/// a group transitive on both, must be a GQ; failure is reported as a
/// falsification rather than an ordinary negative answer.
pub fn sub_gq_check(f: &FixedSubstructure, witness: TransitivityWitness) -> Result<GQOrder, QuadError> {
    if f.points.len() < 2 || f.lines.len() < 2 {
        return Err(QuadError::Hypothesis(format!(
            "{} fixed points and {} fixed lines",
            f.points.len(),
            f.lines.len()
        )));
    }
    if !witness.point_transitive || !witness.line_transitive {
        return Err(QuadError::Hypothesis("no group transitive on points and lines".into()));
    }
    let c = gq_check(&f.structure);
    match (c.order, c.diagnosis) {
        (Some(o), _) => Ok(o),
        (None, Some(d)) => Err(QuadError::Falsified(d)),
        (None, None) => Err(QuadError::Falsified(Diagnosis::Empty)),
    }
}

/// All `(s,t)` with `(s+1)(st+1) = p^a` and `(t+1)(st+1) = p^b`, by
/// exhaustive search: `s+1 = p^i` and `t+1 = p^j` must divide the two
/// powers, and the common factor forces `st+1 = p^(a-i) = p^(b-j)`.
pub fn prime_power_gq_solve(p: u64, a: u32, b: u32) -> BTreeSet<(BigUint, BigUint)> {
    let mut out = BTreeSet::new();
    let pb = BigUint::from(p);
    for i in 1..=a {
        for j in 1..=b {
            if a - i != b - j {
                continue;
            }
            let s = pb.pow(i) - 1u32;
            let t = pb.pow(j) - 1u32;
            let st1 = &s * &t + 1u32;
            if (&s + 1u32) * &st1 == pb.pow(a) && (&t + 1u32) * &st1 == pb.pow(b) {
                out.insert((s, t));
            }
        }
    }
    out
}

/// Closed form: no solutions unless `p = 2`; then `t = 1` with `b = a/2+1`
/// (`s = 2^(a/2) - 1`) or `s = 1` with `a = b/2+1` (`t = 2^(b/2) - 1`).
pub fn prime_power_gq_characterization(p: u64, a: u32, b: u32) -> BTreeSet<(BigUint, BigUint)> {
    let mut out = BTreeSet::new();
    if p != 2 {
        return out;
    }
    let two = BigUint::from(2u32);
    if a.is_multiple_of(2) && b == a / 2 + 1 {
        out.insert((two.pow(a / 2) - 1u32, BigUint::one()));
    }
    if b.is_multiple_of(2) && a == b / 2 + 1 {
        out.insert((BigUint::one(), two.pow(b / 2) - 1u32));
    }
    out
}

/// The pairing as literally stated with the cases swapped: `s = 1` with
/// `b = a/2+1`, or `t = 1` with `a = b/2+1`.
pub fn prime_power_gq_swapped_statement(p: u64, a: u32, b: u32) -> BTreeSet<(BigUint, BigUint)> {
    let mut out = BTreeSet::new();
    if p != 2 {
        return out;
    }
    let two = BigUint::from(2u32);
    if a.is_multiple_of(2) && b == a / 2 + 1 {
        out.insert((BigUint::one(), two.pow(a / 2) - 1u32));
    }
    if b.is_multiple_of(2) && a == b / 2 + 1 {
        out.insert((two.pow(b / 2) - 1u32, BigUint::one()));
    }
    out
}
