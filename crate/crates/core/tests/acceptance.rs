//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the lines are
//! always printed.
//!
//! `GQX_EXTENDED=1` also enumerates the second non-real order-3 class of
//! R(27) (about 300 MB of fingerprints).

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use gqx_core::groupzoo::{four_group_normalizer_recipe, frobenius_recipe, realize};
use gqx_core::permgroup::{
    complement_conjugacy_check, coset_action, element_into_complement, is_two_transitive, Budget,
    PermGroup, Permutation,
};
use gqx_core::quadrangle::{
    dual, gq_check, grid, prime_power_gq_characterization, prime_power_gq_solve,
    prime_power_gq_swapped_statement, w_q, Diagnosis, GQOrder, IncidenceStructure,
};
use gqx_core::ree::{
    self, fixed_point_formula_only, involution_centralizer_profile, model_order3_report,
    order3_class_survey, ree_group, verify_order3_in_subgroups, ReeMaxSubgroupKind,
};
use gqx_core::suzuki::{
    self, fixed_point_profile, suzuki_group, verify_involution_centralizers,
    verify_involution_classes, SzMaxSubgroupKind,
};
use gqx_core::verifier::{run_exclusion, to_report_json, Family, RunOptions};

/// `(criterion, label, passed, detail)`.
type Piece = (u8, String, bool, String);

fn piece(c: u8, label: &str, ok: bool, detail: impl Into<String>) -> Piece {
    (c, label.to_string(), ok, detail.into())
}

fn fail(c: u8, label: &str, e: impl std::fmt::Display) -> Piece {
    (c, label.to_string(), false, format!("error: {e}"))
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn extended() -> bool {
    std::env::var("GQX_EXTENDED").is_ok_and(|v| v == "1")
}

/// Everything on one Suzuki group: construction, lemma suite, fixed
/// points, 2-transitivity, and for Sz(8) the C13:C4 complement checks.
fn suzuki_worker(m: u32) -> Vec<Piece> {
    let budget = Budget::default();
    let mut out = Vec::new();
    let label = format!("Sz({})", 1u32 << (2 * m + 1));
    let t = Instant::now();
    let sz = match suzuki_group(m) {
        Ok(sz) => sz,
        Err(e) => return vec![fail(1, &label, e)],
    };
    let took = t.elapsed();
    let ok = sz.group.order() == sz.model.order() && took < Duration::from_secs(10);
    out.push(piece(1, &label, ok, format!("|G| = {} in {}", sz.group.order(), secs(took))));

    let two = suzuki::is_natural_two_transitive(&sz);
    out.push(piece(10, &label, two, format!("degree {} 2-transitive: {two}", sz.model.degree())));

    let kinds = [
        SzMaxSubgroupKind::Dihedral,
        SzMaxSubgroupKind::FrobeniusPlus,
        SzMaxSubgroupKind::FrobeniusMinus,
    ];
    let subs = match kinds
        .iter()
        .map(|&k| sz.maximal_subgroup(k, &budget))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(s) => s,
        Err(e) => {
            out.push(fail(2, &label, e));
            return out;
        }
    };
    let refs: Vec<_> = subs.iter().collect();
    match (
        verify_involution_classes(&sz, &refs, &budget),
        verify_involution_centralizers(&sz, &refs, &budget),
    ) {
        (Ok(classes), Ok(cents)) => {
            let q2 = (sz.q() as u64).pow(2).to_string();
            let expected = [q2.as_str(), "2", "4", "4"];
            let cent_ok = cents.len() == 4
                && cents.iter().zip(expected).all(|(c, e)| c.holds && c.expected == e);
            let ok = classes.iter().all(|c| c.holds && c.classes == 1) && cent_ok;
            let cs: Vec<String> = cents.iter().map(|c| c.observed.clone()).collect();
            out.push(piece(
                2,
                &label,
                ok,
                format!(
                    "one involution class of size {}; centralizers {}",
                    classes[0].class_sizes[0],
                    cs.join("/")
                ),
            ));
        }
        (Err(e), _) | (_, Err(e)) => out.push(fail(2, &label, e)),
    }

    let profiled: &[SzMaxSubgroupKind] = if m == 1 { &kinds } else { &kinds[..1] };
    let expected_index: &[&str] = if m == 1 { &["2080", "560", "1456"] } else { &["524800"] };
    let expected_fixed = if m == 1 { ["32", "16", "16"] } else { ["512", "", ""] };
    for (i, &k) in profiled.iter().enumerate() {
        let t = Instant::now();
        match fixed_point_profile(&sz, k, &budget) {
            Ok(p) => {
                let ok = p.holds
                    && p.status == "exact"
                    && p.index == expected_index[i]
                    && p.observed.as_deref() == Some(expected_fixed[i])
                    && p.centralizer_orbits == Some(1)
                    && t.elapsed() < Duration::from_secs(600);
                out.push(piece(
                    3,
                    &format!("{label} {k}"),
                    ok,
                    format!(
                        "{}/{} fixed, formula {}, centralizer index {}, orbits {} in {}",
                        p.observed.unwrap_or_default(),
                        p.index,
                        p.formula.unwrap_or_default(),
                        p.centralizer_index.unwrap_or_default(),
                        p.centralizer_orbits.unwrap_or(0),
                        secs(t.elapsed())
                    ),
                ));
            }
            Err(e) => out.push(fail(3, &label, e)),
        }
    }

    if m == 1 {
        match coset_action(&sz.group, subs[0].group.generators(), &budget) {
            Ok(action) => {
                let two = is_two_transitive(&action, &sz.group);
                out.push(piece(
                    10,
                    "Sz(8) on D14 cosets",
                    !two && action.degree() == 2080,
                    format!("degree {} 2-transitive: {two}", action.degree()),
                ));
            }
            Err(e) => out.push(fail(10, "Sz(8) on D14 cosets", e)),
        }
        let f = &subs[1];
        out.push(schur_zassenhaus("C13:C4 <= Sz(8)", &f.group, &f.normal, &f.complement));
    }
    out
}

/// Exhaustive corollary checks on `N:K`: every element of order dividing
/// `|K|` is conjugated into `K`, and every cyclic subgroup of order `|K|`
/// is conjugate to `K`.
fn schur_zassenhaus(label: &str, whole: &PermGroup, normal: &[Permutation], complement: &[Permutation]) -> Piece {
    let run = || -> Result<(usize, usize), String> {
        let k = whole.subgroup(complement.to_vec()).map_err(|e| e.to_string())?;
        let k_order = k.order();
        let mut into = 0;
        let mut conj = 0;
        for g in whole.elements() {
            let o = g.order();
            if (&k_order % &o) != BigUint::from(0u32) {
                continue;
            }
            let h = element_into_complement(whole, normal, complement, &g).map_err(|e| e.to_string())?;
            if !k.contains(&g.conjugate(&h.inverse())).map_err(|e| e.to_string())? {
                return Err("witness does not conjugate into K".into());
            }
            into += 1;
            if o == k_order {
                let probe = whole.subgroup(vec![g.clone()]).map_err(|e| e.to_string())?;
                complement_conjugacy_check(whole, normal, complement, &probe)
                    .map_err(|e| e.to_string())?
                    .ok_or("complement not conjugate")?;
                conj += 1;
            }
        }
        Ok((into, conj))
    };
    match run() {
        Ok((into, conj)) => piece(
            11,
            label,
            conj > 0,
            format!("{into} elements conjugated into K, {conj} complements conjugate to K"),
        ),
        Err(e) => fail(11, label, e),
    }
}

fn ree_worker() -> Vec<Piece> {
    let budget = Budget::default();
    let mut out = Vec::new();
    let t = Instant::now();
    let ree = match ree_group(1) {
        Ok(r) => r,
        Err(e) => return vec![fail(1, "R(27)", e)],
    };
    let took = t.elapsed();
    let ok = ree.group.order() == BigUint::from(10_073_444_472u64) && took < Duration::from_secs(300);
    out.push(piece(1, "R(27)", ok, format!("|G| = {} in {}", ree.group.order(), secs(took))));

    let two = ree::is_natural_two_transitive(&ree);
    out.push(piece(10, "R(27)", two, format!("degree {} 2-transitive: {two}", ree.model.degree())));

    let t = Instant::now();
    let ext = extended();
    let nonreal = match order3_class_survey(&ree, &budget, ext) {
        Ok((s, nonreal)) => {
            let c = &s.classes;
            let ok = s.holds
                && c.len() == 3
                && c[0].size == "511784"
                && c[0].centralizer_order == "19683"
                && c[0].real
                && c[1].size == "6909084"
                && c[1].centralizer_order == "1458"
                && !c[1].real
                && c[2].centralizer_order == "1458"
                && !c[2].real
                && (!ext || (c[2].size == "6909084" && s.inverse_pairing == Some(true)))
                && t.elapsed() < Duration::from_secs(600);
            let sizes: Vec<String> = c
                .iter()
                .map(|r| format!("{} ({}, |C| {}, {})", r.size, if r.real { "real" } else { "non-real" }, r.centralizer_order, r.source))
                .collect();
            out.push(piece(
                4,
                if ext { "R(27) extended" } else { "R(27)" },
                ok,
                format!("classes {}; total {} in {}", sizes.join(", "), s.total_order3, secs(t.elapsed())),
            ));
            Some(nonreal)
        }
        Err(e) => {
            out.push(fail(4, "R(27)", e));
            None
        }
    };

    if let Some(nonreal) = nonreal {
        let t = Instant::now();
        let res = ree
            .involution_centralizer(&budget)
            .map_err(|e| e.to_string())
            .and_then(|h| involution_centralizer_profile(&ree, &h, &nonreal, &budget).map_err(|e| e.to_string()));
        match res {
            Ok(p) => {
                let ok = p.holds
                    && p.index == "512487"
                    && p.observed.as_deref() == Some("27")
                    && p.centralizer_orbits == Some(1)
                    && t.elapsed() < Duration::from_secs(900);
                out.push(piece(
                    6,
                    "R(27) on C2xPSL(2,27) cosets",
                    ok,
                    format!(
                        "{}/{} fixed, formula {}, centralizer index {}, orbits {}, fusion {:?} in {}",
                        p.observed.unwrap_or_default(),
                        p.index,
                        p.formula,
                        p.centralizer_index.unwrap_or_default(),
                        p.centralizer_orbits.unwrap_or(0),
                        p.fusion_holds,
                        secs(t.elapsed())
                    ),
                ));
            }
            Err(e) => out.push(fail(6, "R(27) involution centralizer", e)),
        }
    }
    out
}

fn model_worker() -> Vec<Piece> {
    let budget = Budget::default();
    let mut out = Vec::new();
    let t = Instant::now();
    match verify_order3_in_subgroups(1, &budget) {
        Ok(models) => {
            let want: [(&str, &str, u64); 4] = [
                ("involution-centralizer", "19656", 54),
                ("four-group-normalizer", "168", 6),
                ("frobenius+", "222", 6),
                ("frobenius-", "114", 6),
            ];
            let mut ok = models.len() == 4;
            let mut parts = Vec::new();
            for (r, (kind, order, c)) in models.iter().zip(want) {
                ok &= r.holds
                    && r.kind == kind
                    && r.order == order
                    && r.order3_classes == 2
                    && r.centralizer_orders == vec![c, c]
                    && r.order3_elements == r.centralizing_an_involution;
                if kind == "four-group-normalizer" {
                    ok &= r.involutions == 31;
                }
                parts.push(format!("{} |H|={} |C|={:?} inv={}", r.kind, r.order, r.centralizer_orders, r.involutions));
            }
            let negative = four_group_normalizer_recipe(7, true)
                .map_err(|e| e.to_string())
                .and_then(|rec| model_order3_report("trivial D-action", &rec, 6, &budget).map_err(|e| e.to_string()));
            match negative {
                Ok(n) => {
                    ok &= !n.holds;
                    parts.push(format!("negative control |C|={:?} rejected: {}", n.centralizer_orders, !n.holds));
                }
                Err(e) => {
                    ok = false;
                    parts.push(format!("negative control error: {e}"));
                }
            }
            ok &= t.elapsed() < Duration::from_secs(60);
            parts.push(secs(t.elapsed()));
            out.push(piece(5, "q=27 models", ok, parts.join("; ")));

            let mut ok6 = true;
            let mut parts6 = Vec::new();
            for k in [
                ReeMaxSubgroupKind::FourGroupNormalizer,
                ReeMaxSubgroupKind::FrobeniusPlus,
                ReeMaxSubgroupKind::FrobeniusMinus,
            ] {
                let model = models.iter().find(|r| r.kind == k.to_string());
                match fixed_point_formula_only(1, k, model) {
                    Ok(p) => {
                        ok6 &= p.holds && p.fusion_holds == Some(true) && p.formula == "243";
                        parts6.push(format!("{k} {} (fusion {:?})", p.formula, p.fusion_holds));
                    }
                    Err(e) => {
                        ok6 = false;
                        parts6.push(format!("{k} error: {e}"));
                    }
                }
            }
            out.push(piece(6, "R(27) formula-level kinds", ok6, parts6.join(", ")));
        }
        Err(e) => out.push(fail(5, "q=27 models", e)),
    }

    for (label, recipe) in [
        ("C7:C3", frobenius_recipe(7, 3)),
        ("(E4xD7):C3", four_group_normalizer_recipe(7, false).expect("recipe")),
    ] {
        match realize(&recipe) {
            Ok(r) => out.push(schur_zassenhaus(label, &r.group, &r.normal_gens, &r.complement_gens)),
            Err(e) => out.push(fail(11, label, e)),
        }
    }
    out
}

fn solver_pieces() -> Vec<Piece> {
    let mut count = 0;
    let mut agree = 0;
    let mut p_not_2_empty = true;
    let mut thin_only = true;
    let mut swapped_differs = 0;
    for p in [2u64, 3, 5] {
        for a in 1..=20 {
            for b in 1..=20 {
                let oracle = prime_power_gq_solve(p, a, b);
                count += 1;
                if oracle == prime_power_gq_characterization(p, a, b) {
                    agree += 1;
                }
                if p != 2 && !oracle.is_empty() {
                    p_not_2_empty = false;
                }
                let one = BigUint::from(1u32);
                thin_only &= oracle.iter().all(|(s, t)| *s == one || *t == one);
                if oracle != prime_power_gq_swapped_statement(p, a, b) {
                    swapped_differs += 1;
                }
            }
        }
    }
    let example = prime_power_gq_solve(2, 4, 3);
    let example_ok = example.len() == 1 && example.contains(&(BigUint::from(3u32), BigUint::from(1u32)));
    let ok = count == 1200 && agree == 1200 && p_not_2_empty && thin_only && example_ok && swapped_differs > 0;
    vec![piece(
        7,
        "solver",
        ok,
        format!(
            "{agree}/{count} agree; (2,4,3) -> (3,1); literal statement pairing disagrees with the oracle on {swapped_differs} instances"
        ),
    )]
}

fn quadrangle_pieces() -> Vec<Piece> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (q, n) in [(2u32, 15usize), (3, 40)] {
        let w = w_q(q).expect("W(q)");
        let c = gq_check(&w);
        let o = GQOrder { s: q as u64, t: q as u64 };
        let counts = (o.s + 1) * (o.s * o.t + 1) == w.points() as u64 && (o.t + 1) * (o.s * o.t + 1) == w.lines() as u64;
        ok &= c.order == Some(o) && w.points() == n && w.lines() == n && counts && !c.thin;
        ok &= gq_check(&dual(&w)).order == Some(o) && dual(&dual(&w)) == w;
        parts.push(format!("W({q}) {o}"));
    }
    for n in [2usize, 3, 4, 5] {
        let g = grid(n);
        let c = gq_check(&g);
        let o = GQOrder { s: n as u64 - 1, t: 1 };
        ok &= c.order == Some(o) && c.thin;
        ok &= gq_check(&dual(&g)).order == Some(GQOrder { s: 1, t: n as u64 - 1 }) && dual(&dual(&g)) == g;
    }
    parts.push("grids 2..5 thin, duals (1,n-1)".into());

    let w2 = w_q(2).unwrap();
    let mut pairs = w2.pairs().to_vec();
    pairs.remove(3);
    let deleted = IncidenceStructure::new(15, 15, pairs).unwrap();
    let d1 = gq_check(&deleted).diagnosis;
    ok &= matches!(d1, Some(Diagnosis::IrregularLines { .. } | Diagnosis::IrregularPoints { .. }));

    let fano_lines = [[0u32, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    let fano = IncidenceStructure::new(
        7,
        7,
        fano_lines
            .iter()
            .enumerate()
            .flat_map(|(l, ps)| ps.iter().map(move |&p| (p, l as u32)))
            .collect(),
    )
    .unwrap();
    let d2 = gq_check(&fano).diagnosis;
    ok &= d2 == Some(Diagnosis::Girth { found: 6 });

    let g = grid(3);
    let mut two = g.pairs().to_vec();
    two.extend(g.pairs().iter().map(|&(p, l)| (p + 9, l + 6)));
    let disjoint = IncidenceStructure::new(18, 12, two).unwrap();
    let d3 = gq_check(&disjoint).diagnosis;
    ok &= d3 == Some(Diagnosis::Disconnected);
    parts.push(format!(
        "mutations: {}, {}, {}",
        d1.map(|d| d.to_string()).unwrap_or_default(),
        d2.map(|d| d.to_string()).unwrap_or_default(),
        d3.map(|d| d.to_string()).unwrap_or_default()
    ));
    vec![piece(8, "quadrangles", ok, parts.join("; "))]
}

fn exclusion_pieces() -> Vec<Piece> {
    let t = Instant::now();
    let opts = RunOptions::default();
    let fams = [Family::Suzuki, Family::Ree];
    let run = || run_exclusion(&fams, 1, 50, &opts).map(|r| (r.clone(), to_report_json(&r)));
    match (run(), run()) {
        (Ok((r1, j1)), Ok((_, j2))) => {
            let took = t.elapsed();
            let pairs: usize = r1.runs.iter().map(|r| r.pairs.len()).sum();
            let all = r1
                .runs
                .iter()
                .all(|r| r.verdict == "excluded" && r.pairs.iter().all(|p| p.verdict == "excluded"));
            let ok = r1.excluded() && all && r1.runs.len() == 100 && j1 == j2 && took < Duration::from_secs(5);
            vec![piece(
                9,
                "exclusion m=1..50",
                ok,
                format!(
                    "{} runs, {pairs} stabilizer pairs excluded; reports identical: {}; two runs in {}",
                    r1.runs.len(),
                    j1 == j2,
                    secs(took)
                ),
            )]
        }
        (Err(e), _) | (_, Err(e)) => vec![fail(9, "exclusion", e)],
    }
}

const TITLES: [&str; 11] = [
    "group construction exactness",
    "Suzuki involution lemmas",
    "Suzuki fixed-point counts",
    "Ree order-3 classes",
    "q=27 maximal-subgroup models",
    "Ree fixed-point counts",
    "prime-power solver",
    "quadrangle checks",
    "end-to-end exclusion",
    "2-transitivity exclusions",
    "Schur-Zassenhaus corollaries",
];

fn main() {
    let t = Instant::now();
    let pieces: Vec<Piece> = std::thread::scope(|s| {
        let jobs: Vec<Box<dyn FnOnce() -> Vec<Piece> + Send>> = vec![
            Box::new(ree_worker),
            Box::new(|| suzuki_worker(2)),
            Box::new(|| suzuki_worker(1)),
            Box::new(model_worker),
            Box::new(|| {
                let mut v = solver_pieces();
                v.extend(quadrangle_pieces());
                v.extend(exclusion_pieces());
                v
            }),
        ];
        let handles: Vec<_> = jobs.into_iter().map(|j| s.spawn(j)).collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap_or_else(|_| vec![fail(0, "worker", "panicked")]))
            .collect()
    });
    let mut by: BTreeMap<u8, Vec<&Piece>> = BTreeMap::new();
    for p in &pieces {
        by.entry(p.0).or_default().push(p);
    }
    let mut all = true;
    for (i, title) in TITLES.iter().enumerate() {
        let c = i as u8 + 1;
        let ps = by.get(&c).cloned().unwrap_or_default();
        let ok = !ps.is_empty() && ps.iter().all(|p| p.2);
        all &= ok;
        println!("{} criterion {:>2}: {}", if ok { "PASS" } else { "FAIL" }, c, title);
        for p in ps {
            println!("        {} {}: {}", if p.2 { "ok  " } else { "FAIL" }, p.1, p.3);
        }
    }
    if let Some(ps) = by.get(&0) {
        all = false;
        for p in ps {
            println!("FAIL {}: {}", p.1, p.3);
        }
    }
    println!("acceptance: {} in {}", if all { "PASS" } else { "FAIL" }, secs(t.elapsed()));
    if !all {
        std::process::exit(1);
    }
}
