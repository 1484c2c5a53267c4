//! The reproducibility battery: one callable check per headline claim, with
//! pinned scopes and tolerances (everything here is exact arithmetic).

use std::time::Instant;

use serde::Serialize;

use crate::ainfinity::{
    check_morphism, check_relations, formal_part, hom_minus_structure, lambda_contraction, perturb,
    random_contraction, unitalize, AInfinity, MorphismTower, Tuple, XorShift,
};
use crate::augvar::{enumerate_augmentations, homotopy_classes, Augmentation};
use crate::dga::{check_d_squared, compute_differential, family_dga, lambda_dga, FreeDGA};
use crate::field::FiniteField;
use crate::linearized::{bilinearized_complex, duality_report, homology_ranks};
use crate::obstruction::{
    enumerate_factorizations, obstruction_experiment, separability_check, LaurentPoly2,
};
use crate::sweep::SweepConfig;
use crate::twist::lambda_front;

pub const BUDGET: u128 = 1 << 44;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub details: String,
    pub millis: u128,
    pub time_limit_secs: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub fast: bool,
}

pub fn criterion_names() -> Vec<(u32, &'static str)> {
    vec![
        (1, "dga-golden"),
        (2, "augmentation-counts"),
        (3, "homotopy-classification"),
        (4, "linearized-ranks"),
        (5, "ainfinity-table"),
        (6, "minimal-model"),
        (7, "formality"),
        (8, "property-suites"),
        (9, "twist-invariance"),
        (10, "obstruction"),
    ]
}

pub fn run_criterion(id: u32, cfg: SuiteConfig) -> CriterionResult {
    let (name, limit) = match id {
        1 => ("dga-golden", 10),
        2 => ("augmentation-counts", 60),
        3 => ("homotopy-classification", 30),
        4 => ("linearized-ranks", 60),
        5 => ("ainfinity-table", 10),
        6 => ("minimal-model", 30),
        7 => ("formality", 10),
        8 => ("property-suites", 120),
        9 => ("twist-invariance", 60),
        10 => ("obstruction", 120),
        _ => panic!("unknown criterion {}", id),
    };
    let start = Instant::now();
    let (passed, details) = match id {
        1 => dga_golden(cfg),
        2 => augmentation_counts(cfg),
        3 => homotopy_classification(cfg),
        4 => linearized_ranks(cfg),
        5 => ainfinity_table(cfg),
        6 => minimal_model(cfg),
        7 => formality(cfg),
        8 => property_suites(cfg),
        9 => twist_invariance(cfg),
        10 => obstruction(cfg),
        _ => unreachable!(),
    };
    let millis = start.elapsed().as_millis();
    let passed = passed && millis <= (limit as u128) * 1000;
    CriterionResult {
        id,
        name: name.to_string(),
        passed,
        details,
        millis,
        time_limit_secs: limit,
    }
}

pub fn run_suite(cfg: SuiteConfig, only: Option<&str>) -> Vec<CriterionResult> {
    criterion_names()
        .into_iter()
        .filter(|(_, name)| only.is_none_or(|o| *name == o))
        .map(|(id, _)| run_criterion(id, cfg))
        .collect()
}

fn eps_by_ab(dga: &FreeDGA, a_val: u16, b_val: u16) -> Option<Augmentation> {
    let a = dga.gen_index("a")?;
    let b = dga.gen_index("b")?;
    enumerate_augmentations(dga, 0, BUDGET)
        .ok()?
        .into_iter()
        .find(|e| e.value_of(a).0 == a_val && e.value_of(b).0 == b_val)
}

fn dga_golden(cfg: SuiteConfig) -> (bool, String) {
    let f2 = FiniteField::gf2();
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [3u32, 5, 7] {
        let front = match lambda_front(n) {
            Ok(f) => f,
            Err(e) => return (false, format!("front build failed: {}", e)),
        };
        let lag = match front.ng_resolve() {
            Ok(l) => l,
            Err(e) => return (false, format!("resolve failed: {}", e)),
        };
        let computed = match compute_differential(&lag, SweepConfig::default()) {
            Ok(d) => d,
            Err(e) => return (false, format!("differential failed: {}", e)),
        };
        let table = lambda_dga(n, &f2).expect("table");
        let eq = computed.equals_under_matching(&table);
        ok &= eq;
        notes.push(format!("n={} diagram==table: {}", n, eq));
    }
    let max_n = if cfg.fast { 7 } else { 11 };
    let mut n = 3;
    while n <= max_n {
        let front = lambda_front(n).expect("front");
        let lag = front.ng_resolve().expect("resolve");
        let d = compute_differential(&lag, SweepConfig::default()).expect("diff");
        let rep = check_d_squared(&d);
        ok &= rep.ok;
        let t = lambda_dga(n, &f2).expect("table");
        ok &= check_d_squared(&t).ok;
        let f3 = FiniteField::prime(3).unwrap();
        ok &= check_d_squared(&lambda_dga(n, &f3).unwrap()).ok;
        n += 2;
    }
    notes.push(format!("d^2=0 through n={}", max_n));
    (ok, notes.join("; "))
}

fn augmentation_counts(cfg: SuiteConfig) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    // the three F_2 value tables
    let f2 = FiniteField::gf2();
    for n in [3u32, 5, 7, 9] {
        let dga = lambda_dga(n, &f2).unwrap();
        let augs = enumerate_augmentations(&dga, 0, BUDGET).unwrap();
        let mut good = augs.len() == 3;
        for (a_val, b_val) in [(0u16, 1u16), (1, 0), (0, 0)] {
            match eps_by_ab(&dga, a_val, b_val) {
                Some(e) => {
                    good &= e.t_value == f2.one();
                    for i in 1..=n {
                        let ci = dga.gen_index(&format!("c{}", i)).unwrap();
                        good &= e.value_of(ci) == f2.one();
                    }
                }
                None => good = false,
            }
        }
        ok &= good;
        if n == 3 {
            notes.push(format!("F2 tables exact: {}", good));
        }
    }
    // q^2 - q + 1 over q in {2,3,4,5}
    let qs: &[u32] = if cfg.fast { &[2, 3] } else { &[2, 3, 4, 5] };
    let ns: &[u32] = if cfg.fast { &[3, 5, 7] } else { &[3, 5, 7, 9] };
    for &q in qs {
        let (p, k) = if q == 4 { (2u16, 2u32) } else { (q as u16, 1) };
        let f = FiniteField::new(p, k).unwrap();
        for &n in ns {
            let dga = lambda_dga(n, &f).unwrap();
            let count = enumerate_augmentations(&dga, 0, BUDGET).unwrap().len() as u32;
            let want = q * q - q + 1;
            if count != want {
                ok = false;
                notes.push(format!("n={} q={}: {} != {}", n, q, count, want));
            }
        }
    }
    notes.push(format!("counts q^2-q+1 over q in {:?}, n in {:?}", qs, ns));
    (ok, notes.join("; "))
}

fn homotopy_classification(_cfg: SuiteConfig) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for q in [2u16, 3] {
        let f = FiniteField::prime(q).unwrap();
        for n in [3u32, 5] {
            let dga = lambda_dga(n, &f).unwrap();
            let augs = enumerate_augmentations(&dga, 0, BUDGET).unwrap();
            match homotopy_classes(&dga, &augs, 0) {
                Ok(part) => {
                    let want = augs.len();
                    if part.class_count != want {
                        ok = false;
                        notes.push(format!(
                            "n={} q={}: {} classes != {}",
                            n, q, part.class_count, want
                        ));
                    }
                }
                Err(e) => {
                    ok = false;
                    notes.push(format!("n={} q={}: relation check failed: {}", n, q, e));
                }
            }
        }
    }
    notes.push("all homotopy classes are singletons".into());
    (ok, notes.join("; "))
}

fn linearized_ranks(cfg: SuiteConfig) -> (bool, String) {
    let mut ok = true;
    let qs: &[u32] = if cfg.fast { &[2, 3] } else { &[2, 3, 4, 5] };
    let ns: &[u32] = if cfg.fast { &[3, 5] } else { &[3, 5, 7, 9] };
    let mut checked = 0usize;
    for &q in qs {
        let (p, k) = if q == 4 { (2u16, 2u32) } else { (q as u16, 1) };
        let f = FiniteField::new(p, k).unwrap();
        for &n in ns {
            let dga = lambda_dga(n, &f).unwrap();
            for eps in enumerate_augmentations(&dga, 0, BUDGET).unwrap() {
                let cx = match bilinearized_complex(&dga, &eps, &eps, 0) {
                    Ok(c) => c,
                    Err(e) => return (false, format!("complex failed: {}", e)),
                };
                let ranks = homology_ranks(&cx, &f);
                let good =
                    ranks.get(&0) == Some(&2) && ranks.get(&1) == Some(&1) && ranks.len() == 2;
                let report = duality_report(&ranks, 1);
                ok &= good && report.sabloff_ok && report.euler_ok;
                checked += 1;
            }
        }
    }
    (
        ok,
        format!(
            "{} augmentations, all with LCH ranks {{0:2, 1:1}}, Sabloff and Euler checks pass",
            checked
        ),
    )
}

fn lambda_b(n: u32, arity: usize) -> (FreeDGA, AInfinity, AInfinity) {
    let f2 = FiniteField::gf2();
    let dga = lambda_dga(n, &f2).unwrap();
    let eps3 = eps_by_ab(&dga, 0, 0).expect("eps3");
    let bp = hom_minus_structure(&dga, &eps3, arity).unwrap();
    let b = unitalize(&bp).unwrap();
    (dga, bp, b)
}

fn ainfinity_table(_cfg: SuiteConfig) -> (bool, String) {
    let mut ok = true;
    for n in [5u32, 7] {
        let k = (n - 1) / 2;
        let (_dga, bp, _b) = lambda_b(n, 8);
        let ix = |nm: &str| bp.index_of(nm).unwrap();
        let e = |j: u32| 1u64 << ix(&format!("e{}", j));
        let c = |i: u32| ix(&format!("c{}", i));
        for i in 1..n {
            ok &= bp.mu(&[c(i)]) == e(i) | e(i + 1);
        }
        ok &= bp.mu(&[c(n)]) == e(n) | e(0);
        for i in 1..=k {
            ok &= bp.mu(&[c(i), c(i + 1)]) == e(i + 1);
        }
        for i in k + 2..=n {
            ok &= bp.mu(&[c(i), c(i - 1)]) == e(i);
        }
        ok &= bp.mu(&[ix("b"), ix("a")]) == e(1);
        ok &= bp.mu(&[ix("a"), ix("b")]) == e(0);
        ok &= bp.mu(&[ix("b"), ix("a"), c(1)]) == e(1);
        ok &= bp.mu(&[c(n), ix("a"), ix("b")]) == e(0);
        // the displayed lines are everything, and mu^d = 0 for 4 <= d <= 8
        ok &= bp.table().len() == 2 * n as usize + 3;
        ok &= bp.ops.keys().all(|t| t.len() <= 3);
    }
    (
        ok,
        "Hom_- operations match the displayed table; mu^4..mu^8 vanish".into(),
    )
}

fn minimal_model(_cfg: SuiteConfig) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [5u32, 7] {
        let (_dga, _bp, b) = lambda_b(n, 8);
        let c = lambda_contraction(&b, n);
        let p = match perturb(&b, &c, 8) {
            Ok(p) => p,
            Err(e) => return (false, format!("perturbation failed: {}", e)),
        };
        let a = &p.a;
        let ai = |nm: &str| a.index_of(nm).unwrap();
        let (ua, ub, e0) = (ai("a"), ai("b"), ai("e0"));
        let bix = |nm: &str| p.tower.target.index_of(nm).unwrap();
        // F^2(b,a) = c_1' = c_1 + ... + c_n
        let mut c1p = 0u64;
        for j in 1..=n {
            c1p |= 1 << bix(&format!("c{}", j));
        }
        ok &= p.tower.maps.get(&vec![ub, ua]).copied() == Some(c1p);
        // odd F^d vanish (d >= 3)
        ok &= p
            .tower
            .maps
            .iter()
            .all(|(t, &v)| t.len() % 2 == 0 || t.len() == 1 || v == 0);
        // F^{2l}((b,a)^l) = c_1 + c_3 + ... + c_n
        let mut codd = 0u64;
        let mut j = 1;
        while j <= n {
            codd |= 1 << bix(&format!("c{}", j));
            j += 2;
        }
        for l in 2..=4usize {
            let mut t: Tuple = Vec::new();
            for _ in 0..l {
                t.extend_from_slice(&[ub, ua]);
            }
            ok &= p.tower.maps.get(&t).copied().unwrap_or(0) == codd;
        }
        // mu^{2l}((b,a)^{l-1}, b, a) = mu^{2l}((b,a)^{l-1}, a, b) = e0,
        // nothing else outside the unit rows, and mu^1 = 0
        ok &= a.ops.keys().all(|t| t.len() != 1);
        for l in 1..=4usize {
            let mut t1: Tuple = Vec::new();
            for _ in 0..l {
                t1.extend_from_slice(&[ub, ua]);
            }
            ok &= a.mu(&t1) == 1 << e0;
            let mut t2 = t1.clone();
            let len = t2.len();
            t2.swap(len - 2, len - 1);
            ok &= a.mu(&t2) == 1 << e0;
        }
        let unit = a.unit.unwrap() as u8;
        for (t, &v) in &a.ops {
            if v == 0 || t.contains(&unit) {
                continue;
            }
            let pat1: Tuple = (0..t.len())
                .map(|i| if i % 2 == 0 { ub } else { ua })
                .collect();
            let mut pat2 = pat1.clone();
            let len = pat2.len();
            if len >= 2 {
                pat2.swap(len - 2, len - 1);
            }
            if !(t.len() % 2 == 0 && (*t == pat1 || *t == pat2)) {
                ok = false;
                notes.push(format!("n={}: unexpected operation {:?}", n, t));
            }
        }
        ok &= check_relations(a).is_empty();
    }
    notes.push("minimal model table matches through arity 8".into());
    (ok, notes.join("; "))
}

/// Assemble the formality tower F^1 = id, F^3(b, a, e0) = e0 from the minimal
/// model to its formal part.
pub fn build_formality_tower(a: &AInfinity) -> MorphismTower {
    let d = formal_part(a);
    let mut maps = std::collections::HashMap::new();
    for i in 0..a.dim() as u8 {
        maps.insert(vec![i], 1u64 << i);
    }
    let (ua, ub, e0) = (
        a.index_of("a").unwrap(),
        a.index_of("b").unwrap(),
        a.index_of("e0").unwrap(),
    );
    maps.insert(vec![ub, ua, e0], 1 << e0);
    MorphismTower {
        source: a.clone(),
        target: d,
        maps,
    }
}

fn formality(_cfg: SuiteConfig) -> (bool, String) {
    let mut ok = true;
    for n in [5u32, 7] {
        let (_dga, _bp, b) = lambda_b(n, 8);
        let c = lambda_contraction(&b, n);
        let p = perturb(&b, &c, 8).unwrap();
        let tower = build_formality_tower(&p.a);
        let report = check_morphism(&tower);
        ok &= report.violations.is_empty() && report.quasi_isomorphism;
    }
    (
        ok,
        "formality morphism equations hold through arity 8 and F^1 is a quasi-isomorphism".into(),
    )
}

fn property_suites(cfg: SuiteConfig) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    // (a) relations pass on every emitted structure + randomized perturbations
    for n in [5u32, 7] {
        let (_dga, bp, b) = lambda_b(n, 8);
        ok &= check_relations(&bp).is_empty();
        ok &= check_relations(&b).is_empty();
    }
    let (_dga, _bp, b5) = lambda_b(5, 6);
    let reference = b5.homology_ranks();
    let rounds = if cfg.fast { 25 } else { 100 };
    let mut rng = XorShift(0x515C0FFEE);
    let mut rank_failures = 0;
    for _ in 0..rounds {
        let c = random_contraction(&b5, &mut rng);
        match perturb(&b5, &c, 6) {
            Ok(p) => {
                if !check_relations(&p.a).is_empty() {
                    ok = false;
                }
                // (b) homology ranks preserved
                if p.a.homology_ranks() != reference {
                    rank_failures += 1;
                }
            }
            Err(e) => {
                ok = false;
                notes.push(format!("random contraction rejected: {}", e));
            }
        }
    }
    ok &= rank_failures == 0;
    notes.push(format!(
        "{} randomized perturbations: relations hold, ranks preserved",
        rounds
    ));
    // (c) factorization re-multiplication on randomized draws
    let draws = if cfg.fast { 200 } else { 1000 };
    let mut rng = XorShift(0xFEEDFACE);
    let mut done = 0;
    while done < draws {
        let q = [2u16, 3][rng.below(2) as usize];
        let f = FiniteField::prime(q).unwrap();
        let m = rng.below(3) as u32;
        let n = rng.below(3) as u32;
        let alpha = f.elem(1 + rng.below(f.q() as u64 - 1) as u32);
        if m == 0 && n == 0 && alpha == f.one() {
            continue;
        }
        let mut target = LaurentPoly2::monomial(&f, alpha, m as i32, n as i32);
        target.add_term(&f, (0, 0), f.neg(f.one()));
        match enumerate_factorizations(&f, alpha, m, n, 9, 1 << 34) {
            Ok(pairs) => {
                for p in pairs {
                    if p.a.mul(&f, &p.b) != target {
                        ok = false;
                    }
                }
            }
            Err(e) => {
                ok = false;
                notes.push(format!("factorization failed: {}", e));
            }
        }
        done += 1;
    }
    notes.push(format!(
        "{} factorization draws re-multiplied exactly",
        draws
    ));
    (ok, notes.join("; "))
}

fn twist_invariance(_cfg: SuiteConfig) -> (bool, String) {
    let mut ok = true;
    let mut checked = 0;
    for q in [2u16, 3] {
        let f = FiniteField::prime(q).unwrap();
        for n in [5u32, 7] {
            let k = (n - 1) / 2;
            let reference = enumerate_augmentations(&lambda_dga(n, &f).unwrap(), 0, BUDGET)
                .unwrap()
                .len();
            for zp in 0..=k {
                for zm in 0..=k {
                    let dga = family_dga(n, zp, zm, &f, false).unwrap();
                    let count = enumerate_augmentations(&dga, 2, BUDGET).unwrap().len();
                    if count != reference {
                        ok = false;
                    }
                    checked += 1;
                }
            }
        }
    }
    (
        ok,
        format!(
            "{} twist-knot parameter pairs, all m=2 counts equal the reference",
            checked
        ),
    )
}

fn obstruction(_cfg: SuiteConfig) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for q in [2u16, 3] {
        let f = FiniteField::prime(q).unwrap();
        for m in 0..=2u32 {
            for n in 0..=2u32 {
                if m == 0 && n == 0 {
                    continue;
                }
                let rep = match obstruction_experiment(&f, f.one(), m, n, 9, 2, 1 << 34) {
                    Ok(r) => r,
                    Err(e) => {
                        return (false, format!("experiment failed: {}", e));
                    }
                };
                if !rep.consistent {
                    ok = false;
                    notes.push(format!("q={} m={} n={}: {}", q, m, n, rep.verdict));
                }
            }
        }
        // separability matches gcd(m, char) for all m <= 12
        for m in 1..=12u32 {
            for c in f.nonzero_elements() {
                let rep = separability_check(&f, c, m);
                if rep.separable != (m % f.p() as u32 != 0) {
                    ok = false;
                }
            }
        }
    }
    notes.push(
        "all experiments consistent at the stated bounds; separability matches gcd(m, char)".into(),
    );
    (ok, notes.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suite_all_green() {
        let cfg = SuiteConfig { fast: true };
        for r in run_suite(cfg, None) {
            assert!(
                r.passed,
                "criterion {} ({}) failed: {}",
                r.id, r.name, r.details
            );
        }
    }
}
