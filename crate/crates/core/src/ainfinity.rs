//! A-infinity structures over F_2: the Hom_- structure of an augmentation,
//! strict unitalization, relation checking, transfer across a contraction by
//! the homological perturbation recursion, and A-infinity morphism checking.
//!
//! Basis vectors are u64 bitmasks (dimension capped at 64), operations are
//! sparse maps from input tuples to output vectors, and every whole-space
//! check runs by enumerating the nonzero instances, which is exhaustive
//! because absent operations contribute nothing.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::augvar::Augmentation;
use crate::dga::FreeDGA;
use crate::linearized::twist;
use crate::ncpoly::Letter;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AInfError {
    #[error("A-infinity machinery requires characteristic two")]
    OddCharacteristic,
    #[error("basis dimension {0} exceeds the 64-element representation")]
    TooBig(usize),
    #[error("input is not an augmentation")]
    NotAugmentation,
    #[error("generator name '1' already taken; cannot unitalize")]
    UnitNameClash,
    #[error("contraction identity fails at basis element {0}")]
    BadContraction(String),
    #[error("operation degree violation on {0:?}")]
    DegreeViolation(Vec<u8>),
}

pub type Tuple = Vec<u8>;

#[derive(Debug, Clone, Serialize)]
pub struct AInfinity {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
    pub unit: Option<usize>,
    pub arity_max: usize,
    /// mu^{len(t)}(t) as an output bitmask; absent tuples map to zero
    pub ops: HashMap<Tuple, u64>,
}

impl AInfinity {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn mu(&self, t: &[u8]) -> u64 {
        self.ops.get(t).copied().unwrap_or(0)
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn show_vector(&self, v: u64) -> String {
        if v == 0 {
            return "0".into();
        }
        let mut parts = Vec::new();
        for i in 0..self.dim() {
            if v >> i & 1 == 1 {
                parts.push(self.names[i].clone());
            }
        }
        parts.join(" + ")
    }

    /// Every mu^d must have degree 2 - d.
    pub fn check_degrees(&self) -> Result<(), AInfError> {
        for (t, &out) in &self.ops {
            let d = t.len() as i64;
            let in_deg: i64 = t.iter().map(|&i| self.degrees[i as usize]).sum();
            let want = in_deg + 2 - d;
            for i in 0..self.dim() {
                if out >> i & 1 == 1 && self.degrees[i] != want {
                    return Err(AInfError::DegreeViolation(t.clone()));
                }
            }
        }
        Ok(())
    }

    /// Nonzero operations, sorted, for reports and golden files.
    pub fn table(&self) -> Vec<(Tuple, u64)> {
        let mut v: Vec<(Tuple, u64)> = self
            .ops
            .iter()
            .filter(|(_, &o)| o != 0)
            .map(|(t, &o)| (t.clone(), o))
            .collect();
        v.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        v
    }

    /// mu^1 homology ranks per degree (over F_2).
    pub fn homology_ranks(&self) -> BTreeMap<i64, usize> {
        let dim = self.dim();
        let mut cols: Vec<u64> = vec![0; dim];
        for (t, &o) in &self.ops {
            if t.len() == 1 {
                cols[t[0] as usize] = o;
            }
        }
        let mut degrees: Vec<i64> = self.degrees.clone();
        degrees.sort();
        degrees.dedup();
        let mut ranks = BTreeMap::new();
        for &d in &degrees {
            // mu^1 raises degree by one (its degree is 2 - 1 = +1)
            let members: Vec<usize> = (0..dim).filter(|&i| self.degrees[i] == d).collect();
            let rank_out = mask_rank(members.iter().map(|&i| cols[i]));
            let rank_in = mask_rank(
                (0..dim)
                    .filter(|&i| self.degrees[i] == d - 1)
                    .map(|i| cols[i]),
            );
            let h = members.len() - rank_out - rank_in;
            if h > 0 {
                ranks.insert(d, h);
            }
        }
        ranks
    }
}

fn mask_rank(vectors: impl Iterator<Item = u64>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            let pivot = 1u64 << (63 - b.leading_zeros());
            if v & pivot != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
        }
    }
    basis.len()
}

/// Reduce `v` against `basis` (echelon masks); returns the remainder.
fn mask_reduce(mut v: u64, basis: &[u64]) -> u64 {
    for &b in basis {
        if b == 0 {
            continue;
        }
        let pivot = 1u64 << (63 - b.leading_zeros());
        if v & pivot != 0 {
            v ^= b;
        }
    }
    v
}

/// The Hom_- structure of an augmentation of an F_2 DGA: basis the Reeb
/// chords with degree shifted up by one; mu^d reads off the word-length-d
/// part of the twisted differential.
pub fn hom_minus_structure(
    dga: &FreeDGA,
    eps: &Augmentation,
    arity_max: usize,
) -> Result<AInfinity, AInfError> {
    if !dga.field.characteristic_two() {
        return Err(AInfError::OddCharacteristic);
    }
    if dga.gens.len() > 64 {
        return Err(AInfError::TooBig(dga.gens.len()));
    }
    let twisted = twist(dga, eps).map_err(|_| AInfError::NotAugmentation)?;
    let mut ops: HashMap<Tuple, u64> = HashMap::new();
    for (e, d) in twisted.twisted_diff.iter().enumerate() {
        for (w, _c) in d.terms() {
            let len = w.gen_count();
            if len == 0 || len > arity_max {
                continue;
            }
            // after twisting, t letters have been evaluated away
            let tuple: Tuple = w
                .letters()
                .iter()
                .map(|l| match l {
                    Letter::Gen(g) => *g as u8,
                    Letter::T(_) => unreachable!("twisted differential has no t letters"),
                })
                .collect();
            *ops.entry(tuple).or_insert(0) ^= 1 << e;
        }
    }
    ops.retain(|_, v| *v != 0);
    let out = AInfinity {
        names: dga.gens.iter().map(|g| g.name.clone()).collect(),
        degrees: dga.gens.iter().map(|g| g.degree + 1).collect(),
        unit: None,
        arity_max,
        ops,
    };
    out.check_degrees()?;
    Ok(out)
}

/// Adjoin a strict unit in degree 0 with the canonical extensions.
pub fn unitalize(a: &AInfinity) -> Result<AInfinity, AInfError> {
    if a.names.iter().any(|n| n == "1") {
        return Err(AInfError::UnitNameClash);
    }
    if a.dim() + 1 > 64 {
        return Err(AInfError::TooBig(a.dim() + 1));
    }
    let mut names = a.names.clone();
    names.push("1".into());
    let mut degrees = a.degrees.clone();
    degrees.push(0);
    let unit = (names.len() - 1) as u8;
    let mut ops = a.ops.clone();
    // mu^2(1, x) = mu^2(x, 1) = x for every basis element including the unit
    for x in 0..names.len() as u8 {
        *ops.entry(vec![unit, x]).or_insert(0) ^= 1 << x;
        if x != unit {
            *ops.entry(vec![x, unit]).or_insert(0) ^= 1 << x;
        }
    }
    ops.retain(|_, v| *v != 0);
    Ok(AInfinity {
        names,
        degrees,
        unit: Some(unit as usize),
        arity_max: a.arity_max,
        ops,
    })
}

/// One violated A-infinity relation: the input tuple and the nonzero sum.
#[derive(Debug, Clone, Serialize)]
pub struct RelationViolation {
    pub tuple: Vec<String>,
    pub residual: String,
}

/// Evaluate every Stasheff relation with total arity <= arity_max by
/// enumerating the nonzero composed instances.
pub fn check_relations(a: &AInfinity) -> Vec<RelationViolation> {
    let mut acc: HashMap<Tuple, u64> = HashMap::new();
    for (outer, &ovec) in &a.ops {
        for (inner, &ivec) in &a.ops {
            let total = outer.len() - 1 + inner.len();
            if total > a.arity_max {
                continue;
            }
            for (p, &slot) in outer.iter().enumerate() {
                if ivec >> slot & 1 == 0 {
                    continue;
                }
                let mut t = Vec::with_capacity(total);
                t.extend_from_slice(&outer[..p]);
                t.extend_from_slice(inner);
                t.extend_from_slice(&outer[p + 1..]);
                *acc.entry(t).or_insert(0) ^= ovec;
            }
        }
    }
    let mut out: Vec<RelationViolation> = acc
        .into_iter()
        .filter(|(_, v)| *v != 0)
        .map(|(t, v)| RelationViolation {
            tuple: t.iter().map(|&i| a.names[i as usize].clone()).collect(),
            residual: a.show_vector(v),
        })
        .collect();
    out.sort_by(|x, y| x.tuple.cmp(&y.tuple));
    out
}

/// A contraction of B onto a subcomplex A: inclusion F1, projection G1, and
/// the degree -1 homotopy T1 with T1 mu1 + mu1 T1 = F1 G1 + id.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub a_names: Vec<String>,
    pub a_degrees: Vec<i64>,
    pub a_unit: Option<usize>,
    /// F1: A basis index -> B vector
    pub include: Vec<u64>,
    /// G1: B basis index -> A vector
    pub project: Vec<u64>,
    /// T1: B basis index -> B vector
    pub homotopy: Vec<u64>,
}

impl Contraction {
    fn apply_t1(&self, v: u64) -> u64 {
        apply_map(&self.homotopy, v)
    }
    fn apply_g1(&self, v: u64) -> u64 {
        apply_map(&self.project, v)
    }

    /// Verify T1 mu1 + mu1 T1 = F1 G1 + id on the full basis.
    pub fn check_identity(&self, b: &AInfinity) -> Result<(), AInfError> {
        let dim = b.dim();
        let mut mu1: Vec<u64> = vec![0; dim];
        for (t, &o) in &b.ops {
            if t.len() == 1 {
                mu1[t[0] as usize] = o;
            }
        }
        for x in 0..dim {
            let lhs = apply_map(&mu1, self.homotopy[x]) ^ self.apply_t1(mu1[x]);
            let rhs = apply_map(&self.include, self.project[x]) ^ (1 << x);
            if lhs != rhs {
                return Err(AInfError::BadContraction(b.names[x].clone()));
            }
        }
        Ok(())
    }
}

fn apply_map(map: &[u64], v: u64) -> u64 {
    let mut out = 0;
    for (i, &m) in map.iter().enumerate() {
        if v >> i & 1 == 1 {
            out ^= m;
        }
    }
    out
}

/// The explicit contraction of the unitalized Hom_- structure of the
/// twist-knot family: A is spanned by {1, a, b, e0}, the homotopy sends
/// e_i to c_i + c_{i+1} + ... + c_n, everything else to zero.
pub fn lambda_contraction(b: &AInfinity, n: u32) -> Contraction {
    let idx = |name: &str| b.index_of(name).expect(name) as usize;
    let a_named = ["1", "a", "b", "e0"];
    let include: Vec<u64> = a_named.iter().map(|nm| 1u64 << idx(nm)).collect();
    let a_degrees: Vec<i64> = a_named.iter().map(|nm| b.degrees[idx(nm)]).collect();
    let mut project = vec![0u64; b.dim()];
    project[idx("1")] = 1 << 0;
    project[idx("a")] = 1 << 1;
    project[idx("b")] = 1 << 2;
    for j in 0..=n {
        project[idx(&format!("e{}", j))] = 1 << 3; // G1(e_j) = e0
    }
    let mut homotopy = vec![0u64; b.dim()];
    for i in 1..=n {
        // T1(e_i) = c_i' = c_i + ... + c_n
        let mut v = 0u64;
        for j in i..=n {
            v |= 1 << idx(&format!("c{}", j));
        }
        homotopy[idx(&format!("e{}", i))] = v;
    }
    Contraction {
        a_names: a_named.iter().map(|s| s.to_string()).collect(),
        a_degrees,
        a_unit: Some(0),
        include,
        project,
        homotopy,
    }
}

/// The transferred structure and the accompanying morphism tower F^d: A -> B.
pub struct Perturbed {
    pub a: AInfinity,
    pub tower: MorphismTower,
}

#[derive(Debug, Clone)]
pub struct MorphismTower {
    pub source: AInfinity,
    pub target: AInfinity,
    /// F^{len(t)}(t) as a target vector; includes the arity-1 entries
    pub maps: HashMap<Tuple, u64>,
}

/// Homological perturbation: transfer the structure of `b` across the
/// contraction, computing mu_A^d and F^d for d <= arity_max via the tree
/// recursion mu_A^d = G1 (sum mu_B^r (F ** blocks)), F^d = T1 (same sum).
pub fn perturb(b: &AInfinity, c: &Contraction, arity_max: usize) -> Result<Perturbed, AInfError> {
    c.check_identity(b)?;
    let adim = c.a_names.len();
    // F entries per arity; start with the inclusion
    let mut f_maps: HashMap<Tuple, u64> = HashMap::new();
    for x in 0..adim as u8 {
        f_maps.insert(vec![x], c.include[x as usize]);
    }
    let mut a_ops: HashMap<Tuple, u64> = HashMap::new();
    // mu_A^1 = G1 mu1 F1
    let mut mu1: Vec<u64> = vec![0; b.dim()];
    for (t, &o) in &b.ops {
        if t.len() == 1 {
            mu1[t[0] as usize] = o;
        }
    }
    for x in 0..adim as u8 {
        let v = c.apply_g1(apply_map(&mu1, c.include[x as usize]));
        if v != 0 {
            a_ops.insert(vec![x], v);
        }
    }

    for d in 2..=arity_max {
        // psi_d(tuple) = sum over stored mu_B^r (r >= 2) of compositions of d
        let mut psi: HashMap<Tuple, u64> = HashMap::new();
        for (bt, &bvec) in &b.ops {
            let r = bt.len();
            if r < 2 {
                continue;
            }
            // compositions t_1 + ... + t_r = d, each >= 1
            if d < r {
                continue;
            }
            let mut comp = vec![1usize; r];
            let extra = d - r;
            // enumerate weak compositions of `extra` over r slots
            enumerate_compositions(r, extra, &mut comp, 0, &mut |comp| {
                // choose an F entry for every slot whose output contains bt[i]
                let mut choices: Vec<Vec<&Tuple>> = Vec::with_capacity(r);
                for (i, &need) in bt.iter().enumerate() {
                    let arity = comp[i];
                    let cands: Vec<&Tuple> = f_maps
                        .iter()
                        .filter(|(t, &v)| t.len() == arity && v >> need & 1 == 1)
                        .map(|(t, _)| t)
                        .collect();
                    if cands.is_empty() {
                        return;
                    }
                    choices.push(cands);
                }
                let mut pick = vec![0usize; r];
                loop {
                    let mut tuple = Vec::with_capacity(d);
                    for (i, &pi) in pick.iter().enumerate() {
                        tuple.extend_from_slice(choices[i][pi]);
                    }
                    *psi.entry(tuple).or_insert(0) ^= bvec;
                    let mut k = 0;
                    loop {
                        if k == r {
                            return;
                        }
                        pick[k] += 1;
                        if pick[k] < choices[k].len() {
                            break;
                        }
                        pick[k] = 0;
                        k += 1;
                    }
                }
            });
        }
        for (t, v) in psi {
            let fv = c.apply_t1(v);
            if fv != 0 {
                f_maps.insert(t.clone(), fv);
            }
            let av = c.apply_g1(v);
            if av != 0 {
                a_ops.insert(t, av);
            }
        }
    }

    let a = AInfinity {
        names: c.a_names.clone(),
        degrees: c.a_degrees.clone(),
        unit: c.a_unit,
        arity_max,
        ops: a_ops,
    };
    let tower = MorphismTower {
        source: a.clone(),
        target: b.clone(),
        maps: f_maps,
    };
    Ok(Perturbed { a, tower })
}

fn enumerate_compositions(
    r: usize,
    extra: usize,
    comp: &mut Vec<usize>,
    slot: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if slot == r - 1 {
        comp[slot] = 1 + extra;
        f(comp);
        return;
    }
    for take in 0..=extra {
        comp[slot] = 1 + take;
        enumerate_compositions(r, extra - take, comp, slot + 1, f);
    }
    comp[slot] = 1;
}

#[derive(Debug, Clone, Serialize)]
pub struct MorphismReport {
    pub violations: Vec<RelationViolation>,
    pub quasi_isomorphism: bool,
}

/// Check the A-infinity morphism equations for the tower through total arity
/// source.arity_max, and whether F^1 induces an isomorphism on mu^1 homology.
pub fn check_morphism(tower: &MorphismTower) -> MorphismReport {
    let src = &tower.source;
    let tgt = &tower.target;
    let arity_max = src.arity_max;
    let mut acc: HashMap<Tuple, u64> = HashMap::new();

    // LHS: mu_tgt^r(F^{t_1} x ... x F^{t_r}) over stored mu_tgt ops
    for (bt, &bvec) in &tgt.ops {
        let r = bt.len();
        for total in r..=arity_max {
            let extra = total - r;
            let mut comp = vec![1usize; r];
            enumerate_compositions(r, extra, &mut comp, 0, &mut |comp| {
                let mut choices: Vec<Vec<&Tuple>> = Vec::with_capacity(r);
                for (i, &need) in bt.iter().enumerate() {
                    let cands: Vec<&Tuple> = tower
                        .maps
                        .iter()
                        .filter(|(t, &v)| t.len() == comp[i] && v >> need & 1 == 1)
                        .map(|(t, _)| t)
                        .collect();
                    if cands.is_empty() {
                        return;
                    }
                    choices.push(cands);
                }
                let mut pick = vec![0usize; r];
                loop {
                    let mut tuple = Vec::with_capacity(total);
                    for (i, &pi) in pick.iter().enumerate() {
                        tuple.extend_from_slice(choices[i][pi]);
                    }
                    *acc.entry(tuple).or_insert(0) ^= bvec;
                    let mut k = 0;
                    loop {
                        if k == r {
                            return;
                        }
                        pick[k] += 1;
                        if pick[k] < choices[k].len() {
                            break;
                        }
                        pick[k] = 0;
                        k += 1;
                    }
                }
            });
        }
    }

    // RHS: F^{s}(..., mu_src^m(block), ...) over stored F entries and mu_src ops
    for (ft, &fvec) in &tower.maps {
        for (p, &slot) in ft.iter().enumerate() {
            for (st, &svec) in &src.ops {
                if svec >> slot & 1 == 0 {
                    continue;
                }
                let total = ft.len() - 1 + st.len();
                if total > arity_max {
                    continue;
                }
                let mut tuple = Vec::with_capacity(total);
                tuple.extend_from_slice(&ft[..p]);
                tuple.extend_from_slice(st);
                tuple.extend_from_slice(&ft[p + 1..]);
                *acc.entry(tuple).or_insert(0) ^= fvec;
            }
        }
    }

    let mut violations: Vec<RelationViolation> = acc
        .into_iter()
        .filter(|(_, v)| *v != 0)
        .map(|(t, v)| RelationViolation {
            tuple: t.iter().map(|&i| src.names[i as usize].clone()).collect(),
            residual: tgt.show_vector(v),
        })
        .collect();
    violations.sort_by(|x, y| x.tuple.cmp(&y.tuple));

    let quasi_isomorphism = f1_is_quasi_iso(tower);
    MorphismReport {
        violations,
        quasi_isomorphism,
    }
}

fn f1_is_quasi_iso(tower: &MorphismTower) -> bool {
    let src = &tower.source;
    let tgt = &tower.target;
    let src_ranks = src.homology_ranks();
    let tgt_ranks = tgt.homology_ranks();
    if src_ranks != tgt_ranks {
        return false;
    }
    // injectivity of the induced map: F1(cycles) independent modulo target
    // boundaries, degree by degree
    let mut src_mu1 = vec![0u64; src.dim()];
    for (t, &o) in &src.ops {
        if t.len() == 1 {
            src_mu1[t[0] as usize] = o;
        }
    }
    let mut tgt_mu1 = vec![0u64; tgt.dim()];
    for (t, &o) in &tgt.ops {
        if t.len() == 1 {
            tgt_mu1[t[0] as usize] = o;
        }
    }
    let f1 = |v: u64| -> u64 {
        let mut out = 0;
        for i in 0..src.dim() {
            if v >> i & 1 == 1 {
                out ^= tower.maps.get(&vec![i as u8]).copied().unwrap_or(0);
            }
        }
        out
    };
    let mut degrees: Vec<i64> = src.degrees.clone();
    degrees.sort();
    degrees.dedup();
    for &d in &degrees {
        // cycles in degree d of the source
        let members: Vec<usize> = (0..src.dim()).filter(|&i| src.degrees[i] == d).collect();
        // kernel basis of mu1 restricted to degree d via column reduction
        let mut echelon: Vec<(u64, u64)> = Vec::new(); // (image, preimage)
        let mut cycles: Vec<u64> = Vec::new();
        for &i in &members {
            let mut img = src_mu1[i];
            let mut pre = 1u64 << i;
            for &(bi, bp) in &echelon {
                let pivot = 1u64 << (63 - bi.leading_zeros());
                if img & pivot != 0 {
                    img ^= bi;
                    pre ^= bp;
                }
            }
            if img == 0 {
                cycles.push(pre);
            } else {
                echelon.push((img, pre));
            }
        }
        // target boundaries into degree d (mu^1 raises degree)
        let mut bdry: Vec<u64> = Vec::new();
        for i in 0..tgt.dim() {
            if tgt.degrees[i] == d - 1 && tgt_mu1[i] != 0 {
                let r = mask_reduce(tgt_mu1[i], &bdry);
                if r != 0 {
                    bdry.push(r);
                }
            }
        }
        // homology classes of the source must map to independent classes
        let mut combined = bdry.clone();
        let mut image_rank = 0usize;
        for &z in &cycles {
            let r = mask_reduce(f1(z), &combined);
            if r != 0 {
                combined.push(r);
                image_rank += 1;
            }
        }
        let h_src = src_ranks.get(&d).copied().unwrap_or(0);
        if image_rank < h_src {
            return false;
        }
    }
    true
}

/// The formal structure with the same complex and product but no higher
/// operations.
pub fn formal_part(a: &AInfinity) -> AInfinity {
    let ops = a
        .ops
        .iter()
        .filter(|(t, _)| t.len() <= 2)
        .map(|(t, &v)| (t.clone(), v))
        .collect();
    AInfinity {
        names: a.names.clone(),
        degrees: a.degrees.clone(),
        unit: a.unit,
        arity_max: a.arity_max,
        ops,
    }
}

/// A tiny deterministic xorshift generator for reproducible randomized tests.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n.max(1)
    }
}

/// A random contraction of `b` onto a homology retract: splits each graded
/// piece as (harmonic) + (coexact lift) + (exact), with randomized choices,
/// and builds F1, G1, T1 from the splitting.
pub fn random_contraction(b: &AInfinity, rng: &mut XorShift) -> Contraction {
    let dim = b.dim();
    let mut mu1 = vec![0u64; dim];
    for (t, &o) in &b.ops {
        if t.len() == 1 {
            mu1[t[0] as usize] = o;
        }
    }
    // per-degree members
    let mut degrees: Vec<i64> = b.degrees.clone();
    degrees.sort();
    degrees.dedup();

    // Pass 1 per degree: run a randomized elimination over a random basis of
    // the degree piece; vectors with independent mu^1 images become the
    // coexact lifts C'_d, the rest span the kernel.
    let mut lifts: HashMap<i64, Vec<u64>> = HashMap::new();
    let mut kernels: HashMap<i64, Vec<u64>> = HashMap::new();
    for &d in &degrees {
        let mut members: Vec<usize> = (0..dim).filter(|&i| b.degrees[i] == d).collect();
        for i in (1..members.len()).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            members.swap(i, j);
        }
        let mut image_ech: Vec<(u64, u64)> = Vec::new(); // (image echelon, source)
        let mut chosen: Vec<u64> = Vec::new();
        let mut kernel: Vec<u64> = Vec::new();
        for (pos, &i) in members.iter().enumerate() {
            // random triangular perturbation keeps the candidate set a basis
            let mut v = 1u64 << i;
            for &j in &members[..pos] {
                if rng.below(2) == 1 {
                    v ^= 1u64 << j;
                }
            }
            let mut img = apply_map(&mu1, v);
            let mut src = v;
            for &(e, s) in &image_ech {
                let pivot = 1u64 << (63 - e.leading_zeros());
                if img & pivot != 0 {
                    img ^= e;
                    src ^= s;
                }
            }
            if img != 0 {
                image_ech.push((img, src));
                chosen.push(src);
            } else {
                kernel.push(src);
            }
        }
        lifts.insert(d, chosen);
        kernels.insert(d, kernel);
    }

    // Pass 2: decompose each degree piece as exact + coexact + harmonic,
    // where harmonic = kernel vectors independent of the exact part.
    let mut include: Vec<u64> = Vec::new();
    let mut a_names: Vec<String> = Vec::new();
    let mut a_degrees: Vec<i64> = Vec::new();
    let mut a_unit = None;
    let mut project = vec![0u64; dim];
    let mut homotopy = vec![0u64; dim];
    for &d in &degrees {
        let members: Vec<usize> = (0..dim).filter(|&i| b.degrees[i] == d).collect();
        let exact: Vec<(u64, u64)> = lifts
            .get(&(d - 1))
            .map(|ls| ls.iter().map(|&l| (apply_map(&mu1, l), l)).collect())
            .unwrap_or_default();
        let coexact: Vec<u64> = lifts.get(&d).cloned().unwrap_or_default();
        let mut ech: Vec<u64> = Vec::new();
        let push = |ech: &mut Vec<u64>, v: u64| -> bool {
            let r = mask_reduce(v, ech);
            if r != 0 {
                ech.push(r);
                true
            } else {
                false
            }
        };
        for &(img, _) in &exact {
            push(&mut ech, img);
        }
        let mut harmonic: Vec<u64> = Vec::new();
        for &k in kernels.get(&d).map(|v| v.as_slice()).unwrap_or(&[]) {
            if push(&mut ech, k) {
                harmonic.push(k);
            }
        }
        for &l in &coexact {
            let fresh = push(&mut ech, l);
            debug_assert!(fresh, "coexact lift dependent on kernel");
        }
        // coordinates: express each basis member in the decomposition by
        // solving over the combined spanning set
        let mut span: Vec<u64> = Vec::new();
        let mut tags: Vec<(usize, usize)> = Vec::new(); // (kind 0=exact,1=coexact,2=harm, index)
        for (ix, &(img, _)) in exact.iter().enumerate() {
            span.push(img);
            tags.push((0, ix));
        }
        for (ix, &l) in coexact.iter().enumerate() {
            span.push(l);
            tags.push((1, ix));
        }
        for (ix, &h) in harmonic.iter().enumerate() {
            span.push(h);
            tags.push((2, ix));
        }
        let h_base = a_names.len();
        for (ix, &h) in harmonic.iter().enumerate() {
            include.push(h);
            a_names.push(format!("h{}_{}", d, ix));
            a_degrees.push(d);
            if let Some(u) = b.unit {
                if h == 1u64 << u {
                    a_unit = Some(h_base + ix);
                }
            }
        }
        // solve coordinates for each basis element of degree d
        for &i in &members {
            let coords = solve_coords(1u64 << i, &span);
            let mut proj = 0u64;
            let mut hom = 0u64;
            for (ci, on) in coords.iter().enumerate() {
                if !on {
                    continue;
                }
                match tags[ci] {
                    (0, ix) => hom ^= exact[ix].1, // T1 of an exact vector is its lift
                    (1, _) => {}
                    (2, ix) => proj ^= 1u64 << (h_base + ix),
                    _ => unreachable!(),
                }
            }
            project[i] = proj;
            homotopy[i] = hom;
        }
    }
    Contraction {
        a_names,
        a_degrees,
        a_unit,
        include,
        project,
        homotopy,
    }
}

/// Solve v = sum of chosen span vectors (F_2); panics if inconsistent, which
/// cannot happen when span contains a basis.
fn solve_coords(v: u64, span: &[u64]) -> Vec<bool> {
    let mut ech: Vec<(u64, Vec<bool>)> = Vec::new();
    for (i, &s) in span.iter().enumerate() {
        let mut r = s;
        let mut combo = vec![false; span.len()];
        combo[i] = true;
        for (e, c) in &ech {
            let pivot = 1u64 << (63 - e.leading_zeros());
            if r & pivot != 0 {
                r ^= e;
                for (x, y) in combo.iter_mut().zip(c.iter()) {
                    *x ^= y;
                }
            }
        }
        if r != 0 {
            ech.push((r, combo));
        }
    }
    let mut r = v;
    let mut combo = vec![false; span.len()];
    for (e, c) in &ech {
        let pivot = 1u64 << (63 - e.leading_zeros());
        if r & pivot != 0 {
            r ^= e;
            for (x, y) in combo.iter_mut().zip(c.iter()) {
                *x ^= y;
            }
        }
    }
    assert_eq!(r, 0, "vector outside span");
    combo
}
