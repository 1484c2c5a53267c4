//! Twisted differentials, (bi)linearized complexes, homology ranks over a
//! finite field, and the Sabloff duality / Euler characteristic report.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::augvar::Augmentation;
use crate::dga::FreeDGA;
use crate::field::{FiniteField, Fq};
use crate::linalg::Matrix;
use crate::ncpoly::{Letter, NCPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinearizeError {
    #[error("not an augmentation: twisted differential of {0} has constant term")]
    NotAugmentation(String),
    #[error("boundary does not square to zero at degree {0}")]
    NotAComplex(i64),
}

/// The conjugated differential d_eps = Phi_eps d Phi_eps^{-1}: substitute
/// q -> q + eps(q) and t -> eps(t); all constant terms cancel.
#[derive(Debug, Clone)]
pub struct TwistedDGA {
    pub base: FreeDGA,
    pub eps: Augmentation,
    pub twisted_diff: Vec<NCPoly>,
}

pub fn twist(dga: &FreeDGA, eps: &Augmentation) -> Result<TwistedDGA, LinearizeError> {
    let f = &dga.field;
    let mut twisted = Vec::with_capacity(dga.diff.len());
    for (i, d) in dga.diff.iter().enumerate() {
        let td = d.substitute(
            f,
            &|g| NCPoly::gen(f, g).add(f, &NCPoly::scalar(f, eps.value_of(g))),
            &|e| NCPoly::scalar(f, f.pow(eps.t_value, e as i64).expect("t invertible")),
        );
        if !f.is_zero(td.constant_term()) {
            return Err(LinearizeError::NotAugmentation(dga.gens[i].name.clone()));
        }
        twisted.push(td);
    }
    Ok(TwistedDGA {
        base: dga.clone(),
        eps: eps.clone(),
        twisted_diff: twisted,
    })
}

/// A finite graded complex with a degree -1 boundary, graded by Z (m = 0) or
/// cyclically by Z/m.
#[derive(Debug, Clone, Serialize)]
pub struct LinearComplex {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
    pub m: u32,
    /// boundary matrix entries: (source, target, coeff), degree(target) =
    /// degree(source) - 1 (mod m)
    pub entries: Vec<(usize, usize, Fq)>,
}

/// The bilinearized complex of a pair of augmentations: the word
/// a_1..a_k in d q contributes sum_j eps1(a_1..a_{j-1}) eps2(a_{j+1}..a_k)
/// times the letter a_j to d(q). With eps1 = eps2 this is the ordinary
/// linearized complex.
pub fn bilinearized_complex(
    dga: &FreeDGA,
    eps1: &Augmentation,
    eps2: &Augmentation,
    m: u32,
) -> Result<LinearComplex, LinearizeError> {
    let f = &dga.field;
    let n = dga.gens.len();
    let mut entries_map: BTreeMap<(usize, usize), Fq> = BTreeMap::new();
    for (src, d) in dga.diff.iter().enumerate() {
        for (w, c) in d.terms() {
            let letters = w.letters();
            for (j, l) in letters.iter().enumerate() {
                let Letter::Gen(target) = l else { continue };
                let mut coeff = c;
                for pl in &letters[..j] {
                    coeff = f.mul(coeff, eval_letter(f, eps1, pl));
                }
                for sl in &letters[j + 1..] {
                    coeff = f.mul(coeff, eval_letter(f, eps2, sl));
                }
                if !f.is_zero(coeff) {
                    let e = entries_map
                        .entry((src, *target as usize))
                        .or_insert(f.zero());
                    *e = f.add(*e, coeff);
                }
            }
        }
    }
    let entries: Vec<(usize, usize, Fq)> = entries_map
        .into_iter()
        .filter(|&(_, c)| c.0 != 0)
        .map(|((s, t), c)| (s, t, c))
        .collect();
    let degrees: Vec<i64> = (0..n)
        .map(|i| {
            let d = dga.degree_of(i as u32);
            if m == 0 {
                d
            } else {
                d.rem_euclid(m as i64)
            }
        })
        .collect();
    let complex = LinearComplex {
        names: dga.gens.iter().map(|g| g.name.clone()).collect(),
        degrees,
        m,
        entries,
    };
    complex.check_squares_to_zero(f)?;
    Ok(complex)
}

fn eval_letter(f: &FiniteField, eps: &Augmentation, l: &Letter) -> Fq {
    match l {
        Letter::Gen(g) => eps.value_of(*g),
        Letter::T(e) => f.pow(eps.t_value, *e as i64).expect("t invertible"),
    }
}

impl LinearComplex {
    fn degree_class(&self, d: i64) -> i64 {
        if self.m == 0 {
            d
        } else {
            d.rem_euclid(self.m as i64)
        }
    }

    fn boundary_matrix(&self, f: &FiniteField, from_degree: i64) -> (Matrix, usize, usize) {
        let from: Vec<usize> = (0..self.names.len())
            .filter(|&i| self.degrees[i] == from_degree)
            .collect();
        let to_degree = self.degree_class(from_degree - 1);
        let to: Vec<usize> = (0..self.names.len())
            .filter(|&i| self.degrees[i] == to_degree)
            .collect();
        let mut mat = Matrix::zero(to.len(), from.len());
        for &(s, t, c) in &self.entries {
            if self.degrees[s] == from_degree && self.degrees[t] == to_degree {
                let col = from.iter().position(|&x| x == s).unwrap();
                let row = to.iter().position(|&x| x == t).unwrap();
                mat.add_to(f, row, col, c);
            }
        }
        (mat, from.len(), to.len())
    }

    fn check_squares_to_zero(&self, f: &FiniteField) -> Result<(), LinearizeError> {
        // compose boundary twice on every generator and check zero
        let mut by_source: BTreeMap<usize, Vec<(usize, Fq)>> = BTreeMap::new();
        for &(s, t, c) in &self.entries {
            by_source.entry(s).or_default().push((t, c));
        }
        for (s, firsts) in &by_source {
            let mut acc: BTreeMap<usize, Fq> = BTreeMap::new();
            for &(mid, c1) in firsts {
                if let Some(seconds) = by_source.get(&mid) {
                    for &(t, c2) in seconds {
                        let e = acc.entry(t).or_insert(f.zero());
                        *e = f.add(*e, f.mul(c1, c2));
                    }
                }
            }
            if acc.values().any(|c| c.0 != 0) {
                return Err(LinearizeError::NotAComplex(self.degrees[*s]));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|&d| if d.rem_euclid(2) == 0 { 1 } else { -1 })
            .sum()
    }
}

/// Homology ranks per degree by exact Gaussian elimination.
pub fn homology_ranks(complex: &LinearComplex, f: &FiniteField) -> BTreeMap<i64, usize> {
    let mut degrees: Vec<i64> = complex.degrees.clone();
    degrees.sort();
    degrees.dedup();
    let mut ranks = BTreeMap::new();
    for &d in &degrees {
        let dim = complex.degrees.iter().filter(|&&x| x == d).count();
        let (out_mat, _, _) = complex.boundary_matrix(f, d);
        let rank_out = out_mat.rank(f);
        // incoming boundary: from degree class d+1 (or its representative)
        let next = if complex.m == 0 {
            d + 1
        } else {
            (d + 1).rem_euclid(complex.m as i64)
        };
        let rank_in = if complex.degrees.contains(&next) {
            let (in_mat, _, _) = complex.boundary_matrix(f, next);
            in_mat.rank(f)
        } else {
            0
        };
        let h = dim - rank_out - rank_in;
        if h > 0 {
            ranks.insert(d, h);
        }
    }
    ranks
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub ranks: BTreeMap<i64, usize>,
    pub sabloff_ok: bool,
    pub euler_ok: bool,
    pub euler_characteristic: i64,
    pub tb: i64,
    /// derived ranks of H^* Hom_+(eps, eps) = LCH_{1-*}
    pub hom_plus_ranks: BTreeMap<i64, usize>,
}

/// Check Sabloff duality (dim LCH_1 = dim LCH_{-1} + 1, dim LCH_k =
/// dim LCH_{-k} otherwise) and the Euler characteristic against tb.
pub fn duality_report(ranks: &BTreeMap<i64, usize>, tb: i64) -> DualityReport {
    let get = |k: i64| ranks.get(&k).copied().unwrap_or(0);
    let mut sabloff_ok = get(1) == get(-1) + 1;
    let max_deg = ranks.keys().map(|k| k.abs()).max().unwrap_or(0);
    for k in 2..=max_deg {
        if get(k) != get(-k) {
            sabloff_ok = false;
        }
    }
    let euler: i64 = ranks
        .iter()
        .map(|(&k, &r)| {
            if k.rem_euclid(2) == 0 {
                r as i64
            } else {
                -(r as i64)
            }
        })
        .sum();
    let hom_plus_ranks = ranks.iter().map(|(&k, &r)| (1 - k, r)).collect();
    DualityReport {
        ranks: ranks.clone(),
        sabloff_ok,
        euler_ok: euler == tb,
        euler_characteristic: euler,
        tb,
        hom_plus_ranks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augvar::enumerate_augmentations;
    use crate::dga::lambda_dga;

    const BUDGET: u128 = 1 << 40;

    fn eps3(dga: &FreeDGA) -> Augmentation {
        // a, b -> 0; c_i -> 1; t -> whatever the enumeration found
        let augs = enumerate_augmentations(dga, 0, BUDGET).unwrap();
        let a = dga.gen_index("a").unwrap();
        let b = dga.gen_index("b").unwrap();
        augs.into_iter()
            .find(|e| e.value_of(a).0 == 0 && e.value_of(b).0 == 0)
            .expect("eps3 exists")
    }

    #[test]
    fn twisted_differential_examples() {
        let f2 = FiniteField::gf2();
        let dga = lambda_dga(5, &f2).unwrap();
        let eps = eps3(&dga);
        let t = twist(&dga, &eps).unwrap();
        let e1 = dga.gen_index("e1").unwrap() as usize;
        assert_eq!(dga.display_poly(&t.twisted_diff[e1]), "c1 + b*a + b*a*c1");
        let e2 = dga.gen_index("e2").unwrap() as usize;
        assert_eq!(dga.display_poly(&t.twisted_diff[e2]), "c1 + c2 + c1*c2");
    }

    #[test]
    fn twist_by_non_augmentation_fails() {
        let f2 = FiniteField::gf2();
        let dga = lambda_dga(3, &f2).unwrap();
        let bogus = Augmentation {
            m: 0,
            values: vec![f2.zero(); dga.gens.len()],
            t_value: f2.one(),
        };
        assert!(twist(&dga, &bogus).is_err());
    }

    #[test]
    fn zero_augmentation_fixes_differential() {
        // a DGA with no constant terms admits the zero augmentation, and
        // twisting by it changes nothing
        let f2 = FiniteField::gf2();
        let gens = vec![
            crate::dga::Generator {
                name: "x".into(),
                degree: 0,
            },
            crate::dga::Generator {
                name: "y".into(),
                degree: 1,
            },
        ];
        let diff = vec![NCPoly::zero(), NCPoly::gen(&f2, 0)];
        let dga = FreeDGA {
            field: f2.clone(),
            gens,
            diff,
            source: crate::dga::DgaSource::Diagram,
            grading_modulus: 0,
        };
        let zero = Augmentation {
            m: 0,
            values: vec![f2.zero(); 2],
            t_value: f2.one(),
        };
        let t = twist(&dga, &zero).unwrap();
        assert_eq!(t.twisted_diff, dga.diff);
    }

    #[test]
    fn lambda_linearized_ranks() {
        for q in [2u32, 3] {
            let f = FiniteField::prime(q as u16).unwrap();
            for n in [3u32, 5, 7] {
                let dga = lambda_dga(n, &f).unwrap();
                for eps in enumerate_augmentations(&dga, 0, BUDGET).unwrap() {
                    let cx = bilinearized_complex(&dga, &eps, &eps, 0).unwrap();
                    let ranks = homology_ranks(&cx, &f);
                    assert_eq!(ranks.get(&0), Some(&2), "n={} q={}", n, q);
                    assert_eq!(ranks.get(&1), Some(&1), "n={} q={}", n, q);
                    assert_eq!(ranks.len(), 2);
                    let report = duality_report(&ranks, 1);
                    assert!(report.sabloff_ok && report.euler_ok);
                    assert_eq!(report.hom_plus_ranks.get(&0), Some(&1));
                    assert_eq!(report.hom_plus_ranks.get(&1), Some(&2));
                }
            }
        }
    }

    #[test]
    fn unknot_linearized() {
        let d = crate::diagram::FrontDiagram::parse("L1; R1; @1").unwrap();
        let lag = d.ng_resolve().unwrap();
        let dga =
            crate::dga::compute_differential(&lag, crate::sweep::SweepConfig::default()).unwrap();
        let f2 = FiniteField::gf2();
        let augs = enumerate_augmentations(&dga, 0, BUDGET).unwrap();
        let cx = bilinearized_complex(&dga, &augs[0], &augs[0], 0).unwrap();
        let ranks = homology_ranks(&cx, &f2);
        assert_eq!(ranks.get(&1), Some(&1));
        assert_eq!(ranks.len(), 1);
        let report = duality_report(&ranks, -1);
        assert!(report.euler_ok); // chi = -1 = tb
        assert!(report.sabloff_ok); // LCH_1 = 1 = LCH_{-1} + 1 with LCH_{-1} = 0
    }

    #[test]
    fn constructed_duality_failure_flagged() {
        let mut ranks = BTreeMap::new();
        ranks.insert(1i64, 1usize);
        let report = duality_report(&ranks, 1);
        assert!(report.sabloff_ok);
        assert!(!report.euler_ok); // chi = -1 != 1
    }

    #[test]
    fn euler_characteristic_is_presentation_independent() {
        let f3 = FiniteField::prime(3).unwrap();
        let dga = lambda_dga(5, &f3).unwrap();
        let augs = enumerate_augmentations(&dga, 0, BUDGET).unwrap();
        let chi_chords: i64 = dga
            .gens
            .iter()
            .map(|g| if g.degree.rem_euclid(2) == 0 { 1 } else { -1 })
            .sum();
        for (i, e1) in augs.iter().enumerate() {
            let e2 = &augs[(i + 1) % augs.len()];
            if e1.t_value != e2.t_value {
                continue;
            }
            let cx = bilinearized_complex(&dga, e1, e2, 0).unwrap();
            let ranks = homology_ranks(&cx, &f3);
            let chi: i64 = ranks
                .iter()
                .map(|(&k, &r)| {
                    if k.rem_euclid(2) == 0 {
                        r as i64
                    } else {
                        -(r as i64)
                    }
                })
                .sum();
            assert_eq!(chi, chi_chords);
        }
    }
}
