//! Randomized property suites over the exact kernels.

use proptest::prelude::*;

use legch_core::augvar::{count_system_points, defining_system, enumerate_augmentations};
use legch_core::dga::{check_d_squared, compute_differential, family_dga, lambda_dga};
use legch_core::field::FiniteField;
use legch_core::linearized::{bilinearized_complex, homology_ranks};
use legch_core::ncpoly::{Letter, NCPoly, Word};
use legch_core::sweep::SweepConfig;
use legch_core::twist::{twist_knot_front, TwistKnotParams};

const BUDGET: u128 = 1 << 40;

fn small_field() -> impl Strategy<Value = FiniteField> {
    prop_oneof![
        Just(FiniteField::prime(2).unwrap()),
        Just(FiniteField::prime(3).unwrap()),
        Just(FiniteField::prime(5).unwrap()),
        Just(FiniteField::new(2, 2).unwrap()),
        Just(FiniteField::new(3, 2).unwrap()),
        Just(FiniteField::new(2, 3).unwrap()),
    ]
}

proptest! {
    #[test]
    fn field_axioms(f in small_field(), seed in any::<u64>()) {
        let q = f.q() as u64;
        let a = f.elem((seed % q) as u32);
        let b = f.elem((seed / q % q) as u32);
        let c = f.elem((seed / (q * q) % q) as u32);
        // associativity and commutativity
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        // distributivity
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        // units and inverses
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !f.is_zero(a) {
            let inv = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, inv), f.one());
        }
    }

    #[test]
    fn ncpoly_mul_is_associative(seed in any::<u64>()) {
        let f = FiniteField::prime(3).unwrap();
        let rand_poly = |mut s: u64| {
            let mut p = NCPoly::zero();
            for _ in 0..(s % 4 + 1) {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                let mut letters = Vec::new();
                for _ in 0..(s % 4) {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                    if s % 5 == 0 {
                        letters.push(Letter::T(if s % 2 == 0 { 1 } else { -1 }));
                    } else {
                        letters.push(Letter::Gen((s % 3) as u32));
                    }
                }
                p.add_term(&f, Word::from_letters(letters), f.elem((s % 2 + 1) as u32));
            }
            p
        };
        let a = rand_poly(seed);
        let b = rand_poly(seed.rotate_left(17));
        let c = rand_poly(seed.rotate_left(37));
        prop_assert_eq!(a.mul(&f, &b).mul(&f, &c), a.mul(&f, &b.mul(&f, &c)));
        // t t^{-1} collapses inside products
        let t = NCPoly::t_power(&f, 1);
        let tinv = NCPoly::t_power(&f, -1);
        let u = a.mul(&f, &t).mul(&f, &tinv);
        prop_assert_eq!(u, a);
    }

    #[test]
    fn twist_fronts_have_d_squared_zero(
        n_index in 0usize..5,
        zp_seed in any::<u32>(),
        zm_seed in any::<u32>(),
    ) {
        let n = [3u32, 5, 7, 9, 11][n_index];
        let k = (n - 1) / 2;
        let params = TwistKnotParams {
            n,
            z_plus: zp_seed % (k + 1),
            z_minus: zm_seed % (k + 1),
        };
        let front = twist_knot_front(params).unwrap();
        let (tb, rot) = front.classical_invariants().unwrap();
        prop_assert_eq!((tb, rot), (1, 0));
        let lag = front.ng_resolve().unwrap();
        prop_assert_eq!(lag.chords.len(), (2 * n + 3) as usize);
        let dga = compute_differential(&lag, SweepConfig::default()).unwrap();
        prop_assert!(check_d_squared(&dga).ok);
        // Euler characteristic of the chord census equals tb
        let chi: i64 = dga
            .gens
            .iter()
            .map(|g| if g.degree.rem_euclid(2) == 0 { 1 } else { -1 })
            .sum();
        prop_assert_eq!(chi, tb);
    }

    #[test]
    fn enumeration_agrees_with_defining_system(
        q_index in 0usize..2,
        n_index in 0usize..2,
        m_index in 0usize..2,
    ) {
        let q = [2u16, 3][q_index];
        let n = [3u32, 5][n_index];
        let m = [0u32, 2][m_index];
        let f = FiniteField::prime(q).unwrap();
        let dga = lambda_dga(n, &f).unwrap();
        let augs = enumerate_augmentations(&dga, m, BUDGET).unwrap();
        let system = defining_system(&dga, m).unwrap();
        prop_assert_eq!(count_system_points(&system, &f) as usize, augs.len());
    }

    #[test]
    fn augmentations_annihilate_every_differential(
        q_index in 0usize..2,
        zp in 0u32..3,
        zm in 0u32..3,
    ) {
        let q = [2u16, 3][q_index];
        let f = FiniteField::prime(q).unwrap();
        let dga = family_dga(5, zp.min(2), zm.min(2), &f, false).unwrap();
        for aug in enumerate_augmentations(&dga, 2, BUDGET).unwrap() {
            prop_assert!(aug.is_augmentation(&dga));
        }
    }

    #[test]
    fn rejected_factor_candidates_really_fail(seed in any::<u64>()) {
        // multiply random non-returned candidate pairs and confirm they miss
        // the target, complementing the exhaustiveness of the enumeration
        use legch_core::obstruction::{enumerate_factorizations, LaurentPoly2};
        let f = FiniteField::prime(2).unwrap();
        let (m, n) = (2u32, 1u32);
        let mut target = LaurentPoly2::monomial(&f, f.one(), m as i32, n as i32);
        target.add_term(&f, (0, 0), f.neg(f.one()));
        let accepted = enumerate_factorizations(&f, f.one(), m, n, 9, 1 << 30).unwrap();
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            s
        };
        for _ in 0..20 {
            // random candidate pair over the full support grid
            let mut a = LaurentPoly2::zero();
            let mut b = LaurentPoly2::zero();
            for es in 0..=m as i32 {
                for et in 0..=n as i32 {
                    if next() % 2 == 1 {
                        a.add_term(&f, (es, et), f.one());
                    }
                    if next() % 2 == 1 {
                        b.add_term(&f, (es, et), f.one());
                    }
                }
            }
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let is_accepted = accepted
                .iter()
                .any(|p| (p.a == a && p.b == b) || (p.a == b && p.b == a));
            if !is_accepted && a.terms.contains_key(&(0, 0)) {
                // normalized like the enumeration's candidates
                prop_assert_ne!(a.mul(&f, &b), target.clone());
            }
        }
    }

    #[test]
    fn bilinearized_euler_characteristic_is_stable(
        pair in (0usize..7, 0usize..7),
    ) {
        let f = FiniteField::prime(2).unwrap();
        let dga = lambda_dga(5, &f).unwrap();
        let augs = enumerate_augmentations(&dga, 0, BUDGET).unwrap();
        let (i, j) = (pair.0 % augs.len(), pair.1 % augs.len());
        if augs[i].t_value != augs[j].t_value {
            return Ok(());
        }
        let cx = bilinearized_complex(&dga, &augs[i], &augs[j], 0).unwrap();
        let ranks = homology_ranks(&cx, &f);
        let chi: i64 = ranks
            .iter()
            .map(|(&k, &r)| if k.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
            .sum();
        let chi_chords: i64 = dga
            .gens
            .iter()
            .map(|g| if g.degree.rem_euclid(2) == 0 { 1 } else { -1 })
            .sum();
        prop_assert_eq!(chi, chi_chords);
    }
}
