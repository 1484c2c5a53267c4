//! Noncommutative polynomials over a finite field: formal sums of words in
//! chord generators and powers of the invertible basepoint variable t.
//!
//! Canonical form: adjacent t-powers are merged (so t * t^{-1} = 1 inside a
//! word), zero coefficients are dropped, and terms are ordered by word length
//! (number of generator letters) then lexicographically.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::field::{FiniteField, Fq};

/// One letter of a word: a generator (by index) or a nonzero power of t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    T(i32),
    Gen(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Build a word from raw letters, merging adjacent t-powers.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match (out.last_mut(), l) {
                (_, Letter::T(0)) => {}
                (Some(Letter::T(a)), Letter::T(b)) => {
                    *a += b;
                    if *a == 0 {
                        out.pop();
                    }
                }
                (_, l) => out.push(l),
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn gen_count(&self) -> usize {
        self.0
            .iter()
            .filter(|l| matches!(l, Letter::Gen(_)))
            .count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Generator indices in order, ignoring t letters.
    pub fn gens(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().filter_map(|l| match l {
            Letter::Gen(g) => Some(*g),
            Letter::T(_) => None,
        })
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Sum of generator degrees (t has degree 0).
    pub fn degree(&self, gen_degree: &dyn Fn(u32) -> i64) -> i64 {
        self.gens().map(|g| gen_degree(g)).sum()
    }

    pub fn display(&self, names: &dyn Fn(u32) -> String) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|l| match l {
                Letter::T(1) => "t".to_string(),
                Letter::T(e) => format!("t^{}", e),
                Letter::Gen(g) => names(*g),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gen_count()
            .cmp(&other.gen_count())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A noncommutative polynomial in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Fq>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly::default()
    }

    pub fn scalar(f: &FiniteField, c: Fq) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(f, Word::empty(), c);
        p
    }

    pub fn one(f: &FiniteField) -> NCPoly {
        NCPoly::scalar(f, f.one())
    }

    pub fn gen(f: &FiniteField, g: u32) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(f, Word::from_letters([Letter::Gen(g)]), f.one());
        p
    }

    pub fn t_power(f: &FiniteField, e: i32) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(f, Word::from_letters([Letter::T(e)]), f.one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, Fq)> + '_ {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Fq {
        self.terms.get(w).copied().unwrap_or(Fq(0))
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> Fq {
        self.coeff(&Word::empty())
    }

    pub fn add_term(&mut self, f: &FiniteField, w: Word, c: Fq) {
        if f.is_zero(c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                let v = f.add(*e.get(), c);
                if v.0 == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, f: &FiniteField, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(f, w.clone(), c);
        }
        out
    }

    pub fn scale(&self, f: &FiniteField, c: Fq) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, a) in self.terms() {
            out.add_term(f, w.clone(), f.mul(a, c));
        }
        out
    }

    pub fn neg(&self, f: &FiniteField) -> NCPoly {
        self.scale(f, f.neg(f.one()))
    }

    pub fn mul(&self, f: &FiniteField, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                out.add_term(f, w1.concat(w2), f.mul(c1, c2));
            }
        }
        out
    }

    /// Ring-map substitution: each generator letter is replaced by
    /// `gen_map(g)` and each t-power by `t_map(e)`.
    pub fn substitute(
        &self,
        f: &FiniteField,
        gen_map: &dyn Fn(u32) -> NCPoly,
        t_map: &dyn Fn(i32) -> NCPoly,
    ) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in self.terms() {
            let mut acc = NCPoly::scalar(f, c);
            for l in w.letters() {
                let factor = match l {
                    Letter::Gen(g) => gen_map(*g),
                    Letter::T(e) => t_map(*e),
                };
                acc = acc.mul(f, &factor);
            }
            out = out.add(f, &acc);
        }
        out
    }

    /// Evaluate as a ring map to the field: generators via `gen_val`, t via
    /// powers of `t_val` (which must be invertible for negative exponents).
    pub fn evaluate(&self, f: &FiniteField, gen_val: &dyn Fn(u32) -> Fq, t_val: Fq) -> Fq {
        let mut total = f.zero();
        'term: for (w, c) in self.terms() {
            let mut acc = c;
            for l in w.letters() {
                let v = match l {
                    Letter::Gen(g) => gen_val(*g),
                    Letter::T(e) => f.pow(t_val, *e as i64).expect("t value invertible"),
                };
                if f.is_zero(v) {
                    continue 'term;
                }
                acc = f.mul(acc, v);
            }
            total = f.add(total, acc);
        }
        total
    }

    pub fn display(&self, f: &FiniteField, names: &dyn Fn(u32) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .map(|(w, c)| {
                if w.is_empty() {
                    f.display(c)
                } else if c == f.one() {
                    w.display(names)
                } else {
                    format!("{}*{}", f.display(c), w.display(names))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FiniteField {
        FiniteField::gf2()
    }

    #[test]
    fn t_powers_cancel_within_words() {
        let f = f2();
        let tinv = NCPoly::t_power(&f, -1);
        let t = NCPoly::t_power(&f, 1);
        assert_eq!(tinv.mul(&f, &t), NCPoly::one(&f));
    }

    #[test]
    fn distributivity_example() {
        // (1 + ba)*(c1) = c1 + ba c1, with generators b=1, a=0, c1=2
        let f = f2();
        let one = NCPoly::one(&f);
        let ba = NCPoly::gen(&f, 1).mul(&f, &NCPoly::gen(&f, 0));
        let lhs = one.add(&f, &ba).mul(&f, &NCPoly::gen(&f, 2));
        let c1 = NCPoly::gen(&f, 2);
        let bac1 = ba.mul(&f, &c1);
        assert_eq!(lhs, c1.add(&f, &bac1));
        assert_eq!(lhs.num_terms(), 2);
    }

    #[test]
    fn cn_times_one_plus_ab() {
        // c*(1+ab) = c + c a b
        let f = f2();
        let c = NCPoly::gen(&f, 2);
        let ab = NCPoly::gen(&f, 0).mul(&f, &NCPoly::gen(&f, 1));
        let rhs = c.mul(&f, &NCPoly::one(&f).add(&f, &ab));
        assert_eq!(rhs.num_terms(), 2);
        let caw = Word::from_letters([Letter::Gen(2), Letter::Gen(0), Letter::Gen(1)]);
        assert_eq!(rhs.coeff(&caw), f.one());
    }

    #[test]
    fn characteristic_two_cancellation() {
        let f = f2();
        let a = NCPoly::gen(&f, 0);
        assert!(a.add(&f, &a).is_zero());
    }

    #[test]
    fn word_ordering_by_length_then_lex() {
        let w1 = Word::from_letters([Letter::Gen(5)]);
        let w2 = Word::from_letters([Letter::Gen(0), Letter::Gen(1)]);
        assert!(w1 < w2);
        let wt = Word::from_letters([Letter::T(-1)]);
        assert!(wt < w1); // zero generators sorts first
    }

    #[test]
    fn substitution_is_ring_map() {
        // substitute a -> a+1 into (a*a): (a+1)(a+1) = a^2 + 2a + 1
        let f = FiniteField::prime(3).unwrap();
        let a = NCPoly::gen(&f, 0);
        let aa = a.mul(&f, &a);
        let shifted = aa.substitute(
            &f,
            &|g| NCPoly::gen(&f, g).add(&f, &NCPoly::one(&f)),
            &|e| NCPoly::t_power(&f, e),
        );
        let expect = a
            .mul(&f, &a)
            .add(&f, &a.scale(&f, Fq(2)))
            .add(&f, &NCPoly::one(&f));
        assert_eq!(shifted, expect);
    }
}
