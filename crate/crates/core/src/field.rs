//! Finite field arithmetic for F_q, q = p^k, with exact table-backed operations.
//!
//! Elements are canonical indices in `0..q`: the element `sum c_i x^i` (with
//! `0 <= c_i < p`) is stored as the integer `sum c_i p^i`. For prime fields the
//! index is just the residue. The modulus for an extension is the
//! lexicographically smallest irreducible monic polynomial of degree k over
//! F_p, coefficients compared from the highest degree down, so the choice is
//! reproducible without external tables.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Element of a finite field, valid only together with its [`FiniteField`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fq(pub u16);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} unsupported (need 1..=6)")]
    BadDegree(u32),
    #[error("field too large: q = {0} exceeds the table budget")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no embedding of F_{0} into F_{1}")]
    NoEmbedding(u64, u64),
}

/// A concrete finite field F_{p^k} with precomputed multiplication and
/// inverse tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u16,
    k: u32,
    q: u32,
    /// Modulus coefficients c_0..c_{k-1} (monic x^k term implicit); empty for k = 1.
    modulus: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    neg: Vec<u16>,
}

const MAX_Q: u64 = 4096;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteField {
    pub fn new(p: u16, k: u32) -> Result<FiniteField, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if k == 0 || k > 6 {
            return Err(FieldError::BadDegree(k));
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_Q)
            .ok_or(FieldError::TooLarge((p as u64).saturating_pow(k)))? as u32;
        let modulus = if k == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p, k)
        };
        let mut f = FiniteField {
            p,
            k,
            q,
            modulus,
            mul: Vec::new(),
            inv: Vec::new(),
            neg: Vec::new(),
        };
        f.build_tables();
        Ok(f)
    }

    pub fn prime(p: u16) -> Result<FiniteField, FieldError> {
        FiniteField::new(p, 1)
    }

    pub fn gf2() -> FiniteField {
        FiniteField::prime(2).expect("F_2 exists")
    }

    pub fn p(&self) -> u16 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }
    pub fn characteristic_two(&self) -> bool {
        self.p == 2
    }

    pub fn zero(&self) -> Fq {
        Fq(0)
    }
    pub fn one(&self) -> Fq {
        Fq(1)
    }

    pub fn elem(&self, idx: u32) -> Fq {
        assert!(
            idx < self.q,
            "element index {} out of range for q = {}",
            idx,
            self.q
        );
        Fq(idx as u16)
    }

    /// Reduce an integer into the prime subfield (so -1 maps to p-1).
    pub fn from_int(&self, n: i64) -> Fq {
        let r = n.rem_euclid(self.p as i64) as u16;
        Fq(r)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.q).map(|i| Fq(i as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (1..self.q).map(|i| Fq(i as u16))
    }

    pub fn is_zero(&self, a: Fq) -> bool {
        a.0 == 0
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let mut out = 0u32;
        let (mut x, mut y) = (a.0 as u32, b.0 as u32);
        let p = self.p as u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            let d = (x % p + y % p) % p;
            out += d * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Fq(out as u16)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.0 as usize])
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Fq(self.inv[a.0 as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, e: i64) -> Result<Fq, FieldError> {
        if e < 0 {
            return self.pow(self.inv(a)?, -e);
        }
        let mut acc = self.one();
        let mut base = a;
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Digits of `a` in base p, little-endian: the coefficient vector of the
    /// polynomial representative.
    pub fn digits(&self, a: Fq) -> Vec<u16> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut x = a.0 as u32;
        for _ in 0..self.k {
            v.push((x % self.p as u32) as u16);
            x /= self.p as u32;
        }
        v
    }

    fn from_digits(&self, d: &[u16]) -> Fq {
        let mut out = 0u32;
        for &c in d.iter().rev() {
            out = out * self.p as u32 + c as u32;
        }
        Fq(out as u16)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        self.mul = vec![0; q * q];
        self.neg = vec![0; q];
        self.inv = vec![0; q];
        for a in 0..q {
            let da = self.raw_digits(a as u32);
            self.neg[a] = self
                .from_digits(
                    &da.iter()
                        .map(|&c| (self.p - c) % self.p)
                        .collect::<Vec<_>>(),
                )
                .0;
            for b in a..q {
                let product = self.poly_mul_mod(&da, &self.raw_digits(b as u32));
                let v = self.from_digits(&product).0;
                self.mul[a * q + b] = v;
                self.mul[b * q + a] = v;
            }
        }
        for a in 1..q {
            // a^(q-2) = a^{-1}
            let mut acc = 1usize;
            let mut base = a;
            let mut e = self.q as u64 - 2;
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.mul[acc * q + base] as usize;
                }
                base = self.mul[base * q + base] as usize;
                e >>= 1;
            }
            self.inv[a] = acc as u16;
        }
    }

    fn raw_digits(&self, mut x: u32) -> Vec<u16> {
        let mut v = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            v.push((x % self.p as u32) as u16);
            x /= self.p as u32;
        }
        v
    }

    /// Multiply two coefficient vectors and reduce modulo the field modulus.
    fn poly_mul_mod(&self, a: &[u16], b: &[u16]) -> Vec<u16> {
        let p = self.p as u32;
        let k = self.k as usize;
        let mut prod = vec![0u32; 2 * k];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u32 * bj as u32) % p;
            }
        }
        // reduce: x^k = -modulus (lower part)
        for i in (k..2 * k).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mj) in self.modulus.iter().enumerate() {
                let idx = i - k + j;
                prod[idx] = (prod[idx] + c * (p - mj as u32)) % p;
            }
        }
        prod.truncate(k);
        prod.iter().map(|&c| c as u16).collect()
    }

    /// Evaluate the field's own modulus polynomial at an element of `target`,
    /// mapping prime-subfield coefficients canonically.
    fn eval_modulus_in(&self, target: &FiniteField, x: Fq) -> Fq {
        // acc = x^k + sum c_i x^i with c_i in the prime subfield
        let mut acc = target.zero();
        let mut xp = target.one();
        for &c in &self.modulus {
            acc = target.add(acc, target.mul(target.from_int(c as i64), xp));
            xp = target.mul(xp, x);
        }
        target.add(acc, xp)
    }

    /// Field embedding F_{p^k} -> F_{p^m} (k | m): returns the image of every
    /// element, found deterministically via the smallest root of the modulus.
    pub fn embedding(&self, target: &FiniteField) -> Result<Vec<Fq>, FieldError> {
        if self.p != target.p || target.k % self.k != 0 {
            return Err(FieldError::NoEmbedding(self.q as u64, target.q as u64));
        }
        if self.k == 1 {
            return Ok((0..self.q).map(|i| target.from_int(i as i64)).collect());
        }
        let root = target
            .elements()
            .find(|&x| target.is_zero(self.eval_modulus_in(target, x)))
            .ok_or(FieldError::NoEmbedding(self.q as u64, target.q as u64))?;
        let mut images = Vec::with_capacity(self.q as usize);
        for a in 0..self.q {
            let digits = self.raw_digits(a);
            let mut acc = target.zero();
            let mut xp = target.one();
            for &c in &digits {
                acc = target.add(acc, target.mul(target.from_int(c as i64), xp));
                xp = target.mul(xp, root);
            }
            images.push(acc);
        }
        Ok(images)
    }

    /// Human-readable form of an element: integer for prime fields, digit
    /// vector `[c0,c1,..]` for extensions.
    pub fn display(&self, a: Fq) -> String {
        if self.k == 1 {
            format!("{}", a.0)
        } else {
            let d = self.digits(a);
            let body = d
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
            format!("[{}]", body)
        }
    }

    /// Short descriptor like "F2" or "F9=F3[x]/(x^2+1)".
    pub fn describe(&self) -> String {
        if self.k == 1 {
            format!("F{}", self.p)
        } else {
            let mut terms = vec![format!("x^{}", self.k)];
            for (i, &c) in self.modulus.iter().enumerate().rev() {
                if c == 0 {
                    continue;
                }
                let t = match (i, c) {
                    (0, c) => format!("{}", c),
                    (1, 1) => "x".to_string(),
                    (1, c) => format!("{}x", c),
                    (i, 1) => format!("x^{}", i),
                    (i, c) => format!("{}x^{}", c, i),
                };
                terms.push(t);
            }
            format!("F{}=F{}[x]/({})", self.q, self.p, terms.join("+"))
        }
    }
}

/// All monic polynomials of the given degree, coefficient tuples in
/// lexicographic order compared from the leading coefficient down.
fn monic_polys(p: u16, deg: u32) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let n = (p as u64).pow(deg);
    for code in 0..n {
        let mut c = code;
        let mut coeffs = vec![0u16; deg as usize + 1];
        coeffs[deg as usize] = 1;
        // constant coefficient changes fastest, so the enumeration is lex
        // order compared from the leading coefficient down
        for i in 0..deg as usize {
            coeffs[i] = (c % p as u64) as u16;
            c /= p as u64;
        }
        out.push(coeffs);
    }
    out
}

fn divides(p: u16, d: &[u16], f: &[u16]) -> bool {
    // polynomial remainder of f by monic d; true if zero
    let mut r: Vec<u32> = f.iter().map(|&c| c as u32).collect();
    let dd = d.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let pos = r.len() - 1 - dd;
        if lead != 0 {
            for (j, &dj) in d.iter().enumerate() {
                let idx = pos + j;
                r[idx] = (r[idx] + (p as u32 - dj as u32 % p as u32) * lead) % p as u32;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

fn is_irreducible(p: u16, f: &[u16]) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for g in monic_polys(p, d as u32) {
            if divides(p, &g, f) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u16, k: u32) -> Vec<u16> {
    for f in monic_polys(p, k) {
        if is_irreducible(p, &f) {
            let mut low = f.clone();
            low.pop();
            return low;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_choices_are_the_classical_ones() {
        assert_eq!(FiniteField::new(2, 2).unwrap().modulus(), &[1, 1]); // x^2+x+1
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus(), &[1, 1, 0]); // x^3+x+1
        assert_eq!(FiniteField::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0]); // x^4+x+1
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &[1, 0]); // x^2+1
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(
            FiniteField::new(2, 0).unwrap_err(),
            FieldError::BadDegree(0)
        );
    }

    #[test]
    fn f4_multiplication() {
        let f4 = FiniteField::new(2, 2).unwrap();
        let g = f4.elem(2); // x
        assert_eq!(f4.mul(g, g), f4.elem(3)); // x^2 = x+1
        assert_eq!(f4.mul(g, f4.elem(3)), f4.one()); // x(x+1) = x^2+x = 1
    }

    #[test]
    fn inverse_in_f3() {
        let f3 = FiniteField::prime(3).unwrap();
        assert_eq!(f3.inv(f3.elem(2)).unwrap(), f3.elem(2)); // 2*2 = 4 = 1
        assert!(f3.inv(f3.zero()).is_err());
    }

    #[test]
    fn embedding_f2_into_f4() {
        let f2 = FiniteField::gf2();
        let f4 = FiniteField::new(2, 2).unwrap();
        let emb = f2.embedding(&f4).unwrap();
        assert_eq!(emb, vec![f4.zero(), f4.one()]);
        let f9 = FiniteField::new(3, 2).unwrap();
        assert!(f2.embedding(&f9).is_err());
    }

    #[test]
    fn embedding_f4_into_f16_is_multiplicative() {
        let f4 = FiniteField::new(2, 2).unwrap();
        let f16 = FiniteField::new(2, 4).unwrap();
        let emb = f4.embedding(&f16).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                let lhs = emb[f4.mul(a, b).0 as usize];
                let rhs = f16.mul(emb[a.0 as usize], emb[b.0 as usize]);
                assert_eq!(lhs, rhs);
                let lhs = emb[f4.add(a, b).0 as usize];
                let rhs = f16.add(emb[a.0 as usize], emb[b.0 as usize]);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn multiplicative_group_order() {
        for (p, k) in [(2u16, 1u32), (2, 2), (3, 1), (3, 2), (5, 1), (2, 4)] {
            let f = FiniteField::new(p, k).unwrap();
            for a in f.nonzero_elements() {
                assert_eq!(f.pow(a, f.q() as i64 - 1).unwrap(), f.one());
            }
        }
    }
}
