//! Finite fields `F_{p^l}` with elements stored as integers `< q`.
//!
//! An element `a` of `F_{p^l}` is the polynomial `sum_k a_k x^k` whose
//! coefficients are the base-`p` digits of `a`. Arithmetic reduces on the
//! fly modulo the table polynomial; nothing is precomputed per field.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Raw field element. Every supported field has `q <= 64`.
pub type Elem = u8;

pub const DEFAULT_FIELD_BOUND: u64 = 64;

const MAX_DEGREE: usize = 4;

/// Canonical moduli, coefficients listed low-to-high and monic.
pub const MODULUS_TABLE: &[(u32, u32, &[u8])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[3, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
];

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteField {
    p: u32,
    l: u32,
    q: u32,
    /// `modulus[0..=l]`, only meaningful when `l > 1`.
    modulus: [u8; MAX_DEGREE + 1],
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.l == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.l)
        }
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// Builds `F_{p^l}` with the default size bound.
pub fn fq_make(p: u32, l: u32) -> Result<FiniteField> {
    FiniteField::with_bound(p, l, DEFAULT_FIELD_BOUND)
}

impl FiniteField {
    pub fn with_bound(p: u32, l: u32, bound: u64) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if l == 0 {
            return Err(Error::NoModulus { p, l });
        }
        let size = (p as u64).checked_pow(l).unwrap_or(u64::MAX);
        if size > bound || size > Elem::MAX as u64 + 1 {
            return Err(Error::FieldTooLarge { size, bound });
        }
        let mut modulus = [0u8; MAX_DEGREE + 1];
        if l > 1 {
            let entry = MODULUS_TABLE
                .iter()
                .find(|(tp, tl, _)| *tp == p && *tl == l)
                .ok_or(Error::NoModulus { p, l })?;
            modulus[..entry.2.len()].copy_from_slice(entry.2);
        }
        let field = FiniteField {
            p,
            l,
            q: size as u32,
            modulus,
        };
        assert!(
            l == 1 || field.modulus_is_irreducible(),
            "table modulus for {field:?} is reducible"
        );
        Ok(field)
    }

    /// Field of the given order, e.g. `from_order(9)` is `F_{3^2}`.
    pub fn from_order(q: u32) -> Result<FiniteField> {
        if q < 2 {
            return Err(Error::NonPrime(q));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut l = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            l += 1;
        }
        if rest != 1 {
            return Err(Error::NonPrime(q));
        }
        fq_make(p, l)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.l
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients low-to-high; `None` for a prime field.
    pub fn modulus(&self) -> Option<&[u8]> {
        (self.l > 1).then(|| &self.modulus[..=self.l as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|a| a as Elem)
    }

    #[inline]
    fn digits(&self, a: Elem) -> [u32; MAX_DEGREE] {
        let mut out = [0u32; MAX_DEGREE];
        let mut a = a as u32;
        for d in out.iter_mut().take(self.l as usize) {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    #[inline]
    fn undigits(&self, d: &[u32]) -> Elem {
        let mut a = 0u32;
        for &c in d[..self.l as usize].iter().rev() {
            a = a * self.p + c;
        }
        a as Elem
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.l == 1 {
            let s = a as u32 + b as u32;
            return (if s >= self.p { s - self.p } else { s }) as Elem;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let mut s = [0u32; MAX_DEGREE];
        for k in 0..self.l as usize {
            s[k] = (x[k] + y[k]) % self.p;
        }
        self.undigits(&s)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.l == 1 {
            return if a == 0 {
                0
            } else {
                (self.p - a as u32) as Elem
            };
        }
        if self.p == 2 {
            return a;
        }
        let x = self.digits(a);
        let mut s = [0u32; MAX_DEGREE];
        for k in 0..self.l as usize {
            s[k] = (self.p - x[k]) % self.p;
        }
        self.undigits(&s)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.l == 1 {
            return ((a as u32 * b as u32) % self.p) as Elem;
        }
        let l = self.l as usize;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = [0u32; 2 * MAX_DEGREE - 1];
        for i in 0..l {
            if x[i] == 0 {
                continue;
            }
            for j in 0..l {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % self.p;
            }
        }
        // x^l = -(m_0 + ... + m_{l-1} x^{l-1})
        for k in (l..2 * l - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..l {
                let m = self.modulus[j] as u32;
                prod[k - l + j] = (prod[k - l + j] + (self.p - (c * m) % self.p)) % self.p;
            }
        }
        self.undigits(&prod)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc: Elem = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero in {self}");
        self.pow(a, self.q as u64 - 2)
    }

    /// Trial division by every monic polynomial of degree `1..=l/2`.
    fn modulus_is_irreducible(&self) -> bool {
        let l = self.l as usize;
        let p = self.p as u64;
        let target: Vec<u64> = self.modulus[..=l].iter().map(|&c| c as u64).collect();
        for deg in 1..=l / 2 {
            for code in 0..p.pow(deg as u32) {
                let mut divisor = Vec::with_capacity(deg + 1);
                let mut c = code;
                for _ in 0..deg {
                    divisor.push(c % p);
                    c /= p;
                }
                divisor.push(1);
                if poly_rem_mod_p(&target, &divisor, p).iter().all(|&r| r == 0) {
                    return false;
                }
            }
        }
        true
    }
}

fn poly_rem_mod_p(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap() % p;
        let shift = rem.len() - 1 - dd;
        for (k, &c) in den.iter().enumerate() {
            rem[shift + k] = (rem[shift + k] + p * p - (lead * c) % p) % p;
        }
        rem.pop();
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f2 = fq_make(2, 1).unwrap();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![0, 1]);
        assert!(f2.modulus().is_none());
        assert_eq!(fq_make(4, 1), Err(Error::NonPrime(4)));
        assert_eq!(fq_make(2, 5), Err(Error::NoModulus { p: 2, l: 5 }));
        assert!(matches!(fq_make(67, 1), Err(Error::FieldTooLarge { .. })));
        assert!(fq_make(61, 1).is_ok());
    }

    #[test]
    fn f4_generator_times_successor_is_one() {
        // x * (x + 1) = x^2 + x = 1 mod x^2 + x + 1; x encodes as 2, x + 1 as 3
        let f4 = fq_make(2, 2).unwrap();
        assert_eq!(f4.modulus(), Some(&[1u8, 1, 1][..]));
        assert_eq!(f4.mul(2, 3), 1);
    }

    #[test]
    fn modulus_table_is_bit_exact() {
        let expect: &[(u32, &[u8])] = &[
            (4, &[1, 1, 1]),
            (8, &[1, 1, 0, 1]),
            (9, &[1, 0, 1]),
            (16, &[1, 1, 0, 0, 1]),
            (25, &[3, 0, 1]),
            (27, &[1, 2, 0, 1]),
        ];
        for &(q, m) in expect {
            let f = FiniteField::from_order(q).unwrap();
            assert_eq!(f.modulus(), Some(m), "F_{q}");
            assert!(f.modulus_is_irreducible());
        }
    }

    #[test]
    fn reducible_modulus_detected() {
        let mut f = fq_make(2, 2).unwrap();
        f.modulus = [1, 0, 1, 0, 0]; // x^2 + 1 = (x + 1)^2
        assert!(!f.modulus_is_irreducible());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27] {
            let f = FiniteField::from_order(q).unwrap();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "{f} inverse of {a}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if a != 0 && b != 0 {
                        assert_ne!(f.mul(a, b), 0);
                    }
                    for &c in els.iter().step_by(if q > 9 { 3 } else { 1 }) {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn from_order_rejects_non_prime_powers() {
        assert!(FiniteField::from_order(6).is_err());
        assert!(FiniteField::from_order(12).is_err());
        assert_eq!(FiniteField::from_order(7).unwrap().order(), 7);
    }
}
