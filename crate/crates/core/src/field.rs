//! Finite fields `GF(p^d)` in polynomial representation.
//!
//! An element is a polynomial of degree `< d` over `GF(p)` reduced modulo a
//! fixed monic irreducible. Elements are identified with the integer
//! `Σ cᵢ pⁱ` of their little-endian coefficient vector, which also fixes the
//! element order.

use std::collections::BTreeSet;

use thiserror::Error;

/// Upper bound on the field order.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds {MAX_ORDER}")]
    TooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `q = p^d` with `p` prime, if such a decomposition exists.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut d = 0;
    while rest % p == 0 {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

/// Field element: index `Σ cᵢ pⁱ` of its coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: u32,
    d: usize,
    /// Monic modulus, little-endian, length `d + 1`.
    modulus: Vec<u32>,
    q: u32,
}

/// Remainder of `a` modulo the monic `m` over `GF(p)`; both little-endian.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

fn irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=deg/2
    for fd in 1..=deg / 2 {
        let count = (p as u64).pow(fd as u32);
        for low in 0..count {
            let mut f = Vec::with_capacity(fd + 1);
            let mut x = low;
            for _ in 0..fd {
                f.push((x % p as u64) as u32);
                x /= p as u64;
            }
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// `GF(p^d)` with the lexicographically smallest monic irreducible
    /// modulus, comparing coefficients from `x^{d-1}` down to `x^0`.
    pub fn new(p: u64, d: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if d == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p
            .checked_pow(d)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(FieldError::TooLarge(p.saturating_pow(d)))?;
        let d = d as usize;
        let p32 = p as u32;
        // index `low` read big-endian over the d lower coefficients
        let modulus = (0..q)
            .map(|low| {
                let mut coeffs = vec![0u32; d + 1];
                let mut x = low;
                for i in 0..d {
                    coeffs[i] = (x % p) as u32;
                    x /= p;
                }
                coeffs[d] = 1;
                coeffs
            })
            .find(|m| irreducible(m, p32))
            .expect("an irreducible polynomial of every degree exists");
        Ok(GaloisField {
            p: p32,
            d,
            modulus,
            q: q as u32,
        })
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        let (p, d) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        GaloisField::new(p, d)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus coefficients, little-endian.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    /// Little-endian coefficients of `e`, length `d`.
    pub fn coeffs(&self, e: FieldElem) -> Vec<u32> {
        let mut x = e.0;
        (0..self.d)
            .map(|_| {
                let c = x % self.p;
                x /= self.p;
                c
            })
            .collect()
    }

    /// Element with the given little-endian coefficients (reduced mod p).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElem {
        let reduced = poly_rem(
            &coeffs.iter().map(|c| c % self.p).collect::<Vec<_>>(),
            &self.modulus,
            self.p,
        );
        FieldElem(reduced.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.from_coeffs(&s)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let c: Vec<u32> = self.coeffs(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.from_coeffs(&c)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * self.d - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        self.from_coeffs(&prod)
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse via `a^(q-2)`; `None` for zero.
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        (a != self.zero()).then(|| self.pow(a, self.q as u64 - 2))
    }

    /// Nonzero squares.
    pub fn quadratic_residues(&self) -> BTreeSet<FieldElem> {
        self.elements()
            .skip(1)
            .map(|b| self.mul(b, b))
            .collect()
    }

    /// Membership table for the nonzero squares, indexed by element.
    pub fn residue_table(&self) -> Vec<bool> {
        let mut t = vec![false; self.q as usize];
        for r in self.quadratic_residues() {
            t[r.index()] = true;
        }
        t
    }

    /// Renders `e` as a polynomial in `x`, e.g. `2x + 1`.
    pub fn format(&self, e: FieldElem) -> String {
        let c = self.coeffs(e);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| match (i, v) {
                (0, v) => v.to_string(),
                (1, 1) => "x".to_string(),
                (1, v) => format!("{v}x"),
                (i, 1) => format!("x^{i}"),
                (i, v) => format!("{v}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Free-function alias for [`GaloisField::new`].
pub fn gf_make(p: u64, d: u32) -> Result<GaloisField, FieldError> {
    GaloisField::new(p, d)
}
