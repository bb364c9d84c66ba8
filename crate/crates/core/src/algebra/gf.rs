use std::fmt;

use super::number::is_prime;
use crate::error::{Error, Result};

/// Element of a [`GfContext`], identified by its enumeration index.
///
/// The index of `c_0 + c_1 x + … + c_{d-1} x^{d-1}` is `Σ c_i p^i`, so index
/// order is lexicographic on `(c_{d-1}, …, c_0)` and index 0 is the zero
/// element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GfElement(pub usize);

/// The finite field GF(p^d) realised as `Z_p[x]` modulo a monic irreducible.
#[derive(Clone, PartialEq, Eq)]
pub struct GfContext {
    p: u64,
    degree: u32,
    /// Monic modulus, lowest coefficient first, length `degree + 1`.
    modulus: Vec<u64>,
    order: usize,
}

impl fmt::Debug for GfContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.degree, self.modulus)
    }
}

impl GfContext {
    /// Builds GF(p^d) using the lexicographically lowest monic irreducible
    /// polynomial of degree `d` as modulus.
    pub fn new(p: u64, degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if degree == 0 {
            return Err(Error::InvalidParameters("field degree must be at least 1".into()));
        }
        let order =
            p.checked_pow(degree)
                .filter(|&q| q <= 1 << 20)
                .ok_or_else(|| Error::InvalidParameters(format!("GF({p}^{degree}) too large")))? as usize;
        let modulus = (0..order)
            .map(|t| {
                let mut c = digits(t, p, degree as usize);
                c.push(1);
                c
            })
            .find(|c| is_irreducible(c, p))
            .ok_or_else(|| Error::InvalidParameters(format!("no irreducible modulus of degree {degree} over Z_{p}")))?;
        Ok(Self {
            p,
            degree,
            modulus,
            order,
        })
    }

    /// GF(q) for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, e) = super::number::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, e)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// All elements, zero first, in index order.
    pub fn enumerate(&self) -> impl Iterator<Item = GfElement> {
        (0..self.order).map(GfElement)
    }

    pub fn zero(&self) -> GfElement {
        GfElement(0)
    }

    pub fn one(&self) -> GfElement {
        GfElement(1)
    }

    pub fn coefficients(&self, x: GfElement) -> Vec<u64> {
        digits(x.0, self.p, self.degree as usize)
    }

    fn element_from(&self, c: &[u64]) -> GfElement {
        GfElement(
            c.iter()
                .rev()
                .fold(0usize, |acc, &ci| acc * self.p as usize + ci as usize),
        )
    }

    pub fn add(&self, x: GfElement, y: GfElement) -> GfElement {
        let (a, b) = (self.coefficients(x), self.coefficients(y));
        let c: Vec<u64> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        self.element_from(&c)
    }

    pub fn neg(&self, x: GfElement) -> GfElement {
        let c: Vec<u64> = self.coefficients(x).iter().map(|u| (self.p - u) % self.p).collect();
        self.element_from(&c)
    }

    pub fn sub(&self, x: GfElement, y: GfElement) -> GfElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: GfElement, y: GfElement) -> GfElement {
        let (a, b) = (self.coefficients(x), self.coefficients(y));
        let d = self.degree as usize;
        let mut prod = vec![0u64; 2 * d];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % self.p;
            }
        }
        // reduce by the monic modulus from the top down
        for top in (d..2 * d).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (k, &mk) in self.modulus.iter().enumerate() {
                let idx = top - d + k;
                prod[idx] = (prod[idx] + self.p * self.p - c * mk % self.p) % self.p;
            }
        }
        self.element_from(&prod[..d])
    }

    pub fn pow(&self, x: GfElement, mut e: u64) -> GfElement {
        let mut base = x;
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

    pub fn inv(&self, x: GfElement) -> Result<GfElement> {
        if x == self.zero() {
            return Err(Error::InvalidParameters("inverse of zero in a finite field".into()));
        }
        Ok(self.pow(x, self.order as u64 - 2))
    }

    /// The first element (in index order) generating the multiplicative group.
    pub fn primitive_element(&self) -> GfElement {
        let q1 = self.order as u64 - 1;
        self.enumerate()
            .skip(1)
            .find(|&g| {
                let mut x = g;
                for k in 1..q1 {
                    if x == self.one() {
                        return k == q1;
                    }
                    x = self.mul(x, g);
                }
                x == self.one()
            })
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// Discrete logarithms to base [`primitive_element`](Self::primitive_element),
    /// indexed by element; entry 0 is `None`.
    pub fn discrete_logs(&self) -> Vec<Option<usize>> {
        let g = self.primitive_element();
        let mut logs = vec![None; self.order];
        let mut x = self.one();
        for k in 0..self.order - 1 {
            logs[x.0] = Some(k);
            x = self.mul(x, g);
        }
        logs
    }

    /// Quadratic character: 0 at zero, 1 on non-zero squares, -1 otherwise.
    pub fn quadratic_character(&self, x: GfElement) -> i64 {
        if x == self.zero() {
            return 0;
        }
        if self.pow(x, (self.order as u64 - 1) / 2) == self.one() {
            1
        } else {
            -1
        }
    }
}

fn digits(mut t: usize, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((t % p as usize) as u64);
        t /= p as usize;
    }
    out
}

/// Remainder of `num` modulo the monic `den` over Z_p (lowest coefficient first).
fn poly_rem(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let c = *r.last().expect("non-empty");
        let shift = r.len() - 1 - dd;
        for (k, &dk) in den.iter().enumerate() {
            r[shift + k] = (r[shift + k] + p * p - c * dk % p) % p;
        }
        r.pop();
    }
    r
}

/// Trial factorisation by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for t in 0..p.pow(d as u32) as usize {
            let mut cand = digits(t, p, d);
            cand.push(1);
            if poly_rem(poly, &cand, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
