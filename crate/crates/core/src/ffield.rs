//! Arithmetic over the prime field F_p: the quadratic character, the
//! additive character x -> exp(2 pi i x / p), and quadratic Gauss sums.
//!
//! Field elements are plain `u64` residues in `[0, p)`; the [`FieldSpec`]
//! carries the modulus and performs all arithmetic.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// An odd prime field F_p. The residue field cardinality q equals p
/// throughout; extension fields are out of scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
}

impl FieldSpec {
    /// Requires p to be an odd prime (and small enough that products of two
    /// residues fit in a u64).
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotOddPrime(p));
        }
        Ok(FieldSpec { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// 3(h - 1) = 6n - 3 for the Coxeter number h = 2n of Sp_2n. The orbit
    /// parametrization theory assumes p strictly above this bound.
    pub fn good_prime_bound(n: usize) -> u64 {
        6 * n as u64 - 3
    }

    /// True when p > 3(2n - 1). Small p is flagged, never refused: the
    /// finite-field computations stay well-defined below the bound.
    pub fn is_good_for_rank(&self, n: usize) -> bool {
        self.p > Self::good_prime_bound(n)
    }

    pub fn reduce_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a % self.p + self.p - b % self.p) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a % self.p) * (b % self.p) % self.p
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut base = base % self.p;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero(self.p));
        }
        Ok(self.pow(a, self.p - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Quadratic character by Euler's criterion: 0 at 0, +1 on nonzero
    /// squares, -1 otherwise.
    pub fn sgn(&self, x: u64) -> i32 {
        if x.is_multiple_of(self.p) {
            return 0;
        }
        if self.pow(x, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// psi(x) = exp(2 pi i x / p).
    pub fn additive_character(&self, x: u64) -> Complex64 {
        let angle = 2.0 * PI * (x % self.p) as f64 / self.p as f64;
        Complex64::new(angle.cos(), angle.sin())
    }

    /// Table of psi over all residues, for transform inner loops.
    pub fn character_table(&self) -> Vec<Complex64> {
        (0..self.p).map(|x| self.additive_character(x)).collect()
    }

    /// G = sum over x in F_p of sgn(x) psi(x), by direct summation.
    /// Satisfies |G|^2 = p.
    pub fn gauss_sum(&self) -> Complex64 {
        (0..self.p)
            .map(|x| self.sgn(x) as f64 * self.additive_character(x))
            .sum()
    }

    /// tau = sgn(-1) p^(-1/2) G: equals 1 for p = 1 mod 4 and -i for
    /// p = 3 mod 4. The base of the Fourier eigenvalue tau^n.
    pub fn tau(&self) -> Complex64 {
        let scale = self.sgn(self.p - 1) as f64 / (self.p as f64).sqrt();
        scale * self.gauss_sum()
    }

    /// Smallest quadratic nonresidue mod p.
    pub fn nonsquare(&self) -> u64 {
        (2..self.p)
            .find(|&x| self.sgn(x) == -1)
            .expect("every odd prime field has a nonresidue")
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Odd primes up to and including `bound`.
pub fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    (3..=bound).filter(|&n| n % 2 == 1 && is_prime(n)).collect()
}
