//! Coefficient fields and exact dense matrices over them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field: characteristic 0 means the rationals, otherwise `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    characteristic: u32,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn new(characteristic: u32) -> Result<Self> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::InvalidCharacteristic(characteristic))
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::RATIONALS
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Field arithmetic on an element type.
pub trait Field {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn embed_i64(&self, x: i64) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `a` must be non-zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// Arbitrary-precision rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn embed_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
}

/// Residues modulo a prime.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeField { p: p as u64 })
        } else {
            Err(Error::InvalidCharacteristic(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn embed_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (*a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

/// Dense row-major matrix with exact entries.
#[derive(Clone, Debug)]
pub struct ExactMatrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field + Clone> ExactMatrix<K> {
    pub fn zeros(field: K, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        ExactMatrix { field, rows, cols, data }
    }

    pub fn from_integers(field: K, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, got: entries.len() });
        }
        let data = entries.iter().map(|&x| field.embed_i64(x)).collect();
        Ok(ExactMatrix { field, rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &K::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: K::Elem) {
        self.data[r * self.cols + c] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    /// Matrix product; `None` when the inner dimensions differ.
    pub fn mul(&self, other: &ExactMatrix<K>) -> Option<ExactMatrix<K>> {
        if self.cols != other.rows {
            return None;
        }
        let k = &self.field;
        let mut out = ExactMatrix::zeros(k.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(r, t);
                if k.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(t, c);
                    if !k.is_zero(b) {
                        let v = k.add(out.get(r, c), &k.mul(a, b));
                        out.set(r, c, v);
                    }
                }
            }
        }
        Some(out)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let k = &self.field;
        let mut m = self.data.clone();
        let cols = self.cols;
        let mut rank = 0;
        for c in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| !k.is_zero(&m[r * cols + c])) else {
                continue;
            };
            if pivot != rank {
                for t in 0..cols {
                    m.swap(pivot * cols + t, rank * cols + t);
                }
            }
            let inv = k.inv(&m[rank * cols + c]);
            for r in rank + 1..self.rows {
                if k.is_zero(&m[r * cols + c]) {
                    continue;
                }
                let factor = k.mul(&m[r * cols + c], &inv);
                for t in c..cols {
                    let top = &m[rank * cols + t];
                    if k.is_zero(top) {
                        continue;
                    }
                    let v = k.sub(&m[r * cols + t], &k.mul(&factor, top));
                    m[r * cols + t] = v;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl ExactMatrix<Rationals> {
    /// Column sums, handy for sign checks on boundary maps.
    pub fn column_sums(&self) -> Vec<BigRational> {
        (0..self.cols)
            .map(|c| (0..self.rows).fold(BigRational::zero(), |acc, r| acc + self.get(r, c)))
            .collect()
    }

    pub fn max_abs_entry(&self) -> BigRational {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(BigRational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristics() {
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(2).is_ok());
        assert!(FieldSpec::new(97).is_ok());
        assert_eq!(FieldSpec::new(4), Err(Error::InvalidCharacteristic(4)));
        assert_eq!(FieldSpec::new(1), Err(Error::InvalidCharacteristic(1)));
        assert_eq!(FieldSpec::default().characteristic(), 0);
        assert_eq!(FieldSpec::new(3).unwrap().to_string(), "F_3");
    }

    #[test]
    fn prime_field_inverse() {
        let k = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(k.mul(&a, &k.inv(&a)), 1);
        }
        assert_eq!(k.embed_i64(-1), 6);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2
        let entries = [1, 1, 1, -1];
        let q = ExactMatrix::from_integers(Rationals, 2, 2, &entries).unwrap();
        let f2 = ExactMatrix::from_integers(PrimeField::new(2).unwrap(), 2, 2, &entries).unwrap();
        assert_eq!(q.rank(), 2);
        assert_eq!(f2.rank(), 1);
    }

    #[test]
    fn rank_of_rectangular() {
        let m = ExactMatrix::from_integers(Rationals, 2, 3, &[1, 2, 3, 2, 4, 6]).unwrap();
        assert_eq!(m.rank(), 1);
        let empty = ExactMatrix::from_integers(Rationals, 0, 3, &[]).unwrap();
        assert_eq!(empty.rank(), 0);
    }

    #[test]
    fn product() {
        let a = ExactMatrix::from_integers(Rationals, 1, 2, &[1, 1]).unwrap();
        let b = ExactMatrix::from_integers(Rationals, 2, 1, &[1, -1]).unwrap();
        assert!(a.mul(&b).unwrap().is_zero());
        assert!(a.mul(&a).is_none());
    }
}
