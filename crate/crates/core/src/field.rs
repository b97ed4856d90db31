//! Exact scalar fields: arbitrary-precision rationals and prime fields
//! with a modulus below 2^31.
//!
//! Both backends implement [`Field`], a context-style trait: the field value
//! carries whatever runtime data the arithmetic needs (the modulus), and the
//! elements are plain values. Row-level elimination primitives live on the
//! trait so that the rational backend can run fraction-free while the prime
//! backend normalizes pivots to one.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ArithError;

/// 2^31 - 1.
pub const DEFAULT_PRIME: u32 = 2_147_483_647;

/// Largest prime below [`DEFAULT_PRIME`]; the second modulus of the two-prime
/// fast path.
pub const SECOND_PRIME: u32 = 2_147_483_629;

pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ArithError>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, ArithError>;
    /// Short human-readable name, e.g. `Q` or `F_2147483647`.
    fn name(&self) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ArithError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Brings a freshly built row into the form elimination expects.
    /// No-op for fields whose elements need no normalization.
    fn prepare_row(&self, _row: &mut [Self::Elem]) {}

    /// Rescales `row` so it can serve as a pivot row at `col`.
    /// `row[col]` must be nonzero and every entry before `col` zero.
    fn make_pivot_row(&self, row: &mut [Self::Elem], col: usize) {
        let inv = self.inv(&row[col]).expect("pivot entry is nonzero");
        for x in row[col..].iter_mut() {
            if !self.is_zero(x) {
                *x = self.mul(x, &inv);
            }
        }
    }

    /// Clears `target[col]` with a row produced by [`Field::make_pivot_row`].
    /// The result spans the same line modulo `pivot` as `target` did.
    fn eliminate(&self, target: &mut [Self::Elem], pivot: &[Self::Elem], col: usize) {
        let f = target[col].clone();
        if self.is_zero(&f) {
            return;
        }
        for (t, p) in target[col..].iter_mut().zip(&pivot[col..]) {
            if !self.is_zero(p) {
                *t = self.sub(t, &self.mul(&f, p));
            }
        }
    }

    /// Rank of the matrix whose rows are `rows`.
    fn rank_of_rows(&self, rows: Vec<Vec<Self::Elem>>, cols: usize) -> usize {
        let mut ech = crate::matrix::Echelon::new(self.clone(), cols);
        for r in rows {
            ech.insert(r);
            if ech.rank() == cols {
                break;
            }
        }
        ech.rank()
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
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
    fn inv(&self, a: &BigRational) -> Result<BigRational, ArithError> {
        if a.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational, ArithError> {
        Ok(q.clone())
    }
    fn name(&self) -> String {
        "Q".to_string()
    }

    // Rows are kept integral and primitive; elimination is fraction-free.
    fn prepare_row(&self, row: &mut [BigRational]) {
        let lcm = row
            .iter()
            .filter(|x| !x.is_zero())
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = row
            .iter()
            .map(|x| {
                if x.is_zero() {
                    BigInt::zero()
                } else {
                    x.numer() * (&lcm / x.denom())
                }
            })
            .collect();
        write_primitive(row, ints);
    }

    fn make_pivot_row(&self, row: &mut [BigRational], col: usize) {
        self.prepare_row(row);
        if row[col].is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }

    fn eliminate(&self, target: &mut [BigRational], pivot: &[BigRational], col: usize) {
        if target[col].is_zero() {
            return;
        }
        let p = pivot[col].numer().clone();
        let f = target[col].numer().clone();
        let ints: Vec<BigInt> = target
            .iter()
            .zip(pivot)
            .map(|(t, q)| &p * t.numer() - &f * q.numer())
            .collect();
        write_primitive(target, ints);
    }

    fn rank_of_rows(&self, rows: Vec<Vec<BigRational>>, cols: usize) -> usize {
        let ints = rows
            .into_iter()
            .map(|mut r| {
                self.prepare_row(&mut r);
                r.into_iter().map(|x| x.to_integer()).collect()
            })
            .collect();
        crate::matrix::bareiss_rank(ints, cols)
    }
}

/// Divides out the content of an integer row and stores it back as rationals.
fn write_primitive(row: &mut [BigRational], mut ints: Vec<BigInt>) {
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    for (slot, x) in row.iter_mut().zip(ints) {
        *slot = BigRational::from_integer(x);
    }
}

/// The prime field F_p for a prime p < 2^31. Elements are canonical
/// residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if !(2..1 << 31).contains(&p) || !primal_check::miller_rabin(p) {
            return Err(ArithError::BadModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    fn reduce_u64(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.reduce_u64(acc as u64 * base as u64);
            }
            base = self.reduce_u64(base as u64 * base as u64);
            exp >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce_u64(*a as u64 * *b as u64)
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Result<u32, ArithError> {
        if *a == 0 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.pow(*a, self.p as u64 - 2))
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u32().expect("residue fits in u32")
    }
    fn from_rational(&self, q: &BigRational) -> Result<u32, ArithError> {
        let d = self.from_bigint(q.denom());
        if d == 0 {
            return Err(ArithError::NotInvertible {
                denominator: q.denom().clone(),
                modulus: self.p,
            });
        }
        let n = self.from_bigint(q.numer());
        Ok(self.mul(&n, &self.inv(&d)?))
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }

    // target[j] += (p - f) * pivot[j], with Shoup's precomputed quotient so
    // the inner loop has no division.
    fn eliminate(&self, target: &mut [u32], pivot: &[u32], col: usize) {
        let f = target[col];
        if f == 0 {
            return;
        }
        let p = self.p as u64;
        let w = p - f as u64;
        let w_shoup = (w << 32) / p;
        for (t, &x) in target[col..].iter_mut().zip(&pivot[col..]) {
            let x = x as u64;
            let q = (x * w_shoup) >> 32;
            let mut r = (x * w).wrapping_sub(q * p);
            if r >= p {
                r -= p;
            }
            let mut s = *t as u64 + r;
            if s >= p {
                s -= p;
            }
            *t = s as u32;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn default_moduli_are_prime() {
        assert!(PrimeField::new(DEFAULT_PRIME as u64).is_ok());
        assert!(PrimeField::new(SECOND_PRIME as u64).is_ok());
        assert!(PrimeField::new(2_147_483_649).is_err());
        assert!(PrimeField::new(15).is_err());
    }

    #[test]
    fn prime_field_inverse_roundtrip() {
        let f = PrimeField::default();
        for a in [1u32, 2, 3, 12345, DEFAULT_PRIME - 1] {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn rational_division_by_zero_is_an_error() {
        assert_eq!(Rationals.inv(&q(0, 1)), Err(ArithError::DivisionByZero));
        assert_eq!(Rationals.div(&q(1, 2), &q(1, 4)).unwrap(), q(2, 1));
    }

    #[test]
    fn reduction_of_rationals() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_rational(&q(3, 2)).unwrap(), 5); // 3 * 4 = 12 = 5
        assert_eq!(f.from_rational(&q(-1, 1)).unwrap(), 6);
        assert!(matches!(
            f.from_rational(&q(1, 14)),
            Err(ArithError::NotInvertible { .. })
        ));
    }

    #[test]
    fn shoup_elimination_matches_naive() {
        let f = PrimeField::default();
        let pivot = vec![1u32, 5, DEFAULT_PRIME - 1, 77, 0];
        let mut a = vec![9u32, 4, 3, DEFAULT_PRIME - 2, 11];
        let mut b = a.clone();
        f.eliminate(&mut a, &pivot, 0);
        let factor = b[0];
        for j in 0..b.len() {
            b[j] = f.sub(&b[j], &f.mul(&factor, &pivot[j]));
        }
        assert_eq!(a, b);
        assert_eq!(a[0], 0);
    }

    #[test]
    fn fraction_free_rows_stay_primitive() {
        let mut pivot = vec![q(2, 3), q(4, 3)];
        Rationals.make_pivot_row(&mut pivot, 0);
        assert_eq!(pivot, vec![q(1, 1), q(2, 1)]);
        let mut t = vec![q(3, 1), q(1, 1)];
        Rationals.eliminate(&mut t, &pivot, 0);
        assert_eq!(t, vec![q(0, 1), q(-1, 1)]);
    }
}
