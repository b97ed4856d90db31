//! Choice of arithmetic for rank and dimension computations.
//!
//! Every computation that only needs ranks can run over the rationals or
//! over a prime field. The default runs it over two fixed primes and
//! accepts the answer when both agree; a rank modulo `p` never exceeds the
//! rational rank, and disagreement (or a denominator divisible by one of the
//! primes) falls back to exact rational arithmetic.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals, DEFAULT_PRIME, SECOND_PRIME};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Arithmetic {
    /// Arbitrary-precision rationals throughout.
    Exact,
    /// A single prime field; the answer is a lower bound for rational ranks.
    Prime(u32),
    /// Two primes near 2^31, falling back to rationals on disagreement.
    #[default]
    TwoPrime,
}

/// A field-generic computation whose result can be compared across fields.
pub trait Computation {
    type Output: PartialEq + fmt::Debug;
    fn run<F: Field>(&self, field: &F) -> Result<Self::Output>;
}

impl Arithmetic {
    pub fn evaluate<C: Computation>(&self, c: &C) -> Result<C::Output> {
        match *self {
            Arithmetic::Exact => c.run(&Rationals),
            Arithmetic::Prime(p) => c.run(&PrimeField::new(p as u64)?),
            Arithmetic::TwoPrime => {
                let first = c.run(&PrimeField::new(DEFAULT_PRIME as u64)?);
                let second = c.run(&PrimeField::new(SECOND_PRIME as u64)?);
                match (first, second) {
                    (Ok(a), Ok(b)) if a == b => Ok(a),
                    (Ok(_), Ok(_)) | (Err(Error::Arith(_)), _) | (_, Err(Error::Arith(_))) => c.run(&Rationals),
                    (Err(e), _) | (_, Err(e)) => Err(e),
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Arithmetic::Exact => "q".to_string(),
            Arithmetic::Prime(p) => format!("fp:{p}"),
            Arithmetic::TwoPrime => "two-prime".to_string(),
        }
    }
}

impl FromStr for Arithmetic {
    type Err = Error;

    /// Accepts `q`, `fp:P` and `two-prime`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" | "exact" => Ok(Arithmetic::Exact),
            "two-prime" => Ok(Arithmetic::TwoPrime),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown field `{s}`; expected q or fp:P")))?;
                Ok(Arithmetic::Prime(PrimeField::new(p)?.modulus()))
            }
        }
    }
}

/// Rank of a rational matrix under the chosen arithmetic.
pub struct RankOf<'a>(pub &'a crate::matrix::ExactMatrix<Rationals>);

impl Computation for RankOf<'_> {
    type Output = usize;
    fn run<F: Field>(&self, field: &F) -> Result<usize> {
        let m = self.0.map_field(field.clone(), |q| Ok(field.from_rational(q)?))?;
        Ok(m.rank())
    }
}
