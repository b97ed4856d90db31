//! Matrices whose entries are affine-linear in a few named parameters, and
//! their rank over the field of rational functions in those parameters.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::matrix::ExactMatrix;

/// `constant + sum_k coeffs[k] * a_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineEntry {
    pub constant: BigRational,
    pub coeffs: Vec<BigRational>,
}

impl AffineEntry {
    pub fn zero(params: usize) -> Self {
        AffineEntry { constant: BigRational::zero(), coeffs: vec![BigRational::zero(); params] }
    }

    pub fn linear(coeffs: Vec<BigRational>) -> Self {
        AffineEntry { constant: BigRational::zero(), coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        self.coeffs.iter().zip(point).fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamMatrix {
    rows: usize,
    cols: usize,
    params: usize,
    entries: Vec<AffineEntry>,
}

impl ParamMatrix {
    pub fn new(rows: usize, cols: usize, params: usize, entries: Vec<AffineEntry>) -> Result<Self> {
        if params == 0 {
            return Err(Error::Invalid("a parametric matrix needs at least one parameter".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Invalid(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if let Some(e) = entries.iter().find(|e| e.coeffs.len() != params) {
            return Err(Error::Invalid(format!(
                "entry has {} parameter coefficients, expected {params}",
                e.coeffs.len()
            )));
        }
        Ok(ParamMatrix { rows, cols, params, entries })
    }

    /// Parses rows of entries written as in `["a", "2*b"]` over parameters
    /// named by `names`. Only integer linear combinations plus a constant are
    /// accepted; handy for tests and small examples.
    pub fn from_strs(names: &[&str], rows: &[&[&str]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::new();
        for r in rows {
            if r.len() != cols {
                return Err(Error::Invalid("ragged rows".into()));
            }
            for s in *r {
                entries.push(parse_affine(names, s)?);
            }
        }
        Self::new(rows.len(), cols, names.len(), entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn params(&self) -> usize {
        self.params
    }
    pub fn get(&self, i: usize, j: usize) -> &AffineEntry {
        &self.entries[i * self.cols + j]
    }

    /// True if no entry has a constant term.
    pub fn is_homogeneous(&self) -> bool {
        self.entries.iter().all(|e| e.constant.is_zero())
    }

    /// Specializes the parameters to `point` in the field `field`.
    pub fn eval_in<F: Field>(&self, field: &F, point: &[BigRational]) -> Result<ExactMatrix<F>> {
        let entries = self
            .entries
            .iter()
            .map(|e| Ok(field.from_rational(&e.eval(point))?))
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::new(field.clone(), self.rows, self.cols, entries)
    }

    pub fn eval(&self, point: &[BigRational]) -> ExactMatrix<Rationals> {
        self.eval_in(&Rationals, point).expect("rational evaluation cannot fail")
    }
}

fn parse_affine(names: &[&str], s: &str) -> Result<AffineEntry> {
    let mut entry = AffineEntry::zero(names.len());
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, t.strip_prefix('+').unwrap_or(&t)),
        };
        let (coef, var) = match body.split_once('*') {
            Some((c, v)) => (c.parse::<i64>().map_err(|e| Error::Parse(e.to_string()))?, Some(v)),
            None => match body.parse::<i64>() {
                Ok(c) => (c, None),
                Err(_) => (1, Some(body)),
            },
        };
        let c = BigRational::from_integer(BigInt::from(sign * coef));
        match var {
            None => entry.constant += c,
            Some(v) => {
                let k = names
                    .iter()
                    .position(|n| *n == v)
                    .ok_or_else(|| Error::Parse(format!("unknown parameter `{v}`")))?;
                entry.coeffs[k] += c;
            }
        }
    }
    Ok(entry)
}

/// Sparse multivariate polynomial with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct IntPoly {
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_affine(e: &AffineEntry, scale: &BigInt) -> Self {
        let n = e.coeffs.len();
        let mut terms = BTreeMap::new();
        let mut put = |exps: Vec<u32>, q: &BigRational| {
            if !q.is_zero() {
                let v = q * BigRational::from_integer(scale.clone());
                debug_assert!(v.is_integer());
                terms.insert(exps, v.to_integer());
            }
        };
        put(vec![0; n], &e.constant);
        for (k, c) in e.coeffs.iter().enumerate() {
            let mut exps = vec![0; n];
            exps[k] = 1;
            put(exps, c);
        }
        IntPoly { terms }
    }

    fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *terms.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        IntPoly { terms }
    }

    fn sub(&self, other: &IntPoly) -> IntPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_insert_with(BigInt::zero) -= c;
        }
        terms.retain(|_, c| !c.is_zero());
        IntPoly { terms }
    }

    /// Exact quotient `self / divisor`; the caller guarantees divisibility.
    /// Division by the lexicographically leading term.
    fn div_exact(&self, divisor: &IntPoly) -> IntPoly {
        let (lead_e, lead_c) = divisor.terms.iter().next_back().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let qe: Vec<u32> = e
                .iter()
                .zip(lead_e)
                .map(|(a, b)| a.checked_sub(*b).expect("inexact polynomial division"))
                .collect();
            let (qc, r) = c.div_rem(lead_c);
            assert!(r.is_zero(), "inexact polynomial division");
            let mut step = BTreeMap::new();
            step.insert(qe.clone(), qc.clone());
            rem = rem.sub(&IntPoly { terms: step }.mul(divisor));
            quot.insert(qe, qc);
        }
        IntPoly { terms: quot }
    }
}

/// Rank of `m` over the rational function field in its parameters, by
/// Bareiss elimination over the integer polynomial ring. Pivots are tested
/// for zero exactly, so the result is the generic rank, i.e. the maximum of
/// the rank over all specializations.
pub fn symbolic_rank(m: &ParamMatrix) -> usize {
    // Clear denominators row by row; this does not change the rank.
    let mut a: Vec<Vec<IntPoly>> = (0..m.rows)
        .map(|i| {
            let lcm = (0..m.cols)
                .flat_map(|j| {
                    let e = m.get(i, j);
                    std::iter::once(&e.constant).chain(e.coeffs.iter())
                })
                .filter(|q| !q.is_zero())
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            (0..m.cols).map(|j| IntPoly::from_affine(m.get(i, j), &lcm)).collect()
        })
        .collect();

    let n = a.len();
    let mut prev: Option<IntPoly> = None;
    let mut rank = 0;
    for c in 0..m.cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let piv = &pivot_row[c];
        for row in bottom.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..m.cols {
                let mut v = piv.mul(&row[j]);
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    v = v.sub(&f.mul(&pivot_row[j]));
                }
                row[j] = match &prev {
                    Some(d) if !v.is_zero() => v.div_exact(d),
                    _ => v,
                };
            }
        }
        prev = Some(pivot_row[c].clone());
        rank += 1;
    }
    rank
}
