//! Sequence analytics for h-vectors: unimodality, maxima, Macaulay's growth
//! bound, O-sequences, differentiability, SI-sequences, and the predictors
//! for adding a generic form and for raising the codimension.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(h_0, ..., h_e)` with `h_0 = 1` and every entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct HVector(Vec<u64>);

impl HVector {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        match entries.first() {
            None => return Err(Error::InvalidHVector("empty sequence".into())),
            Some(&h0) if h0 != 1 => return Err(Error::InvalidHVector(format!("h_0 = {h0}, expected 1"))),
            _ => {}
        }
        if let Some(i) = entries.iter().position(|&h| h == 0) {
            return Err(Error::InvalidHVector(format!("h_{i} = 0")));
        }
        Ok(HVector(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    /// Index of the last entry.
    pub fn socle_degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_unimodal(&self) -> bool {
        is_unimodal(&self.0)
    }
    pub fn count_maxima(&self) -> usize {
        count_maxima(&self.0)
    }
    pub fn is_o_sequence(&self) -> bool {
        is_o_sequence(&self.0)
    }
    pub fn is_differentiable(&self) -> bool {
        is_differentiable(&self.0)
    }
    pub fn is_si_sequence(&self) -> bool {
        is_si_sequence(&self.0)
    }
}

impl TryFrom<Vec<u64>> for HVector {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        HVector::new(v)
    }
}

impl From<HVector> for Vec<u64> {
    fn from(h: HVector) -> Vec<u64> {
        h.0
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

impl FromStr for HVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        HVector::new(parse_sequence(s)?)
    }
}

/// Comma-separated integers, e.g. `1,3,6,10`.
pub fn parse_sequence(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad entry `{}` in `{s}`", x.trim()))))
        .collect()
}

pub fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // acc * (n - j) / (j + 1) stays integral at every step
        match acc.checked_mul((n - j) as u128) {
            Some(v) => acc = v / (j as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// `C(r-1+i, i)`, the number of monomials of degree `i` in `r` variables.
pub fn monomial_count(r: u64, i: u64) -> u64 {
    if r == 0 {
        return u64::from(i == 0);
    }
    binomial(r - 1 + i, i).min(u64::MAX as u128) as u64
}

/// No strict ascent after a strict descent.
pub fn is_unimodal(h: &[u64]) -> bool {
    let mut descended = false;
    for w in h.windows(2) {
        if w[1] < w[0] {
            descended = true;
        } else if w[1] > w[0] && descended {
            return false;
        }
    }
    true
}

/// Number of strict local maxima; the boundary counts as lower.
pub fn count_maxima(h: &[u64]) -> usize {
    (0..h.len())
        .filter(|&i| (i == 0 || h[i] > h[i - 1]) && (i + 1 == h.len() || h[i] > h[i + 1]))
        .count()
}

/// Number of maximal constant runs that are higher than both neighbours
/// (boundary counts as lower). Strict maxima are runs of length one.
pub fn count_plateau_maxima(h: &[u64]) -> usize {
    let mut count = 0;
    let mut start = 0;
    while start < h.len() {
        let mut end = start;
        while end + 1 < h.len() && h[end + 1] == h[start] {
            end += 1;
        }
        let left = start == 0 || h[start - 1] < h[start];
        let right = end + 1 == h.len() || h[end + 1] < h[start];
        if left && right {
            count += 1;
        }
        start = end + 1;
    }
    count
}

/// The `i`-th Macaulay representation `value = C(a_i, i) + C(a_{i-1}, i-1)
/// + ... + C(a_j, j)` with `a_i > a_{i-1} > ... > a_j >= j >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayRep {
    pub degree: u64,
    /// Pairs `(a_k, k)` in decreasing `k`.
    pub summands: Vec<(u64, u64)>,
}

impl MacaulayRep {
    pub fn new(value: u64, i: u64) -> Self {
        assert!(i >= 1, "Macaulay representations need degree >= 1");
        let mut summands = Vec::new();
        let mut rest = value as u128;
        let mut k = i;
        while rest > 0 && k >= 1 {
            // largest a with C(a, k) <= rest; C(k, k) = 1 <= rest
            let (mut lo, mut hi) = (k, k + rest.min(u64::MAX as u128 - k as u128) as u64);
            while lo < hi {
                let mid = lo + (hi - lo).div_ceil(2);
                if binomial(mid, k) <= rest {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            summands.push((lo, k));
            rest -= binomial(lo, k);
            k -= 1;
        }
        MacaulayRep { degree: i, summands }
    }

    pub fn value(&self) -> u128 {
        self.summands.iter().map(|&(a, k)| binomial(a, k)).sum()
    }

    /// `sum C(a_k + 1, k + 1)`.
    pub fn raised(&self) -> u128 {
        self.summands.iter().map(|&(a, k)| binomial(a + 1, k + 1)).sum()
    }
}

/// Largest admissible `h_{i+1}` when `h_i = value`.
pub fn macaulay_next_max(value: u64, i: u64) -> u64 {
    MacaulayRep::new(value, i).raised().min(u64::MAX as u128) as u64
}

/// `h_0 = 1` and `h_{i+1} <= macaulay_next_max(h_i, i)` for `i >= 1`.
/// Zeros are allowed (as in first differences).
pub fn is_o_sequence(h: &[u64]) -> bool {
    if h.first() != Some(&1) {
        return false;
    }
    (1..h.len().saturating_sub(1)).all(|i| h[i + 1] <= macaulay_next_max(h[i], i as u64))
}

/// `h_i - h_{i-1}` with `h_{-1} = 0`.
pub fn first_difference(h: &[u64]) -> Vec<i64> {
    (0..h.len()).map(|i| h[i] as i64 - if i == 0 { 0 } else { h[i - 1] as i64 }).collect()
}

/// Indices `0..=floor(e/2)`.
pub fn first_half(h: &[u64]) -> &[u64] {
    if h.is_empty() {
        return h;
    }
    &h[..=(h.len() - 1) / 2]
}

/// The first difference of the first half is an O-sequence.
pub fn is_differentiable(h: &[u64]) -> bool {
    let d = first_difference(first_half(h));
    if d.iter().any(|&x| x < 0) {
        return false;
    }
    is_o_sequence(&d.into_iter().map(|x| x as u64).collect::<Vec<_>>())
}

pub fn is_symmetric(h: &[u64]) -> bool {
    h.iter().eq(h.iter().rev())
}

pub fn is_si_sequence(h: &[u64]) -> bool {
    is_symmetric(h) && is_differentiable(h)
}

/// h-vector after adding a generic form of degree `e` (the socle degree of
/// `h`) to a level inverse system in `r` variables:
/// `H_i = min(h_i + C(r-1+e-i, e-i), C(r-1+i, i))`, `H_0 = 1`.
pub fn lemma1_predict(h: &HVector, r: u64) -> HVector {
    let e = h.socle_degree() as u64;
    let mut out = vec![1u64];
    for i in 1..=e {
        let hi = h.0[i as usize];
        out.push((hi.saturating_add(monomial_count(r, e - i))).min(monomial_count(r, i)));
    }
    HVector(out)
}

/// `(1, r_new, h_2 + r_new - 3, ..., h_e + r_new - 3)` for `h_1 = 3`.
pub fn lift_hvector(h: &HVector, r_new: u64) -> Result<HVector> {
    if h.0.get(1) != Some(&3) {
        return Err(Error::InvalidHVector(format!("lifting needs h_1 = 3, got {h}")));
    }
    if r_new < 3 {
        return Err(Error::Invalid(format!("target codimension {r_new} below 3")));
    }
    let add = r_new - 3;
    Ok(HVector(h.0.iter().enumerate().map(|(i, &x)| if i == 0 { 1 } else { x + add }).collect()))
}
