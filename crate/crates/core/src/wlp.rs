//! Weak Lefschetz Property. The multiplication `·L: A_i -> A_{i+1}` on
//! `A = R/Ann(M)` is dual to the contraction `f -> sum_j L_j df/dy_j` from
//! `M_{i+1}` to `M_i`, so both have the same rank and everything is computed
//! in the derivative spaces of `M`.
//!
//! Certification works with `L = (a_1, ..., a_r)` symbolic. A specialization
//! never has larger rank than the generic one, so a point where the rank is
//! `min(h_i, h_{i+1})` proves maximality in that degree, and a proof that all
//! specializations on a large enough grid stay below it proves failure.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{Arithmetic, Computation};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals, DEFAULT_PRIME, SECOND_PRIME};
use crate::inverse::{DerivativeSpaces, InverseSystem};
use crate::matrix::ExactMatrix;
use crate::param::{symbolic_rank, AffineEntry, ParamMatrix};
use crate::poly::{nonzero_coefficient, PartialsTable};
use crate::seed;

/// Largest ambient dimension accepted by [`wlp_certify`].
pub const MAX_CERTIFY_VARIABLES: usize = 4;

/// Above this size the generic rank is certified on an evaluation grid
/// instead of by elimination over the polynomial ring.
pub const SYMBOLIC_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    Probe,
    Symbolic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRankReport {
    pub i: u32,
    #[serde(rename = "dimA_i")]
    pub dim_a_i: usize,
    #[serde(rename = "dimA_next")]
    pub dim_a_next: usize,
    pub required: usize,
    pub rank: usize,
    pub mode: RankMode,
}

impl DegreeRankReport {
    pub fn is_maximal(&self) -> bool {
        self.rank == self.required
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsCertified,
    FailsCertified,
    HoldsProbabilistic,
    FailsProbable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::HoldsCertified => "holds-certified",
            Verdict::FailsCertified => "fails-certified",
            Verdict::HoldsProbabilistic => "holds-probabilistic",
            Verdict::FailsProbable => "fails-probable",
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::HoldsCertified | Verdict::HoldsProbabilistic)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlpCertificate {
    pub verdict: Verdict,
    pub degrees: Vec<DegreeRankReport>,
    pub failing: Vec<u32>,
}

impl WlpCertificate {
    fn assemble(degrees: Vec<DegreeRankReport>, certified: bool) -> Self {
        let failing: Vec<u32> = degrees.iter().filter(|d| !d.is_maximal()).map(|d| d.i).collect();
        let verdict = match (certified, failing.is_empty()) {
            (true, true) => Verdict::HoldsCertified,
            (true, false) => Verdict::FailsCertified,
            (false, true) => Verdict::HoldsProbabilistic,
            (false, false) => Verdict::FailsProbable,
        };
        WlpCertificate { verdict, degrees, failing }
    }

    pub fn report(&self, i: u32) -> Option<&DegreeRankReport> {
        self.degrees.iter().find(|d| d.i == i)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }
}

/// Images of the `M_{i+1}` basis under each `d/dy_k`, in `M_i` coordinates:
/// `images[k][j]` is a column of the matrix of `d/dy_k`.
fn partial_images<F: Field>(spaces: &DerivativeSpaces<F>, i: usize) -> Vec<Vec<Vec<F::Elem>>> {
    let field = spaces.field();
    let src = spaces.rref(i + 1);
    let dst = spaces.rref(i);
    let table = PartialsTable::new(spaces.monomial_basis(i + 1), spaces.monomial_basis(i));
    let r = spaces.monomial_basis(0).ambient();
    let mut images = vec![Vec::with_capacity(src.rank()); r];
    for v in src.rows() {
        for (k, w) in table.apply_all(field, v).into_iter().enumerate() {
            images[k].push(dst.coordinates(&w));
        }
    }
    images
}

fn check_degree(m: &InverseSystem, i: u32) -> Result<()> {
    if i >= m.socle_degree() {
        return Err(Error::Invalid(format!("degree {i} out of range 0..{}", m.socle_degree())));
    }
    Ok(())
}

fn combine<F: Field>(field: &F, images: &[Vec<Vec<F::Elem>>], l: &[F::Elem], rows: usize) -> ExactMatrix<F> {
    let cols = images.first().map_or(0, |v| v.len());
    let mut m = ExactMatrix::zeros(field.clone(), rows, cols);
    for (k, img) in images.iter().enumerate() {
        if field.is_zero(&l[k]) {
            continue;
        }
        for (j, col) in img.iter().enumerate() {
            for (row, x) in col.iter().enumerate() {
                if !field.is_zero(x) {
                    let v = field.add(m.get(row, j), &field.mul(&l[k], x));
                    m.set(row, j, v);
                }
            }
        }
    }
    m
}

/// Matrix of the contraction by `L` from `M_{i+1}` to `M_i` in the canonical
/// bases of both spaces, over `field`.
pub fn mult_map_matrix_in<F: Field>(spaces: &DerivativeSpaces<F>, l: &[F::Elem], i: usize) -> ExactMatrix<F> {
    let images = partial_images(spaces, i);
    combine(spaces.field(), &images, l, spaces.dim(i))
}

/// Matrix of the contraction by `L` from `M_{i+1}` to `M_i`, exactly.
/// Its rank equals the rank of `·L: A_i -> A_{i+1}`.
pub fn mult_map_matrix(m: &InverseSystem, l: &[BigRational], i: u32) -> Result<ExactMatrix<Rationals>> {
    check_degree(m, i)?;
    if l.len() != m.ambient() {
        return Err(Error::AmbientMismatch { expected: m.ambient(), found: l.len() });
    }
    Ok(mult_map_matrix_in(&m.spaces(&Rationals)?, l, i as usize))
}

/// The contraction with `L = (a_1, ..., a_r)` symbolic.
pub fn mult_map_param_in(spaces: &DerivativeSpaces<Rationals>, i: usize) -> ParamMatrix {
    let images = partial_images(spaces, i);
    let r = images.len();
    let rows = spaces.dim(i);
    let cols = spaces.dim(i + 1);
    let mut entries = Vec::with_capacity(rows * cols);
    for row in 0..rows {
        for j in 0..cols {
            entries.push(AffineEntry::linear((0..r).map(|k| images[k][j][row].clone()).collect()));
        }
    }
    ParamMatrix::new(rows, cols, r, entries).expect("shape is consistent")
}

pub fn mult_map_param(m: &InverseSystem, i: u32) -> Result<ParamMatrix> {
    check_degree(m, i)?;
    Ok(mult_map_param_in(&m.spaces(&Rationals)?, i as usize))
}

/// A random linear form with nonzero integer coefficients.
pub fn random_linear_form(r: usize, seed_value: u64, tag: &str) -> Vec<BigRational> {
    let mut rng = seed::rng(seed_value, tag);
    (0..r).map(|_| BigRational::from_integer(BigInt::from(nonzero_coefficient(&mut rng, 10_000)))).collect()
}

struct ProbeRanks<'a> {
    module: &'a InverseSystem,
    l: &'a [BigRational],
}

impl Computation for ProbeRanks<'_> {
    type Output = Vec<(usize, usize, usize)>;
    fn run<F: Field>(&self, field: &F) -> Result<Self::Output> {
        let spaces = self.module.spaces(field)?;
        let l = self.l.iter().map(|c| field.from_rational(c)).collect::<std::result::Result<Vec<_>, _>>()?;
        Ok((0..spaces.socle_degree())
            .map(|i| (spaces.dim(i), spaces.dim(i + 1), mult_map_matrix_in(&spaces, &l, i).rank()))
            .collect())
    }
}

/// Ranks for one random `L` in every degree `0..e-1`.
pub fn wlp_probe(m: &InverseSystem, seed_value: u64, arith: Arithmetic) -> Result<WlpCertificate> {
    let l = random_linear_form(m.ambient(), seed_value, "wlp-probe");
    let ranks = arith.evaluate(&ProbeRanks { module: m, l: &l })?;
    let degrees = ranks
        .into_iter()
        .enumerate()
        .map(|(i, (a, b, rank))| DegreeRankReport { i: i as u32, dim_a_i: a, dim_a_next: b, required: a.min(b), rank, mode: RankMode::Probe })
        .collect();
    Ok(WlpCertificate::assemble(degrees, false))
}

/// Fixed specialization points for the maximality check; the certificate
/// does not depend on any user seed.
fn fixed_points(r: usize) -> Vec<Vec<BigRational>> {
    let mut rng = seed::rng(0, "wlp-certify");
    (0..3)
        .map(|_| (0..r).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(1..=1_000_000i64)))).collect())
        .collect()
}

fn rank_mod<F: Field>(field: &F, p: &ParamMatrix, point: &[BigRational]) -> Option<usize> {
    p.eval_in(field, point).ok().map(|m| m.rank())
}

/// Exact generic rank of a homogeneous linear parametric matrix. The
/// `(rho+1)`-minors are homogeneous of degree `rho+1`; setting `a_1 = 1`
/// leaves polynomials of degree at most `rho+1` in the other parameters,
/// which vanish identically once they vanish on a grid with `rho+2` values
/// per coordinate. The grid has `bound+1` values per coordinate, enough for
/// any `rho < bound`; if some grid point reaches `bound` the rank is `bound`.
pub fn grid_generic_rank(p: &ParamMatrix, bound: usize) -> usize {
    let s = p.params();
    let side = bound as i64 + 1;
    let mut best = 0;
    let mut idx = vec![0i64; s - 1];
    loop {
        let mut point = vec![BigRational::from_integer(BigInt::from(1))];
        point.extend(idx.iter().map(|&v| BigRational::from_integer(BigInt::from(v))));
        best = best.max(p.eval(&point).rank());
        if best >= bound {
            return best;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return best;
            }
            idx[k] += 1;
            if idx[k] < side {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Generic rank of `p` capped at `required`, certified exactly.
pub fn certified_generic_rank(p: &ParamMatrix, required: usize) -> usize {
    if required == 0 {
        return 0;
    }
    for point in fixed_points(p.params()) {
        for modulus in [DEFAULT_PRIME, SECOND_PRIME] {
            let field = PrimeField::new(modulus as u64).expect("fixed primes");
            if rank_mod(&field, p, &point) == Some(required) {
                return required;
            }
        }
    }
    if p.rows().min(p.cols()) <= SYMBOLIC_LIMIT {
        symbolic_rank(p)
    } else {
        grid_generic_rank(p, required)
    }
}

/// Decides the WLP exactly: the generic rank in each degree is certified.
pub fn wlp_certify(m: &InverseSystem) -> Result<WlpCertificate> {
    if m.ambient() > MAX_CERTIFY_VARIABLES {
        return Err(Error::Invalid(format!(
            "certification supports at most {MAX_CERTIFY_VARIABLES} variables, module has {}",
            m.ambient()
        )));
    }
    let spaces = m.spaces(&Rationals)?;
    let mut degrees = Vec::new();
    for i in 0..spaces.socle_degree() {
        let (a, b) = (spaces.dim(i), spaces.dim(i + 1));
        let required = a.min(b);
        let p = mult_map_param_in(&spaces, i);
        let rank = certified_generic_rank(&p, required);
        degrees.push(DegreeRankReport { i: i as u32, dim_a_i: a, dim_a_next: b, required, rank, mode: RankMode::Symbolic });
    }
    Ok(WlpCertificate::assemble(degrees, true))
}

/// Fully expanded symbolic rank of one degree, for small matrices.
pub fn symbolic_degree_rank(m: &InverseSystem, i: u32) -> Result<usize> {
    Ok(symbolic_rank(&mult_map_param(m, i)?))
}
