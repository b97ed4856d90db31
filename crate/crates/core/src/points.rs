//! Finite point sets in the projective plane, their Hilbert functions, and
//! samplers for points on a rational curve or on a configuration of lines.
//! Powers of the corresponding linear forms give level inverse systems whose
//! derivative spaces are `span{L_j^i}`, of dimension the Hilbert function.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{Arithmetic, Computation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hvector::{join, monomial_count};
use crate::inverse::InverseSystem;
use crate::matrix::Echelon;
use crate::poly::{monomials_of_degree, nonzero_coefficient, power_of_linear, MonomialOrder};
use crate::seed;

/// Bound on sampled integer coordinates and curve coefficients.
pub const COORD_BOUND: i64 = 1_000;

/// Retries allowed after a failed verification.
pub const MAX_RETRIES: u32 = 5;

pub type Point = [BigInt; 3];

/// Points of the projective plane, pairwise non-proportional and nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

fn cross(a: &Point, b: &Point) -> Point {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

fn dot(a: &Point, b: &Point) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn is_zero_point(a: &Point) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Same projective point.
pub fn proportional(a: &Point, b: &Point) -> bool {
    is_zero_point(&cross(a, b))
}

fn normalize(mut p: Point) -> Point {
    let g = p.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in p.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = p.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in p.iter_mut() {
                *x = -&*x;
            }
        }
    }
    p
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        for (k, p) in points.iter().enumerate() {
            if is_zero_point(p) {
                return Err(Error::Invalid(format!("point {k} is zero")));
            }
            if points[..k].iter().any(|q| proportional(p, q)) {
                return Err(Error::DuplicatePoint(k));
            }
        }
        Ok(PointSet { points })
    }

    pub fn from_i64(points: &[[i64; 3]]) -> Result<Self> {
        PointSet::new(points.iter().map(|p| p.map(BigInt::from)).collect())
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `HF(0), ..., HF(max_degree)` under the chosen arithmetic.
    pub fn hilbert_function(&self, max_degree: u32, arith: Arithmetic) -> Result<Vec<u64>> {
        arith.evaluate(&HilbertFunction { points: self, max_degree })
    }
}

/// Rank of the evaluation matrix (points x monomials) in each degree.
pub struct HilbertFunction<'a> {
    pub points: &'a PointSet,
    pub max_degree: u32,
}

impl Computation for HilbertFunction<'_> {
    type Output = Vec<u64>;
    fn run<F: Field>(&self, field: &F) -> Result<Vec<u64>> {
        let s = self.points.len();
        let coords: Vec<[F::Elem; 3]> =
            self.points.points.iter().map(|p| [field.from_bigint(&p[0]), field.from_bigint(&p[1]), field.from_bigint(&p[2])]).collect();
        let mut out = Vec::with_capacity(self.max_degree as usize + 1);
        for d in 0..=self.max_degree {
            if out.last() == Some(&(s as u64)) {
                out.push(s as u64);
                continue;
            }
            // powers[k][j][a] = coordinate j of point k to the a
            let monos = monomials_of_degree(3, d, MonomialOrder::Lex);
            let mut ech = Echelon::new(field.clone(), monos.len());
            for c in &coords {
                let pows: Vec<Vec<F::Elem>> = c
                    .iter()
                    .map(|x| {
                        let mut v = vec![field.one()];
                        for a in 0..d as usize {
                            v.push(field.mul(&v[a], x));
                        }
                        v
                    })
                    .collect();
                let row = monos
                    .iter()
                    .map(|m| {
                        let e = m.exps();
                        field.mul(&field.mul(&pows[0][e[0] as usize], &pows[1][e[1] as usize]), &pows[2][e[2] as usize])
                    })
                    .collect();
                ech.insert(row);
                if ech.is_full() {
                    break;
                }
            }
            out.push(ech.rank() as u64);
        }
        Ok(out)
    }
}

/// `M = <L_1^e, ..., L_s^e>` for the linear forms with the points as
/// coefficient vectors.
pub fn powers_module(points: &PointSet, e: u32) -> Result<InverseSystem> {
    if e == 0 {
        return Err(Error::Invalid("socle degree must be at least 1".into()));
    }
    if points.is_empty() {
        return Err(Error::Invalid("empty point set".into()));
    }
    let gens = points
        .points
        .iter()
        .map(|p| power_of_linear(&p.clone().map(BigRational::from_integer), e))
        .collect::<Result<Vec<_>>>()?;
    InverseSystem::new(3, gens)
}

/// Hilbert function of a degree-`p` plane curve: `C(i+2, 2)` below `p`,
/// then `p*i - p(p-3)/2`.
pub fn curve_hilbert_function(p: u64, i: u64) -> u64 {
    if i < p {
        monomial_count(3, i)
    } else {
        p * i - p * (p - 3) / 2
    }
}

/// A sampled object and how many verification failures preceded it.
#[derive(Clone, Debug)]
pub struct Sampled<T> {
    pub value: T,
    pub retries: u32,
}

fn coprime_pair(rng: &mut ChaCha8Rng, bound: i64) -> (i64, i64) {
    loop {
        let u = rng.gen_range(-bound..=bound);
        let v = rng.gen_range(-bound..=bound);
        if (u, v) != (0, 0) && u.gcd(&v) == 1 {
            return (u, v);
        }
    }
}

/// Degree at which the expected Hilbert function first reaches `s`, plus
/// one more degree as a check of stability.
fn check_degree(expected: impl Fn(u64) -> u64, s: u64) -> u32 {
    let mut i = 0;
    while expected(i) < s {
        i += 1;
    }
    (i + 1) as u32
}

/// `s` points on a rational plane curve of degree `p`, the image of random
/// parameter values under three random binary forms of degree `p`. The
/// Hilbert function is verified to be `min(s, HF_curve)`; up to
/// [`MAX_RETRIES`] fresh samples are drawn before giving up.
pub fn points_on_rational_curve(s: usize, p: u32, seed_value: u64, arith: Arithmetic) -> Result<Sampled<PointSet>> {
    if p < 3 {
        return Err(Error::Invalid(format!("curve degree {p} below 3")));
    }
    let min = monomial_count(3, p as u64 - 1) as usize;
    if s < min {
        return Err(Error::Invalid(format!("{s} points on a degree-{p} curve: need at least {min}")));
    }
    let expected = |i: u64| curve_hilbert_function(p as u64, i).min(s as u64);
    let top = check_degree(expected, s as u64);
    let target: Vec<u64> = (0..=top as u64).map(expected).collect();
    let mut last = Vec::new();
    for attempt in 0..=MAX_RETRIES {
        let mut rng = seed::rng(seed_value, &format!("rational-curve/{attempt}"));
        let forms: Vec<Vec<BigInt>> = (0..3)
            .map(|_| (0..=p).map(|_| BigInt::from(nonzero_coefficient(&mut rng, COORD_BOUND))).collect())
            .collect();
        let bound = ((s as f64).sqrt().ceil() as i64 + 2).max(4);
        let mut pts: Vec<Point> = Vec::with_capacity(s);
        let mut guard = 0usize;
        while pts.len() < s && guard < 100 * s {
            guard += 1;
            let (u, v) = coprime_pair(&mut rng, bound);
            let (u, v) = (BigInt::from(u), BigInt::from(v));
            // phi_j(u, v) = sum_k c_jk u^(p-k) v^k
            let image: Point = std::array::from_fn(|j| {
                (0..=p as usize).fold(BigInt::zero(), |acc, k| acc + &forms[j][k] * num_traits::pow(u.clone(), p as usize - k) * num_traits::pow(v.clone(), k))
            });
            if is_zero_point(&image) || pts.iter().any(|q| proportional(q, &image)) {
                continue;
            }
            pts.push(normalize(image));
        }
        if pts.len() < s {
            continue;
        }
        let set = PointSet::new(pts)?;
        let hf = set.hilbert_function(top, arith)?;
        if hf == target {
            return Ok(Sampled { value: set, retries: attempt });
        }
        last = hf;
    }
    Err(Error::VerificationFailed {
        attempts: MAX_RETRIES + 1,
        detail: format!("points on a degree-{p} curve: expected Hilbert function {}, observed {}", join(&target), join(&last)),
    })
}

/// Checks that `delta` is the first difference of a Hilbert function of
/// points: `delta_0 = 1`, it grows by exactly one until its peak and never
/// increases afterwards.
pub fn validate_staircase(delta: &[u64]) -> Result<()> {
    let bad = |why: &str| Err(Error::InvalidHVector(format!("{} is not a points first difference: {why}", join(delta))));
    if delta.first() != Some(&1) {
        return bad("must start with 1");
    }
    if delta.contains(&0) {
        return bad("entries must be positive");
    }
    let mut growing = true;
    for w in delta.windows(2) {
        if growing && w[1] == w[0] + 1 {
            continue;
        }
        growing = false;
        if w[1] > w[0] {
            return bad("increases after its peak");
        }
    }
    Ok(())
}

/// Points whose Hilbert function has first difference `delta`: `a_j` points
/// on the `j`-th of several random lines, with `a_j = #{i : delta_i >= j}`.
/// Verified by rank, with up to [`MAX_RETRIES`] fresh samples.
pub fn points_from_staircase(delta: &[u64], seed_value: u64, arith: Arithmetic) -> Result<Sampled<PointSet>> {
    validate_staircase(delta)?;
    let peak = *delta.iter().max().expect("nonempty");
    let counts: Vec<usize> = (1..=peak).map(|j| delta.iter().filter(|&&d| d >= j).count()).collect();
    let s: u64 = delta.iter().sum();
    let mut target: Vec<u64> = delta.iter().scan(0, |acc, d| {
        *acc += d;
        Some(*acc)
    }).collect();
    target.push(s);
    let top = target.len() as u32 - 1;
    let mut last = Vec::new();
    for attempt in 0..=MAX_RETRIES {
        let mut rng = seed::rng(seed_value, &format!("staircase/{attempt}"));
        let random_point = |rng: &mut ChaCha8Rng| -> Point { std::array::from_fn(|_| BigInt::from(rng.gen_range(-COORD_BOUND..=COORD_BOUND))) };
        let mut lines: Vec<(Point, Point, Point)> = Vec::new();
        while lines.len() < counts.len() {
            let (a, b) = (random_point(&mut rng), random_point(&mut rng));
            let eq = cross(&a, &b);
            if is_zero_point(&eq) || lines.iter().any(|(_, _, l)| proportional(l, &eq)) {
                continue;
            }
            lines.push((a, b, eq));
        }
        let bound = (counts[0] as i64 + 3).max(4);
        let mut pts: Vec<Point> = Vec::new();
        let mut ok = true;
        for (j, &n) in counts.iter().enumerate() {
            let (a, b, _) = &lines[j];
            let mut placed = 0;
            let mut guard = 0;
            while placed < n {
                guard += 1;
                if guard > 1000 * n {
                    ok = false;
                    break;
                }
                let (u, v) = coprime_pair(&mut rng, bound);
                let q: Point = std::array::from_fn(|k| BigInt::from(u) * &a[k] + BigInt::from(v) * &b[k]);
                let on_other = lines.iter().enumerate().any(|(k, (_, _, l))| k != j && dot(l, &q).is_zero());
                if is_zero_point(&q) || on_other || pts.iter().any(|x| proportional(x, &q)) {
                    continue;
                }
                pts.push(normalize(q));
                placed += 1;
            }
        }
        if !ok {
            continue;
        }
        let set = PointSet::new(pts)?;
        let hf = set.hilbert_function(top, arith)?;
        if hf == target {
            return Ok(Sampled { value: set, retries: attempt });
        }
        last = hf;
    }
    Err(Error::VerificationFailed {
        attempts: MAX_RETRIES + 1,
        detail: format!("staircase {}: expected Hilbert function {}, observed {}", join(delta), join(&target), join(&last)),
    })
}
