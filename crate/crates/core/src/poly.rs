//! Monomials and homogeneous forms in `r` variables, with the action of
//! `R = k[x_1..x_r]` on `S = k[y_1..y_r]` by partial differentiation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;

/// Bound on the absolute value of coefficients drawn by [`random_form`].
pub const RANDOM_COEFF_BOUND: i64 = 10_000;

/// Exponent vector. The derived `Ord` is lexicographic on exponents, so
/// `y1^d` is the largest monomial of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(r: usize) -> Self {
        Monomial { exps: vec![0; r] }
    }

    /// The variable with index `j` (0-based).
    pub fn var(r: usize, j: usize) -> Self {
        let mut exps = vec![0; r];
        exps[j] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn ambient(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial { exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect() })
    }

    /// Writes the monomial as `v1^a*v2^b...` with the given variable letter.
    pub fn display_with(&self, var: char) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| if e == 1 { format!("{var}{}", j + 1) } else { format!("{var}{}^{e}", j + 1) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    Lex,
    DegLex,
}

impl MonomialOrder {
    /// Compares with variable precedence `y1 > y2 > ... > yr`.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegLex => a.degree().cmp(&b.degree()).then_with(|| a.exps.cmp(&b.exps)),
        }
    }
}

/// Number of monomials of degree `d` in `r` variables, `C(r-1+d, d)`.
pub fn count_monomials(r: usize, d: u32) -> usize {
    if r == 0 {
        return usize::from(d == 0);
    }
    binomial((r - 1) as u64 + d as u64, d as u64) as usize
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All monomials of degree `d` in `r` variables, sorted descending by `order`.
pub fn monomials_of_degree(r: usize, d: u32, order: MonomialOrder) -> Vec<Monomial> {
    fn rec(r: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == r {
            prefix.push(d);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(r, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(count_monomials(r, d));
    if r == 0 {
        if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    rec(r, d, &mut Vec::with_capacity(r), &mut out);
    // Within a single degree lex and deglex agree; the generator already
    // yields lex-descending order.
    debug_assert!(out.windows(2).all(|w| order.compare(&w[0], &w[1]) == Ordering::Greater));
    out
}

/// The canonical (lex-descending) monomial basis of one degree, with an
/// index lookup.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    r: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(r: usize, degree: u32) -> Self {
        let monomials = monomials_of_degree(r, degree, MonomialOrder::Lex);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis { r, degree, monomials, index }
    }

    pub fn ambient(&self) -> usize {
        self.r
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn len(&self) -> usize {
        self.monomials.len()
    }
    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// First-order partial derivatives as sparse maps between coefficient
/// vectors of consecutive degrees.
#[derive(Clone, Debug)]
pub(crate) struct PartialsTable {
    r: usize,
    source_len: usize,
    target_len: usize,
    // entry [s * r + j]: image of monomial s under d/dy_j, as (target, factor)
    images: Vec<Option<(usize, u32)>>,
}

impl PartialsTable {
    /// Table from degree `d` to degree `d - 1`; `d >= 1`.
    pub(crate) fn new(source: &MonomialBasis, target: &MonomialBasis) -> Self {
        let r = source.r;
        let mut images = Vec::with_capacity(source.len() * r);
        for m in source.monomials() {
            for j in 0..r {
                let e = m.exps[j];
                images.push((e > 0).then(|| {
                    let mut t = m.exps.clone();
                    t[j] -= 1;
                    (target.index_of(&Monomial::new(t)).expect("target basis covers degree d-1"), e)
                }));
            }
        }
        PartialsTable { r, source_len: source.len(), target_len: target.len(), images }
    }

    /// `d/dy_j (v)` for every `j`.
    pub(crate) fn apply_all<F: Field>(&self, field: &F, v: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        let mut out = vec![vec![field.zero(); self.target_len]; self.r];
        for (s, c) in v.iter().enumerate().take(self.source_len) {
            if field.is_zero(c) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                if let Some((t, e)) = self.images[s * self.r + j] {
                    o[t] = field.add(&o[t], &field.mul(c, &field.from_i64(e as i64)));
                }
            }
        }
        out
    }
}

/// A homogeneous form with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    ambient: usize,
    degree: u32,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Form {
    pub fn zero(r: usize, degree: u32) -> Self {
        Form { ambient: r, degree, terms: BTreeMap::new() }
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms(r: usize, degree: u32, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Result<Self> {
        let mut f = Form::zero(r, degree);
        for (m, c) in terms {
            if m.ambient() != r {
                return Err(Error::AmbientMismatch { expected: r, found: m.ambient() });
            }
            if m.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: m.degree() });
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    pub fn monomial(m: Monomial, coeff: BigRational) -> Self {
        let r = m.ambient();
        let d = m.degree();
        let mut f = Form::zero(r, d);
        f.add_term(m, coeff);
        f
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in canonical (lex-descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Form {
        if c.is_zero() {
            return Form::zero(self.ambient, self.degree);
        }
        Form { ambient: self.ambient, degree: self.degree, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    fn check_compatible(&self, other: &Form) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { expected: self.ambient, found: other.ambient });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    /// Same form viewed in `r_new >= r` variables.
    pub fn embed(&self, r_new: usize) -> Form {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exps.clone();
                e.resize(r_new, 0);
                (Monomial::new(e), c.clone())
            })
            .collect();
        Form { ambient: r_new, degree: self.degree, terms }
    }

    /// Coefficient vector in the canonical basis of its degree.
    pub fn coords<F: Field>(&self, field: &F, basis: &MonomialBasis) -> Result<Vec<F::Elem>> {
        let mut v = vec![field.zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = basis.index_of(m).ok_or(Error::DegreeMismatch { expected: basis.degree(), found: self.degree })?;
            v[i] = field.from_rational(c)?;
        }
        Ok(v)
    }

    /// Inverse of [`Form::coords`] for rational vectors.
    pub fn from_coords(basis: &MonomialBasis, v: &[BigRational]) -> Form {
        let mut f = Form::zero(basis.ambient(), basis.degree());
        for (m, c) in basis.monomials().iter().zip(v) {
            f.add_term(m.clone(), c.clone());
        }
        f
    }

    pub fn display_with(&self, var: char) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let is_const = m.degree() == 0;
            if !abs.is_one() || is_const {
                out.push_str(&abs.to_string());
                if !is_const {
                    out.push('*');
                }
            }
            if !is_const {
                out.push_str(&m.display_with(var));
            }
        }
        out
    }

    /// Parses the text format `437*y1^7 - 232*y1^6*y2 + 3/4*y2^7` in `r`
    /// variables named `var1..varr`. Every term must have the same degree;
    /// `0` parses as the zero form of degree 0.
    pub fn parse(s: &str, r: usize, var: char) -> Result<Form> {
        let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
        for (sign, body) in split_signed_terms(s)? {
            let mut coeff = BigRational::from_integer(BigInt::from(sign));
            let mut exps = vec![0u32; r];
            for factor in body.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{body}`")));
                }
                if let Some(rest) = factor.strip_prefix(var) {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((i, p)) => (i, p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
                        None => (rest, 1),
                    };
                    let j: usize = idx.trim().parse().map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
                    if j == 0 || j > r {
                        return Err(Error::Parse(format!("variable `{factor}` outside {var}1..{var}{r}")));
                    }
                    exps[j - 1] += pow;
                } else {
                    coeff *= parse_rational(factor)?;
                }
            }
            terms.push((Monomial::new(exps), coeff));
        }
        let degree = terms.iter().find(|(_, c)| !c.is_zero()).map_or(0, |(m, _)| m.degree());
        for (m, c) in &terms {
            if !c.is_zero() && m.degree() != degree {
                return Err(Error::Parse(format!("form is not homogeneous: degrees {degree} and {}", m.degree())));
            }
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero());
        Form::from_terms(r, degree, terms)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('y'))
    }
}

fn split_signed_terms(s: &str) -> Result<Vec<(i64, String)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty form".into()));
    }
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    let mut expect_term = true;
    for ch in s.chars() {
        match ch {
            '+' | '-' if !prev_is_caret(&cur) => {
                if !expect_term {
                    out.push((sign, std::mem::take(&mut cur)));
                    sign = 1;
                    expect_term = true;
                }
                if ch == '-' {
                    sign = -sign;
                }
            }
            c if c.is_whitespace() => {}
            c => {
                cur.push(c);
                expect_term = false;
            }
        }
    }
    if expect_term {
        return Err(Error::Parse(format!("dangling sign in `{s}`")));
    }
    out.push((sign, cur));
    Ok(out)
}

fn prev_is_caret(cur: &str) -> bool {
    cur.ends_with('^')
}

/// Parses an integer or `a/b`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Arith(crate::error::ArithError::DivisionByZero));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Prints an integer or `a/b` in lowest terms.
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

fn falling_factorial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

/// Applies the operator `x^m = prod_i (d/dy_i)^{m_i}` to `f`, with the true
/// calculus coefficients.
pub fn differentiate(f: &Form, m: &Monomial) -> Result<Form> {
    if m.ambient() != f.ambient {
        return Err(Error::AmbientMismatch { expected: f.ambient, found: m.ambient() });
    }
    let k = m.degree();
    if k > f.degree {
        return Err(Error::OrderExceedsDegree { order: k, degree: f.degree });
    }
    let mut out = Form::zero(f.ambient, f.degree - k);
    for (mono, c) in &f.terms {
        let Some(q) = m.quotient_of(mono) else { continue };
        let factor = mono.exps.iter().zip(&m.exps).fold(BigInt::one(), |acc, (&a, &b)| acc * falling_factorial(a, b));
        out.add_term(q, c * BigRational::from_integer(factor));
    }
    Ok(out)
}

/// `(c_1 y_1 + ... + c_r y_r)^e` by the multinomial theorem.
pub fn power_of_linear(coeffs: &[BigRational], e: u32) -> Result<Form> {
    if coeffs.iter().all(Zero::is_zero) {
        return Err(Error::ZeroLinearForm);
    }
    let r = coeffs.len();
    // Clear denominators: L = (1/D) * sum n_j y_j with integer n_j.
    let denom = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let numers: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&denom / c.denom())).collect();
    let scale = num_traits::pow(denom, e as usize);
    let factorials: Vec<BigInt> = (0..=e).scan(BigInt::one(), |acc, i| {
        if i > 0 {
            *acc *= BigInt::from(i);
        }
        Some(acc.clone())
    }).collect();
    // powers[j][k] = n_j^k
    let powers: Vec<Vec<BigInt>> = numers
        .iter()
        .map(|c| (0..=e).scan(BigInt::one(), |acc, k| {
            if k > 0 {
                *acc *= c;
            }
            Some(acc.clone())
        }).collect())
        .collect();
    let terms = monomials_of_degree(r, e, MonomialOrder::Lex).into_iter().map(|m| {
        // coefficient of y^a: e!/(a_1! ... a_r!) * prod n_j^{a_j}
        let mut multinomial = factorials[e as usize].clone();
        let mut c = BigInt::one();
        for (j, &a) in m.exps.iter().enumerate() {
            multinomial /= &factorials[a as usize];
            c *= &powers[j][a as usize];
        }
        let c = c * multinomial;
        let q = if scale.is_one() { BigRational::from_integer(c) } else { BigRational::new(c, scale.clone()) };
        (m, q)
    });
    Form::from_terms(r, e, terms)
}

/// A form whose coefficient on every monomial of degree `d` is drawn
/// uniformly from `[-10^4, 10^4] \ {0}`, deterministically from `seed`.
pub fn random_form(r: usize, d: u32, seed: u64) -> Form {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = monomials_of_degree(r, d, MonomialOrder::Lex)
        .into_iter()
        .map(|m| (m, BigRational::from_integer(BigInt::from(nonzero_coefficient(&mut rng, RANDOM_COEFF_BOUND)))));
    Form::from_terms(r, d, terms).expect("monomials have the requested shape")
}

/// Uniform on `[-bound, bound] \ {0}`.
pub fn nonzero_coefficient(rng: &mut impl Rng, bound: i64) -> i64 {
    let v = rng.gen_range(1..=2 * bound);
    if v <= bound {
        -v
    } else {
        v - bound
    }
}
