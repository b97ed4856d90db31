//! Independent recomputations of library results by slower, more direct
//! routes.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use invsys::constructions::{build_example7, build_prop8, lex_extreme_module, Direction};
use invsys::hvector::macaulay_next_max;
use invsys::inverse::annihilator_component;
use invsys::param::symbolic_rank;
use invsys::points::{powers_module, PointSet};
use invsys::poly::{monomials_of_degree, random_form, MonomialBasis};
use invsys::wlp::{mult_map_matrix, mult_map_param};
use invsys::{ExactMatrix, Field, Form, InverseSystem, Monomial, MonomialOrder, PrimeField, Rationals, DEFAULT_PRIME, SECOND_PRIME};

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn module(r: usize, gens: &[&str]) -> InverseSystem {
    InverseSystem::new(r, gens.iter().map(|g| Form::parse(g, r, 'y').unwrap()).collect()).unwrap()
}

/// Degree-(i+1) monomials outside `R_1 * lex`, where `lex` holds the largest
/// degree-i monomials and leaves `v` of them out.
fn lex_segment_growth(n: usize, v: usize, i: u32) -> usize {
    let all = monomials_of_degree(n, i, MonomialOrder::Lex);
    let ideal: HashSet<Vec<u32>> = all[..all.len() - v].iter().map(|m| m.exps().to_vec()).collect();
    monomials_of_degree(n, i + 1, MonomialOrder::Lex)
        .iter()
        .filter(|m| {
            !(0..n).any(|j| {
                let e = m.exps();
                if e[j] == 0 {
                    return false;
                }
                let mut d = e.to_vec();
                d[j] -= 1;
                ideal.contains(&d)
            })
        })
        .count()
}

#[test]
fn macaulay_bound_matches_lex_segments() {
    for i in 1..=5u32 {
        for v in 1..=20usize {
            let mut n = 1;
            while monomials_of_degree(n, i, MonomialOrder::Lex).len() < v {
                n += 1;
            }
            let expected = macaulay_next_max(v as u64, i as u64) as usize;
            assert_eq!(lex_segment_growth(n, v, i), expected, "value {v} degree {i}, {n} variables");
            assert_eq!(lex_segment_growth(n + 1, v, i), expected, "value {v} degree {i}, {} variables", n + 1);
        }
    }
}

/// Rank of `·L: A_i -> A_{i+1}` on `A = R/Ann(M)`, from annihilator bases:
/// `dim(L R_i + I_{i+1}) - dim I_{i+1}`.
fn quotient_rank(m: &InverseSystem, l: &[BigRational], i: u32) -> usize {
    let r = m.ambient();
    let target = MonomialBasis::new(r, i + 1);
    let ideal: Vec<Vec<BigRational>> =
        annihilator_component(m, i + 1).unwrap().iter().map(|g| g.coords(&Rationals, &target).unwrap()).collect();
    let mut rows = ideal.clone();
    for mono in monomials_of_degree(r, i, MonomialOrder::Lex) {
        let mut v = vec![BigRational::zero(); target.len()];
        for (j, c) in l.iter().enumerate() {
            let k = target.index_of(&mono.mul(&Monomial::var(r, j))).unwrap();
            v[k] += c;
        }
        rows.push(v);
    }
    let all = ExactMatrix::from_rows(Rationals, target.len(), rows).unwrap().rank();
    let base = if ideal.is_empty() { 0 } else { ExactMatrix::from_rows(Rationals, target.len(), ideal).unwrap().rank() };
    all - base
}

fn small_corpus() -> Vec<InverseSystem> {
    let mut out = vec![
        module(3, &["y1*y2*y3"]),
        module(3, &["y1^4", "y2^4", "y3^4"]),
        module(3, &["y1^2*y3^3 - y1*y2^4", "y2^5 + 3*y1^3*y3^2"]),
        random_single(3, 4, 11),
        random_single(3, 5, 12),
        random_single(4, 3, 13),
        powers_module(&PointSet::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]]).unwrap(), 4).unwrap(),
        lex_extreme_module(5, 3, Direction::LexLast).unwrap(),
        lex_extreme_module(7, 5, Direction::LexLast).unwrap(),
    ];
    out.extend((3..=5).map(|e| build_example7(e).unwrap()));
    out
}

fn random_single(r: usize, d: u32, seed: u64) -> InverseSystem {
    InverseSystem::new(r, vec![random_form(r, d, seed)]).unwrap()
}

#[test]
fn dual_contraction_rank_equals_quotient_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in small_corpus() {
        let e = m.socle_degree();
        assert!(e <= 5);
        for trial in 0..3 {
            // one deliberately special form, then random ones
            let l: Vec<BigRational> = if trial == 0 {
                (0..m.ambient()).map(|j| q(i64::from(j == 0))).collect()
            } else {
                (0..m.ambient()).map(|_| q(rng.gen_range(-9..=9))).collect()
            };
            if l.iter().all(Zero::is_zero) {
                continue;
            }
            for i in 0..e {
                let dual = mult_map_matrix(&m, &l, i).unwrap().rank();
                assert_eq!(dual, quotient_rank(&m, &l, i), "module {:?} degree {i}", m.degrees());
            }
        }
    }
}

#[test]
fn kernel_over_f5_by_enumeration() {
    let f5 = PrimeField::new(5).unwrap();
    let a = ExactMatrix::from_i64_rows(f5, &[&[1, 2, 3], &[4, 5, 6]]).unwrap();
    let mut kernel = 0;
    for x in 0..5i64 {
        for y in 0..5 {
            for z in 0..5 {
                let v = [f5.from_i64(x), f5.from_i64(y), f5.from_i64(z)];
                if a.mul_vec(&v).iter().all(|c| f5.is_zero(c)) {
                    kernel += 1;
                }
            }
        }
    }
    assert_eq!(kernel, 5);
    assert_eq!(a.rank(), 2);
    let basis = a.kernel_basis();
    assert_eq!(basis.len(), 1);
    assert!(a.mul_vec(&basis[0]).iter().all(|c| f5.is_zero(c)));
}

/// Random specializations never exceed the symbolic rank and reach it with
/// probability at least `1 - deg/|S|`, `deg <= rank` for linear entries.
#[test]
fn schwartz_zippel_sampling() {
    let m = build_example7(3).unwrap();
    let p = mult_map_param(&m, 2).unwrap();
    let generic = symbolic_rank(&p);
    assert_eq!(generic, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let bound = 1000i64;
    let samples = 1000;
    let mut below = 0;
    for _ in 0..samples {
        let point: Vec<BigRational> = (0..p.params()).map(|_| q(rng.gen_range(-bound..=bound))).collect();
        let r = p.eval(&point).rank();
        assert!(r <= generic);
        below += usize::from(r < generic);
    }
    let expected_failures = samples as f64 * generic as f64 / (2 * bound + 1) as f64;
    assert!((below as f64) <= expected_failures + 3.0 * expected_failures.sqrt() + 1.0, "{below} of {samples} below generic rank");
}

#[test]
fn prop8_generic_rank_is_eight_at_two_primes() {
    let m = build_prop8();
    let p = mult_map_param(&m, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut best = 0;
    for _ in 0..100 {
        let point: Vec<BigRational> = (0..p.params()).map(|_| q(rng.gen_range(-1_000_000..=1_000_000))).collect();
        let a = p.eval_in(&PrimeField::new(DEFAULT_PRIME as u64).unwrap(), &point).unwrap().rank();
        let b = p.eval_in(&PrimeField::new(SECOND_PRIME as u64).unwrap(), &point).unwrap().rank();
        best = best.max(a).max(b);
    }
    assert_eq!(best, 8);
    assert_eq!(symbolic_rank(&p), 8);
}
