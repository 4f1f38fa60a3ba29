mod oracle;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posring::arith::poly::{IntPoly, NatPoly};
use posring::arith::rational::rat;
use posring::arith::AlgebraicNumber;
use posring::cyclic::{AlgebraicAdd, CyclicAlgebraic, CyclicRational, RationalAdd};
use posring::exp::{ExpKind, ExpMul, ExpSum, ExponentMonoid};
use posring::kernel::{is_atom, length_set, AtomResult, MonoidView, SearchBudget};
use posring::natpoly::factorizations_natpoly;
use posring::numerical::{NumericalAdd, NumericalMonoid};
use posring::ray::RaySemiring;

fn dense(p: &NatPoly) -> oracle::Dense {
    p.as_int().to_dense().iter().map(|c| c.to_i64().unwrap()).collect()
}

fn kernel_factorizations(f: &[i64]) -> BTreeSet<Vec<oracle::Dense>> {
    let coeffs: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let set = factorizations_natpoly(&NatPoly::from_u64(&coeffs)).unwrap();
    assert!(set.complete);
    set.factorizations
        .iter()
        .map(|fz| {
            let mut v: Vec<oracle::Dense> = fz.atoms().map(dense).collect();
            v.sort();
            v
        })
        .collect()
}

#[test]
fn natpoly_matches_trial_division() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let deg = rng.gen_range(0..=6);
        let mut f: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..=4)).collect();
        f[deg] = rng.gen_range(1..=4);
        if f == [1] {
            continue;
        }
        assert_eq!(kernel_factorizations(&f), oracle::natpoly_factorizations(&f), "f = {f:?}");
    }
}

#[test]
fn natpoly_worked_example() {
    // (x+1)(x+2)(x^2-x+3)
    let f = oracle::mul(&oracle::mul(&[1, 1], &[2, 1]), &[3, -1, 1]);
    let want = oracle::natpoly_factorizations(&f);
    assert_eq!(want.len(), 2);
    assert!(want.iter().all(|z| z.len() == 2));
    assert_eq!(kernel_factorizations(&f), want);
}

#[test]
fn numerical_lengths_match_coin_change() {
    let b = SearchBudget::new(40, 12, 200_000).unwrap();
    for gens in [vec![3u64, 5], vec![6, 9, 20]] {
        let want = oracle::coin_change_lengths(&gens, 60);
        let view = NumericalAdd {
            s: NumericalMonoid::new(&gens).unwrap(),
        };
        for n in 1..=60u64 {
            let x = BigUint::from(n);
            if !view.is_member(&x) {
                assert!(want[n as usize].is_empty(), "{n} in {gens:?}");
                continue;
            }
            let (l, complete) = length_set(&view, &x, &b).unwrap();
            assert!(complete);
            assert_eq!(l, want[n as usize], "L({n}) in {gens:?}");
        }
    }
}

#[test]
fn e_one_lengths_match_diophantine() {
    let b = SearchBudget::default();
    for p in [3u64, 5, 7] {
        let m = ExponentMonoid::new(ExpKind::UnitFractions(p)).unwrap();
        let view = ExpMul { m };
        let (l, complete) = length_set(&view, &ExpSum::exp(rat(1, 1)), &b).unwrap();
        assert!(complete);
        let want: BTreeSet<usize> = oracle::e_one_lengths(p).into_iter().map(|x| x as usize).collect();
        let primes: BTreeSet<usize> = oracle::primes_upto(p).into_iter().map(|x| x as usize).collect();
        assert_eq!(l, want);
        assert_eq!(want, primes);
    }
}

#[test]
fn ray_predicates_match_grid() {
    let s = RaySemiring::new(rat(2, 1)).unwrap();
    for (a, b) in oracle::ray_grid((2, 1), 12, 10) {
        let x = rat(a, b);
        assert_eq!(s.is_additive_atom(&x).unwrap(), oracle::ray_add_atom((a, b), (2, 1)), "{x}");
        if (a, b) != (1, 1) {
            assert_eq!(s.is_mult_atom(&x).unwrap(), oracle::ray_mul_atom((a, b), (2, 1), 12), "{x}");
        }
    }
}

#[test]
fn cyclic_atoms_are_powers() {
    let s = CyclicRational::new(rat(2, 3)).unwrap();
    let want: Vec<_> = (0..6).map(|i| num_traits::pow(rat(2, 3), i)).collect();
    assert_eq!(s.additive_atoms(6), want);
    let view = RationalAdd { s };
    let b = SearchBudget::default();
    for a in &want {
        assert_eq!(is_atom(&view, a, &b).unwrap(), AtomResult::Atom);
    }
    // 2 = 3·(2/3)
    assert!(matches!(is_atom(&view, &rat(2, 1), &b).unwrap(), AtomResult::NotAtom(..)));
    assert!(CyclicRational::new(rat(1, 2)).unwrap().additive_atoms(6).is_empty());
}

#[test]
fn radical_horizons() {
    // α = p^(1/n): 1, α, …, α^(n-1) are linearly independent over ℚ and α^n = p·1.
    for (n, p, lo, hi) in [(2u32, 5i64, 2, 3), (3, 2, 1, 2)] {
        let poly = IntPoly::parse(&format!("x^{n} - {p}")).unwrap();
        let alpha = AlgebraicNumber::new(poly, rat(lo, 1), rat(hi, 1)).unwrap();
        let view = AlgebraicAdd::new(CyclicAlgebraic::new(alpha).unwrap()).unwrap();
        assert_eq!(view.horizon(), n);
        assert_eq!(view.finite_atoms().unwrap().len(), n as usize);
    }
}
