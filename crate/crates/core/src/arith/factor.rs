//! Factorization in ℤ[x]: square-free decomposition, factoring modulo a small
//! prime, Hensel lifting and recombination of lifted factors (Zassenhaus).

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, Fp};
use super::poly::IntPoly;
use super::primes::primes_up_to;
use super::qpoly::QPoly;
use crate::error::{Error, Result};

/// `sign · content · ∏ factors`; factors are primitive, irreducible, have
/// positive leading coefficient, repeat according to multiplicity, and are
/// sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub sign: i8,
    pub content: BigUint,
    pub factors: Vec<IntPoly>,
}

impl Factored {
    pub fn product(&self) -> IntPoly {
        let c = BigInt::from(self.content.clone()) * BigInt::from(self.sign);
        self.factors
            .iter()
            .fold(IntPoly::constant(c), |acc, f| &acc * f)
    }
}

pub fn factor_int_poly(f: &IntPoly) -> Result<Factored> {
    if f.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    let sign: i8 = if f.lc().is_negative() { -1 } else { 1 };
    let content = f.content();
    let mut g = f.primitive_part();
    if sign < 0 {
        g = -&g;
    }
    let mut factors = Vec::new();
    let low = g.low_degree().unwrap_or(0);
    for _ in 0..low {
        factors.push(IntPoly::x());
    }
    g = g.unshift(low);
    if g.degree().unwrap_or(0) > 0 {
        let sqf = squarefree_part(&g);
        for h in factor_squarefree(&sqf) {
            while let Some(q) = g.div_exact(&h) {
                factors.push(h.clone());
                g = q;
            }
        }
        debug_assert!(g.is_one());
    }
    factors.sort();
    Ok(Factored {
        sign,
        content,
        factors,
    })
}

/// True iff `f` is irreducible over ℚ (nonconstant, one factor up to units).
pub fn is_irreducible_over_q(f: &IntPoly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(_) => factor_int_poly(f).is_ok_and(|fd| fd.factors.len() == 1),
    }
}

fn squarefree_part(g: &IntPoly) -> IntPoly {
    let q = QPoly::from_int(g);
    let d = q.gcd(&q.derivative());
    if d.is_constant() {
        return g.clone();
    }
    q.divrem(&d).0.to_primitive_int()
}

fn to_fp(f: &IntPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    let mut v: Fp = f
        .to_dense()
        .iter()
        .map(|a| a.mod_floor(&pb).to_u64().expect("reduced mod p"))
        .collect();
    modp::trim(&mut v);
    v
}

/// Picks a prime not dividing the leading coefficient modulo which `f` stays
/// square-free; among the first few suitable primes, the one with fewest
/// modular factors wins.
fn choose_prime(f: &IntPoly, rng: &mut ChaCha8Rng) -> (u64, Vec<Fp>) {
    let n = f.degree().unwrap() as usize;
    let lc = f.lc();
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in primes_up_to(100_000).into_iter().skip(1) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        if modp::deg(&fp) != Some(n) {
            continue;
        }
        let g = modp::gcd(&fp, &modp::derivative(&fp, p), p);
        if g.len() > 1 {
            continue;
        }
        let fs = modp::factor_squarefree(&modp::monic(&fp, p), p, rng);
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 4 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("a suitable prime exists below 100000 for desk-scale inputs")
}

fn to_bigvec(a: &Fp) -> Vec<BigInt> {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

fn big_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c.iter().map(|x| x.mod_floor(m)).collect()
}

/// Lifts `target ≡ g·h (mod p)` with g, h monic and coprime mod p to
/// `target ≡ G·H (mod p^k)`, G, H monic. `target` must be monic mod p^k.
fn hensel_pair(
    target: &[BigInt],
    g0: &Fp,
    h0: &Fp,
    p: u64,
    k: u32,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (_, s, t) = modp::egcd(g0, h0, p);
    let pb = BigInt::from(p);
    let mut g = to_bigvec(g0);
    let mut h = to_bigvec(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let gh = big_mul(&g, &h, &next);
        let n = target.len().max(gh.len());
        let mut e: Fp = (0..n)
            .map(|i| {
                let a = target.get(i).cloned().unwrap_or_default();
                let b = gh.get(i).cloned().unwrap_or_default();
                let d = (a - b).mod_floor(&next);
                debug_assert!((&d % &pj).is_zero());
                (d / &pj).mod_floor(&pb).to_u64().unwrap()
            })
            .collect();
        modp::trim(&mut e);
        let (q, gg) = modp::divrem(&modp::mul(&t, &e, p), g0, p);
        let hh = modp::add(&modp::mul(&s, &e, p), &modp::mul(&q, h0, p), p);
        for (i, c) in gg.iter().enumerate() {
            g[i] = (&g[i] + &pj * BigInt::from(*c)).mod_floor(&next);
        }
        for (i, c) in hh.iter().enumerate() {
            h[i] = (&h[i] + &pj * BigInt::from(*c)).mod_floor(&next);
        }
        pj = next;
    }
    (g, h)
}

fn hensel_lift(target: &[BigInt], factors: &[Fp], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![target.to_vec()];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[Fp]| fs.iter().fold(vec![1u64], |acc, f| modp::mul(&acc, f, p));
    let g0 = prod(&factors[..mid]);
    let h0 = prod(&factors[mid..]);
    let (g, h) = hensel_pair(target, &g0, &h0, p, k);
    let mut out = hensel_lift(&g, &factors[..mid], p, k);
    out.extend(hensel_lift(&h, &factors[mid..], p, k));
    out
}

fn symmetric(v: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m >> 1;
    IntPoly::from_dense(
        &v.iter()
            .map(|a| {
                let a = a.mod_floor(m);
                if a > half {
                    a - m
                } else {
                    a
                }
            })
            .collect::<Vec<_>>(),
    )
}

/// Irreducible factors of a primitive, square-free `f` with positive leading
/// coefficient and nonzero constant term.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return vec![f.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (p, modular) = choose_prime(f, &mut rng);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // Coefficient bound for lc times any factor: |lc|·2^n·(n+1)·max|c|.
    let lc = f.lc();
    let bound = BigInt::from(f.max_abs_coeff())
        * lc.abs()
        * (BigInt::one() << n)
        * BigInt::from(n + 1)
        * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let lc_inv = lc.modinv(&m).expect("lc is a unit mod p^k");
    let target: Vec<BigInt> = f
        .to_dense()
        .iter()
        .map(|a| (a * &lc_inv).mod_floor(&m))
        .collect();
    let lifted = hensel_lift(&target, &modular, p, k);

    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        let idx: Vec<usize> = (0..remaining.len()).collect();
        for subset in combinations(&idx, size) {
            let lcr = rest.lc();
            let prod = subset.iter().fold(vec![lcr.mod_floor(&m)], |acc, &i| {
                big_mul(&acc, &remaining[i], &m)
            });
            let cand = symmetric(&prod, &m).primitive_part();
            if cand.degree().unwrap_or(0) == 0 {
                continue;
            }
            // Cheap test on the constant terms before trial division.
            let c0 = cand.coeff(0);
            if c0.is_zero() || !(rest.coeff(0) % &c0).is_zero() {
                continue;
            }
            if let Some(q) = rest.div_exact(&cand) {
                out.push(if cand.lc().sign() == Sign::Minus { -&cand } else { cand });
                rest = if q.lc().is_negative() { -&q } else { q };
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn small_examples() {
        let fd = factor_int_poly(&p(&[2, 3, 1])).unwrap();
        assert_eq!(fd.sign, 1);
        assert_eq!(fd.content, BigUint::one());
        assert_eq!(fd.factors, vec![p(&[1, 1]), p(&[2, 1])]);

        let fd = factor_int_poly(&p(&[1, 0, 0, 1])).unwrap();
        assert_eq!(fd.factors, vec![p(&[1, 1]), p(&[1, -1, 1])]);

        let fd = factor_int_poly(&p(&[1, -1, 1])).unwrap();
        assert_eq!(fd.factors, vec![p(&[1, -1, 1])]);
    }

    #[test]
    fn sign_content_and_powers() {
        // -6 x^2 (x+1)^2
        let f = &p(&[0, 0, -6]) * &p(&[1, 2, 1]);
        let fd = factor_int_poly(&f).unwrap();
        assert_eq!(fd.sign, -1);
        assert_eq!(fd.content, BigUint::from(6u32));
        assert_eq!(fd.factors, vec![p(&[0, 1]), p(&[0, 1]), p(&[1, 1]), p(&[1, 1])]);
        assert_eq!(fd.product(), f);
        assert!(factor_int_poly(&IntPoly::zero()).is_err());
    }

    #[test]
    fn needs_recombination() {
        // x^4 + 1 is irreducible over ℤ but splits modulo every prime.
        let f = p(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_int_poly(&f).unwrap().factors, vec![f.clone()]);
        // (2x+1)(3x^2-1)(x^4+1): non-monic factors
        let g = &(&p(&[1, 2]) * &p(&[-1, 0, 3])) * &f;
        let fd = factor_int_poly(&g).unwrap();
        assert_eq!(fd.factors, vec![p(&[1, 2]), p(&[-1, 0, 3]), f]);
    }

    #[test]
    fn natpoly_example() {
        // (x+2)^2 (x^2-x+1) = x^4 + 3x^3 + x^2 + 4
        let f = p(&[4, 0, 1, 3, 1]);
        let fd = factor_int_poly(&f).unwrap();
        assert_eq!(fd.factors, vec![p(&[2, 1]), p(&[2, 1]), p(&[1, -1, 1])]);
    }
}
