//! Brute-force reference implementations. These use only machine integers and
//! exhaustive search so they share no code with the library under test.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// Dense coefficient vector, lowest degree first, no trailing zeros.
pub type Dense = Vec<i64>;

fn trim(mut p: Dense) -> Dense {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn eval(p: &[i64], x: i64) -> i64 {
    p.iter().rev().fold(0, |acc, &c| acc * x + c)
}

pub fn mul(a: &[i64], b: &[i64]) -> Dense {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Exact quotient `f / g` if it exists with nonnegative integer coefficients.
fn div_nat(f: &[i64], g: &[i64]) -> Option<Dense> {
    if g.len() > f.len() {
        return None;
    }
    let lc = *g.last().unwrap();
    let mut r = f.to_vec();
    let mut q = vec![0; f.len() - g.len() + 1];
    for k in (0..q.len()).rev() {
        let top = r[k + g.len() - 1];
        if top % lc != 0 {
            return None;
        }
        let c = top / lc;
        if c < 0 {
            return None;
        }
        q[k] = c;
        for (j, gj) in g.iter().enumerate() {
            r[k + j] -= c * gj;
        }
    }
    r.iter().all(|&c| c == 0).then(|| trim(q))
}

/// Every divisor of `f` in (ℕ₀[x]•, ·), by trial division over all
/// nonnegative polynomials of degree ≤ deg f with coefficients ≤ max coeff f.
/// (If g·h = f with h ≠ 0 nonnegative, each g_i is at most some f_j.)
pub fn natpoly_divisors(f: &[i64]) -> Vec<Dense> {
    let bound = *f.iter().max().unwrap();
    let (f1, f2, f3) = (eval(f, 1), eval(f, 2), eval(f, 3));
    let mut out = Vec::new();
    let mut g = vec![0i64; f.len()];
    loop {
        let mut i = 0;
        while i < g.len() && g[i] == bound {
            g[i] = 0;
            i += 1;
        }
        if i == g.len() {
            break;
        }
        g[i] += 1;
        let (g1, g2, g3) = (eval(&g, 1), eval(&g, 2), eval(&g, 3));
        if f1 % g1 != 0 || f2 % g2 != 0 || f3 % g3 != 0 {
            continue;
        }
        let t = trim(g.clone());
        if div_nat(f, &t).is_some() {
            out.push(t);
        }
    }
    out.sort();
    out
}

/// All factorizations of `f` into irreducibles of (ℕ₀[x]•, ·), each a sorted
/// list of atoms.
pub fn natpoly_factorizations(f: &[i64]) -> BTreeSet<Vec<Dense>> {
    let divs = natpoly_divisors(f);
    let one = vec![1];
    let atoms: Vec<Dense> = divs
        .iter()
        .filter(|d| **d != one)
        .filter(|d| {
            !divs
                .iter()
                .any(|e| *e != one && e != *d && e.len() <= d.len() && div_nat(d, e).is_some())
        })
        .cloned()
        .collect();
    let mut out = BTreeSet::new();
    fn go(f: &[i64], atoms: &[Dense], from: usize, acc: &mut Vec<Dense>, out: &mut BTreeSet<Vec<Dense>>) {
        if f == [1] {
            out.insert(acc.clone());
            return;
        }
        for (i, a) in atoms.iter().enumerate().skip(from) {
            if let Some(q) = div_nat(f, a) {
                acc.push(a.clone());
                go(&q, atoms, i, acc, out);
                acc.pop();
            }
        }
    }
    if f != [1] {
        go(f, &atoms, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Length sets of 0..=max in the additive monoid generated by `gens`
/// (coin change over lengths).
pub fn coin_change_lengths(gens: &[u64], max: u64) -> Vec<BTreeSet<usize>> {
    let mut l: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); max as usize + 1];
    l[0].insert(0);
    for n in 1..=max as usize {
        let mut s = BTreeSet::new();
        for &g in gens {
            if (g as usize) <= n {
                s.extend(l[n - g as usize].iter().map(|k| k + 1));
            }
        }
        l[n] = s;
    }
    l
}

pub fn primes_upto(p: u64) -> Vec<u64> {
    (2..=p).filter(|&n| (2..n).all(|d| n % d != 0)).collect()
}

/// `{Σ c_p : Σ (L/p)·c_p = L}` with `L = lcm` of the primes ≤ `p_max`:
/// the lengths of e¹ as a product of atoms e^(1/p).
pub fn e_one_lengths(p_max: u64) -> BTreeSet<u64> {
    let ps = primes_upto(p_max);
    let l: u64 = ps.iter().product();
    let mut out = BTreeSet::new();
    fn go(ps: &[u64], l: u64, rest: u64, len: u64, out: &mut BTreeSet<u64>) {
        match ps {
            [] => {
                if rest == 0 {
                    out.insert(len);
                }
            }
            [p, tail @ ..] => {
                let w = l / p;
                for c in 0..=rest / w {
                    go(tail, l, rest - c * w, len + c, out);
                }
            }
        }
    }
    go(&ps, l, l, 0, &mut out);
    out
}

/// `a/b` as a reduced pair.
pub type Frac = (i64, i64);

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn frac(a: i64, b: i64) -> Frac {
    let g = gcd(a, b);
    (a / g, b / g)
}

/// Membership in S_r = ℕ₀ ∪ ℚ_{≥r}, with r = rn/rd.
pub fn in_ray((a, b): Frac, (rn, rd): Frac) -> bool {
    a >= 0 && (b == 1 || a * rd >= rn * b)
}

/// Reduced fractions in (0, max] with denominator ≤ `den` lying in S_r.
pub fn ray_grid(r: Frac, den: i64, max: i64) -> Vec<Frac> {
    let mut v: BTreeSet<Frac> = BTreeSet::new();
    for b in 1..=den {
        for a in 1..=max * b {
            let f = frac(a, b);
            if in_ray(f, r) {
                v.insert(f);
            }
        }
    }
    v.into_iter().collect()
}

/// Additive atom by exhaustive split search over y = k/b, 0 < y < x. A split
/// x = y + z with x < 2r forces one summand to be an integer, so the other
/// has x's denominator; for x ≥ 2r the split r + (x - r) lies on the grid of
/// step 1/(b·rd).
pub fn ray_add_atom((a, b): Frac, r: Frac) -> bool {
    let step = b * r.1;
    let top = a * r.1;
    !(1..top).any(|k| {
        let y = frac(k, step);
        let z = frac(top - k, step);
        in_ray(y, r) && in_ray(z, r)
    })
}

/// Multiplicative atom by exhaustive search over factors y = c/d with d up
/// to `den` and 1 < y < x.
pub fn ray_mul_atom((a, b): Frac, r: Frac, den: i64) -> bool {
    if (a, b) == (1, 1) {
        return false;
    }
    for d in 1..=den {
        for c in (d + 1)..(a * d + b - 1) / b + 1 {
            let y = frac(c, d);
            // z = x / y = (a d) / (b c)
            let z = frac(a * d, b * c);
            if y.0 * b >= a * y.1 || z.0 <= z.1 {
                continue;
            }
            if in_ray(y, r) && in_ray(z, r) {
                return false;
            }
        }
    }
    true
}
