//! Dense polynomials over 𝔽_p for a word-sized odd prime p, with
//! Cantor-Zassenhaus factorization of square-free monic polynomials.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

pub type Fp = Vec<u64>;

pub fn trim(a: &mut Fp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn deg(a: &Fp) -> Option<usize> {
    a.len().checked_sub(1)
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

pub fn add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut c: Fp = (0..n)
        .map(|k| (a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut c);
    c
}

pub fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut c: Fp = (0..n)
        .map(|k| (a.get(k).copied().unwrap_or(0) + p - b.get(k).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut c);
    c
}

pub fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + mulm(x, y, p)) % p;
        }
    }
    trim(&mut c);
    c
}

pub fn scale(a: &Fp, s: u64, p: u64) -> Fp {
    let mut c: Fp = a.iter().map(|&x| mulm(x, s, p)).collect();
    trim(&mut c);
    c
}

pub fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = deg(b).expect("division by zero polynomial");
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let il = inv(b[db], p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let t = mulm(r[k + db], il, p);
        if t == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - mulm(t, y, p)) % p;
        }
        q[k] = t;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divrem(a, b, p).1
}

pub fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        Some(&l) => scale(a, inv(l, p), p),
        None => Vec::new(),
    }
}

pub fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Returns `(g, s, t)` with `s·a + t·b = g`, g monic.
pub fn egcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let l = inv(*r0.last().expect("gcd of zero polynomials"), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub fn derivative(a: &Fp, p: u64) -> Fp {
    let mut c: Fp = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &x)| mulm(x, k as u64 % p, p))
        .collect();
    trim(&mut c);
    c
}

/// `b^e mod m`.
pub fn powmod(b: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut r = rem(&vec![1u64], m, p);
    let base = rem(b, m, p);
    for i in (0..e.bits()).rev() {
        r = rem(&mul(&r, &r, p), m, p);
        if e.bit(i) {
            r = rem(&mul(&r, &base, p), m, p);
        }
    }
    r
}

/// Distinct-degree factorization of a square-free monic `f`:
/// pairs `(d, product of all irreducible factors of degree d)`.
pub fn ddf(f: &Fp, p: u64) -> Vec<(usize, Fp)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut d = 0;
    while deg(&f).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = powmod(&h, &pb, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((d, g));
        }
    }
    if deg(&f).unwrap_or(0) > 0 {
        out.push((deg(&f).unwrap(), f));
    }
    out
}

/// Equal-degree splitting of a monic product of irreducibles of degree `d`.
pub fn edf<R: Rng>(f: &Fp, d: usize, p: u64, rng: &mut R) -> Vec<Fp> {
    let n = deg(f).unwrap_or(0);
    if n <= d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let mut a: Fp = (0..n).map(|_| rng.gen_range(0..p)).collect();
        trim(&mut a);
        if deg(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = sub(&powmod(&a, &e, f, p), &vec![1u64], p);
        let g = gcd(&b, f, p);
        let dg = deg(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = divrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&h, d, p, rng));
            return out;
        }
    }
}

/// Irreducible monic factors of a square-free monic polynomial, sorted.
pub fn factor_squarefree<R: Rng>(f: &Fp, p: u64, rng: &mut R) -> Vec<Fp> {
    let mut out = Vec::new();
    for (d, g) in ddf(f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

pub fn is_zero(a: &Fp) -> bool {
    a.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn egcd_identity() {
        let p = 7;
        let a = vec![1, 1]; // x+1
        let b = vec![2, 1]; // x+2
        let (g, s, t) = egcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), vec![1]);
    }

    #[test]
    fn factors_mod_p() {
        let p = 5;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x^4 - 1 = (x-1)(x-2)(x-3)(x-4) over F_5
        let f = vec![4, 0, 0, 0, 1];
        let fs = factor_squarefree(&f, p, &mut rng);
        assert_eq!(fs, vec![vec![1, 1], vec![2, 1], vec![3, 1], vec![4, 1]]);
        // x^2 + 2 has no root mod 5
        let g = vec![2, 0, 1];
        assert_eq!(factor_squarefree(&g, p, &mut rng), vec![g.clone()]);
        let prod = fs.iter().fold(vec![1u64], |acc, h| mul(&acc, h, p));
        assert_eq!(prod, f);
    }
}
