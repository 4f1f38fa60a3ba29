//! End-to-end acceptance battery. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails or exceeds its time limit.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use posring::arith::poly::{IntPoly, NatPoly};
use posring::arith::rational::rat;
use posring::arith::AlgebraicNumber;
use posring::cyclic::{AlgebraicAdd, CyclicAlgebraic, CyclicRational, Horizon, RationalAdd};
use posring::exp::{check_divisor_closed_seeded, ExpKind, ExpMul, ExpSum, ExponentMonoid};
use posring::kernel::{is_atom, length_set, AtomResult, Certificate, MonoidView, Payload, SearchBudget};
use posring::natpoly::{factorizations_natpoly, hf_witness_family, is_irreducible_natpoly, Irreducibility};
use posring::numerical::{NumericalAdd, NumericalMonoid};
use posring::ray::RaySemiring;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn reverify(c: &Certificate) -> Result<(), String> {
    check(c.verified, format!("{} not verified", c.kind()))?;
    let back: Certificate = serde_json::from_str(&serde_json::to_string(c).map_err(e)?).map_err(e)?;
    back.verify().map_err(e)
}

fn atoms() -> Outcome {
    let b = SearchBudget::default();
    let q = CyclicRational::new(rat(2, 3)).map_err(e)?;
    let want: Vec<_> = (0..6).map(|i| num_traits::pow(rat(2, 3), i)).collect();
    check(q.additive_atoms(6) == want, "N0[2/3] atoms differ from (2/3)^i")?;
    let view = RationalAdd { s: q };
    for a in &want {
        check(is_atom(&view, a, &b).map_err(e)? == AtomResult::Atom, format!("{a} not certified atomic"))?;
    }

    let half = CyclicRational::new(rat(1, 2)).map_err(e)?;
    check(half.additive_atoms(10).is_empty(), "N0[1/2] has atoms")?;
    check(matches!(half.atom_horizon(), Horizon::Zero { .. }), "N0[1/2] horizon not zero")?;

    for (n, p, lo, hi) in [(2u32, 5, 2, 3), (3, 2, 1, 2)] {
        let poly = IntPoly::parse(&format!("x^{n} - {p}")).map_err(e)?;
        let alpha = AlgebraicNumber::new(poly, rat(lo, 1), rat(hi, 1)).map_err(e)?;
        let v = AlgebraicAdd::new(CyclicAlgebraic::new(alpha).map_err(e)?).map_err(e)?;
        let k = v.finite_atoms().map(|a| a.len()).unwrap_or(0);
        check(k == n as usize, format!("root(x^{n}-{p}): {k} atoms, expected {n}"))?;
    }

    let s2 = RaySemiring::new(rat(2, 1)).map_err(e)?;
    let grid = oracle::ray_grid((2, 1), 12, 10);
    for &(a, d) in &grid {
        let x = rat(a, d);
        check(
            s2.is_additive_atom(&x).map_err(e)? == oracle::ray_add_atom((a, d), (2, 1)),
            format!("S_2 additive predicate disagrees at {x}"),
        )?;
        if (a, d) != (1, 1) {
            check(
                s2.is_mult_atom(&x).map_err(e)? == oracle::ray_mul_atom((a, d), (2, 1), 12),
                format!("S_2 multiplicative predicate disagrees at {x}"),
            )?;
        }
    }
    Ok(format!("6 + 0 + 2 + 3 atoms exact; S_2 agrees on {} grid points", grid.len()))
}

fn accp() -> Outcome {
    let q = CyclicRational::new(rat(2, 3)).map_err(e)?;
    let chain = q.accp_fail_chain(10).map_err(e)?;
    check(chain.chain.len() == 11, "chain length")?;
    let cert = chain.certificate(&q.spec()).map_err(e)?;
    reverify(&cert)?;
    let up = CyclicRational::new(rat(3, 2)).map_err(e)?;
    check(up.accp_fail_chain(10).is_err(), "3/2 produced a chain")?;
    Ok("2/3 chain of 11 terms re-verified; 3/2 gives NoChain".into())
}

fn bfs() -> Outcome {
    let b = SearchBudget::default();
    let mut out = Vec::new();
    for p in [3u64, 5, 7] {
        let view = ExpMul {
            m: ExponentMonoid::new(ExpKind::UnitFractions(p)).map_err(e)?,
        };
        let (l, complete) = length_set(&view, &ExpSum::exp(rat(1, 1)), &b).map_err(e)?;
        check(complete, format!("P = {p}: search incomplete"))?;
        let oracle: BTreeSet<usize> = oracle::e_one_lengths(p).into_iter().map(|x| x as usize).collect();
        let primes: BTreeSet<usize> = oracle::primes_upto(p).into_iter().map(|x| x as usize).collect();
        check(l == oracle, format!("P = {p}: kernel {l:?} vs oracle {oracle:?}"))?;
        check(l == primes, format!("P = {p}: {l:?} is not the primes"))?;
        out.push(format!("P={p}: {l:?}"));
    }
    Ok(out.join("; "))
}

fn ffs() -> Outcome {
    let s2 = RaySemiring::new(rat(2, 1)).map_err(e)?;
    let cert = s2.non_ff_family(&rat(9, 2), 25).map_err(e)?;
    reverify(&cert)?;
    match &cert.payload {
        Payload::NonFFFamily { factorizations, length, .. } => {
            let distinct: BTreeSet<_> = factorizations.iter().collect();
            check(*length == 2, "length is not 2")?;
            check(distinct.len() == 25, format!("{} distinct factorizations", distinct.len()))?;
            check(
                factorizations.iter().all(|f| f.iter().map(|p| p.count).sum::<usize>() == 2),
                "a factorization is not of length 2",
            )?;
        }
        _ => return Err("wrong certificate kind".into()),
    }
    Ok("25 distinct verified length-2 factorizations of 9/2".into())
}

fn hfs_lfs() -> Outcome {
    let f = IntPoly::parse("(x+1)*(x+2)*(x^2-x+3)").map_err(e)?;
    let set = factorizations_natpoly(&NatPoly::new(f).map_err(e)?).map_err(e)?;
    check(set.factorizations.len() == 2, format!("{} factorizations", set.factorizations.len()))?;
    check(set.factorizations.iter().all(|z| z.len() == 2), "a factorization is not of length 2")?;
    check(set.factorizations[0] != set.factorizations[1], "factorizations coincide")?;

    let cert = hf_witness_family(2, 1).map_err(e)?;
    reverify(&cert)?;
    let (a, b, lengths) = match &cert.payload {
        Payload::NotHF {
            factorization_a,
            factorization_b,
            lengths,
            ..
        } => (factorization_a, factorization_b, lengths),
        _ => return Err("wrong certificate kind".into()),
    };
    check(*lengths == vec![2, 3], format!("lengths {lengths:?}"))?;
    let mut involved = 0;
    for part in a.iter().chain(b) {
        let p = NatPoly::parse(&part.atom).map_err(e)?;
        check(
            is_irreducible_natpoly(&p).map_err(e)? == Irreducibility::Irreducible,
            format!("{} is reducible", part.atom),
        )?;
        involved += part.count;
    }
    check(involved == 5, format!("{involved} irreducibles involved"))?;
    Ok("2 factorizations of length 2; hf(2,1) lengths {2,3} with 5 certified irreducibles".into())
}

fn natpoly_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    while checked < 200 {
        let deg = rng.gen_range(0..=6);
        let mut f: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..=4)).collect();
        f[deg] = rng.gen_range(1..=4);
        if f == [1] {
            continue;
        }
        let coeffs: Vec<u64> = f.iter().map(|&c| c as u64).collect();
        let set = factorizations_natpoly(&NatPoly::from_u64(&coeffs)).map_err(e)?;
        let got: BTreeSet<Vec<oracle::Dense>> = set
            .factorizations
            .iter()
            .map(|z| {
                let mut v: Vec<oracle::Dense> = z
                    .atoms()
                    .map(|a| a.as_int().to_dense().iter().map(|c| c.to_i64().unwrap()).collect())
                    .collect();
                v.sort();
                v
            })
            .collect();
        check(got == oracle::natpoly_factorizations(&f), format!("disagreement on {f:?}"))?;
        checked += 1;
    }
    Ok("200 random polynomials agree with trial division".into())
}

fn divisor_closed() -> Outcome {
    let families = [
        (ExpKind::UnitFractions(7), 167),
        (ExpKind::FloorSqrt(10), 167),
        (ExpKind::MixedSquares(2), 166),
    ];
    let mut total = 0;
    let mut divisors = 0;
    for (kind, trials) in families {
        let m = ExponentMonoid::new(kind).map_err(e)?;
        let r = check_divisor_closed_seeded(&m, trials, 7);
        check(
            r.violations.is_empty(),
            format!("{}: {:?}", m.spec(), r.violations),
        )?;
        total += r.trials;
        divisors += r.divisors_checked;
    }
    check(total == 500, "trial count")?;
    Ok(format!("{total} trials, {divisors} divisors, 0 violations"))
}

fn numerical_remark() -> Outcome {
    let s = NumericalMonoid::new(&[3, 5]).map_err(e)?;
    let (lf, hf) = s.remark_witnesses(2, 3).map_err(e)?;
    reverify(&lf)?;
    reverify(&hf)?;
    match &lf.payload {
        Payload::NotLF {
            element,
            factorization_a,
            factorization_b,
            ..
        } => {
            let atoms = |f: &Vec<posring::kernel::Part>| f.iter().map(|p| p.atom.clone()).collect::<BTreeSet<_>>();
            check(element == "96", format!("NotLF element {element}"))?;
            let want = [atoms(factorization_a), atoms(factorization_b)];
            let a: BTreeSet<String> = ["3", "32"].map(String::from).into();
            let b: BTreeSet<String> = ["12", "8"].map(String::from).into();
            check(want.contains(&a) && want.contains(&b), "NotLF is not 3·32 = 12·8")?;
        }
        _ => return Err("wrong kind".into()),
    }
    match &hf.payload {
        Payload::NotHF { element, lengths, .. } => {
            check(element == "32768", format!("NotHF element {element}"))?;
            check(*lengths == vec![3, 5], format!("NotHF lengths {lengths:?}"))?;
        }
        _ => return Err("wrong kind".into()),
    }
    let view = NumericalAdd { s };
    let want = oracle::coin_change_lengths(&[3, 5], 60);
    let b = SearchBudget::new(40, 12, 200_000).map_err(e)?;
    for n in 1..=60u64 {
        let x = BigUint::from(n);
        if want[n as usize].is_empty() {
            check(!view.is_member(&x), format!("{n} should be a gap"))?;
            continue;
        }
        let (l, complete) = length_set(&view, &x, &b).map_err(e)?;
        check(complete && l == want[n as usize], format!("L({n}) = {l:?}"))?;
    }
    Ok("3·32 = 12·8 and 8^5 = 32^3 verified; lengths agree up to 60".into())
}

fn strip_timestamp(s: &str) -> Result<Value, String> {
    let mut v: Value = serde_json::from_str(s).map_err(e)?;
    v.as_object_mut().ok_or("report is not an object")?.remove("generated_at");
    Ok(v)
}

fn diagram() -> Outcome {
    let run = || -> Result<String, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_posring"))
            .args(["verify-diagram", "--json"])
            .env_remove("POSRING_BUDGET_DEFAULT")
            .output()
            .map_err(e)?;
        check(out.status.code() == Some(0), format!("exit status {:?}", out.status.code()))?;
        String::from_utf8(out.stdout).map_err(e)
    };
    let first = run()?;
    let second = run()?;
    let a = strip_timestamp(&first)?;
    check(a == strip_timestamp(&second)?, "reports differ between runs")?;
    check(a["all_verified"] == Value::Bool(true), "all_verified is false")?;
    let seps = a["separations"].as_array().ok_or("no separations")?;
    check(seps.len() == 4, format!("{} separations", seps.len()))?;
    for s in seps {
        for c in s["certificates"].as_array().ok_or("no certificates")? {
            check(c["verified"] == Value::Bool(true), "unverified certificate")?;
            let cert: Certificate = serde_json::from_value(c.clone()).map_err(e)?;
            cert.verify().map_err(e)?;
        }
    }
    Ok("4 separations, all certificates verified, deterministic, exit 0".into())
}

fn main() {
    type Criterion = (u32, &'static str, fn() -> Outcome, u64);
    let criteria: [Criterion; 9] = [
        (1, "atom formulas", atoms, 10),
        (2, "ACCP separation", accp, 1),
        (3, "BFS separation", bfs, 30),
        (4, "FFS separation", ffs, 1),
        (5, "HFS/LFS separation", hfs_lfs, 5),
        (6, "natpoly oracle equivalence", natpoly_oracle, 120),
        (7, "divisor-closedness of e(M)", divisor_closed, 30),
        (8, "numerical monoid witnesses", numerical_remark, 10),
        (9, "verify-diagram", diagram, 300),
    ];
    let mut failed = Vec::new();
    for (n, name, f, limit) in criteria {
        let t = Instant::now();
        let res = f();
        let dt = t.elapsed();
        let res = match res {
            Ok(msg) if dt > Duration::from_secs(limit) => {
                Err(format!("{msg}, but took {dt:.2?} (limit {limit} s)"))
            }
            r => r,
        };
        match res {
            Ok(msg) => println!("PASS criterion {n} ({name}): {msg} [{dt:.2?}]"),
            Err(msg) => {
                println!("FAIL criterion {n} ({name}): {msg} [{dt:.2?}]");
                failed.push(n);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
