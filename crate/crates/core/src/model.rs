//! Semiring descriptors: spec-string parsing, canonical printing and
//! dispatch to the monoid view of one side.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::poly::IntPoly;
use crate::arith::rational::parse_rational;
use crate::arith::{AlgebraicNumber, Rational};
use crate::cyclic::{AlgebraicAdd, CyclicAlgebraic, CyclicRational, RationalAdd, RationalMul, UnitFractionMul};
use crate::error::{Error, Result};
use crate::exp::{ExpAdd, ExpKind, ExpMul, ExponentMonoid};
use crate::kernel::MonoidView;
use crate::natpoly::{NatPolyAdd, NatPolyMul};
use crate::numerical::{NumericalAdd, NumericalMonoid, NumericalMul};
use crate::rank2::{parse_rank2, Rank2Add, Rank2Monoid};
use crate::ray::{RayAdd, RayMul, RaySemiring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Add,
    Mul,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Add => "add",
            Side::Mul => "mul",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Side> {
        match s.trim() {
            "add" | "additive" | "+" => Ok(Side::Add),
            "mul" | "multiplicative" | "*" => Ok(Side::Mul),
            other => Err(Error::parse(0, format!("unknown side `{other}`; expected add or mul"))),
        }
    }
}

/// Callback receiving the concrete view of one side of a model.
pub trait ViewVisitor {
    type Output;
    fn visit<V: MonoidView>(self, view: &V) -> Self::Output;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiringModel {
    CyclicRational(CyclicRational),
    CyclicAlgebraic(CyclicAlgebraic),
    NatPoly,
    Exp(ExponentMonoid),
    Ray(RaySemiring),
    Numerical(NumericalMonoid),
    Rank2(Rank2Monoid),
}

fn bracketed<'a>(s: &'a str, open: &str, close: char, at: usize) -> Result<&'a str> {
    let body = &s[open.len()..];
    body.strip_suffix(close)
        .ok_or_else(|| Error::parse(at + s.len(), format!("missing `{close}`")))
}

/// Maps errors from a sub-parser that reports positions relative to `base`.
fn shift(e: Error, base: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + base, msg },
        other => other,
    }
}

fn parse_u64(s: &str, at: usize) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(at, format!("`{}` is not a nonnegative integer", s.trim())))
}

impl SemiringModel {
    pub fn parse(spec: &str) -> Result<SemiringModel> {
        let lead = spec.len() - spec.trim_start().len();
        let s = spec.trim();
        if s == "N0" {
            return Ok(SemiringModel::CyclicRational(CyclicRational::new(<Rational as num_traits::One>::one())?));
        }
        if s == "N0[x]" {
            return Ok(SemiringModel::NatPoly);
        }
        if s.starts_with("N0[alg(") {
            let body = bracketed(s, "N0[alg(", ']', lead)?;
            let body = body
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(lead + s.len() - 1, "missing `)` after alg("))?;
            let base = lead + "N0[alg(".len();
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::parse(base, "expected alg(poly, lo, hi)"));
            }
            let p = IntPoly::parse_at(parts[0], base)?;
            let lo_at = base + parts[0].len() + 1;
            let hi_at = lo_at + parts[1].len() + 1;
            let lo = parse_rational(parts[1].trim()).map_err(|e| shift(e, lo_at))?;
            let hi = parse_rational(parts[2].trim()).map_err(|e| shift(e, hi_at))?;
            let alpha = AlgebraicNumber::new(p, lo, hi)?;
            return Ok(match alpha.as_rational() {
                Some(q) => SemiringModel::CyclicRational(CyclicRational::new(q)?),
                None => SemiringModel::CyclicAlgebraic(CyclicAlgebraic::new(alpha)?),
            });
        }
        if s.starts_with("N0[") {
            let body = bracketed(s, "N0[", ']', lead)?;
            let q = parse_rational(body.trim()).map_err(|e| shift(e, lead + 3))?;
            return Ok(SemiringModel::CyclicRational(CyclicRational::new(q)?));
        }
        if s.starts_with("ray(") {
            let body = bracketed(s, "ray(", ')', lead)?;
            let r = parse_rational(body.trim()).map_err(|e| shift(e, lead + 4))?;
            return Ok(SemiringModel::Ray(RaySemiring::new(r)?));
        }
        if s.starts_with("E(") {
            let body = bracketed(s, "E(", ')', lead)?.trim();
            let base = lead + 2;
            let kind = if let Some(v) = body.strip_prefix("unitfrac<=") {
                ExpKind::UnitFractions(parse_u64(v, base + 10)?)
            } else if let Some(v) = body.strip_prefix("floorsqrt<=") {
                ExpKind::FloorSqrt(parse_u64(v, base + 11)?)
            } else if let Some(v) = body.strip_prefix("mixedsq<=") {
                let k = parse_u64(v, base + 9)?;
                if k == 0 || k > 64 {
                    return Err(Error::parse(base + 9, "mixedsq needs 1 <= K <= 64"));
                }
                ExpKind::MixedSquares(k as u32)
            } else if let Some(v) = body.strip_prefix("gen:") {
                let mut at = base + 4;
                let mut gens = Vec::new();
                for g in v.split(',') {
                    gens.push(parse_rational(g.trim()).map_err(|e| shift(e, at))?);
                    at += g.len() + 1;
                }
                ExpKind::Generated(gens)
            } else {
                return Err(Error::parse(
                    base,
                    "expected unitfrac<=P, floorsqrt<=P, mixedsq<=K or gen:list",
                ));
            };
            return Ok(SemiringModel::Exp(ExponentMonoid::new(kind)?));
        }
        if s.starts_with("numerical(") {
            let body = bracketed(s, "numerical(", ')', lead)?;
            let mut at = lead + 10;
            let mut gens = Vec::new();
            for g in body.split(',') {
                gens.push(parse_u64(g, at)?);
                at += g.len() + 1;
            }
            return Ok(SemiringModel::Numerical(NumericalMonoid::new(&gens)?));
        }
        if s.starts_with("rank2") {
            return Ok(SemiringModel::Rank2(parse_rank2(s).map_err(|e| shift(e, lead))?));
        }
        Err(Error::parse(
            lead,
            format!("unknown model `{s}`; expected N0, N0[q], N0[alg(...)], N0[x], ray(r), E(...), numerical(...) or rank2(...)"),
        ))
    }

    pub fn spec(&self) -> String {
        match self {
            SemiringModel::CyclicRational(c) => c.spec(),
            SemiringModel::CyclicAlgebraic(c) => {
                let a = c.alpha();
                let p = a.min_poly().to_string().replace(' ', "");
                format!("N0[alg({p}, {}, {})]", a.lo(), a.hi())
            }
            SemiringModel::NatPoly => crate::natpoly::SPEC.to_string(),
            SemiringModel::Exp(m) => m.spec(),
            SemiringModel::Ray(r) => r.spec(),
            SemiringModel::Numerical(n) => n.spec(),
            SemiringModel::Rank2(m) => m.spec(),
        }
    }

    /// Short family name used in reports.
    pub fn family(&self) -> &'static str {
        match self {
            SemiringModel::CyclicRational(_) => "cyclic-rational",
            SemiringModel::CyclicAlgebraic(_) => "cyclic-algebraic",
            SemiringModel::NatPoly => "natpoly",
            SemiringModel::Exp(_) => "exponential",
            SemiringModel::Ray(_) => "ray",
            SemiringModel::Numerical(_) => "numerical",
            SemiringModel::Rank2(_) => "rank2",
        }
    }

    /// Runs `visitor` on the monoid view of `side`.
    pub fn with_view<T: ViewVisitor>(&self, side: Side, visitor: T) -> Result<T::Output> {
        Ok(match (self, side) {
            (SemiringModel::CyclicRational(c), Side::Add) => visitor.visit(&RationalAdd { s: c.clone() }),
            (SemiringModel::CyclicRational(c), Side::Mul) => {
                if c.is_antimatter() {
                    visitor.visit(&UnitFractionMul { s: c.clone() })
                } else {
                    visitor.visit(&RationalMul { s: c.clone() })
                }
            }
            (SemiringModel::CyclicAlgebraic(c), Side::Add) => visitor.visit(&AlgebraicAdd::new(c.clone())?),
            (SemiringModel::CyclicAlgebraic(_), Side::Mul) => {
                return Err(Error::unsupported(
                    "the multiplicative monoid of N0[alpha] for irrational alpha is not modeled",
                ))
            }
            (SemiringModel::NatPoly, Side::Add) => visitor.visit(&NatPolyAdd),
            (SemiringModel::NatPoly, Side::Mul) => visitor.visit(&NatPolyMul),
            (SemiringModel::Exp(m), Side::Add) => visitor.visit(&ExpAdd { m: m.clone() }),
            (SemiringModel::Exp(m), Side::Mul) => visitor.visit(&ExpMul { m: m.clone() }),
            (SemiringModel::Ray(r), Side::Add) => visitor.visit(&RayAdd { s: r.clone() }),
            (SemiringModel::Ray(r), Side::Mul) => visitor.visit(&RayMul { s: r.clone() }),
            (SemiringModel::Numerical(n), Side::Add) => visitor.visit(&NumericalAdd { s: n.clone() }),
            (SemiringModel::Numerical(n), Side::Mul) => visitor.visit(&NumericalMul { s: n.clone() }),
            (SemiringModel::Rank2(m), Side::Add) => visitor.visit(&Rank2Add { m: m.clone() }),
            (SemiringModel::Rank2(_), Side::Mul) => {
                return Err(Error::unsupported(
                    "rank-2 monoids carry no multiplication; use --side add",
                ))
            }
        })
    }
}

impl fmt::Display for SemiringModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl FromStr for SemiringModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<SemiringModel> {
        SemiringModel::parse(s)
    }
}
