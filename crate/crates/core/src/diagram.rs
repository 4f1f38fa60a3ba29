//! The separation battery: one witness model per non-reversible implication
//! in atomic ⇐ ACCP ⇐ BF ⇐ FF ⇐ HF/LF, each with verified certificates.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::arith::rational::rat;
use crate::cyclic::CyclicRational;
use crate::error::{Error, Result};
use crate::exp::{accp_probe, AccpProbe, ExpKind, ExponentMonoid};
use crate::kernel::{Certificate, SearchBudget};
use crate::natpoly;
use crate::ray::RaySemiring;
use crate::refute::{e_one_family, CHAIN_LENGTH};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceMode {
    /// The weaker property holds by a theorem with a closed-form statement.
    ClosedForm,
    /// Only bounded search supports the weaker property.
    Probe,
}

#[derive(Clone, Debug, Serialize)]
pub struct Separation {
    pub implication: String,
    pub model: String,
    pub holds: String,
    pub evidence_mode: EvidenceMode,
    pub evidence: String,
    pub fails: String,
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub tool: String,
    pub version: String,
    /// Seconds since the Unix epoch; excluded from determinism checks.
    pub generated_at: u64,
    pub separations: Vec<Separation>,
    pub all_verified: bool,
}

/// Non-FF family size emitted for S_2.
pub const RAY_FAMILY: usize = 25;

pub fn build_report(budget: &SearchBudget) -> Result<DiagramReport> {
    let mut seps = Vec::new();

    let q = CyclicRational::new(rat(2, 3))?;
    let chain = q
        .accp_fail_chain(CHAIN_LENGTH)
        .map_err(|e| Error::verification(format!("expected an ACCP failure chain: {e}")))?;
    seps.push(Separation {
        implication: "bi-atomic => bi-ACCP".into(),
        model: q.spec(),
        holds: "bi-atomic".into(),
        evidence_mode: EvidenceMode::ClosedForm,
        evidence: format!(
            "additive atoms are the powers q^j (horizon {}); the multiplicative monoid is atomic for q = n/d with n > 1",
            q.atom_horizon()
        ),
        fails: "ACCP on (N0[2/3], +)".into(),
        certificates: vec![chain.certificate(&q.spec())?],
    });

    let e = ExponentMonoid::new(ExpKind::UnitFractions(7))?;
    let probe = match accp_probe(&e, CHAIN_LENGTH, budget)? {
        AccpProbe::StableUpTo { length, reason } => {
            format!("no failure chain up to length {length}: {reason}; (E(M), +) is free")
        }
        AccpProbe::FailChain(_) => {
            return Err(Error::verification(format!("{} unexpectedly fails ACCP", e.spec())))
        }
    };
    let fam = e_one_family(&e, budget)?;
    seps.push(Separation {
        implication: "bi-ACCP => bi-BFS".into(),
        model: e.spec(),
        holds: "bi-ACCP".into(),
        evidence_mode: EvidenceMode::Probe,
        evidence: probe,
        fails: format!(
            "BF on the multiplicative monoid: L(e^1) = {:?}, the primes <= 7, unbounded as the prime bound grows",
            fam.lengths()
        ),
        certificates: vec![fam],
    });

    let s2 = RaySemiring::new(rat(2, 1))?;
    seps.push(Separation {
        implication: "bi-BFS => bi-FFS".into(),
        model: s2.spec(),
        holds: "bi-BFS".into(),
        evidence_mode: EvidenceMode::ClosedForm,
        evidence: "1 is not a limit point of S_2, so both monoids are BFMs".into(),
        fails: format!("FF on (S_2, +): 9/2 has at least {RAY_FAMILY} factorizations of length 2"),
        certificates: vec![s2.non_ff_family(&rat(9, 2), RAY_FAMILY)?],
    });

    seps.push(Separation {
        implication: "bi-FFS => bi-HFS, bi-FFS => bi-LFS".into(),
        model: natpoly::SPEC.into(),
        holds: "bi-FFS".into(),
        evidence_mode: EvidenceMode::ClosedForm,
        evidence: "(N0[x], +) is free; a nonzero polynomial has finitely many divisors, so (N0[x]•, ·) is an FFM".into(),
        fails: "HF and LF on (N0[x]•, ·)".into(),
        certificates: vec![natpoly::hf_witness_family(2, 1)?, natpoly::lf_witness()?],
    });

    let generated_at = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let mut report = DiagramReport {
        tool: "posring".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        generated_at,
        separations: seps,
        all_verified: false,
    };
    report.all_verified = report.verify().is_ok();
    Ok(report)
}

impl DiagramReport {
    /// Re-checks every certificate from its serialized form.
    pub fn verify(&self) -> Result<()> {
        for s in &self.separations {
            for c in &s.certificates {
                if !c.verified {
                    return Err(Error::verification(format!("{} certificate for {} is unverified", c.kind(), s.model)));
                }
                let json = serde_json::to_string(c).map_err(|e| Error::verification(e.to_string()))?;
                let back: Certificate =
                    serde_json::from_str(&json).map_err(|e| Error::verification(e.to_string()))?;
                back.verify()?;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with `generated_at` removed, for byte comparison across runs.
    pub fn to_json_without_timestamp(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(o) = v.as_object_mut() {
            o.remove("generated_at");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_is_verified_and_stable() {
        let b = SearchBudget::default();
        let r = build_report(&b).unwrap();
        assert!(r.all_verified);
        assert_eq!(r.separations.len(), 4);
        assert_eq!(r.separations[1].certificates[0].lengths(), vec![2, 3, 5, 7]);
        let again = build_report(&b).unwrap();
        assert_eq!(r.to_json_without_timestamp(), again.to_json_without_timestamp());
    }
}
