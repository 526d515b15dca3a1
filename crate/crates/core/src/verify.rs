//! Identity checks and round-trip checks, reported per `n`.
//!
//! Each side of an identity is computed on its own: enumeration against
//! enumeration, or enumeration against product coefficients.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::{phi, psi};
use crate::enumerate::{count_family_series, for_each_classical_member, for_each_member};
use crate::error::{Error, Result};
use crate::families::{b1_core, is_in_deta, FamilyId};
use crate::params::{check_j, FamilyParams};
use crate::series::{gf_a0bar, gf_b0bar_factored, gf_bj};
use crate::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Identity {
    /// Overlined `A_0` against `B0bar`.
    A0barEqB0bar,
    /// Classical `B_j` against its product.
    GfBj,
    /// Overlined `A_0` against its product.
    GfA0bar,
    /// `B0bar` against `(-q^eta; q^eta)_inf` times the `B_1` product at `k - 1`.
    B0barEqProduct,
    /// Classical `A_j` against `B_j`.
    AjEqBj,
}

impl Identity {
    pub fn uses_j(self) -> bool {
        matches!(self, Identity::GfBj | Identity::AjEqBj)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::A0barEqB0bar => "A0bar_eq_B0bar",
            Identity::GfBj => "gfBj",
            Identity::GfA0bar => "gfA0bar",
            Identity::B0barEqProduct => "B0bar_eq_product",
            Identity::AjEqBj => "Aj_eq_Bj",
        })
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "main" | "A0bar_eq_B0bar" => Identity::A0barEqB0bar,
            "gfBj" => Identity::GfBj,
            "gfA0bar" => Identity::GfA0bar,
            "factor" | "B0bar_eq_product" => Identity::B0barEqProduct,
            "classical" | "Aj_eq_Bj" => Identity::AjEqBj,
            _ => return Err(Error::InvalidParams(format!("unknown identity {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NCheck {
    pub n: u64,
    pub lhs: i128,
    pub rhs: i128,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    /// The two sides disagree at `q^n`.
    Coefficients { n: u64, lhs: i128, rhs: i128 },
    /// A single instance that failed a check.
    Instance {
        n: u64,
        subject: String,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub identity: String,
    pub params: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u8>,
    pub max_n: u64,
    pub per_n: Vec<NCheck>,
    pub overall: bool,
    pub witnesses: Vec<Witness>,
}

impl VerifyReport {
    fn new(
        identity: String,
        p: &FamilyParams,
        j: Option<u8>,
        max_n: u64,
        per_n: Vec<NCheck>,
        mut witnesses: Vec<Witness>,
    ) -> Self {
        for c in per_n.iter().filter(|c| !c.pass) {
            let has_instance = witnesses
                .iter()
                .any(|w| matches!(w, Witness::Instance { n, .. } if *n == c.n));
            if !has_instance {
                witnesses.push(Witness::Coefficients {
                    n: c.n,
                    lhs: c.lhs,
                    rhs: c.rhs,
                });
            }
        }
        witnesses.sort_by_key(|w| match w {
            Witness::Coefficients { n, .. } | Witness::Instance { n, .. } => *n,
        });
        let overall = per_n.iter().all(|c| c.pass);
        VerifyReport {
            identity,
            params: p.to_string(),
            j,
            max_n,
            per_n,
            overall,
            witnesses,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,lhs,rhs,pass\n");
        for c in &self.per_n {
            let _ = writeln!(out, "{},{},{},{}", c.n, c.lhs, c.rhs, c.pass);
        }
        out
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        let j = self.j.map(|j| format!(" j={j}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{} {}{j} up to n={}",
            self.identity, self.params, self.max_n
        );
        let _ = writeln!(out, "{:>4} {:>12} {:>12}  pass", "n", "lhs", "rhs");
        for c in &self.per_n {
            let _ = writeln!(
                out,
                "{:>4} {:>12} {:>12}  {}",
                c.n,
                c.lhs,
                c.rhs,
                if c.pass { "yes" } else { "NO" }
            );
        }
        for w in &self.witnesses {
            match w {
                Witness::Coefficients { n, lhs, rhs } => {
                    let _ = writeln!(out, "mismatch at n={n}: {lhs} != {rhs}");
                }
                Witness::Instance { n, subject, reason } => {
                    let _ = writeln!(out, "failure at n={n}: {subject}: {reason}");
                }
            }
        }
        let _ = writeln!(
            out,
            "overall: {}",
            if self.overall { "PASS" } else { "FAIL" }
        );
        out
    }
}

fn compare(lhs: &[i128], rhs: &[i128]) -> Vec<NCheck> {
    lhs.iter()
        .zip(rhs)
        .enumerate()
        .map(|(n, (&l, &r))| NCheck {
            n: n as u64,
            lhs: l,
            rhs: r,
            pass: l == r,
        })
        .collect()
}

fn counts(f: FamilyId, p: &FamilyParams, max_n: u64) -> Result<Vec<i128>> {
    Ok(count_family_series(f, p, max_n)?
        .into_iter()
        .map(i128::from)
        .collect())
}

fn coefficients(s: Series) -> Vec<i128> {
    s.coeffs().iter().map(|&c| i128::from(c)).collect()
}

/// Compares the two sides of `which` for every `n <= max_n`. `j` is used by
/// the identities involving the classical families and ignored otherwise.
pub fn verify_identity(
    which: Identity,
    p: &FamilyParams,
    j: u8,
    max_n: u64,
) -> Result<VerifyReport> {
    check_j(j)?;
    let bound = max_n as usize;
    let (lhs, rhs) = match which {
        Identity::A0barEqB0bar => {
            p.require_a0bar()?;
            p.require_overpartition()?;
            (
                counts(FamilyId::A0bar, p, max_n)?,
                counts(FamilyId::B0bar, p, max_n)?,
            )
        }
        Identity::GfBj => {
            p.require_classical_b()?;
            (
                counts(FamilyId::Bj(j), p, max_n)?,
                coefficients(gf_bj(p, j, bound)?),
            )
        }
        Identity::GfA0bar => {
            p.require_a0bar()?;
            (
                counts(FamilyId::A0bar, p, max_n)?,
                coefficients(gf_a0bar(p, bound)?),
            )
        }
        Identity::B0barEqProduct => {
            p.require_overpartition()?;
            (
                counts(FamilyId::B0bar, p, max_n)?,
                coefficients(gf_b0bar_factored(p, bound)?),
            )
        }
        Identity::AjEqBj => {
            p.require_classical_a(j)?;
            p.require_classical_b()?;
            (
                counts(FamilyId::Aj(j), p, max_n)?,
                counts(FamilyId::Bj(j), p, max_n)?,
            )
        }
    };
    let per_n = compare(&lhs, &rhs);
    let j = which.uses_j().then_some(j);
    Ok(VerifyReport::new(
        which.to_string(),
        p,
        j,
        max_n,
        per_n,
        Vec::new(),
    ))
}

fn roundtrip_at(p: &FamilyParams, reduced: &FamilyParams, n: u64) -> (NCheck, Vec<Witness>) {
    let mut witnesses = Vec::new();
    let mut fail = |subject: String, reason: String| {
        witnesses.push(Witness::Instance { n, subject, reason });
    };

    let mut forward = 0i128;
    for_each_member(FamilyId::B0bar, p, n, |pi| {
        forward += 1;
        let res = match phi(&pi, p) {
            Ok(res) => res,
            Err(e) => return fail(pi.to_string(), format!("phi failed: {e}")),
        };
        if !is_in_deta(&res.tau, p.eta()) || !b1_core(&res.mu, reduced) {
            return fail(
                pi.to_string(),
                format!("phi left the target families: ({}; {})", res.tau, res.mu),
            );
        }
        if res.tau.weight() + res.mu.weight() != pi.weight()
            || res.tau.len() + res.mu.len() != pi.len()
        {
            return fail(pi.to_string(), "weight or length not additive".into());
        }
        match psi(&res.tau, &res.mu, p) {
            Ok(back) if back.pi == pi => {}
            Ok(back) => fail(pi.to_string(), format!("psi(phi(pi)) = {}", back.pi)),
            Err(e) => fail(pi.to_string(), format!("psi failed: {e}")),
        }
    });

    let mut backward = 0i128;
    for a in 0..=n {
        let mut taus = Vec::new();
        for_each_classical_member(FamilyId::Deta, p, a, |tau| taus.push(tau));
        if taus.is_empty() {
            continue;
        }
        for_each_member(FamilyId::B1, reduced, n - a, |mu| {
            for tau in &taus {
                backward += 1;
                let subject = format!("({tau}; {mu})");
                match psi(tau, &mu, p).and_then(|back| phi(&back.pi, p)) {
                    Ok(res) if res.tau == *tau && res.mu == mu => {}
                    Ok(res) => fail(subject, format!("phi(psi) = ({}; {})", res.tau, res.mu)),
                    Err(e) => fail(subject, format!("round trip failed: {e}")),
                }
            }
        });
    }

    let pass = witnesses.is_empty() && forward == backward;
    (
        NCheck {
            n,
            lhs: forward,
            rhs: backward,
            pass,
        },
        witnesses,
    )
}

/// Runs `psi . phi` on every `B0bar` member of weight `<= max_n` and
/// `phi . psi` on every pair of total weight `<= max_n`. `lhs` counts the
/// members, `rhs` the pairs.
pub fn roundtrip_check(p: &FamilyParams, max_n: u64) -> Result<VerifyReport> {
    p.require_overpartition()?;
    if p.k() < 3 {
        return Err(Error::InvalidParams("the bijection needs k >= 3".into()));
    }
    let reduced = p.with_k(p.k() - 1)?;
    let results: Vec<(NCheck, Vec<Witness>)> = (0..=max_n)
        .into_par_iter()
        .map(|n| roundtrip_at(p, &reduced, n))
        .collect();
    let mut per_n = Vec::with_capacity(results.len());
    let mut witnesses = Vec::new();
    for (check, w) in results {
        per_n.push(check);
        witnesses.extend(w);
    }
    Ok(VerifyReport::new(
        "roundtrip".into(),
        p,
        None,
        max_n,
        per_n,
        witnesses,
    ))
}
