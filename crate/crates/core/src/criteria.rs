//! Elimination and reduction rules used by the classifier.
//!
//! The semi-Cartan incompatibility for `C_ns^+(ell)` is checked by
//! exhaustive search; the remaining rules are thin wrappers around cited
//! facts or elementary inequalities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::arith::{gcd, is_prime, mult_order};
use crate::atlas::{nonresidue, NamedSubgroup, NamedSubgroupKind};
use crate::classify::ImageClass;
use crate::error::{Error, Result};
use crate::facts::*;
use crate::gl2::Mat2;

pub const RAMIFICATION_INDICES: [u32; 5] = [1, 2, 3, 4, 6];

/// Ramification index `e` of the minimal extension of `Q_ell` where `E`
/// acquires good or multiplicative reduction, and `f = gcd(ell - 1, e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationData {
    pub e: u32,
    pub f: u32,
}

impl RamificationData {
    pub fn new(ell: u32, e: u32) -> Result<Self> {
        if !RAMIFICATION_INDICES.contains(&e) {
            return Err(Error::InvalidParameter(format!(
                "ramification index {e} not in {{1,2,3,4,6}}"
            )));
        }
        let f = gcd(ell as u64 - 1, e as u64) as u32;
        debug_assert!(f < 5 || f == 6);
        Ok(RamificationData { e, f })
    }
}

/// `{gcd(ell - 1, e) : e ∈ {1, 2, 3, 4, 6}}`.
pub fn admissible_f(ell: u32) -> Result<BTreeSet<u32>> {
    if ell < 5 || !is_prime(ell as u64) {
        return Err(Error::InvalidParameter(format!(
            "admissible f needs a prime >= 5, got {ell}"
        )));
    }
    RAMIFICATION_INDICES
        .iter()
        .map(|&e| RamificationData::new(ell, e).map(|r| r.f))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiCartanCheck {
    pub ell: u32,
    pub f: u32,
    pub epsilon: u32,
    /// `|D^f| = (ell - 1)/f`.
    pub order: u64,
    pub embeds: bool,
    pub witness: Option<[u32; 4]>,
}

/// Whether `C_ns^+(ell)` contains a conjugate of `D^f`, using the least
/// non-residue.
pub fn semi_cartan_embeds(ell: u32, f: u32) -> Result<SemiCartanCheck> {
    semi_cartan_embeds_with_epsilon(ell, f, nonresidue(ell)?)
}

/// `D^f` is cyclic, generated by `diag(a, 1)` with `a` of order
/// `k = (ell - 1)/f`. For `a ≠ 1` the two eigenvalues are distinct, so a
/// conjugate of the generator is exactly a matrix with characteristic
/// polynomial `(x - 1)(x - a)`; such a matrix automatically has order `k`.
/// The search therefore scans `C_ns^+(ell)` for trace `1 + a`, determinant
/// `a`, order `k`, over every `a` of order `k`.
pub fn semi_cartan_embeds_with_epsilon(ell: u32, f: u32, epsilon: u32) -> Result<SemiCartanCheck> {
    let allowed = admissible_f(ell)?;
    if !allowed.contains(&f) {
        return Err(Error::InvalidParameter(format!(
            "f = {f} is not admissible at ell = {ell} (allowed {allowed:?})"
        )));
    }
    let group = NamedSubgroup::new(NamedSubgroupKind::NonsplitCartanNormalizer, ell)
        .with_epsilon(epsilon)
        .build()?;
    let p = ell as u64;
    let k = (p - 1) / f as u64;
    let mut witness = None;
    if k == 1 {
        // D^f is trivial and always embeds.
        witness = Some(Mat2::identity());
    } else {
        for a in 2..p {
            if mult_order(a, p) != Some(k) {
                continue;
            }
            let trace = ((1 + a) % p) as u32;
            if let Some(m) = group.find_element_with_charpoly(trace, a as u32, Some(k)) {
                witness = Some(m);
                break;
            }
        }
    }
    Ok(SemiCartanCheck {
        ell,
        f,
        epsilon,
        order: k,
        embeds: witness.is_some(),
        witness: witness.map(|m| [m.a, m.b, m.c, m.d]),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupersingularForced {
    pub ell: u32,
    pub forced: bool,
    pub checks: Vec<SemiCartanCheck>,
    /// Citation used instead of the computation, if any.
    pub override_citation: Option<&'static str>,
}

/// Whether an image inside `C_ns^+(ell)` forces potentially supersingular
/// reduction: no admissible `D^f` fits. At `ell = 13` the computation
/// finds `D^6`, and the conclusion instead rests on the absence of such
/// curves.
pub fn supersingular_forced(ell: u32) -> Result<SupersingularForced> {
    if ell <= 7 {
        return Err(Error::OutOfScope(format!(
            "not applicable: ell = {ell} <= 7"
        )));
    }
    let checks = admissible_f(ell)?
        .into_iter()
        .map(|f| semi_cartan_embeds(ell, f))
        .collect::<Result<Vec<_>>>()?;
    let computed = checks.iter().all(|c| !c.embeds);
    if ell == 13 {
        return Ok(SupersingularForced {
            ell,
            forced: true,
            checks,
            override_citation: Some(CITE_BDMTV_NONSPLIT_13),
        });
    }
    Ok(SupersingularForced {
        ell,
        forced: computed,
        checks,
        override_citation: None,
    })
}

/// `d > g` rules out isolation.
pub fn riemann_roch_eliminates(degree: u64, genus: u64) -> bool {
    degree > genus
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Eliminates,
    Survives,
    NotApplicable,
    /// A reduction step that holds, such as descending to level `ell`.
    Applies,
    InsufficientData,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Eliminates => "eliminates",
            Outcome::Survives => "survives",
            Outcome::NotApplicable => "not applicable",
            Outcome::Applies => "applies",
            Outcome::InsufficientData => "insufficient external data",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Justification {
    pub summary: String,
    pub citations: Vec<String>,
    pub witnesses: BTreeMap<String, Value>,
}

impl Justification {
    pub fn new(summary: impl Into<String>) -> Self {
        Justification {
            summary: summary.into(),
            ..Default::default()
        }
    }

    pub fn cite(mut self, c: &str) -> Self {
        self.citations.push(c.to_string());
        self
    }

    pub fn witness(mut self, key: &str, value: impl Serialize) -> Self {
        self.witnesses.insert(
            key.to_string(),
            serde_json::to_value(value).expect("witness serializes"),
        );
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleVerdict {
    pub rule_id: String,
    pub class: Option<ImageClass>,
    /// The j-invariant or record the verdict is about, when narrower than
    /// the whole class.
    pub subject: Option<String>,
    pub outcome: Outcome,
    pub justification: Justification,
}

impl RuleVerdict {
    pub fn new(rule_id: &str, class: Option<ImageClass>, outcome: Outcome, justification: Justification) -> Self {
        debug_assert!(
            !justification.citations.is_empty() || !justification.witnesses.is_empty(),
            "verdict {rule_id} has neither citation nor witness"
        );
        RuleVerdict {
            rule_id: rule_id.to_string(),
            class,
            subject: None,
            outcome,
            justification,
        }
    }

    pub fn about(mut self, subject: impl Into<String>) -> Self {
        self.subject = Some(subject.into());
        self
    }
}

/// Whether an isolated point on `X_1(ell^n)` with mod-`ell` image of the
/// given class maps to an isolated point on `X_1(ell)`.
pub fn level_lowering_ok(class: ImageClass, ell: u32) -> Result<RuleVerdict> {
    if ell <= 7 || !is_prime(ell as u64) {
        return Err(Error::OutOfScope(format!(
            "level lowering is only encoded for primes > 7, got {ell}"
        )));
    }
    let id = "level-lowering";
    let v = match class {
        ImageClass::Surjective => RuleVerdict::new(
            id,
            Some(class),
            Outcome::Applies,
            Justification::new(format!(
                "surjective mod-{ell} image with {ell} > 3: the {ell}-adic image is the full preimage, so degrees multiply along X_1({ell}^n) -> X_1({ell})"
            ))
            .cite(CITE_LEVEL_LOWERING),
        ),
        ImageClass::Borel => RuleVerdict::new(
            id,
            Some(class),
            Outcome::Applies,
            Justification::new(format!(
                "Borel image with {ell} > 5: the {ell}-adic image contains a Sylow pro-{ell} subgroup, hence is the full preimage"
            ))
            .cite(CITE_GREENBERG)
            .cite(CITE_LEVEL_LOWERING),
        ),
        ImageClass::NonsplitCartanNormalizer => {
            let ss = supersingular_forced(ell)?;
            let mut j = Justification::new(format!(
                "nonsplit normalizer image with {ell} > 7: potentially supersingular reduction, so deg(x) = deg(pi(x)) * ell^(2(n-1))"
            ))
            .cite(CITE_SERRE_INERTIA)
            .cite(CITE_LOZANO_SUPERSINGULAR)
            .witness("semi_cartan_checks", &ss.checks);
            if let Some(c) = ss.override_citation {
                j = j.cite(c);
            }
            let outcome = if ss.forced { Outcome::Applies } else { Outcome::NotApplicable };
            RuleVerdict::new(id, Some(class), outcome, j)
        }
        ImageClass::Exceptional if ell == 13 => RuleVerdict::new(
            id,
            Some(class),
            Outcome::Applies,
            Justification::new("exceptional mod-13 image: the 13-adic image is the full preimage")
                .cite(CITE_RSZB)
                .cite(CITE_LEVEL_LOWERING),
        ),
        ImageClass::Exceptional | ImageClass::SplitCartanNormalizer => RuleVerdict::new(
            id,
            Some(class),
            Outcome::NotApplicable,
            Justification::new(format!("class {class} does not occur at ell = {ell}"))
                .cite(match class {
                    ImageClass::Exceptional => CITE_SERRE_EXCEPTIONAL,
                    _ => CITE_SPLIT_CARTAN,
                }),
        ),
    };
    Ok(v)
}
