use serde::Serialize;

use super::scott::{pair_family_threshold, pair_family_witness, scott_search, ScottWitness};
use super::shadow::hetero_shadow;
use super::DimensionProfile;
use crate::error::Result;
use crate::exact::{serde_rat, Rat};

/// How a Scott witness was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScottRoute {
    /// One of the two structured subsets for `C^{d1} ⊗ (C^{d2})^{⊗2n}`.
    PairFamily,
    /// The general subset search.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    ScottWitness {
        route: ScottRoute,
        #[serde(flatten)]
        witness: ScottWitness,
    },
    ShadowNegative {
        j: usize,
        #[serde(with = "serde_rat")]
        value: Rat,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum AmeVerdict {
    /// Some `⌊N/2⌋`-subset is larger than its complement.
    Infeasible {
        subset: Vec<usize>,
    },
    Nonexistent {
        certificate: Certificate,
    },
    /// No test applies; existence is not claimed.
    Unknown,
}

impl AmeVerdict {
    pub fn is_nonexistent(&self) -> bool {
        matches!(self, AmeVerdict::Nonexistent { .. })
    }
}

/// Runs the Schmidt precheck, the closed-form thresholds, the subset search and
/// the shadow coefficients, in that order, and reports the first certificate.
pub fn ame_verdict(profile: &DimensionProfile, budget: u128) -> Result<AmeVerdict> {
    if let Some(subset) = profile.schmidt_violation() {
        return Ok(AmeVerdict::Infeasible { subset });
    }
    if let Some((d1, d2, n)) = profile.as_one_plus_pairs() {
        if n >= pair_family_threshold(d1, d2)? {
            if let Some(witness) = pair_family_witness(profile) {
                return Ok(AmeVerdict::Nonexistent {
                    certificate: Certificate::ScottWitness {
                        route: ScottRoute::PairFamily,
                        witness,
                    },
                });
            }
        }
    }
    if let Some(witness) = scott_search(profile, budget)? {
        return Ok(AmeVerdict::Nonexistent {
            certificate: Certificate::ScottWitness {
                route: ScottRoute::Search,
                witness,
            },
        });
    }
    if profile.n_parties() % 2 == 1 {
        let shadow = hetero_shadow(profile)?;
        if let Some((j, value)) = shadow.first_negative() {
            return Ok(AmeVerdict::Nonexistent {
                certificate: Certificate::ShadowNegative {
                    j,
                    value: value.clone(),
                },
            });
        }
    }
    Ok(AmeVerdict::Unknown)
}
