//! Scenario files: the JSON schema driving every simulation.

use latcast_core::code::{choose_ell, choose_prime, prime_lower_bound, CodeParams};
use latcast_core::fp::{FpMatrix, PrimeField};
use latcast_core::lattice::{LatticeFamily, LatticeSpec};
use latcast_core::sideinfo::SideInfoMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{from_core, HarnessError, Result};

/// A value that may be computed automatically or pinned by the user.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AutoOr<T> {
    Fixed(T),
    Keyword(String),
}

impl<T: Copy> AutoOr<T> {
    fn resolve(&self, field: &str) -> Result<Option<T>> {
        match self {
            AutoOr::Fixed(v) => Ok(Some(*v)),
            AutoOr::Keyword(s) if s == "auto" => Ok(None),
            AutoOr::Keyword(s) => Err(HarnessError::Config(format!(
                "{field}: expected a number or \"auto\", got \"{s}\""
            ))),
        }
    }
}

impl<T> Default for AutoOr<T> {
    fn default() -> Self {
        AutoOr::Keyword("auto".to_string())
    }
}

/// Coarse lattice choice: family plus scale policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoarseChoice {
    #[serde(default = "default_family")]
    pub family: String,
    /// "covering" scales so that r_cov = sqrt(n); a number fixes the scale.
    #[serde(default = "default_scale")]
    pub scale: AutoOr<f64>,
}

fn default_family() -> String {
    "zn".to_string()
}

fn default_scale() -> AutoOr<f64> {
    AutoOr::Keyword("covering".to_string())
}

impl Default for CoarseChoice {
    fn default() -> Self {
        Self { family: default_family(), scale: default_scale() }
    }
}

/// One receiver: side information rows over F_p and noise variance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReceiverDef {
    /// Rows of the side information matrix (may be empty for none).
    pub s: Vec<Vec<u64>>,
    pub sigma2: f64,
}

/// The scenario file schema. Unknown fields are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub p: AutoOr<u64>,
    pub k: usize,
    pub n: usize,
    #[serde(default)]
    pub ell: AutoOr<usize>,
    pub rate: f64,
    pub epsilon: f64,
    #[serde(default)]
    pub coarse: CoarseChoice,
    pub seed: u64,
    pub trials: usize,
    #[serde(default)]
    pub receivers: Vec<ReceiverDef>,
    /// Replace the receiver list by one receiver per subspace of F_p^K.
    #[serde(default)]
    pub network_mode: bool,
    /// Common noise variance for all subspace receivers in network mode.
    #[serde(default)]
    pub network_sigma2: Option<f64>,
    #[serde(default = "default_cap")]
    pub enumeration_cap: u64,
}

fn default_cap() -> u64 {
    latcast_core::code::DEFAULT_ENUMERATION_CAP as u64
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| HarnessError::Config(format!("scenario: {e}")))
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Resolve auto parameters and check every invariant. Returns the fully
    /// constructed pieces a run needs.
    pub fn validate(&self) -> Result<ValidatedScenario> {
        if self.k == 0 {
            return Err(HarnessError::Config("k: must be >= 1".into()));
        }
        if self.n <= self.k {
            return Err(HarnessError::Config(format!(
                "n: must exceed k (got n={}, k={})",
                self.n, self.k
            )));
        }
        if self.rate <= 0.0 || !self.rate.is_finite() {
            return Err(HarnessError::Config("rate: must be positive".into()));
        }
        if self.epsilon <= 0.0 || !self.epsilon.is_finite() {
            return Err(HarnessError::Config("epsilon: must be positive".into()));
        }
        if self.trials == 0 {
            return Err(HarnessError::Config("trials: must be >= 1".into()));
        }

        let (field, p_override_warning) = match self.p.resolve("p")? {
            None => (
                choose_prime(self.k, self.rate, self.epsilon)
                    .map_err(|e| from_core("p", e))?,
                None,
            ),
            Some(p) => {
                let field = PrimeField::new(p).map_err(|e| from_core("p", e))?;
                let bound = prime_lower_bound(self.k, self.rate, self.epsilon);
                let warning = ((p as f64) < bound).then(|| {
                    format!(
                        "p = {p} is below the required bound {bound:.3}; the \
                         exponential-decay guarantee does not apply"
                    )
                });
                (field, warning)
            }
        };

        let ell = match self.ell.resolve("ell")? {
            None => choose_ell(self.k, self.n, self.rate, field)
                .map_err(|e| from_core("ell", e))?,
            Some(e) if e == 0 => {
                return Err(HarnessError::Config("ell: must be >= 1".into()));
            }
            Some(e) => e,
        };
        let params = CodeParams::new(self.k, ell, self.n, self.rate, self.epsilon, field)
            .map_err(|e| from_core("ell", e))?;

        let family = match self.coarse.family.as_str() {
            "zn" => LatticeFamily::Zn,
            "dn" => LatticeFamily::Dn,
            "e8" => LatticeFamily::E8,
            other => {
                return Err(HarnessError::Config(format!(
                    "coarse.family: unknown family \"{other}\" (expected zn, dn or e8)"
                )));
            }
        };
        let coarse = match &self.coarse.scale {
            AutoOr::Keyword(s) if s == "covering" => {
                LatticeSpec::scaled_to_covering(family, self.n)
            }
            AutoOr::Keyword(s) => {
                return Err(HarnessError::Config(format!(
                    "coarse.scale: expected a number or \"covering\", got \"{s}\""
                )));
            }
            AutoOr::Fixed(scale) => {
                if *scale <= 0.0 || !scale.is_finite() {
                    return Err(HarnessError::Config("coarse.scale: must be positive".into()));
                }
                LatticeSpec::new(family, self.n, *scale)
            }
        }
        .map_err(|e| from_core("coarse", e))?;

        let mut receivers = Vec::new();
        for (i, def) in self.receivers.iter().enumerate() {
            if def.sigma2 <= 0.0 || !def.sigma2.is_finite() {
                return Err(HarnessError::Config(format!(
                    "receivers[{i}].sigma2: must be positive"
                )));
            }
            for (ri, row) in def.s.iter().enumerate() {
                if row.len() != self.k {
                    return Err(HarnessError::Config(format!(
                        "receivers[{i}].s[{ri}]: expected {} entries, got {}",
                        self.k,
                        row.len()
                    )));
                }
            }
            let raw = if def.s.is_empty() {
                FpMatrix::empty(field, self.k)
            } else {
                FpMatrix::from_rows(field, &def.s)
            };
            let side = SideInfoMatrix::canonicalize(&raw)
                .map_err(|e| from_core(&format!("receivers[{i}].s"), e))?;
            receivers.push((side, def.sigma2));
        }

        if self.network_mode {
            match self.network_sigma2 {
                None => {
                    return Err(HarnessError::Config(
                        "network_sigma2: required when network_mode is true".into(),
                    ));
                }
                Some(s2) if s2 <= 0.0 || !s2.is_finite() => {
                    return Err(HarnessError::Config("network_sigma2: must be positive".into()));
                }
                Some(_) => {}
            }
        } else if receivers.is_empty() {
            return Err(HarnessError::Config(
                "receivers: at least one receiver is required outside network mode".into(),
            ));
        }

        Ok(ValidatedScenario {
            params,
            coarse,
            seed: self.seed,
            trials: self.trials,
            receivers,
            network_mode: self.network_mode,
            network_sigma2: self.network_sigma2,
            enumeration_cap: self.enumeration_cap as u128,
            p_override_warning,
        })
    }
}

/// A scenario after validation: concrete parameter objects.
#[derive(Debug, Clone)]
pub struct ValidatedScenario {
    pub params: CodeParams,
    pub coarse: LatticeSpec,
    pub seed: u64,
    pub trials: usize,
    pub receivers: Vec<(SideInfoMatrix, f64)>,
    pub network_mode: bool,
    pub network_sigma2: Option<f64>,
    pub enumeration_cap: u128,
    /// Set when the user pinned a prime below the required bound.
    pub p_override_warning: Option<String>,
}
