use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

impl FieldSpec {
    pub fn field(&self) -> Result<Field> {
        match *self {
            FieldSpec::Rational => Ok(Field::Rational),
            FieldSpec::Prime { p } => Field::prime(p),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    pub seed: Option<u64>,
    pub r_max: Option<u32>,
    pub trials: Option<usize>,
    pub suite: Option<String>,
    /// Degree vector for predictions when no forms are given.
    pub degrees: Option<Vec<u32>>,
    /// Number of forms for arrangement predictions when no forms are given.
    pub m: Option<usize>,
    /// "arrangement" or "general-forms" for betti-predict.
    pub model: Option<String>,
    /// Explicit ideals for the reduction test.
    pub j: Option<Vec<String>>,
    pub i: Option<Vec<String>>,
    /// Whether the arrangement command also searches for a reduction index.
    pub reduction: Option<bool>,
    /// Parameters of the free conic family, as integer strings.
    pub v_values: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub field: FieldSpec,
    pub variables: Vec<String>,
    #[serde(default)]
    pub forms: Vec<String>,
    #[serde(default)]
    pub command: Option<String>,
    #[serde(default)]
    pub options: JobOptions,
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Spec(format!("job file: {e}")))
    }

    pub fn ring(&self) -> Result<Arc<Ring>> {
        Ring::new(self.field.field()?, self.variables.clone())
    }

    pub fn parse_list(ring: &Arc<Ring>, list: &[String]) -> Result<Vec<Polynomial>> {
        list.iter().map(|s| Polynomial::parse(ring, s)).collect()
    }

    pub fn forms(&self, ring: &Arc<Ring>) -> Result<Vec<Polynomial>> {
        Self::parse_list(ring, &self.forms)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Rty,
    Arrangement,
    Classify2q,
    BettiPredict,
    Reduction,
    Criteria,
    VerifySuite,
}

impl Command {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "rty" | "analyze" => Command::Rty,
            "arrangement" => Command::Arrangement,
            "classify2q" => Command::Classify2q,
            "betti-predict" => Command::BettiPredict,
            "reduction" => Command::Reduction,
            "criteria" => Command::Criteria,
            "verify-suite" | "verify" => Command::VerifySuite,
            other => return Err(Error::Spec(format!("unknown command '{other}'"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Rty => "rty",
            Command::Arrangement => "arrangement",
            Command::Classify2q => "classify2q",
            Command::BettiPredict => "betti-predict",
            Command::Reduction => "reduction",
            Command::Criteria => "criteria",
            Command::VerifySuite => "verify-suite",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_schema() {
        let job = JobSpec::from_json(
            r#"{"field": {"type": "prime", "p": 32003}, "variables": ["x","y","z"],
                "forms": ["x^2+y*z", "y^2+x*z"], "command": "rty", "options": {"seed": 3}}"#,
        )
        .unwrap();
        assert_eq!(job.field, FieldSpec::Prime { p: 32003 });
        assert_eq!(job.options.seed, Some(3));
        assert_eq!(job.forms(&job.ring().unwrap()).unwrap().len(), 2);
        assert!(JobSpec::from_json(r#"{"field": {"type": "rational"}, "variables": ["x"], "bogus": 1}"#).is_err());
        let bad_prime = JobSpec::from_json(r#"{"field": {"type": "prime", "p": 32004}, "variables": ["x"]}"#).unwrap();
        assert!(bad_prime.ring().is_err());
        let dup = JobSpec::from_json(r#"{"field": {"type": "rational"}, "variables": ["x", "x"]}"#).unwrap();
        assert!(dup.ring().is_err());
    }
}
