//! JSON file schema shared by torus presentations and finite-field tori.
//!
//! ```json
//! { "dimension": 2, "sigma": [[0, -1], [1, 0]], "chi_order": 4 }
//! { "q": 5, "sigma": [[0, -1], [1, 0]] }
//! ```
//!
//! `sigma` is required. `dimension`, when present, must equal the number of
//! rows. A torus presentation needs `chi_order`; a finite-field torus needs
//! `q`. Unknown fields are rejected.

use crate::error::Error;
use crate::ff_oracle::FiniteFieldTorus;
use crate::intlinalg::IntegerMatrix;
use crate::torus_rank::GaloisTorusPresentation;
use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum FileError {
    #[error("cannot parse torus file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("torus file is missing required field `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Invalid(#[from] Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub sigma: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_order: Option<u64>,
}

impl TorusFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// The action matrix, checked square and against `dimension`.
    pub fn sigma_matrix(&self) -> Result<IntegerMatrix, FileError> {
        let m = IntegerMatrix::from_rows(&self.sigma)?;
        if let Some(d) = self.dimension {
            if d != m.dim() {
                return Err(Error::Shape(format!(
                    "dimension is {d} but sigma has {} rows",
                    m.dim()
                ))
                .into());
            }
        }
        Ok(m)
    }

    pub fn to_presentation(&self) -> Result<GaloisTorusPresentation, FileError> {
        let t = self.chi_order.ok_or(FileError::Missing("chi_order"))?;
        Ok(GaloisTorusPresentation::new(self.sigma_matrix()?, t)?)
    }

    pub fn to_finite_field_torus(&self) -> Result<FiniteFieldTorus, FileError> {
        let q = self.q.ok_or(FileError::Missing("q"))?;
        Ok(FiniteFieldTorus::new(q, self.sigma_matrix()?)?)
    }

    pub fn from_presentation(pres: &GaloisTorusPresentation) -> Option<Self> {
        Some(TorusFile {
            dimension: Some(pres.dimension()),
            q: None,
            sigma: pres.sigma().to_i64_rows()?,
            chi_order: Some(pres.chi_order()),
        })
    }
}
