//! JSON representation files.
//!
//! ```json
//! {"field": "Q", "dim": 2,
//!  "generators": [{"label": "s1", "matrix": [["-1", "1"], ["0", "1"]]},
//!                 {"label": "s2", "matrix": [["1", "0"], ["1", "-1"]]}]}
//! ```
//!
//! The field is `"Q"` or `{"quadratic": m}`; entries are scalar strings
//! such as `"3/4"` or `"1/2+1/2*sqrt(5)"`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::repkit::{Generator, RepError, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepFileError {
    #[error("malformed representation file: {0}")]
    Syntax(String),
    #[error("unsupported field {0:?}, expected \"Q\" or {{\"quadratic\": m}}")]
    BadField(String),
    #[error("generator {label}, entry ({row}, {col}): {message}")]
    BadScalar {
        label: String,
        row: usize,
        col: usize,
        message: String,
    },
    #[error("generator {label} has entries outside the declared field {declared}")]
    OutsideField { label: String, declared: Field },
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Quadratic { quadratic: u32 },
}

impl FieldSpec {
    pub fn of(field: Field) -> Self {
        match field {
            Field::Rational => FieldSpec::Named("Q".into()),
            Field::Quadratic(m) => FieldSpec::Quadratic { quadratic: m },
        }
    }

    pub fn to_field(&self) -> Result<Field, RepFileError> {
        match self {
            FieldSpec::Named(s) if s == "Q" => Ok(Field::Rational),
            FieldSpec::Named(s) => Err(RepFileError::BadField(s.clone())),
            FieldSpec::Quadratic { quadratic } => {
                if crate::field::is_square_free(*quadratic as u64) && *quadratic > 1 {
                    Ok(Field::Quadratic(*quadratic))
                } else {
                    Err(RepFileError::BadField(format!("quadratic {quadratic}")))
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub label: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub field: FieldSpec,
    pub dim: usize,
    pub generators: Vec<GeneratorSpec>,
}

impl RepFile {
    pub fn from_representation(r: &Representation) -> Self {
        RepFile {
            field: FieldSpec::of(r.field()),
            dim: r.dim(),
            generators: r
                .generators()
                .iter()
                .map(|g| GeneratorSpec {
                    label: g.label.clone(),
                    matrix: g.matrix.to_strings(),
                })
                .collect(),
        }
    }

    pub fn to_representation(&self) -> Result<Representation, RepFileError> {
        let field = self.field.to_field()?;
        let mut generators = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let mut rows = Vec::with_capacity(g.matrix.len());
            for (i, row) in g.matrix.iter().enumerate() {
                let parsed = row
                    .iter()
                    .enumerate()
                    .map(|(j, text)| {
                        text.parse::<Scalar>().map_err(|e| RepFileError::BadScalar {
                            label: g.label.clone(),
                            row: i,
                            col: j,
                            message: e.to_string(),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(parsed);
            }
            let matrix = Matrix::from_rows(rows).map_err(|e| RepFileError::BadScalar {
                label: g.label.clone(),
                row: 0,
                col: 0,
                message: e.to_string(),
            })?;
            if field.join(matrix.field()) != Ok(field) {
                return Err(RepFileError::OutsideField {
                    label: g.label.clone(),
                    declared: field,
                });
            }
            generators.push(Generator {
                label: g.label.clone(),
                matrix,
            });
        }
        Ok(Representation::new_over(field, self.dim, generators)?)
    }
}

pub fn parse_rep_file(text: &str) -> Result<Representation, RepFileError> {
    let file: RepFile = serde_json::from_str(text).map_err(|e| RepFileError::Syntax(e.to_string()))?;
    file.to_representation()
}

pub fn render_rep_file(r: &Representation) -> String {
    serde_json::to_string_pretty(&RepFile::from_representation(r)).expect("plain data")
}
