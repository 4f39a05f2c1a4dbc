//! JSON code files.
//!
//! ```json
//! {"field": {"p": 2, "m": 1}, "n": 3, "k": 2,
//!  "generator": [[[1],[0,1],[0]], [[0],[1],[1]]]}
//! ```
//!
//! Each generator entry lists polynomial coefficients in ascending degree.
//! `modulus` (ascending, monic, degree `m`) is optional for extension fields.

use std::fs;
use std::path::Path;

use convinv_core::{ConvCode, Field, PolyMatrix, PolyVector};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

impl FieldSpec {
    pub fn prime(p: u32) -> FieldSpec {
        FieldSpec {
            p,
            m: 1,
            modulus: None,
        }
    }

    pub fn build(&self) -> convinv_core::Result<Field> {
        match &self.modulus {
            Some(modulus) => Field::with_modulus(self.p, self.m, modulus),
            None => Field::new(self.p, self.m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub field: FieldSpec,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<Vec<u32>>>,
}

impl CodeFile {
    pub fn build(&self) -> Result<ConvCode, CliError> {
        if self.generator.len() != self.k {
            return Err(CliError::File(format!(
                "k = {} but the generator has {} rows",
                self.k,
                self.generator.len()
            )));
        }
        if let Some(row) = self.generator.iter().find(|row| row.len() != self.n) {
            return Err(CliError::File(format!(
                "n = {} but a generator row has {} entries",
                self.n,
                row.len()
            )));
        }
        let field = self.field.build()?;
        Ok(ConvCode::new(
            field,
            PolyMatrix::from_coeffs(self.generator.clone())?,
        )?)
    }
}

/// Images of the domain's generator rows, in the order the rows are written.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImagesFile {
    pub images: Vec<Vec<Vec<u32>>>,
}

impl ImagesFile {
    pub fn vectors(&self) -> Vec<PolyVector> {
        self.images
            .iter()
            .cloned()
            .map(PolyVector::from_coeffs)
            .collect()
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_code_file(path: &Path) -> Result<ConvCode, CliError> {
    read_json::<CodeFile>(path)?.build()
}

pub fn parse_images_file(path: &Path) -> Result<Vec<PolyVector>, CliError> {
    Ok(read_json::<ImagesFile>(path)?.vectors())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ConvCode, CliError> {
        serde_json::from_str::<CodeFile>(text)
            .map_err(|source| CliError::Json {
                path: "<inline>".into(),
                source,
            })?
            .build()
    }

    #[test]
    fn constant_code_parameters() {
        let c = parse(
            r#"{"field":{"p":2},"n":5,"k":2,
                "generator":[[[1],[1],[0],[0],[0]],[[0],[0],[1],[1],[1]]]}"#,
        )
        .unwrap();
        let p = c.params();
        assert_eq!((p.n, p.k, p.delta, p.delta1), (5, 2, 0, 0));
    }

    #[test]
    fn dependent_rows_rejected() {
        let err = parse(r#"{"field":{"p":2},"n":2,"k":2,"generator":[[[1],[1]],[[0,1],[0,1]]]}"#);
        assert!(matches!(
            err,
            Err(CliError::Code(convinv_core::Error::RankDeficient))
        ));
    }

    #[test]
    fn extension_field_modulus() {
        let c = parse(
            r#"{"field":{"p":2,"m":2,"modulus":[1,1,1]},"n":2,"k":1,"generator":[[[1],[2,3]]]}"#,
        );
        assert!(c.is_ok());
        let bad = parse(
            r#"{"field":{"p":2,"m":2,"modulus":[1,0,1]},"n":2,"k":1,"generator":[[[1],[1]]]}"#,
        );
        assert!(matches!(
            bad,
            Err(CliError::Code(convinv_core::Error::ReducibleModulus(_)))
        ));
    }

    #[test]
    fn shape_and_syntax_errors_are_distinct() {
        assert!(matches!(
            parse(r#"{"field":{"p":2},"n":3,"k":1,"generator":[[[1],[1]]]}"#),
            Err(CliError::File(_))
        ));
        assert!(matches!(parse("{"), Err(CliError::Json { .. })));
    }
}
