//! Loading semigroups from builtin names or JSON spec files.

use std::path::Path;

use semigroup_lab::constructions::{builtin, BinaryMatrix, PartialTransformation};
use semigroup_lab::{generate, FiniteSemigroup, DEFAULT_ELEMENT_CAP};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::CliError;

pub const CAP_VAR: &str = "SEMIGROUP_LAB_CAP";

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SemigroupSpec {
    Builtin {
        name: String,
    },
    /// 1-based images, `null` where undefined.
    PartialTransformations {
        generators: Vec<Vec<Option<usize>>>,
    },
    MatricesGf2 {
        generators: Vec<Vec<Vec<u8>>>,
    },
    Cayley {
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
    },
}

pub struct Loaded {
    pub semigroup: FiniteSemigroup,
    pub source: String,
}

impl Loaded {
    pub fn provenance(&self) -> Value {
        json!({
            "source": self.source,
            "elements": self.semigroup.len(),
            "validation": self.semigroup.validation().to_string(),
        })
    }
}

pub fn element_cap() -> Result<usize, CliError> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{CAP_VAR}: not a positive integer: {v:?}"))),
        Err(_) => Ok(DEFAULT_ELEMENT_CAP),
    }
}

/// `arg` is a path if such a file exists, a builtin name otherwise.
pub fn load_spec(arg: &str) -> Result<Loaded, CliError> {
    let cap = element_cap()?;
    let path = Path::new(arg);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        let spec: SemigroupSpec = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{arg}:{}:{}: {e}", e.line(), e.column())))?;
        let semigroup = from_spec(spec, cap).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        return Ok(Loaded {
            semigroup,
            source: format!("file {arg}"),
        });
    }
    let semigroup = builtin(arg)?;
    check_cap(&semigroup, cap)?;
    Ok(Loaded {
        semigroup,
        source: format!("builtin {arg}"),
    })
}

fn check_cap(s: &FiniteSemigroup, cap: usize) -> Result<(), CliError> {
    if s.len() > cap {
        return Err(semigroup_lab::Error::ClosureOverflow { cap }.into());
    }
    Ok(())
}

pub fn from_spec(spec: SemigroupSpec, cap: usize) -> Result<FiniteSemigroup, CliError> {
    let s = match spec {
        SemigroupSpec::Builtin { name } => builtin(&name)?,
        SemigroupSpec::PartialTransformations { generators } => {
            if generators.is_empty() {
                return Err(CliError::Input("no generators".into()));
            }
            let degree = generators[0].len();
            let gens = generators
                .into_iter()
                .map(|g| {
                    if g.len() != degree {
                        return Err(CliError::Input(format!(
                            "generators have different degrees {degree} and {}",
                            g.len()
                        )));
                    }
                    Ok(PartialTransformation::new(g)?)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            generate(
                &gens,
                |a, b| a.compose(b).expect("equal degrees"),
                |t| t.to_string(),
                cap,
            )?
            .semigroup
        }
        SemigroupSpec::MatricesGf2 { generators } => {
            if generators.is_empty() {
                return Err(CliError::Input("no generators".into()));
            }
            let gens = generators
                .iter()
                .map(|rows| BinaryMatrix::from_rows(rows))
                .collect::<Result<Vec<_>, _>>()?;
            if gens.iter().any(|g| g.dimension() != gens[0].dimension()) {
                return Err(CliError::Input("matrices have different dimensions".into()));
            }
            generate(&gens, |a, b| a.mul(b), |m| m.to_string(), cap)?.semigroup
        }
        SemigroupSpec::Cayley { labels, table } => FiniteSemigroup::from_table(labels, table)?,
    };
    check_cap(&s, cap)?;
    Ok(s)
}
