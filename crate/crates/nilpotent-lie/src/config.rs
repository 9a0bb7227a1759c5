use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{Constant, GradedLieAlgebra};
use crate::LieError;

/// On-disk form of an algebra:
///
/// ```toml
/// name = "h3"
/// layers = [2, 1]
/// basis = ["x", "y", "z"]          # optional
/// # [e_i, e_j] = (numerator/denominator)·e_k, zero-based indices
/// constants = [[0, 1, 2, 1, 1]]
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    pub name: String,
    pub layers: Vec<usize>,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub constants: Vec<[i64; 5]>,
}

impl AlgebraConfig {
    pub fn from_algebra(alg: &GradedLieAlgebra) -> Self {
        let constants = alg
            .constants()
            .into_iter()
            .filter(|(i, j, _, _)| i < j)
            .map(|(i, j, k, c)| {
                let n = c.numer().try_into().expect("structure constant fits in i64");
                let d = c.denom().try_into().expect("structure constant fits in i64");
                [i as i64, j as i64, k as i64, n, d]
            })
            .collect();
        AlgebraConfig {
            name: alg.name().to_string(),
            layers: alg.layers().to_vec(),
            basis: Some(alg.labels().to_vec()),
            constants,
        }
    }

    pub fn build(&self) -> Result<GradedLieAlgebra, LieError> {
        let mut consts: Vec<Constant> = Vec::new();
        for (row, t) in self.constants.iter().enumerate() {
            if t[0] < 0 || t[1] < 0 || t[2] < 0 {
                return Err(LieError::Config(format!("constants[{row}]: negative basis index")));
            }
            if t[4] == 0 {
                return Err(LieError::Config(format!("constants[{row}]: zero denominator")));
            }
            let q = BigRational::new(BigInt::from(t[3]), BigInt::from(t[4]));
            consts.push((t[0] as usize, t[1] as usize, t[2] as usize, q));
        }
        GradedLieAlgebra::new(self.name.clone(), self.layers.clone(), self.basis.clone(), &consts)
    }
}

/// Parses and validates an algebra; parse errors carry line and column.
pub fn parse_algebra(text: &str) -> Result<GradedLieAlgebra, LieError> {
    let cfg: AlgebraConfig = toml::from_str(text).map_err(|e| LieError::Config(e.to_string()))?;
    cfg.build()
}

pub fn load_algebra(path: &Path) -> Result<GradedLieAlgebra, LieError> {
    let text = std::fs::read_to_string(path).map_err(|e| LieError::Config(format!("{}: {e}", path.display())))?;
    parse_algebra(&text)
}

pub fn to_toml(alg: &GradedLieAlgebra) -> String {
    toml::to_string(&AlgebraConfig::from_algebra(alg)).expect("algebra config serializes")
}
