use serde::{Deserialize, Serialize};

use super::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};

/// On-disk form of an algebra: JSON with row-major flat tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub ops: Vec<OperationFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationFile {
    pub symbol: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

impl From<&FiniteAlgebra> for AlgebraFile {
    fn from(a: &FiniteAlgebra) -> Self {
        AlgebraFile {
            name: a.name().to_string(),
            size: a.size(),
            names: a.names().map(<[String]>::to_vec),
            ops: a
                .signature()
                .ops()
                .iter()
                .enumerate()
                .map(|(i, (symbol, arity))| OperationFile {
                    symbol: symbol.clone(),
                    arity: *arity,
                    table: a.table(i).to_vec(),
                })
                .collect(),
        }
    }
}

impl TryFrom<AlgebraFile> for FiniteAlgebra {
    type Error = Error;

    fn try_from(f: AlgebraFile) -> Result<Self> {
        let sig = Signature::new(f.ops.iter().map(|o| (o.symbol.clone(), o.arity)).collect())?;
        let tables = f.ops.into_iter().map(|o| o.table).collect();
        FiniteAlgebra::new(f.name, sig, f.size, tables, f.names)
    }
}

impl FiniteAlgebra {
    pub fn from_json(text: &str) -> Result<FiniteAlgebra> {
        let file: AlgebraFile = serde_json::from_str(text)?;
        FiniteAlgebra::try_from(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AlgebraFile::from(self)).expect("algebra serializes")
    }
}
