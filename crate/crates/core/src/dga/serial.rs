use serde::{Deserialize, Serialize};

use super::{Dga, DgaError};
use crate::algebra::{parse_element, Element, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub symbol: String,
    pub degree: u32,
    pub differential: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgaRecord {
    pub generators: Vec<GeneratorRecord>,
}

fn parse_symbol(text: &str) -> Result<Symbol, DgaError> {
    let e = parse_element(text).map_err(|err| DgaError::Format(format!("{text:?}: {err}")))?;
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (Some((w, c)), None) if c.is_one() && w.symbols().len() == 1 => Ok(w.symbols()[0].clone()),
        _ => Err(DgaError::Format(format!("{text:?} is not a single generator"))),
    }
}

impl Dga {
    pub fn to_record(&self) -> DgaRecord {
        DgaRecord {
            generators: self
                .generators()
                .map(|(g, dg)| GeneratorRecord {
                    symbol: g.to_string(),
                    degree: g.degree(),
                    differential: dg.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_record(rec: &DgaRecord) -> Result<Dga, DgaError> {
        let mut gens = Vec::with_capacity(rec.generators.len());
        for r in &rec.generators {
            let g = parse_symbol(&r.symbol)?;
            if g.degree() != r.degree {
                return Err(DgaError::Format(format!("{} has degree {}, record says {}", g, g.degree(), r.degree)));
            }
            let dg: Element = parse_element(&r.differential)
                .map_err(|err| DgaError::Format(format!("differential of {g}: {err}")))?;
            gens.push((g, dg));
        }
        Dga::from_differentials(gens)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Dga, DgaError> {
        let rec: DgaRecord = serde_json::from_str(text).map_err(|e| DgaError::Format(e.to_string()))?;
        Self::from_record(&rec)
    }
}
