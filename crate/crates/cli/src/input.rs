//! Input files, dispatched on extension: `.json` holds a diagram or a DGA,
//! `.table` a crossing table, `.rels` a relations file.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cy_core::dga::Dga;
use cy_core::diagram::{CrossingTable, MarkedGraphDiagram};
use cy_core::homology::{Presentation, RelationsFile};

pub enum Input {
    Diagram(MarkedGraphDiagram),
    Table(CrossingTable),
    Dga(Dga),
    Relations(RelationsFile),
}

impl Input {
    pub fn load(path: &Path) -> Result<Input> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        let parsed = match ext {
            "json" => {
                let v: serde_json::Value = serde_json::from_str(&text)?;
                if v.get("generators").is_some() {
                    Input::Dga(Dga::from_json(&text)?)
                } else if let Some(dga) = v.get("dga") {
                    // a report from `build`
                    Input::Dga(Dga::from_json(&dga.to_string())?)
                } else {
                    Input::Diagram(MarkedGraphDiagram::from_json(&text)?)
                }
            }
            "table" => Input::Table(CrossingTable::parse(&text)?),
            "rels" => Input::Relations(RelationsFile::parse(&text)?),
            _ => bail!("{}: unknown extension, expected .json, .table or .rels", path.display()),
        };
        Ok(parsed)
    }

    pub fn diagram(self, path: &Path) -> Result<MarkedGraphDiagram> {
        match self {
            Input::Diagram(d) => Ok(d),
            _ => bail!("{} is not a diagram", path.display()),
        }
    }

    /// The DGA of the input. Relations files have none.
    pub fn dga(&self, path: &Path) -> Result<Dga> {
        Ok(match self {
            Input::Diagram(d) => Dga::build(&d.crossing_table()?),
            Input::Table(t) => Dga::build(t),
            Input::Dga(g) => g.clone(),
            Input::Relations(_) => bail!("{} is a relations file, not a DGA", path.display()),
        })
    }

    /// Degree-0 presentation, with any listed assignments from a relations file.
    pub fn presentation(&self, path: &Path) -> Result<RelationsFile> {
        Ok(match self {
            Input::Relations(r) => r.clone(),
            _ => RelationsFile { presentation: Presentation::from_dga(&self.dga(path)?), listed: Vec::new() },
        })
    }
}
