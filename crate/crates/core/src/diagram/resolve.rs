use serde::{Deserialize, Serialize};

use super::edit::Raw;
use super::{Diagram, DiagramError, LinkDiagram};

/// Which smoothing every vertex receives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Joins ports (0,1) and (2,3).
    Plus,
    /// Joins ports (0,3) and (1,2).
    Minus,
}

impl Side {
    pub(crate) fn pairing(self) -> [u8; 4] {
        match self {
            Side::Plus => [1, 0, 3, 2],
            Side::Minus => [3, 2, 1, 0],
        }
    }
}

impl Diagram {
    /// Smooths every vertex. Components left without crossings become free loops.
    pub fn resolve(&self, side: Side) -> Result<LinkDiagram, DiagramError> {
        let mut raw = Raw::from_diagram(self);
        let vertices: Vec<(String, [u8; 4])> = (0..self.nodes().len())
            .filter(|&n| self.is_vertex(n))
            .map(|n| (self.nodes()[n].id.clone(), side.pairing()))
            .collect();
        raw.free_loops += raw.dissolve(&vertices);
        raw.finish(true)
    }
}
