//! Oriented marked graph diagrams.
//!
//! A diagram is a planar 4-valent graph given by a rotation system: every node
//! has ports `0..4` in counterclockwise order and every port holds exactly one
//! edge end. Nodes are crossings or marked vertices. The marker of a vertex
//! runs between the gaps (3,0) and (1,2).

mod admissible;
mod arcs;
mod edit;
mod error;
mod faces;
mod iso;
mod moves;
mod resolve;
mod table;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::Label;

pub use admissible::{Admissibility, AdmissibilityReport, LinkReduction, DEFAULT_BUDGET};
pub use arcs::{ArcLabeling, Sign};
pub use error::DiagramError;
pub use faces::{Dart, Face};
pub use moves::{Direction, Locus, Move, Site};
pub use resolve::Side;
pub use table::{CrossingRow, CrossingTable};

/// One end of an edge: node id and port. Serialized as `[node, port]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct End(pub String, pub u8);

impl End {
    pub fn new(node: impl Into<String>, port: u8) -> Self {
        End(node.into(), port)
    }

    pub fn node(&self) -> &str {
        &self.0
    }

    pub fn port(&self) -> u8 {
        self.1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: u32,
    pub tail: End,
    pub head: End,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum NodeKind {
    Crossing { over_ports: [u8; 2] },
    Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    #[serde(flatten)]
    pub kind: NodeKind,
}

impl Node {
    pub fn crossing(id: impl Into<String>, over_ports: [u8; 2]) -> Self {
        Node { id: id.into(), kind: NodeKind::Crossing { over_ports } }
    }

    pub fn vertex(id: impl Into<String>) -> Self {
        Node { id: id.into(), kind: NodeKind::Vertex }
    }
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

/// Unvalidated diagram data in the JSON layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramData {
    pub edges: Vec<Edge>,
    pub nodes: Vec<Node>,
    /// Closed components without nodes. Only resolutions carry these.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub free_loops: usize,
}

/// The edge end occupying a port.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    /// Index into `Diagram::edges`.
    pub edge: usize,
    /// True when the edge's head is here.
    pub incoming: bool,
}

/// A validated diagram. Edges are kept sorted by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    data: DiagramData,
    node_ix: BTreeMap<String, usize>,
    slots: Vec<[Slot; 4]>,
}

/// Diagrams whose nodes include marked vertices; same representation.
pub type MarkedGraphDiagram = Diagram;

/// Link diagrams produced by resolving every vertex; crossings only.
pub type LinkDiagram = Diagram;

pub(crate) fn opposite(p: u8) -> u8 {
    (p + 2) % 4
}

impl Diagram {
    /// Validates `data`. Marked graph diagrams must have at least one node and
    /// no free loops; see [`Diagram::new_link`] for resolutions.
    pub fn new(data: DiagramData) -> Result<Self, DiagramError> {
        if data.nodes.is_empty() {
            return Err(DiagramError::Empty);
        }
        if data.free_loops > 0 {
            return Err(DiagramError::FreeLoop);
        }
        Self::build(data)
    }

    /// Validates a diagram that may be empty or carry free loops.
    pub fn new_link(data: DiagramData) -> Result<Self, DiagramError> {
        Self::build(data)
    }

    fn build(mut data: DiagramData) -> Result<Self, DiagramError> {
        data.edges.sort_by_key(|e| e.id);
        let mut node_ix = BTreeMap::new();
        for (k, n) in data.nodes.iter().enumerate() {
            if !Label::is_valid(&n.id) {
                return Err(DiagramError::BadNodeId(n.id.clone()));
            }
            if node_ix.insert(n.id.clone(), k).is_some() {
                return Err(DiagramError::DuplicateNode(n.id.clone()));
            }
        }
        let mut raw: Vec<[Option<Slot>; 4]> = vec![[None; 4]; data.nodes.len()];
        let mut ids = BTreeSet::new();
        for (ei, e) in data.edges.iter().enumerate() {
            if !ids.insert(e.id) {
                return Err(DiagramError::DuplicateEdge(e.id));
            }
            for (end, incoming) in [(&e.tail, false), (&e.head, true)] {
                let &ni = node_ix
                    .get(end.node())
                    .ok_or_else(|| DiagramError::UnknownNode { edge: e.id, node: end.0.clone() })?;
                if end.port() > 3 {
                    return Err(DiagramError::BadPort { edge: e.id, node: end.0.clone(), port: end.port() });
                }
                let slot = &mut raw[ni][end.port() as usize];
                if slot.is_some() {
                    return Err(DiagramError::PortReused { node: end.0.clone(), port: end.port() });
                }
                *slot = Some(Slot { edge: ei, incoming });
            }
        }
        let mut slots = Vec::with_capacity(raw.len());
        for (ni, ports) in raw.iter().enumerate() {
            let id = &data.nodes[ni].id;
            let mut full = [Slot { edge: 0, incoming: false }; 4];
            for p in 0..4u8 {
                full[p as usize] = ports[p as usize].ok_or(DiagramError::PortFree { node: id.clone(), port: p })?;
            }
            match data.nodes[ni].kind {
                NodeKind::Crossing { over_ports: [a, b] } => {
                    if a > 3 || b > 3 || opposite(a) != b {
                        return Err(DiagramError::OverPorts(id.clone()));
                    }
                    for p in 0..2u8 {
                        if full[p as usize].incoming == full[opposite(p) as usize].incoming {
                            return Err(DiagramError::StrandDirection { node: id.clone(), a: p, b: opposite(p) });
                        }
                    }
                }
                NodeKind::Vertex => {
                    let ins: Vec<u8> = (0..4u8).filter(|&p| full[p as usize].incoming).collect();
                    if ins.len() != 2 || opposite(ins[0]) != ins[1] {
                        return Err(DiagramError::VertexOrientation(id.clone()));
                    }
                }
            }
            slots.push(full);
        }
        let d = Diagram { data, node_ix, slots };
        d.check_planar()?;
        Ok(d)
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let data: DiagramData = serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        Self::new(data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.data).expect("serializable")
    }

    pub fn data(&self) -> &DiagramData {
        &self.data
    }

    pub fn nodes(&self) -> &[Node] {
        &self.data.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.data.edges
    }

    pub fn free_loops(&self) -> usize {
        self.data.free_loops
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.node_ix.get(id).copied()
    }

    pub fn slot(&self, node: usize, port: u8) -> Slot {
        self.slots[node][port as usize]
    }

    /// The node and port at the far end of the edge leaving `(node, port)`.
    pub fn across(&self, node: usize, port: u8) -> (usize, u8) {
        let s = self.slot(node, port);
        let e = &self.data.edges[s.edge];
        let far = if s.incoming { &e.tail } else { &e.head };
        (self.node_ix[far.node()], far.port())
    }

    pub fn is_crossing(&self, node: usize) -> bool {
        matches!(self.data.nodes[node].kind, NodeKind::Crossing { .. })
    }

    pub fn is_vertex(&self, node: usize) -> bool {
        matches!(self.data.nodes[node].kind, NodeKind::Vertex)
    }

    /// True when `port` belongs to the over-strand of crossing `node`.
    pub fn is_over(&self, node: usize, port: u8) -> bool {
        match self.data.nodes[node].kind {
            NodeKind::Crossing { over_ports } => over_ports.contains(&port),
            NodeKind::Vertex => false,
        }
    }

    pub fn crossing_count(&self) -> usize {
        (0..self.data.nodes.len()).filter(|&n| self.is_crossing(n)).count()
    }

    pub fn vertex_count(&self) -> usize {
        (0..self.data.nodes.len()).filter(|&n| self.is_vertex(n)).count()
    }

    pub fn edge_index(&self, id: u32) -> Option<usize> {
        self.data.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    /// Connected components as sorted node index lists, ordered by first node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.data.nodes.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(x) = stack.pop() {
                comp.push(x);
                for p in 0..4 {
                    let (y, _) = self.across(x, p);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Reads a diagram from the JSON schema.
pub fn parse_diagram(text: &str) -> Result<MarkedGraphDiagram, DiagramError> {
    Diagram::from_json(text)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// A single kink: one crossing whose strand leaves port 2 and returns at port 3.
    pub(crate) fn kink() -> Diagram {
        let data = DiagramData {
            nodes: vec![Node::crossing("X", [0, 2])],
            edges: vec![
                Edge { id: 0, tail: End::new("X", 2), head: End::new("X", 3) },
                Edge { id: 1, tail: End::new("X", 1), head: End::new("X", 0) },
            ],
            free_loops: 0,
        };
        Diagram::new(data).unwrap()
    }

    /// A circle through one vertex: loops in the corners (1,2) and (3,0).
    pub(crate) fn vertex_circle() -> Diagram {
        let data = DiagramData {
            nodes: vec![Node::vertex("v")],
            edges: vec![
                Edge { id: 0, tail: End::new("v", 1), head: End::new("v", 2) },
                Edge { id: 1, tail: End::new("v", 3), head: End::new("v", 0) },
            ],
            free_loops: 0,
        };
        Diagram::new(data).unwrap()
    }

    #[test]
    fn validation_errors() {
        let empty = DiagramData { nodes: vec![], edges: vec![], free_loops: 0 };
        assert_eq!(Diagram::new(empty), Err(DiagramError::Empty));

        let mut d = kink().data().clone();
        d.edges[0].head = End::new("X", 1);
        assert!(matches!(Diagram::new(d), Err(DiagramError::PortReused { .. })));

        let mut d = kink().data().clone();
        d.nodes[0].kind = NodeKind::Crossing { over_ports: [0, 1] };
        assert!(matches!(Diagram::new(d), Err(DiagramError::OverPorts(_))));

        let mut d = kink().data().clone();
        d.edges[1].head = End::new("Y", 0);
        assert!(matches!(Diagram::new(d), Err(DiagramError::UnknownNode { .. })));

        // incoming ends at adjacent ports 0 and 1
        let bad = DiagramData {
            nodes: vec![Node::vertex("v")],
            edges: vec![
                Edge { id: 0, tail: End::new("v", 3), head: End::new("v", 0) },
                Edge { id: 1, tail: End::new("v", 2), head: End::new("v", 1) },
            ],
            free_loops: 0,
        };
        assert_eq!(Diagram::new(bad), Err(DiagramError::VertexOrientation("v".into())));
    }

    #[test]
    fn crossing_strands_run_through() {
        let bad = DiagramData {
            nodes: vec![Node::crossing("X", [0, 2])],
            edges: vec![
                Edge { id: 0, tail: End::new("X", 0), head: End::new("X", 1) },
                Edge { id: 1, tail: End::new("X", 2), head: End::new("X", 3) },
            ],
            free_loops: 0,
        };
        assert!(matches!(Diagram::new(bad), Err(DiagramError::StrandDirection { .. })));
    }

    #[test]
    fn json_schema() {
        let text = r#"{"edges":[{"id":0,"tail":["X",2],"head":["X",3]},{"id":1,"tail":["X",1],"head":["X",0]}],
                       "nodes":[{"id":"X","type":"crossing","over_ports":[0,2]}]}"#;
        let d = Diagram::from_json(text).unwrap();
        assert_eq!(d, kink());
        assert_eq!(Diagram::from_json(&d.to_json()).unwrap(), d);
        assert!(matches!(Diagram::from_json("{"), Err(DiagramError::Json(_))));
    }
}
