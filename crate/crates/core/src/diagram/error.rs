use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed diagram JSON: {0}")]
    Json(String),
    #[error("empty diagram")]
    Empty,
    #[error("duplicate node id {0:?}")]
    DuplicateNode(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(u32),
    #[error("edge {edge} refers to unknown node {node:?}")]
    UnknownNode { edge: u32, node: String },
    #[error("edge {edge} uses port {port} at node {node:?}; ports are 0..3")]
    BadPort { edge: u32, node: String, port: u8 },
    #[error("port {port} of node {node:?} has more than one edge end")]
    PortReused { node: String, port: u8 },
    #[error("port {port} of node {node:?} has no edge end")]
    PortFree { node: String, port: u8 },
    #[error("crossing {0:?}: over_ports must be an opposite pair")]
    OverPorts(String),
    #[error("crossing {node:?}: the strand on ports {a} and {b} must run one in and one out")]
    StrandDirection { node: String, a: u8, b: u8 },
    #[error("vertex {0:?}: incoming ends must sit at opposite ports")]
    VertexOrientation(String),
    #[error("invalid node id {0:?}")]
    BadNodeId(String),
    #[error("line {line}: {message}")]
    TableSyntax { line: usize, message: String },
    #[error("crossing {crossing}: arc {arc} outside 1..={arcs}")]
    ArcOutOfRange { crossing: String, arc: usize, arcs: usize },
    #[error("duplicate crossing label {0:?}")]
    DuplicateCrossing(String),
    #[error("table must have at least one arc")]
    NoArcs,
    #[error("site is not applicable to this diagram")]
    StaleSite,
    #[error("component containing node {0:?} is not a planar rotation system")]
    NotPlanar(String),
    #[error("move would leave a closed loop without crossings or vertices")]
    FreeLoop,
}
