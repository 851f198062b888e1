//! The eleven local moves on marked graph diagrams.
//!
//! Pictures, in port terms (ports counterclockwise, `+` taken mod 4):
//!
//! * Ω1, Ω1': a kink on one edge, on its left or right. The strand runs
//!   through the new crossing on ports 0→2, loops to port 3 (left) or 1
//!   (right) and leaves on the opposite port. Ω1 gives a positive crossing,
//!   Ω1' a negative one. Removal takes a crossing with a loop edge on two
//!   adjacent ports and the matching sign.
//! * Ω2: two edges on a common face. The first is pushed across the second,
//!   over or under, making a bigon. Removal takes a bigon between two
//!   crossings where one strand is over at both.
//! * Ω3: a triangular face of crossings with one strand over at both of its
//!   corners. Each strand's two crossings trade places along it.
//! * Ω4, Ω4': a strand crossing the edges at ports p, p+1 of a vertex passes
//!   over (Ω4) or under (Ω4') the vertex to cross the edges at p+2, p+3.
//! * Ω5: a crossing forming a bigon with a vertex in a corner (p, p+1) on the
//!   marker side, p even. The crossing moves to the opposite corner and the
//!   two edges at p, p+1 trade ports.
//! * Ω6, Ω6': a vertex with a loop edge in one corner, inserted on or removed
//!   from an edge. The loop corner is (0,1) or (2,3) for Ω6 and (1,2) or
//!   (3,0) for Ω6'.
//! * Ω7: two vertices bounding a bigon that lies on the marker side of
//!   exactly one of them. Both markers turn a quarter.
//! * Ω8: a flype. Two vertices bounding a bigon, with a crossing twisting the
//!   far edges of the first; the pair is turned over and the crossing moves
//!   to the far edges of the second. The strand running from upper left to
//!   lower right (vertex pair on the right of the crossing, bigon vertical)
//!   stays over or under.
//!
//! Ω3, Ω4, Ω4', Ω5, Ω7 and Ω8 are their own inverses, so both directions list
//! the same sites.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::edit::Raw;
use super::{Dart, Diagram, DiagramError, End, NodeKind, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Move {
    #[serde(rename = "1")]
    Omega1,
    #[serde(rename = "1'")]
    Omega1Prime,
    #[serde(rename = "2")]
    Omega2,
    #[serde(rename = "3")]
    Omega3,
    #[serde(rename = "4")]
    Omega4,
    #[serde(rename = "4'")]
    Omega4Prime,
    #[serde(rename = "5")]
    Omega5,
    #[serde(rename = "6")]
    Omega6,
    #[serde(rename = "6'")]
    Omega6Prime,
    #[serde(rename = "7")]
    Omega7,
    #[serde(rename = "8")]
    Omega8,
}

impl Move {
    pub const ALL: [Move; 11] = [
        Move::Omega1,
        Move::Omega1Prime,
        Move::Omega2,
        Move::Omega3,
        Move::Omega4,
        Move::Omega4Prime,
        Move::Omega5,
        Move::Omega6,
        Move::Omega6Prime,
        Move::Omega7,
        Move::Omega8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Move::Omega1 => "1",
            Move::Omega1Prime => "1'",
            Move::Omega2 => "2",
            Move::Omega3 => "3",
            Move::Omega4 => "4",
            Move::Omega4Prime => "4'",
            Move::Omega5 => "5",
            Move::Omega6 => "6",
            Move::Omega6Prime => "6'",
            Move::Omega7 => "7",
            Move::Omega8 => "8",
        }
    }

    /// True when forward and backward are the same family of sites.
    pub fn is_involution(self) -> bool {
        matches!(self, Move::Omega3 | Move::Omega4 | Move::Omega4Prime | Move::Omega5 | Move::Omega7 | Move::Omega8)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ω{}", self.as_str())
    }
}

impl FromStr for Move {
    type Err = String;

    /// Accepts `4'`, `O4'`, `omega4'` and `Ω4'`.
    fn from_str(s: &str) -> Result<Self, String> {
        let lower = s.trim().to_ascii_lowercase();
        let body = lower
            .strip_prefix("omega")
            .or_else(|| lower.strip_prefix('ω'))
            .or_else(|| lower.strip_prefix('Ω'))
            .or_else(|| lower.strip_prefix('o'))
            .unwrap_or(&lower)
            .replace("prime", "'");
        Move::ALL.into_iter().find(|m| m.as_str() == body).ok_or_else(|| format!("unknown move {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// Where a move acts, named by node and edge ids so it survives relabeling of
/// unrelated parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Locus {
    /// An edge, with the side of its direction the new part goes on.
    Edge {
        edge: u32,
        left: bool,
    },
    /// Two edge sides on one face; `forward` means the face is on the left of
    /// the edge's direction.
    Finger {
        first: u32,
        first_forward: bool,
        second: u32,
        second_forward: bool,
        first_over: bool,
    },
    Node {
        node: String,
    },
    /// The corner between `port` and `port + 1`.
    Corner {
        node: String,
        port: u8,
    },
    /// A face, by its sorted edge ids.
    Face {
        edges: Vec<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Site {
    #[serde(rename = "move")]
    pub mv: Move,
    pub direction: Direction,
    pub locus: Locus,
}

fn add(p: u8, k: u8) -> u8 {
    (p + k) % 4
}

impl Diagram {
    fn eid(&self, node: usize, port: u8) -> u32 {
        self.edges()[self.slot(node, port).edge].id
    }

    fn end(&self, node: usize, port: u8) -> End {
        End::new(self.nodes()[node].id.clone(), port)
    }

    fn dart_edge(&self, d: Dart) -> (u32, bool) {
        let s = self.slot(d.node, d.port);
        (self.edges()[s.edge].id, !s.incoming)
    }

    fn dart_of(&self, edge: u32, forward: bool) -> Option<Dart> {
        let e = &self.edges()[self.edge_index(edge)?];
        let at = if forward { &e.tail } else { &e.head };
        Some(Dart { node: self.node_index(at.node())?, port: at.port() })
    }

    fn face_by_edges(&self, edges: &[u32]) -> Option<Vec<Dart>> {
        self.faces().into_iter().map(|f| f.darts).find(|darts| {
            let mut ids: Vec<u32> = darts.iter().map(|&d| self.dart_edge(d).0).collect();
            ids.sort_unstable();
            ids == edges
        })
    }

    fn face_locus(&self, darts: &[Dart]) -> Locus {
        let mut edges: Vec<u32> = darts.iter().map(|&d| self.dart_edge(d).0).collect();
        edges.sort_unstable();
        Locus::Face { edges }
    }

    /// Sites where `mv` applies in direction `dir`, in a deterministic order.
    pub fn enumerate_move_sites(&self, mv: Move, dir: Direction) -> Vec<Site> {
        self.sites_in(mv, dir, false)
    }

    /// Applies a move at a site from [`Diagram::enumerate_move_sites`]. Sites that do not
    /// belong to this diagram are rejected.
    pub fn apply_move(&self, site: &Site) -> Result<Diagram, DiagramError> {
        self.apply_in(site, false)
    }

    pub(crate) fn sites_in(&self, mv: Move, dir: Direction, link: bool) -> Vec<Site> {
        self.candidates(mv, dir).into_iter().filter(|s| self.perform(s, link).is_ok()).collect()
    }

    pub(crate) fn apply_in(&self, site: &Site, link: bool) -> Result<Diagram, DiagramError> {
        if !self.candidates(site.mv, site.direction).contains(site) {
            return Err(DiagramError::StaleSite);
        }
        self.perform(site, link)
    }

    fn candidates(&self, mv: Move, dir: Direction) -> Vec<Site> {
        let dir = if mv.is_involution() { Direction::Forward } else { dir };
        let loci = match (mv, dir) {
            (Move::Omega1 | Move::Omega1Prime | Move::Omega6 | Move::Omega6Prime, Direction::Forward) => {
                self.edges().iter().flat_map(|e| [true, false].map(|left| Locus::Edge { edge: e.id, left })).collect()
            }
            (Move::Omega1 | Move::Omega1Prime, Direction::Backward) => self.kink_sites(mv),
            (Move::Omega2, Direction::Forward) => self.finger_sites(),
            (Move::Omega2, Direction::Backward) => self.bigon_sites(),
            (Move::Omega3, _) => self.triangle_sites(),
            (Move::Omega4 | Move::Omega4Prime, _) => self.pass_sites(mv == Move::Omega4),
            (Move::Omega5, _) => self.twist_sites(),
            (Move::Omega6 | Move::Omega6Prime, Direction::Backward) => self.loop_sites(mv == Move::Omega6),
            (Move::Omega7, _) => self.marker_sites(),
            (Move::Omega8, _) => self.flype_sites(),
        };
        loci.into_iter().map(|locus| Site { mv, direction: dir, locus }).collect()
    }

    fn kink_sites(&self, mv: Move) -> Vec<Locus> {
        let want = if mv == Move::Omega1 { Sign::Positive } else { Sign::Negative };
        (0..self.nodes().len())
            .filter(|&x| self.is_crossing(x) && self.sign(x) == want)
            .filter(|&x| (0..4).any(|p| self.across(x, p) == (x, add(p, 1))))
            .map(|x| Locus::Node { node: self.nodes()[x].id.clone() })
            .collect()
    }

    fn finger_sites(&self) -> Vec<Locus> {
        let mut out = Vec::new();
        for f in self.faces() {
            for i in 0..f.darts.len() {
                for j in i + 1..f.darts.len() {
                    let (a, af) = self.dart_edge(f.darts[i]);
                    let (b, bf) = self.dart_edge(f.darts[j]);
                    if a == b {
                        continue;
                    }
                    for first_over in [true, false] {
                        out.push(Locus::Finger {
                            first: a,
                            first_forward: af,
                            second: b,
                            second_forward: bf,
                            first_over,
                        });
                    }
                }
            }
        }
        out
    }

    fn bigon_sites(&self) -> Vec<Locus> {
        self.faces()
            .into_iter()
            .filter(|f| f.len() == 2)
            .filter(|f| {
                let d = f.darts[0];
                let (y, a) = self.across(d.node, d.port);
                self.is_crossing(d.node)
                    && self.is_crossing(y)
                    && d.node != y
                    && self.is_over(d.node, d.port) == self.is_over(y, a)
            })
            .map(|f| self.face_locus(&f.darts))
            .collect()
    }

    fn triangle_sites(&self) -> Vec<Locus> {
        self.faces()
            .into_iter()
            .filter(|f| f.len() == 3)
            .filter(|f| {
                let n: Vec<usize> = f.darts.iter().map(|d| d.node).collect();
                n.iter().all(|&x| self.is_crossing(x)) && n[0] != n[1] && n[1] != n[2] && n[0] != n[2]
            })
            .filter(|f| {
                f.darts.iter().any(|&d| {
                    let (y, a) = self.across(d.node, d.port);
                    self.is_over(d.node, d.port) == self.is_over(y, a)
                })
            })
            .map(|f| self.face_locus(&f.darts))
            .collect()
    }

    /// Vertex corner (p, p+1) cut off by a strand crossing both edges.
    fn pass_frame(&self, v: usize, p: u8) -> Option<PassFrame> {
        if !self.is_vertex(v) {
            return None;
        }
        let (x, a) = self.across(v, p);
        if !self.is_crossing(x) {
            return None;
        }
        let (y, c) = self.across(x, add(a, 3));
        if !self.is_crossing(y) || y == x || self.across(y, add(c, 3)) != (v, add(p, 1)) {
            return None;
        }
        let core = [
            self.eid(v, p),
            self.eid(x, add(a, 2)),
            self.eid(x, add(a, 3)),
            self.eid(y, add(c, 3)),
            self.eid(y, add(c, 1)),
            self.eid(v, add(p, 2)),
            self.eid(v, add(p, 3)),
        ];
        let outer = [self.eid(x, add(a, 1)), self.eid(y, add(c, 2))];
        if !distinct(&core) || outer.iter().any(|e| core.contains(e)) {
            return None;
        }
        Some(PassFrame { v, p, x, a, y, c })
    }

    fn pass_sites(&self, over: bool) -> Vec<Locus> {
        let mut out = Vec::new();
        for v in 0..self.nodes().len() {
            for p in 0..4 {
                let Some(fr) = self.pass_frame(v, p) else { continue };
                if self.is_over(fr.x, add(fr.a, 3)) == over && self.is_over(fr.y, fr.c) == over {
                    out.push(Locus::Corner { node: self.nodes()[v].id.clone(), port: p });
                }
            }
        }
        out
    }

    /// Crossing forming a bigon in the corner (p, p+1) of vertex `v`.
    fn twist_frame(&self, v: usize, p: u8) -> Option<(usize, u8)> {
        if !self.is_vertex(v) {
            return None;
        }
        let (x, x1) = self.across(v, p);
        if !self.is_crossing(x) || self.across(x, add(x1, 3)) != (v, add(p, 1)) {
            return None;
        }
        let edges = [
            self.eid(v, p),
            self.eid(x, add(x1, 2)),
            self.eid(v, add(p, 1)),
            self.eid(x, add(x1, 1)),
            self.eid(v, add(p, 2)),
            self.eid(v, add(p, 3)),
        ];
        distinct(&edges).then_some((x, x1))
    }

    fn twist_sites(&self) -> Vec<Locus> {
        let mut out = Vec::new();
        for v in 0..self.nodes().len() {
            for p in [0, 2] {
                if self.twist_frame(v, p).is_some() {
                    out.push(Locus::Corner { node: self.nodes()[v].id.clone(), port: p });
                }
            }
        }
        out
    }

    fn loop_sites(&self, even: bool) -> Vec<Locus> {
        let mut out = Vec::new();
        for v in 0..self.nodes().len() {
            if !self.is_vertex(v) {
                continue;
            }
            for q in 0..4u8 {
                if (q % 2 == 0) == even && self.across(v, q) == (v, add(q, 1)) {
                    out.push(Locus::Corner { node: self.nodes()[v].id.clone(), port: q });
                }
            }
        }
        out
    }

    fn marker_sites(&self) -> Vec<Locus> {
        self.faces()
            .into_iter()
            .filter(|f| f.len() == 2)
            .filter(|f| {
                let (d1, d2) = (f.darts[0], f.darts[1]);
                self.is_vertex(d1.node)
                    && self.is_vertex(d2.node)
                    && d1.node != d2.node
                    && (d1.port % 2 == 0) != (d2.port % 2 == 0)
            })
            .map(|f| self.face_locus(&f.darts))
            .collect()
    }

    fn flype_frame(&self, v1: usize, b: u8) -> Option<FlypeFrame> {
        if !self.is_vertex(v1) {
            return None;
        }
        let (v2, c1) = self.across(v1, b);
        let c = add(c1, 3);
        if !self.is_vertex(v2) || v2 == v1 || self.across(v2, c) != (v1, add(b, 1)) {
            return None;
        }
        let (x, xp) = self.across(v1, add(b, 2));
        if !self.is_crossing(x) || self.across(x, add(xp, 3)) != (v1, add(b, 3)) {
            return None;
        }
        let edges = [
            self.eid(v1, b),
            self.eid(v1, add(b, 1)),
            self.eid(v1, add(b, 2)),
            self.eid(v1, add(b, 3)),
            self.eid(x, add(xp, 1)),
            self.eid(x, add(xp, 2)),
            self.eid(v2, add(c, 2)),
            self.eid(v2, add(c, 3)),
        ];
        distinct(&edges).then_some(FlypeFrame { v1, b, v2, c, x, xp })
    }

    fn flype_sites(&self) -> Vec<Locus> {
        let mut out = Vec::new();
        for v in 0..self.nodes().len() {
            for b in 0..4 {
                if self.flype_frame(v, b).is_some() {
                    out.push(Locus::Corner { node: self.nodes()[v].id.clone(), port: b });
                }
            }
        }
        out
    }

    fn perform(&self, site: &Site, link: bool) -> Result<Diagram, DiagramError> {
        let stale = || DiagramError::StaleSite;
        let node_of = |id: &str| self.node_index(id).ok_or(DiagramError::StaleSite);
        let mut raw = Raw::from_diagram(self);
        match (&site.locus, site.mv, site.direction) {
            (Locus::Edge { edge, left }, Move::Omega1 | Move::Omega1Prime, Direction::Forward) => {
                self.edge_index(*edge).ok_or_else(stale)?;
                let x = raw.fresh_node("x");
                let b = if *left { 3 } else { 1 };
                // with over ports 0,2 the kink is positive exactly when it sits on the right
                let over = if (site.mv == Move::Omega1) == *left { [1, 3] } else { [0, 2] };
                raw.nodes.push(super::Node::crossing(x.clone(), over));
                raw.split(*edge, &[(x.clone(), 0, 2), (x, b, add(b, 2))]);
            }
            (Locus::Node { node }, Move::Omega1 | Move::Omega1Prime, Direction::Backward) => {
                return self.dissolve_crossings(&[node.as_str()], link);
            }
            (
                Locus::Finger { first, first_forward, second, second_forward, first_over },
                Move::Omega2,
                Direction::Forward,
            ) => {
                let d1 = self.dart_of(*first, *first_forward).ok_or_else(stale)?;
                let d2 = self.dart_of(*second, *second_forward).ok_or_else(stale)?;
                if first == second || !self.faces().iter().any(|f| f.darts.contains(&d1) && f.darts.contains(&d2)) {
                    return Err(stale());
                }
                let over = if *first_over { [1, 3] } else { [0, 2] };
                let x1 = raw.fresh_node("x");
                raw.nodes.push(super::Node::crossing(x1.clone(), over));
                let x2 = raw.fresh_node("x");
                raw.nodes.push(super::Node::crossing(x2.clone(), over));
                // stops in the order the face walks the edge
                let walk1 = vec![(x1.clone(), 3, 1), (x2.clone(), 1, 3)];
                let walk2 = vec![(x2, 0, 2), (x1, 0, 2)];
                raw.split(*first, &along(walk1, *first_forward));
                raw.split(*second, &along(walk2, *second_forward));
            }
            (Locus::Face { edges }, Move::Omega2, Direction::Backward) => {
                let darts = self.face_by_edges(edges).ok_or_else(stale)?;
                let ids: Vec<&str> = darts.iter().map(|d| self.nodes()[d.node].id.as_str()).collect();
                return self.dissolve_crossings(&ids, link);
            }
            (Locus::Face { edges }, Move::Omega3, _) => {
                let darts = self.face_by_edges(edges).ok_or_else(stale)?;
                let mut remap: BTreeMap<End, End> = BTreeMap::new();
                for &d in &darts {
                    let (x, xi) = (d.node, d.port);
                    let (y, yi) = self.across(x, xi);
                    let (xo, yo) = (add(xi, 2), add(yi, 2));
                    remap.insert(self.end(x, xo), self.end(y, yi));
                    remap.insert(self.end(y, yo), self.end(x, xi));
                    remap.insert(self.end(x, xi), self.end(y, yo));
                    remap.insert(self.end(y, yi), self.end(x, xo));
                }
                for (t, h) in raw.edges.values_mut() {
                    for end in [t, h] {
                        if let Some(to) = remap.get(end) {
                            *end = to.clone();
                        }
                    }
                }
            }
            (Locus::Corner { node, port }, Move::Omega4 | Move::Omega4Prime, _) => {
                let fr = self.pass_frame(node_of(node)?, *port).ok_or_else(stale)?;
                let PassFrame { v, p, x, a, y, c } = fr;
                let (xid, yid) = (self.nodes()[x].id.clone(), self.nodes()[y].id.clone());
                let g2 = self.eid(v, add(p, 2));
                let g3 = self.eid(v, add(p, 3));
                raw.merge_through(self.eid(v, p), self.eid(x, add(a, 2)), &xid, &self.end(v, p), self.end(v, p));
                raw.merge_through(
                    self.eid(v, add(p, 1)),
                    self.eid(y, add(c, 1)),
                    &yid,
                    &self.end(v, add(p, 1)),
                    self.end(v, add(p, 1)),
                );
                raw.split_through(g3, &self.end(v, add(p, 3)), &xid, add(a, 2), a);
                raw.split_through(g2, &self.end(v, add(p, 2)), &yid, add(c, 1), add(c, 3));
            }
            (Locus::Corner { node, port }, Move::Omega5, _) => {
                let v = node_of(node)?;
                let p = *port;
                if p % 2 != 0 {
                    return Err(stale());
                }
                let (x, x1) = self.twist_frame(v, p).ok_or_else(stale)?;
                let xid = self.nodes()[x].id.clone();
                let (ec, ed) = (self.eid(v, add(p, 2)), self.eid(v, add(p, 3)));
                let a_over = self.is_over(x, x1);
                raw.merge_through(
                    self.eid(v, p),
                    self.eid(x, add(x1, 2)),
                    &xid,
                    &self.end(v, p),
                    self.end(v, add(p, 1)),
                );
                raw.merge_through(
                    self.eid(v, add(p, 1)),
                    self.eid(x, add(x1, 1)),
                    &xid,
                    &self.end(v, add(p, 1)),
                    self.end(v, p),
                );
                raw.move_end(ed, &self.end(v, add(p, 3)), self.end(v, add(p, 2)));
                raw.split_through(ed, &self.end(v, add(p, 2)), &xid, 0, 2);
                raw.move_end(ec, &self.end(v, add(p, 2)), self.end(v, add(p, 3)));
                raw.split_through(ec, &self.end(v, add(p, 3)), &xid, 3, 1);
                raw.set_kind(&xid, NodeKind::Crossing { over_ports: if a_over { [0, 2] } else { [1, 3] } });
            }
            (Locus::Edge { edge, left }, Move::Omega6 | Move::Omega6Prime, Direction::Forward) => {
                self.edge_index(*edge).ok_or_else(stale)?;
                let j = if site.mv == Move::Omega6 { 0 } else { 1 };
                let v = raw.fresh_node("v");
                raw.nodes.push(super::Node::vertex(v.clone()));
                if *left {
                    raw.split(*edge, &[(v.clone(), add(j, 2), add(j, 3))]);
                    let id = raw.fresh_edge();
                    raw.edges.insert(id, (End::new(v.clone(), add(j, 1)), End::new(v, j)));
                } else {
                    raw.split(*edge, &[(v.clone(), add(j, 3), add(j, 2))]);
                    let id = raw.fresh_edge();
                    raw.edges.insert(id, (End::new(v.clone(), j), End::new(v, add(j, 1))));
                }
            }
            (Locus::Corner { node, port }, Move::Omega6 | Move::Omega6Prime, Direction::Backward) => {
                let v = node_of(node)?;
                let q = *port;
                if !self.is_vertex(v)
                    || self.across(v, q) != (v, add(q, 1))
                    || (q % 2 == 0) != (site.mv == Move::Omega6)
                {
                    return Err(stale());
                }
                let mut pairing = [0u8; 4];
                for (a, b) in [(q, add(q, 1)), (add(q, 2), add(q, 3))] {
                    pairing[a as usize] = b;
                    pairing[b as usize] = a;
                }
                let loops = raw.dissolve(&[(node.clone(), pairing)]) - 1;
                if loops > 0 && !link {
                    return Err(DiagramError::FreeLoop);
                }
                raw.free_loops += loops;
            }
            (Locus::Face { edges }, Move::Omega7, _) => {
                let darts = self.face_by_edges(edges).ok_or_else(stale)?;
                let ids: Vec<String> = darts.iter().map(|d| self.nodes()[d.node].id.clone()).collect();
                for (t, h) in raw.edges.values_mut() {
                    for end in [t, h] {
                        if ids.iter().any(|id| id == end.node()) {
                            end.1 = add(end.1, 1);
                        }
                    }
                }
            }
            (Locus::Corner { node, port }, Move::Omega8, _) => {
                let fr = self.flype_frame(node_of(node)?, *port).ok_or_else(stale)?;
                let FlypeFrame { v1, b, v2, c, x, xp } = fr;
                let xid = self.nodes()[x].id.clone();
                let e = |n: usize, p: u8| self.end(n, p);
                let (upper, lower) = (self.eid(v1, add(b, 1)), self.eid(v1, b));
                let (g, h) = (self.eid(v2, add(c, 2)), self.eid(v2, add(c, 3)));
                let slash_over = self.is_over(x, add(xp, 1));
                raw.merge_through(
                    self.eid(v1, add(b, 2)),
                    self.eid(x, add(xp, 2)),
                    &xid,
                    &e(v1, add(b, 2)),
                    e(v1, add(b, 3)),
                );
                raw.merge_through(
                    self.eid(v1, add(b, 3)),
                    self.eid(x, add(xp, 1)),
                    &xid,
                    &e(v1, add(b, 3)),
                    e(v1, add(b, 2)),
                );
                raw.move_end(upper, &e(v1, add(b, 1)), e(v1, b));
                raw.move_end(upper, &e(v2, c), e(v2, add(c, 1)));
                raw.move_end(lower, &e(v1, b), e(v1, add(b, 1)));
                raw.move_end(lower, &e(v2, add(c, 1)), e(v2, c));
                raw.move_end(g, &e(v2, add(c, 2)), e(v2, add(c, 3)));
                raw.split_through(g, &e(v2, add(c, 3)), &xid, 3, 1);
                raw.move_end(h, &e(v2, add(c, 3)), e(v2, add(c, 2)));
                raw.split_through(h, &e(v2, add(c, 2)), &xid, 0, 2);
                raw.set_kind(&xid, NodeKind::Crossing { over_ports: if slash_over { [1, 3] } else { [0, 2] } });
            }
            _ => return Err(stale()),
        }
        raw.finish(link)
    }
}

struct PassFrame {
    v: usize,
    p: u8,
    x: usize,
    a: u8,
    y: usize,
    c: u8,
}

struct FlypeFrame {
    v1: usize,
    b: u8,
    v2: usize,
    c: u8,
    x: usize,
    xp: u8,
}

fn distinct(ids: &[u32]) -> bool {
    ids.iter().enumerate().all(|(i, a)| !ids[..i].contains(a))
}

/// Stops listed in face-walk order, put into edge order.
fn along(mut walk: Vec<(String, u8, u8)>, forward: bool) -> Vec<(String, u8, u8)> {
    if !forward {
        walk.reverse();
        for s in &mut walk {
            std::mem::swap(&mut s.1, &mut s.2);
        }
    }
    walk
}
