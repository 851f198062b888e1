//! Mutable working copy used by moves and resolutions.

use std::collections::{BTreeMap, BTreeSet};

use super::{Diagram, DiagramData, DiagramError, Edge, End, Node};

#[derive(Debug, Clone)]
pub(crate) struct Raw {
    pub nodes: Vec<Node>,
    /// id -> (tail, head)
    pub edges: BTreeMap<u32, (End, End)>,
    pub free_loops: usize,
}

impl Raw {
    pub fn from_diagram(d: &Diagram) -> Self {
        Raw {
            nodes: d.nodes().to_vec(),
            edges: d.edges().iter().map(|e| (e.id, (e.tail.clone(), e.head.clone()))).collect(),
            free_loops: d.free_loops(),
        }
    }

    pub fn finish(self, link: bool) -> Result<Diagram, DiagramError> {
        let data = DiagramData {
            edges: self.edges.into_iter().map(|(id, (tail, head))| Edge { id, tail, head }).collect(),
            nodes: self.nodes,
            free_loops: self.free_loops,
        };
        if link {
            Diagram::new_link(data)
        } else {
            Diagram::new(data)
        }
    }

    pub fn fresh_edge(&self) -> u32 {
        self.edges.keys().next_back().map_or(0, |k| k + 1)
    }

    pub fn fresh_node(&self, prefix: &str) -> String {
        let used: BTreeSet<&str> = self.nodes.iter().map(|n| n.id.as_str()).collect();
        (1..).map(|k| format!("{prefix}{k}")).find(|id| !used.contains(id.as_str())).expect("unbounded")
    }

    /// Replaces edge `id` by a path through `stops`, each `(node, in, out)`
    /// listed in the edge's direction. The first piece keeps `id`; the new
    /// ids are returned in path order.
    pub fn split(&mut self, id: u32, stops: &[(String, u8, u8)]) -> Vec<u32> {
        let (tail, head) = self.edges.remove(&id).expect("edge exists");
        let mut from = tail;
        let mut cur = id;
        let mut fresh = Vec::new();
        for (node, pin, pout) in stops {
            self.edges.insert(cur, (from, End::new(node.clone(), *pin)));
            from = End::new(node.clone(), *pout);
            cur = self.fresh_edge();
            // reserve the id before the next call to fresh_edge
            self.edges.insert(cur, (from.clone(), from.clone()));
            fresh.push(cur);
        }
        self.edges.insert(cur, (from, head));
        fresh
    }

    /// Moves whichever end of edge `id` sits at `from` to `to`.
    pub fn move_end(&mut self, id: u32, from: &End, to: End) {
        let e = self.edges.get_mut(&id).expect("edge exists");
        if e.0 == *from {
            e.0 = to;
        } else {
            assert_eq!(e.1, *from, "edge {id} has no end at {from:?}");
            e.1 = to;
        }
    }

    /// Joins `near` and `far`, which meet at node `via`, into one edge whose
    /// near end is moved from `near_at` to `near_to`. Keeps the smaller id.
    pub fn merge_through(&mut self, near: u32, far: u32, via: &str, near_at: &End, near_to: End) {
        let (nt, nh) = self.edges.remove(&near).expect("edge exists");
        let (ft, fh) = self.edges.remove(&far).expect("edge exists");
        let merged = if nh.node() == via && nt == *near_at {
            debug_assert_eq!(ft.node(), via);
            (near_to, fh)
        } else {
            debug_assert!(nt.node() == via && nh == *near_at && fh.node() == via);
            (ft, near_to)
        };
        self.edges.insert(near.min(far), merged);
    }

    /// Sends edge `id` through node `via`, entering from the side of its end
    /// `at` on port `near_port` and leaving towards the other end on `far_port`.
    pub fn split_through(&mut self, id: u32, at: &End, via: &str, near_port: u8, far_port: u8) {
        let tail_here = self.edges[&id].0 == *at;
        let stop =
            if tail_here { (via.to_string(), near_port, far_port) } else { (via.to_string(), far_port, near_port) };
        self.split(id, &[stop]);
    }

    pub fn set_kind(&mut self, id: &str, kind: super::NodeKind) {
        self.nodes.iter_mut().find(|n| n.id == id).expect("node exists").kind = kind;
    }

    /// Removes `nodes`, joining each port to its partner in `pairing`, and
    /// merges the edge chains that pass through them. A merged edge keeps the
    /// smallest id of its chain. Returns the number of closed chains, which
    /// are dropped.
    pub fn dissolve(&mut self, nodes: &[(String, [u8; 4])]) -> usize {
        let pairing: BTreeMap<&str, [u8; 4]> = nodes.iter().map(|(n, p)| (n.as_str(), *p)).collect();
        let by_tail: BTreeMap<End, u32> = self.edges.iter().map(|(&id, (t, _))| (t.clone(), id)).collect();
        let mut used = BTreeSet::new();
        let mut merged = Vec::new();
        for (&id, (tail, _)) in &self.edges {
            if pairing.contains_key(tail.node()) {
                continue;
            }
            let mut chain = vec![id];
            let mut head = self.edges[&id].1.clone();
            while let Some(pair) = pairing.get(head.node()) {
                let next = by_tail[&End::new(head.node(), pair[head.port() as usize])];
                chain.push(next);
                head = self.edges[&next].1.clone();
            }
            used.extend(chain.iter().copied());
            merged.push((*chain.iter().min().expect("nonempty"), tail.clone(), head));
        }
        let mut loops = 0;
        let rest: Vec<u32> = self.edges.keys().filter(|k| !used.contains(k)).copied().collect();
        for start in rest {
            if used.contains(&start) {
                continue;
            }
            loops += 1;
            let mut cur = start;
            while used.insert(cur) {
                let head = &self.edges[&cur].1;
                let pair = pairing[head.node()];
                cur = by_tail[&End::new(head.node(), pair[head.port() as usize])];
            }
        }
        self.edges.retain(|id, _| !used.contains(id));
        for (id, tail, head) in merged {
            self.edges.insert(id, (tail, head));
        }
        self.nodes.retain(|n| !pairing.contains_key(n.id.as_str()));
        loops
    }
}

/// Pairing that runs straight through a crossing.
pub(crate) const STRAIGHT: [u8; 4] = [2, 3, 0, 1];

impl Diagram {
    /// Removes the listed crossings, letting both strands run straight through.
    pub(crate) fn dissolve_crossings(&self, ids: &[&str], link: bool) -> Result<Diagram, DiagramError> {
        let mut raw = Raw::from_diagram(self);
        let loops = raw.dissolve(&ids.iter().map(|s| (s.to_string(), STRAIGHT)).collect::<Vec<_>>());
        if loops > 0 && !link {
            return Err(DiagramError::FreeLoop);
        }
        raw.free_loops += loops;
        raw.finish(link)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::kink;
    use super::*;

    #[test]
    fn dissolving_a_kink_leaves_a_loop() {
        let d = kink();
        assert_eq!(d.dissolve_crossings(&["X"], false), Err(DiagramError::FreeLoop));
        let l = d.dissolve_crossings(&["X"], true).unwrap();
        assert_eq!(l.free_loops(), 1);
        assert!(l.nodes().is_empty() && l.edges().is_empty());
    }

    #[test]
    fn split_then_dissolve_round_trips() {
        let d = kink();
        let mut raw = Raw::from_diagram(&d);
        raw.nodes.push(Node::crossing("Y", [0, 2]));
        raw.nodes.push(Node::crossing("Z", [0, 2]));
        // send each loop through a new crossing twice
        let fresh = raw.split(0, &[("Y".into(), 0, 2), ("Y".into(), 1, 3)]);
        assert_eq!(fresh, vec![2, 3]);
        raw.split(1, &[("Z".into(), 0, 2), ("Z".into(), 1, 3)]);
        let grown = raw.finish(false).unwrap();
        assert_eq!(grown.crossing_count(), 3);
        let back = grown.dissolve_crossings(&["Y", "Z"], false).unwrap();
        assert_eq!(back, d);
    }
}
