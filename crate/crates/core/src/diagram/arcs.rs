use super::{opposite, CrossingRow, CrossingTable, Diagram, DiagramError};

/// Arc number (from 1) of every edge, in edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcLabeling {
    pub arcs: usize,
    pub of_edge: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (a, b) = (find(parent, a), find(parent, b));
    // keep the smaller edge index as root so numbering follows lowest edge id
    if a < b {
        parent[b] = a;
    } else {
        parent[a] = b;
    }
}

impl Diagram {
    /// Arcs run unbroken through the over-strand of a crossing and through all
    /// four ports of a vertex. They are numbered by their lowest edge id; free
    /// loops come last.
    pub fn compute_arcs(&self) -> ArcLabeling {
        let m = self.edges().len();
        let mut parent: Vec<usize> = (0..m).collect();
        for n in 0..self.nodes().len() {
            if self.is_vertex(n) {
                for p in 1..4 {
                    union(&mut parent, self.slot(n, 0).edge, self.slot(n, p).edge);
                }
            } else {
                for p in 0..2 {
                    if self.is_over(n, p) {
                        union(&mut parent, self.slot(n, p).edge, self.slot(n, opposite(p)).edge);
                    }
                }
            }
        }
        let mut number = vec![0usize; m];
        let mut next = 0;
        let of_edge = (0..m)
            .map(|e| {
                let r = find(&mut parent, e);
                if number[r] == 0 {
                    next += 1;
                    number[r] = next;
                }
                number[r]
            })
            .collect();
        ArcLabeling { arcs: next + self.free_loops(), of_edge }
    }

    /// Port where the over-strand of a crossing enters.
    pub(crate) fn over_in(&self, node: usize) -> u8 {
        (0..4u8).find(|&p| self.is_over(node, p) && self.slot(node, p).incoming).expect("crossing node")
    }

    /// Positive when the under-strand leaves to the left of the over-strand.
    pub fn sign(&self, node: usize) -> Sign {
        let p_in = self.over_in(node);
        let left = (p_in + 3) % 4;
        if self.slot(node, left).incoming {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    /// Over-arc and the under-arcs on the left and right of the over-strand.
    pub fn crossing_row(&self, node: usize, arcs: &ArcLabeling) -> CrossingRow {
        let p_in = self.over_in(node);
        let arc = |p: u8| arcs.of_edge[self.slot(node, p).edge];
        CrossingRow {
            label: self.nodes()[node].id.clone(),
            over: arc(p_in),
            left: arc((p_in + 3) % 4),
            right: arc((p_in + 1) % 4),
        }
    }

    /// Arc count and one row per crossing, in node order.
    pub fn crossing_table(&self) -> Result<CrossingTable, DiagramError> {
        let arcs = self.compute_arcs();
        let rows =
            (0..self.nodes().len()).filter(|&n| self.is_crossing(n)).map(|n| self.crossing_row(n, &arcs)).collect();
        CrossingTable::new(arcs.arcs, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{kink, vertex_circle};
    use super::*;

    #[test]
    fn kink_table() {
        let d = kink();
        let t = d.crossing_table().unwrap();
        assert_eq!(t.arcs, 1);
        assert_eq!(t.rows, vec![CrossingRow { label: "X".into(), over: 1, left: 1, right: 1 }]);
        // over enters at 0, under leaves at 1 which is on the right
        assert_eq!(d.sign(0), Sign::Negative);
    }

    #[test]
    fn vertex_joins_everything() {
        let t = vertex_circle().crossing_table().unwrap();
        assert_eq!(t.arcs, 1);
        assert!(t.rows.is_empty());
    }
}
