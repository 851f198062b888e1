use super::{Diagram, NodeKind};

impl Diagram {
    /// Encoding of one component traversed breadth first from `start`, read
    /// with its ports shifted by `rot`.
    fn component_code(&self, start: usize, rot: u8) -> Vec<u32> {
        let n = self.nodes().len();
        let mut index = vec![u32::MAX; n];
        let mut shift = vec![0u8; n];
        let mut order = vec![start];
        index[start] = 0;
        shift[start] = rot;
        let mut code = Vec::new();
        let mut k = 0;
        while k < order.len() {
            let x = order[k];
            k += 1;
            code.push(match self.nodes()[x].kind {
                NodeKind::Vertex => 0,
                NodeKind::Crossing { over_ports } => 1 + u32::from((over_ports[0] + 4 - shift[x]) % 2),
            });
            for q in 0..4u8 {
                let p = (q + shift[x]) % 4;
                let (y, py) = self.across(x, p);
                if index[y] == u32::MAX {
                    index[y] = order.len() as u32;
                    // crossings may turn freely, vertices only by a half turn
                    shift[y] = if self.is_crossing(y) { py } else { py / 2 * 2 };
                    order.push(y);
                }
                code.push(index[y]);
                code.push(u32::from((py + 4 - shift[y]) % 4));
                code.push(u32::from(self.slot(x, p).incoming));
            }
        }
        code
    }

    /// Invariant of the diagram up to renaming nodes and edges, turning
    /// crossings, and turning vertices by a half turn.
    pub fn canonical_code(&self) -> Vec<Vec<u32>> {
        let mut comps: Vec<Vec<u32>> = self
            .components()
            .into_iter()
            .map(|c| {
                c.iter()
                    .flat_map(|&x| {
                        let rots: &[u8] = if self.is_crossing(x) { &[0, 1, 2, 3] } else { &[0, 2] };
                        rots.iter().map(move |&r| (x, r))
                    })
                    .map(|(x, r)| self.component_code(x, r))
                    .min()
                    .expect("component is nonempty")
            })
            .collect();
        comps.sort();
        comps.push(vec![self.free_loops() as u32]);
        comps
    }

    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        self.nodes().len() == other.nodes().len()
            && self.edges().len() == other.edges().len()
            && self.canonical_code() == other.canonical_code()
    }
}
