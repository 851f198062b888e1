use super::{Diagram, DiagramError};

/// Leaving `node` through `port`, with the face on the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub node: usize,
    pub port: u8,
}

/// Boundary of a face, starting at its smallest dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

impl Diagram {
    /// The dart that follows `d` around its face.
    pub fn next_dart(&self, d: Dart) -> Dart {
        let (n, p) = self.across(d.node, d.port);
        Dart { node: n, port: (p + 3) % 4 }
    }

    /// Faces of every component, ordered by smallest dart. Components are
    /// traced separately; their relative nesting is not recorded.
    pub fn faces(&self) -> Vec<Face> {
        let n = self.nodes().len();
        let mut seen = vec![[false; 4]; n];
        let mut out = Vec::new();
        for node in 0..n {
            for port in 0..4u8 {
                if seen[node][port as usize] {
                    continue;
                }
                let start = Dart { node, port };
                let mut darts = Vec::new();
                let mut d = start;
                loop {
                    seen[d.node][d.port as usize] = true;
                    darts.push(d);
                    d = self.next_dart(d);
                    if d == start {
                        break;
                    }
                }
                out.push(Face { darts });
            }
        }
        out
    }

    /// Euler's formula per component: a 4-valent connected plane graph with
    /// V nodes has V + 2 faces.
    pub(crate) fn check_planar(&self) -> Result<(), DiagramError> {
        let faces = self.faces();
        let mut comp_of = vec![0; self.nodes().len()];
        let comps = self.components();
        for (k, c) in comps.iter().enumerate() {
            for &x in c {
                comp_of[x] = k;
            }
        }
        let mut count = vec![0usize; comps.len()];
        for f in &faces {
            count[comp_of[f.darts[0].node]] += 1;
        }
        for (k, c) in comps.iter().enumerate() {
            if count[k] != c.len() + 2 {
                return Err(DiagramError::NotPlanar(self.nodes()[c[0]].id.clone()));
            }
        }
        Ok(())
    }
}
