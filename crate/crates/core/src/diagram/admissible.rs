//! Searching for a sequence of Reidemeister moves that removes every crossing
//! of a resolution. Success proves the resolution is a trivial link; running
//! out of budget proves nothing.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{Diagram, DiagramError, Direction, LinkDiagram, Move, Side};

/// Move applications allowed per resolution.
pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Admissibility {
    Verified,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkReduction {
    pub status: Admissibility,
    /// Crossings of the diagram the search stopped at.
    pub crossings_left: usize,
    /// Components once every crossing is gone.
    pub components: Option<usize>,
    pub moves: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub plus: LinkReduction,
    pub minus: LinkReduction,
}

impl AdmissibilityReport {
    pub fn verified(&self) -> bool {
        self.plus.status == Admissibility::Verified && self.minus.status == Admissibility::Verified
    }
}

const REDUCING: [(Move, Direction); 3] = [
    (Move::Omega1, Direction::Backward),
    (Move::Omega1Prime, Direction::Backward),
    (Move::Omega2, Direction::Backward),
];

fn reduce_once(d: &LinkDiagram) -> Option<LinkDiagram> {
    REDUCING.iter().find_map(|&(mv, dir)| d.sites_in(mv, dir, true).first().and_then(|s| d.apply_in(s, true).ok()))
}

impl Diagram {
    /// Removes kinks and bigons greedily; when stuck, searches breadth first
    /// through Ω3 moves for a diagram where one of them applies.
    pub fn reduce_link(&self, budget: usize) -> LinkReduction {
        let mut cur = self.clone();
        let mut moves = 0;
        'outer: loop {
            if cur.crossing_count() == 0 {
                let components = cur.components().len() + cur.free_loops();
                return LinkReduction {
                    status: Admissibility::Verified,
                    crossings_left: 0,
                    components: Some(components),
                    moves,
                };
            }
            if let Some(next) = reduce_once(&cur) {
                moves += 1;
                cur = next;
                continue;
            }
            let mut seen = BTreeSet::from([cur.canonical_code()]);
            let mut queue = VecDeque::from([cur.clone()]);
            while let Some(d) = queue.pop_front() {
                for site in d.sites_in(Move::Omega3, Direction::Forward, true) {
                    if moves >= budget {
                        break 'outer;
                    }
                    moves += 1;
                    let Ok(next) = d.apply_in(&site, true) else { continue };
                    if let Some(reduced) = reduce_once(&next) {
                        moves += 1;
                        cur = reduced;
                        continue 'outer;
                    }
                    if seen.insert(next.canonical_code()) {
                        queue.push_back(next);
                    }
                }
            }
            break;
        }
        LinkReduction { status: Admissibility::Unknown, crossings_left: cur.crossing_count(), components: None, moves }
    }

    /// Reduces both resolutions.
    pub fn is_admissible(&self, budget: usize) -> Result<AdmissibilityReport, DiagramError> {
        Ok(AdmissibilityReport {
            plus: self.resolve(Side::Plus)?.reduce_link(budget),
            minus: self.resolve(Side::Minus)?.reduce_link(budget),
        })
    }
}
