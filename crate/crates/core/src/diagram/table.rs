use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::DiagramError;
use crate::algebra::Label;

/// Over-arc and the under-arcs to the left and right of the over-strand's direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingRow {
    pub label: String,
    pub over: usize,
    pub left: usize,
    pub right: usize,
}

/// The data the differential reads off a diagram: arc count and one row per crossing.
/// Arcs are numbered `1..=arcs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingTable {
    pub arcs: usize,
    pub rows: Vec<CrossingRow>,
}

impl CrossingTable {
    pub fn new(arcs: usize, rows: Vec<CrossingRow>) -> Result<Self, DiagramError> {
        let t = CrossingTable { arcs, rows };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        // no arcs is the empty diagram, which has no crossings either
        if self.arcs == 0 && !self.rows.is_empty() {
            return Err(DiagramError::NoArcs);
        }
        let mut seen = BTreeSet::new();
        for row in &self.rows {
            if !Label::is_valid(&row.label) {
                return Err(DiagramError::BadNodeId(row.label.clone()));
            }
            if !seen.insert(row.label.as_str()) {
                return Err(DiagramError::DuplicateCrossing(row.label.clone()));
            }
            for arc in [row.over, row.left, row.right] {
                if arc == 0 || arc > self.arcs {
                    return Err(DiagramError::ArcOutOfRange { crossing: row.label.clone(), arc, arcs: self.arcs });
                }
            }
        }
        Ok(())
    }

    pub fn crossings(&self) -> usize {
        self.rows.len()
    }

    /// Parses `arcs N` followed by lines `X <label> o=<arc> l=<arc> r=<arc>`.
    pub fn parse(src: &str) -> Result<Self, DiagramError> {
        let mut arcs = None;
        let mut rows = Vec::new();
        for (idx, raw) in src.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |message: String| DiagramError::TableSyntax { line, message };
            let fields: Vec<&str> = body.split_whitespace().collect();
            match fields[0] {
                "arcs" => {
                    if arcs.is_some() {
                        return Err(err("repeated arcs line".into()));
                    }
                    let [_, n] = fields[..] else {
                        return Err(err("expected `arcs N`".into()));
                    };
                    arcs = Some(n.parse::<usize>().map_err(|_| err(format!("bad arc count {n:?}")))?);
                }
                "X" => {
                    if arcs.is_none() {
                        return Err(err("crossing before `arcs` line".into()));
                    }
                    if fields.len() != 5 {
                        return Err(err("expected `X label o=.. l=.. r=..`".into()));
                    }
                    let get = |key: &str, field: &str| -> Result<usize, DiagramError> {
                        let v = field
                            .strip_prefix(key)
                            .and_then(|s| s.strip_prefix('='))
                            .ok_or_else(|| err(format!("expected {key}=<arc>, found {field:?}")))?;
                        v.parse().map_err(|_| err(format!("bad arc {v:?}")))
                    };
                    let over = get("o", fields[2])?;
                    let left = get("l", fields[3])?;
                    let right = get("r", fields[4])?;
                    rows.push(CrossingRow { label: fields[1].to_string(), over, left, right });
                }
                other => return Err(err(format!("unknown directive {other:?}"))),
            }
        }
        // a table with no lines is the empty diagram
        Self::new(arcs.unwrap_or(0), rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("arcs {}\n", self.arcs);
        for r in &self.rows {
            writeln!(s, "X {} o={} l={} r={}", r.label, r.over, r.left, r.right).expect("write to string");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let src = "# two crossings\narcs 3\nX A o=3 l=1 r=2\nX B o=1 l=2 r=3\n";
        let t = CrossingTable::parse(src).unwrap();
        assert_eq!(t.arcs, 3);
        assert_eq!(t.rows[1], CrossingRow { label: "B".into(), over: 1, left: 2, right: 3 });
        assert_eq!(CrossingTable::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn empty_table() {
        let t = CrossingTable::parse("# nothing\n").unwrap();
        assert_eq!((t.arcs, t.rows.len()), (0, 0));
    }

    #[test]
    fn rejects_out_of_range_arc() {
        let err = CrossingTable::parse("arcs 2\nX A o=3 l=1 r=2\n").unwrap_err();
        assert!(matches!(err, DiagramError::ArcOutOfRange { arc: 3, .. }));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(CrossingTable::parse("X A o=1 l=1 r=1"), Err(DiagramError::TableSyntax { line: 1, .. })));
        assert!(matches!(CrossingTable::parse("arcs 2\nX A o=1 l=1"), Err(DiagramError::TableSyntax { line: 2, .. })));
        assert!(matches!(CrossingTable::parse("arcs 2\nX A o=1 q=1 r=1"), Err(DiagramError::TableSyntax { .. })));
        assert!(matches!(CrossingTable::parse("arcs 0\nX A o=1 l=1 r=1"), Err(DiagramError::NoArcs)));
        assert!(matches!(
            CrossingTable::parse("arcs 2\nX A o=1 l=1 r=2\nX A o=1 l=1 r=2"),
            Err(DiagramError::DuplicateCrossing(_))
        ));
    }

    #[test]
    fn crossingless_circle() {
        let t = CrossingTable::parse("arcs 1\n").unwrap();
        assert_eq!(t.crossings(), 0);
    }
}
