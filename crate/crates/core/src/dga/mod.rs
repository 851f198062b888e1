//! Differential graded algebras over Z[u, u^-1] presented by free generators.

mod reduce;
mod serial;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{Element, LaurentPoly, Symbol, Word};
use crate::diagram::CrossingTable;

pub use reduce::{CancelStep, Simplified};
pub use serial::{DgaRecord, GeneratorRecord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgaError {
    #[error("{0} is not a generator")]
    UnknownSymbol(String),
    #[error("{0} is already a generator")]
    DuplicateGenerator(String),
    #[error("differential of {generator} has degree {found:?}, expected {expected}")]
    DegreeMismatch { generator: String, expected: i64, found: Option<u32> },
    #[error("coefficient {0} is not a unit of Z[u, u^-1]")]
    NotUnit(String),
    #[error("cannot cancel {g} against {h}: {reason}")]
    Cancel { g: String, h: String, reason: String },
    #[error("image of {generator} is not a unit multiple of it plus lower terms: {reason}")]
    BadImage { generator: String, reason: String },
    #[error("differential squares to a nonzero element on {0}")]
    DSquared(String),
    #[error("malformed DGA: {0}")]
    Format(String),
}

/// Generators with their differentials. The degree of each generator is a
/// function of its symbol.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Dga {
    diff: BTreeMap<Symbol, Element>,
    next_pair: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSquaredEntry {
    pub generator: Symbol,
    /// False when the differential has the wrong degree.
    pub degree_ok: bool,
    pub residual: Element,
}

impl DSquaredEntry {
    pub fn passed(&self) -> bool {
        self.degree_ok && self.residual.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSquaredReport {
    pub entries: Vec<DSquaredEntry>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(DSquaredEntry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DSquaredEntry> {
        self.entries.iter().filter(|e| !e.passed())
    }
}

fn a(i: usize, j: usize) -> Element {
    Element::arc_pair(i, j)
}

fn c(x: &str, i: usize) -> Element {
    Element::symbol(Symbol::c(x, i))
}

fn d(i: usize, x: &str) -> Element {
    Element::symbol(Symbol::d(i, x))
}

impl Dga {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a DGA from explicit differentials. Every symbol used in a
    /// differential must itself be a generator and degrees must drop by one.
    pub fn from_differentials(gens: impl IntoIterator<Item = (Symbol, Element)>) -> Result<Self, DgaError> {
        let mut diff = BTreeMap::new();
        let mut next_pair = 0;
        for (g, dg) in gens {
            if let Symbol::StabHi { pair, .. } | Symbol::StabLo { pair, .. } = g {
                next_pair = next_pair.max(pair + 1);
            }
            if diff.contains_key(&g) {
                return Err(DgaError::DuplicateGenerator(g.to_string()));
            }
            diff.insert(g, dg);
        }
        let dga = Dga { diff, next_pair };
        for (g, dg) in &dga.diff {
            if let Some(s) = dg.symbols().into_iter().find(|s| !dga.diff.contains_key(s)) {
                return Err(DgaError::UnknownSymbol(s.to_string()));
            }
            if !dg.is_zero() && dg.degree().map(i64::from) != Some(i64::from(g.degree()) - 1) {
                return Err(DgaError::DegreeMismatch {
                    generator: g.to_string(),
                    expected: i64::from(g.degree()) - 1,
                    found: dg.degree(),
                });
            }
        }
        Ok(dga)
    }

    /// The algebra of a diagram with the given crossing data.
    pub fn build(table: &CrossingTable) -> Self {
        let n = table.arcs;
        let mut diff = BTreeMap::new();
        for i in 1..=n {
            for j in 1..=n {
                if let Some(s) = Symbol::a(i, j) {
                    diff.insert(s, Element::zero());
                }
            }
        }
        let mu = LaurentPoly::mu();
        for row in &table.rows {
            let x = row.label.as_str();
            let (o, l, r) = (row.over, row.left, row.right);
            for i in 1..=n {
                let dc = &(&a(l, i).scale(&mu) + &a(r, i)) - &(&a(l, o) * &a(o, i));
                diff.insert(Symbol::c(x, i), dc);
                let dd = &(&a(i, l) + &a(i, r).scale(&mu)) - &(&a(i, o) * &a(o, l));
                diff.insert(Symbol::d(i, x), dd);
            }
            let df = &(&c(x, r).scale(&mu) - &d(l, x).scale(&mu)) + &(&a(l, o) * &d(o, x));
            diff.insert(Symbol::f(x), df);
        }
        for rx in &table.rows {
            let x = rx.label.as_str();
            for ry in &table.rows {
                let y = ry.label.as_str();
                let left = &(&c(x, ry.left) + &c(x, ry.right).scale(&mu)) - &(&c(x, ry.over) * &a(ry.over, ry.left));
                let right = &(&d(rx.left, y).scale(&mu) + &d(rx.right, y)) - &(&a(rx.left, rx.over) * &d(rx.over, y));
                diff.insert(Symbol::e(x, y), &left - &right);
            }
        }
        Dga { diff, next_pair: 0 }
    }

    pub fn len(&self) -> usize {
        self.diff.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diff.is_empty()
    }

    pub fn generators(&self) -> impl Iterator<Item = (&Symbol, &Element)> {
        self.diff.iter()
    }

    pub fn contains(&self, g: &Symbol) -> bool {
        self.diff.contains_key(g)
    }

    pub fn boundary(&self, g: &Symbol) -> Option<&Element> {
        self.diff.get(g)
    }

    pub fn count_by_degree(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for g in self.diff.keys() {
            *out.entry(g.degree()).or_insert(0) += 1;
        }
        out
    }

    /// Overwrites one differential without any checks.
    pub fn with_boundary(&self, g: Symbol, dg: Element) -> Dga {
        let mut out = self.clone();
        out.diff.insert(g, dg);
        out
    }

    /// Extends the differential to arbitrary elements by the signed Leibniz
    /// rule `d(vw) = d(v)w + (-1)^|v| v d(w)`.
    pub fn differential(&self, e: &Element) -> Result<Element, DgaError> {
        let mut out = Element::zero();
        for (w, coeff) in e.terms() {
            let syms = w.symbols();
            let mut prefix_deg = 0u32;
            for (k, s) in syms.iter().enumerate() {
                let ds = self.diff.get(s).ok_or_else(|| DgaError::UnknownSymbol(s.to_string()))?;
                if !ds.is_zero() {
                    let pre = Element::term(coeff.clone(), Word::new(syms[..k].to_vec()));
                    let post = Element::term(LaurentPoly::one(), Word::new(syms[k + 1..].to_vec()));
                    let t = &(&pre * ds) * &post;
                    out = if prefix_deg.is_multiple_of(2) { &out + &t } else { &out - &t };
                }
                prefix_deg += s.degree();
            }
        }
        Ok(out)
    }

    pub fn check_d_squared(&self) -> DSquaredReport {
        let entries = self
            .diff
            .iter()
            .map(|(g, dg)| {
                let degree_ok = dg.is_zero() || dg.degree().map(i64::from) == Some(i64::from(g.degree()) - 1);
                let residual = match self.differential(dg) {
                    Ok(r) => r,
                    // a dangling symbol is reported through its own residual
                    Err(_) => dg.clone(),
                };
                DSquaredEntry { generator: g.clone(), degree_ok, residual }
            })
            .collect();
        DSquaredReport { entries }
    }

    /// Adjoins a fresh pair `s(k,i)`, `t(k,i)` with `d s = t` and `d t = 0`.
    pub fn stabilize(&self, degree: u32) -> (Dga, Symbol, Symbol) {
        let pair = self.next_pair;
        let hi = Symbol::StabHi { pair, degree };
        let lo = Symbol::StabLo { pair, degree };
        let mut out = self.clone();
        out.diff.insert(hi.clone(), Element::symbol(lo.clone()));
        out.diff.insert(lo.clone(), Element::zero());
        out.next_pair += 1;
        (out, hi, lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;
    use crate::diagram::CrossingRow;

    fn trefoil_like() -> CrossingTable {
        let rows = [("A", 5, 1, 2), ("B", 2, 5, 1), ("C", 1, 2, 3), ("D", 1, 4, 3), ("E", 4, 5, 1), ("F", 5, 1, 4)]
            .into_iter()
            .map(|(l, o, le, r)| CrossingRow { label: l.into(), over: o, left: le, right: r })
            .collect();
        CrossingTable::new(5, rows).unwrap()
    }

    #[test]
    fn generator_count() {
        let dga = Dga::build(&trefoil_like());
        assert_eq!(dga.len(), 20 + 60 + 36 + 6);
        let deg = dga.count_by_degree();
        assert_eq!(deg[&0], 20);
        assert_eq!(deg[&1], 60);
        assert_eq!(deg[&2], 42);
    }

    #[test]
    fn crossing_differentials() {
        let dga = Dga::build(&trefoil_like());
        for i in 1..=5usize {
            let expect = parse_element(&format!("u*a(1,{i}) + a(2,{i}) - a(1,5)*a(5,{i})")).unwrap();
            assert_eq!(dga.boundary(&Symbol::c("A", i)).unwrap(), &expect);
        }
        let expect = parse_element("u*(1+u) + a(2,1) - a(1,5)*a(5,1)").unwrap();
        assert_eq!(dga.boundary(&Symbol::c("A", 1usize)).unwrap(), &expect);
        let expect = parse_element("a(3,5) + u*a(3,1) - a(3,2)*a(2,5)").unwrap();
        assert_eq!(dga.boundary(&Symbol::d(3usize, "B")).unwrap(), &expect);
    }

    #[test]
    fn crossingless_circle_has_no_generators() {
        let t = CrossingTable::new(1, vec![]).unwrap();
        assert!(Dga::build(&t).is_empty());
    }

    #[test]
    fn d_squared_vanishes() {
        let dga = Dga::build(&trefoil_like());
        let report = dga.check_d_squared();
        assert_eq!(report.entries.len(), 122);
        assert!(report.passed());
    }

    #[test]
    fn corrupted_f_is_caught() {
        let dga = Dga::build(&trefoil_like());
        let f = Symbol::f("A");
        // flip the sign of the last term of df(A)
        let bad = parse_element("u*c(A,2) - u*d(1,A) - a(1,5)*d(5,A)").unwrap();
        let report = dga.with_boundary(f.clone(), bad).check_d_squared();
        let failed: Vec<_> = report.failures().map(|e| e.generator.clone()).collect();
        assert_eq!(failed, vec![f]);
        assert!(!report.failures().next().unwrap().residual.is_zero());
    }

    #[test]
    fn leibniz_signs() {
        let dga = Dga::build(&trefoil_like());
        assert!(dga.differential(&Element::one()).unwrap().is_zero());
        let cx = Element::symbol(Symbol::c("A", 1usize));
        let cy = Element::symbol(Symbol::c("B", 2usize));
        let a12 = Element::arc_pair(1usize, 2usize);
        let dcx = dga.differential(&cx).unwrap();
        let dcy = dga.differential(&cy).unwrap();
        assert_eq!(dga.differential(&(&cx * &a12)).unwrap(), &dcx * &a12);
        assert_eq!(dga.differential(&(&cx * &cy)).unwrap(), &(&dcx * &cy) - &(&cx * &dcy));
    }

    #[test]
    fn unknown_symbol_is_an_error() {
        let dga = Dga::build(&trefoil_like());
        let e = Element::symbol(Symbol::var("x"));
        assert!(matches!(dga.differential(&e), Err(DgaError::UnknownSymbol(_))));
    }

    #[test]
    fn stabilization() {
        let (s, hi, lo) = Dga::empty().stabilize(0);
        assert_eq!(s.len(), 2);
        assert_eq!(s.boundary(&hi).unwrap(), &Element::symbol(lo.clone()));
        assert!(s.check_d_squared().passed());
        let base = Dga::build(&trefoil_like());
        let (one, ..) = base.stabilize(1);
        let (two, hi2, _) = one.stabilize(0);
        assert_eq!(hi2, Symbol::StabHi { pair: 1, degree: 0 });
        assert!(two.check_d_squared().passed());
        for (g, dg) in base.generators() {
            assert_eq!(two.boundary(g), Some(dg));
        }
    }
}
