//! Degree-0 presentations and their ring maps into Z/NZ.

mod audit;
mod oracle;
mod solver;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{parse_lines, Element, Label, ParseError, Symbol};
use crate::dga::Dga;
use crate::diagram::CrossingTable;

pub use audit::{audit_relations, RelationAudit};
pub use oracle::{count_augmentations_oracle, Elimination, ORACLE_BIT_LIMIT};
pub use solver::{count_augmentations, count_augmentations_limited, SOLUTION_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("modulus must be at least 2, got {0}")]
    Modulus(u64),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}: {message}")]
    Directive { line: usize, message: String },
    #[error("relation {relation} contains {symbol} of positive degree")]
    Degree { relation: String, symbol: String },
    #[error("enumeration needs about {bits} bits, above the oracle limit of {limit}")]
    Infeasible { bits: u32, limit: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub element: Element,
}

/// Generators and relations of a degree-0 quotient over Z[u, u^-1].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Presentation {
    /// Sorted, without repeats.
    pub variables: Vec<Symbol>,
    pub relations: Vec<Relation>,
}

/// A ring map into Z/NZ: the value of `u` and one value per variable, in the
/// presentation's variable order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    pub mu: u64,
    pub values: Vec<u64>,
}

/// An assignment paired with variable names, for reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedAssignment {
    pub mu: u64,
    pub values: Vec<(String, u64)>,
}

impl Serialize for NamedAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.values.len() + 1))?;
        m.serialize_entry("u", &self.mu)?;
        for (k, v) in &self.values {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub modulus: u64,
    pub count: u64,
    /// Sorted lexicographically by `(mu, values)`.
    pub solutions: Vec<Assignment>,
    /// True when more than the stored solutions exist.
    pub truncated: bool,
}

/// Units of Z/NZ in increasing order.
pub fn units_mod(n: u64) -> Vec<u64> {
    (1..n).filter(|&u| gcd(u, n) == 1).collect()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn inverse_mod(u: u64, n: u64) -> u64 {
    let (mut r0, mut r1) = (n as i128, (u % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{u} is not a unit mod {n}");
    t0.rem_euclid(n as i128) as u64
}

/// One relation specialized at a fixed `u` mod N: terms as (coefficient, variable indices).
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub terms: Vec<(u64, Vec<usize>)>,
    pub vars: Vec<usize>,
}

impl Compiled {
    pub fn eval(&self, n: u64, value: impl Fn(usize) -> u64) -> u64 {
        let mut acc = 0u64;
        for (c, w) in &self.terms {
            let mut t = *c;
            for &v in w {
                if t == 0 {
                    break;
                }
                t = crate::algebra::mul_mod(t, value(v), n);
            }
            acc = (acc + t) % n;
        }
        acc
    }
}

impl Presentation {
    pub fn new(variables: impl IntoIterator<Item = Symbol>, relations: Vec<Relation>) -> Result<Self, HomologyError> {
        let mut vars: BTreeSet<Symbol> = variables.into_iter().collect();
        for r in &relations {
            for s in r.element.symbols() {
                if s.degree() != 0 {
                    return Err(HomologyError::Degree { relation: r.name.clone(), symbol: s.to_string() });
                }
                vars.insert(s);
            }
        }
        Ok(Presentation { variables: vars.into_iter().collect(), relations })
    }

    /// Degree-0 generators as variables and the differentials of degree-1
    /// generators as relations.
    pub fn from_dga(dga: &Dga) -> Self {
        let mut variables = Vec::new();
        let mut relations = Vec::new();
        for (g, dg) in dga.generators() {
            match g.degree() {
                0 => variables.push(g.clone()),
                1 => relations.push(Relation { name: g.to_string(), element: dg.clone() }),
                _ => {}
            }
        }
        Presentation { variables, relations }
    }

    /// Presentation of the algebra built from a crossing table.
    pub fn from_table(table: &CrossingTable) -> Self {
        Self::from_dga(&Dga::build(table))
    }

    pub fn parse(src: &str) -> Result<Self, HomologyError> {
        Ok(RelationsFile::parse(src)?.presentation)
    }

    pub fn index_of(&self, s: &Symbol) -> Option<usize> {
        self.variables.binary_search(s).ok()
    }

    pub fn without_relation(&self, idx: usize) -> Presentation {
        let mut p = self.clone();
        p.relations.remove(idx);
        p
    }

    pub(crate) fn compile(&self, n: u64, mu: u64) -> Vec<Compiled> {
        let mu_inv = inverse_mod(mu, n);
        self.relations
            .iter()
            .map(|r| {
                let mut terms = Vec::new();
                let mut vars = BTreeSet::new();
                for (w, c) in r.element.terms() {
                    let k = c.eval_mod(mu, mu_inv, n);
                    if k == 0 {
                        continue;
                    }
                    let idx: Vec<usize> =
                        w.symbols().iter().map(|s| self.index_of(s).expect("relation symbols are variables")).collect();
                    vars.extend(idx.iter().copied());
                    terms.push((k, idx));
                }
                Compiled { terms, vars: vars.into_iter().collect() }
            })
            .collect()
    }

    /// Evaluates every relation at `a`, returning the residues.
    pub fn evaluate(&self, n: u64, a: &Assignment) -> Vec<u64> {
        self.compile(n, a.mu).iter().map(|c| c.eval(n, |v| a.values[v])).collect()
    }

    pub fn name_assignment(&self, a: &Assignment) -> NamedAssignment {
        NamedAssignment {
            mu: a.mu,
            values: self.variables.iter().map(|s| s.to_string()).zip(a.values.iter().copied()).collect(),
        }
    }

    /// Relations-file text. Only free variables are declared, so arc-pair
    /// variables that occur in no relation are not written.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let free: Vec<&Symbol> = self.variables.iter().filter(|v| matches!(v, Symbol::Var(_))).collect();
        if !free.is_empty() {
            let names: Vec<String> = free.iter().map(|v| v.to_string()).collect();
            writeln!(s, "vars {}", names.join(" ")).expect("write to string");
        }
        for r in &self.relations {
            if Label::is_valid(&r.name) {
                writeln!(s, "{}: {}", r.name, r.element).expect("write to string");
            } else {
                writeln!(s, "# {}\n{}", r.name, r.element).expect("write to string");
            }
        }
        s
    }
}

/// A relations file: the presentation plus any `expect` lines listing
/// assignments to audit against.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelationsFile {
    pub presentation: Presentation,
    pub listed: Vec<Assignment>,
}

impl RelationsFile {
    /// Lines are relations (`name: expr` or bare `expr`) or directives:
    /// `vars x y ...` declares variables, `expect u=1 x=2 y=2` lists an assignment.
    pub fn parse(src: &str) -> Result<Self, HomologyError> {
        let mut declared: Vec<Symbol> = Vec::new();
        let mut expects: Vec<(usize, Vec<(String, u64)>)> = Vec::new();
        let mut body = String::new();
        for (idx, raw) in src.lines().enumerate() {
            let line = idx + 1;
            let code = raw.split('#').next().unwrap_or("");
            let mut words = code.split_whitespace();
            match words.next() {
                Some("vars") => {
                    for w in words {
                        if !Label::is_valid(w) || w == "u" || w.as_bytes()[0].is_ascii_digit() {
                            return Err(HomologyError::Directive { line, message: format!("bad variable name {w:?}") });
                        }
                        declared.push(Symbol::var(w));
                    }
                    body.push('\n');
                }
                Some("expect") => {
                    let mut pairs = Vec::new();
                    for w in words {
                        let parsed = w.split_once('=').and_then(|(k, v)| Some((k.to_string(), v.parse::<u64>().ok()?)));
                        let Some(kv) = parsed else {
                            return Err(HomologyError::Directive {
                                line,
                                message: format!("expected name=value, found {w:?}"),
                            });
                        };
                        pairs.push(kv);
                    }
                    expects.push((line, pairs));
                    body.push('\n');
                }
                _ => {
                    body.push_str(raw);
                    body.push('\n');
                }
            }
        }
        let relations =
            parse_lines(&body)?.into_iter().map(|ne| Relation { name: ne.name, element: ne.element }).collect();
        let presentation = Presentation::new(declared, relations)?;
        let names: BTreeMap<String, usize> =
            presentation.variables.iter().enumerate().map(|(k, s)| (s.to_string(), k)).collect();
        let mut listed = Vec::new();
        for (line, pairs) in expects {
            let mut mu = None;
            let mut values = vec![None; presentation.variables.len()];
            for (k, v) in pairs {
                if k == "u" {
                    mu = Some(v);
                } else if let Some(&i) = names.get(&k) {
                    values[i] = Some(v);
                } else {
                    return Err(HomologyError::Directive { line, message: format!("unknown variable {k:?}") });
                }
            }
            let missing = || HomologyError::Directive { line, message: "expect must give u and every variable".into() };
            let mu = mu.ok_or_else(missing)?;
            let values = values.into_iter().collect::<Option<Vec<u64>>>().ok_or_else(missing)?;
            listed.push(Assignment { mu, values });
        }
        Ok(RelationsFile { presentation, listed })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;
    use crate::diagram::CrossingTable;

    #[test]
    fn units_and_inverses() {
        assert_eq!(units_mod(2), vec![1]);
        assert_eq!(units_mod(9), vec![1, 2, 4, 5, 7, 8]);
        for n in [2u64, 3, 5, 7, 9, 12] {
            for u in units_mod(n) {
                assert_eq!(u * inverse_mod(u, n) % n, 1);
            }
        }
    }

    #[test]
    fn parse_with_directives() {
        let src = "vars x y z\nrel1: u*(1+u) + x - y*x\nexpect u=1 x=2 y=2 z=0\n";
        let f = RelationsFile::parse(src).unwrap();
        assert_eq!(f.presentation.variables.len(), 3);
        assert_eq!(f.presentation.relations[0].name, "rel1");
        assert_eq!(f.listed, vec![Assignment { mu: 1, values: vec![2, 2, 0] }]);
        assert!(RelationsFile::parse("expect u=1 w=2\nx").is_err());
        assert!(RelationsFile::parse("x\nexpect u=1").is_err());
    }

    #[test]
    fn empty_file() {
        let p = Presentation::parse("").unwrap();
        assert!(p.relations.is_empty());
        assert!(p.variables.is_empty());
    }

    #[test]
    fn rejects_positive_degree() {
        let err = Presentation::parse("c(A,1) + x").unwrap_err();
        assert!(matches!(err, HomologyError::Degree { .. }));
    }

    #[test]
    fn from_dga_counts() {
        let t = CrossingTable::parse(
            "arcs 5\nX A o=5 l=1 r=2\nX B o=2 l=5 r=1\nX C o=1 l=2 r=3\nX D o=1 l=4 r=3\nX E o=4 l=5 r=1\nX F o=5 l=1 r=4\n",
        )
        .unwrap();
        let p = Presentation::from_dga(&Dga::build(&t));
        assert_eq!(p.variables.len(), 20);
        assert_eq!(p.relations.len(), 60);
        let r = p.relations.iter().find(|r| r.name == "c(A,3)").unwrap();
        assert_eq!(r.element, parse_element("u*a(1,3) + a(2,3) - a(1,5)*a(5,3)").unwrap());
        let none = Presentation::from_dga(&Dga::build(&CrossingTable::parse("arcs 3").unwrap()));
        assert!(none.relations.is_empty());
    }

    #[test]
    fn text_round_trip() {
        let p = Presentation::parse("vars w\nr1: x - y*x\n u^-1*x*y*x + 3\n").unwrap();
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn named_assignment_json_order() {
        let p = Presentation::parse("x + y").unwrap();
        let named = p.name_assignment(&Assignment { mu: 1, values: vec![2, 2] });
        assert_eq!(serde_json::to_string(&named).unwrap(), r#"{"u":1,"x":2,"y":2}"#);
    }
}
