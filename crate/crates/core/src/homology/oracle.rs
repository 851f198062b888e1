//! Plain enumeration over every assignment, with an optional exact
//! elimination pass that shrinks the search space first.

use super::{units_mod, HomologyError, Presentation, Relation};
use crate::algebra::{Element, Symbol, Word};

/// Largest enumeration the oracle runs without `force`, in bits of
/// `(variables + 1) * log2(N)`.
pub const ORACLE_BIT_LIMIT: u32 = 30;

/// Brute-force count of ring maps to Z/NZ. Every relation is evaluated at every
/// assignment; no propagation.
pub fn count_augmentations_oracle(p: &Presentation, n: u64, force: bool) -> Result<u64, HomologyError> {
    if n < 2 {
        return Err(HomologyError::Modulus(n));
    }
    let nv = p.variables.len();
    let bits = (nv as f64 + 1.0) * (n as f64).log2();
    if !force && bits > f64::from(ORACLE_BIT_LIMIT) {
        return Err(HomologyError::Infeasible { bits: bits.ceil() as u32, limit: ORACLE_BIT_LIMIT });
    }
    let mut count = 0u64;
    for mu in units_mod(n) {
        let rels = p.compile(n, mu);
        let mut vals = vec![0u64; nv];
        loop {
            if rels.iter().all(|r| r.eval(n, |v| vals[v]) == 0) {
                count += 1;
            }
            // odometer
            let mut k = 0;
            while k < nv {
                vals[k] += 1;
                if vals[k] < n {
                    break;
                }
                vals[k] = 0;
                k += 1;
            }
            if k == nv {
                break;
            }
        }
    }
    Ok(count)
}

/// Result of exact variable elimination: the reduced presentation and the
/// eliminated variables with the expressions they were replaced by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub reduced: Presentation,
    pub eliminated: Vec<(Symbol, Element)>,
}

/// Finds `(relation, variable, coefficient, rest)` where the variable occurs in
/// the relation only as a lone linear term with unit coefficient.
fn solvable(p: &Presentation) -> Option<(usize, Symbol, Element)> {
    let mut best: Option<(usize, usize, Symbol, Element)> = None;
    for (ri, r) in p.relations.iter().enumerate() {
        for (w, c) in r.element.terms() {
            let [v] = w.symbols() else { continue };
            let Some(inv) = c.unit_inverse() else { continue };
            let single = Word::new(vec![v.clone()]);
            let rest = &r.element - &Element::term(c.clone(), single);
            if rest.contains(v) {
                continue;
            }
            let key = rest.len();
            if best.as_ref().is_none_or(|(k, ..)| key < *k) {
                best = Some((key, ri, v.clone(), -rest.scale(&inv)));
            }
        }
    }
    best.map(|(_, ri, v, e)| (ri, v, e))
}

impl Presentation {
    /// Repeatedly solves a relation for a variable that occurs in it only as a
    /// unit multiple of itself and substitutes the solution everywhere. Each
    /// step is a bijection on solution sets over any Z/NZ.
    pub fn eliminate(&self) -> Elimination {
        let mut cur = self.clone();
        let mut eliminated = Vec::new();
        while let Some((ri, v, value)) = solvable(&cur) {
            cur.relations.remove(ri);
            cur.relations = cur
                .relations
                .into_iter()
                .map(|r| Relation {
                    name: r.name,
                    element: r.element.map_symbols(|s| (*s == v).then(|| value.clone())),
                })
                .filter(|r| !r.element.is_zero())
                .collect();
            cur.variables.retain(|s| *s != v);
            eliminated.push((v, value));
        }
        Elimination { reduced: cur, eliminated }
    }
}
