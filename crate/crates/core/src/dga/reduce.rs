use std::collections::BTreeMap;

use super::{Dga, DgaError};
use crate::algebra::{Element, LaurentPoly, Symbol, Word};

/// One destabilization: `g` and `h` removed, `h` replaced everywhere by `replacement`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancelStep {
    pub g: Symbol,
    pub h: Symbol,
    pub alpha: LaurentPoly,
    pub replacement: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplified {
    pub dga: Dga,
    pub steps: Vec<CancelStep>,
    /// True when the budget ran out with eligible pairs left.
    pub budget_exhausted: bool,
}

fn single(h: &Symbol) -> Word {
    Word::new(vec![h.clone()])
}

impl Dga {
    /// Splits `dg = alpha*h + v` and checks the destabilization preconditions.
    fn cancel_data(&self, g: &Symbol, h: &Symbol) -> Result<(LaurentPoly, Element), DgaError> {
        let fail = |reason: &str| DgaError::Cancel { g: g.to_string(), h: h.to_string(), reason: reason.to_string() };
        let dg = self.diff.get(g).ok_or_else(|| DgaError::UnknownSymbol(g.to_string()))?;
        if !self.diff.contains_key(h) {
            return Err(DgaError::UnknownSymbol(h.to_string()));
        }
        if g == h {
            return Err(fail("a generator cannot cancel itself"));
        }
        if h.degree() + 1 != g.degree() {
            return Err(fail("degrees must differ by one"));
        }
        let alpha = dg.coeff(&single(h));
        if alpha.is_zero() {
            return Err(fail("h is not a linear term of dg"));
        }
        if !alpha.is_unit() {
            return Err(DgaError::NotUnit(alpha.to_string()));
        }
        let v = dg - &Element::term(alpha.clone(), single(h));
        if v.contains(h) {
            return Err(fail("h occurs in the remainder of dg"));
        }
        Ok((alpha, v))
    }

    /// Removes the pair `(g, h)` where `dg = alpha*h + v`, `alpha = ±u^k` and `h`
    /// does not occur in `v`. Every remaining differential is rewritten with
    /// `g -> 0` and `h -> -alpha^-1 v`.
    pub fn cancel_pair(&self, g: &Symbol, h: &Symbol) -> Result<Dga, DgaError> {
        Ok(self.cancel_step(g, h)?.0)
    }

    fn cancel_step(&self, g: &Symbol, h: &Symbol) -> Result<(Dga, CancelStep), DgaError> {
        let (alpha, v) = self.cancel_data(g, h)?;
        let inv = alpha.unit_inverse().expect("checked unit");
        let replacement = -v.scale(&inv);
        let zero = Element::zero();
        let diff: BTreeMap<Symbol, Element> = self
            .diff
            .iter()
            .filter(|(y, _)| *y != g && *y != h)
            .map(|(y, dy)| {
                let img = dy.map_symbols(|s| {
                    if s == g {
                        Some(zero.clone())
                    } else if s == h {
                        Some(replacement.clone())
                    } else {
                        None
                    }
                });
                (y.clone(), img)
            })
            .collect();
        let out = Dga { diff, next_pair: self.next_pair };
        out.verify()?;
        Ok((out, CancelStep { g: g.clone(), h: h.clone(), alpha, replacement }))
    }

    fn verify(&self) -> Result<(), DgaError> {
        match self.check_d_squared().failures().next() {
            Some(bad) => Err(DgaError::DSquared(bad.generator.to_string())),
            None => Ok(()),
        }
    }

    /// Pairs `(g, h)` eligible for `cancel_pair`, with the term count of the
    /// substituted remainder.
    pub fn cancellable_pairs(&self) -> Vec<(usize, Symbol, Symbol)> {
        let mut out = Vec::new();
        for (g, dg) in &self.diff {
            for (w, coeff) in dg.terms() {
                let [h] = w.symbols() else { continue };
                if h == g || !coeff.is_unit() || !self.diff.contains_key(h) {
                    continue;
                }
                if dg.terms().any(|(w2, _)| w2 != w && w2.symbols().contains(h)) {
                    continue;
                }
                out.push((dg.len() - 1, g.clone(), h.clone()));
            }
        }
        out.sort();
        out
    }

    /// Cancels pairs until none is eligible or `budget` cancellations are done.
    /// Each round picks the pair whose substitution has the fewest terms,
    /// breaking ties by symbol order.
    pub fn simplify(&self, budget: usize) -> Simplified {
        let mut dga = self.clone();
        let mut steps = Vec::new();
        loop {
            let candidates = dga.cancellable_pairs();
            if candidates.is_empty() {
                return Simplified { dga, steps, budget_exhausted: false };
            }
            if steps.len() >= budget {
                return Simplified { dga, steps, budget_exhausted: true };
            }
            let mut applied = false;
            for (_, g, h) in candidates {
                if let Ok((next, step)) = dga.cancel_step(&g, &h) {
                    dga = next;
                    steps.push(step);
                    applied = true;
                    break;
                }
            }
            if !applied {
                return Simplified { dga, steps, budget_exhausted: false };
            }
        }
    }

    /// Transports the differential along the automorphism fixing every
    /// generator except `g`, which goes to `image = alpha*g + v` with `alpha`
    /// a unit and `g` absent from `v`. The new differential is `phi d phi^-1`.
    pub fn apply_elementary_iso(&self, g: &Symbol, image: &Element) -> Result<Dga, DgaError> {
        let bad = |reason: String| DgaError::BadImage { generator: g.to_string(), reason };
        if !self.diff.contains_key(g) {
            return Err(DgaError::UnknownSymbol(g.to_string()));
        }
        if let Some(s) = image.symbols().into_iter().find(|s| !self.diff.contains_key(s)) {
            return Err(DgaError::UnknownSymbol(s.to_string()));
        }
        if image.degree() != Some(g.degree()) {
            return Err(bad(format!("degree {:?}, expected {}", image.degree(), g.degree())));
        }
        let alpha = image.coeff(&single(g));
        let Some(inv) = alpha.unit_inverse() else {
            return Err(DgaError::NotUnit(alpha.to_string()));
        };
        let v = image - &Element::term(alpha.clone(), single(g));
        if v.contains(g) {
            return Err(bad("g occurs in the lower-order part".into()));
        }
        let phi = |e: &Element| e.map_symbols(|s| (s == g).then(|| image.clone()));
        let mut diff: BTreeMap<Symbol, Element> = self.diff.iter().map(|(y, dy)| (y.clone(), phi(dy))).collect();
        let partial = Dga { diff: diff.clone(), next_pair: self.next_pair };
        let dv = partial.differential(&v)?;
        let dg = self.diff.get(g).expect("present");
        diff.insert(g.clone(), (&phi(dg) - &dv).scale(&inv));
        let out = Dga { diff, next_pair: self.next_pair };
        out.verify()?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;
    use crate::diagram::{CrossingRow, CrossingTable};

    fn sym(s: &str) -> Symbol {
        parse_element(s).unwrap().symbols().into_iter().next().unwrap()
    }

    fn el(s: &str) -> Element {
        parse_element(s).unwrap()
    }

    #[test]
    fn pure_stabilization_pair_cancels() {
        let (s, hi, lo) = Dga::empty().stabilize(0);
        let out = s.cancel_pair(&hi, &lo).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn rejects_non_unit_and_self_reference() {
        let dga = Dga::from_differentials([
            (sym("x"), Element::zero()),
            (sym("y"), Element::zero()),
            (sym("c(A,1)"), el("(1+u)*x")),
            (sym("c(B,1)"), el("x - x*y*x")),
        ])
        .unwrap();
        assert!(matches!(dga.cancel_pair(&sym("c(A,1)"), &sym("x")), Err(DgaError::NotUnit(_))));
        assert!(matches!(dga.cancel_pair(&sym("c(B,1)"), &sym("x")), Err(DgaError::Cancel { .. })));
        assert!(matches!(dga.cancel_pair(&sym("c(B,1)"), &sym("y")), Err(DgaError::Cancel { .. })));
    }

    #[test]
    fn cancellation_substitutes_the_remainder() {
        let dga = Dga::from_differentials([
            (sym("x"), Element::zero()),
            (sym("y"), Element::zero()),
            (sym("c(A,1)"), el("u*x + y*y")),
            (sym("c(B,1)"), el("1 - x*y")),
        ])
        .unwrap();
        let out = dga.cancel_pair(&sym("c(A,1)"), &sym("x")).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out.boundary(&sym("c(B,1)")).unwrap(), &el("1 + u^-1*y*y*y"));
    }

    /// Arc 3 plays the new arc next to a kink crossing Z with over-arc 1 and
    /// left under-arc 3.
    fn kink_table() -> CrossingTable {
        let rows = vec![
            CrossingRow { label: "Z".into(), over: 1, left: 3, right: 1 },
            CrossingRow { label: "P".into(), over: 2, left: 1, right: 3 },
        ];
        CrossingTable::new(3, rows).unwrap()
    }

    #[test]
    fn elementary_iso_straightens_kink_differential() {
        let dga = Dga::build(&kink_table());
        let step1 = dga.apply_elementary_iso(&sym("a(3,1)"), &el("-u*a(3,1) + (1+u)")).unwrap();
        let step2 = step1.apply_elementary_iso(&sym("a(3,2)"), &el("a(3,2) + a(1,2) - a(3,1)*a(1,2)")).unwrap();
        assert_eq!(step2.boundary(&sym("c(Z,2)")).unwrap(), &el("u*a(3,2)"));
    }

    #[test]
    fn iso_identity_and_inverse() {
        let dga = Dga::build(&kink_table());
        let g = sym("a(2,3)");
        assert_eq!(dga.apply_elementary_iso(&g, &el("a(2,3)")).unwrap(), dga);
        let fwd = dga.apply_elementary_iso(&g, &el("-u*a(2,3) + a(2,1)*a(1,3)")).unwrap();
        let back = fwd.apply_elementary_iso(&g, &el("-u^-1*a(2,3) + u^-1*a(2,1)*a(1,3)")).unwrap();
        assert_eq!(back, dga);
    }

    #[test]
    fn iso_rejects_non_unit() {
        let dga = Dga::build(&kink_table());
        let err = dga.apply_elementary_iso(&sym("a(2,3)"), &el("2*a(2,3)"));
        assert!(matches!(err, Err(DgaError::NotUnit(_))));
        let err = dga.apply_elementary_iso(&sym("a(2,3)"), &el("c(Z,1)"));
        assert!(matches!(err, Err(DgaError::BadImage { .. })));
    }

    #[test]
    fn simplify_is_a_no_op_on_minimal_input() {
        let dga = Dga::from_differentials([(sym("x"), Element::zero()), (sym("c(A,1)"), el("x*x - 1"))]).unwrap();
        let s = dga.simplify(100);
        assert!(s.steps.is_empty());
        assert_eq!(s.dga, dga);
    }

    #[test]
    fn simplify_drops_two_generators_per_step() {
        let dga = Dga::build(&kink_table());
        let s = dga.simplify(3);
        assert_eq!(s.steps.len(), 3);
        assert_eq!(s.dga.len(), dga.len() - 6);
        assert!(s.dga.check_d_squared().passed());
    }
}
