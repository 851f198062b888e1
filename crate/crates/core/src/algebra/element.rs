use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use super::laurent::LaurentPoly;
use super::symbol::{Label, Symbol};
use super::AlgebraError;

/// A noncommutative monomial. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(Symbol::degree).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

// Shorter words first, then lexicographic by symbol.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of the free algebra over Z[u, u^-1]: a finite sum of words with
/// nonzero Laurent coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<Word, LaurentPoly>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(LaurentPoly::one())
    }

    pub fn scalar(p: LaurentPoly) -> Self {
        Self::term(p, Word::unit())
    }

    pub fn mu() -> Self {
        Self::scalar(LaurentPoly::mu())
    }

    pub fn term(coeff: LaurentPoly, word: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        Element { terms }
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(LaurentPoly::one(), Word(vec![s]))
    }

    /// `a(i,j)`, which is `1 + u` when `i == j`.
    pub fn arc_pair(i: impl Into<Label>, j: impl Into<Label>) -> Self {
        match Symbol::a(i, j) {
            Some(s) => Self::symbol(s),
            None => Self::scalar(LaurentPoly::one_plus_mu()),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LaurentPoly, Word)>) -> Self {
        let mut out = Element::zero();
        for (c, w) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, w: Word, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).filter(|(_, k)| !k.is_zero()).collect() }
    }

    /// The common degree of all terms, `None` for zero or mixed-degree elements.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Word::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|w| w.0.iter().cloned()).collect()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.terms.keys().any(|w| w.0.contains(s))
    }

    /// The scalar part when the element has no non-unit words.
    pub fn as_scalar(&self) -> Option<LaurentPoly> {
        match self.terms.len() {
            0 => Some(LaurentPoly::zero()),
            1 => self.terms.get(&Word::unit()).cloned(),
            _ => None,
        }
    }

    /// Algebra map sending `target` to `replacement` and fixing every other symbol.
    pub fn substitute(&self, target: &Symbol, replacement: &Element) -> Result<Element, AlgebraError> {
        if let Some(d) = replacement.degree() {
            if d != target.degree() {
                return Err(AlgebraError::DegreeMismatch {
                    symbol: target.to_string(),
                    expected: target.degree(),
                    found: d,
                });
            }
        } else if !replacement.is_zero() {
            return Err(AlgebraError::Inhomogeneous(replacement.to_string()));
        }
        Ok(self.map_symbols(|s| (s == target).then(|| replacement.clone())))
    }

    /// Simultaneous substitution: each symbol `s` with `f(s) = Some(r)` becomes `r`.
    /// No degree checks.
    pub fn map_symbols(&self, mut f: impl FnMut(&Symbol) -> Option<Element>) -> Element {
        let mut cache: BTreeMap<Symbol, Option<Element>> = BTreeMap::new();
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            let mut acc = Element::scalar(c.clone());
            let mut pending: Vec<Symbol> = Vec::new();
            for s in &w.0 {
                let img = cache.entry(s.clone()).or_insert_with(|| f(s));
                match img {
                    None => pending.push(s.clone()),
                    Some(r) => {
                        if !pending.is_empty() {
                            acc = acc.mul_word(&Word(std::mem::take(&mut pending)));
                        }
                        acc = &acc * &*r;
                        if acc.is_zero() {
                            break;
                        }
                    }
                }
            }
            if !pending.is_empty() {
                acc = acc.mul_word(&Word(pending));
            }
            out = &out + &acc;
        }
        out
    }

    fn mul_word(&self, w: &Word) -> Element {
        Element { terms: self.terms.iter().map(|(v, c)| (v.concat(w), c.clone())).collect() }
    }

    /// Evaluates in the commutative ring Z/NZ given values for `u`, `u^-1` and symbols.
    pub fn eval_mod(&self, mu: u64, mu_inv: u64, n: u64, value: &impl Fn(&Symbol) -> u64) -> u64 {
        use super::laurent::mul_mod;
        let mut acc = 0u64;
        for (w, c) in &self.terms {
            let mut t = c.eval_mod(mu, mu_inv, n);
            for s in &w.0 {
                if t == 0 {
                    break;
                }
                t = mul_mod(t, value(s) % n, n);
            }
            acc = (acc + t) % n;
        }
        acc
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (w, c) in &small.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        let mut out = Element::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl From<Symbol> for Element {
    fn from(s: Symbol) -> Self {
        Element::symbol(s)
    }
}

impl From<LaurentPoly> for Element {
    fn from(p: LaurentPoly) -> Self {
        Element::scalar(p)
    }
}

/// Splits a single-monomial coefficient into (negative, |c|*u^k rendered without sign).
fn monomial_parts(c: &LaurentPoly) -> Option<(bool, String)> {
    if c.len() != 1 {
        return None;
    }
    let (e, k) = c.terms().next()?;
    let neg = k.is_negative();
    let abs = k.abs();
    let body = match (e, abs.is_one()) {
        (0, _) => abs.to_string(),
        (1, true) => "u".to_string(),
        (_, true) => format!("u^{e}"),
        (1, false) => format!("{abs}*u"),
        (_, false) => format!("{abs}*u^{e}"),
    };
    Some((neg, body))
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if let Some(p) = self.as_scalar() {
            return write!(f, "{p}");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let (neg, body) = match monomial_parts(c) {
                Some((neg, m)) if w.is_unit() => (neg, m),
                Some((neg, m)) if m == "1" => (neg, w.to_string()),
                Some((neg, m)) => (neg, format!("{m}*{w}")),
                None if w.is_unit() => (false, format!("({c})")),
                None => (false, format!("({c})*{w}")),
            };
            match (idx, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u32, j: u32) -> Element {
        Element::arc_pair(i, j)
    }

    #[test]
    fn add_identity_cancellation_and_merge() {
        let x = a(1, 2);
        assert_eq!(&Element::zero() + &x, x);
        let w = x.scale(&LaurentPoly::mu());
        assert!((&w + &(-&w)).is_zero());
        let two = &x + &x;
        assert_eq!(two.coeff(&Word::new(vec![Symbol::a(1u32, 2u32).unwrap()])), LaurentPoly::constant(2));
    }

    #[test]
    fn mul_unit_noncommutative_and_central_mu() {
        let x = a(1, 5);
        assert_eq!(&Element::one() * &x, x);
        assert_ne!(&a(1, 5) * &a(5, 1), &a(5, 1) * &a(1, 5));
        let l = a(1, 2).scale(&LaurentPoly::mu());
        let r = a(2, 3).scale(&LaurentPoly::monomial(1, -1));
        assert_eq!(&l * &r, &a(1, 2) * &a(2, 3));
    }

    #[test]
    fn diagonal_becomes_one_plus_mu() {
        assert_eq!(a(4, 4), Element::scalar(LaurentPoly::one_plus_mu()));
    }

    #[test]
    fn substitute_left_factor() {
        let target = Symbol::a(1u32, 2u32).unwrap();
        let e = &a(1, 2) * &a(2, 3);
        let out = e.substitute(&target, &Element::scalar(LaurentPoly::one_plus_mu())).unwrap();
        assert_eq!(out, a(2, 3).scale(&LaurentPoly::one_plus_mu()));
        let untouched = a(3, 4);
        assert_eq!(untouched.substitute(&target, &a(5, 6)).unwrap(), untouched);
    }

    #[test]
    fn substitute_rejects_degree_mismatch() {
        let target = Symbol::a(1u32, 2u32).unwrap();
        let err = a(1, 2).substitute(&target, &Element::symbol(Symbol::c("A", 1u32)));
        assert!(matches!(err, Err(AlgebraError::DegreeMismatch { .. })));
    }

    #[test]
    fn splitting_a_generator_in_two() {
        // c5(j,0) -> c6(j,0) + c6(j,1), with superscripts carried in the crossing label
        let c5 = Symbol::c("j5", 0u32);
        let img = &Element::symbol(Symbol::c("j6", 0u32)) + &Element::symbol(Symbol::c("j6", 1u32));
        let e = &Element::symbol(c5.clone()) * &a(0, 2);
        let out = e.substitute(&c5, &img).unwrap();
        let expect = &(&Element::symbol(Symbol::c("j6", 0u32)) * &a(0, 2))
            + &(&Element::symbol(Symbol::c("j6", 1u32)) * &a(0, 2));
        assert_eq!(out, expect);
    }

    #[test]
    fn display_forms() {
        let mu = LaurentPoly::mu();
        let e = &(&Element::scalar(&mu * &LaurentPoly::one_plus_mu()) + &a(2, 1)) - &(&a(1, 5) * &a(5, 1));
        assert_eq!(e.to_string(), "(u + u^2) + a(2,1) - a(1,5)*a(5,1)");
        assert_eq!(a(1, 2).scale(&LaurentPoly::monomial(-3, -1)).to_string(), "-3*u^-1*a(1,2)");
        assert_eq!(Element::zero().to_string(), "0");
        assert_eq!(Element::scalar(LaurentPoly::one_plus_mu()).to_string(), "1 + u");
    }
}
