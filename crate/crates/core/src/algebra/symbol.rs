use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// An arc or crossing label. Compares numerically when both sides are decimal
/// integers, so arc `10` sorts after arc `9`; numeric labels precede the rest.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(s: impl AsRef<str>) -> Self {
        Label(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn numeric(&self) -> Option<u64> {
        if self.0.is_empty() || self.0.len() > 18 || !self.0.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        self.0.parse().ok()
    }

    pub fn is_valid(s: &str) -> bool {
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numeric(), other.numeric()) {
            (Some(a), Some(b)) => a.cmp(&b).then_with(|| self.0.cmp(&other.0)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

impl From<u32> for Label {
    fn from(n: u32) -> Self {
        Label::new(n.to_string())
    }
}

impl From<usize> for Label {
    fn from(n: usize) -> Self {
        Label::new(n.to_string())
    }
}

/// A free generator of the algebra.
///
/// Variant order fixes the canonical term order: `a` < `c` < `d` < `e` < `f` <
/// free variables < stabilization pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// `a(i,j)` with `i != j`, degree 0.
    A(Label, Label),
    /// `c(x,i)`, degree 1.
    C(Label, Label),
    /// `d(i,x)`, degree 1.
    D(Label, Label),
    /// `e(x,y)`, degree 2.
    E(Label, Label),
    /// `f(x)`, degree 2.
    F(Label),
    /// Free degree-0 name used by hand-entered presentations.
    Var(Label),
    /// Upper member `s(k,i)` of the k-th stabilization pair, degree `i + 1`.
    StabHi { pair: u32, degree: u32 },
    /// Lower member `t(k,i)` of the k-th stabilization pair, degree `i`.
    StabLo { pair: u32, degree: u32 },
}

impl Symbol {
    pub fn degree(&self) -> u32 {
        match self {
            Symbol::A(..) | Symbol::Var(_) => 0,
            Symbol::C(..) | Symbol::D(..) => 1,
            Symbol::E(..) | Symbol::F(_) => 2,
            Symbol::StabHi { degree, .. } => degree + 1,
            Symbol::StabLo { degree, .. } => *degree,
        }
    }

    pub fn c(x: impl Into<Label>, i: impl Into<Label>) -> Self {
        Symbol::C(x.into(), i.into())
    }

    pub fn d(i: impl Into<Label>, x: impl Into<Label>) -> Self {
        Symbol::D(i.into(), x.into())
    }

    pub fn e(x: impl Into<Label>, y: impl Into<Label>) -> Self {
        Symbol::E(x.into(), y.into())
    }

    pub fn f(x: impl Into<Label>) -> Self {
        Symbol::F(x.into())
    }

    pub fn var(name: impl Into<Label>) -> Self {
        Symbol::Var(name.into())
    }

    /// `a(i,j)` as a symbol. Returns `None` on the diagonal, which is never a
    /// symbol; use `Element::arc_pair` to get `1 + u` there.
    pub fn a(i: impl Into<Label>, j: impl Into<Label>) -> Option<Self> {
        let (i, j) = (i.into(), j.into());
        (i != j).then_some(Symbol::A(i, j))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::A(i, j) => write!(f, "a({i},{j})"),
            Symbol::C(x, i) => write!(f, "c({x},{i})"),
            Symbol::D(i, x) => write!(f, "d({i},{x})"),
            Symbol::E(x, y) => write!(f, "e({x},{y})"),
            Symbol::F(x) => write!(f, "f({x})"),
            Symbol::Var(v) => write!(f, "{v}"),
            Symbol::StabHi { pair, degree } => write!(f, "s({pair},{degree})"),
            Symbol::StabLo { pair, degree } => write!(f, "t({pair},{degree})"),
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
