use gradal_core::element::Coeff;
use gradal_core::ringexpr::{AlgebraMode, Base};

/// Source position: 1-based line and character columns `[start, end)`.
///
/// Spans never take part in equality, so a reprinted and reparsed tree
/// compares equal to the original.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub line: usize,
    pub start: usize,
    pub end: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.start)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupFactor {
    Zero,
    Free(usize),
    Cyclic(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAst {
    pub factors: Vec<GroupFactor>,
    pub span: Span,
}

/// A matrix literal; row `i` holds the `i`-th coordinate of the images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomAst {
    pub rows: Vec<Vec<i64>>,
    pub signature: Option<(GroupAst, GroupAst)>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleAst {
    pub coords: Vec<i64>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingKind {
    Base(Base),
    Algebra(Box<RingAst>, GroupAst, AlgebraMode),
    Coarsen(Box<RingAst>, HomAst),
    Restrict(Box<RingAst>, Vec<TupleAst>),
    Extend(Box<RingAst>, HomAst),
    Frac(Box<RingAst>),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingAst {
    pub kind: RingKind,
    pub span: Span,
}

/// `c*e(f)`; a bare constant has no exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermAst {
    pub coeff: Coeff,
    pub exponent: Option<Vec<i64>>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumAst {
    pub terms: Vec<TermAst>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemAst {
    Sum(SumAst),
    Quotient(SumAst, SumAst),
    Name(String, Span),
}

impl ElemAst {
    pub fn span(&self) -> Span {
        match self {
            ElemAst::Sum(s) => s.span,
            ElemAst::Quotient(n, d) => Span { end: d.span.end + 1, ..n.span },
            ElemAst::Name(_, s) => *s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Ring(RingAst),
    Elem(ElemAst),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Let { name: String, value: Value, span: Span },
    Command { words: Vec<String>, span: Span },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub items: Vec<Item>,
}
