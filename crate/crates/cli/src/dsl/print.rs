use std::fmt::Write;

use gradal_core::ringexpr::AlgebraMode;
use num_traits::One;

use super::ast::*;

pub fn group(g: &GroupAst) -> String {
    let parts: Vec<String> = g
        .factors
        .iter()
        .map(|f| match f {
            GroupFactor::Zero => "0".to_string(),
            GroupFactor::Free(1) => "Z".to_string(),
            GroupFactor::Free(r) => format!("Z^{r}"),
            GroupFactor::Cyclic(n) => format!("Z/{n}"),
        })
        .collect();
    parts.join(" x ")
}

fn ints(xs: &[i64], open: char, close: char) -> String {
    let inner: Vec<String> = xs.iter().map(i64::to_string).collect();
    format!("{open}{}{close}", inner.join(","))
}

pub fn hom(h: &HomAst) -> String {
    let rows: Vec<String> = h.rows.iter().map(|r| ints(r, '[', ']')).collect();
    let mut s = format!("[{}]", rows.join(","));
    if let Some((d, c)) = &h.signature {
        let _ = write!(s, " : {} -> {}", group(d), group(c));
    }
    s
}

pub fn tuples(ts: &[TupleAst]) -> String {
    let parts: Vec<String> = ts.iter().map(|t| ints(&t.coords, '(', ')')).collect();
    parts.join(", ")
}

pub fn ring(r: &RingAst) -> String {
    match &r.kind {
        RingKind::Base(b) => b.to_string(),
        RingKind::Algebra(inner, g, mode) => {
            let m = match mode {
                AlgebraMode::Fine => "fine",
                AlgebraMode::Coarse => "coarse",
            };
            format!("{}[{}]{m}", ring(inner), group(g))
        }
        RingKind::Coarsen(inner, h) => format!("coarsen({}, {})", ring(inner), hom(h)),
        RingKind::Extend(inner, h) => format!("extend({}, {})", ring(inner), hom(h)),
        RingKind::Restrict(inner, gens) => format!("restrict({}, {})", ring(inner), tuples(gens)),
        RingKind::Frac(inner) => format!("Frac({})", ring(inner)),
        RingKind::Name(n) => n.clone(),
    }
}

fn term(t: &TermAst) -> String {
    match &t.exponent {
        None => t.coeff.to_string(),
        Some(e) if t.coeff.is_one() => format!("e{}", ints(e, '(', ')')),
        Some(e) => format!("{}*e{}", t.coeff, ints(e, '(', ')')),
    }
}

fn sum(s: &SumAst) -> String {
    let parts: Vec<String> = s.terms.iter().map(term).collect();
    parts.join(" + ")
}

pub fn elem(e: &ElemAst) -> String {
    match e {
        ElemAst::Sum(s) => sum(s),
        ElemAst::Quotient(n, d) => format!("({})/({})", sum(n), sum(d)),
        ElemAst::Name(n, _) => n.clone(),
    }
}

fn word(w: &str) -> String {
    if !w.is_empty() && !w.contains(|c: char| c.is_whitespace() || "\"'\\#()[]".contains(c)) {
        return w.to_string();
    }
    let mut s = String::from("\"");
    for c in w.chars() {
        if c == '"' || c == '\\' {
            s.push('\\');
        }
        s.push(c);
    }
    s.push('"');
    s
}

pub fn script(s: &Script) -> String {
    let mut out = String::new();
    for item in &s.items {
        match item {
            Item::Let { name, value, .. } => {
                let v = match value {
                    Value::Ring(r) => ring(r),
                    Value::Elem(e) => elem(e),
                };
                let _ = writeln!(out, "let {name} = {v}");
            }
            Item::Command { words, .. } => {
                let ws: Vec<String> = words.iter().map(|w| word(w)).collect();
                let _ = writeln!(out, "{}", ws.join(" "));
            }
        }
    }
    out
}
