use std::collections::BTreeMap;
use std::sync::Arc;

use gradal_core::abelian::{FgGroup, GroupElem, GroupHom, Matrix};
use gradal_core::element::{Element, Fraction, Ring};
use gradal_core::ringexpr::{Base, NormalForm};

use super::ast::*;
use super::parser;
use crate::error::CliError;

type EResult<T> = Result<T, CliError>;

/// Script-local bindings. Rings are normalized when bound; elements are kept
/// as syntax because their meaning depends on the ring they are read in.
#[derive(Clone, Debug, Default)]
pub struct Env {
    rings: BTreeMap<String, NormalForm>,
    elems: BTreeMap<String, ElemAst>,
}

pub fn group(g: &GroupAst) -> EResult<FgGroup> {
    let mut rank = 0;
    let mut torsion = Vec::new();
    for f in &g.factors {
        match f {
            GroupFactor::Zero => {}
            GroupFactor::Free(r) => rank += r,
            GroupFactor::Cyclic(n) => torsion.push(*n),
        }
    }
    FgGroup::from_orders(rank, &torsion)
        .map(|(g, _)| g)
        .map_err(|e| CliError::type_error(e.to_string(), g.span, None))
}

/// A homomorphism out of `domain`, which the context (a ring's grading
/// group) fixes; an explicit signature must agree with it.
pub fn hom(h: &HomAst, domain: &FgGroup, context: Span) -> EResult<GroupHom> {
    let codomain = match &h.signature {
        Some((d, c)) => {
            let d = group(d)?;
            if &d != domain {
                return Err(CliError::type_error(
                    format!("homomorphism domain {d} is not the grading group {domain}"),
                    h.span,
                    Some(context),
                ));
            }
            group(c)?
        }
        None => FgGroup::free(h.rows.len()),
    };
    if h.rows.len() != codomain.dim() {
        return Err(CliError::type_error(
            format!("{} rows given, codomain {codomain} needs {}", h.rows.len(), codomain.dim()),
            h.span,
            None,
        ));
    }
    if let Some(r) = h.rows.iter().find(|r| r.len() != domain.dim()) {
        return Err(CliError::type_error(
            format!("row of length {}, grading group {domain} has {} coordinates", r.len(), domain.dim()),
            h.span,
            Some(context),
        ));
    }
    let m = Matrix::from_rows(h.rows.clone(), domain.dim());
    GroupHom::new(domain.clone(), codomain, m)
        .map_err(|e| CliError::type_error(e.to_string(), h.span, Some(context)))
}

fn point(t: &TupleAst, g: &FgGroup, context: Span) -> EResult<GroupElem> {
    if t.coords.len() != g.dim() {
        return Err(CliError::type_error(
            format!("{} coordinates given, {g} has {}", t.coords.len(), g.dim()),
            t.span,
            Some(context),
        ));
    }
    Ok(g.reduce(&t.coords))
}

pub fn points(ts: &[TupleAst], g: &FgGroup, context: Span) -> EResult<Vec<GroupElem>> {
    ts.iter().map(|t| point(t, g, context)).collect()
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn bind(&mut self, name: &str, value: &Value) -> EResult<()> {
        match value {
            Value::Ring(r) => {
                let nf = self.ring(r)?;
                self.elems.remove(name);
                self.rings.insert(name.to_string(), nf);
            }
            Value::Elem(e) => {
                let e = self.resolve(e)?.clone();
                self.rings.remove(name);
                self.elems.insert(name.to_string(), e);
            }
        }
        Ok(())
    }

    fn resolve<'a>(&'a self, e: &'a ElemAst) -> EResult<&'a ElemAst> {
        match e {
            ElemAst::Name(n, span) => self.elems.get(n).ok_or_else(|| CliError::Unbound {
                name: n.clone(),
                span: *span,
            }),
            _ => Ok(e),
        }
    }

    pub fn ring(&self, r: &RingAst) -> EResult<NormalForm> {
        Ok(match &r.kind {
            RingKind::Base(b) => NormalForm::base(*b),
            RingKind::Name(n) => self.rings.get(n).cloned().ok_or_else(|| CliError::Unbound {
                name: n.clone(),
                span: r.span,
            })?,
            RingKind::Algebra(inner, g, mode) => self.ring(inner)?.group_algebra(&group(g)?, *mode)?,
            RingKind::Coarsen(inner, h) => {
                let nf = self.ring(inner)?;
                let psi = hom(h, &nf.g, inner.span)?;
                nf.coarsen(&psi)?
            }
            RingKind::Extend(inner, h) => {
                let nf = self.ring(inner)?;
                let iota = hom(h, &nf.g, inner.span)?;
                nf.extend(&iota)?
            }
            RingKind::Restrict(inner, gens) => {
                let nf = self.ring(inner)?;
                let gens = points(gens, &nf.g, inner.span)?;
                nf.restrict(&gens)?.0
            }
            RingKind::Frac(inner) => self.ring(inner)?.fraction_field()?,
        })
    }

    pub fn ring_text(&self, text: &str) -> EResult<Ring> {
        Ok(Arc::new(self.ring(&parser::parse_ring(text)?)?))
    }

    fn sum(&self, s: &SumAst, ring: &Ring) -> EResult<Element> {
        let mut terms = Vec::new();
        for t in &s.terms {
            let f = match &t.exponent {
                None => ring.e.zero(),
                Some(c) => {
                    if c.len() != ring.e.dim() {
                        return Err(CliError::type_error(
                            format!("exponent has {} coordinates, {} has {}", c.len(), ring.e, ring.e.dim()),
                            t.span,
                            None,
                        ));
                    }
                    ring.e.reduce(c)
                }
            };
            if ring.base == Base::Z && !t.coeff.is_integer() {
                return Err(CliError::type_error(
                    format!("coefficient {} is not an integer over base Z", t.coeff),
                    t.span,
                    None,
                ));
            }
            terms.push((f, t.coeff.clone()));
        }
        Ok(Element::from_terms(ring, terms)?)
    }

    /// Reads an element of `ring`; sums are written in the underlying group
    /// algebra, quotients only make sense in fraction fields.
    pub fn fraction(&self, e: &ElemAst, ring: &Ring) -> EResult<Fraction> {
        let poly: Ring = Arc::new(ring.polynomial_ring());
        match self.resolve(e)? {
            ElemAst::Sum(s) => Ok(Fraction::from_element(ring, self.sum(s, &poly)?)?),
            ElemAst::Quotient(n, d) => {
                Ok(Fraction::new(ring, self.sum(n, &poly)?, self.sum(d, &poly)?)?)
            }
            ElemAst::Name(..) => unreachable!("resolved"),
        }
    }

    pub fn fraction_text(&self, text: &str, ring: &Ring) -> EResult<Fraction> {
        self.fraction(&parser::parse_elem(text)?, ring)
    }

    /// An element of an unlocalized ring.
    pub fn element_text(&self, text: &str, ring: &Ring) -> EResult<Element> {
        let ast = parser::parse_elem(text)?;
        if ring.is_fraction() {
            return Err(gradal_core::Error::Unsupported("elements of fraction fields here").into());
        }
        match self.resolve(&ast)? {
            ElemAst::Sum(s) => self.sum(s, ring),
            other => Err(CliError::type_error(
                "expected a polynomial, found a quotient",
                other.span(),
                None,
            )),
        }
    }
}
