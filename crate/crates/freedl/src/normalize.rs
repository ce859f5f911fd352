//! Assertion elimination, iota flattening and the two normal forms. Each
//! transformation yields a conservative extension of its input.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::syntax::{
    fresh_concept_name, render, subconcepts_of_ontology, Axiom, Concept, Dialect, Ontology, Role,
    Term,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("term equalities belong to the dual-domain dialect")]
    TermEquality,
    #[error("formula axioms belong to the dual-domain dialect")]
    FormulaAxiom,
    #[error("expected concept inclusions only, found an assertion")]
    AssertionPresent,
    #[error("axiom `{0}` is not in the expected normal form")]
    NotNormalForm(String),
    #[error("construct not available in dialect: {0}")]
    DialectViolation(String),
}

/// Replaces assertions by the equivalent CIs: `C(t)` by `{t} sub C` and
/// `top sub some u.{t}`; `r(t1,t2)` by `{t1} sub some r.{t2}` and
/// `top sub some u.{t1}`.
pub fn eliminate_assertions(o: &Ontology) -> Result<Ontology, NormalizeError> {
    let mut axioms = Vec::new();
    for a in &o.axioms {
        match a {
            Axiom::Ci(l, r) => axioms.push(Axiom::Ci(l.clone(), r.clone())),
            Axiom::ConceptAssertion(c, t) => {
                axioms.push(Axiom::Ci(Concept::Nominal(t.clone()), c.clone()));
                axioms.push(denotation_ci(t));
            }
            Axiom::RoleAssertion(r, t1, t2) => {
                axioms.push(Axiom::Ci(
                    Concept::Nominal(t1.clone()),
                    Concept::exists(Role::Named(r.clone()), Concept::Nominal(t2.clone())),
                ));
                axioms.push(denotation_ci(t1));
            }
            Axiom::TermEquality(..) => return Err(NormalizeError::TermEquality),
            Axiom::NegatedFormula(..) | Axiom::Conjunction(..) => {
                return Err(NormalizeError::FormulaAxiom)
            }
        }
    }
    Ok(Ontology::new(o.dialect, axioms))
}

/// `top sub some u.{t}`: the term denotes.
pub fn denotation_ci(t: &Term) -> Axiom {
    Axiom::Ci(
        Concept::Top,
        Concept::exists(Role::Universal, Concept::Nominal(t.clone())),
    )
}

fn cis_only(o: &Ontology) -> Result<(), NormalizeError> {
    if o.axioms.iter().any(|a| !matches!(a, Axiom::Ci(..))) {
        return Err(NormalizeError::AssertionPresent);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Flattening
// ---------------------------------------------------------------------------

struct Flattener {
    defs_by_body: BTreeMap<Concept, String>,
    pending_defs: Vec<(String, Concept)>,
}

impl Flattener {
    fn name_for(&mut self, body: &Concept) -> String {
        if let Some(n) = self.defs_by_body.get(body) {
            return n.clone();
        }
        let n = fresh_concept_name("nf", &render(body));
        self.defs_by_body.insert(body.clone(), n.clone());
        self.pending_defs.push((n.clone(), body.clone()));
        n
    }

    /// Replaces outermost non-atomic iota bodies with fresh names. Nested
    /// iotas stay inside the recorded definition body.
    fn rewrite(&mut self, c: &Concept) -> Concept {
        match c {
            Concept::Top | Concept::Bot | Concept::ExistenceTop | Concept::Name(_) => c.clone(),
            Concept::Nominal(Term::Individual(_)) => c.clone(),
            Concept::Nominal(Term::Iota(body)) => match body.as_ref() {
                Concept::Name(_) => c.clone(),
                other => Concept::nominal_iota(Concept::Name(self.name_for(other))),
            },
            Concept::Not(d) => Concept::not(self.rewrite(d)),
            Concept::And(cs) => Concept::and(cs.iter().map(|d| self.rewrite(d)).collect()),
            Concept::Exists(r, d) => Concept::exists(r.clone(), self.rewrite(d)),
        }
    }
}

/// Flattening: after it, every iota body is a concept name. Fresh names are
/// defined by CEs, shared across syntactically identical bodies.
pub fn flatten(o: &Ontology) -> Result<Ontology, NormalizeError> {
    cis_only(o)?;
    let mut fl = Flattener {
        defs_by_body: BTreeMap::new(),
        pending_defs: Vec::new(),
    };
    let mut out = Vec::new();
    for a in &o.axioms {
        if let Axiom::Ci(l, r) = a {
            out.push(Axiom::Ci(fl.rewrite(l), fl.rewrite(r)));
        }
    }
    while let Some((name, body)) = fl.pending_defs.pop() {
        let body = fl.rewrite(&body);
        out.push(Axiom::Ci(Concept::Name(name.clone()), body.clone()));
        out.push(Axiom::Ci(body, Concept::Name(name)));
    }
    Ok(Ontology::new(o.dialect, out))
}

/// Number of distinct non-atomic iota bodies, at any nesting depth.
pub fn non_atomic_iota_bodies(o: &Ontology) -> BTreeSet<Concept> {
    subconcepts_of_ontology(o)
        .into_iter()
        .filter_map(|c| match c {
            Concept::Nominal(Term::Iota(body)) if !matches!(*body, Concept::Name(_)) => {
                Some(*body)
            }
            _ => None,
        })
        .collect()
}

// ---------------------------------------------------------------------------
// ELO normal form
// ---------------------------------------------------------------------------

/// Bottom-up simplification used before shape normalization: conjunction
/// with `bot` collapses, `top` conjuncts drop, `some r.bot` collapses.
fn simplify(c: &Concept) -> Concept {
    match c {
        Concept::Top | Concept::Bot | Concept::ExistenceTop | Concept::Name(_) => c.clone(),
        Concept::Nominal(Term::Individual(_)) => c.clone(),
        Concept::Nominal(Term::Iota(body)) => Concept::nominal_iota(simplify(body)),
        Concept::Not(d) => Concept::not(simplify(d)),
        Concept::And(cs) => {
            let parts: Vec<Concept> = cs
                .iter()
                .map(simplify)
                .filter(|d| *d != Concept::Top)
                .collect();
            if parts.iter().any(|d| *d == Concept::Bot) {
                Concept::Bot
            } else {
                Concept::and(parts)
            }
        }
        Concept::Exists(r, d) => {
            let d = simplify(d);
            if d == Concept::Bot {
                Concept::Bot
            } else {
                Concept::exists(r.clone(), d)
            }
        }
    }
}

fn is_bc(c: &Concept) -> bool {
    matches!(c, Concept::Name(_) | Concept::Top)
}

fn is_target(c: &Concept) -> bool {
    matches!(c, Concept::Name(_) | Concept::Top | Concept::Bot)
}

fn is_flat_nominal(c: &Concept) -> bool {
    match c {
        Concept::Nominal(Term::Individual(_)) => true,
        Concept::Nominal(Term::Iota(body)) => matches!(body.as_ref(), Concept::Name(_)),
        _ => false,
    }
}

struct EloNormalizer {
    out: Vec<Axiom>,
    fresh: BTreeMap<(Concept, bool), Concept>,
}

impl EloNormalizer {
    fn fresh_for(&mut self, c: &Concept, on_lhs: bool) -> Concept {
        if let Some(n) = self.fresh.get(&(c.clone(), on_lhs)) {
            return n.clone();
        }
        let side = if on_lhs { "l" } else { "r" };
        let n = Concept::Name(fresh_concept_name("nf", &format!("{side}:{}", render(c))));
        self.fresh.insert((c.clone(), on_lhs), n.clone());
        n
    }

    /// Abstracts a subconcept in subsumee position to a basic concept.
    fn lhs_bc(&mut self, c: &Concept) -> Result<Concept, NormalizeError> {
        if is_bc(c) {
            return Ok(c.clone());
        }
        let n = self.fresh_for(c, true);
        self.ci(c.clone(), n.clone())?;
        Ok(n)
    }

    /// Abstracts a subconcept in subsumer position to a basic concept.
    fn rhs_bc(&mut self, c: &Concept) -> Result<Concept, NormalizeError> {
        if is_target(c) {
            return Ok(c.clone());
        }
        let n = self.fresh_for(c, false);
        self.ci(n.clone(), c.clone())?;
        Ok(n)
    }

    fn ci(&mut self, lhs: Concept, rhs: Concept) -> Result<(), NormalizeError> {
        // split conjunctions on the right
        if let Concept::And(parts) = &rhs {
            for p in parts.clone() {
                self.ci(lhs.clone(), p)?;
            }
            return Ok(());
        }
        if lhs == Concept::Bot {
            return Ok(());
        }
        match &lhs {
            Concept::And(parts) => {
                let a = self.lhs_bc(&parts[0])?;
                let b = self.lhs_bc(&parts[1])?;
                if parts.len() == 2 {
                    let target = self.shape_target(rhs)?;
                    self.out
                        .push(Axiom::Ci(Concept::and(vec![a, b]), target));
                } else {
                    let x = self.fresh_for(&lhs, true);
                    self.out
                        .push(Axiom::Ci(Concept::and(vec![a, b]), x.clone()));
                    let rest = Concept::and(
                        std::iter::once(x)
                            .chain(parts[2..].iter().cloned())
                            .collect(),
                    );
                    self.ci(rest, rhs)?;
                }
                Ok(())
            }
            Concept::Exists(r, filler) => {
                let f = self.lhs_bc(filler)?;
                let target = self.shape_target(rhs)?;
                self.out
                    .push(Axiom::Ci(Concept::exists(r.clone(), f), target));
                Ok(())
            }
            Concept::Nominal(_) if is_flat_nominal(&lhs) => {
                let target = self.shape_target(rhs)?;
                self.out.push(Axiom::Ci(lhs, target));
                Ok(())
            }
            Concept::Name(_) | Concept::Top => match &rhs {
                Concept::Name(_) | Concept::Top | Concept::Bot => {
                    self.out.push(Axiom::Ci(lhs, rhs));
                    Ok(())
                }
                Concept::Exists(r, filler) => {
                    let f = self.rhs_bc(filler)?;
                    if f == Concept::Bot {
                        self.out.push(Axiom::Ci(lhs, Concept::Bot));
                    } else {
                        self.out
                            .push(Axiom::Ci(lhs, Concept::exists(r.clone(), f)));
                    }
                    Ok(())
                }
                Concept::Nominal(_) if is_flat_nominal(&rhs) => {
                    self.out.push(Axiom::Ci(lhs, rhs));
                    Ok(())
                }
                other => Err(NormalizeError::DialectViolation(render(other))),
            },
            other => Err(NormalizeError::DialectViolation(render(other))),
        }
    }

    /// Target position: names, top, bot stay; anything else is abstracted.
    fn shape_target(&mut self, rhs: Concept) -> Result<Concept, NormalizeError> {
        if is_target(&rhs) {
            Ok(rhs)
        } else {
            let n = self.fresh_for(&rhs, false);
            self.ci(n.clone(), rhs)?;
            Ok(n)
        }
    }
}

/// ELO normal form: flattened, every CI in one of the five permitted shapes
/// (unary `C sub D` standing for `C and C sub D`), and the companion
/// `{iota A} sub A` present for every `{iota A}` in the output.
pub fn elo_normal_form(o: &Ontology) -> Result<Ontology, NormalizeError> {
    if o.dialect != Dialect::Elou {
        return Err(NormalizeError::DialectViolation(
            "elo normal form expects the elo dialect".to_string(),
        ));
    }
    cis_only(o)?;
    let flat = flatten(o)?;
    let mut n = EloNormalizer {
        out: Vec::new(),
        fresh: BTreeMap::new(),
    };
    for a in &flat.axioms {
        if let Axiom::Ci(l, r) = a {
            let (l, r) = (simplify(l), simplify(r));
            if elo_shape_ok(&l, &r) {
                n.out.push(Axiom::Ci(l, r));
            } else {
                n.ci(l, r)?;
            }
        }
    }
    let mut result = Ontology::new(Dialect::Elou, n.out);
    add_iota_companions(&mut result);
    dedup(&mut result);
    Ok(result)
}

/// Inserts `{iota A} sub A` for every `{iota A}` in the ontology.
pub fn add_iota_companions(o: &mut Ontology) {
    let mut companions = Vec::new();
    for c in subconcepts_of_ontology(o) {
        if let Concept::Nominal(Term::Iota(body)) = &c {
            if let Concept::Name(_) = body.as_ref() {
                let companion = Axiom::Ci(c.clone(), (**body).clone());
                if !o.axioms.contains(&companion) {
                    companions.push(companion);
                }
            }
        }
    }
    o.axioms.extend(companions);
}

fn dedup(o: &mut Ontology) {
    let mut seen = BTreeSet::new();
    o.axioms.retain(|a| seen.insert(a.clone()));
}

fn elo_shape_ok(l: &Concept, r: &Concept) -> bool {
    let lhs_ok = match l {
        Concept::Name(_) | Concept::Top => true,
        Concept::And(parts) => parts.len() == 2 && parts.iter().all(is_bc),
        Concept::Exists(r, filler) => {
            matches!(r, Role::Named(_) | Role::Universal) && is_bc(filler)
        }
        c => is_flat_nominal(c),
    };
    if !lhs_ok {
        return false;
    }
    match r {
        Concept::Name(_) | Concept::Top | Concept::Bot => true,
        Concept::Exists(_, filler) => {
            is_bc(filler) && matches!(l, Concept::Name(_) | Concept::Top)
        }
        c if is_flat_nominal(c) => matches!(l, Concept::Name(_) | Concept::Top),
        _ => false,
    }
}

/// Checks that an ontology is in ELO normal form.
pub fn check_elo_normal_form(o: &Ontology) -> Result<(), NormalizeError> {
    for a in &o.axioms {
        match a {
            Axiom::Ci(l, r) if elo_shape_ok(l, r) => {}
            other => return Err(NormalizeError::NotNormalForm(render(other))),
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// ALCO normal form
// ---------------------------------------------------------------------------

struct NominalAbstraction {
    out: Vec<Axiom>,
    names: BTreeMap<Term, Concept>,
}

impl NominalAbstraction {
    fn name_for(&mut self, t: &Term) -> Concept {
        if let Some(n) = self.names.get(t) {
            return n.clone();
        }
        let n = Concept::Name(fresh_concept_name("nf", &format!("nom:{t}")));
        self.names.insert(t.clone(), n.clone());
        self.out.push(Axiom::Ci(
            Concept::Nominal(t.clone()),
            n.clone(),
        ));
        self.out
            .push(Axiom::Ci(n.clone(), Concept::Nominal(t.clone())));
        n
    }

    fn strip(&mut self, c: &Concept) -> Concept {
        match c {
            Concept::Top | Concept::Bot | Concept::ExistenceTop | Concept::Name(_) => c.clone(),
            Concept::Nominal(t) => self.name_for(t),
            Concept::Not(d) => Concept::not(self.strip(d)),
            Concept::And(cs) => Concept::and(cs.iter().map(|d| self.strip(d)).collect()),
            Concept::Exists(r, d) => Concept::exists(r.clone(), self.strip(d)),
        }
    }
}

fn alco_shape(a: &Axiom) -> Option<AlcoShape> {
    let Axiom::Ci(l, r) = a else { return None };
    match (l, r) {
        (Concept::Nominal(t), Concept::Name(n)) if is_flat_nominal(l) => {
            Some(AlcoShape::NominalSub(t.clone(), n.clone()))
        }
        (Concept::Name(n), Concept::Nominal(t)) if is_flat_nominal(r) => {
            Some(AlcoShape::SubNominal(n.clone(), t.clone()))
        }
        _ if !l.contains_nominal() && !r.contains_nominal() => {
            Some(AlcoShape::Plain(l.clone(), r.clone()))
        }
        _ => None,
    }
}

/// The three CI shapes of the ALCO normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlcoShape {
    /// `{t} sub A`
    NominalSub(Term, String),
    /// `A sub {t}`
    SubNominal(String, Term),
    /// nominal-free `E sub F`
    Plain(Concept, Concept),
}

/// ALCO normal form: flattened, every CI either nominal-free or of the form
/// `{t} sub A` / `A sub {t}`; nominals inside compound concepts are
/// abstracted by fresh names with linking CIs.
pub fn alco_normal_form(o: &Ontology) -> Result<Ontology, NormalizeError> {
    cis_only(o)?;
    let flat = flatten(o)?;
    let mut abs = NominalAbstraction {
        out: Vec::new(),
        names: BTreeMap::new(),
    };
    let mut main = Vec::new();
    for a in &flat.axioms {
        if alco_shape(a).is_some() {
            main.push(a.clone());
            continue;
        }
        let Axiom::Ci(l, r) = a else { unreachable!() };
        main.push(Axiom::Ci(abs.strip(l), abs.strip(r)));
    }
    main.extend(abs.out);
    let mut result = Ontology::new(o.dialect, main);
    dedup(&mut result);
    Ok(result)
}

/// Checks that an ontology is in ALCO normal form, reporting the shapes.
pub fn check_alco_normal_form(o: &Ontology) -> Result<Vec<AlcoShape>, NormalizeError> {
    o.axioms
        .iter()
        .map(|a| alco_shape(a).ok_or_else(|| NormalizeError::NotNormalForm(render(a))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_axioms, parse_ontology, signature_of};

    fn ont(text: &str, dialect: Dialect) -> Ontology {
        parse_ontology(text, dialect).unwrap()
    }

    #[test]
    fn assertion_elimination_examples() {
        let o = ont("A(a).", Dialect::Elou);
        let out = eliminate_assertions(&o).unwrap();
        let expected = parse_axioms("{a} sub A. top sub some u.{a}.", Dialect::Elou).unwrap();
        assert_eq!(out.axioms, expected);

        let o = ont("A sub B. r(a,b).", Dialect::Elou);
        let out = eliminate_assertions(&o).unwrap();
        let expected = parse_axioms(
            "A sub B. {a} sub some r.{b}. top sub some u.{a}.",
            Dialect::Elou,
        )
        .unwrap();
        assert_eq!(out.axioms, expected);

        let o = ont("A sub B.", Dialect::Elou);
        assert_eq!(eliminate_assertions(&o).unwrap(), o);
    }

    #[test]
    fn flatten_examples() {
        let o = ont("{iota A} sub B.", Dialect::Elou);
        assert_eq!(flatten(&o).unwrap(), o);

        // nested iota: two fresh definitions, innermost handled recursively
        let o = ont("{iota (A and some r.{iota B})} sub C.", Dialect::Elou);
        let flat = flatten(&o).unwrap();
        assert!(non_atomic_iota_bodies(&flat).is_empty());
        let fresh: Vec<_> = signature_of(&flat)
            .concepts
            .into_iter()
            .filter(|c| c.starts_with("_nf_"))
            .collect();
        assert_eq!(fresh.len(), 1, "one non-atomic body, one fresh name");

        let o = ont(
            "{iota (A and B)} sub C. D sub {iota (A and B)}.",
            Dialect::Elou,
        );
        let flat = flatten(&o).unwrap();
        let fresh: Vec<_> = signature_of(&flat)
            .concepts
            .into_iter()
            .filter(|c| c.starts_with("_nf_"))
            .collect();
        assert_eq!(fresh.len(), 1, "identical bodies share a name");
        assert_eq!(
            flat.axioms.len(),
            4,
            "two rewritten CIs plus the defining CE"
        );
    }

    #[test]
    fn fresh_name_count_matches_bodies() {
        let o = ont(
            "{iota (A and B)} sub C. {iota some r.A} sub D.",
            Dialect::Elou,
        );
        let bodies = non_atomic_iota_bodies(&o).len();
        let flat = flatten(&o).unwrap();
        let fresh = signature_of(&flat)
            .concepts
            .into_iter()
            .filter(|c| c.starts_with("_nf_"))
            .count();
        assert_eq!(bodies, fresh);
    }

    #[test]
    fn elo_normal_form_examples() {
        let o = ont("A sub B.", Dialect::Elou);
        assert_eq!(elo_normal_form(&o).unwrap().axioms, o.axioms);

        let o = ont("((A and B) and C) sub D.", Dialect::Elou);
        let nf = elo_normal_form(&o).unwrap();
        check_elo_normal_form(&nf).unwrap();
        assert_eq!(nf.axioms.len(), 2, "two binary-conjunction CIs");

        let o = ont("{iota B} sub D.", Dialect::Elou);
        let nf = elo_normal_form(&o).unwrap();
        assert!(nf
            .axioms
            .contains(&Axiom::Ci(Concept::nominal_iota(Concept::name("B")), Concept::name("B"))));
    }

    #[test]
    fn elo_normal_form_idempotent() {
        let o = ont(
            "(A and some r.(B and C)) sub some s.{a}. {iota (A and B)} sub top.",
            Dialect::Elou,
        );
        let nf = elo_normal_form(&o).unwrap();
        check_elo_normal_form(&nf).unwrap();
        let again = elo_normal_form(&nf).unwrap();
        assert_eq!(nf, again);
    }

    #[test]
    fn alco_normal_form_examples() {
        let o = ont("not A sub all r.B.", Dialect::Alcou);
        assert_eq!(alco_normal_form(&o).unwrap().axioms, o.axioms);

        let o = ont("some r.{a} sub B.", Dialect::Alcou);
        let nf = alco_normal_form(&o).unwrap();
        let shapes = check_alco_normal_form(&nf).unwrap();
        assert_eq!(shapes.len(), 3);
        assert!(shapes
            .iter()
            .any(|s| matches!(s, AlcoShape::NominalSub(Term::Individual(a), _) if a == "a")));
        assert!(shapes
            .iter()
            .any(|s| matches!(s, AlcoShape::SubNominal(_, Term::Individual(a)) if a == "a")));

        let o = ont("A sub {iota B}.", Dialect::Alcou);
        assert_eq!(alco_normal_form(&o).unwrap().axioms, o.axioms);
    }

    #[test]
    fn alco_normal_form_idempotent() {
        let o = ont(
            "some r.{a} sub (B or some u.{iota (A and B)}).",
            Dialect::Alcou,
        );
        let nf = alco_normal_form(&o).unwrap();
        check_alco_normal_form(&nf).unwrap();
        assert_eq!(alco_normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn growth_is_polynomial() {
        // output node count stays within a fixed polynomial of the input
        for text in [
            "((A and B) and (C and D)) sub (E and F).",
            "some r.(A and some s.(B and {a})) sub some r.some s.C.",
        ] {
            let o = ont(text, Dialect::Elou);
            let input_size: usize = o
                .axioms
                .iter()
                .map(|a| match a {
                    Axiom::Ci(l, r) => l.size() + r.size(),
                    _ => 0,
                })
                .sum();
            let nf = elo_normal_form(&o).unwrap();
            let output_size: usize = nf
                .axioms
                .iter()
                .map(|a| match a {
                    Axiom::Ci(l, r) => l.size() + r.size(),
                    _ => 0,
                })
                .sum();
            assert!(output_size <= 10 * input_size + 10);
        }
    }
}
