//! Satisfiability-preserving translations: iota elimination into plain
//! ALCOu (`dagger`), the denotation-concept translation from partial to
//! total interpretations (`downde`), and the two individual-name reductions
//! between total and partial reasoning.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::normalize::{check_alco_normal_form, AlcoShape, NormalizeError};
use crate::syntax::{
    fresh_concept_name, fresh_individual_name, render, signature_of, subconcepts_of_ontology,
    Axiom, Concept, Dialect, Ontology, Role, Term,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error("normal form: {0}")]
    NormalForm(#[from] NormalizeError),
    #[error("dagger does not apply to the elo dialect, use downde")]
    DaggerOnElo,
    #[error("assertions must be eliminated first: {0}")]
    AssertionPresent(String),
}

/// `forall u.(lhs implies rhs)` spelled with the primitive constructors.
fn forall_u_implies(lhs: Concept, rhs: Concept) -> Concept {
    Concept::not(Concept::exists(
        Role::Universal,
        Concept::and(vec![lhs, Concept::not(rhs)]),
    ))
}

fn fresh_nominal_individual(t: &Term) -> String {
    fresh_individual_name("nf", &format!("dag:{t}"))
}

fn fresh_proxy_concept(b: &str) -> String {
    fresh_concept_name("nf", &format!("dag:{b}"))
}

/// `{t}+`: the named replacement of a nominal.
fn nominal_plus(t: &Term) -> Concept {
    match t {
        Term::Individual(b) => Concept::Name(fresh_proxy_concept(b)),
        Term::Iota(body) => match body.as_ref() {
            Concept::Name(b) => Concept::Name(b.clone()),
            other => panic!("dagger on unflattened iota body {other}"),
        },
    }
}

/// `{t}* = {t}+ and forall u.({t}+ implies {a_t})`.
fn nominal_star(t: &Term) -> Concept {
    let plus = nominal_plus(t);
    let pin = Concept::nominal_ind(&fresh_nominal_individual(t));
    Concept::and(vec![plus.clone(), forall_u_implies(plus, pin)])
}

/// The iota-elimination translation on ontologies in ALCO normal form.
/// The output is plain ALCOu: no definite descriptions, and the only
/// nominals are the fresh `{a_t}` pins.
pub fn dagger(o: &Ontology) -> Result<Ontology, TranslateError> {
    if o.dialect == Dialect::Elou {
        return Err(TranslateError::DaggerOnElo);
    }
    let shapes = check_alco_normal_form(o)?;
    let mut out = Vec::new();
    for shape in &shapes {
        match shape {
            AlcoShape::Plain(e, f) => out.push(Axiom::Ci(e.clone(), f.clone())),
            AlcoShape::NominalSub(t, a) => {
                out.push(Axiom::Ci(nominal_star(t), Concept::Name(a.clone())));
            }
            AlcoShape::SubNominal(a, t) => {
                out.push(Axiom::Ci(Concept::Name(a.clone()), nominal_star(t)));
            }
        }
    }
    // one companion per nominal occurring in the ontology
    let nominals: BTreeSet<Term> = subconcepts_of_ontology(o)
        .into_iter()
        .filter_map(|c| match c {
            Concept::Nominal(t) => Some(t),
            _ => None,
        })
        .collect();
    for t in nominals {
        let plus = nominal_plus(&t);
        let pin = Concept::nominal_ind(&fresh_nominal_individual(&t));
        out.push(Axiom::Ci(
            plus.clone(),
            forall_u_implies(pin, plus),
        ));
    }
    Ok(Ontology::new(Dialect::Alcou, out))
}

/// The denotation-concept translation of a concept: every atom and every
/// quantification is relativised to the fresh name `De`.
pub fn downde_concept(c: &Concept, de: &str) -> Concept {
    let de_c = || Concept::name(de);
    match c {
        Concept::Bot => Concept::Bot,
        Concept::Top => Concept::and(vec![de_c(), Concept::Top]),
        Concept::Name(a) => Concept::and(vec![de_c(), Concept::Name(a.clone())]),
        Concept::Nominal(Term::Individual(a)) => {
            Concept::and(vec![de_c(), Concept::nominal_ind(a)])
        }
        Concept::Nominal(Term::Iota(body)) => Concept::nominal_iota(Concept::and(vec![
            de_c(),
            downde_concept(body, de),
        ])),
        Concept::Not(d) => Concept::not(downde_concept(d, de)),
        Concept::And(cs) => Concept::and(cs.iter().map(|d| downde_concept(d, de)).collect()),
        Concept::Exists(s, d) => Concept::and(vec![
            de_c(),
            Concept::exists(
                s.clone(),
                Concept::and(vec![de_c(), downde_concept(d, de)]),
            ),
        ]),
        Concept::ExistenceTop => panic!("downde on the dual-domain dialect"),
    }
}

/// The fresh denotation-concept name used by `downde`.
pub fn de_name() -> String {
    "_dd_De".to_string()
}

/// Reduces partial-interpretation satisfiability to total-interpretation
/// satisfiability: relativise every CI to `De` and require `De` nonempty.
pub fn downde(o: &Ontology) -> Result<Ontology, TranslateError> {
    let de = de_name();
    let mut out = Vec::new();
    for a in &o.axioms {
        match a {
            Axiom::Ci(l, r) => out.push(Axiom::Ci(
                Concept::and(vec![Concept::name(&de), downde_concept(l, &de)]),
                downde_concept(r, &de),
            )),
            other => return Err(TranslateError::AssertionPresent(render(other))),
        }
    }
    out.push(Axiom::Ci(
        Concept::Top,
        Concept::exists(Role::Universal, Concept::name(&de)),
    ));
    Ok(Ontology::new(o.dialect, out))
}

/// Adds `top sub some u.{a}` for every individual in the signature,
/// reducing total-interpretation reasoning to partial-interpretation
/// reasoning.
pub fn add_denotation_axioms(o: &Ontology) -> Ontology {
    let mut axioms = o.axioms.clone();
    for a in signature_of(o).individuals {
        axioms.push(Axiom::Ci(
            Concept::Top,
            Concept::exists(Role::Universal, Concept::nominal_ind(&a)),
        ));
    }
    Ontology::new(o.dialect, axioms)
}

fn abstract_concept(c: &Concept, map: &BTreeMap<String, Concept>) -> Concept {
    match c {
        Concept::Top | Concept::Bot | Concept::ExistenceTop | Concept::Name(_) => c.clone(),
        Concept::Nominal(Term::Individual(a)) => map
            .get(a)
            .cloned()
            .unwrap_or_else(|| c.clone()),
        Concept::Nominal(Term::Iota(body)) => {
            Concept::nominal_iota(abstract_concept(body, map))
        }
        Concept::Not(d) => Concept::not(abstract_concept(d, map)),
        Concept::And(cs) => {
            Concept::and(cs.iter().map(|d| abstract_concept(d, map)).collect())
        }
        Concept::Exists(r, d) => Concept::exists(r.clone(), abstract_concept(d, map)),
    }
}

/// Replaces every individual `a` by a fresh concept name `B_a` constrained
/// by `B_a sub {b_a}` for a fresh individual `b_a`, reducing
/// partial-interpretation problems to total-interpretation problems.
/// Assertions are eliminated first so that every occurrence is a nominal.
pub fn abstract_individuals(o: &Ontology) -> Result<Ontology, TranslateError> {
    let o = crate::normalize::eliminate_assertions(o)
        .map_err(TranslateError::NormalForm)?;
    let individuals = signature_of(&o).individuals;
    let map: BTreeMap<String, Concept> = individuals
        .iter()
        .map(|a| {
            (
                a.clone(),
                Concept::Name(fresh_concept_name("nf", &format!("abs:{a}"))),
            )
        })
        .collect();
    let mut axioms = Vec::new();
    for ax in &o.axioms {
        if let Axiom::Ci(l, r) = ax {
            axioms.push(Axiom::Ci(
                abstract_concept(l, &map),
                abstract_concept(r, &map),
            ));
        }
    }
    for a in &individuals {
        axioms.push(Axiom::Ci(
            map[a].clone(),
            Concept::nominal_ind(&fresh_individual_name("nf", &format!("abs:{a}"))),
        ));
    }
    Ok(Ontology::new(o.dialect, axioms))
}

// ---------------------------------------------------------------------------
// Formula internalisation
// ---------------------------------------------------------------------------

/// A concept whose extension is the full domain exactly when the axiom
/// holds; used to internalise formula connectives via the universal role.
fn holds_concept(a: &Axiom) -> Concept {
    match a {
        Axiom::Ci(l, r) => forall_u_implies(l.clone(), r.clone()),
        Axiom::ConceptAssertion(c, t) => Concept::exists(
            Role::Universal,
            Concept::and(vec![Concept::Nominal(t.clone()), c.clone()]),
        ),
        Axiom::RoleAssertion(r, t1, t2) => Concept::exists(
            Role::Universal,
            Concept::and(vec![
                Concept::Nominal(t1.clone()),
                Concept::exists(Role::Named(r.clone()), Concept::Nominal(t2.clone())),
            ]),
        ),
        Axiom::TermEquality(..) => panic!("equalities are translated away before encoding"),
        Axiom::NegatedFormula(f) => Concept::not(holds_concept(f)),
        Axiom::Conjunction(fs) => Concept::and(fs.iter().map(holds_concept).collect()),
    }
}

/// A concept that is the full domain exactly when the axiom fails.
fn fails_concept(a: &Axiom) -> Concept {
    match a {
        Axiom::Ci(l, r) => Concept::exists(
            Role::Universal,
            Concept::and(vec![l.clone(), Concept::not(r.clone())]),
        ),
        Axiom::ConceptAssertion(c, t) => {
            // forall u.not {t} or some u.({t} and not C)
            Concept::or(
                Concept::forall(
                    Role::Universal,
                    Concept::not(Concept::Nominal(t.clone())),
                ),
                Concept::exists(
                    Role::Universal,
                    Concept::and(vec![Concept::Nominal(t.clone()), Concept::not(c.clone())]),
                ),
            )
        }
        Axiom::RoleAssertion(r, t1, t2) => Concept::or(
            Concept::forall(
                Role::Universal,
                Concept::not(Concept::Nominal(t1.clone())),
            ),
            Concept::exists(
                Role::Universal,
                Concept::and(vec![
                    Concept::Nominal(t1.clone()),
                    Concept::not(Concept::exists(
                        Role::Named(r.clone()),
                        Concept::Nominal(t2.clone()),
                    )),
                ]),
            ),
        ),
        Axiom::TermEquality(..) => panic!("equalities are translated away before encoding"),
        Axiom::NegatedFormula(f) => holds_concept(f),
        Axiom::Conjunction(fs) => Concept::or_of(fs.iter().map(fails_concept).collect()),
    }
}

/// Encodes a formula (axioms under negation and conjunction) into CIs.
/// Positive assertions expand into the two standard CIs; a negated formula
/// becomes the CI `top sub <fails>`.
pub fn encode_formula_as_cis(a: &Axiom, out: &mut Vec<Axiom>) {
    match a {
        Axiom::Conjunction(fs) => fs.iter().for_each(|f| encode_formula_as_cis(f, out)),
        Axiom::Ci(l, r) => out.push(Axiom::Ci(l.clone(), r.clone())),
        Axiom::ConceptAssertion(c, t) => {
            out.push(crate::normalize::denotation_ci(t));
            out.push(Axiom::Ci(Concept::Nominal(t.clone()), c.clone()));
        }
        Axiom::RoleAssertion(r, t1, t2) => {
            out.push(Axiom::Ci(
                Concept::Nominal(t1.clone()),
                Concept::exists(Role::Named(r.clone()), Concept::Nominal(t2.clone())),
            ));
            out.push(crate::normalize::denotation_ci(t1));
        }
        Axiom::NegatedFormula(f) => out.push(Axiom::Ci(Concept::Top, fails_concept(f))),
        Axiom::TermEquality(..) => panic!("equalities are translated away before encoding"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::alco_normal_form;
    use crate::syntax::{parse_ontology, Dialect};

    #[test]
    fn dagger_leaves_plain_cis_alone() {
        let o = parse_ontology("not A sub some r.B.", Dialect::Alcou).unwrap();
        let nf = alco_normal_form(&o).unwrap();
        let d = dagger(&nf).unwrap();
        assert_eq!(d.axioms, nf.axioms);
    }

    #[test]
    fn dagger_translates_sub_nominal() {
        let o = parse_ontology("A sub {iota B}.", Dialect::Alcou).unwrap();
        let d = dagger(&parse_ontology("A sub {iota B}.", Dialect::Alcou).unwrap()).unwrap();
        assert_eq!(d.axioms.len(), 2, "translated CI plus one companion");
        // no iota and no nominal other than the fresh pin remains
        for a in &d.axioms {
            if let Axiom::Ci(l, r) = a {
                assert!(!l.contains_iota() && !r.contains_iota());
            }
        }
        let sig = signature_of(&d);
        assert_eq!(sig.individuals.len(), 1);
        assert!(sig.individuals.iter().all(|a| a.starts_with("a_nf_")));
        drop(o);
    }

    #[test]
    fn dagger_output_iota_free() {
        let o = parse_ontology(
            "some r.{a} sub B. {iota (A and B)} sub C. D sub {a}.",
            Dialect::Alcou,
        )
        .unwrap();
        let nf = alco_normal_form(&o).unwrap();
        let d = dagger(&nf).unwrap();
        for a in &d.axioms {
            if let Axiom::Ci(l, r) = a {
                assert!(!l.contains_iota() && !r.contains_iota());
            }
        }
        // one companion per distinct nominal in con(nf)
        let nominals: BTreeSet<Term> = subconcepts_of_ontology(&nf)
            .into_iter()
            .filter_map(|c| match c {
                Concept::Nominal(t) => Some(t),
                _ => None,
            })
            .collect();
        assert_eq!(d.axioms.len(), nf.axioms.len() + nominals.len());
    }

    #[test]
    fn dagger_rejects_bad_shape() {
        let o = parse_ontology("some r.{a} sub B.", Dialect::Alcou).unwrap();
        let err = dagger(&o).unwrap_err();
        assert!(matches!(err, TranslateError::NormalForm(_)));
    }

    #[test]
    fn downde_clauses() {
        let o = parse_ontology("top sub top.", Dialect::Elou).unwrap();
        let out = downde(&o).unwrap();
        assert_eq!(out.axioms.len(), 2);
        let expected_lhs = Concept::and(vec![
            Concept::name("_dd_De"),
            Concept::and(vec![Concept::name("_dd_De"), Concept::Top]),
        ]);
        assert_eq!(
            out.axioms[0],
            Axiom::Ci(
                expected_lhs,
                Concept::and(vec![Concept::name("_dd_De"), Concept::Top])
            )
        );
        assert_eq!(
            out.axioms[1],
            Axiom::Ci(
                Concept::Top,
                Concept::exists(Role::Universal, Concept::name("_dd_De"))
            )
        );
    }

    #[test]
    fn downde_preserves_elo() {
        let o = parse_ontology(
            "{iota A} sub some r.B. {a} sub some u.C.",
            Dialect::Elou,
        )
        .unwrap();
        let out = downde(&o).unwrap();
        assert!(crate::syntax::validate_dialect(&out.axioms, Dialect::Elou).is_ok());
    }

    #[test]
    fn denotation_axioms() {
        let o = parse_ontology("A sub B.", Dialect::Elou).unwrap();
        assert_eq!(add_denotation_axioms(&o), o);
        let o = parse_ontology("{a} sub B.", Dialect::Elou).unwrap();
        let out = add_denotation_axioms(&o);
        assert_eq!(out.axioms.len(), 2);
    }

    #[test]
    fn abstract_individuals_examples() {
        let o = parse_ontology("A sub B.", Dialect::Elou).unwrap();
        assert_eq!(abstract_individuals(&o).unwrap(), o);
        let o = parse_ontology("{a} sub C.", Dialect::Elou).unwrap();
        let out = abstract_individuals(&o).unwrap();
        assert_eq!(out.axioms.len(), 2);
        let sig = signature_of(&out);
        assert_eq!(sig.individuals.len(), 1, "only the fresh pin remains");
        assert!(sig.individuals.iter().all(|a| a.starts_with("a_nf_")));
    }

    #[test]
    fn negated_assertion_vs_negated_formula() {
        // not C(t): the term must denote
        let mut out = Vec::new();
        let a = Axiom::ConceptAssertion(Concept::not(Concept::name("C")), Term::ind("t"));
        encode_formula_as_cis(&a, &mut out);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0], crate::normalize::denotation_ci(&Term::ind("t")));
        // not (C(t)): satisfied when t fails to denote
        let mut out2 = Vec::new();
        let a2 = Axiom::negated(Axiom::ConceptAssertion(Concept::name("C"), Term::ind("t")));
        encode_formula_as_cis(&a2, &mut out2);
        assert_eq!(out2.len(), 1);
        let Axiom::Ci(l, r) = &out2[0] else { panic!() };
        assert_eq!(*l, Concept::Top);
        assert_eq!(
            *r,
            Concept::or(
                Concept::forall(Role::Universal, Concept::not(Concept::nominal_ind("t"))),
                Concept::exists(
                    Role::Universal,
                    Concept::and(vec![
                        Concept::nominal_ind("t"),
                        Concept::not(Concept::name("C"))
                    ])
                )
            )
        );
    }
}
