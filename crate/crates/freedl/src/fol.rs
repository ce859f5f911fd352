//! First-order syntax for the standard translation, plus a small evaluator
//! with negative semantics on partial interpretations: an atom or equality
//! holds only when all its term values are defined; quantifiers range over
//! the domain.

use std::collections::BTreeMap;
use std::fmt;

use crate::interp::{ElemId, PartialInterpretation};
use crate::syntax::{Concept, ConceptName, IndName, Role, RoleName};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoTerm {
    Var(String),
    Const(IndName),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoFormula {
    True,
    False,
    UnaryAtom(ConceptName, FoTerm),
    BinaryAtom(RoleName, FoTerm, FoTerm),
    Eq(FoTerm, FoTerm),
    Not(Box<FoFormula>),
    And(Vec<FoFormula>),
    Implies(Box<FoFormula>, Box<FoFormula>),
    Exists(String, Box<FoFormula>),
    Forall(String, Box<FoFormula>),
}

impl fmt::Display for FoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoTerm::Var(x) => write!(f, "{x}"),
            FoTerm::Const(a) => write!(f, "{a}"),
        }
    }
}

impl fmt::Display for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoFormula::True => write!(f, "true"),
            FoFormula::False => write!(f, "false"),
            FoFormula::UnaryAtom(p, t) => write!(f, "{p}({t})"),
            FoFormula::BinaryAtom(p, t1, t2) => write!(f, "{p}({t1},{t2})"),
            FoFormula::Eq(t1, t2) => write!(f, "{t1} = {t2}"),
            FoFormula::Not(g) => write!(f, "~({g})"),
            FoFormula::And(gs) => {
                let parts: Vec<String> = gs.iter().map(|g| g.to_string()).collect();
                write!(f, "({})", parts.join(" & "))
            }
            FoFormula::Implies(a, b) => write!(f, "({a} -> {b})"),
            FoFormula::Exists(x, g) => write!(f, "exists {x}.({g})"),
            FoFormula::Forall(x, g) => write!(f, "forall {x}.({g})"),
        }
    }
}

struct VarGen {
    next: usize,
}

impl VarGen {
    fn fresh(&mut self) -> String {
        let v = format!("x{}", self.next);
        self.next += 1;
        v
    }
}

fn st(c: &Concept, free: &str, gen: &mut VarGen) -> FoFormula {
    match c {
        Concept::Top => FoFormula::True,
        Concept::Bot => FoFormula::False,
        Concept::ExistenceTop => {
            // never produced by the partial-interpretation dialects
            FoFormula::False
        }
        Concept::Name(a) => FoFormula::UnaryAtom(a.clone(), FoTerm::Var(free.to_string())),
        Concept::Nominal(crate::syntax::Term::Individual(a)) => FoFormula::Eq(
            FoTerm::Var(free.to_string()),
            FoTerm::Const(a.clone()),
        ),
        Concept::Nominal(crate::syntax::Term::Iota(body)) => {
            // exists x C(x), forall x y (C(x) & C(y) -> x = y), forall y (C(y) -> free = y)
            let x = gen.fresh();
            let y = gen.fresh();
            let z = gen.fresh();
            let existence = FoFormula::Exists(x.clone(), Box::new(st(body, &x, gen)));
            let uniqueness = FoFormula::Forall(
                y.clone(),
                Box::new(FoFormula::Forall(
                    z.clone(),
                    Box::new(FoFormula::Implies(
                        Box::new(FoFormula::And(vec![st(body, &y, gen), st(body, &z, gen)])),
                        Box::new(FoFormula::Eq(FoTerm::Var(y.clone()), FoTerm::Var(z.clone()))),
                    )),
                )),
            );
            let w = gen.fresh();
            let pinning = FoFormula::Forall(
                w.clone(),
                Box::new(FoFormula::Implies(
                    Box::new(st(body, &w, gen)),
                    Box::new(FoFormula::Eq(
                        FoTerm::Var(free.to_string()),
                        FoTerm::Var(w.clone()),
                    )),
                )),
            );
            FoFormula::And(vec![existence, uniqueness, pinning])
        }
        Concept::Not(d) => FoFormula::Not(Box::new(st(d, free, gen))),
        Concept::And(cs) => FoFormula::And(cs.iter().map(|d| st(d, free, gen)).collect()),
        Concept::Exists(Role::Named(r), d) => {
            let y = gen.fresh();
            FoFormula::Exists(
                y.clone(),
                Box::new(FoFormula::And(vec![
                    FoFormula::BinaryAtom(
                        r.clone(),
                        FoTerm::Var(free.to_string()),
                        FoTerm::Var(y.clone()),
                    ),
                    st(d, &y, gen),
                ])),
            )
        }
        Concept::Exists(Role::Universal, d) => {
            let y = gen.fresh();
            FoFormula::Exists(y.clone(), Box::new(st(d, &y, gen)))
        }
    }
}

/// The standard translation `st_x(C)` with exactly one free variable.
pub fn standard_translation(c: &Concept, var: &str) -> FoFormula {
    let mut gen = VarGen { next: 0 };
    st(c, var, &mut gen)
}

fn term_value(
    i: &PartialInterpretation,
    env: &BTreeMap<String, ElemId>,
    t: &FoTerm,
) -> Option<ElemId> {
    match t {
        FoTerm::Var(x) => env.get(x).cloned(),
        FoTerm::Const(a) => i.ind_map.get(a).cloned(),
    }
}

/// Evaluates a formula under the negative semantics: atoms with any
/// undefined term value are false.
pub fn eval(
    i: &PartialInterpretation,
    env: &mut BTreeMap<String, ElemId>,
    f: &FoFormula,
) -> bool {
    match f {
        FoFormula::True => true,
        FoFormula::False => false,
        FoFormula::UnaryAtom(p, t) => match term_value(i, env, t) {
            Some(e) => i
                .concept_ext
                .get(p)
                .map(|ext| ext.contains(&e))
                .unwrap_or(false),
            None => false,
        },
        FoFormula::BinaryAtom(p, t1, t2) => {
            match (term_value(i, env, t1), term_value(i, env, t2)) {
                (Some(e1), Some(e2)) => i
                    .role_ext
                    .get(p)
                    .map(|ext| ext.contains(&(e1, e2)))
                    .unwrap_or(false),
                _ => false,
            }
        }
        FoFormula::Eq(t1, t2) => match (term_value(i, env, t1), term_value(i, env, t2)) {
            (Some(e1), Some(e2)) => e1 == e2,
            _ => false,
        },
        FoFormula::Not(g) => !eval(i, env, g),
        FoFormula::And(gs) => gs.iter().all(|g| eval(i, env, g)),
        FoFormula::Implies(a, b) => !eval(i, env, a) || eval(i, env, b),
        FoFormula::Exists(x, g) => {
            let saved = env.get(x).cloned();
            let domain: Vec<ElemId> = i.domain.iter().cloned().collect();
            let mut found = false;
            for d in domain {
                env.insert(x.clone(), d);
                if eval(i, env, g) {
                    found = true;
                    break;
                }
            }
            restore(env, x, saved);
            found
        }
        FoFormula::Forall(x, g) => {
            let saved = env.get(x).cloned();
            let domain: Vec<ElemId> = i.domain.iter().cloned().collect();
            let mut holds = true;
            for d in domain {
                env.insert(x.clone(), d);
                if !eval(i, env, g) {
                    holds = false;
                    break;
                }
            }
            restore(env, x, saved);
            holds
        }
    }
}

fn restore(env: &mut BTreeMap<String, ElemId>, x: &str, saved: Option<ElemId>) {
    match saved {
        Some(v) => {
            env.insert(x.to_string(), v);
        }
        None => {
            env.remove(x);
        }
    }
}

/// Evaluates `st_x(C)` at a single element.
pub fn holds_at(i: &PartialInterpretation, f: &FoFormula, var: &str, at: &ElemId) -> bool {
    let mut env = BTreeMap::new();
    env.insert(var.to_string(), at.clone());
    eval(i, &mut env, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::concept_extension;
    use crate::syntax::parse_concept;

    #[test]
    fn atomic_translation() {
        let f = standard_translation(&Concept::name("A"), "x");
        assert_eq!(f, FoFormula::UnaryAtom("A".to_string(), FoTerm::Var("x".to_string())));
        assert_eq!(f.to_string(), "A(x)");
    }

    #[test]
    fn iota_translation_shape() {
        let f = standard_translation(&Concept::nominal_iota(Concept::name("A")), "x");
        match f {
            FoFormula::And(parts) => {
                assert_eq!(parts.len(), 3);
                assert!(matches!(parts[0], FoFormula::Exists(..)));
                assert!(matches!(parts[1], FoFormula::Forall(..)));
                assert!(matches!(parts[2], FoFormula::Forall(..)));
            }
            other => panic!("expected conjunction, got {other}"),
        }
    }

    #[test]
    fn translation_agrees_with_extension() {
        let mut i = PartialInterpretation::new(["1".to_string(), "2".to_string(), "3".to_string()])
            .unwrap();
        i.set_concept("A", ["1".to_string()]);
        i.set_concept("B", ["1".to_string(), "2".to_string()]);
        i.add_role_pair("r", "1", "2");
        i.add_role_pair("r", "2", "3");
        i.set_individual("a", "2");
        for text in [
            "A",
            "{a}",
            "{b}",
            "{iota A}",
            "{iota B}",
            "not {iota A}",
            "some r.B",
            "some u.{iota A}",
            "(A and some r.{a})",
            "some r.{iota (not A and B)}",
        ] {
            let c = parse_concept(text).unwrap();
            let f = standard_translation(&c, "x");
            let ext = concept_extension(&i, &c).unwrap();
            for d in &i.domain {
                assert_eq!(
                    holds_at(&i, &f, "x", d),
                    ext.contains(d),
                    "disagreement on {text} at {d}"
                );
            }
        }
    }
}
