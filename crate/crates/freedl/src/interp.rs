//! Finite partial interpretations: term values, concept extensions, axiom
//! satisfaction and the JSON exchange format.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Axiom, Concept, ConceptName, IndName, Ontology, Role, RoleName, Term};

pub type ElemId = String;

/// A finite partial interpretation. The individual-name map is partial:
/// absent names do not denote. The universal role is never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialInterpretation {
    pub domain: BTreeSet<ElemId>,
    pub concept_ext: BTreeMap<ConceptName, BTreeSet<ElemId>>,
    pub role_ext: BTreeMap<RoleName, BTreeSet<(ElemId, ElemId)>>,
    pub ind_map: BTreeMap<IndName, ElemId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InterpError {
    #[error("domain must be non-empty")]
    EmptyDomain,
    #[error("unknown domain element `{0}` referenced by {1}")]
    UnknownElement(String, String),
    #[error("`etop` has no extension on partial interpretations")]
    ExistenceTopOutsideDualDomain,
    #[error("formula axioms are evaluated on dual-domain interpretations only")]
    FormulaAxiomOnPartial,
    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermValue {
    Defined(ElemId),
    Undefined,
}

impl TermValue {
    pub fn as_option(&self) -> Option<&ElemId> {
        match self {
            TermValue::Defined(e) => Some(e),
            TermValue::Undefined => None,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct InterpJson {
    domain: Vec<String>,
    #[serde(default)]
    concepts: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    roles: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    individuals: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inner: Option<Vec<String>>,
    #[serde(
        rename = "iotaFallback",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    iota_fallback: Option<BTreeMap<String, String>>,
}

impl PartialInterpretation {
    pub fn new(domain: impl IntoIterator<Item = ElemId>) -> Result<Self, InterpError> {
        let domain: BTreeSet<ElemId> = domain.into_iter().collect();
        if domain.is_empty() {
            return Err(InterpError::EmptyDomain);
        }
        Ok(PartialInterpretation {
            domain,
            ..Default::default()
        })
    }

    pub fn set_concept(&mut self, name: &str, elems: impl IntoIterator<Item = ElemId>) {
        self.concept_ext
            .insert(name.to_string(), elems.into_iter().collect());
    }

    pub fn add_role_pair(&mut self, role: &str, from: &str, to: &str) {
        self.role_ext
            .entry(role.to_string())
            .or_default()
            .insert((from.to_string(), to.to_string()));
    }

    pub fn set_individual(&mut self, name: &str, elem: &str) {
        self.ind_map.insert(name.to_string(), elem.to_string());
    }

    pub fn validate(&self) -> Result<(), InterpError> {
        if self.domain.is_empty() {
            return Err(InterpError::EmptyDomain);
        }
        for (a, exts) in &self.concept_ext {
            for e in exts {
                if !self.domain.contains(e) {
                    return Err(InterpError::UnknownElement(e.clone(), format!("concept {a}")));
                }
            }
        }
        for (r, pairs) in &self.role_ext {
            for (x, y) in pairs {
                for e in [x, y] {
                    if !self.domain.contains(e) {
                        return Err(InterpError::UnknownElement(e.clone(), format!("role {r}")));
                    }
                }
            }
        }
        for (a, e) in &self.ind_map {
            if !self.domain.contains(e) {
                return Err(InterpError::UnknownElement(
                    e.clone(),
                    format!("individual {a}"),
                ));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, InterpError> {
        let raw: InterpJson =
            serde_json::from_str(text).map_err(|e| InterpError::Json(e.to_string()))?;
        if raw.inner.is_some() || raw.iota_fallback.is_some() {
            return Err(InterpError::Json(
                "dual-domain fields in a partial interpretation".to_string(),
            ));
        }
        let i = PartialInterpretation {
            domain: raw.domain.into_iter().collect(),
            concept_ext: raw
                .concepts
                .into_iter()
                .map(|(k, v)| (k, v.into_iter().collect()))
                .collect(),
            role_ext: raw
                .roles
                .into_iter()
                .map(|(k, v)| (k, v.into_iter().collect()))
                .collect(),
            ind_map: raw.individuals.into_iter().collect(),
        };
        i.validate()?;
        Ok(i)
    }

    pub fn to_json(&self) -> String {
        let raw = InterpJson {
            domain: self.domain.iter().cloned().collect(),
            concepts: self
                .concept_ext
                .iter()
                .filter(|(_, v)| !v.is_empty())
                .map(|(k, v)| (k.clone(), v.iter().cloned().collect()))
                .collect(),
            roles: self
                .role_ext
                .iter()
                .filter(|(_, v)| !v.is_empty())
                .map(|(k, v)| (k.clone(), v.iter().cloned().collect()))
                .collect(),
            individuals: self
                .ind_map
                .iter()
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            inner: None,
            iota_fallback: None,
        };
        serde_json::to_string_pretty(&raw).expect("interpretation serializes")
    }

    fn concept_elems(&self, name: &str) -> BTreeSet<ElemId> {
        self.concept_ext.get(name).cloned().unwrap_or_default()
    }

    fn role_pairs(&self, name: &str) -> BTreeSet<(ElemId, ElemId)> {
        self.role_ext.get(name).cloned().unwrap_or_default()
    }
}

/// The value of a term, `Undefined` when it fails to denote.
pub fn term_value(i: &PartialInterpretation, term: &Term) -> Result<TermValue, InterpError> {
    match term {
        Term::Individual(a) => Ok(match i.ind_map.get(a) {
            Some(e) => TermValue::Defined(e.clone()),
            None => TermValue::Undefined,
        }),
        Term::Iota(body) => {
            let ext = concept_extension(i, body)?;
            if ext.len() == 1 {
                Ok(TermValue::Defined(ext.into_iter().next().unwrap()))
            } else {
                Ok(TermValue::Undefined)
            }
        }
    }
}

/// The extension of a concept, by structural recursion.
pub fn concept_extension(
    i: &PartialInterpretation,
    c: &Concept,
) -> Result<BTreeSet<ElemId>, InterpError> {
    match c {
        Concept::Top => Ok(i.domain.clone()),
        Concept::Bot => Ok(BTreeSet::new()),
        Concept::ExistenceTop => Err(InterpError::ExistenceTopOutsideDualDomain),
        Concept::Name(n) => Ok(i.concept_elems(n)),
        Concept::Nominal(t) => Ok(match term_value(i, t)? {
            TermValue::Defined(e) => BTreeSet::from([e]),
            TermValue::Undefined => BTreeSet::new(),
        }),
        Concept::Not(d) => {
            let ext = concept_extension(i, d)?;
            Ok(i.domain.difference(&ext).cloned().collect())
        }
        Concept::And(cs) => {
            let mut acc = i.domain.clone();
            for d in cs {
                let ext = concept_extension(i, d)?;
                acc = acc.intersection(&ext).cloned().collect();
            }
            Ok(acc)
        }
        Concept::Exists(Role::Universal, d) => {
            let ext = concept_extension(i, d)?;
            if ext.is_empty() {
                Ok(BTreeSet::new())
            } else {
                Ok(i.domain.clone())
            }
        }
        Concept::Exists(Role::Named(r), d) => {
            let ext = concept_extension(i, d)?;
            let pairs = i.role_pairs(r);
            Ok(i.domain
                .iter()
                .filter(|e| pairs.iter().any(|(x, y)| x == *e && ext.contains(y)))
                .cloned()
                .collect())
        }
    }
}

/// Axiom satisfaction. Assertions require all terms to denote; CIs are
/// extension inclusion. Dual-domain formula axioms are rejected.
pub fn satisfies_axiom(i: &PartialInterpretation, a: &Axiom) -> Result<bool, InterpError> {
    match a {
        Axiom::Ci(l, r) => {
            let le = concept_extension(i, l)?;
            let re = concept_extension(i, r)?;
            Ok(le.is_subset(&re))
        }
        Axiom::ConceptAssertion(c, t) => match term_value(i, t)? {
            TermValue::Defined(e) => Ok(concept_extension(i, c)?.contains(&e)),
            TermValue::Undefined => Ok(false),
        },
        Axiom::RoleAssertion(r, t1, t2) => {
            let v1 = term_value(i, t1)?;
            let v2 = term_value(i, t2)?;
            match (v1.as_option(), v2.as_option()) {
                (Some(e1), Some(e2)) => {
                    Ok(i.role_pairs(r).contains(&(e1.clone(), e2.clone())))
                }
                _ => Ok(false),
            }
        }
        Axiom::TermEquality(..) | Axiom::NegatedFormula(..) | Axiom::Conjunction(..) => {
            Err(InterpError::FormulaAxiomOnPartial)
        }
    }
}

/// `true` iff every axiom is satisfied; on failure reports the first
/// violated axiom.
pub fn is_model(i: &PartialInterpretation, o: &Ontology) -> Result<bool, InterpError> {
    Ok(failing_axiom(i, o)?.is_none())
}

/// The first axiom the interpretation violates, if any.
pub fn failing_axiom<'a>(
    i: &PartialInterpretation,
    o: &'a Ontology,
) -> Result<Option<&'a Axiom>, InterpError> {
    for a in &o.axioms {
        if !satisfies_axiom(i, a)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_ontology, Dialect};

    fn interp(domain: &[&str]) -> PartialInterpretation {
        PartialInterpretation::new(domain.iter().map(|s| s.to_string())).unwrap()
    }

    #[test]
    fn iota_singleton_and_not() {
        let mut i = interp(&["1", "2"]);
        i.set_concept("A", ["1".to_string()]);
        let v = term_value(&i, &Term::iota(Concept::name("A"))).unwrap();
        assert_eq!(v, TermValue::Defined("1".to_string()));

        i.set_concept("A", ["1".to_string(), "2".to_string()]);
        let v = term_value(&i, &Term::iota(Concept::name("A"))).unwrap();
        assert_eq!(v, TermValue::Undefined);

        let v = term_value(&i, &Term::ind("a")).unwrap();
        assert_eq!(v, TermValue::Undefined);
    }

    #[test]
    fn extension_of_negated_iota_nominal() {
        let mut i = interp(&["1", "2"]);
        i.set_concept("A", ["1".to_string()]);
        let c = Concept::not(Concept::nominal_iota(Concept::name("A")));
        assert_eq!(
            concept_extension(&i, &c).unwrap(),
            BTreeSet::from(["2".to_string()])
        );
    }

    #[test]
    fn cardinality_one_via_universal_role() {
        // some u.{iota A} holds everywhere iff |A| = 1
        let mut i = interp(&["1", "2", "3"]);
        i.set_concept("A", ["1".to_string()]);
        let c = Concept::exists(Role::Universal, Concept::nominal_iota(Concept::name("A")));
        assert_eq!(concept_extension(&i, &c).unwrap(), i.domain);
    }

    #[test]
    fn cardinality_two_or_more() {
        // some u.(A and not {iota A}) holds everywhere iff |A| >= 2
        let mut i = interp(&["1", "2", "3"]);
        i.set_concept("A", ["1".to_string(), "2".to_string()]);
        let c = Concept::exists(
            Role::Universal,
            Concept::and(vec![
                Concept::name("A"),
                Concept::not(Concept::nominal_iota(Concept::name("A"))),
            ]),
        );
        assert_eq!(concept_extension(&i, &c).unwrap(), i.domain);
        i.set_concept("A", ["1".to_string()]);
        assert!(concept_extension(&i, &c).unwrap().is_empty());
    }

    #[test]
    fn assertions_on_undefined_names() {
        let i = interp(&["1"]);
        // a does not denote: Top(a) is false, {a} sub bot is true
        let assertion = Axiom::ConceptAssertion(Concept::Top, Term::ind("a"));
        assert!(!satisfies_axiom(&i, &assertion).unwrap());
        let ci = Axiom::Ci(Concept::nominal_ind("a"), Concept::Bot);
        assert!(satisfies_axiom(&i, &ci).unwrap());
        let trivial = Axiom::Ci(Concept::Top, Concept::Top);
        assert!(satisfies_axiom(&i, &trivial).unwrap());
    }

    #[test]
    fn role_assertion_clause() {
        let mut i = interp(&["1"]);
        i.add_role_pair("r", "1", "1");
        i.set_individual("a", "1");
        let a = Axiom::RoleAssertion("r".to_string(), Term::ind("a"), Term::ind("a"));
        assert!(satisfies_axiom(&i, &a).unwrap());
    }

    #[test]
    fn model_of_empty_ontology() {
        let o = Ontology::new(Dialect::Elou, vec![]);
        assert!(is_model(&interp(&["1"]), &o).unwrap());
    }

    #[test]
    fn failing_axiom_reported() {
        let o = parse_ontology("A sub B.", Dialect::Elou).unwrap();
        let mut i = interp(&["1"]);
        i.set_concept("A", ["1".to_string()]);
        let failing = failing_axiom(&i, &o).unwrap().unwrap();
        assert_eq!(failing, &o.axioms[0]);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"domain":["d1","d2"],"concepts":{"A":["d1"]},
            "roles":{"r":[["d1","d2"]]},"individuals":{"a":"d1"}}"#;
        let i = PartialInterpretation::from_json(text).unwrap();
        assert_eq!(i.domain.len(), 2);
        let again = PartialInterpretation::from_json(&i.to_json()).unwrap();
        assert_eq!(i, again);
    }

    #[test]
    fn json_unknown_element_rejected() {
        let text = r#"{"domain":["d1"],"concepts":{"A":["d9"]}}"#;
        assert!(PartialInterpretation::from_json(text).is_err());
    }

    #[test]
    fn properties_of_clauses() {
        let mut i = interp(&["1", "2", "3"]);
        i.set_concept("A", ["1".to_string(), "2".to_string()]);
        i.set_concept("B", ["2".to_string(), "3".to_string()]);
        let and = Concept::and(vec![Concept::name("A"), Concept::name("B")]);
        let ext = concept_extension(&i, &and).unwrap();
        for part in [Concept::name("A"), Concept::name("B")] {
            assert!(ext.is_subset(&concept_extension(&i, &part).unwrap()));
        }
        let nom = Concept::nominal_iota(Concept::name("A"));
        assert!(concept_extension(&i, &nom).unwrap().len() <= 1);
        let u = Concept::exists(Role::Universal, Concept::name("A"));
        let uext = concept_extension(&i, &u).unwrap();
        assert!(uext.is_empty() || uext == i.domain);
    }
}
