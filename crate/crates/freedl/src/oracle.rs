//! Exhaustive bounded model search over partial and total interpretations.
//! This is the independent ground truth used by the property tests: a
//! depth-first enumeration of all interpretations up to a domain bound,
//! with three-valued early pruning and a profile-ordering symmetry cut for
//! anonymous elements. An unpruned mode exists for the tiny-bound
//! exhaustiveness checks.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::interp::PartialInterpretation;
use crate::syntax::{
    signature_of, Axiom, Concept, HasSignature, Ontology, Role, Signature, Term,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget exceeded after {0} nodes")]
    Budget(u64),
    #[error("formula axioms are not searched on partial interpretations")]
    FormulaAxiom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatVerdict {
    Sat(PartialInterpretation),
    UnsatUpTo(usize),
}

impl SatVerdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatVerdict::Sat(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntailVerdict {
    EntailedUpTo(usize),
    Countermodel(PartialInterpretation),
}

impl EntailVerdict {
    pub fn is_entailed(&self) -> bool {
        matches!(self, EntailVerdict::EntailedUpTo(_))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OracleCfg {
    pub max_domain: usize,
    pub total: bool,
    pub budget: u64,
    pub prune: bool,
}

impl OracleCfg {
    pub fn partial(max_domain: usize) -> Self {
        OracleCfg {
            max_domain,
            total: false,
            budget: 50_000_000,
            prune: true,
        }
    }

    pub fn total(max_domain: usize) -> Self {
        OracleCfg {
            total: true,
            ..OracleCfg::partial(max_domain)
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn unpruned(mut self) -> Self {
        self.prune = false;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    fn from_bool(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }

    fn not(self) -> Tri {
        match self {
            Tri::True => Tri::False,
            Tri::False => Tri::True,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TermTri {
    Def(usize),
    Undef,
    Unknown,
}

#[derive(Debug, Clone, Copy)]
enum Cell {
    Ind(usize),
    Conc(usize, usize),
    RolePair(usize, usize, usize),
}

struct Search<'a> {
    axioms: &'a [Axiom],
    /// when set, this axiom must be violated (countermodel search)
    refuted: Option<&'a Axiom>,
    concepts: Vec<String>,
    roles: Vec<String>,
    inds: Vec<String>,
    d: usize,
    total: bool,
    prune: bool,
    cells: Vec<Cell>,
    ind_val: Vec<Option<Option<usize>>>,
    conc_val: Vec<Vec<Option<bool>>>,
    role_val: Vec<Vec<Option<bool>>>,
    nodes: u64,
    budget: u64,
    leaves: u64,
}

impl<'a> Search<'a> {
    fn concept_idx(&self, name: &str) -> Option<usize> {
        self.concepts.iter().position(|c| c == name)
    }

    fn role_idx(&self, name: &str) -> Option<usize> {
        self.roles.iter().position(|r| r == name)
    }

    fn ind_idx(&self, name: &str) -> Option<usize> {
        self.inds.iter().position(|a| a == name)
    }

    fn tv_term(&self, t: &Term) -> TermTri {
        match t {
            Term::Individual(a) => match self.ind_idx(a) {
                None => TermTri::Undef,
                Some(i) => match self.ind_val[i] {
                    None => TermTri::Unknown,
                    Some(None) => TermTri::Undef,
                    Some(Some(e)) => TermTri::Def(e),
                },
            },
            Term::Iota(body) => {
                let mut definite = Vec::new();
                let mut possible = Vec::new();
                for e in 0..self.d {
                    match self.tv_concept(body, e) {
                        Tri::True => {
                            definite.push(e);
                            possible.push(e);
                        }
                        Tri::Unknown => possible.push(e),
                        Tri::False => {}
                    }
                }
                if definite.len() == 1 && possible.len() == 1 {
                    TermTri::Def(definite[0])
                } else if definite.len() >= 2 || possible.is_empty() {
                    TermTri::Undef
                } else {
                    TermTri::Unknown
                }
            }
        }
    }

    fn tv_nominal_at(&self, t: &Term, e: usize) -> Tri {
        match t {
            Term::Individual(_) => match self.tv_term(t) {
                TermTri::Def(x) => Tri::from_bool(x == e),
                TermTri::Undef => Tri::False,
                TermTri::Unknown => Tri::Unknown,
            },
            Term::Iota(body) => {
                // e is the value iff body holds at e and nowhere else
                match self.tv_concept(body, e) {
                    Tri::False => Tri::False,
                    at_e => {
                        let mut others_out = true;
                        for x in 0..self.d {
                            if x == e {
                                continue;
                            }
                            match self.tv_concept(body, x) {
                                Tri::True => return Tri::False,
                                Tri::Unknown => others_out = false,
                                Tri::False => {}
                            }
                        }
                        match (at_e, others_out) {
                            (Tri::True, true) => Tri::True,
                            _ => Tri::Unknown,
                        }
                    }
                }
            }
        }
    }

    fn tv_concept(&self, c: &Concept, e: usize) -> Tri {
        match c {
            Concept::Top => Tri::True,
            Concept::Bot => Tri::False,
            Concept::ExistenceTop => Tri::False,
            Concept::Name(n) => match self.concept_idx(n) {
                None => Tri::False,
                Some(i) => match self.conc_val[i][e] {
                    None => Tri::Unknown,
                    Some(b) => Tri::from_bool(b),
                },
            },
            Concept::Nominal(t) => self.tv_nominal_at(t, e),
            Concept::Not(d) => self.tv_concept(d, e).not(),
            Concept::And(cs) => {
                let mut val = Tri::True;
                for d in cs {
                    match self.tv_concept(d, e) {
                        Tri::False => return Tri::False,
                        Tri::Unknown => val = Tri::Unknown,
                        Tri::True => {}
                    }
                }
                val
            }
            Concept::Exists(Role::Universal, d) => {
                let mut val = Tri::False;
                for x in 0..self.d {
                    match self.tv_concept(d, x) {
                        Tri::True => return Tri::True,
                        Tri::Unknown => val = Tri::Unknown,
                        Tri::False => {}
                    }
                }
                val
            }
            Concept::Exists(Role::Named(r), d) => {
                let Some(ri) = self.role_idx(r) else {
                    return Tri::False;
                };
                let mut val = Tri::False;
                for x in 0..self.d {
                    let edge = match self.role_val[ri][e * self.d + x] {
                        None => Tri::Unknown,
                        Some(b) => Tri::from_bool(b),
                    };
                    if edge == Tri::False {
                        continue;
                    }
                    match (edge, self.tv_concept(d, x)) {
                        (Tri::True, Tri::True) => return Tri::True,
                        (_, Tri::False) => {}
                        _ => val = Tri::Unknown,
                    }
                }
                val
            }
        }
    }

    fn tv_axiom(&self, a: &Axiom) -> Result<Tri, OracleError> {
        match a {
            Axiom::Ci(l, r) => {
                let mut val = Tri::True;
                for e in 0..self.d {
                    match (self.tv_concept(l, e), self.tv_concept(r, e)) {
                        (Tri::True, Tri::False) => return Ok(Tri::False),
                        (Tri::False, _) | (_, Tri::True) => {}
                        _ => val = Tri::Unknown,
                    }
                }
                Ok(val)
            }
            Axiom::ConceptAssertion(c, t) => Ok(match self.tv_term(t) {
                TermTri::Undef => Tri::False,
                TermTri::Unknown => Tri::Unknown,
                TermTri::Def(e) => self.tv_concept(c, e),
            }),
            Axiom::RoleAssertion(r, t1, t2) => {
                let Some(ri) = self.role_idx(r) else {
                    return Ok(Tri::False);
                };
                Ok(match (self.tv_term(t1), self.tv_term(t2)) {
                    (TermTri::Undef, _) | (_, TermTri::Undef) => Tri::False,
                    (TermTri::Unknown, _) | (_, TermTri::Unknown) => Tri::Unknown,
                    (TermTri::Def(e1), TermTri::Def(e2)) => {
                        match self.role_val[ri][e1 * self.d + e2] {
                            None => Tri::Unknown,
                            Some(b) => Tri::from_bool(b),
                        }
                    }
                })
            }
            _ => Err(OracleError::FormulaAxiom),
        }
    }

    fn consistent(&self) -> Result<bool, OracleError> {
        for a in self.axioms {
            if self.tv_axiom(a)? == Tri::False {
                return Ok(false);
            }
        }
        if let Some(q) = self.refuted {
            if self.tv_axiom(q)? == Tri::True {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn complete_ok(&self) -> Result<bool, OracleError> {
        for a in self.axioms {
            if self.tv_axiom(a)? != Tri::True {
                return Ok(false);
            }
        }
        if let Some(q) = self.refuted {
            if self.tv_axiom(q)? != Tri::False {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Profile ordering over anonymous elements: keeps one representative
    /// per renaming class without losing any class.
    fn profile_cut(&self, just_completed: usize) -> bool {
        if !self.prune || self.concepts.is_empty() {
            return false;
        }
        let named: BTreeSet<usize> = self
            .ind_val
            .iter()
            .filter_map(|v| match v {
                Some(Some(e)) => Some(*e),
                _ => None,
            })
            .collect();
        if named.contains(&just_completed) {
            return false;
        }
        let prev = (0..just_completed)
            .rev()
            .find(|e| !named.contains(e));
        let Some(prev) = prev else { return false };
        let profile = |e: usize| -> Vec<bool> {
            self.conc_val
                .iter()
                .map(|col| col[e].unwrap_or(false))
                .collect()
        };
        profile(prev) > profile(just_completed)
    }

    fn run(&mut self, cell: usize) -> Result<Option<PartialInterpretation>, OracleError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OracleError::Budget(self.nodes));
        }
        if cell == self.cells.len() {
            self.leaves += 1;
            if self.complete_ok()? {
                return Ok(Some(self.to_interpretation()));
            }
            return Ok(None);
        }
        match self.cells[cell] {
            Cell::Ind(i) => {
                let mut choices: Vec<Option<usize>> =
                    (0..self.d).map(Some).collect();
                if !self.total {
                    choices.insert(0, None);
                }
                for v in choices {
                    self.ind_val[i] = Some(v);
                    if !self.prune || self.consistent()? {
                        if let Some(m) = self.run(cell + 1)? {
                            self.ind_val[i] = None;
                            return Ok(Some(m));
                        }
                    }
                }
                self.ind_val[i] = None;
            }
            Cell::Conc(ci, e) => {
                for v in [false, true] {
                    self.conc_val[ci][e] = Some(v);
                    let last_concept_of_elem = ci + 1 == self.concepts.len();
                    let cut = last_concept_of_elem && self.profile_cut(e);
                    if !cut && (!self.prune || self.consistent()?) {
                        if let Some(m) = self.run(cell + 1)? {
                            self.conc_val[ci][e] = None;
                            return Ok(Some(m));
                        }
                    }
                    self.conc_val[ci][e] = None;
                }
            }
            Cell::RolePair(ri, from, to) => {
                for v in [false, true] {
                    self.role_val[ri][from * self.d + to] = Some(v);
                    if !self.prune || self.consistent()? {
                        if let Some(m) = self.run(cell + 1)? {
                            self.role_val[ri][from * self.d + to] = None;
                            return Ok(Some(m));
                        }
                    }
                    self.role_val[ri][from * self.d + to] = None;
                }
            }
        }
        Ok(None)
    }

    fn to_interpretation(&self) -> PartialInterpretation {
        let name = |e: usize| format!("e{e}");
        let mut i =
            PartialInterpretation::new((0..self.d).map(name)).expect("non-empty domain");
        for (ci, cname) in self.concepts.iter().enumerate() {
            let elems: BTreeSet<String> = (0..self.d)
                .filter(|e| self.conc_val[ci][*e] == Some(true))
                .map(name)
                .collect();
            if !elems.is_empty() {
                i.concept_ext.insert(cname.clone(), elems);
            }
        }
        for (ri, rname) in self.roles.iter().enumerate() {
            for from in 0..self.d {
                for to in 0..self.d {
                    if self.role_val[ri][from * self.d + to] == Some(true) {
                        i.add_role_pair(rname, &name(from), &name(to));
                    }
                }
            }
        }
        for (ii, iname) in self.inds.iter().enumerate() {
            if let Some(Some(e)) = self.ind_val[ii] {
                i.set_individual(iname, &name(e));
            }
        }
        i
    }
}

fn build_cells(concepts: usize, roles: usize, inds: usize, d: usize) -> Vec<Cell> {
    let mut cells = Vec::new();
    for i in 0..inds {
        cells.push(Cell::Ind(i));
    }
    // element-major so the profile cut can fire as soon as an element's
    // concept profile is complete
    for e in 0..d {
        for c in 0..concepts {
            cells.push(Cell::Conc(c, e));
        }
    }
    for r in 0..roles {
        for from in 0..d {
            for to in 0..d {
                cells.push(Cell::RolePair(r, from, to));
            }
        }
    }
    cells
}

fn search_at_size(
    axioms: &[Axiom],
    refuted: Option<&Axiom>,
    sig: &Signature,
    d: usize,
    cfg: &OracleCfg,
    nodes_used: &mut u64,
) -> Result<Option<PartialInterpretation>, OracleError> {
    let concepts: Vec<String> = sig.concepts.iter().cloned().collect();
    let roles: Vec<String> = sig.roles.iter().cloned().collect();
    let inds: Vec<String> = sig.individuals.iter().cloned().collect();
    let cells = build_cells(concepts.len(), roles.len(), inds.len(), d);
    let mut s = Search {
        axioms,
        refuted,
        conc_val: vec![vec![None; d]; concepts.len()],
        role_val: vec![vec![None; d * d]; roles.len()],
        ind_val: vec![None; inds.len()],
        concepts,
        roles,
        inds,
        d,
        total: cfg.total,
        prune: cfg.prune,
        cells,
        nodes: *nodes_used,
        budget: cfg.budget,
        leaves: 0,
    };
    let r = s.run(0);
    *nodes_used = s.nodes;
    r
}

/// Satisfiability by exhaustive search up to the domain bound.
pub fn oracle_sat(o: &Ontology, cfg: &OracleCfg) -> Result<SatVerdict, OracleError> {
    let sig = signature_of(o);
    let mut nodes = 0u64;
    for d in 1..=cfg.max_domain {
        if let Some(m) = search_at_size(&o.axioms, None, &sig, d, cfg, &mut nodes)? {
            return Ok(SatVerdict::Sat(m));
        }
    }
    Ok(SatVerdict::UnsatUpTo(cfg.max_domain))
}

/// Searches for a model of the ontology violating the axiom. A countermodel
/// is definitive non-entailment; the bounded verdict is definitive only
/// when a completeness bound applies.
pub fn oracle_entail(
    o: &Ontology,
    query: &Axiom,
    cfg: &OracleCfg,
) -> Result<EntailVerdict, OracleError> {
    let mut sig = signature_of(o);
    let mut qsig = Signature::default();
    query.collect_signature(&mut qsig);
    sig = sig.union(qsig);
    let mut nodes = 0u64;
    for d in 1..=cfg.max_domain {
        if let Some(m) = search_at_size(&o.axioms, Some(query), &sig, d, cfg, &mut nodes)? {
            return Ok(EntailVerdict::Countermodel(m));
        }
    }
    Ok(EntailVerdict::EntailedUpTo(cfg.max_domain))
}

/// Number of complete structures visited by the unpruned enumerator at the
/// given bound; used to check exhaustiveness at tiny sizes.
pub fn unpruned_structure_count(
    sig: &Signature,
    max_domain: usize,
    total: bool,
    budget: u64,
) -> Result<u64, OracleError> {
    let concepts: Vec<String> = sig.concepts.iter().cloned().collect();
    let roles: Vec<String> = sig.roles.iter().cloned().collect();
    let inds: Vec<String> = sig.individuals.iter().cloned().collect();
    let mut leaves = 0u64;
    // an unsatisfiable ontology makes the unpruned search visit every leaf
    let unsat_axioms = [Axiom::Ci(Concept::Top, Concept::Bot)];
    for d in 1..=max_domain {
        let cells = build_cells(concepts.len(), roles.len(), inds.len(), d);
        let mut s = Search {
            axioms: &unsat_axioms,
            refuted: None,
            conc_val: vec![vec![None; d]; concepts.len()],
            role_val: vec![vec![None; d * d]; roles.len()],
            ind_val: vec![None; inds.len()],
            concepts: concepts.clone(),
            roles: roles.clone(),
            inds: inds.clone(),
            d,
            total,
            prune: false,
            cells,
            nodes: 0,
            budget,
            leaves: 0,
        };
        let _ = s.run(0)?;
        leaves += s.leaves;
    }
    Ok(leaves)
}

/// Searches for an interpretation of the fresh symbols over a fixed base
/// structure so that the extended structure models the ontology. Used by
/// the conservativity tests.
pub fn extends_to_model(
    base: &PartialInterpretation,
    o: &Ontology,
    fresh: &Signature,
    budget: u64,
) -> Result<Option<PartialInterpretation>, OracleError> {
    let d = base.domain.len();
    let elems: Vec<String> = base.domain.iter().cloned().collect();
    let eidx = |name: &str| elems.iter().position(|e| e == name).unwrap();

    let base_sig = signature_of(o);
    let concepts: Vec<String> = base_sig.concepts.iter().cloned().collect();
    let roles: Vec<String> = base_sig.roles.iter().cloned().collect();
    let inds: Vec<String> = base_sig.individuals.iter().cloned().collect();

    let mut conc_val = vec![vec![None; d]; concepts.len()];
    let mut role_val = vec![vec![None; d * d]; roles.len()];
    let mut ind_val = vec![None; inds.len()];
    let mut cells = Vec::new();
    for (ci, cname) in concepts.iter().enumerate() {
        if fresh.concepts.contains(cname) {
            for e in 0..d {
                cells.push(Cell::Conc(ci, e));
            }
        } else {
            let ext = base.concept_ext.get(cname).cloned().unwrap_or_default();
            for (e, elem) in elems.iter().enumerate() {
                conc_val[ci][e] = Some(ext.contains(elem));
            }
        }
    }
    for (ri, rname) in roles.iter().enumerate() {
        if fresh.roles.contains(rname) {
            for from in 0..d {
                for to in 0..d {
                    cells.push(Cell::RolePair(ri, from, to));
                }
            }
        } else {
            let ext = base.role_ext.get(rname).cloned().unwrap_or_default();
            for from in 0..d {
                for to in 0..d {
                    role_val[ri][from * d + to] =
                        Some(ext.contains(&(elems[from].clone(), elems[to].clone())));
                }
            }
        }
    }
    for (ii, iname) in inds.iter().enumerate() {
        if fresh.individuals.contains(iname) {
            cells.push(Cell::Ind(ii));
        } else {
            ind_val[ii] = Some(base.ind_map.get(iname).map(|e| eidx(e)));
        }
    }

    let mut s = Search {
        axioms: &o.axioms,
        refuted: None,
        conc_val,
        role_val,
        ind_val,
        concepts,
        roles,
        inds,
        d,
        total: false,
        prune: true,
        cells,
        nodes: 0,
        budget,
        leaves: 0,
    };
    s.run(0)
}

/// Enumerates every model of the ontology within the bound, calling the
/// visitor on each; used by the conservativity tests.
pub fn for_each_model(
    o: &Ontology,
    cfg: &OracleCfg,
    visit: &mut dyn FnMut(&PartialInterpretation),
) -> Result<(), OracleError> {
    let sig = signature_of(o);
    let concepts: Vec<String> = sig.concepts.iter().cloned().collect();
    let roles: Vec<String> = sig.roles.iter().cloned().collect();
    let inds: Vec<String> = sig.individuals.iter().cloned().collect();
    for d in 1..=cfg.max_domain {
        let cells = build_cells(concepts.len(), roles.len(), inds.len(), d);
        let mut s = Search {
            axioms: &o.axioms,
            refuted: None,
            conc_val: vec![vec![None; d]; concepts.len()],
            role_val: vec![vec![None; d * d]; roles.len()],
            ind_val: vec![None; inds.len()],
            concepts: concepts.clone(),
            roles: roles.clone(),
            inds: inds.clone(),
            d,
            total: cfg.total,
            prune: cfg.prune,
            cells,
            nodes: 0,
            budget: cfg.budget,
            leaves: 0,
        };
        enumerate_all(&mut s, 0, visit)?;
    }
    Ok(())
}

fn enumerate_all(
    s: &mut Search,
    cell: usize,
    visit: &mut dyn FnMut(&PartialInterpretation),
) -> Result<(), OracleError> {
    s.nodes += 1;
    if s.nodes > s.budget {
        return Err(OracleError::Budget(s.nodes));
    }
    if cell == s.cells.len() {
        if s.complete_ok()? {
            visit(&s.to_interpretation());
        }
        return Ok(());
    }
    match s.cells[cell] {
        Cell::Ind(i) => {
            let mut choices: Vec<Option<usize>> = (0..s.d).map(Some).collect();
            if !s.total {
                choices.insert(0, None);
            }
            for v in choices {
                s.ind_val[i] = Some(v);
                if !s.prune || s.consistent()? {
                    enumerate_all(s, cell + 1, visit)?;
                }
            }
            s.ind_val[i] = None;
        }
        Cell::Conc(ci, e) => {
            for v in [false, true] {
                s.conc_val[ci][e] = Some(v);
                if !s.prune || s.consistent()? {
                    enumerate_all(s, cell + 1, visit)?;
                }
                s.conc_val[ci][e] = None;
            }
        }
        Cell::RolePair(ri, from, to) => {
            for v in [false, true] {
                s.role_val[ri][from * s.d + to] = Some(v);
                if !s.prune || s.consistent()? {
                    enumerate_all(s, cell + 1, visit)?;
                }
                s.role_val[ri][from * s.d + to] = None;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::is_model;
    use crate::syntax::{parse_axioms, parse_ontology, Dialect};

    #[test]
    fn empty_ontology_sat_with_singleton() {
        let o = Ontology::new(Dialect::Elou, vec![]);
        match oracle_sat(&o, &OracleCfg::partial(3)).unwrap() {
            SatVerdict::Sat(m) => assert_eq!(m.domain.len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contradiction_unsat_at_every_bound() {
        let o = parse_ontology("top sub A. A sub bot.", Dialect::Elou).unwrap();
        for bound in 1..=3 {
            assert!(!oracle_sat(&o, &OracleCfg::partial(bound)).unwrap().is_sat());
        }
    }

    #[test]
    fn found_models_are_models() {
        let o = parse_ontology(
            "A sub some r.B. {a} sub A. top sub some u.{a}.",
            Dialect::Elou,
        )
        .unwrap();
        match oracle_sat(&o, &OracleCfg::partial(3)).unwrap() {
            SatVerdict::Sat(m) => assert!(is_model(&m, &o).unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn entailment_examples() {
        let o = parse_ontology("A sub B.", Dialect::Elou).unwrap();
        let reflexive = parse_axioms("A sub A.", Dialect::Elou).unwrap();
        assert!(oracle_entail(&o, &reflexive[0], &OracleCfg::partial(2))
            .unwrap()
            .is_entailed());
        let query = parse_axioms("A sub C.", Dialect::Elou).unwrap();
        match oracle_entail(&o, &query[0], &OracleCfg::partial(2)).unwrap() {
            EntailVerdict::Countermodel(m) => {
                assert_eq!(m.domain.len(), 1);
                assert!(is_model(&m, &o).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unpruned_count_matches_formula() {
        // sum over d of 2^(kd) * 2^(m d^2) * (d+1)^p
        let mut sig = Signature::default();
        sig.concepts.insert("A".to_string());
        sig.concepts.insert("B".to_string());
        sig.roles.insert("r".to_string());
        sig.individuals.insert("a".to_string());
        let count = unpruned_structure_count(&sig, 2, false, 100_000_000).unwrap();
        let formula: u64 = (1..=2u64)
            .map(|d| {
                2u64.pow((2 * d) as u32) * 2u64.pow((d * d) as u32) * (d + 1).pow(1)
            })
            .sum();
        assert_eq!(count, formula);
    }

    #[test]
    fn pruning_preserves_verdicts() {
        for text in [
            "A sub B. {a} sub A. top sub some u.{a}.",
            "A sub bot. top sub A.",
            "{iota A} sub B. A sub some r.A.",
            "top sub some u.{iota A}. A sub bot.",
        ] {
            let o = parse_ontology(text, Dialect::Elou).unwrap();
            let pruned = oracle_sat(&o, &OracleCfg::partial(2)).unwrap().is_sat();
            let unpruned = oracle_sat(&o, &OracleCfg::partial(2).unpruned())
                .unwrap()
                .is_sat();
            assert_eq!(pruned, unpruned, "verdict differs on {text}");
        }
    }

    #[test]
    fn total_mode_maps_every_individual() {
        let o = parse_ontology("{a} sub bot.", Dialect::Elou).unwrap();
        // on total interpretations a denotes, so {a} sub bot is unsatisfiable
        assert!(!oracle_sat(&o, &OracleCfg::total(2)).unwrap().is_sat());
        assert!(oracle_sat(&o, &OracleCfg::partial(2)).unwrap().is_sat());
    }
}
