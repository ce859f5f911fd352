//! Satisfiability for plain ALCOu on total interpretations by type
//! elimination, and on top of it the satisfiability and entailment pipeline
//! for the full language on partial and total interpretations.
//!
//! Types are maximal boolean-consistent valuations of the closure. The
//! procedure groups types by their universal-role signature, eliminates
//! types with unwitnessable existential obligations, and searches a
//! coherent assignment of nominals to surviving types. Worst-case
//! exponential, guarded by an explicit budget.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::normalize::NormalizeError;
use crate::syntax::{Axiom, Concept, Dialect, Ontology, Role, Term};
use crate::translate::{add_denotation_axioms, dagger, TranslateError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SatError {
    #[error("type budget exceeded: more than {0} candidate types")]
    TypeBudget(u64),
    #[error("search budget exceeded after {0} steps")]
    StepBudget(u64),
    #[error("definite descriptions must be eliminated first (apply dagger)")]
    IotaPresent,
    #[error("more than 64 existential atoms for one role")]
    TooManyRoleAtoms,
    #[error("dual-domain constructs have no partial-interpretation semantics")]
    DualDomainConstruct,
    #[error("normalize: {0}")]
    Normalize(#[from] NormalizeError),
    #[error("translate: {0}")]
    Translate(#[from] TranslateError),
}

/// Budgets for the type machinery, overridable via `FREEDL_TYPE_BUDGET` and
/// `FREEDL_STEP_BUDGET`.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_types: u64,
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        let read = |var: &str, default: u64| {
            std::env::var(var)
                .ok()
                .and_then(|v| v.parse().ok())
                .unwrap_or(default)
        };
        Budget {
            max_types: read("FREEDL_TYPE_BUDGET", 1 << 20),
            max_steps: read("FREEDL_STEP_BUDGET", 200_000_000),
        }
    }
}

/// A type as a full valuation of the closure nodes, one bit per node.
pub type TypeBits = Vec<u64>;

pub fn bit(bits: &TypeBits, idx: usize) -> bool {
    bits[idx / 64] >> (idx % 64) & 1 == 1
}

fn set_bit(bits: &mut TypeBits, idx: usize, v: bool) {
    if v {
        bits[idx / 64] |= 1 << (idx % 64);
    } else {
        bits[idx / 64] &= !(1 << (idx % 64));
    }
}

#[derive(Debug, Clone)]
enum NodeKind {
    ConstTrue,
    ConstFalse,
    /// concept name, individual nominal, or existential restriction
    Atom,
    /// iota nominal: an atom with the local rule `atom implies body`
    IotaAtom { body: usize },
    /// universal-role existential: an atom with `body implies atom`
    UAtom { body: usize },
    NotOf(usize),
    AndOf(Vec<usize>),
}

/// The closure of a concept set: subconcepts indexed so that children
/// precede parents, with boolean structure separated from decision atoms.
#[derive(Debug, Clone)]
pub struct Closure {
    nodes: Vec<Concept>,
    kinds: Vec<NodeKind>,
    index: BTreeMap<Concept, usize>,
    atoms: Vec<usize>,
}

impl Closure {
    pub fn build(concepts: &[Concept], allow_iota: bool) -> Result<Closure, SatError> {
        let mut cl = Closure {
            nodes: Vec::new(),
            kinds: Vec::new(),
            index: BTreeMap::new(),
            atoms: Vec::new(),
        };
        cl.insert(&Concept::Top)?;
        for c in concepts {
            cl.insert_checked(c, allow_iota)?;
        }
        Ok(cl)
    }

    fn insert_checked(&mut self, c: &Concept, allow_iota: bool) -> Result<usize, SatError> {
        if !allow_iota && c.contains_iota() {
            return Err(SatError::IotaPresent);
        }
        self.insert(c)
    }

    fn insert(&mut self, c: &Concept) -> Result<usize, SatError> {
        if let Some(&i) = self.index.get(c) {
            return Ok(i);
        }
        let kind = match c {
            Concept::Top => NodeKind::ConstTrue,
            Concept::Bot => NodeKind::ConstFalse,
            Concept::ExistenceTop => return Err(SatError::DualDomainConstruct),
            Concept::Name(_) | Concept::Nominal(Term::Individual(_)) => NodeKind::Atom,
            Concept::Nominal(Term::Iota(body)) => {
                let b = self.insert(body)?;
                NodeKind::IotaAtom { body: b }
            }
            Concept::Not(d) => NodeKind::NotOf(self.insert(d)?),
            Concept::And(cs) => {
                let mut parts = Vec::new();
                for d in cs {
                    parts.push(self.insert(d)?);
                }
                NodeKind::AndOf(parts)
            }
            Concept::Exists(Role::Universal, d) => {
                let b = self.insert(d)?;
                NodeKind::UAtom { body: b }
            }
            Concept::Exists(Role::Named(_), d) => {
                self.insert(d)?;
                NodeKind::Atom
            }
        };
        let i = self.nodes.len();
        self.nodes.push(c.clone());
        self.kinds.push(kind.clone());
        self.index.insert(c.clone(), i);
        if matches!(
            kind,
            NodeKind::Atom | NodeKind::IotaAtom { .. } | NodeKind::UAtom { .. }
        ) {
            self.atoms.push(i);
        }
        Ok(i)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Concept] {
        &self.nodes
    }

    pub fn node_index(&self, c: &Concept) -> Option<usize> {
        self.index.get(c).copied()
    }

    fn blocks(&self) -> usize {
        self.nodes.len().div_ceil(64)
    }

    /// Enumerates all boolean-consistent full valuations respecting the
    /// given CI constraints (pairs of node indices, lhs implies rhs).
    pub fn enumerate_types(
        &self,
        cis: &[(usize, usize)],
        budget: &Budget,
    ) -> Result<Vec<TypeBits>, SatError> {
        let mut vals: Vec<Option<bool>> = vec![None; self.nodes.len()];
        self.propagate(&mut vals);
        if !self.locally_consistent(&vals, cis) {
            return Ok(Vec::new());
        }
        let mut out: Vec<TypeBits> = Vec::new();
        let mut steps: u64 = 0;
        self.enumerate_rec(0, &mut vals, cis, budget, &mut out, &mut steps)?;
        Ok(out)
    }

    fn propagate(&self, vals: &mut [Option<bool>]) {
        for i in 0..self.nodes.len() {
            match &self.kinds[i] {
                NodeKind::ConstTrue => vals[i] = Some(true),
                NodeKind::ConstFalse => vals[i] = Some(false),
                NodeKind::Atom | NodeKind::IotaAtom { .. } | NodeKind::UAtom { .. } => {}
                NodeKind::NotOf(d) => vals[i] = vals[*d].map(|b| !b),
                NodeKind::AndOf(parts) => {
                    let mut v = Some(true);
                    for p in parts {
                        match vals[*p] {
                            Some(false) => {
                                v = Some(false);
                                break;
                            }
                            None => v = None,
                            Some(true) => {}
                        }
                    }
                    vals[i] = v;
                }
            }
        }
    }

    fn locally_consistent(&self, vals: &[Option<bool>], cis: &[(usize, usize)]) -> bool {
        for (l, r) in cis {
            if vals[*l] == Some(true) && vals[*r] == Some(false) {
                return false;
            }
        }
        for &a in &self.atoms {
            match &self.kinds[a] {
                NodeKind::IotaAtom { body } => {
                    if vals[a] == Some(true) && vals[*body] == Some(false) {
                        return false;
                    }
                }
                NodeKind::UAtom { body } => {
                    if vals[*body] == Some(true) && vals[a] == Some(false) {
                        return false;
                    }
                }
                _ => {}
            }
        }
        true
    }

    fn enumerate_rec(
        &self,
        atom_i: usize,
        vals: &mut Vec<Option<bool>>,
        cis: &[(usize, usize)],
        budget: &Budget,
        out: &mut Vec<TypeBits>,
        steps: &mut u64,
    ) -> Result<(), SatError> {
        *steps += 1;
        if *steps > budget.max_steps {
            return Err(SatError::StepBudget(*steps));
        }
        if atom_i == self.atoms.len() {
            let mut bits = vec![0u64; self.blocks()];
            for (i, v) in vals.iter().enumerate() {
                set_bit(&mut bits, i, v.expect("fully assigned"));
            }
            out.push(bits);
            if out.len() as u64 > budget.max_types {
                return Err(SatError::TypeBudget(budget.max_types));
            }
            return Ok(());
        }
        let a = self.atoms[atom_i];
        for v in [false, true] {
            vals[a] = Some(v);
            self.propagate(vals);
            if self.locally_consistent(vals, cis) {
                self.enumerate_rec(atom_i + 1, vals, cis, budget, out, steps)?;
            }
        }
        vals[a] = None;
        self.propagate(vals);
        Ok(())
    }
}

/// The closure and its boolean-consistent types, shared by the decision
/// procedure and the mosaic elimination.
pub struct TypeSet {
    pub closure: Closure,
    pub types: Vec<TypeBits>,
}

impl TypeSet {
    /// All types over the closure of the given concepts, with no ontology
    /// constraints built in.
    pub fn over_concepts(
        concepts: &[Concept],
        allow_iota: bool,
        budget: &Budget,
    ) -> Result<TypeSet, SatError> {
        let closure = Closure::build(concepts, allow_iota)?;
        let types = closure.enumerate_types(&[], budget)?;
        Ok(TypeSet { closure, types })
    }
}

// ---------------------------------------------------------------------------
// The decision procedure
// ---------------------------------------------------------------------------

struct RoleAtoms {
    /// (atom node index, filler node index) per existential atom of a role
    atoms: Vec<(usize, usize)>,
}

struct Machine {
    closure: Closure,
    types: Vec<TypeBits>,
    /// per role name, its existential atoms
    roles: Vec<(String, RoleAtoms)>,
    /// universal-role atoms as (atom, filler) pairs
    u_atoms: Vec<(usize, usize)>,
    /// individual-nominal atoms as (atom, name)
    nominal_atoms: Vec<(usize, String)>,
    steps: u64,
    budget: Budget,
}

impl Machine {
    fn build(o: &Ontology, budget: Budget) -> Result<Machine, SatError> {
        let mut concepts = Vec::new();
        for a in &o.axioms {
            if let Axiom::Ci(l, r) = a {
                concepts.push(l.clone());
                concepts.push(r.clone());
            }
        }
        let closure = Closure::build(&concepts, false)?;
        let mut cis = Vec::new();
        for a in &o.axioms {
            if let Axiom::Ci(l, r) = a {
                cis.push((
                    closure.node_index(l).expect("lhs in closure"),
                    closure.node_index(r).expect("rhs in closure"),
                ));
            }
        }
        let types = closure.enumerate_types(&cis, &budget)?;

        let mut roles: BTreeMap<String, RoleAtoms> = BTreeMap::new();
        let mut u_atoms = Vec::new();
        let mut nominal_atoms = Vec::new();
        for (i, c) in closure.nodes.iter().enumerate() {
            match c {
                Concept::Exists(Role::Named(r), d) => {
                    let filler = closure.node_index(d).expect("filler in closure");
                    roles
                        .entry(r.clone())
                        .or_insert_with(|| RoleAtoms { atoms: Vec::new() })
                        .atoms
                        .push((i, filler));
                }
                Concept::Exists(Role::Universal, d) => {
                    let filler = closure.node_index(d).expect("filler in closure");
                    u_atoms.push((i, filler));
                }
                Concept::Nominal(Term::Individual(a)) => {
                    nominal_atoms.push((i, a.clone()));
                }
                _ => {}
            }
        }
        for ra in roles.values() {
            if ra.atoms.len() > 64 {
                return Err(SatError::TooManyRoleAtoms);
            }
        }
        Ok(Machine {
            closure,
            types,
            roles: roles.into_iter().collect(),
            u_atoms,
            nominal_atoms,
            steps: 0,
            budget,
        })
    }

    fn step(&mut self) -> Result<(), SatError> {
        self.steps += 1;
        if self.steps > self.budget.max_steps {
            return Err(SatError::StepBudget(self.steps));
        }
        Ok(())
    }

    /// Per-role masks: for each type, which existential atoms are negated
    /// (no such successor allowed) and which fillers it satisfies.
    fn role_masks(&self, role: usize) -> (Vec<u64>, Vec<u64>) {
        let ra = &self.roles[role].1;
        let mut neg = vec![0u64; self.types.len()];
        let mut sat = vec![0u64; self.types.len()];
        for (ti, t) in self.types.iter().enumerate() {
            for (k, (atom, filler)) in ra.atoms.iter().enumerate() {
                if !bit(t, *atom) {
                    neg[ti] |= 1 << k;
                }
                if bit(t, *filler) {
                    sat[ti] |= 1 << k;
                }
            }
        }
        (neg, sat)
    }

    /// Greatest set of types (within `alive`) whose existential obligations
    /// are all witnessable; pinned types must survive or the whole stage
    /// fails.
    fn eliminate(
        &mut self,
        alive: &mut [bool],
        members: &[usize],
        pinned: &[bool],
    ) -> Result<bool, SatError> {
        let per_role: Vec<(Vec<u64>, Vec<u64>)> =
            (0..self.roles.len()).map(|r| self.role_masks(r)).collect();
        loop {
            let mut changed = false;
            for &ti in members {
                if !alive[ti] {
                    continue;
                }
                self.step()?;
                let mut ok = true;
                'obligations: for (ri, (_, ra)) in self.roles.iter().enumerate() {
                    let (neg, sat) = &per_role[ri];
                    for (k, (atom, _)) in ra.atoms.iter().enumerate() {
                        if !bit(&self.types[ti], *atom) {
                            continue;
                        }
                        // find an alive witness satisfying the filler and
                        // compatible with every negated obligation of ti
                        let found = members.iter().any(|&tj| {
                            alive[tj] && sat[tj] & (1 << k) != 0 && sat[tj] & neg[ti] == 0
                        });
                        if !found {
                            ok = false;
                            break 'obligations;
                        }
                    }
                }
                if ok {
                    continue;
                }
                if pinned[ti] {
                    return Ok(false);
                }
                alive[ti] = false;
                changed = true;
            }
            if !changed {
                break;
            }
        }
        // universal-role witnesses must exist among the survivors
        for &(atom, filler) in &self.u_atoms {
            let requires = members.iter().any(|&ti| alive[ti] && bit(&self.types[ti], atom));
            if requires {
                let witnessed = members
                    .iter()
                    .any(|&ti| alive[ti] && bit(&self.types[ti], filler));
                if !witnessed {
                    if members.iter().any(|&ti| alive[ti] && pinned[ti]) {
                        return Ok(false);
                    }
                    for &ti in members {
                        alive[ti] = false;
                    }
                    return Ok(true);
                }
            }
        }
        Ok(true)
    }

    fn u_signature(&self, t: &TypeBits) -> u64 {
        let mut sig = 0u64;
        for (k, (atom, _)) in self.u_atoms.iter().enumerate() {
            if bit(t, *atom) {
                sig |= 1 << k;
            }
        }
        sig
    }

    fn run(&mut self) -> Result<bool, SatError> {
        if self.u_atoms.len() > 64 {
            return Err(SatError::TooManyRoleAtoms);
        }
        // group types by universal-role signature
        let mut groups: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (ti, t) in self.types.iter().enumerate() {
            groups.entry(self.u_signature(t)).or_default().push(ti);
        }
        let groups: Vec<Vec<usize>> = groups.into_values().collect();
        for members in groups {
            let mut alive = vec![false; self.types.len()];
            for &ti in &members {
                alive[ti] = true;
            }
            let pinned = vec![false; self.types.len()];
            if !self.eliminate(&mut alive, &members, &pinned)? {
                continue;
            }
            if !members.iter().any(|&ti| alive[ti]) {
                continue;
            }
            if self.assign_nominals(&members, &alive)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Searches an assignment of each nominal to exactly one surviving
    /// type, consistent with the nominal atoms of the chosen types, such
    /// that pinning the chosen types still passes elimination.
    fn assign_nominals(&mut self, members: &[usize], alive: &[bool]) -> Result<bool, SatError> {
        if self.nominal_atoms.is_empty() {
            return Ok(true);
        }
        let nominals: Vec<usize> = self.nominal_atoms.iter().map(|(a, _)| *a).collect();
        let candidates: Vec<Vec<usize>> = nominals
            .iter()
            .map(|&atom| {
                members
                    .iter()
                    .copied()
                    .filter(|&ti| alive[ti] && bit(&self.types[ti], atom))
                    .collect()
            })
            .collect();
        if candidates.iter().any(|c| c.is_empty()) {
            return Ok(false);
        }
        let mut assignment: Vec<Option<usize>> = vec![None; nominals.len()];
        self.assign_rec(0, &mut assignment, &candidates, &nominals, members, alive)
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_rec(
        &mut self,
        i: usize,
        assignment: &mut Vec<Option<usize>>,
        candidates: &[Vec<usize>],
        nominals: &[usize],
        members: &[usize],
        alive: &[bool],
    ) -> Result<bool, SatError> {
        self.step()?;
        if i == nominals.len() {
            return self.check_assignment(assignment, nominals, members, alive);
        }
        if assignment[i].is_some() {
            return self.assign_rec(i + 1, assignment, candidates, nominals, members, alive);
        }
        'candidates: for &ti in &candidates[i] {
            // choosing ti for nominal i forces every nominal whose atom is
            // true in ti onto ti, and forbids ti for all others
            let mut forced = Vec::new();
            for (j, &atom_j) in nominals.iter().enumerate() {
                let has_j = bit(&self.types[ti], atom_j);
                match (has_j, assignment[j]) {
                    (true, Some(t)) if t != ti => continue 'candidates,
                    (true, None) => {
                        assignment[j] = Some(ti);
                        forced.push(j);
                    }
                    (false, Some(t)) if t == ti => {
                        for &f in &forced {
                            assignment[f] = None;
                        }
                        continue 'candidates;
                    }
                    _ => {}
                }
            }
            let ok = self.assign_rec(i + 1, assignment, candidates, nominals, members, alive)?;
            if ok {
                return Ok(true);
            }
            for &f in &forced {
                assignment[f] = None;
            }
        }
        Ok(false)
    }

    fn check_assignment(
        &mut self,
        assignment: &[Option<usize>],
        nominals: &[usize],
        members: &[usize],
        alive: &[bool],
    ) -> Result<bool, SatError> {
        // final survivor set: the chosen named types plus all plain types;
        // types carrying an unchosen nominal cannot be instantiated
        let mut final_alive = vec![false; self.types.len()];
        let mut pinned = vec![false; self.types.len()];
        for &ti in members {
            if !alive[ti] {
                continue;
            }
            let named_here = nominals.iter().any(|&a| bit(&self.types[ti], a));
            if !named_here {
                final_alive[ti] = true;
            }
        }
        for &choice in assignment {
            let ti = choice.expect("complete assignment");
            final_alive[ti] = true;
            pinned[ti] = true;
        }
        let mut scratch = final_alive;
        if !self.eliminate(&mut scratch, members, &pinned)? {
            return Ok(false);
        }
        Ok(members.iter().any(|&ti| scratch[ti]))
    }
}

/// Satisfiability of a plain ALCOu ontology on total interpretations.
pub fn alcou_total_sat(o: &Ontology) -> Result<bool, SatError> {
    alcou_total_sat_with(o, Budget::default())
}

pub fn alcou_total_sat_with(o: &Ontology, budget: Budget) -> Result<bool, SatError> {
    let o = crate::normalize::eliminate_assertions(o)?;
    let mut m = Machine::build(&o, budget)?;
    m.run()
}

/// Interpretation mode for satisfiability and entailment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Partial,
    Total,
}

/// Satisfiability of an ALCOu-with-iota ontology, on partial or total
/// interpretations, via assertion elimination, normal form, and iota
/// elimination.
pub fn alcouiota_sat(o: &Ontology, mode: Mode) -> Result<bool, SatError> {
    alcouiota_sat_with(o, mode, Budget::default())
}

pub fn alcouiota_sat_with(o: &Ontology, mode: Mode, budget: Budget) -> Result<bool, SatError> {
    let mut o = o.clone();
    if o.dialect == Dialect::Elou {
        o.dialect = Dialect::Alcou;
    }
    let o = crate::normalize::eliminate_assertions(&o)?;
    let o = match mode {
        Mode::Total => add_denotation_axioms(&o),
        Mode::Partial => o,
    };
    let o = crate::normalize::alco_normal_form(&o)?;
    let o = dagger(&o)?;
    let mut m = Machine::build(&o, budget)?;
    m.run()
}

/// Entailment of a CI on partial interpretations, decided as
/// unsatisfiability of the ontology plus a witness of the negation.
pub fn alcouiota_entail(o: &Ontology, lhs: &Concept, rhs: &Concept) -> Result<bool, SatError> {
    alcouiota_entail_with(o, lhs, rhs, Budget::default())
}

pub fn alcouiota_entail_with(
    o: &Ontology,
    lhs: &Concept,
    rhs: &Concept,
    budget: Budget,
) -> Result<bool, SatError> {
    let mut axioms = o.axioms.clone();
    axioms.push(Axiom::Ci(
        Concept::Top,
        Concept::exists(
            Role::Universal,
            Concept::and(vec![lhs.clone(), Concept::not(rhs.clone())]),
        ),
    ));
    let with_witness = Ontology::new(Dialect::Alcou, axioms);
    Ok(!alcouiota_sat_with(&with_witness, Mode::Partial, budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_concept, parse_ontology};

    fn ont(text: &str) -> Ontology {
        parse_ontology(text, Dialect::Alcou).unwrap()
    }

    #[test]
    fn empty_and_contradiction() {
        assert!(alcou_total_sat(&ont("")).unwrap());
        assert!(!alcou_total_sat(&ont("A sub bot. top sub some u.A.")).unwrap());
    }

    #[test]
    fn iota_rejected_without_dagger() {
        let o = ont("{iota A} sub B.");
        assert!(matches!(
            alcou_total_sat(&o).unwrap_err(),
            SatError::IotaPresent
        ));
    }

    #[test]
    fn basic_alc_reasoning() {
        // A nonempty, A sub some r.B, B sub bot: unsat
        assert!(!alcou_total_sat(&ont(
            "top sub some u.A. A sub some r.B. B sub bot."
        ))
        .unwrap());
        assert!(alcou_total_sat(&ont("top sub some u.A. A sub some r.B.")).unwrap());
        // propositional: A sub B, A sub not B, A nonempty
        assert!(!alcou_total_sat(&ont(
            "A sub B. A sub not B. top sub some u.A."
        ))
        .unwrap());
    }

    #[test]
    fn nominal_uniqueness_on_total() {
        // {a} is a singleton on total interpretations: A and B both equal
        // to {a} forces A = B
        let o = ont("A sub {a}. {a} sub A. B sub {a}. {a} sub B. top sub some u.(A and not B).");
        assert!(!alcou_total_sat(&o).unwrap());
        // but two nominals may coincide
        assert!(alcou_total_sat(&ont("{a} sub B. {b} sub B. top sub some u.{a}.")).unwrap());
        // forcing a into two disjoint concepts fails
        let o = ont("{a} sub A. {a} sub B. A sub not B.");
        assert!(!alcou_total_sat(&o).unwrap());
    }

    #[test]
    fn forall_constraints_respected() {
        // a in all r.bot but needs an r-successor
        let o = ont("{a} sub all r.bot. {a} sub some r.top.");
        assert!(!alcou_total_sat(&o).unwrap());
        let o = ont("{a} sub all r.B. {a} sub some r.not B.");
        assert!(!alcou_total_sat(&o).unwrap());
        let o = ont("{a} sub all r.B. {a} sub some r.B.");
        assert!(alcou_total_sat(&o).unwrap());
    }

    #[test]
    fn alcouiota_sat_examples() {
        // top sub {iota A}: the singleton-domain model with A = domain
        let o = parse_ontology("top sub {iota A}.", Dialect::Alcou).unwrap();
        assert!(alcouiota_sat(&o, Mode::Partial).unwrap());
        // {iota A} nonempty forces |A| = 1; A sub bot contradicts
        let o = parse_ontology(
            "top sub some u.{iota A}. A sub bot.",
            Dialect::Alcou,
        )
        .unwrap();
        assert!(!alcouiota_sat(&o, Mode::Partial).unwrap());
        // non-denoting name is fine on partial, fatal on total
        let o = parse_ontology("{kr19} sub bot.", Dialect::Alcou).unwrap();
        assert!(alcouiota_sat(&o, Mode::Partial).unwrap());
        assert!(!alcouiota_sat(&o, Mode::Total).unwrap());
    }

    #[test]
    fn entailment_basics() {
        let o = ont("A sub B.");
        assert!(alcouiota_entail(&o, &parse_concept("A").unwrap(), &parse_concept("B").unwrap())
            .unwrap());
        assert!(
            !alcouiota_entail(&o, &parse_concept("B").unwrap(), &parse_concept("A").unwrap())
                .unwrap()
        );
        assert!(alcouiota_entail(
            &o,
            &parse_concept("top").unwrap(),
            &parse_concept("top").unwrap()
        )
        .unwrap());
    }

    #[test]
    fn iota_entailments() {
        // {a} sub A plus |A| <= 1 entails A sub {a}... only with a denoting;
        // here: {iota A} equiv A when A is a singleton
        let o = parse_ontology("{a} sub A. A sub {a}.", Dialect::Alcou).unwrap();
        assert!(alcouiota_entail(
            &o,
            &parse_concept("{iota A}").unwrap(),
            &parse_concept("A").unwrap()
        )
        .unwrap());
        // A sub {iota A} says A has at most one element
        let o = parse_ontology("A sub {iota A}.", Dialect::Alcou).unwrap();
        assert!(alcouiota_entail(
            &o,
            &parse_concept("some u.(A and not {iota A})").unwrap(),
            &parse_concept("bot").unwrap()
        )
        .unwrap());
    }
}
