//! Seeded random generators and systematic concept enumerators for the
//! property-test suites.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::interp::PartialInterpretation;
use crate::syntax::{subconcepts_of_ontology, Axiom, Concept, Dialect, Ontology, Role, Term};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

/// Vocabulary bounds for generated ontologies.
#[derive(Debug, Clone)]
pub struct Vocab {
    pub concepts: Vec<String>,
    pub roles: Vec<String>,
    pub individuals: Vec<String>,
}

impl Vocab {
    pub fn small(n_concepts: usize, n_roles: usize, n_inds: usize) -> Vocab {
        Vocab {
            concepts: (0..n_concepts).map(|i| format!("A{i}")).collect(),
            roles: (0..n_roles).map(|i| format!("r{i}")).collect(),
            individuals: (0..n_inds).map(|i| format!("a{i}")).collect(),
        }
    }
}

/// Random nominal-free ALC concept with the universal role.
pub fn random_alcu_concept(rng: &mut ChaCha8Rng, v: &Vocab, depth: usize) -> Concept {
    let leaf = depth == 0 || rng.gen_bool(0.4);
    if leaf {
        match rng.gen_range(0..6) {
            0 => Concept::Top,
            1 => Concept::Bot,
            _ => Concept::Name(pick(rng, &v.concepts).clone()),
        }
    } else {
        match rng.gen_range(0..4) {
            0 => Concept::not(random_alcu_concept(rng, v, depth - 1)),
            1 => Concept::and(vec![
                random_alcu_concept(rng, v, depth - 1),
                random_alcu_concept(rng, v, depth - 1),
            ]),
            2 => Concept::exists(
                Role::Named(pick(rng, &v.roles).clone()),
                random_alcu_concept(rng, v, depth - 1),
            ),
            _ => Concept::exists(Role::Universal, random_alcu_concept(rng, v, depth - 1)),
        }
    }
}

fn random_term(rng: &mut ChaCha8Rng, v: &Vocab) -> Term {
    if rng.gen_bool(0.5) {
        Term::ind(pick(rng, &v.individuals))
    } else {
        Term::iota(Concept::Name(pick(rng, &v.concepts).clone()))
    }
}

/// Random ALCOu-with-iota ontology in normal form with a bounded closure.
pub fn random_alco_nf_ontology(
    rng: &mut ChaCha8Rng,
    v: &Vocab,
    max_axioms: usize,
    max_closure: usize,
) -> Ontology {
    loop {
        let n = rng.gen_range(1..=max_axioms);
        let mut axioms = Vec::new();
        for _ in 0..n {
            let ax = match rng.gen_range(0..4) {
                0 | 1 => Axiom::Ci(
                    random_alcu_concept(rng, v, 2),
                    random_alcu_concept(rng, v, 2),
                ),
                2 => Axiom::Ci(
                    Concept::Nominal(random_term(rng, v)),
                    Concept::Name(pick(rng, &v.concepts).clone()),
                ),
                _ => Axiom::Ci(
                    Concept::Name(pick(rng, &v.concepts).clone()),
                    Concept::Nominal(random_term(rng, v)),
                ),
            };
            axioms.push(ax);
        }
        let o = Ontology::new(Dialect::Alcou, axioms);
        if subconcepts_of_ontology(&o).len() <= max_closure {
            return o;
        }
    }
}

fn elo_bc(rng: &mut ChaCha8Rng, v: &Vocab) -> Concept {
    if rng.gen_bool(0.15) {
        Concept::Top
    } else {
        Concept::Name(pick(rng, &v.concepts).clone())
    }
}

fn elo_target(rng: &mut ChaCha8Rng, v: &Vocab) -> Concept {
    match rng.gen_range(0..10) {
        0 => Concept::Top,
        1 => Concept::Bot,
        _ => Concept::Name(pick(rng, &v.concepts).clone()),
    }
}

fn elo_role(rng: &mut ChaCha8Rng, v: &Vocab) -> Role {
    if rng.gen_bool(0.2) {
        Role::Universal
    } else {
        Role::Named(pick(rng, &v.roles).clone())
    }
}

/// Random ELOu-with-iota ontology already in normal form, with at most
/// `max_iota` distinct iota nominals.
pub fn random_elo_nf_ontology(
    rng: &mut ChaCha8Rng,
    v: &Vocab,
    max_axioms: usize,
    max_iota: usize,
) -> Ontology {
    let iota_pool: Vec<Concept> = v
        .concepts
        .iter()
        .take(max_iota)
        .map(|a| Concept::nominal_iota(Concept::Name(a.clone())))
        .collect();
    let nominal = |rng: &mut ChaCha8Rng| -> Concept {
        if !iota_pool.is_empty() && rng.gen_bool(0.4) {
            pick(rng, &iota_pool).clone()
        } else {
            Concept::nominal_ind(pick(rng, &v.individuals))
        }
    };
    let n = rng.gen_range(1..=max_axioms);
    let mut axioms = Vec::new();
    for _ in 0..n {
        let ax = match rng.gen_range(0..6) {
            0 => Axiom::Ci(
                Concept::and(vec![elo_bc(rng, v), elo_bc(rng, v)]),
                elo_target(rng, v),
            ),
            1 => Axiom::Ci(
                Concept::exists(elo_role(rng, v), elo_bc(rng, v)),
                elo_target(rng, v),
            ),
            2 => Axiom::Ci(
                elo_bc(rng, v),
                Concept::exists(elo_role(rng, v), elo_bc(rng, v)),
            ),
            3 => Axiom::Ci(nominal(rng), elo_target(rng, v)),
            4 => Axiom::Ci(elo_bc(rng, v), nominal(rng)),
            _ => Axiom::Ci(elo_bc(rng, v), elo_target(rng, v)),
        };
        axioms.push(ax);
    }
    let mut o = Ontology::new(Dialect::Elou, axioms);
    crate::normalize::add_iota_companions(&mut o);
    o
}

/// Random ALCO-star concept (no universal role, `etop` allowed).
pub fn random_star_concept(rng: &mut ChaCha8Rng, v: &Vocab, depth: usize) -> Concept {
    let leaf = depth == 0 || rng.gen_bool(0.45);
    if leaf {
        match rng.gen_range(0..7) {
            0 => Concept::Top,
            1 => Concept::Bot,
            2 => Concept::ExistenceTop,
            3 => Concept::nominal_ind(pick(rng, &v.individuals)),
            _ => Concept::Name(pick(rng, &v.concepts).clone()),
        }
    } else {
        match rng.gen_range(0..4) {
            0 => Concept::not(random_star_concept(rng, v, depth - 1)),
            1 => Concept::and(vec![
                random_star_concept(rng, v, depth - 1),
                random_star_concept(rng, v, depth - 1),
            ]),
            2 => Concept::exists(
                Role::Named(pick(rng, &v.roles).clone()),
                random_star_concept(rng, v, depth - 1),
            ),
            _ => Concept::nominal_iota(random_star_concept(rng, v, depth - 1)),
        }
    }
}

fn random_star_term(rng: &mut ChaCha8Rng, v: &Vocab, depth: usize) -> Term {
    if rng.gen_bool(0.55) {
        Term::ind(pick(rng, &v.individuals))
    } else {
        Term::iota(random_star_concept(rng, v, depth))
    }
}

fn random_star_atom(rng: &mut ChaCha8Rng, v: &Vocab) -> Axiom {
    match rng.gen_range(0..4) {
        0 => Axiom::ConceptAssertion(random_star_concept(rng, v, 1), random_star_term(rng, v, 1)),
        1 => Axiom::RoleAssertion(
            pick(rng, &v.roles).clone(),
            random_star_term(rng, v, 1),
            random_star_term(rng, v, 1),
        ),
        2 => Axiom::TermEquality(random_star_term(rng, v, 1), random_star_term(rng, v, 1)),
        _ => Axiom::Ci(
            random_star_concept(rng, v, 1),
            random_star_concept(rng, v, 1),
        ),
    }
}

/// Random ALCO-star formula of bounded size.
pub fn random_star_formula(rng: &mut ChaCha8Rng, v: &Vocab, size: usize) -> Axiom {
    if size <= 2 {
        random_star_atom(rng, v)
    } else {
        match rng.gen_range(0..3) {
            0 => Axiom::negated(random_star_formula(rng, v, size - 1)),
            1 => {
                let l = size / 2;
                Axiom::conjunction(vec![
                    random_star_formula(rng, v, l),
                    random_star_formula(rng, v, size - l),
                ])
            }
            _ => random_star_atom(rng, v),
        }
    }
}

/// Random partial interpretation over the vocabulary.
pub fn random_interpretation(
    rng: &mut ChaCha8Rng,
    v: &Vocab,
    max_domain: usize,
) -> PartialInterpretation {
    let d = rng.gen_range(1..=max_domain);
    let elems: Vec<String> = (0..d).map(|i| format!("e{i}")).collect();
    let mut i = PartialInterpretation::new(elems.iter().cloned()).unwrap();
    for c in &v.concepts {
        let ext: Vec<String> = elems.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        i.set_concept(c, ext);
    }
    for r in &v.roles {
        for x in &elems {
            for y in &elems {
                if rng.gen_bool(0.3) {
                    i.add_role_pair(r, x, y);
                }
            }
        }
    }
    for a in &v.individuals {
        if rng.gen_bool(0.7) {
            let e = pick(rng, &elems).clone();
            i.set_individual(a, &e);
        }
    }
    i
}

/// Signature used by the concept enumerators.
#[derive(Debug, Clone, Default)]
pub struct EnumSig {
    pub concepts: Vec<String>,
    pub roles: Vec<String>,
    pub individuals: Vec<String>,
}

impl EnumSig {
    pub fn from_names(names: &std::collections::BTreeSet<String>, v: &Vocab) -> EnumSig {
        EnumSig {
            concepts: v
                .concepts
                .iter()
                .filter(|c| names.contains(*c))
                .cloned()
                .collect(),
            roles: v.roles.iter().filter(|r| names.contains(*r)).cloned().collect(),
            individuals: v
                .individuals
                .iter()
                .filter(|a| names.contains(*a))
                .cloned()
                .collect(),
        }
    }
}

/// Systematically enumerates ALCOu-with-iota concepts over a signature up
/// to the given depth, with at most one iota nesting, capped at `limit`.
pub fn enumerate_alcou_concepts(
    sig: &EnumSig,
    depth: usize,
    limit: usize,
) -> Vec<Concept> {
    let mut atoms: Vec<Concept> = vec![Concept::Top];
    atoms.extend(sig.concepts.iter().map(|c| Concept::Name(c.clone())));
    atoms.extend(sig.individuals.iter().map(|a| Concept::nominal_ind(a)));

    let mut level: Vec<Concept> = atoms.clone();
    let mut all: Vec<Concept> = Vec::new();
    let mut push = |all: &mut Vec<Concept>, c: Concept| {
        if all.len() < limit && !all.contains(&c) {
            all.push(c);
        }
    };
    for c in &level {
        push(&mut all, c.clone());
        push(&mut all, Concept::not(c.clone()));
    }
    for _ in 0..depth {
        let mut next = Vec::new();
        for c in &level {
            for r in &sig.roles {
                next.push(Concept::exists(Role::named(r), c.clone()));
            }
            next.push(Concept::exists(Role::Universal, c.clone()));
            if !c.contains_iota() {
                next.push(Concept::nominal_iota(c.clone()));
            }
            next.push(Concept::not(c.clone()));
        }
        // binary conjunctions within the new level and with atoms
        let mut conjs = Vec::new();
        for (i, c) in next.iter().enumerate() {
            for a in &atoms {
                if c != a {
                    conjs.push(Concept::and(vec![c.clone(), a.clone()]));
                }
            }
            for d in next.iter().skip(i + 1) {
                conjs.push(Concept::and(vec![c.clone(), d.clone()]));
                if conjs.len() > 4 * limit {
                    break;
                }
            }
        }
        next.extend(conjs);
        for c in &next {
            push(&mut all, c.clone());
            push(&mut all, Concept::not(c.clone()));
        }
        level = next;
        if all.len() >= limit {
            break;
        }
    }
    all.truncate(limit);
    all
}

/// Systematically enumerates ELOu concepts (no negation, no iota) over a
/// signature up to the given depth, capped at `limit`.
pub fn enumerate_elou_concepts(sig: &EnumSig, depth: usize, limit: usize) -> Vec<Concept> {
    let mut atoms: Vec<Concept> = vec![Concept::Top];
    atoms.extend(sig.concepts.iter().map(|c| Concept::Name(c.clone())));
    atoms.extend(sig.individuals.iter().map(|a| Concept::nominal_ind(a)));

    let mut level = atoms.clone();
    let mut all: Vec<Concept> = Vec::new();
    let mut push = |all: &mut Vec<Concept>, c: Concept| {
        if all.len() < limit && !all.contains(&c) {
            all.push(c);
        }
    };
    for c in &level {
        push(&mut all, c.clone());
    }
    for _ in 0..depth {
        let mut next = Vec::new();
        for c in &level {
            for r in &sig.roles {
                next.push(Concept::exists(Role::named(r), c.clone()));
            }
            next.push(Concept::exists(Role::Universal, c.clone()));
        }
        for c in &level {
            for a in &atoms {
                if c != a {
                    next.push(Concept::and(vec![c.clone(), a.clone()]));
                }
            }
        }
        for c in &next {
            push(&mut all, c.clone());
        }
        level = next;
        if all.len() >= limit {
            break;
        }
    }
    all.truncate(limit);
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::validate_dialect;

    #[test]
    fn generated_ontologies_fit_their_dialects() {
        let mut r = rng(7);
        let v = Vocab::small(4, 2, 2);
        for _ in 0..50 {
            let o = random_alco_nf_ontology(&mut r, &v, 5, 10);
            assert!(validate_dialect(&o.axioms, Dialect::Alcou).is_ok());
            assert!(subconcepts_of_ontology(&o).len() <= 10);
            let o = random_elo_nf_ontology(&mut r, &v, 8, 2);
            assert!(validate_dialect(&o.axioms, Dialect::Elou).is_ok());
            crate::normalize::check_elo_normal_form(&o).unwrap();
        }
    }

    #[test]
    fn generated_formulas_are_dual_domain() {
        let mut r = rng(11);
        let v = Vocab::small(2, 1, 2);
        for _ in 0..50 {
            let f = random_star_formula(&mut r, &v, 8);
            assert!(validate_dialect(&[f], Dialect::AlcoiStar).is_ok());
        }
    }

    #[test]
    fn enumerators_produce_enough_concepts() {
        let sig = EnumSig {
            concepts: vec!["A".into(), "B".into()],
            roles: vec!["r".into(), "s".into()],
            individuals: vec!["a".into()],
        };
        let cs = enumerate_alcou_concepts(&sig, 2, 1500);
        assert!(cs.len() >= 1000, "got {}", cs.len());
        assert!(cs.iter().all(|c| c.depth() <= 2));
        let es = enumerate_elou_concepts(&sig, 2, 500);
        assert!(es.len() >= 100);
        assert!(es
            .iter()
            .all(|c| validate_dialect(&[Axiom::Ci(c.clone(), Concept::Top)], Dialect::Elou)
                .is_ok()));
    }
}
