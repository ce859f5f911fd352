//! Reasoning library for free description logics with definite
//! descriptions, interpreted over partial interpretations: parsing, model
//! checking, normal forms, satisfiability and entailment, bisimulation and
//! simulation checking, referring-expression existence, and the dual-domain
//! semantics with its reduction to partial interpretations.

pub mod alcsat;
pub mod fol;
pub mod gen;
pub mod interp;
pub mod normalize;
pub mod oracle;
pub mod syntax;
pub mod translate;
