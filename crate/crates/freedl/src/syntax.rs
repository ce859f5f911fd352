//! Abstract syntax, parser and pretty-printer for the three dialects.
//!
//! The surface syntax is a plain ASCII form: keywords `top bot etop not and
//! or implies some all sub equiv iota u`, braces for nominals, `.` as axiom
//! terminator and `#` line comments. Concept names start with an uppercase
//! letter or `_`, individual and role names with a lowercase letter. `u` is
//! reserved for the universal role.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type ConceptName = String;
pub type RoleName = String;
pub type IndName = String;

/// A term: an individual name or a definite description.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Individual(IndName),
    Iota(Box<Concept>),
}

impl Term {
    pub fn ind(name: &str) -> Term {
        Term::Individual(name.to_string())
    }

    pub fn iota(body: Concept) -> Term {
        Term::Iota(Box::new(body))
    }
}

/// A role: a role name or the universal role `u`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Named(RoleName),
    Universal,
}

impl Role {
    pub fn named(name: &str) -> Role {
        Role::Named(name.to_string())
    }
}

/// Concepts of the three dialects. `Or`, `Implies` and value restrictions
/// are desugared at parse time; `And` is kept n-ary and flattened.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Top,
    Bot,
    /// The existence concept of the dual-domain dialect.
    ExistenceTop,
    Name(ConceptName),
    Nominal(Term),
    Not(Box<Concept>),
    And(Vec<Concept>),
    Exists(Role, Box<Concept>),
}

impl Concept {
    pub fn name(n: &str) -> Concept {
        Concept::Name(n.to_string())
    }

    pub fn nominal_ind(n: &str) -> Concept {
        Concept::Nominal(Term::ind(n))
    }

    pub fn nominal_iota(body: Concept) -> Concept {
        Concept::Nominal(Term::iota(body))
    }

    pub fn not(c: Concept) -> Concept {
        Concept::Not(Box::new(c))
    }

    /// n-ary conjunction; nested conjunctions are flattened, order preserved.
    pub fn and(parts: Vec<Concept>) -> Concept {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Concept::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Concept::Top,
            1 => flat.into_iter().next().unwrap(),
            _ => Concept::And(flat),
        }
    }

    pub fn or(lhs: Concept, rhs: Concept) -> Concept {
        Concept::not(Concept::and(vec![Concept::not(lhs), Concept::not(rhs)]))
    }

    pub fn implies(lhs: Concept, rhs: Concept) -> Concept {
        Concept::not(Concept::and(vec![lhs, Concept::not(rhs)]))
    }

    pub fn exists(r: Role, c: Concept) -> Concept {
        Concept::Exists(r, Box::new(c))
    }

    pub fn forall(r: Role, c: Concept) -> Concept {
        Concept::not(Concept::exists(r, Concept::not(c)))
    }

    /// Disjunction of several concepts, right-nested, empty list is `bot`.
    pub fn or_of(parts: Vec<Concept>) -> Concept {
        let mut it = parts.into_iter().rev();
        match it.next() {
            None => Concept::Bot,
            Some(last) => it.fold(last, |acc, c| Concept::or(c, acc)),
        }
    }

    /// Nesting depth counting existential restrictions and iota bodies.
    pub fn depth(&self) -> usize {
        match self {
            Concept::Top | Concept::Bot | Concept::ExistenceTop | Concept::Name(_) => 0,
            Concept::Nominal(Term::Individual(_)) => 0,
            Concept::Nominal(Term::Iota(body)) => 1 + body.depth(),
            Concept::Not(c) => c.depth(),
            Concept::And(cs) => cs.iter().map(|c| c.depth()).max().unwrap_or(0),
            Concept::Exists(_, c) => 1 + c.depth(),
        }
    }

    /// Number of AST nodes, counting terms.
    pub fn size(&self) -> usize {
        match self {
            Concept::Top | Concept::Bot | Concept::ExistenceTop | Concept::Name(_) => 1,
            Concept::Nominal(Term::Individual(_)) => 1,
            Concept::Nominal(Term::Iota(body)) => 2 + body.size(),
            Concept::Not(c) => 1 + c.size(),
            Concept::And(cs) => 1 + cs.iter().map(|c| c.size()).sum::<usize>(),
            Concept::Exists(_, c) => 1 + c.size(),
        }
    }

    pub fn contains_iota(&self) -> bool {
        match self {
            Concept::Top | Concept::Bot | Concept::ExistenceTop | Concept::Name(_) => false,
            Concept::Nominal(Term::Individual(_)) => false,
            Concept::Nominal(Term::Iota(_)) => true,
            Concept::Not(c) => c.contains_iota(),
            Concept::And(cs) => cs.iter().any(|c| c.contains_iota()),
            Concept::Exists(_, c) => c.contains_iota(),
        }
    }

    pub fn contains_nominal(&self) -> bool {
        match self {
            Concept::Top | Concept::Bot | Concept::ExistenceTop | Concept::Name(_) => false,
            Concept::Nominal(_) => true,
            Concept::Not(c) => c.contains_nominal(),
            Concept::And(cs) => cs.iter().any(|c| c.contains_nominal()),
            Concept::Exists(_, c) => c.contains_nominal(),
        }
    }
}

/// Axioms. `TermEquality`, `NegatedFormula` and `Conjunction` are only legal
/// in the dual-domain dialect, where axioms double as formulas.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Ci(Concept, Concept),
    ConceptAssertion(Concept, Term),
    RoleAssertion(RoleName, Term, Term),
    TermEquality(Term, Term),
    NegatedFormula(Box<Axiom>),
    Conjunction(Vec<Axiom>),
}

impl Axiom {
    pub fn ci(lhs: Concept, rhs: Concept) -> Axiom {
        Axiom::Ci(lhs, rhs)
    }

    pub fn negated(f: Axiom) -> Axiom {
        Axiom::NegatedFormula(Box::new(f))
    }

    pub fn conjunction(parts: Vec<Axiom>) -> Axiom {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Axiom::Conjunction(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            1 => flat.into_iter().next().unwrap(),
            _ => Axiom::Conjunction(flat),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dialect {
    /// ELOu with definite descriptions: no negation, primitive top/bot.
    Elou,
    /// ALCOu with definite descriptions.
    Alcou,
    /// The dual-domain dialect: existence concept, equalities, formulas,
    /// but no universal role.
    AlcoiStar,
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dialect::Elou => write!(f, "elo"),
            Dialect::Alcou => write!(f, "alco"),
            Dialect::AlcoiStar => write!(f, "alco-star"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ontology {
    pub dialect: Dialect,
    pub axioms: Vec<Axiom>,
}

impl Ontology {
    pub fn new(dialect: Dialect, axioms: Vec<Axiom>) -> Ontology {
        Ontology { dialect, axioms }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub concepts: BTreeSet<ConceptName>,
    pub roles: BTreeSet<RoleName>,
    pub individuals: BTreeSet<IndName>,
}

impl Signature {
    pub fn union(mut self, other: Signature) -> Signature {
        self.concepts.extend(other.concepts);
        self.roles.extend(other.roles);
        self.individuals.extend(other.individuals);
        self
    }

    pub fn all_names(&self) -> BTreeSet<String> {
        let mut s: BTreeSet<String> = self.concepts.iter().cloned().collect();
        s.extend(self.roles.iter().cloned());
        s.extend(self.individuals.iter().cloned());
        s
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty() && self.roles.is_empty() && self.individuals.is_empty()
    }
}

/// Everything with a signature: ontologies, concepts, axioms, terms.
pub trait HasSignature {
    fn collect_signature(&self, sig: &mut Signature);

    fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        self.collect_signature(&mut sig);
        sig
    }
}

pub fn signature_of<T: HasSignature + ?Sized>(x: &T) -> Signature {
    x.signature()
}

impl HasSignature for Term {
    fn collect_signature(&self, sig: &mut Signature) {
        match self {
            Term::Individual(a) => {
                sig.individuals.insert(a.clone());
            }
            Term::Iota(body) => body.collect_signature(sig),
        }
    }
}

impl HasSignature for Concept {
    fn collect_signature(&self, sig: &mut Signature) {
        match self {
            Concept::Top | Concept::Bot | Concept::ExistenceTop => {}
            Concept::Name(n) => {
                sig.concepts.insert(n.clone());
            }
            Concept::Nominal(t) => t.collect_signature(sig),
            Concept::Not(c) => c.collect_signature(sig),
            Concept::And(cs) => cs.iter().for_each(|c| c.collect_signature(sig)),
            Concept::Exists(r, c) => {
                if let Role::Named(n) = r {
                    sig.roles.insert(n.clone());
                }
                c.collect_signature(sig);
            }
        }
    }
}

impl HasSignature for Axiom {
    fn collect_signature(&self, sig: &mut Signature) {
        match self {
            Axiom::Ci(l, r) => {
                l.collect_signature(sig);
                r.collect_signature(sig);
            }
            Axiom::ConceptAssertion(c, t) => {
                c.collect_signature(sig);
                t.collect_signature(sig);
            }
            Axiom::RoleAssertion(r, t1, t2) => {
                sig.roles.insert(r.clone());
                t1.collect_signature(sig);
                t2.collect_signature(sig);
            }
            Axiom::TermEquality(t1, t2) => {
                t1.collect_signature(sig);
                t2.collect_signature(sig);
            }
            Axiom::NegatedFormula(f) => f.collect_signature(sig),
            Axiom::Conjunction(fs) => fs.iter().for_each(|f| f.collect_signature(sig)),
        }
    }
}

impl HasSignature for Ontology {
    fn collect_signature(&self, sig: &mut Signature) {
        self.axioms.iter().for_each(|a| a.collect_signature(sig));
    }
}

fn collect_subconcepts(c: &Concept, out: &mut BTreeSet<Concept>) {
    out.insert(c.clone());
    match c {
        Concept::Top | Concept::Bot | Concept::ExistenceTop | Concept::Name(_) => {}
        Concept::Nominal(Term::Individual(_)) => {}
        Concept::Nominal(Term::Iota(body)) => collect_subconcepts(body, out),
        Concept::Not(d) => collect_subconcepts(d, out),
        Concept::And(cs) => cs.iter().for_each(|d| collect_subconcepts(d, out)),
        Concept::Exists(_, d) => collect_subconcepts(d, out),
    }
}

fn collect_term_subconcepts(t: &Term, out: &mut BTreeSet<Concept>) {
    if let Term::Iota(body) = t {
        collect_subconcepts(body, out);
    }
}

fn collect_axiom_subconcepts(a: &Axiom, out: &mut BTreeSet<Concept>) {
    match a {
        Axiom::Ci(l, r) => {
            collect_subconcepts(l, out);
            collect_subconcepts(r, out);
        }
        Axiom::ConceptAssertion(c, t) => {
            collect_subconcepts(c, out);
            collect_term_subconcepts(t, out);
        }
        Axiom::RoleAssertion(_, t1, t2) => {
            collect_term_subconcepts(t1, out);
            collect_term_subconcepts(t2, out);
        }
        Axiom::TermEquality(t1, t2) => {
            collect_term_subconcepts(t1, out);
            collect_term_subconcepts(t2, out);
        }
        Axiom::NegatedFormula(f) => collect_axiom_subconcepts(f, out),
        Axiom::Conjunction(fs) => fs.iter().for_each(|f| collect_axiom_subconcepts(f, out)),
    }
}

/// The set of all subconcepts of a concept, closed under subterms.
pub fn subconcepts(c: &Concept) -> BTreeSet<Concept> {
    let mut out = BTreeSet::new();
    collect_subconcepts(c, &mut out);
    out
}

/// `con(O)`: all subconcepts occurring in the ontology.
pub fn subconcepts_of_ontology(o: &Ontology) -> BTreeSet<Concept> {
    let mut out = BTreeSet::new();
    for a in &o.axioms {
        collect_axiom_subconcepts(a, &mut out);
    }
    out
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Individual(a) => write!(f, "{a}"),
            Term::Iota(body) => write!(f, "iota {body}"),
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Named(r) => write!(f, "{r}"),
            Role::Universal => write!(f, "u"),
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Top => write!(f, "top"),
            Concept::Bot => write!(f, "bot"),
            Concept::ExistenceTop => write!(f, "etop"),
            Concept::Name(n) => write!(f, "{n}"),
            Concept::Nominal(t) => write!(f, "{{{t}}}"),
            Concept::Not(c) => write!(f, "not {c}"),
            Concept::And(cs) => {
                // left-nested binary rendering; reparsing flattens back
                write!(f, "{}", render_and(cs))
            }
            Concept::Exists(r, c) => write!(f, "some {r}.{c}"),
        }
    }
}

fn render_and(cs: &[Concept]) -> String {
    let mut out = cs[0].to_string();
    for c in &cs[1..] {
        out = format!("({out} and {c})");
    }
    out
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Ci(l, r) => write!(f, "{l} sub {r}"),
            Axiom::ConceptAssertion(c, t) => write!(f, "{c}({t})"),
            Axiom::RoleAssertion(r, t1, t2) => write!(f, "{r}({t1},{t2})"),
            Axiom::TermEquality(t1, t2) => write!(f, "{t1} = {t2}"),
            Axiom::NegatedFormula(x) => write!(f, "not ({x})"),
            Axiom::Conjunction(fs) => {
                let mut out = fs[0].to_string();
                for x in &fs[1..] {
                    out = format!("({out} and {x})");
                }
                write!(f, "{out}")
            }
        }
    }
}

impl fmt::Display for Ontology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axioms {
            writeln!(f, "{a}.")?;
        }
        Ok(())
    }
}

/// Renders any displayable syntax value to its concrete text form.
pub fn render<T: fmt::Display>(x: &T) -> String {
    x.to_string()
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    KwTop,
    KwBot,
    KwEtop,
    KwNot,
    KwAnd,
    KwOr,
    KwImplies,
    KwSome,
    KwAll,
    KwSub,
    KwEquiv,
    KwIota,
    KwU,
    UpperIdent(String),
    LowerIdent(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Dot,
    Comma,
    Equals,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::KwTop => write!(f, "top"),
            Tok::KwBot => write!(f, "bot"),
            Tok::KwEtop => write!(f, "etop"),
            Tok::KwNot => write!(f, "not"),
            Tok::KwAnd => write!(f, "and"),
            Tok::KwOr => write!(f, "or"),
            Tok::KwImplies => write!(f, "implies"),
            Tok::KwSome => write!(f, "some"),
            Tok::KwAll => write!(f, "all"),
            Tok::KwSub => write!(f, "sub"),
            Tok::KwEquiv => write!(f, "equiv"),
            Tok::KwIota => write!(f, "iota"),
            Tok::KwU => write!(f, "u"),
            Tok::UpperIdent(s) | Tok::LowerIdent(s) => write!(f, "{s}"),
            Tok::LBrace => write!(f, "{{"),
            Tok::RBrace => write!(f, "}}"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::Dot => write!(f, "."),
            Tok::Comma => write!(f, ","),
            Tok::Equals => write!(f, "="),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: unexpected character `{ch}`")]
    BadChar { line: usize, col: usize, ch: char },
    #[error("{line}:{col}: expected {expected}, found `{found}`")]
    Expected {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("{line}:{col}: `u` is reserved for the universal role")]
    ReservedU { line: usize, col: usize },
    #[error("{line}:{col}: {construct} is not allowed in dialect {dialect}")]
    DialectViolation {
        line: usize,
        col: usize,
        construct: String,
        dialect: Dialect,
    },
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match ch {
            c if c.is_whitespace() => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            '#' => {
                for c in chars.by_ref() {
                    bump(c, &mut line, &mut col);
                    if c == '\n' {
                        break;
                    }
                }
            }
            '{' | '}' | '(' | ')' | '.' | ',' | '=' => {
                chars.next();
                bump(ch, &mut line, &mut col);
                let tok = match ch {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '.' => Tok::Dot,
                    ',' => Tok::Comma,
                    _ => Tok::Equals,
                };
                toks.push(Spanned {
                    tok,
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&c2) = chars.peek() {
                    if c2.is_ascii_alphanumeric() || c2 == '_' {
                        ident.push(c2);
                        chars.next();
                        bump(c2, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                let tok = match ident.as_str() {
                    "top" => Tok::KwTop,
                    "bot" => Tok::KwBot,
                    "etop" => Tok::KwEtop,
                    "not" => Tok::KwNot,
                    "and" => Tok::KwAnd,
                    "or" => Tok::KwOr,
                    "implies" => Tok::KwImplies,
                    "some" => Tok::KwSome,
                    "all" => Tok::KwAll,
                    "sub" => Tok::KwSub,
                    "equiv" => Tok::KwEquiv,
                    "iota" => Tok::KwIota,
                    "u" => Tok::KwU,
                    _ => {
                        let first = ident.chars().next().unwrap();
                        if first.is_ascii_uppercase() || first == '_' {
                            Tok::UpperIdent(ident)
                        } else {
                            Tok::LowerIdent(ident)
                        }
                    }
                };
                toks.push(Spanned {
                    tok,
                    line: tline,
                    col: tcol,
                });
            }
            c => {
                return Err(ParseError::BadChar {
                    line: tline,
                    col: tcol,
                    ch: c,
                })
            }
        }
    }
    toks.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(toks)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn peek2(&self) -> &Spanned {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<Spanned, ParseError> {
        let t = self.peek().clone();
        if &t.tok == tok {
            Ok(self.next())
        } else {
            Err(self.err_expected(what))
        }
    }

    fn err_expected(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError::Expected {
            line: t.line,
            col: t.col,
            expected: expected.to_string(),
            found: t.tok.to_string(),
        }
    }

    fn parse_role(&mut self) -> Result<Role, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::KwU => Ok(Role::Universal),
            Tok::LowerIdent(r) => Ok(Role::Named(r)),
            other => Err(ParseError::Expected {
                line: t.line,
                col: t.col,
                expected: "role name or `u`".to_string(),
                found: other.to_string(),
            }),
        }
    }

    fn parse_term(&mut self) -> Result<Term, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::LowerIdent(a) => Ok(Term::Individual(a)),
            Tok::KwIota => Ok(Term::Iota(Box::new(self.parse_concept()?))),
            Tok::KwU => Err(ParseError::ReservedU {
                line: t.line,
                col: t.col,
            }),
            other => Err(ParseError::Expected {
                line: t.line,
                col: t.col,
                expected: "individual name or `iota`".to_string(),
                found: other.to_string(),
            }),
        }
    }

    fn parse_concept(&mut self) -> Result<Concept, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::KwTop => Ok(Concept::Top),
            Tok::KwBot => Ok(Concept::Bot),
            Tok::KwEtop => Ok(Concept::ExistenceTop),
            Tok::UpperIdent(n) => Ok(Concept::Name(n)),
            Tok::LBrace => {
                let term = self.parse_term()?;
                self.expect(&Tok::RBrace, "`}`")?;
                Ok(Concept::Nominal(term))
            }
            Tok::KwNot => Ok(Concept::not(self.parse_concept()?)),
            Tok::LParen => {
                let lhs = self.parse_concept()?;
                if self.peek().tok == Tok::RParen {
                    // plain grouping parentheses
                    self.next();
                    return Ok(lhs);
                }
                let op = self.next();
                let rhs = self.parse_concept()?;
                self.expect(&Tok::RParen, "`)`")?;
                match op.tok {
                    Tok::KwAnd => Ok(Concept::and(vec![lhs, rhs])),
                    Tok::KwOr => Ok(Concept::or(lhs, rhs)),
                    Tok::KwImplies => Ok(Concept::implies(lhs, rhs)),
                    other => Err(ParseError::Expected {
                        line: op.line,
                        col: op.col,
                        expected: "`and`, `or` or `implies`".to_string(),
                        found: other.to_string(),
                    }),
                }
            }
            Tok::KwSome => {
                let r = self.parse_role()?;
                self.expect(&Tok::Dot, "`.`")?;
                Ok(Concept::exists(r, self.parse_concept()?))
            }
            Tok::KwAll => {
                let r = self.parse_role()?;
                self.expect(&Tok::Dot, "`.`")?;
                Ok(Concept::forall(r, self.parse_concept()?))
            }
            Tok::KwU => Err(ParseError::ReservedU {
                line: t.line,
                col: t.col,
            }),
            other => Err(ParseError::Expected {
                line: t.line,
                col: t.col,
                expected: "concept".to_string(),
                found: other.to_string(),
            }),
        }
    }

    /// An axiom without the trailing dot: CI, CE, or assertion. A CE yields
    /// two CIs.
    fn parse_plain_axiom(&mut self) -> Result<Vec<Axiom>, ParseError> {
        match (&self.peek().tok, &self.peek2().tok) {
            (Tok::LowerIdent(_), Tok::LParen) => {
                let role = match self.next().tok {
                    Tok::LowerIdent(r) => r,
                    _ => unreachable!(),
                };
                self.expect(&Tok::LParen, "`(`")?;
                let t1 = self.parse_term()?;
                self.expect(&Tok::Comma, "`,`")?;
                let t2 = self.parse_term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(vec![Axiom::RoleAssertion(role, t1, t2)])
            }
            (Tok::LowerIdent(_), Tok::Equals) | (Tok::KwIota, _) => {
                let t1 = self.parse_term()?;
                self.expect(&Tok::Equals, "`=`")?;
                let t2 = self.parse_term()?;
                Ok(vec![Axiom::TermEquality(t1, t2)])
            }
            _ => {
                let c = self.parse_concept()?;
                let t = self.peek().clone();
                match t.tok {
                    Tok::KwSub => {
                        self.next();
                        let d = self.parse_concept()?;
                        Ok(vec![Axiom::Ci(c, d)])
                    }
                    Tok::KwEquiv => {
                        self.next();
                        let d = self.parse_concept()?;
                        Ok(vec![Axiom::Ci(c.clone(), d.clone()), Axiom::Ci(d, c)])
                    }
                    Tok::LParen => {
                        self.next();
                        let term = self.parse_term()?;
                        self.expect(&Tok::RParen, "`)`")?;
                        Ok(vec![Axiom::ConceptAssertion(c, term)])
                    }
                    Tok::Equals => {
                        // nominal on the left of `=` parsed as a concept
                        Err(ParseError::Expected {
                            line: t.line,
                            col: t.col,
                            expected: "`sub`, `equiv` or `(`".to_string(),
                            found: "=".to_string(),
                        })
                    }
                    other => Err(ParseError::Expected {
                        line: t.line,
                        col: t.col,
                        expected: "`sub`, `equiv` or `(`".to_string(),
                        found: other.to_string(),
                    }),
                }
            }
        }
    }

    /// Formula grammar of the dual-domain dialect: `not (f)` and `(f and f)`
    /// on top of plain axioms, disambiguated by backtracking.
    fn parse_formula(&mut self) -> Result<Vec<Axiom>, ParseError> {
        if self.peek().tok == Tok::KwNot && self.peek2().tok == Tok::LParen {
            let save = self.pos;
            self.next();
            self.next();
            if let Ok(inner) = self.parse_formula() {
                if self.peek().tok == Tok::RParen {
                    self.next();
                    return Ok(vec![Axiom::negated(Axiom::conjunction(inner))]);
                }
            }
            self.pos = save;
        }
        if self.peek().tok == Tok::LParen {
            let save = self.pos;
            self.next();
            let attempt = (|| -> Result<Vec<Axiom>, ParseError> {
                let lhs = self.parse_formula()?;
                self.expect(&Tok::KwAnd, "`and`")?;
                let rhs = self.parse_formula()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(vec![Axiom::conjunction(
                    lhs.into_iter().chain(rhs).collect(),
                )])
            })();
            match attempt {
                Ok(v) => return Ok(v),
                Err(_) => self.pos = save,
            }
        }
        self.parse_plain_axiom()
    }

    fn parse_axioms(&mut self, formulas: bool) -> Result<Vec<Axiom>, ParseError> {
        let mut axioms = Vec::new();
        while self.peek().tok != Tok::Eof {
            let parsed = if formulas {
                self.parse_formula()?
            } else {
                self.parse_plain_axiom()?
            };
            self.expect(&Tok::Dot, "`.`")?;
            axioms.extend(parsed);
        }
        Ok(axioms)
    }
}

// ---------------------------------------------------------------------------
// Dialect checking
// ---------------------------------------------------------------------------

fn check_concept_dialect(c: &Concept, dialect: Dialect) -> Result<(), ParseError> {
    let violation = |construct: &str| ParseError::DialectViolation {
        line: 0,
        col: 0,
        construct: construct.to_string(),
        dialect,
    };
    match c {
        Concept::Top | Concept::Bot | Concept::Name(_) => Ok(()),
        Concept::ExistenceTop => {
            if dialect == Dialect::AlcoiStar {
                Ok(())
            } else {
                Err(violation("`etop`"))
            }
        }
        Concept::Nominal(Term::Individual(_)) => Ok(()),
        Concept::Nominal(Term::Iota(body)) => check_concept_dialect(body, dialect),
        Concept::Not(d) => {
            if dialect == Dialect::Elou {
                Err(violation("`not`"))
            } else {
                check_concept_dialect(d, dialect)
            }
        }
        Concept::And(cs) => cs.iter().try_for_each(|d| check_concept_dialect(d, dialect)),
        Concept::Exists(r, d) => {
            if *r == Role::Universal && dialect == Dialect::AlcoiStar {
                return Err(violation("the universal role"));
            }
            check_concept_dialect(d, dialect)
        }
    }
}

fn check_term_dialect(t: &Term, dialect: Dialect) -> Result<(), ParseError> {
    match t {
        Term::Individual(_) => Ok(()),
        Term::Iota(body) => check_concept_dialect(body, dialect),
    }
}

fn check_axiom_dialect(a: &Axiom, dialect: Dialect) -> Result<(), ParseError> {
    let violation = |construct: &str| ParseError::DialectViolation {
        line: 0,
        col: 0,
        construct: construct.to_string(),
        dialect,
    };
    match a {
        Axiom::Ci(l, r) => {
            check_concept_dialect(l, dialect)?;
            check_concept_dialect(r, dialect)
        }
        Axiom::ConceptAssertion(c, t) => {
            check_concept_dialect(c, dialect)?;
            check_term_dialect(t, dialect)
        }
        Axiom::RoleAssertion(_, t1, t2) => {
            check_term_dialect(t1, dialect)?;
            check_term_dialect(t2, dialect)
        }
        Axiom::TermEquality(t1, t2) => {
            if dialect != Dialect::AlcoiStar {
                return Err(violation("term equality"));
            }
            check_term_dialect(t1, dialect)?;
            check_term_dialect(t2, dialect)
        }
        Axiom::NegatedFormula(f) => {
            if dialect != Dialect::AlcoiStar {
                return Err(violation("negated formula"));
            }
            check_axiom_dialect(f, dialect)
        }
        Axiom::Conjunction(fs) => {
            if dialect != Dialect::AlcoiStar {
                return Err(violation("formula conjunction"));
            }
            fs.iter().try_for_each(|f| check_axiom_dialect(f, dialect))
        }
    }
}

/// Checks every axiom against the dialect grammar.
pub fn validate_dialect(axioms: &[Axiom], dialect: Dialect) -> Result<(), ParseError> {
    axioms
        .iter()
        .try_for_each(|a| check_axiom_dialect(a, dialect))
}

/// The least expressive dialect accepting all axioms, if any.
pub fn detect_dialect(axioms: &[Axiom]) -> Option<Dialect> {
    [Dialect::Elou, Dialect::Alcou, Dialect::AlcoiStar]
        .into_iter()
        .find(|&d| validate_dialect(axioms, d).is_ok())
}

/// Parses an ontology in the given dialect, desugaring as it goes.
pub fn parse_ontology(text: &str, dialect: Dialect) -> Result<Ontology, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let axioms = p.parse_axioms(dialect == Dialect::AlcoiStar)?;
    validate_dialect(&axioms, dialect)?;
    Ok(Ontology { dialect, axioms })
}

/// Parses a single concept.
pub fn parse_concept(text: &str) -> Result<Concept, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let c = p.parse_concept()?;
    p.expect(&Tok::Eof, "end of input")?;
    Ok(c)
}

/// Parses a single axiom (or CE, yielding two CIs) terminated by `.`.
pub fn parse_axioms(text: &str, dialect: Dialect) -> Result<Vec<Axiom>, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let axioms = p.parse_axioms(dialect == Dialect::AlcoiStar)?;
    validate_dialect(&axioms, dialect)?;
    Ok(axioms)
}

// ---------------------------------------------------------------------------
// Fresh names
// ---------------------------------------------------------------------------

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Deterministic fresh concept name from a namespace and a seed string.
pub fn fresh_concept_name(namespace: &str, seed: &str) -> ConceptName {
    format!("_{}_{:08x}", namespace, fnv1a(seed) & 0xffff_ffff)
}

/// Deterministic fresh individual name from a namespace and a seed string.
pub fn fresh_individual_name(namespace: &str, seed: &str) -> IndName {
    format!("a_{}_{:08x}", namespace, fnv1a(seed) & 0xffff_ffff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_ci() {
        let o = parse_ontology("A sub B.", Dialect::Elou).unwrap();
        assert_eq!(
            o.axioms,
            vec![Axiom::Ci(Concept::name("A"), Concept::name("B"))]
        );
    }

    #[test]
    fn nominal_bot_ci() {
        let o = parse_ontology("{kr19} sub bot.", Dialect::Elou).unwrap();
        assert_eq!(
            o.axioms,
            vec![Axiom::Ci(Concept::nominal_ind("kr19"), Concept::Bot)]
        );
    }

    #[test]
    fn nested_iota_ci() {
        let text = "{iota (some isPCof.{dl20})} sub some reportsTo.{iota (some isGCof.{dl20})}.";
        let o = parse_ontology(text, Dialect::Elou).unwrap();
        let lhs = Concept::nominal_iota(Concept::exists(
            Role::named("isPCof"),
            Concept::nominal_ind("dl20"),
        ));
        let rhs = Concept::exists(
            Role::named("reportsTo"),
            Concept::nominal_iota(Concept::exists(
                Role::named("isGCof"),
                Concept::nominal_ind("dl20"),
            )),
        );
        assert_eq!(o.axioms, vec![Axiom::Ci(lhs, rhs)]);
    }

    #[test]
    fn render_top_ci() {
        assert_eq!(
            render(&Axiom::Ci(Concept::Top, Concept::Top)),
            "top sub top"
        );
        let o = Ontology::new(Dialect::Elou, vec![Axiom::Ci(Concept::Top, Concept::Top)]);
        assert_eq!(render(&o), "top sub top.\n");
    }

    #[test]
    fn render_and_parenthesization() {
        let c = Concept::and(vec![Concept::name("A"), Concept::name("B")]);
        assert_eq!(render(&c), "(A and B)");
        let c3 = Concept::and(vec![
            Concept::name("A"),
            Concept::name("B"),
            Concept::name("C"),
        ]);
        assert_eq!(render(&c3), "((A and B) and C)");
        assert_eq!(parse_concept(&render(&c3)).unwrap(), c3);
        assert_eq!(parse_concept("(A and (B and C))").unwrap(), c3);
    }

    #[test]
    fn sugar_desugars() {
        let c = parse_concept("(A or B)").unwrap();
        assert_eq!(c, Concept::or(Concept::name("A"), Concept::name("B")));
        let c = parse_concept("all r.A").unwrap();
        assert_eq!(
            c,
            Concept::not(Concept::exists(
                Role::named("r"),
                Concept::not(Concept::name("A"))
            ))
        );
        let o = parse_ontology("A equiv B.", Dialect::Elou).unwrap();
        assert_eq!(o.axioms.len(), 2);
    }

    #[test]
    fn elou_rejects_not() {
        let err = parse_ontology("not A sub B.", Dialect::Elou).unwrap_err();
        assert!(matches!(err, ParseError::DialectViolation { .. }));
        assert!(err.to_string().contains("not"));
    }

    #[test]
    fn u_is_reserved() {
        assert!(parse_ontology("{u} sub A.", Dialect::Elou).is_err());
        let o = parse_ontology("some u.A sub B.", Dialect::Elou).unwrap();
        assert_eq!(
            o.axioms,
            vec![Axiom::Ci(
                Concept::exists(Role::Universal, Concept::name("A")),
                Concept::name("B")
            )]
        );
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_ontology("A sub\nsub B.", Dialect::Elou).unwrap_err();
        match err {
            ParseError::Expected { line, col, .. } => {
                assert_eq!(line, 2);
                assert_eq!(col, 1);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn formula_parsing() {
        let axs = parse_axioms("not (A(a)).", Dialect::AlcoiStar).unwrap();
        assert_eq!(
            axs,
            vec![Axiom::negated(Axiom::ConceptAssertion(
                Concept::name("A"),
                Term::ind("a")
            ))]
        );
        let axs = parse_axioms("(A(a) and a = b).", Dialect::AlcoiStar).unwrap();
        assert_eq!(
            axs,
            vec![Axiom::conjunction(vec![
                Axiom::ConceptAssertion(Concept::name("A"), Term::ind("a")),
                Axiom::TermEquality(Term::ind("a"), Term::ind("b")),
            ])]
        );
        // negated concept in an assertion, not a negated formula
        let axs = parse_axioms("not A(a).", Dialect::AlcoiStar).unwrap();
        assert_eq!(
            axs,
            vec![Axiom::ConceptAssertion(
                Concept::not(Concept::name("A")),
                Term::ind("a")
            )]
        );
        // compound concept on the left of a CI still parses
        let axs = parse_axioms("(A and B) sub C.", Dialect::AlcoiStar).unwrap();
        assert_eq!(axs.len(), 1);
    }

    #[test]
    fn signature_examples() {
        assert!(signature_of(&Concept::Top).is_empty());
        let c = Concept::nominal_iota(Concept::name("A"));
        let sig = signature_of(&c);
        assert_eq!(sig.concepts.len(), 1);
        assert!(sig.concepts.contains("A"));
        assert!(sig.roles.is_empty() && sig.individuals.is_empty());
        let u = Concept::exists(Role::Universal, Concept::name("A"));
        assert!(signature_of(&u).roles.is_empty());
    }

    #[test]
    fn subconcepts_examples() {
        let a = Concept::name("A");
        assert_eq!(subconcepts(&a), BTreeSet::from([a.clone()]));
        let ab = Concept::and(vec![a.clone(), Concept::name("B")]);
        let iota = Concept::nominal_iota(ab.clone());
        let subs = subconcepts(&iota);
        assert_eq!(
            subs,
            BTreeSet::from([iota.clone(), ab, a, Concept::name("B")])
        );
        // every subterm of a member is a member
        for c in &subs {
            for d in subconcepts(c) {
                assert!(subs.contains(&d));
            }
        }
    }

    #[test]
    fn subconcept_count_bounded_by_size() {
        let c = parse_concept("some r.(not {iota (A and B)} and some u.A)").unwrap();
        assert!(subconcepts(&c).len() <= c.size());
    }

    #[test]
    fn dialect_detection_least_expressive() {
        let axs = parse_axioms("A sub B.", Dialect::AlcoiStar).unwrap();
        assert_eq!(detect_dialect(&axs), Some(Dialect::Elou));
        let axs = parse_axioms("not A sub B.", Dialect::AlcoiStar).unwrap();
        assert_eq!(detect_dialect(&axs), Some(Dialect::Alcou));
        let axs = parse_axioms("a = b.", Dialect::AlcoiStar).unwrap();
        assert_eq!(detect_dialect(&axs), Some(Dialect::AlcoiStar));
        // universal role plus etop fits no dialect
        let axs = vec![Axiom::Ci(
            Concept::exists(Role::Universal, Concept::ExistenceTop),
            Concept::Top,
        )];
        assert_eq!(detect_dialect(&axs), None);
    }
}
