//! The relation `a = b ⊩ φ`, checked over finite names.
//!
//! Atomic clauses recurse on names and need nothing else. Implication,
//! negation and unbounded quantifiers range over an explicit [`Pool`]; the
//! verdict only claims what the pool can support.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::enumerate;
use crate::formula::{Formula, NameExpr};
use crate::names::{self, EmbedError, Embedder, Name};
use crate::pca::{apply, reduce, Element, EvalOutcome, Fuel, Term};
use crate::tri::{Reason, TriState};
use crate::types::Types;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unbound name variable {0}")]
    Unbound(String),
    #[error("cannot build name {0}: {1}")]
    BadName(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "size_bound")]
pub enum Provenance {
    Explicit,
    TermEnumeration(usize),
}

/// Candidate realizer pairs for `→`/`¬`, and the names that unbounded
/// quantifiers range over.
#[derive(Clone, Debug)]
pub struct Pool {
    pub pairs: Vec<(Element, Element)>,
    pub universe: Vec<Name>,
    /// Set when the universe fragment is all that matters for the query.
    pub universe_exhaustive: bool,
    pub provenance: Provenance,
}

impl Pool {
    pub fn explicit(pairs: Vec<(Element, Element)>) -> Pool {
        Pool { pairs, universe: Vec::new(), universe_exhaustive: false, provenance: Provenance::Explicit }
    }

    pub fn diagonal<I: IntoIterator<Item = Element>>(elems: I) -> Pool {
        Pool::explicit(elems.into_iter().map(|e| (e.clone(), e)).collect())
    }

    /// Every pair from [`enumerate::pairs`] at this size bound.
    pub fn enumerated(size: usize, fuel: Fuel) -> Pool {
        let es = enumerate::elements(size, fuel);
        Pool {
            pairs: enumerate::pairs(&es, size),
            universe: Vec::new(),
            universe_exhaustive: false,
            provenance: Provenance::TermEnumeration(size),
        }
    }

    pub fn with_universe(mut self, universe: Vec<Name>, exhaustive: bool) -> Pool {
        self.universe = universe;
        self.universe_exhaustive = exhaustive;
        self
    }

    /// Adds `(b, a)` for every `(a, b)`.
    pub fn symmetric(mut self) -> Pool {
        let mut extra: Vec<(Element, Element)> =
            self.pairs.iter().filter(|(a, b)| a != b).map(|(a, b)| (b.clone(), a.clone())).collect();
        extra.retain(|p| !self.pairs.contains(p));
        self.pairs.extend(extra);
        self
    }

    pub fn extend(mut self, more: Vec<(Element, Element)>) -> Pool {
        self.pairs.extend(more);
        self
    }

    fn is_bounded_enumeration(&self) -> bool {
        matches!(self.provenance, Provenance::TermEnumeration(_))
    }
}

/// Why a node of the check came out the way it did.
#[derive(Clone, Debug, Serialize)]
pub struct Trace {
    pub clause: &'static str,
    pub a: String,
    pub b: String,
    pub state: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Trace>,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub state: TriState,
    pub trace: Trace,
}

type Env = Vec<(String, Name)>;

#[derive(Clone, PartialEq, Eq, Hash)]
enum AtomKey {
    Mem(Element, Element, Name, Name),
    Eq(Element, Element, Name, Name),
}

/// How many children a trace node keeps when many instances agree.
const TRACE_FANOUT: usize = 3;

pub struct Checker<'t> {
    pub embed: Embedder<'t>,
    pub pool: Pool,
    pub fuel: Fuel,
    atoms: RefCell<HashMap<AtomKey, TriState>>,
}

pub struct Out {
    pub state: TriState,
    pub trace: Option<Trace>,
}

impl Out {
    fn plain(state: TriState) -> Out {
        Out { state, trace: None }
    }
}

impl<'t> Checker<'t> {
    pub fn new(types: &'t Types, pool: Pool) -> Checker<'t> {
        Checker { fuel: types.budget.fuel, embed: Embedder::new(types), pool, atoms: RefCell::new(HashMap::new()) }
    }

    pub fn name_of(&self, e: &NameExpr, env: &Env) -> Result<Name, CheckError> {
        Ok(match e {
            NameExpr::Lit(n) => n.clone(),
            NameExpr::Var(v) => env
                .iter()
                .rev()
                .find(|(w, _)| w == v)
                .map(|(_, n)| n.clone())
                .ok_or_else(|| CheckError::Unbound(v.clone()))?,
            NameExpr::Dot(n) => names::dot(*n),
            NameExpr::DotOmega(n) => names::dot_omega(*n),
            NameExpr::Check(s) => names::check(s),
            NameExpr::VSet1(x) => names::vset1(&self.name_of(x, env)?),
            NameExpr::VSet2(x, y) => names::vset2(&self.name_of(x, env)?, &self.name_of(y, env)?),
            NameExpr::VPair(x, y) => names::vpair(&self.name_of(x, env)?, &self.name_of(y, env)?),
            NameExpr::XOf(s) => self
                .embed
                .x_of(s)
                .map_err(|err| CheckError::BadName(e.to_string(), err.to_string()))?,
        })
    }

    fn eval(&self, t: Term) -> Result<Element, TriState> {
        match reduce(&t, self.fuel) {
            EvalOutcome::Defined(e) => Ok(e),
            EvalOutcome::Stuck => Err(TriState::Refuted),
            EvalOutcome::FuelOut => Err(TriState::Unknown(Reason::Fuel)),
        }
    }

    fn app(&self, f: &Element, x: &Element) -> Result<Element, TriState> {
        match apply(f, x, self.fuel) {
            EvalOutcome::Defined(e) => Ok(e),
            EvalOutcome::Stuck => Err(TriState::Refuted),
            EvalOutcome::FuelOut => Err(TriState::Unknown(Reason::Fuel)),
        }
    }

    fn proj(&self, a: &Element, i: usize) -> Result<Element, TriState> {
        let p = if i == 0 { Term::p0() } else { Term::p1() };
        self.eval(Term::app(p, a.term().clone()))
    }

    fn projs(&self, a: &Element, b: &Element) -> Result<[Element; 4], TriState> {
        Ok([self.proj(a, 0)?, self.proj(b, 0)?, self.proj(a, 1)?, self.proj(b, 1)?])
    }

    /// Checks `a = b ⊩ φ` for a closed formula.
    pub fn check(&self, a: &Element, b: &Element, phi: &Formula) -> Result<Verdict, CheckError> {
        self.check_in(a, b, phi, &mut Vec::new(), 6)
    }

    pub fn holds(&self, a: &Element, b: &Element, phi: &Formula) -> Result<TriState, CheckError> {
        Ok(self.go(a, b, phi, &mut Vec::new(), 0)?.state)
    }

    /// As [`Checker::check`] with an environment and a trace depth.
    pub fn check_in(
        &self,
        a: &Element,
        b: &Element,
        phi: &Formula,
        env: &mut Env,
        trace_depth: usize,
    ) -> Result<Verdict, CheckError> {
        let out = self.go(a, b, phi, env, trace_depth.max(1))?;
        Ok(Verdict { state: out.state, trace: out.trace.expect("trace requested") })
    }

    fn node(
        &self,
        depth: usize,
        clause: &'static str,
        a: &Element,
        b: &Element,
        state: TriState,
        note: String,
        children: Vec<Trace>,
    ) -> Option<Trace> {
        (depth > 0).then(|| Trace {
            clause,
            a: a.to_string(),
            b: b.to_string(),
            state: state.to_string(),
            note,
            children,
        })
    }

    fn go(&self, a: &Element, b: &Element, phi: &Formula, env: &mut Env, depth: usize) -> Result<Out, CheckError> {
        let sub = depth.saturating_sub(1);
        match phi {
            Formula::Mem(x, y) => {
                let (x, y) = (self.name_of(x, env)?, self.name_of(y, env)?);
                self.mem(a, b, &x, &y, depth)
            }
            Formula::Eq(x, y) => {
                let (x, y) = (self.name_of(x, env)?, self.name_of(y, env)?);
                self.eq(a, b, &x, &y, depth)
            }
            Formula::And(f, g) => {
                let [a0, b0, a1, b1] = match self.projs(a, b) {
                    Ok(p) => p,
                    Err(s) => return Ok(self.leaf(depth, "and", a, b, s, "not a pair")),
                };
                let l = self.go(&a0, &b0, f, env, sub)?;
                let r = if l.state.refuted() { Out::plain(TriState::Refuted) } else { self.go(&a1, &b1, g, env, sub)? };
                let state = l.state.and(if l.state.refuted() { TriState::Holds } else { r.state });
                let children = l.trace.into_iter().chain(r.trace).collect();
                Ok(Out { state, trace: self.node(depth, "and", a, b, state, String::new(), children) })
            }
            Formula::Or(f, g) => {
                let [a0, b0, a1, b1] = match self.projs(a, b) {
                    Ok(p) => p,
                    Err(s) => return Ok(self.leaf(depth, "or", a, b, s, "not a pair")),
                };
                let branch = match (a0.as_num(), b0.as_num()) {
                    (Some(0), Some(0)) => f,
                    (Some(1), Some(1)) => g,
                    _ => return Ok(self.leaf(depth, "or", a, b, TriState::Refuted, "tags differ or are not 0/1")),
                };
                let r = self.go(&a1, &b1, branch, env, sub)?;
                let note = format!("branch {}", a0);
                Ok(Out { state: r.state, trace: self.node(depth, "or", a, b, r.state, note, r.trace.into_iter().collect()) })
            }
            Formula::Not(f) => {
                let mut state = TriState::Holds;
                let mut children = Vec::new();
                for (c, d) in &self.pool.pairs {
                    let s = self.go(c, d, f, env, 0)?.state.not();
                    state = state.and(s);
                    if s.refuted() {
                        if depth > 0 {
                            children.push(self.go(c, d, f, env, sub)?.trace.unwrap());
                        }
                        break;
                    }
                }
                state = state.weaken_if(self.pool.is_bounded_enumeration(), Reason::EnumerationBound);
                let note = format!("{} pool pairs", self.pool.pairs.len());
                Ok(Out { state, trace: self.node(depth, "not", a, b, state, note, children) })
            }
            Formula::Imp(f, g) => {
                let mut state = TriState::Holds;
                let mut children = Vec::new();
                let mut used = 0;
                for (c, d) in &self.pool.pairs {
                    let prem = self.go(c, d, f, env, 0)?.state;
                    if prem.refuted() {
                        continue;
                    }
                    used += 1;
                    let concl = match (self.app(a, c), self.app(b, d)) {
                        (Ok(ac), Ok(bd)) => self.go(&ac, &bd, g, env, if prem.holds() { sub } else { 0 })?,
                        (Err(s), _) | (_, Err(s)) => Out::plain(s),
                    };
                    let inst = prem.not().or(concl.state);
                    state = state.and(inst);
                    if depth > 0 && (inst.refuted() || children.len() < TRACE_FANOUT) {
                        children.extend(concl.trace);
                    }
                    if state.refuted() {
                        break;
                    }
                }
                state = state.weaken_if(self.pool.is_bounded_enumeration(), Reason::EnumerationBound);
                let note = format!("{used} of {} pool pairs realize the premise", self.pool.pairs.len());
                Ok(Out { state, trace: self.node(depth, "imp", a, b, state, note, children) })
            }
            Formula::AllIn(v, y, f) => {
                let y = self.name_of(y, env)?;
                let mut state = TriState::Holds;
                let mut children = Vec::new();
                for e in y.entries() {
                    let inst = match (self.app(a, &e.left), self.app(b, &e.right)) {
                        (Ok(ac), Ok(bd)) => {
                            env.push((v.clone(), e.child.clone()));
                            let r = self.go(&ac, &bd, f, env, sub);
                            env.pop();
                            r?
                        }
                        (Err(s), _) | (_, Err(s)) => Out::plain(s),
                    };
                    state = state.and(inst.state);
                    if depth > 0 && (inst.state.refuted() || children.len() < TRACE_FANOUT) {
                        children.extend(inst.trace);
                    }
                    if state.refuted() {
                        break;
                    }
                }
                state = state.weaken_if(!own_complete(&y), Reason::EnumerationBound);
                let note = format!("{} entries", y.len());
                Ok(Out { state, trace: self.node(depth, "allin", a, b, state, note, children) })
            }
            Formula::ExIn(v, y, f) => {
                let y = self.name_of(y, env)?;
                let [a0, b0, a1, b1] = match self.projs(a, b) {
                    Ok(p) => p,
                    Err(s) => return Ok(self.leaf(depth, "exin", a, b, s, "not a pair")),
                };
                let mut state = TriState::Refuted;
                let mut children = Vec::new();
                let (found, rest) = self.members(&y, &a0, &b0);
                for child in found {
                    env.push((v.clone(), child.clone()));
                    let r = self.go(&a1, &b1, f, env, 0);
                    env.pop();
                    let s = r?.state;
                    state = state.or(s);
                    if s.holds() {
                        if depth > 0 {
                            env.push((v.clone(), child));
                            let r = self.go(&a1, &b1, f, env, sub);
                            env.pop();
                            children.extend(r?.trace);
                        }
                        break;
                    }
                }
                if !state.holds() {
                    state = state.or(rest);
                }
                let note = format!("key ({a0}, {b0})");
                Ok(Out { state, trace: self.node(depth, "exin", a, b, state, note, children) })
            }
            Formula::All(v, f) => {
                let mut state = TriState::Holds;
                let mut children = Vec::new();
                for x in &self.pool.universe {
                    env.push((v.clone(), x.clone()));
                    let r = self.go(a, b, f, env, 0);
                    env.pop();
                    let s = r?.state;
                    state = state.and(s);
                    if s.refuted() {
                        if depth > 0 {
                            env.push((v.clone(), x.clone()));
                            let r = self.go(a, b, f, env, sub);
                            env.pop();
                            children.extend(r?.trace);
                        }
                        break;
                    }
                }
                state = state.weaken_if(!self.pool.universe_exhaustive, Reason::EnumerationBound);
                let note = format!("{} names in the universe fragment", self.pool.universe.len());
                Ok(Out { state, trace: self.node(depth, "all", a, b, state, note, children) })
            }
            Formula::Ex(v, f) => {
                let mut state = TriState::Refuted;
                let mut children = Vec::new();
                for x in &self.pool.universe {
                    env.push((v.clone(), x.clone()));
                    let r = self.go(a, b, f, env, 0);
                    env.pop();
                    let s = r?.state;
                    state = state.or(s);
                    if s.holds() {
                        if depth > 0 {
                            env.push((v.clone(), x.clone()));
                            let r = self.go(a, b, f, env, sub);
                            env.pop();
                            children.extend(r?.trace);
                        }
                        break;
                    }
                }
                if !state.holds() && !self.pool.universe_exhaustive {
                    state = TriState::Unknown(Reason::EnumerationBound);
                }
                let note = format!("{} names in the universe fragment", self.pool.universe.len());
                Ok(Out { state, trace: self.node(depth, "ex", a, b, state, note, children) })
            }
        }
    }

    fn leaf(&self, depth: usize, clause: &'static str, a: &Element, b: &Element, s: TriState, note: &str) -> Out {
        Out { state: s, trace: self.node(depth, clause, a, b, s, note.to_string(), Vec::new()) }
    }

    /// `a = b ⊩ x ∈ y`
    pub fn mem(&self, a: &Element, b: &Element, x: &Name, y: &Name, depth: usize) -> Result<Out, CheckError> {
        let key = AtomKey::Mem(a.clone(), b.clone(), x.clone(), y.clone());
        if depth == 0 {
            if let Some(s) = self.atoms.borrow().get(&key) {
                return Ok(Out::plain(*s));
            }
        }
        let [a0, b0, a1, b1] = match self.projs(a, b) {
            Ok(p) => p,
            Err(s) => return Ok(self.leaf(depth, "mem", a, b, s, "not a pair")),
        };
        let mut state = TriState::Refuted;
        let mut children = Vec::new();
        let (found, rest) = self.members(y, &a0, &b0);
        for child in found {
            let r = self.eq(&a1, &b1, x, &child, depth.saturating_sub(1))?;
            state = state.or(r.state);
            if r.state.holds() {
                children.extend(r.trace);
                break;
            }
        }
        if !state.holds() {
            state = state.or(rest);
        }
        self.atoms.borrow_mut().insert(key, state);
        let note = format!("key ({a0}, {b0})");
        Ok(Out { state, trace: self.node(depth, "mem", a, b, state, note, children) })
    }

    /// Members of `y` under key `(a0, b0)`, and the state of "some member
    /// is missing from that list". `X_σ` lists representatives only, so an
    /// unlisted key is decided by `a0 ∼_σ b0`.
    fn members(&self, y: &Name, a0: &Element, b0: &Element) -> (Vec<Name>, TriState) {
        let listed: Vec<Name> =
            y.entries().iter().filter(|e| e.left == *a0 && e.right == *b0).map(|e| e.child.clone()).collect();
        if let Some(sigma) = y.key_type() {
            if !listed.is_empty() {
                return (listed, TriState::Refuted);
            }
            return match self.embed.types.elem_equiv(a0, b0, sigma) {
                TriState::Holds => match self.embed.embed(a0, sigma) {
                    Ok(n) => (vec![n], TriState::Refuted),
                    Err(EmbedError::Unknown(r)) => (Vec::new(), TriState::Unknown(r)),
                    Err(_) => (Vec::new(), TriState::Refuted),
                },
                s => (Vec::new(), s),
            };
        }
        let rest = if own_complete(y) { TriState::Refuted } else { TriState::Unknown(Reason::EnumerationBound) };
        (listed, rest)
    }

    /// `a = b ⊩ x = y`
    pub fn eq(&self, a: &Element, b: &Element, x: &Name, y: &Name, depth: usize) -> Result<Out, CheckError> {
        let key = AtomKey::Eq(a.clone(), b.clone(), x.clone(), y.clone());
        if depth == 0 {
            if let Some(s) = self.atoms.borrow().get(&key) {
                return Ok(Out::plain(*s));
            }
        }
        let sub = depth.saturating_sub(1);
        let mut state = TriState::Holds;
        let mut children = Vec::new();
        'halves: for (from, to, side) in [(x, y, 0), (y, x, 1)] {
            for e in from.entries() {
                let r = match (self.app(a, &e.left), self.app(b, &e.right)) {
                    (Ok(ac), Ok(bd)) => match (self.proj(&ac, side), self.proj(&bd, side)) {
                        (Ok(c), Ok(d)) => self.mem(&c, &d, &e.child, to, sub)?,
                        (Err(s), _) | (_, Err(s)) => Out::plain(s),
                    },
                    (Err(s), _) | (_, Err(s)) => Out::plain(s),
                };
                state = state.and(r.state);
                if depth > 0 && (r.state.refuted() || children.len() < TRACE_FANOUT) {
                    children.extend(r.trace);
                }
                if state.refuted() {
                    break 'halves;
                }
            }
            state = state.weaken_if(!own_complete(from), Reason::EnumerationBound);
        }
        self.atoms.borrow_mut().insert(key, state);
        Ok(Out { state, trace: self.node(depth, "eq", a, b, state, String::new(), children) })
    }

    /// First pool pair realizing `φ`, then, if `size_bound` is given, the
    /// first enumerated pair.
    pub fn search(&self, phi: &Formula, size_bound: Option<usize>) -> Result<SearchOutcome, CheckError> {
        let mut scanned = 0;
        let mut unknown = 0;
        let enumerated = match size_bound {
            Some(k) => enumerate::pairs(&enumerate::elements(k, self.fuel.min(10_000)), k),
            None => Vec::new(),
        };
        for (a, b) in self.pool.pairs.iter().chain(enumerated.iter()) {
            scanned += 1;
            match self.go(a, b, phi, &mut Vec::new(), 0)?.state {
                TriState::Holds => {
                    let v = self.check(a, b, phi)?;
                    return Ok(SearchOutcome::Found { a: a.clone(), b: b.clone(), verdict: v, scanned });
                }
                TriState::Unknown(_) => unknown += 1,
                TriState::Refuted => {}
            }
        }
        Ok(SearchOutcome::NotFound { scanned, unknown, size_bound })
    }
}

/// Whether the name's own entry list is untruncated.
fn own_complete(n: &Name) -> bool {
    n.generator().map_or(true, |g| g.complete)
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found { a: Element, b: Element, verdict: Verdict, scanned: usize },
    /// No realizer among the scanned pairs: a bounded refutation, not a
    /// proof that none exists.
    NotFound { scanned: usize, unknown: usize, size_bound: Option<usize> },
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }
}

/// One-shot check with a fresh checker.
pub fn check(a: &Element, b: &Element, phi: &Formula, pool: Pool, types: &Types) -> Result<Verdict, CheckError> {
    Checker::new(types, pool).check(a, b, phi)
}

pub fn search(phi: &Formula, pool: Pool, types: &Types, size_bound: Option<usize>) -> Result<SearchOutcome, CheckError> {
    Checker::new(types, pool).search(phi, size_bound)
}

/// Outcome of comparing realizable equality of embeddings with the
/// relation of the type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InjAgreement {
    Agree,
    Disagree,
    Unknown,
    /// `a` or `b` is not of the type.
    Vacuous,
}

/// `⊩ a^σ = b^σ` (by search) against `a ∼_σ b`.
pub fn check_inj_converse(
    a: &Element,
    b: &Element,
    sigma: &crate::types::TypeCode,
    pool: Pool,
    types: &Types,
    size_bound: Option<usize>,
) -> InjAgreement {
    let checker = Checker::new(types, pool);
    let (ea, eb) = match (checker.embed.embed(a, sigma), checker.embed.embed(b, sigma)) {
        (Ok(x), Ok(y)) => (x, y),
        _ => return InjAgreement::Vacuous,
    };
    let related = types.elem_equiv(a, b, sigma);
    let phi = Formula::Eq(NameExpr::Lit(ea), NameExpr::Lit(eb));
    let found = match checker.search(&phi, size_bound) {
        Ok(SearchOutcome::Found { .. }) => true,
        Ok(SearchOutcome::NotFound { unknown, .. }) if unknown == 0 => false,
        _ => return InjAgreement::Unknown,
    };
    match related {
        TriState::Holds if found => InjAgreement::Agree,
        TriState::Refuted if !found => InjAgreement::Agree,
        TriState::Unknown(_) => InjAgreement::Unknown,
        // a related pair without a realizer in range is a miss of the
        // search, not a counterexample
        TriState::Holds => InjAgreement::Unknown,
        _ => InjAgreement::Disagree,
    }
}
