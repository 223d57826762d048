//! Forcing with finite partial functions `ω → ω` as conditions, names over
//! a finite condition pool, the generic oracle, and realizers that read
//! their witnesses off the oracle.
//!
//! Every verdict is relative to the pool: `∀q ⊇ p` and `∃r ⊇ q` range over
//! the pool's conditions only.

use std::cell::RefCell;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, ATerm, Arith, Bound};
use crate::names::HfSet;
use crate::pca::{lambda, reduce_with, value_of, Element, Fuel, Halt, Oracle, Term};
use crate::tri::{Reason, TriState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForcingError {
    #[error("condition is not a function: {0} has two values")]
    NotFunctional(u64),
    #[error("condition {0} is not in the pool")]
    NotInPool(Condition),
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("connective {0} has no oracle realizer")]
    UnsupportedConnective(&'static str),
    #[error("tuple code overflows")]
    Overflow,
}

/// A finite partial function on ω, as its graph sorted by argument.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Condition(Vec<(u64, u64)>);

impl Condition {
    pub fn empty() -> Condition {
        Condition::default()
    }

    pub fn new<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Result<Condition, ForcingError> {
        let mut graph: Vec<(u64, u64)> = pairs.into_iter().collect();
        graph.sort();
        graph.dedup();
        if let Some(w) = graph.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(ForcingError::NotFunctional(w[0].0));
        }
        Ok(Condition(graph))
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.0
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        self.0.binary_search_by_key(&n, |&(k, _)| k).ok().map(|i| self.0[i].1)
    }

    pub fn contains(&self, n: u64, m: u64) -> bool {
        self.get(n) == Some(m)
    }

    /// `self ⊇ p`
    pub fn extends(&self, p: &Condition) -> bool {
        p.0.iter().all(|&(n, m)| self.contains(n, m))
    }

    pub fn compatible(&self, q: &Condition) -> bool {
        self.0.iter().all(|&(n, m)| q.get(n).is_none_or(|v| v == m))
    }

    pub fn union(&self, q: &Condition) -> Option<Condition> {
        if !self.compatible(q) {
            return None;
        }
        Condition::new(self.0.iter().chain(&q.0).copied()).ok()
    }

    pub fn with(&self, n: u64, m: u64) -> Result<Condition, ForcingError> {
        Condition::new(self.0.iter().copied().chain([(n, m)]))
    }

    /// Every restriction of `self` to a subset of its domain.
    pub fn restrictions(&self) -> Vec<Condition> {
        let k = self.0.len();
        (0u64..1 << k)
            .map(|mask| Condition((0..k).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect()))
            .collect()
    }
}

impl Oracle for Condition {
    fn lookup(&self, n: u64) -> Result<u64, Halt> {
        self.get(n).ok_or(Halt::NeedsOracle(n))
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(cond (")?;
        for (i, (n, m)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({n} {m})")?;
        }
        write!(f, "))")
    }
}

/// A finite set of conditions closed under unions of compatible members.
#[derive(Clone, Debug)]
pub struct ConditionPool {
    conds: Vec<Condition>,
    index: HashMap<Condition, usize>,
    /// `above[i]`: indices of the members extending member `i`, itself first.
    above: Vec<Vec<usize>>,
}

impl ConditionPool {
    /// Closes `conds` under compatible unions and adds the empty condition.
    /// Also returns how many conditions the closure added.
    pub fn new<I: IntoIterator<Item = Condition>>(conds: I) -> (ConditionPool, usize) {
        let mut all: Vec<Condition> = conds.into_iter().collect();
        all.push(Condition::empty());
        all.sort();
        all.dedup();
        let given = all.len();
        loop {
            let mut fresh = Vec::new();
            for (i, p) in all.iter().enumerate() {
                for q in &all[i + 1..] {
                    if let Some(u) = p.union(q) {
                        if all.binary_search(&u).is_err() {
                            fresh.push(u);
                        }
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            all.extend(fresh);
            all.sort();
            all.dedup();
        }
        let added = all.len() - given;
        (ConditionPool::from_closed(all), added)
    }

    fn from_closed(conds: Vec<Condition>) -> ConditionPool {
        let index = conds.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let above = conds
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut ext = vec![i];
                ext.extend((0..conds.len()).filter(|&j| j != i && conds[j].extends(p)));
                ext
            })
            .collect();
        ConditionPool { conds, index, above }
    }

    /// All conditions with domain inside `0..keys` and values at most
    /// `max_value`.
    pub fn full(keys: u64, max_value: u64) -> ConditionPool {
        let mut conds = vec![Condition::empty()];
        for n in 0..keys {
            let mut next = Vec::new();
            for c in &conds {
                next.push(c.clone());
                for m in 0..=max_value {
                    next.push(c.with(n, m).expect("fresh key"));
                }
            }
            conds = next;
        }
        conds.sort();
        ConditionPool::from_closed(conds)
    }

    pub fn conditions(&self) -> &[Condition] {
        &self.conds
    }

    pub fn len(&self) -> usize {
        self.conds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conds.is_empty()
    }

    pub fn index_of(&self, p: &Condition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn extensions(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    /// Members extending `q`, which need not be a member itself.
    fn extensions_of(&self, q: &Condition) -> Vec<usize> {
        match self.index_of(q) {
            Some(i) => self.above[i].clone(),
            None => (0..self.conds.len()).filter(|&j| self.conds[j].extends(q)).collect(),
        }
    }

    /// One more than the largest number any member mentions.
    pub fn numeral_bound(&self) -> u64 {
        self.conds.iter().flat_map(|c| c.0.iter().map(|&(n, m)| n.max(m) + 1)).max().unwrap_or(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    GCanonical,
    CheckOfSet,
    OmegaCheck { bound: u64 },
}

/// A name over conditions: pairs `(p, z)` closed upwards in `p`.
#[derive(Clone)]
pub struct PName(Arc<PData>);

struct PData {
    entries: Vec<(Condition, PName)>,
    complete: bool,
    generator: Option<Generator>,
    rank: usize,
    fp: u64,
}

impl PName {
    /// Adds `(q, z)` for every pool member `q ⊇ p` of each entry `(p, z)`.
    pub fn new<I: IntoIterator<Item = (Condition, PName)>>(entries: I, pool: &ConditionPool) -> PName {
        let mut all = Vec::new();
        for (p, z) in entries {
            for j in pool.extensions_of(&p) {
                all.push((pool.conds[j].clone(), z.clone()));
            }
            all.push((p, z));
        }
        PName::raw(all, true, None)
    }

    fn raw(mut entries: Vec<(Condition, PName)>, complete: bool, generator: Option<Generator>) -> PName {
        entries.sort();
        entries.dedup();
        let rank = entries.iter().map(|(_, z)| z.rank() + 1).max().unwrap_or(0);
        let mut h = DefaultHasher::new();
        complete.hash(&mut h);
        for (p, z) in &entries {
            p.hash(&mut h);
            z.0.fp.hash(&mut h);
        }
        PName(Arc::new(PData { entries, complete, generator, rank, fp: h.finish() }))
    }

    pub fn empty() -> PName {
        PName::raw(Vec::new(), true, None)
    }

    pub fn entries(&self) -> &[(Condition, PName)] {
        &self.0.entries
    }

    /// Children `z` with `(p, z)` an entry.
    pub fn children_at<'a>(&'a self, p: &'a Condition) -> impl Iterator<Item = &'a PName> + 'a {
        let es = &self.0.entries;
        let lo = es.partition_point(|(q, _)| q < p);
        es[lo..].iter().take_while(move |(q, _)| q == p).map(|(_, z)| z)
    }

    pub fn is_complete(&self) -> bool {
        self.0.complete
    }

    pub fn generator(&self) -> Option<Generator> {
        self.0.generator
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    /// Whether `(p, z)` in the name always comes with `(q, z)` for the
    /// pool members `q ⊇ p`.
    pub fn is_upward_closed(&self, pool: &ConditionPool) -> bool {
        self.entries().iter().all(|(p, z)| {
            pool.extensions_of(p).into_iter().all(|j| self.children_at(&pool.conds[j]).any(|c| c == z))
        }) && self.entries().iter().all(|(_, z)| z.is_upward_closed(pool))
    }
}

impl PartialEq for PName {
    fn eq(&self, other: &PName) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.fp == other.0.fp && self.0.complete == other.0.complete && self.0.entries == other.0.entries)
    }
}

impl Eq for PName {}

impl Hash for PName {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.fp.hash(state);
    }
}

impl PartialOrd for PName {
    fn partial_cmp(&self, other: &PName) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PName {
    fn cmp(&self, other: &PName) -> std::cmp::Ordering {
        if self == other {
            return std::cmp::Ordering::Equal;
        }
        (self.0.rank, self.0.fp, self.0.complete, &self.0.entries).cmp(&(
            other.0.rank,
            other.0.fp,
            other.0.complete,
            &other.0.entries,
        ))
    }
}

impl fmt::Debug for PName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(pname (")?;
        for (i, (p, z)) in self.entries().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({p} {z})")?;
        }
        write!(f, ")")?;
        if !self.is_complete() {
            write!(f, " :truncated")?;
        }
        write!(f, ")")
    }
}

/// `ġ`, `x̌` and the truncated `ω̌` over one pool.
#[derive(Clone, Debug)]
pub struct GenericNames {
    gname: OnceLock<PName>,
    pub omega_check: PName,
    pool: ConditionPool,
    numerals: Vec<PName>,
    // memo tables, shared so that equal check names are pointer-equal
    checks: Arc<Mutex<HashMap<HfSet, PName>>>,
    more_numerals: Arc<Mutex<Vec<PName>>>,
}

impl GenericNames {
    /// Numerals and `ω̌` are cut at `bound`.
    pub fn new(pool: &ConditionPool, bound: u64) -> GenericNames {
        let mut numerals: Vec<PName> = Vec::new();
        for n in 0..bound {
            let below = numerals.iter().take(n as usize).cloned().collect::<Vec<_>>();
            numerals.push(everywhere(pool, below, Some(Generator::CheckOfSet)));
        }
        let omega = PName::raw(
            everywhere(pool, numerals[..bound as usize].to_vec(), None).0.entries.clone(),
            false,
            Some(Generator::OmegaCheck { bound }),
        );
        GenericNames {
            gname: OnceLock::new(),
            omega_check: omega,
            pool: pool.clone(),
            numerals,
            checks: Arc::default(),
            more_numerals: Arc::default(),
        }
    }

    /// `ġ = {(p, ⟨ň, m̌⟩_ℙ) | p ∈ ℙ, (n, m) ∈ p}`, built on first use.
    pub fn gname(&self) -> &PName {
        self.gname.get_or_init(|| {
            let mut g = Vec::new();
            for p in self.pool.conditions() {
                for &(n, m) in p.pairs() {
                    g.push((p.clone(), self.pair(&self.numeral(n), &self.numeral(m))));
                }
            }
            PName::raw(g, true, Some(Generator::GCanonical))
        })
    }

    pub fn pool(&self) -> &ConditionPool {
        &self.pool
    }

    /// `x̌ = {(p, y̌) | p ∈ ℙ, y ∈ x}`
    pub fn check(&self, u: &HfSet) -> PName {
        if let Some(x) = self.checks.lock().unwrap().get(u) {
            return x.clone();
        }
        let children: Vec<PName> = u.0.iter().map(|v| self.check(v)).collect();
        let k = children.len();
        let below: Vec<PName> = (0..k as u64).map(|n| self.numeral(n)).collect();
        let x = if children.iter().all(|c| below.iter().any(|m| Arc::ptr_eq(&c.0, &m.0))) {
            self.numeral(k as u64)
        } else {
            everywhere(&self.pool, children, Some(Generator::CheckOfSet))
        };
        self.checks.lock().unwrap().entry(u.clone()).or_insert(x).clone()
    }

    pub fn numeral(&self, n: u64) -> PName {
        match self.numerals.get(n as usize) {
            Some(x) => x.clone(),
            None => {
                let mut more = self.more_numerals.lock().unwrap();
                while (self.numerals.len() + more.len()) as u64 <= n {
                    let below = self.numerals.iter().chain(more.iter()).cloned().collect();
                    more.push(everywhere(&self.pool, below, Some(Generator::CheckOfSet)));
                }
                more[n as usize - self.numerals.len()].clone()
            }
        }
    }

    pub fn numeral_value(&self, x: &PName) -> Option<u64> {
        if let Some(i) = self.numerals.iter().position(|y| y == x) {
            return Some(i as u64);
        }
        // past the table: count the children and compare
        let n = x.children_at(&Condition::empty()).count() as u64;
        (n >= self.numerals.len() as u64 && *x == self.numeral(n)).then_some(n)
    }

    /// `{x}_ℙ = {(p, x) | p ∈ ℙ}`
    pub fn singleton(&self, x: &PName) -> PName {
        everywhere(&self.pool, vec![x.clone()], None)
    }

    /// `⟨x, y⟩_ℙ = {{x}_ℙ, {x, y}_ℙ}_ℙ`
    pub fn pair(&self, x: &PName, y: &PName) -> PName {
        let both = everywhere(&self.pool, vec![x.clone(), y.clone()], None);
        everywhere(&self.pool, vec![self.singleton(x), both], None)
    }
}

fn everywhere(pool: &ConditionPool, children: Vec<PName>, generator: Option<Generator>) -> PName {
    let entries = pool.conditions().iter().flat_map(|p| children.iter().map(move |z| (p.clone(), z.clone())));
    PName::raw(entries.collect(), true, generator)
}

/// Generic names with numerals cut at the pool's own bound.
pub fn mk_generic_names(pool: &ConditionPool) -> GenericNames {
    GenericNames::new(pool, pool.numeral_bound())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FTerm {
    Var(String),
    Name(PName),
    /// `ň`
    Num(u64),
    /// `⟨x, y⟩_ℙ`
    Pair(Box<FTerm>, Box<FTerm>),
    /// `ġ`
    G,
    /// `ω̌`, truncated.
    Omega,
}

impl FTerm {
    pub fn var(x: &str) -> FTerm {
        FTerm::Var(x.to_string())
    }

    pub fn pair(x: FTerm, y: FTerm) -> FTerm {
        FTerm::Pair(Box::new(x), Box::new(y))
    }
}

impl From<&str> for FTerm {
    fn from(x: &str) -> FTerm {
        FTerm::var(x)
    }
}

impl From<PName> for FTerm {
    fn from(x: PName) -> FTerm {
        FTerm::Name(x)
    }
}

impl From<u64> for FTerm {
    fn from(n: u64) -> FTerm {
        FTerm::Num(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FFormula {
    Mem(FTerm, FTerm),
    Eq(FTerm, FTerm),
    /// An arithmetic atom on numeral names, decided by evaluation.
    Prim(Arith),
    And(Box<FFormula>, Box<FFormula>),
    Or(Box<FFormula>, Box<FFormula>),
    Not(Box<FFormula>),
    Imp(Box<FFormula>, Box<FFormula>),
    AllIn(String, FTerm, Box<FFormula>),
    ExIn(String, FTerm, Box<FFormula>),
    All(String, Box<FFormula>),
    Ex(String, Box<FFormula>),
}

pub fn fmem(x: impl Into<FTerm>, y: impl Into<FTerm>) -> FFormula {
    FFormula::Mem(x.into(), y.into())
}

pub fn feq(x: impl Into<FTerm>, y: impl Into<FTerm>) -> FFormula {
    FFormula::Eq(x.into(), y.into())
}

pub fn fand(a: FFormula, b: FFormula) -> FFormula {
    FFormula::And(Box::new(a), Box::new(b))
}

pub fn for_(a: FFormula, b: FFormula) -> FFormula {
    FFormula::Or(Box::new(a), Box::new(b))
}

pub fn fnot(a: FFormula) -> FFormula {
    FFormula::Not(Box::new(a))
}

pub fn fimp(a: FFormula, b: FFormula) -> FFormula {
    FFormula::Imp(Box::new(a), Box::new(b))
}

pub fn fall_in(x: &str, y: impl Into<FTerm>, a: FFormula) -> FFormula {
    FFormula::AllIn(x.to_string(), y.into(), Box::new(a))
}

pub fn fex_in(x: &str, y: impl Into<FTerm>, a: FFormula) -> FFormula {
    FFormula::ExIn(x.to_string(), y.into(), Box::new(a))
}

pub fn fall(x: &str, a: FFormula) -> FFormula {
    FFormula::All(x.to_string(), Box::new(a))
}

pub fn fex(x: &str, a: FFormula) -> FFormula {
    FFormula::Ex(x.to_string(), Box::new(a))
}

/// `g(ň) = m̌` as `⟨ň, m̌⟩_ℙ ∈ ġ`.
pub fn g_at(n: u64, m: u64) -> FFormula {
    fmem(FTerm::pair(FTerm::Num(n), FTerm::Num(m)), FTerm::G)
}

impl FFormula {
    pub fn depth(&self) -> usize {
        match self {
            FFormula::Mem(..) | FFormula::Eq(..) | FFormula::Prim(_) => 0,
            FFormula::Not(a)
            | FFormula::AllIn(_, _, a)
            | FFormula::ExIn(_, _, a)
            | FFormula::All(_, a)
            | FFormula::Ex(_, a) => 1 + a.depth(),
            FFormula::And(a, b) | FFormula::Or(a, b) | FFormula::Imp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for FTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FTerm::Var(x) => write!(f, "{x}"),
            FTerm::Name(x) => write!(f, "{x}"),
            FTerm::Num(n) => write!(f, "(check {n})"),
            FTerm::Pair(x, y) => write!(f, "(pair {x} {y})"),
            FTerm::G => write!(f, "g"),
            FTerm::Omega => write!(f, "omega"),
        }
    }
}

impl fmt::Display for FFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FFormula::Mem(x, y) => write!(f, "(mem {x} {y})"),
            FFormula::Eq(x, y) => write!(f, "(eq {x} {y})"),
            FFormula::Prim(a) => write!(f, "(prim {a})"),
            FFormula::And(a, b) => write!(f, "(and {a} {b})"),
            FFormula::Or(a, b) => write!(f, "(or {a} {b})"),
            FFormula::Not(a) => write!(f, "(not {a})"),
            FFormula::Imp(a, b) => write!(f, "(imp {a} {b})"),
            FFormula::AllIn(x, y, a) => write!(f, "(allin {x} {y} {a})"),
            FFormula::ExIn(x, y, a) => write!(f, "(exin {x} {y} {a})"),
            FFormula::All(x, a) => write!(f, "(all {x} {a})"),
            FFormula::Ex(x, a) => write!(f, "(ex {x} {a})"),
        }
    }
}

/// An arithmetic formula over check names: `=` and `<` become `=` and `∈`
/// when both sides are numerals or variables, other atoms are decided on
/// the numerals, number quantifiers become bounded ones over `ω̌` or `ǩ`.
pub fn translate(phi: &Arith) -> FFormula {
    let term = |t: &ATerm| match t {
        ATerm::Num(n) => FTerm::Num(*n),
        ATerm::Var(x) => FTerm::var(x),
        _ => unreachable!("only simple terms translate"),
    };
    let range = |b: &Bound| match b {
        Bound::Omega => FTerm::Omega,
        Bound::Below(k) => FTerm::Num(*k),
    };
    match phi {
        Arith::Eq(a, b) if a.is_simple() && b.is_simple() => feq(term(a), term(b)),
        Arith::Lt(a, b) if a.is_simple() && b.is_simple() => fmem(term(a), term(b)),
        Arith::Eq(..) | Arith::Lt(..) => FFormula::Prim(phi.clone()),
        Arith::And(a, b) => fand(translate(a), translate(b)),
        Arith::Or(a, b) => for_(translate(a), translate(b)),
        Arith::Not(a) => fnot(translate(a)),
        Arith::Imp(a, b) => fimp(translate(a), translate(b)),
        Arith::All(x, k, a) => fall_in(x, range(k), translate(a)),
        Arith::Ex(x, k, a) => fex_in(x, range(k), translate(a)),
    }
}

type Env = Vec<(String, PName)>;

/// `p ⊩ φ` over a pool, with `∀x`/`∃x` ranging over `universe`.
pub struct Forcer<'a> {
    names: &'a GenericNames,
    universe: Vec<PName>,
    exhaustive: bool,
    memo: RefCell<HashMap<(usize, PName, PName, bool), TriState>>,
}

impl<'a> Forcer<'a> {
    pub fn new(names: &'a GenericNames) -> Forcer<'a> {
        Forcer { names, universe: Vec::new(), exhaustive: false, memo: RefCell::new(HashMap::new()) }
    }

    /// Unbounded quantifiers range over `universe`; flagging it exhaustive
    /// lets them return definite answers.
    pub fn with_universe(mut self, universe: Vec<PName>, exhaustive: bool) -> Forcer<'a> {
        self.universe = universe;
        self.exhaustive = exhaustive;
        self
    }

    fn pool(&self) -> &ConditionPool {
        &self.names.pool
    }

    pub fn force(&self, p: &Condition, phi: &FFormula) -> Result<TriState, ForcingError> {
        let i = self.pool().index_of(p).ok_or_else(|| ForcingError::NotInPool(p.clone()))?;
        self.at(i, phi, &mut Vec::new())
    }

    pub fn resolve(&self, t: &FTerm, env: &Env) -> Result<PName, ForcingError> {
        Ok(match t {
            FTerm::Var(x) => {
                env.iter().rev().find(|(y, _)| y == x).map(|(_, n)| n.clone()).ok_or_else(|| ForcingError::Unbound(x.clone()))?
            }
            FTerm::Name(n) => n.clone(),
            FTerm::Num(n) => self.names.numeral(*n),
            FTerm::Pair(x, y) => self.names.pair(&self.resolve(x, env)?, &self.resolve(y, env)?),
            FTerm::G => self.names.gname().clone(),
            FTerm::Omega => self.names.omega_check.clone(),
        })
    }

    fn ext(&self, i: usize) -> &[usize] {
        self.pool().extensions(i)
    }

    fn at(&self, i: usize, phi: &FFormula, env: &mut Env) -> Result<TriState, ForcingError> {
        Ok(match phi {
            FFormula::Mem(x, y) => self.mem(i, &self.resolve(x, env)?, &self.resolve(y, env)?),
            FFormula::Eq(x, y) => self.equal(i, &self.resolve(x, env)?, &self.resolve(y, env)?),
            FFormula::Prim(a) => self.prim(a, env),
            FFormula::And(a, b) => {
                let l = self.at(i, a, env)?;
                if l.refuted() {
                    l
                } else {
                    l.and(self.at(i, b, env)?)
                }
            }
            FFormula::Or(a, b) => {
                let l = self.at(i, a, env)?;
                if l.holds() {
                    l
                } else {
                    l.or(self.at(i, b, env)?)
                }
            }
            FFormula::Not(a) => self.all_ext(i, |q, env| Ok(self.at(q, a, env)?.not()), env)?,
            FFormula::Imp(a, b) => self.all_ext(
                i,
                |q, env| {
                    let l = self.at(q, a, env)?;
                    if l.refuted() {
                        return Ok(TriState::Holds);
                    }
                    Ok(l.not().or(self.any_ext(q, |r, env| self.at(r, b, env), env)?))
                },
                env,
            )?,
            FFormula::AllIn(x, y, a) => {
                let y = self.resolve(y, env)?;
                let p = &self.pool().conds[i];
                let mut acc = TriState::Holds;
                for (q, z) in y.entries().iter().filter(|(q, _)| q.extends(p)) {
                    let r = self.pool().extensions_of(q);
                    let here = self.bind(env, x, z, |env| self.any_of(&r, |s, env| self.at(s, a, env), env))?;
                    acc = acc.and(here);
                    if acc.refuted() {
                        break;
                    }
                }
                acc.weaken_if(!y.is_complete(), Reason::EnumerationBound)
            }
            FFormula::ExIn(x, y, a) => {
                let y = self.resolve(y, env)?;
                let p = self.pool().conds[i].clone();
                let mut acc = TriState::Refuted;
                for z in y.children_at(&p) {
                    acc = acc.or(self.bind(env, x, z, |env| self.at(i, a, env))?);
                    if acc.holds() {
                        break;
                    }
                }
                open_if(acc, !y.is_complete())
            }
            FFormula::All(x, a) => {
                let mut acc = TriState::Holds;
                for z in &self.universe {
                    let here = self.bind(env, x, z, |env| {
                        self.all_ext(i, |q, env| self.any_ext(q, |r, env| self.at(r, a, env), env), env)
                    })?;
                    acc = acc.and(here);
                    if acc.refuted() {
                        break;
                    }
                }
                acc.weaken_if(!self.exhaustive, Reason::EnumerationBound)
            }
            FFormula::Ex(x, a) => {
                let mut acc = TriState::Refuted;
                for z in &self.universe {
                    acc = acc.or(self.bind(env, x, z, |env| self.at(i, a, env))?);
                    if acc.holds() {
                        break;
                    }
                }
                open_if(acc, !self.exhaustive)
            }
        })
    }

    fn bind<T>(&self, env: &mut Env, x: &str, z: &PName, f: impl FnOnce(&mut Env) -> T) -> T {
        env.push((x.to_string(), z.clone()));
        let out = f(env);
        env.pop();
        out
    }

    fn all_ext(
        &self,
        i: usize,
        mut f: impl FnMut(usize, &mut Env) -> Result<TriState, ForcingError>,
        env: &mut Env,
    ) -> Result<TriState, ForcingError> {
        let mut acc = TriState::Holds;
        for &q in self.ext(i) {
            acc = acc.and(f(q, env)?);
            if acc.refuted() {
                break;
            }
        }
        Ok(acc)
    }

    fn any_ext(
        &self,
        i: usize,
        f: impl FnMut(usize, &mut Env) -> Result<TriState, ForcingError>,
        env: &mut Env,
    ) -> Result<TriState, ForcingError> {
        let ext = self.ext(i).to_vec();
        self.any_of(&ext, f, env)
    }

    fn any_of(
        &self,
        idx: &[usize],
        mut f: impl FnMut(usize, &mut Env) -> Result<TriState, ForcingError>,
        env: &mut Env,
    ) -> Result<TriState, ForcingError> {
        let mut acc = TriState::Refuted;
        for &r in idx {
            acc = acc.or(f(r, env)?);
            if acc.holds() {
                break;
            }
        }
        Ok(acc)
    }

    fn prim(&self, a: &Arith, env: &Env) -> TriState {
        let mut vals = Vec::new();
        for x in a.free_vars() {
            let Some(n) = env.iter().rev().find(|(y, _)| *y == x).and_then(|(_, z)| self.names.numeral_value(z)) else {
                return TriState::Unknown(Reason::EnumerationBound);
            };
            vals.push((x, n));
        }
        a.eval(&mut vals, 0)
    }

    /// `∃z ((p, z) ∈ y ∧ p ⊩ x = z)`
    pub fn mem(&self, i: usize, x: &PName, y: &PName) -> TriState {
        let key = (i, x.clone(), y.clone(), true);
        if let Some(&r) = self.memo.borrow().get(&key) {
            return r;
        }
        let p = &self.pool().conds[i];
        let r = TriState::any(y.children_at(p), |z| self.equal(i, x, z));
        let r = open_if(r, !y.is_complete());
        self.memo.borrow_mut().insert(key, r);
        r
    }

    /// Both halves of `∀(q, z) ∈ x (q ⊇ p → ∃r ⊇ q (r ⊩ z ∈ y))`.
    pub fn equal(&self, i: usize, x: &PName, y: &PName) -> TriState {
        if x == y && x.is_complete() {
            return TriState::Holds;
        }
        let key = (i, x.clone(), y.clone(), false);
        if let Some(&r) = self.memo.borrow().get(&key) {
            return r;
        }
        let half = |a: &PName, b: &PName| {
            let p = &self.pool().conds[i];
            let r = TriState::all(a.entries().iter().filter(|(q, _)| q.extends(p)), |(q, z)| {
                TriState::any(self.pool().extensions_of(q), |r| self.mem(r, z, b))
            });
            r.weaken_if(!a.is_complete(), Reason::EnumerationBound)
        };
        let l = half(x, y);
        let r = if l.refuted() { l } else { l.and(half(y, x)) };
        self.memo.borrow_mut().insert(key, r);
        r
    }
}

fn open_if(r: TriState, truncated: bool) -> TriState {
    if truncated && r.refuted() {
        TriState::Unknown(Reason::EnumerationBound)
    } else {
        r
    }
}

/// One-shot `p ⊩ φ` with no unbounded quantifiers in play.
pub fn force_check(p: &Condition, phi: &FFormula, names: &GenericNames) -> Result<TriState, ForcingError> {
    Forcer::new(names).force(p, phi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Defined(Element),
    Stuck,
    /// The oracle was asked about `n ∉ dom(p)`: some extension may answer.
    NeedsOracle(u64),
    FuelOut,
}

impl fmt::Display for OracleOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleOutcome::Defined(e) => write!(f, "defined {e}"),
            OracleOutcome::Stuck => write!(f, "stuck"),
            OracleOutcome::NeedsOracle(n) => write!(f, "needs-oracle {n}"),
            OracleOutcome::FuelOut => write!(f, "fuelout"),
        }
    }
}

impl From<Result<Element, Halt>> for OracleOutcome {
    fn from(r: Result<Element, Halt>) -> OracleOutcome {
        match r {
            Ok(e) => OracleOutcome::Defined(e),
            Err(Halt::Stuck) => OracleOutcome::Stuck,
            Err(Halt::FuelOut) => OracleOutcome::FuelOut,
            Err(Halt::NeedsOracle(n)) => OracleOutcome::NeedsOracle(n),
        }
    }
}

/// `{e}^p(a)`: `ORACLE n̄` reduces to `m̄` for `(n, m) ∈ p`.
pub fn oracle_apply(e: &Element, a: &Element, p: &Condition, fuel: Fuel) -> OracleOutcome {
    oracle_eval(&Term::app(e.term().clone(), a.term().clone()), p, fuel)
}

pub fn oracle_eval(t: &Term, p: &Condition, fuel: Fuel) -> OracleOutcome {
    reduce_with(t, fuel, p).map(|(e, _)| e).into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubKind {
    Atom,
    And,
    Or,
    Not,
    Imp,
    All,
    Ex,
}

#[derive(Clone, Debug)]
pub struct Subformula {
    pub index: u64,
    pub kind: SubKind,
    pub formula: Arith,
    /// Its free variables, outermost binder first.
    pub vars: Vec<String>,
}

/// The subformula table of a fixed arithmetic formula: atoms are numbered
/// first, then compound subformulas, both in preorder from 1.
#[derive(Clone, Debug)]
pub struct ForcingNotion {
    pub phi: Arith,
    pub table: Vec<Subformula>,
    by_path: HashMap<Vec<u8>, usize>,
    /// Unbounded searches while checking witnesses stop here.
    pub search: u64,
}

impl ForcingNotion {
    pub fn new(phi: &Arith) -> ForcingNotion {
        let mut found = Vec::new();
        collect(phi, &mut Vec::new(), &mut phi.free_vars(), &mut found);
        let (atoms, compound): (Vec<_>, Vec<_>) = found.into_iter().partition(|(_, s)| s.kind == SubKind::Atom);
        let mut table = Vec::new();
        let mut by_path = HashMap::new();
        for (path, mut s) in atoms.into_iter().chain(compound) {
            s.index = table.len() as u64 + 1;
            by_path.insert(path, table.len());
            table.push(s);
        }
        ForcingNotion { phi: phi.clone(), table, by_path, search: 1000 }
    }

    pub fn entry(&self, index: u64) -> Option<&Subformula> {
        index.checked_sub(1).and_then(|i| self.table.get(i as usize))
    }

    fn at_path(&self, path: &[u8]) -> &Subformula {
        &self.table[self.by_path[path]]
    }

    /// The oracle key `(i, a₁, …, a_j)` for subformula `index`.
    pub fn key(&self, index: u64, args: &[u64]) -> Option<u64> {
        let mut t = vec![index];
        t.extend_from_slice(args);
        arith::encode_tuple(&t)
    }

    /// What a coherent condition must answer at `key`, if it constrains
    /// it at all: the first disjunct that holds, or the least witness.
    pub fn witness(&self, key: u64) -> Option<u64> {
        let (s, mut env) = self.decode(key)?;
        match &s.formula {
            Arith::Or(a, _) => Some(if a.eval(&mut env, self.search).holds() { 0 } else { 1 }),
            Arith::Ex(x, bound, a) => {
                let n = match bound {
                    Bound::Omega => self.search,
                    Bound::Below(k) => *k,
                };
                (0..n).find(|&v| {
                    env.push((x.clone(), v));
                    let ok = a.eval(&mut env, self.search).holds();
                    env.pop();
                    ok
                })
            }
            _ => None,
        }
    }

    fn decode(&self, key: u64) -> Option<(&Subformula, Vec<(String, u64)>)> {
        let t = arith::decode_tuple(key);
        let (&i, args) = t.split_first()?;
        let s = self.entry(i)?;
        (s.vars.len() == args.len()).then(|| (s, s.vars.iter().cloned().zip(args.iter().copied()).collect()))
    }
}

fn collect(phi: &Arith, path: &mut Vec<u8>, context: &mut Vec<String>, out: &mut Vec<(Vec<u8>, Subformula)>) {
    let free = phi.free_vars();
    let vars = context.iter().filter(|v| free.contains(v)).cloned().collect();
    let kind = match phi {
        Arith::Eq(..) | Arith::Lt(..) => SubKind::Atom,
        Arith::And(..) => SubKind::And,
        Arith::Or(..) => SubKind::Or,
        Arith::Not(_) => SubKind::Not,
        Arith::Imp(..) => SubKind::Imp,
        Arith::All(..) => SubKind::All,
        Arith::Ex(..) => SubKind::Ex,
    };
    out.push((path.clone(), Subformula { index: 0, kind, formula: phi.clone(), vars }));
    let mut child = |k: u8, a: &Arith, context: &mut Vec<String>| {
        path.push(k);
        collect(a, path, context, out);
        path.pop();
    };
    match phi {
        Arith::Eq(..) | Arith::Lt(..) => {}
        Arith::Not(a) => child(0, a, context),
        Arith::And(a, b) | Arith::Or(a, b) | Arith::Imp(a, b) => {
            child(0, a, context);
            child(1, b, context);
        }
        Arith::All(x, _, a) | Arith::Ex(x, _, a) => {
            let saved = context.clone();
            context.retain(|v| v != x);
            context.push(x.clone());
            child(0, a, context);
            *context = saved;
        }
    }
}

/// `p ∈ ℙ_φ`: at every key coding a disjunction, `p` names a disjunct that
/// holds; at every key coding an existential, `p` names a witness. Other
/// keys are free. A witness the direct evaluator cannot confirm within the
/// search bound counts against membership.
pub fn in_forcing_notion(p: &Condition, notion: &ForcingNotion) -> bool {
    p.pairs().iter().all(|&(key, val)| {
        let Some((s, mut env)) = notion.decode(key) else { return true };
        match &s.formula {
            Arith::Or(a, b) => match val {
                0 => a.eval(&mut env, notion.search).holds(),
                1 => b.eval(&mut env, notion.search).holds(),
                _ => false,
            },
            Arith::Ex(x, bound, a) => {
                if matches!(bound, Bound::Below(k) if val >= *k) {
                    return false;
                }
                env.push((x.clone(), val));
                a.eval(&mut env, notion.search).holds()
            }
            _ => true,
        }
    })
}

/// Oracle keys are computed for arguments below this; past it the key
/// term is stuck.
pub const KEY_RANGE: u64 = 16;

/// The tuple code of `xs` as a term: literal numerals are folded, other
/// arguments are dispatched on with `D` over `0..KEY_RANGE`.
pub fn tuple_code_term(xs: &[Term]) -> Term {
    fn go(known: &mut Vec<u64>, rest: &[Term]) -> Term {
        let Some((x, rest)) = rest.split_first() else {
            return arith::encode_tuple(known).map_or_else(stuck, Term::num);
        };
        if let Term::Num(n) = x {
            known.push(*n);
            let t = go(known, rest);
            known.pop();
            return t;
        }
        (0..KEY_RANGE).rev().fold(stuck(), |other, v| {
            known.push(v);
            let here = go(known, rest);
            known.pop();
            Term::apps(Term::d(), [x.clone(), Term::num(v), here, other])
        })
    }
    go(&mut Vec::new(), xs)
}

fn stuck() -> Term {
    Term::app(Term::pred(), Term::num(0))
}

/// `e_φ` with `{e_φ}^f(ā, 0)` read off the oracle: conjunctions pair,
/// disjunctions and existentials ask `f` at `(i, ā)`, number universals
/// take the number as a further argument, atoms give `0̄`.
pub fn mk_self_realizer(phi: &Arith) -> Result<Element, ForcingError> {
    let notion = ForcingNotion::new(phi);
    Ok(value_of(&compile(&notion, phi, &mut Vec::new())?))
}

fn var(x: &str) -> Term {
    Term::var(&format!("%v{x}"))
}

fn call(notion: &ForcingNotion, sub: &Arith, path: &mut Vec<u8>, k: u8) -> Result<Term, ForcingError> {
    path.push(k);
    let e = compile(notion, sub, path)?;
    let args: Vec<Term> = notion.at_path(path).vars.iter().map(|x| var(x)).collect();
    path.pop();
    Ok(Term::apps(e, args.into_iter().chain([Term::num(0)])))
}

fn compile(notion: &ForcingNotion, phi: &Arith, path: &mut Vec<u8>) -> Result<Term, ForcingError> {
    let me = notion.at_path(path).clone();
    let key = || {
        let mut xs = vec![Term::num(me.index)];
        xs.extend(me.vars.iter().map(|x| var(x)));
        Term::app(Term::oracle(), tuple_code_term(&xs))
    };
    let mut params: Vec<String> = me.vars.iter().map(|x| format!("%v{x}")).collect();
    params.push("%z".to_string());
    let body = match phi {
        Arith::Eq(..) | Arith::Lt(..) => Term::num(0),
        Arith::And(a, b) => Term::pair(call(notion, a, path, 0)?, call(notion, b, path, 1)?),
        Arith::Or(a, b) => {
            let pick = lambda(
                &["%t"],
                &Term::pair(
                    Term::var("%t"),
                    Term::apps(Term::d(), [Term::var("%t"), Term::num(0), call(notion, a, path, 0)?, call(notion, b, path, 1)?]),
                ),
            );
            Term::app(pick, key())
        }
        Arith::Ex(x, _, a) => {
            let pick = lambda(&[&format!("%v{x}")], &Term::pair(var(x), call(notion, a, path, 0)?));
            Term::app(pick, key())
        }
        Arith::All(x, _, a) => {
            params.push(format!("%v{x}"));
            call(notion, a, path, 0)?
        }
        Arith::Not(_) => return Err(ForcingError::UnsupportedConnective("not")),
        Arith::Imp(..) => return Err(ForcingError::UnsupportedConnective("imp")),
    };
    let refs: Vec<&str> = params.iter().map(String::as_str).collect();
    Ok(lambda(&refs, &body))
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodmanStep {
    pub key: u64,
    pub subformula: u64,
    pub answer: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodmanReport {
    pub phi: String,
    pub table: Vec<String>,
    pub steps: Vec<GoodmanStep>,
    pub condition: String,
    pub in_notion: bool,
    pub realizer_value: String,
    pub forced: String,
    pub forced_densely: String,
    pub direct: String,
    pub verdict: String,
}

/// Runs a closed formula through the pipeline: build `ℙ_φ` and `e_φ`,
/// extend `∅` one oracle query at a time with coherent answers until
/// `{e_φ}^p(0)` is defined, force `φ` at `p` over its restrictions, and
/// read the arithmetic verdict off the forcing.
pub fn goodman_demo(phi: &Arith, fuel: Fuel) -> Result<GoodmanReport, ForcingError> {
    let notion = ForcingNotion::new(phi);
    let e = mk_self_realizer(phi)?;
    let mut p = Condition::empty();
    let mut steps = Vec::new();
    let value = loop {
        match oracle_apply(&e, &Element::num(0), &p, fuel) {
            OracleOutcome::NeedsOracle(key) => {
                let Some(answer) = notion.witness(key) else {
                    break OracleOutcome::NeedsOracle(key);
                };
                let subformula = arith::decode_tuple(key)[0];
                steps.push(GoodmanStep { key, subformula, answer });
                p = p.with(key, answer)?;
            }
            other => break other,
        }
    };
    let in_notion = in_forcing_notion(&p, &notion);
    let (pool, _) = ConditionPool::new(p.restrictions());
    let names = GenericNames::new(&pool, notion.search.min(64));
    let forcer = Forcer::new(&names);
    let target = translate(phi);
    let forced = forcer.force(&p, &target)?;
    let densely = TriState::all(0..pool.len(), |i| {
        TriState::any(pool.extensions(i).to_vec(), |j| forcer.at(j, &target, &mut Vec::new()).unwrap_or(TriState::Unknown(Reason::EnumerationBound)))
    });
    let direct = phi.eval_closed(notion.search);
    let verdict = if forced.holds() && densely.holds() && in_notion { "holds" } else { "undetermined" };
    Ok(GoodmanReport {
        phi: phi.to_string(),
        table: notion.table.iter().map(|s| format!("{} {:?} {} {:?}", s.index, s.kind, s.formula, s.vars)).collect(),
        steps,
        condition: p.to_string(),
        in_notion,
        realizer_value: value.to_string(),
        forced: forced.to_string(),
        forced_densely: densely.to_string(),
        direct: direct.to_string(),
        verdict: verdict.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{eq as aeq, ex as aex, ATerm};
    use crate::pca::{apply, EvalOutcome, DEFAULT_FUEL};

    fn small_pool() -> ConditionPool {
        ConditionPool::full(2, 1)
    }

    #[test]
    fn empty_forces_zero_equals_zero() {
        let pool = small_pool();
        let names = mk_generic_names(&pool);
        assert_eq!(force_check(&Condition::empty(), &feq(0u64, 0u64), &names), Ok(TriState::Holds));
        assert_eq!(force_check(&Condition::empty(), &feq(0u64, 1u64), &names), Ok(TriState::Refuted));
    }

    #[test]
    fn generic_law_on_small_pool() {
        let pool = small_pool();
        let names = mk_generic_names(&pool);
        for p in pool.conditions() {
            for n in 0..2 {
                for m in 0..2 {
                    let want = TriState::from_bool(p.contains(n, m));
                    assert_eq!(force_check(p, &g_at(n, m), &names), Ok(want), "{p} g({n})={m}");
                }
            }
        }
    }

    #[test]
    fn generic_name_lives_above_nonempty_conditions() {
        let one = Condition::new([(0, 1)]).unwrap();
        let (pool, added) = ConditionPool::new([one.clone()]);
        assert_eq!(added, 0);
        let names = mk_generic_names(&pool);
        assert!(names.gname().entries().iter().all(|(p, _)| *p == one));
        assert_eq!(names.gname().entries().len(), 1);
    }

    #[test]
    fn checks_of_small_sets() {
        let pool = small_pool();
        let names = mk_generic_names(&pool);
        assert!(names.check(&HfSet::empty()).entries().is_empty());
        let one = names.check(&HfSet::ordinal(1));
        assert_eq!(one.entries().len(), pool.len());
        assert!(one.entries().iter().all(|(_, z)| z.entries().is_empty()));
        assert_eq!(names.numeral(2), names.check(&HfSet::ordinal(2)));
        assert!(!names.omega_check.is_complete());
        assert!(names.gname().is_upward_closed(&pool));
    }

    #[test]
    fn union_closure_reports_additions() {
        let a = Condition::new([(0, 0)]).unwrap();
        let b = Condition::new([(1, 1)]).unwrap();
        let (pool, added) = ConditionPool::new([a, b]);
        assert_eq!(added, 1);
        assert!(pool.index_of(&Condition::new([(0, 0), (1, 1)]).unwrap()).is_some());
    }

    #[test]
    fn oracle_fires_on_the_condition() {
        let e = value_of(&lambda(&["x"], &Term::app(Term::oracle(), Term::var("x"))));
        let p = Condition::new([(3, 7)]).unwrap();
        assert_eq!(oracle_apply(&e, &Element::num(3), &p, DEFAULT_FUEL), OracleOutcome::Defined(Element::num(7)));
        assert_eq!(oracle_apply(&e, &Element::num(3), &Condition::empty(), DEFAULT_FUEL), OracleOutcome::NeedsOracle(3));
        let k = value_of(&Term::k());
        let plain = apply(&k, &Element::num(2), DEFAULT_FUEL);
        let EvalOutcome::Defined(v) = plain else { panic!() };
        assert_eq!(oracle_apply(&k, &Element::num(2), &p, DEFAULT_FUEL), OracleOutcome::Defined(v));
    }

    #[test]
    fn tuple_code_in_the_algebra_matches() {
        // arguments arrive as unevaluated terms
        let late = |x: u64| Term::app(Term::pred(), Term::num(x + 1));
        for xs in [vec![], vec![2], vec![1, 0], vec![3, 1, 2], vec![15, 15]] {
            let t = tuple_code_term(&xs.iter().map(|&x| late(x)).collect::<Vec<_>>());
            let want = arith::encode_tuple(&xs).unwrap();
            assert_eq!(oracle_eval(&t, &Condition::empty(), DEFAULT_FUEL), OracleOutcome::Defined(Element::num(want)));
        }
        let t = tuple_code_term(&[Term::num(1), late(KEY_RANGE)]);
        assert_eq!(oracle_eval(&t, &Condition::empty(), DEFAULT_FUEL), OracleOutcome::Stuck);
    }

    fn exists_two() -> Arith {
        aex("y", Bound::Omega, aeq(ATerm::var("y"), ATerm::Num(2)))
    }

    #[test]
    fn forcing_notion_for_an_existential() {
        let phi = exists_two();
        let notion = ForcingNotion::new(&phi);
        let ex = notion.table.iter().find(|s| s.kind == SubKind::Ex).unwrap();
        let key = notion.key(ex.index, &[]).unwrap();
        assert!(in_forcing_notion(&Condition::empty(), &notion));
        assert!(in_forcing_notion(&Condition::new([(key, 2)]).unwrap(), &notion));
        assert!(!in_forcing_notion(&Condition::new([(key, 3)]).unwrap(), &notion));
        // the atom's index is not a disjunction or existential
        let atom = notion.key(1, &[]).unwrap();
        assert!(in_forcing_notion(&Condition::new([(atom, 9)]).unwrap(), &notion));
    }

    #[test]
    fn self_realizer_reads_the_witness() {
        let phi = exists_two();
        let notion = ForcingNotion::new(&phi);
        let key = notion.key(2, &[]).unwrap();
        let e = mk_self_realizer(&phi).unwrap();
        let p = Condition::new([(key, 2)]).unwrap();
        let OracleOutcome::Defined(v) = oracle_apply(&e, &Element::num(0), &p, DEFAULT_FUEL) else { panic!() };
        assert_eq!(v, Element::pair(&Element::num(2), &Element::num(0)));
        assert_eq!(oracle_apply(&e, &Element::num(0), &Condition::empty(), DEFAULT_FUEL), OracleOutcome::NeedsOracle(key));
    }

    #[test]
    fn conjunction_of_atoms_needs_no_oracle() {
        let phi = crate::arith::and(aeq(ATerm::Num(0), ATerm::Num(0)), aeq(ATerm::Num(1), ATerm::Num(1)));
        let e = mk_self_realizer(&phi).unwrap();
        let zero = Element::num(0);
        assert_eq!(oracle_apply(&e, &zero, &Condition::empty(), DEFAULT_FUEL), OracleOutcome::Defined(Element::pair(&zero, &zero)));
    }

    #[test]
    fn negation_has_no_oracle_realizer() {
        let phi = crate::arith::not(aeq(ATerm::Num(0), ATerm::Num(1)));
        assert_eq!(mk_self_realizer(&phi), Err(ForcingError::UnsupportedConnective("not")));
    }

    #[test]
    fn goodman_demo_on_a_square() {
        let y = || ATerm::var("y");
        let phi = aex("y", Bound::Omega, aeq(ATerm::mul(y(), y()), ATerm::Num(9)));
        let r = goodman_demo(&phi, DEFAULT_FUEL).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.steps[0].answer, 3);
        assert!(r.in_notion);
        assert_eq!(r.forced, "holds");
        assert_eq!(r.direct, "holds");
        assert_eq!(r.verdict, "holds");
    }

    #[test]
    fn universal_realizer_takes_the_number() {
        let (x, y) = (|| ATerm::var("x"), || ATerm::var("y"));
        let body = aex("y", Bound::Omega, aeq(y(), ATerm::Succ(Box::new(x()))));
        let phi = crate::arith::all("x", Bound::Below(3), body);
        let notion = ForcingNotion::new(&phi);
        let ex = notion.table.iter().find(|s| s.kind == SubKind::Ex).unwrap();
        assert_eq!(ex.vars, ["x"]);
        let keys: Vec<u64> = (0..3).map(|a| notion.key(ex.index, &[a]).unwrap()).collect();
        let p = Condition::new(keys.iter().enumerate().map(|(a, &k)| (k, a as u64 + 1))).unwrap();
        assert!(in_forcing_notion(&p, &notion));
        assert!(!in_forcing_notion(&Condition::new([(keys[0], 0)]).unwrap(), &notion));
        let e = mk_self_realizer(&phi).unwrap();
        let zero = Element::num(0);
        for a in 0..3 {
            let t = Term::apps(e.term().clone(), [Term::num(0), Term::num(a)]);
            let want = Element::pair(&Element::num(a + 1), &zero);
            assert_eq!(oracle_eval(&t, &p, DEFAULT_FUEL), OracleOutcome::Defined(want));
            assert_eq!(oracle_eval(&t, &Condition::empty(), DEFAULT_FUEL), OracleOutcome::NeedsOracle(keys[a as usize]));
        }
    }
}
