//! Closed combinator terms under fuel-bounded normal-order reduction.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    K,
    S,
    P,
    P0,
    P1,
    Succ,
    Pred,
    D,
    Oracle,
}

impl Sym {
    pub const ALL: [Sym; 9] = [
        Sym::K,
        Sym::S,
        Sym::P,
        Sym::P0,
        Sym::P1,
        Sym::Succ,
        Sym::Pred,
        Sym::D,
        Sym::Oracle,
    ];

    /// Number of arguments after which the constant fires.
    pub fn arity(self) -> usize {
        match self {
            Sym::K => 2,
            Sym::S | Sym::P => 3,
            Sym::P0 | Sym::P1 | Sym::Succ | Sym::Pred | Sym::Oracle => 1,
            Sym::D => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sym::K => "K",
            Sym::S => "S",
            Sym::P => "P",
            Sym::P0 => "P0",
            Sym::P1 => "P1",
            Sym::Succ => "SUCC",
            Sym::Pred => "PRED",
            Sym::D => "D",
            Sym::Oracle => "ORACLE",
        }
    }

    pub fn from_name(s: &str) -> Option<Sym> {
        Sym::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(Arc<str>),
    Const(Sym),
    Num(u64),
    App(Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(Arc::from(x))
    }

    pub fn num(n: u64) -> Term {
        Term::Num(n)
    }

    pub fn app(f: Term, x: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(x))
    }

    /// Left-associated application `f a0 a1 ...`.
    pub fn apps<I: IntoIterator<Item = Term>>(f: Term, args: I) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn k() -> Term {
        Term::Const(Sym::K)
    }
    pub fn s() -> Term {
        Term::Const(Sym::S)
    }
    pub fn p() -> Term {
        Term::Const(Sym::P)
    }
    pub fn p0() -> Term {
        Term::Const(Sym::P0)
    }
    pub fn p1() -> Term {
        Term::Const(Sym::P1)
    }
    pub fn succ() -> Term {
        Term::Const(Sym::Succ)
    }
    pub fn pred() -> Term {
        Term::Const(Sym::Pred)
    }
    pub fn d() -> Term {
        Term::Const(Sym::D)
    }
    pub fn oracle() -> Term {
        Term::Const(Sym::Oracle)
    }
    /// `S K K`
    pub fn i() -> Term {
        Term::apps(Term::s(), [Term::k(), Term::k()])
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::apps(Term::p(), [a, b])
    }

    /// Head and arguments of the application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Term::App(f, x) = t {
            args.push(&**x);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    /// Whether some leaf satisfies `p`. Shared subterms are visited once.
    fn any_leaf(&self, p: &dyn Fn(&Term) -> bool) -> bool {
        let mut seen: HashSet<*const Term> = HashSet::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Term::App(f, x) => {
                    for c in [f, x] {
                        if seen.insert(Arc::as_ptr(c)) {
                            stack.push(c);
                        }
                    }
                }
                leaf if p(leaf) => return true,
                _ => {}
            }
        }
        false
    }

    pub fn is_closed(&self) -> bool {
        !self.any_leaf(&|t| matches!(t, Term::Var(_)))
    }

    pub fn occurs(&self, x: &str) -> bool {
        self.any_leaf(&|t| matches!(t, Term::Var(y) if &**y == x))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        fn go(t: &Term, acc: &mut BTreeSet<String>) {
            match t {
                Term::Var(y) => {
                    acc.insert(y.to_string());
                }
                Term::Const(_) | Term::Num(_) => {}
                Term::App(f, a) => {
                    go(f, acc);
                    go(a, acc);
                }
            }
        }
        let mut acc = BTreeSet::new();
        go(self, &mut acc);
        acc
    }

    pub fn subst(&self, x: &str, v: &Term) -> Term {
        match self {
            Term::Var(y) if &**y == x => v.clone(),
            Term::Var(_) | Term::Const(_) | Term::Num(_) => self.clone(),
            Term::App(f, a) => {
                if !self.occurs(x) {
                    return self.clone();
                }
                Term::app(f.subst(x, v), a.subst(x, v))
            }
        }
    }

    /// Syntactic normal form: no redex and nothing stuck anywhere.
    pub fn is_value(&self) -> bool {
        let (head, args) = self.spine();
        match head {
            Term::Num(_) => args.is_empty(),
            Term::Const(c) => args.len() < c.arity() && args.iter().all(|a| a.is_value()),
            Term::Var(_) | Term::App(..) => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::App(f, x) => 1 + f.size() + x.size(),
            _ => 1,
        }
    }
}

// Terms built from realizers share subterms heavily, so hashing looks at a
// bounded prefix and comparison short-cuts on shared pointers.
const HASH_NODES: usize = 48;

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let mut stack = vec![self];
        let mut left = HASH_NODES;
        while let Some(t) = stack.pop() {
            if left == 0 {
                break;
            }
            left -= 1;
            match t {
                Term::Var(x) => (0u8, &**x).hash(state),
                Term::Const(c) => (1u8, *c).hash(state),
                Term::Num(n) => (2u8, *n).hash(state),
                Term::App(f, x) => {
                    3u8.hash(state);
                    stack.push(x);
                    stack.push(f);
                }
            }
        }
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Term) -> Ordering {
        fn rank(t: &Term) -> u8 {
            match t {
                Term::Var(_) => 0,
                Term::Const(_) => 1,
                Term::Num(_) => 2,
                Term::App(..) => 3,
            }
        }
        match (self, other) {
            (Term::Var(a), Term::Var(b)) => a.cmp(b),
            (Term::Const(a), Term::Const(b)) => a.cmp(b),
            (Term::Num(a), Term::Num(b)) => a.cmp(b),
            (Term::App(f, x), Term::App(g, y)) => {
                let part = |a: &Arc<Term>, b: &Arc<Term>| {
                    if Arc::ptr_eq(a, b) {
                        Ordering::Equal
                    } else {
                        a.cmp(b)
                    }
                };
                part(f, g).then_with(|| part(x, y))
            }
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Term) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::Const(c) => write!(f, "{}", c.name()),
            Term::Num(n) => write!(f, "(num {n})"),
            Term::App(..) => {
                let (head, args) = self.spine();
                write!(f, "({head}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A closed term in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Term);

impl Element {
    /// Wraps a term already known to be a closed normal form.
    pub fn from_value(t: Term) -> Option<Element> {
        (t.is_closed() && t.is_value()).then_some(Element(t))
    }

    pub fn num(n: u64) -> Element {
        Element(Term::Num(n))
    }

    pub fn konst(c: Sym) -> Element {
        Element(Term::Const(c))
    }

    /// `P a b` is always a normal form.
    pub fn pair(a: &Element, b: &Element) -> Element {
        Element(Term::pair(a.0.clone(), b.0.clone()))
    }

    pub fn term(&self) -> &Term {
        &self.0
    }

    pub fn into_term(self) -> Term {
        self.0
    }

    pub fn as_num(&self) -> Option<u64> {
        match self.0 {
            Term::Num(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(Element, Element)> {
        match &self.0 {
            Term::App(f, b) => match &**f {
                Term::App(p, a) if **p == Term::Const(Sym::P) => {
                    Some((Element((**a).clone()), Element((**b).clone())))
                }
                _ => None,
            },
            _ => None,
        }
    }

    pub fn fst(&self) -> Option<Element> {
        self.as_pair().map(|(a, _)| a)
    }

    pub fn snd(&self) -> Option<Element> {
        self.as_pair().map(|(_, b)| b)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub type Fuel = u64;

pub const DEFAULT_FUEL: Fuel = 100_000;

/// `EXT_REAL_FUEL` overrides the default budget.
pub fn default_fuel() -> Fuel {
    std::env::var("EXT_REAL_FUEL")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_FUEL)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalOutcome {
    Defined(Element),
    Stuck,
    FuelOut,
}

impl EvalOutcome {
    pub fn defined(self) -> Option<Element> {
        match self {
            EvalOutcome::Defined(e) => Some(e),
            _ => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, EvalOutcome::Defined(_))
    }
}

impl fmt::Display for EvalOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalOutcome::Defined(e) => write!(f, "defined {e}"),
            EvalOutcome::Stuck => write!(f, "stuck"),
            EvalOutcome::FuelOut => write!(f, "fuelout"),
        }
    }
}

/// Why evaluation stopped short of a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Halt {
    Stuck,
    FuelOut,
    /// `ORACLE n` was demanded and the oracle has no entry for `n`.
    NeedsOracle(u64),
}

/// Answers `ORACLE n`. Plain reduction uses [`NoOracle`], under which the
/// constant never fires.
pub trait Oracle {
    fn lookup(&self, n: u64) -> Result<u64, Halt>;
}

pub struct NoOracle;

impl Oracle for NoOracle {
    fn lookup(&self, _: u64) -> Result<u64, Halt> {
        Err(Halt::Stuck)
    }
}

struct Machine<'o> {
    fuel: Fuel,
    oracle: &'o dyn Oracle,
    normal: &'o mut NormalCache,
}

/// Normal forms of applications, keyed by the addresses of their two parts,
/// with the fuel the normalisation took. The parts are kept alive alongside
/// so the addresses stay unique.
type NormalCache = HashMap<(usize, usize), (Arc<Term>, Arc<Term>, Term, Fuel)>;

const NORMAL_CACHE_LIMIT: usize = 1 << 20;

thread_local! {
    static SHARED_NORMAL: std::cell::RefCell<NormalCache> = std::cell::RefCell::new(HashMap::new());
}

impl Machine<'_> {
    fn tick(&mut self) -> Result<(), Halt> {
        if self.fuel == 0 {
            return Err(Halt::FuelOut);
        }
        self.fuel -= 1;
        Ok(())
    }

    fn whnf_num(&mut self, t: &Term) -> Result<u64, Halt> {
        match self.whnf(t)? {
            Term::Num(n) => Ok(n),
            _ => Err(Halt::Stuck),
        }
    }

    /// Leftmost-outermost reduction until the head can no longer fire.
    fn whnf(&mut self, t: &Term) -> Result<Term, Halt> {
        // arguments are kept reversed so the next one is `args.pop()`
        let mut args: Vec<Term> = Vec::new();
        let mut head = t.clone();
        loop {
            while let Term::App(f, x) = head {
                args.push((*x).clone());
                head = (*f).clone();
            }
            let c = match head {
                Term::Const(c) if args.len() >= c.arity() => c,
                Term::Num(_) | Term::Var(_) if !args.is_empty() => return Err(Halt::Stuck),
                _ => {
                    return Ok(args.into_iter().rev().fold(head, Term::app));
                }
            };
            self.tick()?;
            head = match c {
                Sym::K => {
                    let a = args.pop().unwrap();
                    args.pop();
                    a
                }
                Sym::S => {
                    let a = args.pop().unwrap();
                    let b = args.pop().unwrap();
                    let c = args.pop().unwrap();
                    Term::app(Term::app(a, c.clone()), Term::app(b, c))
                }
                Sym::P => {
                    let a = args.pop().unwrap();
                    let b = args.pop().unwrap();
                    let c = args.pop().unwrap();
                    Term::app(Term::app(c, a), b)
                }
                Sym::P0 | Sym::P1 => {
                    let x = self.whnf(&args.pop().unwrap())?;
                    match x {
                        Term::App(f, b) => match &*f {
                            Term::App(p, a) if **p == Term::Const(Sym::P) => {
                                if c == Sym::P0 {
                                    (**a).clone()
                                } else {
                                    (*b).clone()
                                }
                            }
                            _ => return Err(Halt::Stuck),
                        },
                        _ => return Err(Halt::Stuck),
                    }
                }
                Sym::Succ => Term::Num(self.whnf_num(&args.pop().unwrap())? + 1),
                Sym::Pred => match self.whnf_num(&args.pop().unwrap())? {
                    0 => return Err(Halt::Stuck),
                    n => Term::Num(n - 1),
                },
                Sym::D => {
                    let n = self.whnf_num(&args.pop().unwrap())?;
                    let m = self.whnf_num(&args.pop().unwrap())?;
                    let a = args.pop().unwrap();
                    let b = args.pop().unwrap();
                    if n == m {
                        a
                    } else {
                        b
                    }
                }
                Sym::Oracle => {
                    let n = self.whnf_num(&args.pop().unwrap())?;
                    Term::Num(self.oracle.lookup(n)?)
                }
            };
        }
    }

    /// Head reduction, then normalisation of the remaining arguments from
    /// left to right.
    fn normalize(&mut self, t: &Term) -> Result<Term, Halt> {
        let Term::App(f, x) = t else {
            return self.whnf(t);
        };
        let key = (Arc::as_ptr(f) as usize, Arc::as_ptr(x) as usize);
        if let Some((_, _, v, cost)) = self.normal.get(&key) {
            // charge what the computation took, so fuel behaves as without
            // the cache
            if *cost > self.fuel {
                self.fuel = 0;
                return Err(Halt::FuelOut);
            }
            self.fuel -= cost;
            return Ok(v.clone());
        }
        let before = self.fuel;
        let v = self.normalize_spine(t)?;
        self.normal.insert(key, (f.clone(), x.clone(), v.clone(), before - self.fuel));
        Ok(v)
    }

    fn normalize_spine(&mut self, t: &Term) -> Result<Term, Halt> {
        let w = self.whnf(t)?;
        let (head, args) = w.spine();
        let mut out = head.clone();
        for a in args {
            let v = self.normalize(a)?;
            out = Term::app(out, v);
        }
        Ok(out)
    }
}

/// Normalises `t` with an oracle for `ORACLE`. Returns the value and the
/// fuel that was left over.
pub fn reduce_with(t: &Term, fuel: Fuel, oracle: &dyn Oracle) -> Result<(Element, Fuel), Halt> {
    if !t.is_closed() {
        return Err(Halt::Stuck);
    }
    let mut normal = HashMap::new();
    let mut m = Machine { fuel, oracle, normal: &mut normal };
    let v = m.normalize(t)?;
    Ok((Element(v), m.fuel))
}

/// As [`reduce_with`] without an oracle. Normal forms are cached across
/// calls on this thread.
fn reduce_plain(t: &Term, fuel: Fuel) -> Result<Element, Halt> {
    if !t.is_closed() {
        return Err(Halt::Stuck);
    }
    SHARED_NORMAL.with(|cell| {
        let mut normal = cell.borrow_mut();
        if normal.len() > NORMAL_CACHE_LIMIT {
            normal.clear();
        }
        let mut m = Machine { fuel, oracle: &NoOracle, normal: &mut normal };
        m.normalize(t).map(Element)
    })
}

pub fn reduce(t: &Term, fuel: Fuel) -> EvalOutcome {
    match reduce_plain(t, fuel) {
        Ok(e) => EvalOutcome::Defined(e),
        Err(Halt::FuelOut) => EvalOutcome::FuelOut,
        Err(_) => EvalOutcome::Stuck,
    }
}

pub fn apply(a: &Element, b: &Element, fuel: Fuel) -> EvalOutcome {
    reduce(&Term::app(a.0.clone(), b.0.clone()), fuel)
}

pub fn apply_many(f: &Element, args: &[&Element], fuel: Fuel) -> EvalOutcome {
    let t = Term::apps(f.0.clone(), args.iter().map(|a| a.0.clone()));
    reduce(&t, fuel)
}

fn is_atom(t: &Term) -> bool {
    !matches!(t, Term::App(..))
}

/// `λx.t` by bracket abstraction. The constant rule is only used for atoms
/// and closed values, so the result is a value whenever the free variables
/// of `t` are instantiated by values.
pub fn bracket_abstract(x: &str, t: &Term) -> Term {
    match t {
        Term::Var(y) if &**y == x => Term::i(),
        _ if !t.occurs(x) && (is_atom(t) || (t.is_closed() && t.is_value())) => {
            Term::app(Term::k(), t.clone())
        }
        Term::App(u, v) => Term::apps(
            Term::s(),
            [bracket_abstract(x, u), bracket_abstract(x, v)],
        ),
        _ => unreachable!("atoms without x are handled above"),
    }
}

/// `λx1 ... xn. t`
pub fn lambda(xs: &[&str], t: &Term) -> Term {
    xs.iter().rev().fold(t.clone(), |acc, x| bracket_abstract(x, &acc))
}

/// Normal form of a closed term expected to be a value.
pub fn value_of(t: &Term) -> Element {
    match reduce(t, DEFAULT_FUEL) {
        EvalOutcome::Defined(e) => e,
        other => panic!("combinator {t} did not normalise: {other}"),
    }
}

fn v(x: &str) -> Term {
    Term::var(x)
}

/// Fixed-point combinator `f` with `f a` defined and `f a b ≃ a (f a) b`.
pub fn fix() -> Element {
    // w = λx y z. y (x x y) z ; the trailing z keeps x x y unevaluated
    let w = lambda(
        &["x", "y", "z"],
        &Term::apps(
            v("y"),
            [Term::apps(v("x"), [v("x"), v("y")]), v("z")],
        ),
    );
    value_of(&lambda(&["a"], &Term::apps(w.clone(), [w, v("a")])))
}

/// Primitive recursion: `primrec() c a0 c0` is a function `r` with
/// `r 0 ≃ P a0 (P c0 0)` and
/// `r (n+1) ≃ P (c (r n)₀ (r n)₁₀)₀ (c (r n)₀ (r n)₁₀)₁`.
pub fn primrec() -> Element {
    let g = v("g");
    let n = v("n");
    let prev = Term::app(g, Term::app(Term::pred(), n.clone()));
    // the step consumes the previous value once, through `q`
    let q = lambda(
        &["r"],
        &Term::app(
            lambda(
                &["x"],
                &Term::pair(
                    Term::app(Term::p0(), v("x")),
                    Term::app(Term::p1(), v("x")),
                ),
            ),
            Term::apps(
                v("c"),
                [
                    Term::app(Term::p0(), v("r")),
                    Term::app(Term::p0(), Term::app(Term::p1(), v("r"))),
                ],
            ),
        ),
    );
    let base = Term::pair(v("a"), Term::pair(v("cc"), Term::num(0)));
    let body = lambda(
        &["g", "n"],
        &Term::apps(
            Term::d(),
            [n, Term::num(0), base, Term::app(q, prev)],
        ),
    );
    value_of(&lambda(
        &["c", "a", "cc"],
        &Term::app(fix().into_term(), body),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KleeneEq {
    Agree,
    Disagree,
    Unknown,
}

pub fn compare_outcomes(a: &EvalOutcome, b: &EvalOutcome) -> KleeneEq {
    match (a, b) {
        (EvalOutcome::FuelOut, _) | (_, EvalOutcome::FuelOut) => KleeneEq::Unknown,
        (EvalOutcome::Defined(x), EvalOutcome::Defined(y)) if x == y => KleeneEq::Agree,
        (EvalOutcome::Stuck, EvalOutcome::Stuck) => KleeneEq::Agree,
        _ => KleeneEq::Disagree,
    }
}

pub fn kleene_eq(t: &Term, s: &Term, fuel: Fuel) -> KleeneEq {
    compare_outcomes(&reduce(t, fuel), &reduce(s, fuel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: u64) -> Term {
        Term::num(k)
    }

    #[test]
    fn k_selects_first() {
        let t = Term::apps(Term::k(), [n(3), n(5)]);
        assert_eq!(reduce(&t, 100), EvalOutcome::Defined(Element::num(3)));
    }

    #[test]
    fn skk_is_identity() {
        for c in [n(7), Term::k(), Term::app(Term::s(), Term::k())] {
            let t = Term::app(Term::i(), c.clone());
            assert_eq!(reduce(&t, 100).defined().unwrap().term(), &c);
        }
    }

    #[test]
    fn pred_zero_is_stuck() {
        assert_eq!(reduce(&Term::app(Term::pred(), n(0)), 10), EvalOutcome::Stuck);
        assert_eq!(
            reduce(&Term::app(Term::pred(), n(4)), 10),
            EvalOutcome::Defined(Element::num(3))
        );
    }

    #[test]
    fn projections() {
        let pr = Term::pair(n(1), Term::k());
        assert_eq!(reduce(&Term::app(Term::p0(), pr.clone()), 10).defined().unwrap().term(), &n(1));
        assert_eq!(reduce(&Term::app(Term::p1(), pr.clone()), 10).defined().unwrap().term(), &Term::k());
        assert_eq!(reduce(&Term::app(Term::p0(), Term::k()), 10), EvalOutcome::Stuck);
        // P a b c → c a b
        let t = Term::app(pr, Term::k());
        assert_eq!(reduce(&t, 10), EvalOutcome::Defined(Element::num(1)));
    }

    #[test]
    fn cases_and_numerals() {
        let d = |a, b| Term::apps(Term::d(), [n(a), n(b), Term::k(), Term::s()]);
        assert_eq!(reduce(&d(2, 2), 10).defined().unwrap().term(), &Term::k());
        assert_eq!(reduce(&d(2, 3), 10).defined().unwrap().term(), &Term::s());
        assert_eq!(reduce(&Term::apps(Term::d(), [Term::k(), n(0), n(0), n(0)]), 10), EvalOutcome::Stuck);
        assert_eq!(reduce(&Term::app(Term::succ(), n(1)), 10), EvalOutcome::Defined(Element::num(2)));
        assert_eq!(reduce(&Term::app(n(3), Term::k()), 10), EvalOutcome::Stuck);
    }

    #[test]
    fn oracle_is_inert_without_oracle() {
        assert_eq!(reduce(&Term::app(Term::oracle(), n(0)), 10), EvalOutcome::Stuck);
        assert!(reduce(&Term::oracle(), 10).is_defined());
    }

    #[test]
    fn omega_runs_out_of_fuel() {
        let sii = Term::apps(Term::s(), [Term::i(), Term::i()]);
        let omega = Term::app(sii.clone(), sii);
        assert_eq!(reduce(&omega, 1000), EvalOutcome::FuelOut);
    }

    #[test]
    fn arguments_are_normalised() {
        let t = Term::app(Term::k(), Term::app(Term::succ(), n(0)));
        assert_eq!(reduce(&t, 10).defined().unwrap().term(), &Term::app(Term::k(), n(1)));
        let bad = Term::app(Term::k(), Term::app(Term::pred(), n(0)));
        assert_eq!(reduce(&bad, 10), EvalOutcome::Stuck);
    }

    #[test]
    fn abstraction_examples() {
        assert_eq!(bracket_abstract("x", &Term::var("x")), Term::i());
        assert_eq!(bracket_abstract("x", &Term::k()), Term::app(Term::k(), Term::k()));
        let l = bracket_abstract("x", &Term::pair(Term::var("x"), Term::var("x")));
        let out = reduce(&Term::app(l, n(2)), 100).defined().unwrap();
        assert_eq!(out, Element::pair(&Element::num(2), &Element::num(2)));
    }

    #[test]
    fn abstraction_of_undefined_body_is_defined() {
        let t = Term::app(Term::pred(), Term::app(Term::var("y"), n(0)));
        let l = lambda(&["x"], &t).subst("y", &Term::k());
        assert!(reduce(&l, 100).is_defined());
    }

    #[test]
    fn fix_counts_down() {
        let f = fix();
        assert!(apply(&f, &Element::konst(Sym::K), 1000).is_defined());
        // a = λg n. D n 0 0 (g (PRED n))
        let a = lambda(
            &["g", "n"],
            &Term::apps(
                Term::d(),
                [
                    Term::var("n"),
                    n(0),
                    n(0),
                    Term::app(Term::var("g"), Term::app(Term::pred(), Term::var("n"))),
                ],
            ),
        );
        let t = Term::apps(f.into_term(), [a, n(3)]);
        assert_eq!(reduce(&t, 10_000), EvalOutcome::Defined(Element::num(0)));
    }

    #[test]
    fn primrec_base_case() {
        let r = primrec();
        let c = Term::k();
        let t = Term::apps(r.into_term(), [c, n(4), n(9), n(0)]);
        let want = Element::pair(&Element::num(4), &Element::pair(&Element::num(9), &Element::num(0)));
        assert_eq!(reduce(&t, 10_000), EvalOutcome::Defined(want));
    }

    #[test]
    fn primrec_counts_with_successor_step() {
        // c a w = P (SUCC a) (P w 0): the first component counts up
        let c = lambda(
            &["a", "w"],
            &Term::pair(
                Term::app(Term::succ(), Term::var("a")),
                Term::pair(Term::var("w"), n(0)),
            ),
        );
        let r = primrec().into_term();
        for k in 0..5 {
            let t = Term::app(
                Term::p0(),
                Term::apps(r.clone(), [c.clone(), n(10), n(1), n(k)]),
            );
            assert_eq!(reduce(&t, 100_000), EvalOutcome::Defined(Element::num(10 + k)));
        }
    }

    #[test]
    fn kleene_eq_tri_state() {
        let a = n(1);
        assert_eq!(kleene_eq(&Term::apps(Term::k(), [a.clone(), n(2)]), &a, 10), KleeneEq::Agree);
        let stuck = Term::app(Term::pred(), n(0));
        assert_eq!(kleene_eq(&stuck, &stuck, 10), KleeneEq::Agree);
        assert_eq!(kleene_eq(&Term::app(Term::succ(), n(0)), &n(2), 10), KleeneEq::Disagree);
        let sii = Term::apps(Term::s(), [Term::i(), Term::i()]);
        let omega = Term::app(sii.clone(), sii);
        assert_eq!(kleene_eq(&omega, &a, 100), KleeneEq::Unknown);
    }

    #[test]
    fn values_are_fixed_points_of_reduce() {
        for t in [Term::k(), Term::app(Term::s(), Term::k()), Term::pair(n(0), n(1)), fix().into_term()] {
            assert!(t.is_value());
            assert_eq!(reduce(&t, 10).defined().unwrap().term(), &t);
        }
    }
}
