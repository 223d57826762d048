#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ext_real::formula::{Formula, NameExpr};
use ext_real::names::Name;
use ext_real::pca::{apply, reduce, Element, EvalOutcome, Sym, Term};
use ext_real::types::TypeCode;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random normal forms: numerals, constants and their partial applications
/// to smaller normal forms.
pub fn random_element(r: &mut ChaCha8Rng, depth: usize) -> Element {
    let t = random_value(r, depth);
    Element::from_value(t).expect("partial applications are values")
}

fn random_value(r: &mut ChaCha8Rng, depth: usize) -> Term {
    if depth == 0 || r.gen_bool(0.35) {
        return if r.gen_bool(0.5) { Term::num(r.gen_range(0..6)) } else { Term::Const(*Sym::ALL.choose(r).unwrap()) };
    }
    let c = *[Sym::K, Sym::S, Sym::P, Sym::D].choose(r).unwrap();
    let k = r.gen_range(1..c.arity());
    Term::apps(Term::Const(c), (0..k).map(|_| random_value(r, depth - 1)))
}

/// Random terms over constants, small numerals and the given variables.
pub fn random_term(r: &mut ChaCha8Rng, vars: &[&str], depth: usize) -> Term {
    if depth == 0 || r.gen_bool(0.3) {
        return match r.gen_range(0..3) {
            0 if !vars.is_empty() => Term::var(vars.choose(r).unwrap()),
            1 => Term::num(r.gen_range(0..4)),
            _ => Term::Const(*Sym::ALL[..8].choose(r).unwrap()),
        };
    }
    Term::app(random_term(r, vars, depth - 1), random_term(r, vars, depth - 1))
}

/// Type codes of constructor depth at most `depth` over `N_0 .. N_3`.
/// Families are constant at a base `N_k`; over a finite base each also
/// appears as the extensionally equal case split `λa. D a 0 τ τ`.
pub fn type_pool(depth: usize) -> Vec<TypeCode> {
    let bases: Vec<TypeCode> = (0..4).map(TypeCode::NFin).collect();
    let mut all = bases.clone();
    let mut level = bases.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for sigma in &level {
            for tau in bases.iter().take(3) {
                for fam in families(sigma, tau) {
                    next.push(TypeCode::pi(sigma.clone(), fam.clone()));
                    next.push(TypeCode::sigma(sigma.clone(), fam.clone()));
                    next.push(TypeCode::w(sigma.clone(), fam));
                }
            }
            if let TypeCode::NFin(n) = sigma {
                for a in 0..(*n).min(2) {
                    for b in 0..(*n).min(2) {
                        next.push(TypeCode::id(sigma.clone(), Element::num(a), Element::num(b)));
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

pub fn families(sigma: &TypeCode, tau: &TypeCode) -> Vec<Element> {
    let k = TypeCode::constant_family(tau);
    if !matches!(sigma, TypeCode::NFin(_)) {
        return vec![k];
    }
    let code = tau.encode().into_term();
    let split = ext_real::pca::lambda(&["a"], &Term::apps(Term::d(), [Term::var("a"), Term::num(0), code.clone(), code]));
    vec![k, ext_real::pca::value_of(&split)]
}

/// Names of rank at most 2 keyed by `0̄`, `1̄`.
pub fn small_names() -> Vec<Name> {
    let keys = [Element::num(0), Element::num(1)];
    let mut rank1 = Vec::new();
    for mask in 1u32..16 {
        let entries = (0..4).filter(|k| mask >> k & 1 == 1).map(|k| (keys[k / 2].clone(), keys[k % 2].clone(), Name::empty()));
        rank1.push(Name::new(entries));
    }
    let mut out = vec![Name::empty()];
    out.extend(rank1.iter().cloned());
    let lower: Vec<Name> = std::iter::once(Name::empty()).chain(rank1.iter().take(4).cloned()).collect();
    for (i, x) in lower.iter().enumerate() {
        for y in lower.iter().skip(i + 1) {
            out.push(Name::new([(keys[0].clone(), keys[0].clone(), x.clone()), (keys[1].clone(), keys[1].clone(), y.clone())]));
            out.push(Name::new([(keys[0].clone(), keys[0].clone(), x.clone()), (keys[0].clone(), keys[0].clone(), y.clone())]));
        }
    }
    out
}

/// Realizer candidates built to fit the clauses: numerals, pairs of them,
/// `K` of those, and pairs of `K`s.
pub fn small_realizers() -> Vec<Element> {
    let n = |k: u64| Term::num(k);
    let mut base = vec![n(0), n(1)];
    let pairs: Vec<Term> = [(0, 0), (0, 1), (1, 0), (1, 1)].iter().map(|&(a, b)| Term::pair(n(a), n(b))).collect();
    base.extend(pairs.iter().cloned());
    base.push(Term::pair(Term::pair(n(0), n(0)), Term::pair(n(0), n(0))));
    base.push(Term::pair(n(0), Term::pair(n(0), n(0))));
    base.push(Term::pair(n(1), Term::pair(n(0), n(0))));
    let mut out = base.clone();
    for t in &base {
        out.push(Term::app(Term::k(), t.clone()));
    }
    let k00 = Term::app(Term::k(), Term::pair(Term::pair(n(0), n(0)), Term::pair(n(0), n(0))));
    out.push(Term::pair(k00.clone(), k00));
    out.into_iter().map(|t| Element::from_value(t).expect("value")).collect()
}

pub fn random_formula(r: &mut ChaCha8Rng, names: &[Name], vars: &mut Vec<String>, depth: usize) -> Formula {
    let name = |r: &mut ChaCha8Rng, vars: &[String]| -> NameExpr {
        if !vars.is_empty() && r.gen_bool(0.5) {
            NameExpr::Var(vars.choose(r).unwrap().clone())
        } else {
            NameExpr::Lit(names.choose(r).unwrap().clone())
        }
    };
    if depth == 0 || r.gen_bool(0.25) {
        let (x, y) = (name(r, vars), name(r, vars));
        return if r.gen_bool(0.5) { Formula::Mem(x, y) } else { Formula::Eq(x, y) };
    }
    let fresh = format!("v{}", vars.len());
    let bind = |r: &mut ChaCha8Rng, vars: &mut Vec<String>| {
        vars.push(fresh.clone());
        let f = random_formula(r, names, vars, depth - 1);
        vars.pop();
        Box::new(f)
    };
    match r.gen_range(0..6) {
        0 => Formula::And(Box::new(random_formula(r, names, vars, depth - 1)), Box::new(random_formula(r, names, vars, depth - 1))),
        1 => Formula::Or(Box::new(random_formula(r, names, vars, depth - 1)), Box::new(random_formula(r, names, vars, depth - 1))),
        2 => {
            let y = name(r, vars);
            Formula::AllIn(fresh.clone(), y, bind(r, vars))
        }
        3 => {
            let y = name(r, vars);
            Formula::ExIn(fresh.clone(), y, bind(r, vars))
        }
        4 => Formula::All(fresh.clone(), bind(r, vars)),
        _ => Formula::Ex(fresh.clone(), bind(r, vars)),
    }
}

/// The realizability clauses read off directly, without memo tables,
/// traces or key types. Quantifiers without a bound range over
/// `universe`, taken as everything. `None` when fuel ran out.
pub mod brute {
    use super::*;

    pub struct Brute<'u> {
        pub universe: &'u [Name],
        pub fuel: u64,
    }

    type Env = Vec<(String, Name)>;

    enum Step {
        Val(Element),
        Stuck,
        Out,
    }

    impl Brute<'_> {
        fn run(&self, t: Term) -> Step {
            match reduce(&t, self.fuel) {
                EvalOutcome::Defined(e) => Step::Val(e),
                EvalOutcome::Stuck => Step::Stuck,
                EvalOutcome::FuelOut => Step::Out,
            }
        }

        fn ap(&self, f: &Element, x: &Element) -> Step {
            match apply(f, x, self.fuel) {
                EvalOutcome::Defined(e) => Step::Val(e),
                EvalOutcome::Stuck => Step::Stuck,
                EvalOutcome::FuelOut => Step::Out,
            }
        }

        fn half(&self, a: &Element, i: usize) -> Step {
            let p = if i == 0 { Term::p0() } else { Term::p1() };
            self.run(Term::app(p, a.term().clone()))
        }

        fn lookup(env: &Env, e: &NameExpr) -> Name {
            match e {
                NameExpr::Lit(n) => n.clone(),
                NameExpr::Var(v) => env.iter().rev().find(|(w, _)| w == v).expect("bound").1.clone(),
                other => panic!("brute checker takes literal names only: {other}"),
            }
        }

        pub fn holds(&self, a: &Element, b: &Element, phi: &Formula) -> Option<bool> {
            self.go(a, b, phi, &mut Vec::new())
        }

        fn go(&self, a: &Element, b: &Element, phi: &Formula, env: &mut Env) -> Option<bool> {
            macro_rules! val {
                ($s:expr) => {
                    match $s {
                        Step::Val(v) => v,
                        Step::Stuck => return Some(false),
                        Step::Out => return None,
                    }
                };
            }
            match phi {
                Formula::Mem(x, y) => self.mem(a, b, &Self::lookup(env, x), &Self::lookup(env, y)),
                Formula::Eq(x, y) => self.eq(a, b, &Self::lookup(env, x), &Self::lookup(env, y)),
                Formula::And(f, g) => {
                    let (a0, b0, a1, b1) = (val!(self.half(a, 0)), val!(self.half(b, 0)), val!(self.half(a, 1)), val!(self.half(b, 1)));
                    let l = self.go(&a0, &b0, f, env);
                    if l == Some(false) {
                        return l;
                    }
                    let r = self.go(&a1, &b1, g, env);
                    match (l, r) {
                        (_, Some(false)) => Some(false),
                        (Some(true), Some(true)) => Some(true),
                        _ => None,
                    }
                }
                Formula::Or(f, g) => {
                    let (a0, b0, a1, b1) = (val!(self.half(a, 0)), val!(self.half(b, 0)), val!(self.half(a, 1)), val!(self.half(b, 1)));
                    match (a0.as_num(), b0.as_num()) {
                        (Some(0), Some(0)) => self.go(&a1, &b1, f, env),
                        (Some(1), Some(1)) => self.go(&a1, &b1, g, env),
                        _ => Some(false),
                    }
                }
                Formula::AllIn(v, y, f) => {
                    let y = Self::lookup(env, y);
                    let mut unknown = false;
                    for e in y.entries() {
                        let (ac, bd) = (val!(self.ap(a, &e.left)), val!(self.ap(b, &e.right)));
                        env.push((v.clone(), e.child.clone()));
                        let r = self.go(&ac, &bd, f, env);
                        env.pop();
                        match r {
                            Some(false) => return Some(false),
                            None => unknown = true,
                            _ => {}
                        }
                    }
                    if unknown { None } else { Some(true) }
                }
                Formula::ExIn(v, y, f) => {
                    let y = Self::lookup(env, y);
                    let (a0, b0, a1, b1) = (val!(self.half(a, 0)), val!(self.half(b, 0)), val!(self.half(a, 1)), val!(self.half(b, 1)));
                    let mut unknown = false;
                    for e in y.entries().iter().filter(|e| e.left == a0 && e.right == b0) {
                        env.push((v.clone(), e.child.clone()));
                        let r = self.go(&a1, &b1, f, env);
                        env.pop();
                        match r {
                            Some(true) => return Some(true),
                            None => unknown = true,
                            _ => {}
                        }
                    }
                    if unknown { None } else { Some(false) }
                }
                Formula::All(v, f) | Formula::Ex(v, f) => {
                    let every = matches!(phi, Formula::All(..));
                    let mut unknown = false;
                    for x in self.universe {
                        env.push((v.clone(), x.clone()));
                        let r = self.go(a, b, f, env);
                        env.pop();
                        match r {
                            Some(s) if s != every => return Some(s),
                            None => unknown = true,
                            _ => {}
                        }
                    }
                    if unknown { None } else { Some(every) }
                }
                Formula::Not(_) | Formula::Imp(..) => panic!("brute checker is for formulas without implication"),
            }
        }

        /// Some `(c, d, z) ∈ y` with `c = a₀`, `d = b₀` and `a₁ = b₁ ⊩ x = z`.
        pub fn mem(&self, a: &Element, b: &Element, x: &Name, y: &Name) -> Option<bool> {
            let step = |s: Step| match s {
                Step::Val(v) => Ok(v),
                Step::Stuck => Err(Some(false)),
                Step::Out => Err(None),
            };
            let halves = (|| Ok((step(self.half(a, 0))?, step(self.half(b, 0))?, step(self.half(a, 1))?, step(self.half(b, 1))?)))();
            let (a0, b0, a1, b1) = match halves {
                Ok(h) => h,
                Err(r) => return r,
            };
            let mut unknown = false;
            for e in y.entries() {
                if e.left == a0 && e.right == b0 {
                    match self.eq(&a1, &b1, x, &e.child) {
                        Some(true) => return Some(true),
                        None => unknown = true,
                        _ => {}
                    }
                }
            }
            if unknown { None } else { Some(false) }
        }

        /// Every `(c, d, z) ∈ x` has `(a c)₀ = (b d)₀ ⊩ z ∈ y`, and every
        /// `(c, d, z) ∈ y` has `(a c)₁ = (b d)₁ ⊩ z ∈ x`.
        pub fn eq(&self, a: &Element, b: &Element, x: &Name, y: &Name) -> Option<bool> {
            let mut unknown = false;
            for (from, to, side) in [(x, y, 0), (y, x, 1)] {
                for e in from.entries() {
                    let r = match (self.ap(a, &e.left), self.ap(b, &e.right)) {
                        (Step::Val(ac), Step::Val(bd)) => match (self.half(&ac, side), self.half(&bd, side)) {
                            (Step::Val(c), Step::Val(d)) => self.mem(&c, &d, &e.child, to),
                            (Step::Out, _) | (_, Step::Out) => None,
                            _ => Some(false),
                        },
                        (Step::Out, _) | (_, Step::Out) => None,
                        _ => Some(false),
                    };
                    match r {
                        Some(false) => return Some(false),
                        None => unknown = true,
                        _ => {}
                    }
                }
            }
            if unknown { None } else { Some(true) }
        }
    }
}

pub mod fgen {
    use super::*;
    use ext_real::forcing::{FFormula, FTerm};

    fn term(r: &mut ChaCha8Rng, vars: &[String]) -> FTerm {
        match r.gen_range(0..5) {
            0 if !vars.is_empty() => FTerm::Var(vars.choose(r).unwrap().clone()),
            1 => FTerm::pair(FTerm::Num(r.gen_range(0..3)), FTerm::Num(r.gen_range(0..3))),
            2 => FTerm::G,
            _ => FTerm::Num(r.gen_range(0..3)),
        }
    }

    fn range(r: &mut ChaCha8Rng) -> FTerm {
        match r.gen_range(0..3) {
            0 => FTerm::G,
            _ => FTerm::Num(r.gen_range(1..4)),
        }
    }

    /// Forcing formulas of depth at most `depth` over `ň`, pairs and `ġ`.
    pub fn random_fformula(r: &mut ChaCha8Rng, vars: &mut Vec<String>, depth: usize) -> FFormula {
        if depth == 0 || r.gen_bool(0.2) {
            let (x, y) = (term(r, vars), term(r, vars));
            return if r.gen_bool(0.6) { FFormula::Mem(x, y) } else { FFormula::Eq(x, y) };
        }
        let sub = |r: &mut ChaCha8Rng, vars: &mut Vec<String>| Box::new(random_fformula(r, vars, depth - 1));
        let fresh = format!("v{}", vars.len());
        let bound = |r: &mut ChaCha8Rng, vars: &mut Vec<String>| {
            vars.push(fresh.clone());
            let f = random_fformula(r, vars, depth - 1);
            vars.pop();
            Box::new(f)
        };
        match r.gen_range(0..9) {
            0 => FFormula::And(sub(r, vars), sub(r, vars)),
            1 => FFormula::Or(sub(r, vars), sub(r, vars)),
            2 => FFormula::Not(sub(r, vars)),
            3 => FFormula::Imp(sub(r, vars), sub(r, vars)),
            4 => {
                let y = range(r);
                FFormula::AllIn(fresh.clone(), y, bound(r, vars))
            }
            5 => {
                let y = range(r);
                FFormula::ExIn(fresh.clone(), y, bound(r, vars))
            }
            6 => FFormula::All(fresh.clone(), bound(r, vars)),
            7 => FFormula::Ex(fresh.clone(), bound(r, vars)),
            _ => FFormula::Not(Box::new(FFormula::Not(sub(r, vars)))),
        }
    }
}
