//! Arithmetic formulas over ω, their direct evaluation, and the sequence
//! coding used to key oracle queries.

use std::fmt;

use crate::tri::{Reason, TriState};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ATerm {
    Num(u64),
    Var(String),
    Succ(Box<ATerm>),
    Add(Box<ATerm>, Box<ATerm>),
    Mul(Box<ATerm>, Box<ATerm>),
}

/// Range of a number quantifier: all of ω, or the numbers below `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Omega,
    Below(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arith {
    Eq(ATerm, ATerm),
    Lt(ATerm, ATerm),
    And(Box<Arith>, Box<Arith>),
    Or(Box<Arith>, Box<Arith>),
    Not(Box<Arith>),
    Imp(Box<Arith>, Box<Arith>),
    All(String, Bound, Box<Arith>),
    Ex(String, Bound, Box<Arith>),
}

impl ATerm {
    pub fn var(x: &str) -> ATerm {
        ATerm::Var(x.to_string())
    }

    pub fn add(a: ATerm, b: ATerm) -> ATerm {
        ATerm::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: ATerm, b: ATerm) -> ATerm {
        ATerm::Mul(Box::new(a), Box::new(b))
    }

    /// Just a numeral or a variable: these translate to names directly.
    pub fn is_simple(&self) -> bool {
        matches!(self, ATerm::Num(_) | ATerm::Var(_))
    }

    pub fn eval(&self, env: &[(String, u64)]) -> Option<u64> {
        match self {
            ATerm::Num(n) => Some(*n),
            ATerm::Var(x) => env.iter().rev().find(|(y, _)| y == x).map(|(_, v)| *v),
            ATerm::Succ(a) => a.eval(env)?.checked_add(1),
            ATerm::Add(a, b) => a.eval(env)?.checked_add(b.eval(env)?),
            ATerm::Mul(a, b) => a.eval(env)?.checked_mul(b.eval(env)?),
        }
    }

    fn free_into(&self, out: &mut Vec<String>) {
        match self {
            ATerm::Num(_) => {}
            ATerm::Var(x) => {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            }
            ATerm::Succ(a) => a.free_into(out),
            ATerm::Add(a, b) | ATerm::Mul(a, b) => {
                a.free_into(out);
                b.free_into(out);
            }
        }
    }
}

pub fn eq(a: ATerm, b: ATerm) -> Arith {
    Arith::Eq(a, b)
}

pub fn lt(a: ATerm, b: ATerm) -> Arith {
    Arith::Lt(a, b)
}

pub fn and(a: Arith, b: Arith) -> Arith {
    Arith::And(Box::new(a), Box::new(b))
}

pub fn or(a: Arith, b: Arith) -> Arith {
    Arith::Or(Box::new(a), Box::new(b))
}

pub fn not(a: Arith) -> Arith {
    Arith::Not(Box::new(a))
}

pub fn imp(a: Arith, b: Arith) -> Arith {
    Arith::Imp(Box::new(a), Box::new(b))
}

pub fn all(x: &str, bound: Bound, a: Arith) -> Arith {
    Arith::All(x.to_string(), bound, Box::new(a))
}

pub fn ex(x: &str, bound: Bound, a: Arith) -> Arith {
    Arith::Ex(x.to_string(), bound, Box::new(a))
}

impl Arith {
    pub fn depth(&self) -> usize {
        match self {
            Arith::Eq(..) | Arith::Lt(..) => 0,
            Arith::Not(a) | Arith::All(_, _, a) | Arith::Ex(_, _, a) => 1 + a.depth(),
            Arith::And(a, b) | Arith::Or(a, b) | Arith::Imp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Arith::Eq(..) | Arith::Lt(..))
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.free_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_into(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Arith::Eq(a, b) | Arith::Lt(a, b) => {
                let mut vs = Vec::new();
                a.free_into(&mut vs);
                b.free_into(&mut vs);
                for v in vs {
                    if !bound.contains(&v) && !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            Arith::Not(a) => a.free_into(bound, out),
            Arith::And(a, b) | Arith::Or(a, b) | Arith::Imp(a, b) => {
                a.free_into(bound, out);
                b.free_into(bound, out);
            }
            Arith::All(x, _, a) | Arith::Ex(x, _, a) => {
                bound.push(x.clone());
                a.free_into(bound, out);
                bound.pop();
            }
        }
    }

    /// Direct evaluation. Quantifiers over ω are searched below `search`;
    /// an unbounded search that finds nothing is `Unknown`.
    pub fn eval(&self, env: &mut Vec<(String, u64)>, search: u64) -> TriState {
        match self {
            Arith::Eq(a, b) => atom(a, b, env, |x, y| x == y),
            Arith::Lt(a, b) => atom(a, b, env, |x, y| x < y),
            Arith::And(a, b) => {
                let l = a.eval(env, search);
                if l.refuted() {
                    return l;
                }
                l.and(b.eval(env, search))
            }
            Arith::Or(a, b) => {
                let l = a.eval(env, search);
                if l.holds() {
                    return l;
                }
                l.or(b.eval(env, search))
            }
            Arith::Not(a) => a.eval(env, search).not(),
            Arith::Imp(a, b) => {
                let l = a.eval(env, search).not();
                if l.holds() {
                    return l;
                }
                l.or(b.eval(env, search))
            }
            Arith::All(x, bound, a) => {
                let (n, truncated) = range(*bound, search);
                let r = TriState::all(0..n, |v| scoped(env, x, v, |env| a.eval(env, search)));
                r.weaken_if(truncated, Reason::EnumerationBound)
            }
            Arith::Ex(x, bound, a) => {
                let (n, truncated) = range(*bound, search);
                let r = TriState::any(0..n, |v| scoped(env, x, v, |env| a.eval(env, search)));
                if truncated && r.refuted() {
                    TriState::Unknown(Reason::EnumerationBound)
                } else {
                    r
                }
            }
        }
    }

    pub fn eval_closed(&self, search: u64) -> TriState {
        self.eval(&mut Vec::new(), search)
    }
}

fn atom(a: &ATerm, b: &ATerm, env: &[(String, u64)], rel: impl Fn(u64, u64) -> bool) -> TriState {
    match (a.eval(env), b.eval(env)) {
        (Some(x), Some(y)) => TriState::from_bool(rel(x, y)),
        _ => TriState::Unknown(Reason::EnumerationBound),
    }
}

fn range(bound: Bound, search: u64) -> (u64, bool) {
    match bound {
        Bound::Omega => (search, true),
        Bound::Below(k) => (k, false),
    }
}

fn scoped<T>(env: &mut Vec<(String, u64)>, x: &str, v: u64, f: impl FnOnce(&mut Vec<(String, u64)>) -> T) -> T {
    env.push((x.to_string(), v));
    let out = f(env);
    env.pop();
    out
}

impl fmt::Display for ATerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ATerm::Num(n) => write!(f, "{n}"),
            ATerm::Var(x) => write!(f, "{x}"),
            ATerm::Succ(a) => write!(f, "(S {a})"),
            ATerm::Add(a, b) => write!(f, "(+ {a} {b})"),
            ATerm::Mul(a, b) => write!(f, "(* {a} {b})"),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Omega => write!(f, "omega"),
            Bound::Below(k) => write!(f, "{k}"),
        }
    }
}

impl fmt::Display for Arith {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arith::Eq(a, b) => write!(f, "(= {a} {b})"),
            Arith::Lt(a, b) => write!(f, "(< {a} {b})"),
            Arith::And(a, b) => write!(f, "(and {a} {b})"),
            Arith::Or(a, b) => write!(f, "(or {a} {b})"),
            Arith::Not(a) => write!(f, "(not {a})"),
            Arith::Imp(a, b) => write!(f, "(-> {a} {b})"),
            Arith::All(x, k, a) => write!(f, "(forall {x} {k} {a})"),
            Arith::Ex(x, k, a) => write!(f, "(exists {x} {k} {a})"),
        }
    }
}

/// `π(a, b) = (a + b)(a + b + 1)/2 + b`
pub fn cantor_pair(a: u64, b: u64) -> Option<u64> {
    let s = a.checked_add(b)?;
    let t = if s % 2 == 0 { (s / 2).checked_mul(s + 1)? } else { s.checked_mul((s + 1) / 2)? };
    t.checked_add(b)
}

pub fn cantor_unpair(z: u64) -> (u64, u64) {
    let mut w = (((8.0 * z as f64 + 1.0).sqrt() - 1.0) / 2.0) as u64;
    let tri = |w: u64| w as u128 * (w as u128 + 1) / 2;
    while tri(w) > z as u128 {
        w -= 1;
    }
    while tri(w + 1) <= z as u128 {
        w += 1;
    }
    let b = (z as u128 - tri(w)) as u64;
    (w - b, b)
}

/// `⟨⟩ = 0`, `⟨x, rest⟩ = π(x, code(rest)) + 1`.
pub fn encode_tuple(xs: &[u64]) -> Option<u64> {
    let mut code = 0u64;
    for &x in xs.iter().rev() {
        code = cantor_pair(x, code)?.checked_add(1)?;
    }
    Some(code)
}

pub fn decode_tuple(mut code: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while code > 0 {
        let (x, rest) = cantor_unpair(code - 1);
        out.push(x);
        code = rest;
    }
    out
}
