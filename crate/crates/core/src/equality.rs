//! Equality realizers shared by the library: reflexivity, symmetry,
//! transitivity, congruence for internal pairs, and the three pairing
//! realizers `u0`, `u1`, `u2`.
//!
//! Every realizer here is total whenever its inputs are: applied to any
//! argument it returns a pair whose parts are again of that kind. Strict
//! pairing makes this the working assumption for premises drawn from pools.

use std::sync::OnceLock;

use serde::Serialize;

use crate::formula::{and, eq, imp, macros::op, Formula, NameExpr};
use crate::names::{self, Name};
use crate::pca::{fix, lambda, value_of, Element, Term};
use crate::realize::{Checker, Pool};
use crate::tri::TriState;
use crate::types::Types;

fn v(x: &str) -> Term {
    Term::var(x)
}

pub(crate) fn fst(t: Term) -> Term {
    Term::app(Term::p0(), t)
}

pub(crate) fn snd(t: Term) -> Term {
    Term::app(Term::p1(), t)
}

fn pair(a: Term, b: Term) -> Term {
    Term::pair(a, b)
}

/// `D a 0̄ x y`: `x` when `a` is `0̄`, else `y`.
pub(crate) fn if_zero(a: Term, x: Term, y: Term) -> Term {
    Term::apps(Term::d(), [a, Term::num(0), x, y])
}

fn cached(cell: &'static OnceLock<Element>, build: fn() -> Term) -> Element {
    cell.get_or_init(|| value_of(&build())).clone()
}

/// `e ⊩ ∀x (x = x)`: `e c = P (P c e) (P c e)`.
pub fn refl() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || {
        let body = pair(pair(v("c"), v("e")), pair(v("c"), v("e")));
        Term::app(fix().into_term(), lambda(&["e", "c"], &body))
    })
}

/// `sym c ⊩ y = x` whenever `c ⊩ x = y`.
pub fn sym() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || {
        let ca = Term::app(v("c"), v("a"));
        lambda(&["c", "a"], &pair(snd(ca.clone()), fst(ca)))
    })
}

/// `trans c c' ⊩ x = z` whenever `c ⊩ x = y` and `c' ⊩ y = z`.
pub fn trans() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || {
        let (t, c, c2, a) = (v("t"), v("c"), v("c2"), v("a"));
        // left: a keys x; m realizes the element's membership in y
        let m = fst(Term::app(c.clone(), a.clone()));
        let n = fst(Term::app(c2.clone(), fst(m.clone())));
        let left = pair(fst(n.clone()), Term::apps(t.clone(), [snd(m), snd(n)]));
        // right: a keys z
        let m = snd(Term::app(c2, a));
        let n = snd(Term::app(c, fst(m.clone())));
        let right = pair(fst(n.clone()), Term::apps(t, [snd(m), snd(n)]));
        Term::app(fix().into_term(), lambda(&["t", "c", "c2", "a"], &pair(left, right)))
    })
}

pub fn sym_of(c: Term) -> Term {
    Term::app(sym().into_term(), c)
}

pub fn trans_of(c: Term, d: Term) -> Term {
    Term::apps(trans().into_term(), [c, d])
}

/// `⊩ {x, y} = {u, v}` from `ρ ⊩ x = u` and `ρ' ⊩ y = v`; with `ρ = ρ'`
/// also `⊩ {x} = {u}`.
fn doubleton_cong(r: Term, r2: Term) -> Term {
    let b = v("%b");
    lambda(
        &["%b"],
        &pair(
            pair(b.clone(), if_zero(b.clone(), r.clone(), r2.clone())),
            pair(b.clone(), if_zero(b, sym_of(r), sym_of(r2))),
        ),
    )
}

/// `vpair_cong ρ ρ' ⊩ ⟨x, y⟩ = ⟨u, v⟩` (internal pairs) from `ρ ⊩ x = u`
/// and `ρ' ⊩ y = v`.
pub fn vpair_cong() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || {
        let (r, r2, a) = (v("r"), v("r2"), v("a"));
        let one = doubleton_cong(r.clone(), r.clone());
        let two = doubleton_cong(r, r2);
        let body = pair(
            pair(a.clone(), if_zero(a.clone(), one.clone(), two.clone())),
            pair(a.clone(), if_zero(a, sym_of(one), sym_of(two))),
        );
        lambda(&["r", "r2", "a"], &body)
    })
}

/// `⊩ w = {x}` from `ρ ⊩ x ∈ w ∧ ∀u∈w (u = x)`.
fn singleton_to_eq(rho: Term) -> Term {
    let a = v("%a");
    lambda(&["%a"], &pair(pair(Term::num(0), Term::app(snd(rho.clone()), a)), fst(rho)))
}

/// `⊩ w = {x, y}` from `ρ ⊩ x ∈ w ∧ (y ∈ w ∧ ∀u∈w (u = x ∨ u = y))`.
fn doubleton_to_eq(rho: Term) -> Term {
    let a = v("%a");
    lambda(
        &["%a"],
        &pair(
            Term::app(snd(snd(rho.clone())), a.clone()),
            if_zero(a, fst(rho.clone()), fst(snd(rho))),
        ),
    )
}

/// `u0 ⊩ op(⟨x, y⟩, x, y)` for all `x`, `y`.
pub fn u0() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || {
        let e = refl().into_term();
        let s1 = pair(pair(Term::num(0), e.clone()), Term::app(Term::k(), e.clone()));
        let g = lambda(&["c"], &pair(v("c"), e.clone()));
        let s2 = pair(pair(Term::num(0), e.clone()), pair(pair(Term::num(1), e), g));
        let h = lambda(&["c"], &pair(v("c"), if_zero(v("c"), s1.clone(), s2.clone())));
        pair(pair(Term::num(0), s1), pair(pair(Term::num(1), s2), h))
    })
}

/// `u1 ⊩ ⟨x, y⟩ = ⟨u, v⟩ → x = u ∧ y = v`.
pub fn u1() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || {
        let c = v("c");
        let at = |k: u64| Term::app(c.clone(), Term::num(k));
        // {x} = W_j; u sits at key 0 of W_j either way
        let r = snd(fst(at(0)));
        let xu = sym_of(snd(snd(Term::app(r, Term::num(0)))));
        // y against the second element of ⟨u, v⟩
        let r1 = snd(fst(at(1)));
        let rho = fst(Term::app(r1, Term::num(1)));
        let r2 = snd(snd(at(1)));
        let sigma = fst(Term::app(r2, Term::num(1)));
        let via_x = trans_of(snd(rho.clone()), trans_of(sym_of(xu.clone()), sym_of(snd(sigma.clone()))));
        let yv = if_zero(
            fst(rho.clone()),
            if_zero(fst(sigma.clone()), via_x.clone(), sym_of(snd(sigma.clone()))),
            snd(rho),
        );
        lambda(&["c"], &pair(xu, yv))
    })
}

/// `u2 ⊩ op(z, x, y) → z = ⟨x, y⟩`.
pub fn u2() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || {
        let (c, a) = (v("c"), v("a"));
        let o = Term::app(snd(snd(c.clone())), a.clone());
        let left = pair(
            fst(o.clone()),
            if_zero(fst(o.clone()), singleton_to_eq(snd(o.clone())), doubleton_to_eq(snd(o))),
        );
        let (c0, c10) = (fst(c.clone()), fst(snd(c)));
        let right = if_zero(
            a,
            pair(fst(c0.clone()), sym_of(singleton_to_eq(snd(c0)))),
            pair(fst(c10.clone()), sym_of(doubleton_to_eq(snd(c10)))),
        );
        lambda(&["c", "a"], &pair(left, right))
    })
}

pub fn pairing_formula(x: &Name, y: &Name) -> Formula {
    op(names::vpair(x, y), x, y)
}

pub fn pair_injectivity_formula(x: &Name, y: &Name, u: &Name, v: &Name) -> Formula {
    imp(eq(names::vpair(x, y), names::vpair(u, v)), and(eq(x, u), eq(y, v)))
}

pub fn pair_uniqueness_formula(z: &Name, x: &Name, y: &Name) -> Formula {
    imp(op(z, x, y), eq(z, NameExpr::VPair(Box::new(x.into()), Box::new(y.into()))))
}

#[derive(Clone, Debug, Serialize)]
pub struct PairsInstance {
    pub clause: &'static str,
    pub names: Vec<String>,
    pub state: String,
    /// Pool pairs realizing the premise, for the implicational clauses.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub premises_realized: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairsReport {
    pub grid: Vec<String>,
    pub pool_size: usize,
    pub instances: Vec<PairsInstance>,
}

impl PairsReport {
    pub fn all_hold(&self) -> bool {
        self.instances.iter().all(|i| i.state == "holds")
    }
}

/// Names of rank at most 2 for the pairing checks, including a second
/// presentation of 2 with its entries swapped.
pub fn pairs_grid() -> Vec<Name> {
    vec![names::dot(0), names::dot(1), names::dot(2), names::vset2(&names::dot(1), &names::dot(0))]
}

/// `⊩ 2 = {1, 0}` for the swapped presentation in [`pairs_grid`].
pub fn swap01() -> Element {
    let e = refl().into_term();
    let k = if_zero(v("a"), Term::num(1), Term::num(0));
    value_of(&lambda(&["a"], &pair(pair(k.clone(), e.clone()), pair(k, e))))
}

/// Equality realizers between grid names, and `vpair_cong` over them: the
/// premise pool for `u1`, together with `u0` for `u2`.
pub fn pairs_pool() -> Pool {
    let base = [refl(), swap01(), value_of(&sym_of(swap01().into_term()))];
    let mut elems: Vec<Element> = base.to_vec();
    for r in &base {
        for r2 in &base {
            elems.push(value_of(&Term::apps(vpair_cong().into_term(), [r.term().clone(), r2.term().clone()])));
        }
    }
    elems.push(u0());
    elems.dedup();
    Pool::diagonal(elems)
}

/// Runs all three pairing clauses over the grid.
pub fn check_pairs_lemma(types: &Types) -> PairsReport {
    let grid = pairs_grid();
    let pool = pairs_pool();
    let pool_size = pool.pairs.len();
    let checker = Checker::new(types, pool);
    let mut instances = Vec::new();
    let state = |phi: &Formula, r: &Element| checker.holds(r, r, phi).expect("closed formula");
    let premises = |phi: &Formula| {
        let Formula::Imp(p, _) = phi else { unreachable!() };
        checker
            .pool
            .pairs
            .iter()
            .filter(|(a, b)| checker.holds(a, b, p).expect("closed formula") == TriState::Holds)
            .count()
    };
    for x in &grid {
        for y in &grid {
            let phi = pairing_formula(x, y);
            instances.push(PairsInstance {
                clause: "u0",
                names: vec![x.to_string(), y.to_string()],
                state: state(&phi, &u0()).to_string(),
                premises_realized: None,
            });
        }
    }
    for x in &grid {
        for y in &grid {
            for u in &grid {
                for w in &grid {
                    let phi = pair_injectivity_formula(x, y, u, w);
                    instances.push(PairsInstance {
                        clause: "u1",
                        names: vec![x.to_string(), y.to_string(), u.to_string(), w.to_string()],
                        state: state(&phi, &u1()).to_string(),
                        premises_realized: Some(premises(&phi)),
                    });
                }
            }
        }
    }
    for x in &grid {
        for y in &grid {
            for (zx, zy) in [(x, y), (y, x)] {
                let z = names::vpair(zx, zy);
                let phi = pair_uniqueness_formula(&z, x, y);
                instances.push(PairsInstance {
                    clause: "u2",
                    names: vec![z.to_string(), x.to_string(), y.to_string()],
                    state: state(&phi, &u2()).to_string(),
                    premises_realized: Some(premises(&phi)),
                });
            }
        }
    }
    PairsReport { grid: grid.iter().map(|n| n.to_string()).collect(), pool_size, instances }
}
