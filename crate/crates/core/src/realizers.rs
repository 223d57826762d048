//! Realizers for the sets attached to types, for choice over them, and for
//! reading a type off a set built from ω by Π, Σ and I, each with the
//! finite instances it is checked on.

use std::sync::OnceLock;

use serde::Serialize;

use crate::equality::{fst, if_zero, refl, snd, sym_of, trans_of, u0, u1, u2, vpair_cong};
use crate::formula::macros::{self, op};
use crate::formula::{all, all_in, and, eq, ex, ex_in, imp, mem, not, Formula, NameExpr};
use crate::names::{self, EmbedError, Embedder, Name};
use crate::pca::{fix, kleene_eq, lambda, primrec, reduce, value_of, Element, EvalOutcome, KleeneEq, Term};
use crate::realize::{Checker, Pool, SearchOutcome};
use crate::tri::{Reason, TriState};
use crate::types::{TypeCode, Types};

fn v(x: &str) -> Term {
    Term::var(x)
}

fn pair(a: Term, b: Term) -> Term {
    Term::pair(a, b)
}

fn app(f: Term, x: Term) -> Term {
    Term::app(f, x)
}

fn t(e: Element) -> Term {
    e.into_term()
}

fn num(n: u64) -> Term {
    Term::num(n)
}

fn cached(cell: &'static OnceLock<Element>, build: fn() -> Term) -> Element {
    cell.get_or_init(|| value_of(&build())).clone()
}

/// `P (x₀ ρ) ...`: `⊩ x ∈ w ∧ ∀u∈w (u = x)` from `ρ ⊩ {x} = w`.
fn eq_to_single(rho: Term) -> Term {
    let a = v("%es");
    pair(fst(app(rho.clone(), num(0))), lambda(&["%es"], &snd(snd(app(rho, a)))))
}

/// `⊩ w = {x, y}` spelled out, from `ρ ⊩ {x, y} = w`.
fn eq_to_double(rho: Term) -> Term {
    let a = v("%da");
    pair(
        fst(app(rho.clone(), num(0))),
        pair(fst(app(rho.clone(), num(1))), lambda(&["%da"], &snd(app(rho, a)))),
    )
}

/// `⊩ op(z, x, y)` from `E ⊩ z = ⟨x, y⟩`.
pub fn op_from_eq(e: Term) -> Term {
    let (e0, e1) = (snd(app(e.clone(), num(0))), snd(app(e.clone(), num(1))));
    let m = fst(app(e, v("%oa")));
    let rho = sym_of(snd(m.clone()));
    let each = pair(fst(m.clone()), if_zero(fst(m), eq_to_single(rho.clone()), eq_to_double(rho)));
    pair(
        pair(fst(e0.clone()), eq_to_single(snd(e0))),
        pair(pair(fst(e1.clone()), eq_to_double(snd(e1))), lambda(&["%oa"], &each)),
    )
}

/// `⊩ y ∈ V` from `m ⊩ y ∈ W` and `E ⊩ W = V`.
pub fn mem_trans(m: Term, e: Term) -> Term {
    let n = fst(app(e, fst(m.clone())));
    pair(fst(n.clone()), trans_of(snd(m), snd(n)))
}

/// `⊩ y₀ = y₁` from `c ⊩ op(⟨x₀, y⟩, x, y₀) ∧ op(⟨x₁, y⟩, x, y₁)`.
pub fn fun_q(c: Term) -> Term {
    let second = |o: Term| snd(app(t(u1()), app(t(u2()), o)));
    trans_of(sym_of(second(fst(c.clone()))), second(snd(c)))
}

/// `λa. P a u0`: each entry `⟨a, a^σ-keyed pair⟩` of a graph is a pair
/// with first coordinate under key `a`.
fn keyed_u0() -> Term {
    lambda(&["%ka"], &pair(v("%ka"), t(u0())))
}

/// The functional clause for graphs whose entries at equal keys agree.
fn graph_functional() -> Term {
    lambda(&["%fa", "%fb", "%fc"], &fun_q(v("%fc")))
}

/// `o ⊩ X_N = ω`.
pub fn o() -> Element {
    refl()
}

/// `fun ⊩ fun(F_{σ,i}) ∧ dom(F_{σ,i}) = X_σ`.
pub fn fun() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || pair(keyed_u0(), pair(keyed_u0(), graph_functional())))
}

/// `prod ⊩ X_{Π_σ i} = Π(X_σ, F_{σ,i})`.
pub fn prod() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || pair(prod_forward(), prod_converse()))
}

/// `λf. ⊩ f^α ∈ Π(X_σ, F)`.
fn prod_forward() -> Term {
    let (f, a) = (v("%pf"), v("%pa"));
    let r = lambda(
        &["%pa"],
        &pair(
            a.clone(),
            pair(a.clone(), pair(t(u0()), pair(t(u0()), pair(app(f, a), t(refl()))))),
        ),
    );
    lambda(&["%pf"], &pair(r, pair(keyed_u0(), graph_functional())))
}

/// `λc. P g H` with `g` read off the totality part and `H ⊩ h = g^α`.
fn prod_converse() -> Term {
    let c = v("%cc");
    let (c0, c10) = (fst(c.clone()), fst(snd(c.clone())));
    // relation part at key k: P ă (P ã (P o1 (P o2 m)))
    let q = |k: Term| app(c0.clone(), k);
    let key_of = |k: Term| fst(q(k));
    let o1 = |k: Term| fst(snd(snd(q(k))));
    let o2 = |k: Term| fst(snd(snd(snd(q(k)))));
    let mw = |k: Term| snd(snd(snd(snd(q(k)))));
    let to_x = |k: Term| sym_of(snd(app(t(u1()), app(t(u2()), o2(k)))));
    let member = |k: Term| mem_trans(mw(k.clone()), to_x(k));
    let val = |k: Term| fst(member(k));
    let val_eq = |k: Term| snd(member(k));
    let kt = |a: Term| fst(app(c10.clone(), a));
    let ot = |a: Term| snd(app(c10.clone(), a));

    let g = lambda(&["%ga"], &val(kt(v("%ga"))));
    let k = v("%hk");
    let to_g = pair(
        key_of(k.clone()),
        trans_of(
            app(t(u2()), o1(k.clone())),
            Term::apps(t(vpair_cong()), [t(refl()), val_eq(k.clone())]),
        ),
    );
    let agree = snd(app(
        t(u1()),
        trans_of(sym_of(app(t(u2()), ot(k.clone()))), app(t(u2()), o1(kt(k.clone())))),
    ));
    let y = trans_of(agree, val_eq(kt(k.clone())));
    let to_h = pair(
        kt(k.clone()),
        sym_of(trans_of(app(t(u2()), ot(k)), Term::apps(t(vpair_cong()), [t(refl()), y]))),
    );
    let h = lambda(&["%hk"], &pair(to_g, to_h));
    lambda(&["%cc"], &pair(g, h))
}

/// `sum ⊩ X_{Σ_σ i} = Σ(X_σ, F_{σ,i})`.
pub fn sum() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || {
        let a = v("%sa");
        let (a0, a1) = (fst(a.clone()), snd(a));
        let l = lambda(
            &["%sa"],
            &pair(a0.clone(), pair(a0, pair(t(u0()), pair(t(u0()), pair(a1, t(refl())))))),
        );
        // ∀Z∈F ∀x∈X ∀W (op(Z,x,W) → ∀y∈W ∃p∈Y op(p,x,y))
        let (x, c, k) = (v("%sx"), v("%sc"), v("%sk"));
        let w_is_x = sym_of(snd(app(t(u1()), app(t(u2()), c))));
        let m = fst(app(w_is_x, k));
        let p_eq = Term::apps(t(vpair_cong()), [t(refl()), sym_of(snd(m.clone()))]);
        let body = pair(pair(x, fst(m)), op_from_eq(p_eq));
        let r = lambda(&["%sz", "%sx", "%sc", "%sk"], &body);
        pair(l, r)
    })
}

/// `id ⊩ X_{I_σ(a,b)} = I(a^σ, b^σ)`.
pub fn id() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || {
        let l = lambda(&["%ic"], &pair(t(refl()), t(refl())));
        let r = lambda(&["%ic"], &pair(num(0), t(refl())));
        pair(l, r)
    })
}

/// `w ⊩ X_{W_σ i} = W(X_σ, F_{σ,i})`, split along the characterisation of
/// W-sets by their members.
pub fn w() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || pair(w_left(), w_right()))
}

fn w_left() -> Term {
    let c = v("%wc");
    let (c0, c1) = (fst(c.clone()), snd(c));
    let fd = pair(keyed_u0(), pair(keyed_u0(), graph_functional()));
    let ran = lambda(&["%wp"], &pair(t(u0()), pair(app(c1, v("%wp")), t(refl()))));
    lambda(&["%wc"], &pair(c0.clone(), pair(t(u0()), pair(c0, pair(t(u0()), pair(fd, ran))))))
}

fn w_right() -> Term {
    // a ⊩ ∃x∈X ∃f (op(y,x,f) ∧ ∃Z∈F ∃D (op(Z,x,D) ∧ (fun_dom(f,D) ∧ ran)))
    let a = v("%wa");
    let a0 = fst(a.clone());
    let a1 = snd(a);
    let o_y = fst(a1.clone());
    let inner = snd(snd(a1));
    let o_z = fst(inner.clone());
    let fd = fst(snd(inner.clone()));
    let ran = snd(snd(inner));
    let (rel, tot) = (fst(fd.clone()), fst(snd(fd)));
    // D = X_{i a0}
    let d_is_x = sym_of(snd(app(t(u1()), app(t(u2()), o_z))));
    // at key k of f: rel k = P p o_rel, ran k = P o_k m_k
    let p_of = |k: Term| mem_trans(pair(fst(app(rel.clone(), k.clone())), t(refl())), d_is_x.clone());
    let o_rel = |k: Term| snd(app(rel.clone(), k));
    let o_k = |k: Term| fst(app(ran.clone(), k));
    let m_k = |k: Term| snd(app(ran.clone(), k));
    let y_is_t = |k: Term| {
        snd(app(t(u1()), trans_of(sym_of(app(t(u2()), o_rel(k.clone()))), app(t(u2()), o_k(k)))))
    };
    let val = |k: Term| fst(m_k(k));
    let val_eq = |k: Term| trans_of(y_is_t(k.clone()), snd(m_k(k)));
    // a key p of X_{i a0} seen in D, then tot at that key: P k o_tot
    let dk = |p: Term| fst(snd(app(d_is_x.clone(), p)));
    let d_rho = |p: Term| snd(snd(app(d_is_x.clone(), p)));
    let kt = |p: Term| fst(app(tot.clone(), dk(p)));
    let ot = |p: Term| snd(app(tot.clone(), dk(p)));

    let g = lambda(&["%wg"], &val(kt(v("%wg"))));
    let k = v("%wk");
    let x_eq = |k: Term| snd(p_of(k));
    let to_g = pair(
        fst(p_of(k.clone())),
        trans_of(
            app(t(u2()), o_rel(k.clone())),
            Term::apps(t(vpair_cong()), [x_eq(k.clone()), val_eq(k.clone())]),
        ),
    );
    let agree = snd(app(
        t(u1()),
        trans_of(sym_of(app(t(u2()), ot(k.clone()))), app(t(u2()), o_rel(kt(k.clone())))),
    ));
    let y = trans_of(agree, val_eq(kt(k.clone())));
    let to_f = pair(
        kt(k.clone()),
        sym_of(trans_of(
            app(t(u2()), ot(k.clone())),
            Term::apps(t(vpair_cong()), [sym_of(d_rho(k)), y]),
        )),
    );
    let h = lambda(&["%wk"], &pair(to_g, to_f));
    let key = pair(a0.clone(), g);
    let tree = Term::apps(t(vpair_cong()), [t(refl()), h]);
    lambda(&["%wa"], &pair(key, trans_of(app(t(u2()), o_y), tree)))
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub label: String,
    pub state: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub scale: String,
    pub instances: Vec<InstanceReport>,
}

impl CaseReport {
    fn new(case: &str, scale: String) -> CaseReport {
        CaseReport { case: case.to_string(), scale, instances: Vec::new() }
    }

    fn push(&mut self, label: impl Into<String>, state: TriState) {
        self.instances.push(InstanceReport { label: label.into(), state: state.to_string() });
    }

    pub fn all_hold(&self) -> bool {
        !self.instances.is_empty() && self.instances.iter().all(|i| i.state == "holds")
    }

    pub fn none_refuted(&self) -> bool {
        self.instances.iter().all(|i| i.state != "refuted")
    }
}

pub mod targets {
    use super::*;

    pub fn o(omega: impl Into<NameExpr>) -> Formula {
        eq(NameExpr::XOf(TypeCode::Nat), omega)
    }

    pub fn fun(f: impl Into<NameExpr>, x: impl Into<NameExpr>) -> Formula {
        macros::fun_dom(f, x)
    }

    /// `Y = Π(X, F)`: every member of `Y` is a function in `Π(X, F)` and
    /// every such function is a member of `Y`.
    pub fn prod(big_y: impl Into<NameExpr>, x: impl Into<NameExpr>, f: impl Into<NameExpr>) -> Formula {
        let (big_y, x, f) = (big_y.into(), x.into(), f.into());
        and(
            all_in("%h", big_y.clone(), macros::in_pi("%h", x.clone(), f.clone())),
            all("%h", imp(macros::in_pi("%h", x, f), mem("%h", big_y))),
        )
    }

    pub fn sum(big_y: impl Into<NameExpr>, x: impl Into<NameExpr>, f: impl Into<NameExpr>) -> Formula {
        macros::sigma_set(big_y, x, f)
    }

    pub fn id(big_y: impl Into<NameExpr>, a: impl Into<NameExpr>, b: impl Into<NameExpr>) -> Formula {
        macros::id_set(big_y, a, b)
    }

    /// `Y = W(X, F)` through the members of `Y`.
    pub fn w(big_y: impl Into<NameExpr>, x: impl Into<NameExpr>, f: impl Into<NameExpr>) -> Formula {
        let (big_y, x, f) = (big_y.into(), x.into(), f.into());
        let member = macros::w_char_member("%y", big_y.clone(), x, f);
        and(all_in("%y", big_y.clone(), member.clone()), all("%y", imp(member, mem("%y", big_y))))
    }
}

fn embed(e: &Embedder, a: &Element, sigma: &TypeCode) -> Name {
    e.embed(a, sigma).expect("representative embeds")
}

fn reps(types: &Types, sigma: &TypeCode) -> Vec<Element> {
    types.per(sigma).reps().cloned().collect()
}

fn fibre(types: &Types, i: &Element, a: &Element) -> TypeCode {
    types.family_at(i, a).expect("family is defined on the base")
}

/// Names the unbounded quantifiers of a fibrewise check range over: the
/// base elements, the fibres, and their elements.
fn fibre_universe(e: &Embedder, sigma: &TypeCode, i: &Element) -> Vec<Name> {
    let mut out = Vec::new();
    for a in reps(e.types, sigma) {
        out.push(embed(e, &a, sigma));
        let tau = fibre(e.types, i, &a);
        out.push(e.x_of(&tau).expect("fibre"));
        for b in reps(e.types, &tau) {
            out.push(embed(e, &b, &tau));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn functional_pool() -> Vec<Element> {
    vec![Element::pair(&u0(), &u0())]
}

fn diagonal(elems: Vec<Element>, universe: Vec<Name>) -> Pool {
    Pool::diagonal(elems).with_universe(universe, true)
}

/// Fuel for the verification runs: the converse directions compose a few
/// dozen equality realizers and are evaluated call-by-name.
pub const VERIFY_FUEL: u64 = 20_000_000;

fn checker<'t>(types: &'t Types, pool: Pool) -> Checker<'t> {
    let mut c = Checker::new(types, pool);
    c.fuel = c.fuel.max(VERIFY_FUEL);
    c
}

fn holds(checker: &Checker, r: &Element, phi: &Formula) -> TriState {
    checker.holds(r, r, phi).expect("closed target")
}

pub fn verify_o(types: &Types, bound: u64) -> CaseReport {
    let mut rep = CaseReport::new("o", format!("omega cut at {bound}"));
    let checker = checker(types, Pool::diagonal([o()]));
    rep.push(format!("X_N = omega|{bound}"), holds(&checker, &o(), &targets::o(names::dot_omega(bound))));
    rep
}

pub fn verify_fun(types: &Types, sigma: &TypeCode, i: &Element) -> CaseReport {
    let mut rep = CaseReport::new("fun", format!("sigma={sigma}, i={i}"));
    let probe = Embedder::new(types);
    let universe = fibre_universe(&probe, sigma, i);
    let checker = checker(types, diagonal(functional_pool(), universe));
    let f = checker.embed.f_of(sigma, i).expect("family");
    let x = checker.embed.x_of(sigma).expect("base");
    rep.push("fun(F) and dom(F) = X", holds(&checker, &fun(), &targets::fun(f, x)));
    rep
}

pub fn verify_prod(types: &Types, sigma: &TypeCode, i: &Element) -> CaseReport {
    let alpha = TypeCode::pi(sigma.clone(), i.clone());
    let mut rep = CaseReport::new("prod", format!("sigma={sigma}, i={i}"));
    let probe = Embedder::new(types);
    let mut universe = fibre_universe(&probe, sigma, i);
    let mut pool = functional_pool();
    let forward = fst_of(&prod());
    for f in reps(types, &alpha) {
        universe.push(embed(&probe, &f, &alpha));
        pool.push(value_of(&app(forward.clone(), t(f))));
    }
    let checker = checker(types, diagonal(pool, universe));
    let f = checker.embed.f_of(sigma, i).expect("family");
    let x = checker.embed.x_of(sigma).expect("base");
    let xa = checker.embed.x_of(&alpha).expect("product");
    rep.push("X_Pi = Pi(X, F)", holds(&checker, &prod(), &targets::prod(xa, x, f)));
    rep
}

pub fn verify_sum(types: &Types, sigma: &TypeCode, i: &Element) -> CaseReport {
    let beta = TypeCode::sigma(sigma.clone(), i.clone());
    let mut rep = CaseReport::new("sum", format!("sigma={sigma}, i={i}"));
    let probe = Embedder::new(types);
    let mut universe = fibre_universe(&probe, sigma, i);
    for p in reps(types, &beta) {
        universe.push(embed(&probe, &p, &beta));
    }
    let checker = checker(types, diagonal(vec![u0()], universe));
    let f = checker.embed.f_of(sigma, i).expect("family");
    let x = checker.embed.x_of(sigma).expect("base");
    let xb = checker.embed.x_of(&beta).expect("sum");
    rep.push("X_Sigma = Sigma(X, F)", holds(&checker, &sum(), &targets::sum(xb, x, f)));
    rep
}

/// All pairs of representatives of `σ`, equal or not.
pub fn verify_id(types: &Types, sigma: &TypeCode) -> CaseReport {
    let mut rep = CaseReport::new("id", format!("sigma={sigma}"));
    let checker = checker(types, Pool::diagonal([refl()]));
    let rs = reps(types, sigma);
    for a in &rs {
        for b in &rs {
            let gamma = TypeCode::id(sigma.clone(), a.clone(), b.clone());
            let xi = checker.embed.x_of(&gamma).expect("identity type");
            let phi = targets::id(xi, embed(&checker.embed, a, sigma), embed(&checker.embed, b, sigma));
            rep.push(format!("I({a}, {b})"), holds(&checker, &id(), &phi));
        }
    }
    rep
}

pub fn verify_w(types: &Types, sigma: &TypeCode, i: &Element) -> CaseReport {
    let delta = TypeCode::w(sigma.clone(), i.clone());
    let mut rep = CaseReport::new("w", format!("sigma={sigma}, i={i}"));
    let probe = Embedder::new(types);
    let mut universe = fibre_universe(&probe, sigma, i);
    let left = fst_of(&w());
    let mut pool = functional_pool();
    for c in reps(types, &delta) {
        let tree = embed(&probe, &c, &delta);
        if let Some((_, sub)) = names::unvpair(&tree) {
            universe.push(sub);
        }
        universe.push(tree);
        pool.push(value_of(&app(left.clone(), t(c))));
    }
    universe.push(Name::empty());
    universe.sort();
    universe.dedup();
    let checker = checker(types, diagonal(pool, universe));
    let f = checker.embed.f_of(sigma, i).expect("family");
    let x = checker.embed.x_of(sigma).expect("base");
    let xd = checker.embed.x_of(&delta).expect("W-type");
    rep.push("X_W = W(X, F)", holds(&checker, &w(), &targets::w(xd, x, f)));
    rep
}

fn fst_of(e: &Element) -> Term {
    t(e.fst().expect("realizer is a pair"))
}

/// `e` for choice: from `c ⊩ ∀x∈X_σ ∃y∈X_τ φ(x, y)`, `e c` realizes
/// [`choice_conclusion`] for the name [`ac_name`] builds from `c`.
pub fn ac() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || {
        let c = v("%ec");
        let ca = |a: &str| app(c.clone(), v(a));
        let rel = lambda(&["%ea"], &pair(v("%ea"), pair(fst(ca("%ea")), t(u0()))));
        let total = lambda(&["%eb"], &pair(v("%eb"), pair(t(u0()), snd(ca("%eb")))));
        lambda(&["%ec"], &pair(rel, pair(total, graph_functional())))
    })
}

/// `{(a, b, ⟨a^σ, e^τ⟩) | a ∼_σ b, e = (c a)₀}`.
pub fn ac_name(embed: &Embedder, sigma: &TypeCode, tau: &TypeCode, c: &Element) -> Result<Name, EmbedError> {
    let per = embed.types.per(sigma);
    let mut entries = Vec::new();
    for (a, b) in per.pair_list() {
        let e = eval(&fst(app(t(c.clone()), t(a.clone()))), embed.types.budget.fuel)?;
        entries.push((a.clone(), b, names::vpair(&embed.embed(&a, sigma)?, &embed.embed(&e, tau)?)));
    }
    Ok(Name::new(entries))
}

fn embed_state(e: &EmbedError) -> TriState {
    match e {
        EmbedError::Unknown(r) => TriState::Unknown(*r),
        _ => TriState::Refuted,
    }
}

fn outcome_state(o: &EvalOutcome) -> TriState {
    match o {
        EvalOutcome::FuelOut => TriState::Unknown(Reason::Fuel),
        _ => TriState::Refuted,
    }
}

fn eval(term: &Term, fuel: u64) -> Result<Element, EmbedError> {
    match reduce(term, fuel) {
        EvalOutcome::Defined(e) => Ok(e),
        EvalOutcome::FuelOut => Err(EmbedError::Unknown(Reason::Fuel)),
        EvalOutcome::Stuck => Err(EmbedError::NotInType),
    }
}

/// `f ⊆ X × Y ∧ ∀x∈X ∃y ∃z∈f (op(z, x, y) ∧ φ) ∧ f functional`, with `φ`
/// free in `x` and `y`.
pub fn choice_conclusion(f: impl Into<NameExpr>, x: impl Into<NameExpr>, y: impl Into<NameExpr>, phi: &Formula) -> Formula {
    let (f, x, y) = (f.into(), x.into(), y.into());
    and(
        all_in("%z", f.clone(), ex_in("x", x.clone(), ex_in("y", y, op("%z", "x", "y")))),
        and(
            all_in("x", x, ex("y", ex_in("%z", f.clone(), and(op("%z", "x", "y"), phi.clone())))),
            macros::functional(f),
        ),
    )
}

/// `∀x∈X ∃y∈Y φ → ∃f (choice_conclusion)`.
pub fn choice_formula(x: impl Into<NameExpr>, y: impl Into<NameExpr>, phi: &Formula) -> Formula {
    let (x, y) = (x.into(), y.into());
    imp(
        all_in("x", x.clone(), ex_in("y", y.clone(), phi.clone())),
        ex("%f", choice_conclusion("%f", x, y, phi)),
    )
}

/// A premise for choice together with the formula it is about.
#[derive(Clone, Debug)]
pub struct ChoicePremise {
    pub label: &'static str,
    pub phi: Formula,
    pub c: Element,
}

impl ChoicePremise {
    /// `λa. P a i ⊩ ∀x ∃y (y = x)`
    pub fn identity() -> ChoicePremise {
        let c = value_of(&lambda(&["a"], &pair(v("a"), t(refl()))));
        ChoicePremise { label: "y = x", phi: eq("y", "x"), c }
    }

    /// `λa. P (1 - a) K ⊩ ∀x ∃y ¬(y = x)` over two elements.
    pub fn swap() -> ChoicePremise {
        let c = value_of(&lambda(&["a"], &pair(if_zero(v("a"), num(1), num(0)), Term::k())));
        ChoicePremise { label: "not y = x", phi: not(eq("y", "x")), c }
    }

    /// `λa. P 0 i ⊩ ∀x ∃y (y = y)`
    pub fn constant() -> ChoicePremise {
        let c = value_of(&lambda(&["a"], &pair(num(0), t(refl()))));
        ChoicePremise { label: "y = y", phi: eq("y", "y"), c }
    }
}

pub fn verify_ac(types: &Types, sigma: &TypeCode, tau: &TypeCode, premise: &ChoicePremise) -> CaseReport {
    let mut rep = CaseReport::new("ac", format!("sigma={sigma}, tau={tau}, phi: {}", premise.label));
    let probe = Embedder::new(types);
    let f = match ac_name(&probe, sigma, tau, &premise.c) {
        Ok(f) => f,
        Err(e) => {
            rep.push("choice function", embed_state(&e));
            return rep;
        }
    };
    let mut universe: Vec<Name> = reps(types, sigma).iter().map(|a| embed(&probe, a, sigma)).collect();
    universe.extend(reps(types, tau).iter().map(|b| embed(&probe, b, tau)));
    universe.push(f.clone());
    universe.sort();
    universe.dedup();
    let mut pool = functional_pool();
    pool.push(premise.c.clone());
    let checker = checker(types, diagonal(pool, universe));
    let x = checker.embed.x_of(sigma).expect("domain");
    let y = checker.embed.x_of(tau).expect("codomain");
    rep.push(
        "premise",
        holds(&checker, &premise.c, &all_in("x", x.clone(), ex_in("y", y.clone(), premise.phi.clone()))),
    );
    let ec = value_of(&app(t(ac()), t(premise.c.clone())));
    rep.push("conclusion for the emitted f", holds(&checker, &ec, &choice_conclusion(f, x.clone(), y.clone(), &premise.phi)));
    rep.push("choice", holds(&checker, &ac(), &choice_formula(x, y, &premise.phi)));
    rep
}

/// `⊩ m = n ∪ {n}` for `m = dot(n + 1)`: see [`macros::succ_of`].
fn succ_realizer(n: Term) -> Term {
    let e = t(refl());
    let below = lambda(&["%uk"], &pair(v("%uk"), e.clone()));
    let split = lambda(
        &["%uj"],
        &Term::apps(Term::d(), [v("%uj"), n.clone(), pair(num(1), e.clone()), pair(num(0), pair(v("%uj"), e.clone()))]),
    );
    pair(pair(n, e), pair(below, split))
}

/// `r = primrec c å c̊`: `r n̄ = P aₙ (P ψ-realizer φ-realizer)` past 0.
pub fn rdc_recursion(c: Term, a: Term, cc: Term) -> Term {
    Term::apps(t(primrec()), [c, a, cc])
}

/// `e` for dependent choice: `e c å c̊` realizes [`rdc_conclusion`] for the
/// sequence name [`rdc_name`].
pub fn rdc() -> Element {
    static CELL: OnceLock<Element> = OnceLock::new();
    cached(&CELL, || {
        let rec = |n: Term| app(rdc_recursion(v("%rc"), v("%ra"), v("%rcc")), n);
        let rel = lambda(&["%rn"], &pair(v("%rn"), pair(fst(rec(v("%rn"))), t(u0()))));
        let fun = pair(rel, pair(keyed_u0(), graph_functional()));
        let start = pair(num(0), t(u0()));
        let n = v("%rm");
        let next = app(Term::succ(), n.clone());
        let step = pair(
            next.clone(),
            pair(
                succ_realizer(n.clone()),
                pair(n, pair(next.clone(), pair(t(u0()), pair(t(u0()), snd(snd(rec(next))))))),
            ),
        );
        let chain = lambda(&["%rm"], &step);
        lambda(&["%rc", "%ra", "%rcc"], &pair(fun, pair(start, chain)))
    })
}

/// `aₙ = ((r c å c̊) n̄)₀` for `n < len`.
pub fn rdc_sequence(c: &Element, a: &Element, cc: &Element, len: u64, fuel: u64) -> Result<Vec<Element>, EvalOutcome> {
    let r = rdc_recursion(t(c.clone()), t(a.clone()), t(cc.clone()));
    (0..len)
        .map(|n| match reduce(&fst(app(r.clone(), num(n))), fuel) {
            EvalOutcome::Defined(e) => Ok(e),
            other => Err(other),
        })
        .collect()
}

/// `{(n̄, n̄, ⟨ṅ, aₙ^σ⟩)}` for the given sequence.
pub fn rdc_name(embed: &Embedder, sigma: &TypeCode, seq: &[Element]) -> Result<Name, EmbedError> {
    let mut entries = Vec::new();
    for (n, a) in seq.iter().enumerate() {
        let n = n as u64;
        entries.push((Element::num(n), Element::num(n), names::vpair(&names::dot(n), &embed.embed(a, sigma)?)));
    }
    Ok(Name::new(entries))
}

/// Both recursion equations at `0, …, n`, compared as partial values.
pub fn rdc_equations(c: &Element, a: &Element, cc: &Element, n: u64, fuel: u64) -> Vec<KleeneEq> {
    let r = rdc_recursion(t(c.clone()), t(a.clone()), t(cc.clone()));
    let mut out = vec![kleene_eq(&app(r.clone(), num(0)), &pair(t(a.clone()), pair(t(cc.clone()), num(0))), fuel)];
    for k in 0..n {
        let prev = app(r.clone(), num(k));
        let step = Term::apps(t(c.clone()), [fst(prev.clone()), fst(snd(prev))]);
        out.push(kleene_eq(&app(r.clone(), num(k + 1)), &pair(fst(step.clone()), snd(step)), fuel));
    }
    out
}

/// `f : ω → X ∧ f(0) = x ∧ ∀n∈ω φ(f(n), f(n+1))` with ω cut: `f` is read
/// on `dot(len)` and the chain condition on `dot(len - 1)`.
pub fn rdc_conclusion(f: impl Into<NameExpr>, x0: impl Into<NameExpr>, big_x: impl Into<NameExpr>, len: u64, phi: &Formula) -> Formula {
    let (f, x0, big_x) = (f.into(), x0.into(), big_x.into());
    let omega = NameExpr::Dot(len);
    let chain_on = NameExpr::Dot(len.saturating_sub(1));
    let fun = and(
        all_in("%z", f.clone(), ex_in("%x", omega.clone(), ex_in("%y", big_x, op("%z", "%x", "%y")))),
        and(macros::total_on(omega.clone(), f.clone()), macros::functional(f.clone())),
    );
    let start = ex_in("%z", f.clone(), op("%z", NameExpr::Dot(0), x0));
    let values = ex_in(
        "%z",
        f.clone(),
        ex_in("%w", f, ex("x", ex("y", and(op("%z", "%n", "x"), and(op("%w", "%m", "y"), phi.clone()))))),
    );
    let chain = all_in("%n", chain_on, ex_in("%m", omega, and(macros::succ_of("%m", "%n"), values)));
    and(fun, and(start, chain))
}

/// The full statement, `ψ` free in `x` and `φ` in `x`, `y`.
pub fn rdc_formula(big_x: impl Into<NameExpr>, len: u64, psi: &Formula, phi: &Formula) -> Formula {
    let big_x = big_x.into();
    let premise = all_in(
        "x",
        big_x.clone(),
        imp(psi.clone(), ex_in("y", big_x.clone(), and(psi.rename("x", "y"), phi.clone()))),
    );
    let conclusion = all_in("x", big_x.clone(), imp(psi.clone(), ex("%f", rdc_conclusion("%f", "x", big_x, len, phi))));
    imp(premise, conclusion)
}

#[derive(Clone, Debug)]
pub struct DependentPremise {
    pub label: &'static str,
    pub psi: Formula,
    pub phi: Formula,
    /// `c a c̆ = P e (P ψ(e)-realizer φ(a, e)-realizer)`
    pub c: Element,
    /// Realizes `ψ` everywhere.
    pub psi_realizer: Element,
}

impl DependentPremise {
    /// `ψ(x) ≡ x = x`, `φ(x, y) ≡ y = x`: the constant sequence.
    pub fn stay() -> DependentPremise {
        let c = value_of(&lambda(&["a", "h"], &pair(v("a"), pair(t(refl()), t(refl())))));
        DependentPremise { label: "y = x", psi: eq("x", "x"), phi: eq("y", "x"), c, psi_realizer: refl() }
    }

    /// `ψ(x) ≡ x = x`, `φ(x, y) ≡ ¬(y = x)`, stepping to `1 - a`.
    pub fn alternate() -> DependentPremise {
        let body = pair(if_zero(v("a"), num(1), num(0)), pair(t(refl()), Term::k()));
        let c = value_of(&lambda(&["a", "h"], &body));
        DependentPremise { label: "not y = x", psi: eq("x", "x"), phi: not(eq("y", "x")), c, psi_realizer: refl() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DependentReport {
    pub case: CaseReport,
    pub sequence: Vec<String>,
    pub equations_agree: bool,
}

/// Sequence, recursion equations and the conclusion for each start point,
/// then the whole statement, on `f` cut at `len`.
pub fn verify_rdc(types: &Types, sigma: &TypeCode, premise: &DependentPremise, start: &Element, len: u64) -> DependentReport {
    let mut rep = CaseReport::new("rdc", format!("sigma={sigma}, phi: {}, length {len}", premise.label));
    let fuel = VERIFY_FUEL;
    let eqs = rdc_equations(&premise.c, start, &premise.psi_realizer, len, fuel);
    let equations_agree = eqs.iter().all(|k| *k == KleeneEq::Agree);
    let probe = Embedder::new(types);
    let mut universe: Vec<Name> = reps(types, sigma).iter().map(|a| embed(&probe, a, sigma)).collect();
    let mut sequence = Vec::new();
    for a in reps(types, sigma) {
        match rdc_sequence(&premise.c, &a, &premise.psi_realizer, len + 1, fuel) {
            Ok(seq) => {
                if a == *start {
                    sequence = seq.iter().map(|e| e.to_string()).collect();
                }
                universe.push(rdc_name(&probe, sigma, &seq).expect("sequence stays in the type"));
            }
            Err(o) => rep.push(format!("sequence from {a}"), outcome_state(&o)),
        }
    }
    universe.sort();
    universe.dedup();
    let mut pool = functional_pool();
    pool.extend([premise.c.clone(), premise.psi_realizer.clone()]);
    let checker = checker(types, diagonal(pool, universe));
    let x = checker.embed.x_of(sigma).expect("carrier");
    let seq = rdc_sequence(&premise.c, start, &premise.psi_realizer, len + 1, fuel).unwrap_or_default();
    if let Ok(f) = rdc_name(&checker.embed, sigma, &seq) {
        let a0 = embed(&checker.embed, start, sigma);
        let r = value_of(&Term::apps(
            t(rdc()),
            [t(premise.c.clone()), t(start.clone()), t(premise.psi_realizer.clone())],
        ));
        rep.push("conclusion for the emitted f", holds(&checker, &r, &rdc_conclusion(f, a0, x.clone(), len + 1, &premise.phi)));
    }
    rep.push("dependent choice", holds(&checker, &rdc(), &rdc_formula(x, len + 1, &premise.psi, &premise.phi)));
    DependentReport { case: rep, sequence, equations_agree }
}

/// `(i, e)`: from `c ⊩ ϑ(u, Y)` presented as `P k̄ t` with `t ⊩ ϑ_k(u, Y)`,
/// `i c` is a type code `σ` and `e c ⊩ Y = X_σ`. Tags 0, 1, 4 are complete;
/// 2, 3, 5 take `t = P c' h` with `c' ⊩ ϑ(v, X)` and `h a ⊩ ϑ(v', F(a))`
/// and only assemble the code.
pub fn canon() -> (Element, Element) {
    static CELL: OnceLock<Element> = OnceLock::new();
    let g = cached(&CELL, || app(fix().into_term(), lambda(&["%g", "%c"], &canon_body(v("%g"), v("%c")))));
    let i = value_of(&lambda(&["%x"], &fst(app(t(g.clone()), v("%x")))));
    let e = value_of(&lambda(&["%x"], &snd(app(t(g), v("%x")))));
    (i, e)
}

/// The same pair for every case; the argument only selects what is checked.
pub fn mk_canon(_case: u64) -> (Element, Element) {
    canon()
}

fn canon_body(g: Term, c: Term) -> Term {
    let (tag, body) = (fst(c.clone()), snd(c));
    let ic = |x: Term| fst(app(g.clone(), x));
    let ec = |x: Term| snd(app(g.clone(), x));
    let case0 = pair(pair(num(0), fst(body.clone())), snd(body.clone()));
    let case1 = pair(pair(num(1), num(0)), body.clone());
    // body = P (P v cv) (P kx (P ky ρ))
    let cv = snd(fst(body.clone()));
    let rest = snd(body.clone());
    let (kx, ky, rho) = (fst(rest.clone()), fst(snd(rest.clone())), snd(snd(rest)));
    let into_x = |k: Term| mem_trans(pair(k, t(refl())), ec(cv.clone()));
    let (mx, my) = (into_x(kx), into_x(ky));
    let code = pair(num(4), pair(ic(cv.clone()), pair(fst(mx.clone()), fst(my.clone()))));
    let same = trans_of(snd(mx), sym_of(snd(my)));
    let e4 = lambda(
        &["%ck"],
        &pair(pair(num(0), fst(app(fst(rho.clone()), v("%ck")))), app(snd(rho), same)),
    );
    let case4 = pair(code, e4);
    let structural = |k: u64| {
        let (base, fam) = (fst(body.clone()), snd(body.clone()));
        let family = lambda(&["%ca"], &ic(app(fam, v("%ca"))));
        pair(pair(num(k), pair(ic(base), family)), Term::k())
    };
    let on = |k: u64, then: Term, other: Term| Term::apps(Term::d(), [tag.clone(), num(k), then, other]);
    on(
        0,
        case0,
        on(1, case1, on(4, case4, on(2, structural(2), on(3, structural(3), structural(5))))),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct CanonReport {
    pub case: CaseReport,
    pub expected: String,
    pub code: Option<String>,
}

/// The hand-built premise for tag `k`, the set it describes and the code
/// expected back.
pub fn canon_instance(types: &Types, k: u64) -> Option<(Element, Name, TypeCode)> {
    let e = refl();
    match k {
        0 => Some((value_of(&pair(num(0), pair(num(1), t(e)))), names::dot(1), TypeCode::NFin(1))),
        1 => {
            let omega = Embedder::new(types).x_of(&TypeCode::Nat).ok()?;
            Some((value_of(&pair(num(1), t(e))), omega, TypeCode::Nat))
        }
        4 => {
            // X = X_{N_2} ∈ ω by P 2 i; x = y = 0̇; Y = I(0̇, 0̇) = 1̇
            let cv = pair(num(0), pair(num(2), t(e.clone())));
            let rho = t(id());
            let body = pair(pair(num(0), cv), pair(num(0), pair(num(0), rho)));
            let code = TypeCode::id(TypeCode::NFin(2), Element::num(0), Element::num(0));
            Some((value_of(&pair(num(4), body)), names::dot(1), code))
        }
        _ => None,
    }
}

/// `i c ∼ expected` and `e c ⊩ Y = X_{i c}` on the instance for tag `k`.
pub fn verify_canon(types: &Types, k: u64) -> CanonReport {
    let mut rep = CaseReport::new("canon", format!("case {k}"));
    let Some((c, y, expected)) = canon_instance(types, k) else {
        rep.push("no instance for this case", TriState::Unknown(Reason::EnumerationBound));
        return CanonReport { case: rep, expected: String::new(), code: None };
    };
    let (i, e) = canon();
    let checker = checker(types, Pool::diagonal([refl()]));
    let code = eval(&app(t(i), t(c.clone())), checker.fuel).ok().and_then(|s| TypeCode::decode(&s).ok());
    rep.push(
        "type code",
        code.as_ref().map_or(TriState::Refuted, |s| types.type_equiv(s, &expected)),
    );
    if let Some(sigma) = &code {
        let ec = value_of(&app(t(e), t(c)));
        let xs = checker.embed.x_of(sigma).expect("canonical type");
        rep.push("Y = X_sigma", holds(&checker, &ec, &eq(y, xs)));
    }
    CanonReport { case: rep, expected: expected.to_string(), code: code.map(|s| s.to_string()) }
}

/// `{(0, 0, 0̇), (0, 0, 1̇)}`: in bijection with 2 but not realizably so.
pub fn presentation_target() -> Name {
    Name::new([
        (Element::num(0), Element::num(0), names::dot(0)),
        (Element::num(0), Element::num(0), names::dot(1)),
    ])
}

/// `∃f (∀v∈y ∃x∈X ∃z∈f op(z, x, v) ∧ f functional)`.
pub fn surjection_formula(big_x: impl Into<NameExpr>, y: impl Into<NameExpr>) -> Formula {
    ex(
        "%f",
        and(
            all_in("%v", y, ex_in("%x", big_x, ex_in("%z", "%f", op("%z", "%x", "%v")))),
            macros::functional("%f"),
        ),
    )
}

/// Graphs from `X_σ` onto `{0̇, 1̇}`, keyed apart and all under `0̄`.
fn candidate_graphs(embed: &Embedder, sigma: &TypeCode) -> Vec<Name> {
    let xs: Vec<Name> = reps(embed.types, sigma).iter().map(|a| embed.embed(a, sigma).expect("rep")).collect();
    let mut points = Vec::new();
    for x in &xs {
        for j in 0..2 {
            points.push((j, names::vpair(x, &names::dot(j))));
        }
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << points.len()) {
        let chosen: Vec<&(u64, Name)> = points.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, p)| p).collect();
        if !(chosen.iter().any(|p| p.0 == 0) && chosen.iter().any(|p| p.0 == 1)) {
            continue;
        }
        let apart = chosen.iter().enumerate().map(|(k, p)| (Element::num(k as u64), Element::num(k as u64), p.1.clone()));
        out.push(Name::new(apart));
        let shared = chosen.iter().map(|p| (Element::num(0), Element::num(0), p.1.clone()));
        out.push(Name::new(shared));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub sigma: String,
    pub size_bound: usize,
    pub candidates: usize,
    pub scanned: usize,
    pub unknown: usize,
    pub found: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationRefutation {
    pub rank: usize,
    pub instances: Vec<PresentationReport>,
    /// `0̇ = 1̇`, which the surjection would force.
    pub subgoal_scanned: usize,
    pub subgoal_unknown: usize,
    pub subgoal_found: bool,
}

impl PresentationRefutation {
    pub fn refuted(&self) -> bool {
        self.instances.iter().all(|i| !i.found) && !self.subgoal_found && self.subgoal_unknown == 0
    }
}

/// Bounded search for a realizer of the surjection onto
/// [`presentation_target`] from `X_{N_1}` and `X_{N_2}`.
pub fn refute_presentation(types: &Types, size_bound: usize) -> PresentationRefutation {
    let y = presentation_target();
    let mut instances = Vec::new();
    for sigma in [TypeCode::NFin(1), TypeCode::NFin(2)] {
        let probe = Embedder::new(types);
        let graphs = candidate_graphs(&probe, &sigma);
        let candidates = graphs.len();
        let checker = Checker::new(types, diagonal(functional_pool(), graphs));
        let x = checker.embed.x_of(&sigma).expect("finite type");
        let outcome = checker.search(&surjection_formula(x, y.clone()), Some(size_bound)).expect("closed formula");
        let (scanned, unknown, found) = match outcome {
            SearchOutcome::Found { scanned, .. } => (scanned, 0, true),
            SearchOutcome::NotFound { scanned, unknown, .. } => (scanned, unknown, false),
        };
        instances.push(PresentationReport { sigma: sigma.to_string(), size_bound, candidates, scanned, unknown, found });
    }
    let checker = Checker::new(types, Pool::explicit(Vec::new()));
    let sub = checker.search(&eq(names::dot(0), names::dot(1)), Some(size_bound)).expect("closed formula");
    let (subgoal_scanned, subgoal_unknown, subgoal_found) = match sub {
        SearchOutcome::Found { scanned, .. } => (scanned, 0, true),
        SearchOutcome::NotFound { scanned, unknown, .. } => (scanned, unknown, false),
    };
    PresentationRefutation { rank: y.rank(), instances, subgoal_scanned, subgoal_unknown, subgoal_found }
}

/// A library realizer with the instances it is checked on.
#[derive(Clone)]
pub struct RealizerCase {
    pub name: &'static str,
    pub term: Element,
    pub scale: &'static str,
    run: fn(&Types) -> Vec<CaseReport>,
}

impl std::fmt::Debug for RealizerCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RealizerCase").field("name", &self.name).field("scale", &self.scale).finish()
    }
}

impl RealizerCase {
    pub fn verify(&self, types: &Types) -> Vec<CaseReport> {
        (self.run)(types)
    }
}

#[derive(Clone, Debug)]
pub struct RealizerCases {
    pub o: RealizerCase,
    pub fun: RealizerCase,
    pub sum: RealizerCase,
    pub prod: RealizerCase,
    pub w: RealizerCase,
}

fn constant_n(k: u64) -> Element {
    TypeCode::constant_family(&TypeCode::NFin(k))
}

pub fn mk_id_realizer() -> RealizerCase {
    RealizerCase {
        name: "id",
        term: id(),
        scale: "sigma = N_0, N_2, all pairs of elements",
        run: |ts| vec![verify_id(ts, &TypeCode::NFin(0)), verify_id(ts, &TypeCode::NFin(2))],
    }
}

pub fn mk_structural_realizers() -> RealizerCases {
    RealizerCases {
        o: RealizerCase { name: "o", term: o(), scale: "omega cut at 4", run: |ts| vec![verify_o(ts, 4)] },
        fun: RealizerCase {
            name: "fun",
            term: fun(),
            scale: "sigma = N_2, i = K N_1",
            run: |ts| vec![verify_fun(ts, &TypeCode::NFin(2), &constant_n(1))],
        },
        sum: RealizerCase {
            name: "sum",
            term: sum(),
            scale: "sigma = N_1, i = K N_2",
            run: |ts| vec![verify_sum(ts, &TypeCode::NFin(1), &constant_n(2))],
        },
        prod: RealizerCase {
            name: "prod",
            term: prod(),
            scale: "sigma = N_1, i = K N_2 and sigma = N_2, i = K N_1",
            run: |ts| {
                vec![
                    verify_prod(ts, &TypeCode::NFin(1), &constant_n(2)),
                    verify_prod(ts, &TypeCode::NFin(2), &constant_n(1)),
                ]
            },
        },
        w: RealizerCase {
            name: "w",
            term: w(),
            scale: "sigma = N_1, i = K N_0",
            run: |ts| vec![verify_w(ts, &TypeCode::NFin(1), &constant_n(0))],
        },
    }
}

/// The choice realizer does not depend on the types.
pub fn mk_ac_realizer(_sigma: &TypeCode, _tau: &TypeCode) -> Element {
    ac()
}

pub fn mk_rdc_realizer(_sigma: &TypeCode) -> Element {
    rdc()
}

fn ac_case() -> RealizerCase {
    RealizerCase {
        name: "ac",
        term: ac(),
        scale: "N_2 to N_2 with y = x and y != x, N_2 -> N_1 to N_1, N_0 to N_1",
        run: |ts| {
            let n = TypeCode::NFin;
            vec![
                verify_ac(ts, &n(2), &n(2), &ChoicePremise::identity()),
                verify_ac(ts, &n(2), &n(2), &ChoicePremise::swap()),
                verify_ac(ts, &TypeCode::pi(n(2), constant_n(1)), &n(1), &ChoicePremise::constant()),
                verify_ac(ts, &n(0), &n(1), &ChoicePremise::identity()),
            ]
        },
    }
}

/// Folds the sequence and the recursion equations into the case report.
pub fn dependent_case_report(r: DependentReport) -> CaseReport {
    let mut case = r.case;
    case.push("recursion equations", TriState::from_bool(r.equations_agree));
    case.scale = format!("{}; sequence {}", case.scale, r.sequence.join(" "));
    case
}

fn rdc_case() -> RealizerCase {
    RealizerCase {
        name: "rdc",
        term: rdc(),
        scale: "N_1 constant and N_2 alternating, f cut at 6",
        run: |ts| {
            let zero = Element::num(0);
            vec![
                dependent_case_report(verify_rdc(ts, &TypeCode::NFin(1), &DependentPremise::stay(), &zero, 5)),
                dependent_case_report(verify_rdc(ts, &TypeCode::NFin(2), &DependentPremise::alternate(), &zero, 5)),
            ]
        },
    }
}

fn canon_reports(ts: &Types) -> Vec<CaseReport> {
    [0, 1, 4].into_iter().map(|k| verify_canon(ts, k).case).collect()
}

/// Any library realizer by name: the structural ones, `id`, `ac`, `rdc`,
/// `canon_i`, `canon_e`.
pub fn mk_realizer(name: &str) -> Option<RealizerCase> {
    let s = mk_structural_realizers();
    Some(match name {
        "o" => s.o,
        "fun" => s.fun,
        "sum" => s.sum,
        "prod" => s.prod,
        "w" => s.w,
        "id" => mk_id_realizer(),
        "ac" => ac_case(),
        "rdc" => rdc_case(),
        "canon_i" => RealizerCase { name: "canon_i", term: canon().0, scale: "cases 0, 1, 4", run: canon_reports },
        "canon_e" => RealizerCase { name: "canon_e", term: canon().1, scale: "cases 0, 1, 4", run: canon_reports },
        _ => return None,
    })
}

pub const REALIZER_NAMES: [&str; 10] = ["o", "fun", "prod", "sum", "id", "w", "ac", "rdc", "canon_i", "canon_e"];
