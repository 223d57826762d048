//! Formulas of the realizability language with name parameters, and the
//! macros that expand into them.

use std::fmt;

use crate::names::{self, HfSet, Name};
use crate::types::TypeCode;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NameExpr {
    Lit(Name),
    Var(String),
    Dot(u64),
    /// `ω̇` cut at the given bound.
    DotOmega(u64),
    Check(HfSet),
    VSet1(Box<NameExpr>),
    VSet2(Box<NameExpr>, Box<NameExpr>),
    VPair(Box<NameExpr>, Box<NameExpr>),
    XOf(TypeCode),
}

impl NameExpr {
    pub fn var(v: &str) -> NameExpr {
        NameExpr::Var(v.to_string())
    }

    pub fn vpair(x: NameExpr, y: NameExpr) -> NameExpr {
        NameExpr::VPair(Box::new(x), Box::new(y))
    }

    fn rename(&self, from: &str, to: &str) -> NameExpr {
        let r = |x: &NameExpr| Box::new(x.rename(from, to));
        match self {
            NameExpr::Var(w) if w == from => NameExpr::var(to),
            NameExpr::VSet1(x) => NameExpr::VSet1(r(x)),
            NameExpr::VSet2(x, y) => NameExpr::VSet2(r(x), r(y)),
            NameExpr::VPair(x, y) => NameExpr::VPair(r(x), r(y)),
            other => other.clone(),
        }
    }

    fn mentions(&self, v: &str) -> bool {
        match self {
            NameExpr::Var(w) => w == v,
            NameExpr::VSet1(x) => x.mentions(v),
            NameExpr::VSet2(x, y) | NameExpr::VPair(x, y) => x.mentions(v) || y.mentions(v),
            _ => false,
        }
    }
}

impl From<Name> for NameExpr {
    fn from(n: Name) -> NameExpr {
        NameExpr::Lit(n)
    }
}

impl From<&Name> for NameExpr {
    fn from(n: &Name) -> NameExpr {
        NameExpr::Lit(n.clone())
    }
}

impl From<&str> for NameExpr {
    fn from(v: &str) -> NameExpr {
        NameExpr::var(v)
    }
}

impl fmt::Display for NameExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NameExpr::Lit(n) => write!(f, "{n}"),
            NameExpr::Var(v) => write!(f, "{v}"),
            NameExpr::Dot(n) => write!(f, "(dot {n})"),
            NameExpr::DotOmega(n) => write!(f, "(dot-omega {n})"),
            NameExpr::Check(s) => write!(f, "(check {s})"),
            NameExpr::VSet1(x) => write!(f, "(vset1 {x})"),
            NameExpr::VSet2(x, y) => write!(f, "(vset2 {x} {y})"),
            NameExpr::VPair(x, y) => write!(f, "(vpair {x} {y})"),
            NameExpr::XOf(s) => write!(f, "(xof {s})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Mem(NameExpr, NameExpr),
    Eq(NameExpr, NameExpr),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    AllIn(String, NameExpr, Box<Formula>),
    ExIn(String, NameExpr, Box<Formula>),
    All(String, Box<Formula>),
    Ex(String, Box<Formula>),
}

pub fn mem(x: impl Into<NameExpr>, y: impl Into<NameExpr>) -> Formula {
    Formula::Mem(x.into(), y.into())
}

pub fn eq(x: impl Into<NameExpr>, y: impl Into<NameExpr>) -> Formula {
    Formula::Eq(x.into(), y.into())
}

pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}

/// Right-nested conjunction; panics on an empty list.
pub fn and_all(mut fs: Vec<Formula>) -> Formula {
    let last = fs.pop().expect("empty conjunction");
    fs.into_iter().rev().fold(last, |acc, f| and(f, acc))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

pub fn not(a: Formula) -> Formula {
    Formula::Not(Box::new(a))
}

pub fn imp(a: Formula, b: Formula) -> Formula {
    Formula::Imp(Box::new(a), Box::new(b))
}

pub fn all_in(v: &str, y: impl Into<NameExpr>, f: Formula) -> Formula {
    Formula::AllIn(v.to_string(), y.into(), Box::new(f))
}

pub fn ex_in(v: &str, y: impl Into<NameExpr>, f: Formula) -> Formula {
    Formula::ExIn(v.to_string(), y.into(), Box::new(f))
}

pub fn all(v: &str, f: Formula) -> Formula {
    Formula::All(v.to_string(), Box::new(f))
}

pub fn ex(v: &str, f: Formula) -> Formula {
    Formula::Ex(v.to_string(), Box::new(f))
}

/// `∅ ∈ ∅`, which nothing realizes.
pub fn falsum() -> Formula {
    mem(Name::empty(), Name::empty())
}

impl Formula {
    /// Nesting depth of connectives and quantifiers; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Mem(..) | Formula::Eq(..) => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Not(a) | Formula::AllIn(_, _, a) | Formula::ExIn(_, _, a) | Formula::All(_, a) | Formula::Ex(_, a) => {
                1 + a.depth()
            }
        }
    }

    /// True when the formula avoids `→`, `¬` and unbounded quantifiers, so
    /// that checking it needs no pool.
    pub fn is_bounded(&self) -> bool {
        match self {
            Formula::Mem(..) | Formula::Eq(..) => true,
            Formula::And(a, b) | Formula::Or(a, b) => a.is_bounded() && b.is_bounded(),
            Formula::AllIn(_, _, a) | Formula::ExIn(_, _, a) => a.is_bounded(),
            _ => false,
        }
    }

    /// Free occurrences of `from` replaced by `to`; `to` must not be bound
    /// inside the formula.
    pub fn rename(&self, from: &str, to: &str) -> Formula {
        let r = |a: &Formula| Box::new(a.rename(from, to));
        match self {
            Formula::Mem(x, y) => Formula::Mem(x.rename(from, to), y.rename(from, to)),
            Formula::Eq(x, y) => Formula::Eq(x.rename(from, to), y.rename(from, to)),
            Formula::And(a, b) => Formula::And(r(a), r(b)),
            Formula::Or(a, b) => Formula::Or(r(a), r(b)),
            Formula::Imp(a, b) => Formula::Imp(r(a), r(b)),
            Formula::Not(a) => Formula::Not(r(a)),
            Formula::AllIn(w, y, a) => {
                let body = if w == from { a.clone() } else { r(a) };
                Formula::AllIn(w.clone(), y.rename(from, to), body)
            }
            Formula::ExIn(w, y, a) => {
                let body = if w == from { a.clone() } else { r(a) };
                Formula::ExIn(w.clone(), y.rename(from, to), body)
            }
            Formula::All(w, a) if w != from => Formula::All(w.clone(), r(a)),
            Formula::Ex(w, a) if w != from => Formula::Ex(w.clone(), r(a)),
            other => other.clone(),
        }
    }

    pub fn mentions(&self, v: &str) -> bool {
        match self {
            Formula::Mem(x, y) | Formula::Eq(x, y) => x.mentions(v) || y.mentions(v),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.mentions(v) || b.mentions(v),
            Formula::Not(a) => a.mentions(v),
            Formula::AllIn(w, y, a) | Formula::ExIn(w, y, a) => y.mentions(v) || (w != v && a.mentions(v)),
            Formula::All(w, a) | Formula::Ex(w, a) => w != v && a.mentions(v),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Mem(x, y) => write!(f, "(mem {x} {y})"),
            Formula::Eq(x, y) => write!(f, "(eq {x} {y})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Not(a) => write!(f, "(not {a})"),
            Formula::Imp(a, b) => write!(f, "(imp {a} {b})"),
            Formula::AllIn(v, y, a) => write!(f, "(allin {v} {y} {a})"),
            Formula::ExIn(v, y, a) => write!(f, "(exin {v} {y} {a})"),
            Formula::All(v, a) => write!(f, "(all {v} {a})"),
            Formula::Ex(v, a) => write!(f, "(ex {v} {a})"),
        }
    }
}

/// Set-theoretic abbreviations. Bound variables are prefixed with `%` and
/// a depth counter, which the surface syntax cannot produce, so expansion
/// never captures user variables.
pub mod macros {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    static FRESH: AtomicUsize = AtomicUsize::new(0);

    fn fresh(hint: &str) -> String {
        format!("%{hint}{}", FRESH.fetch_add(1, Ordering::Relaxed))
    }

    /// `w = {x}` spelled out: `x ∈ w ∧ ∀u∈w (u = x)`.
    pub fn is_singleton(w: NameExpr, x: NameExpr) -> Formula {
        let u = fresh("u");
        and(mem(x.clone(), w.clone()), all_in(&u, w, eq(NameExpr::var(&u), x)))
    }

    /// `w = {x, y}`: `x ∈ w ∧ (y ∈ w ∧ ∀u∈w (u = x ∨ u = y))`.
    pub fn is_doubleton(w: NameExpr, x: NameExpr, y: NameExpr) -> Formula {
        let u = fresh("u");
        and(
            mem(x.clone(), w.clone()),
            and(
                mem(y.clone(), w.clone()),
                all_in(&u, w, or(eq(NameExpr::var(&u), x), eq(NameExpr::var(&u), y))),
            ),
        )
    }

    /// `op(z, x, y)`: z is the ordered pair `{{x}, {x, y}}`.
    /// Shape: `∃w∈z (w={x}) ∧ (∃w∈z (w={x,y}) ∧ ∀w∈z (w={x} ∨ w={x,y}))`.
    pub fn op(z: impl Into<NameExpr>, x: impl Into<NameExpr>, y: impl Into<NameExpr>) -> Formula {
        let (z, x, y) = (z.into(), x.into(), y.into());
        let (w0, w1, w2) = (fresh("w"), fresh("w"), fresh("w"));
        and(
            ex_in(&w0, z.clone(), is_singleton(NameExpr::var(&w0), x.clone())),
            and(
                ex_in(&w1, z.clone(), is_doubleton(NameExpr::var(&w1), x.clone(), y.clone())),
                all_in(
                    &w2,
                    z,
                    or(
                        is_singleton(NameExpr::var(&w2), x.clone()),
                        is_doubleton(NameExpr::var(&w2), x, y),
                    ),
                ),
            ),
        )
    }

    /// `F ⊆ X × V` with first coordinates in `X`:
    /// `∀z∈F ∃x∈X ∃y op(z, x, y)`.
    pub fn relation_over(f: impl Into<NameExpr>, x: impl Into<NameExpr>) -> Formula {
        let (zv, xv, yv) = (fresh("z"), fresh("x"), fresh("y"));
        all_in(
            &zv,
            f,
            ex_in(&xv, x, ex(&yv, op(NameExpr::var(&zv), NameExpr::var(&xv), NameExpr::var(&yv)))),
        )
    }

    /// `X ⊆ dom(F)`: `∀x∈X ∃y ∃z∈F op(z, x, y)`.
    pub fn total_on(x: impl Into<NameExpr>, f: impl Into<NameExpr>) -> Formula {
        let (zv, xv, yv) = (fresh("z"), fresh("x"), fresh("y"));
        all_in(
            &xv,
            x,
            ex(&yv, ex_in(&zv, f, op(NameExpr::var(&zv), NameExpr::var(&xv), NameExpr::var(&yv)))),
        )
    }

    /// `F` is functional:
    /// `∀z0∈F ∀z1∈F ∀x ∀y0 ∀y1 (op(z0,x,y0) ∧ op(z1,x,y1) → y0 = y1)`.
    pub fn functional(f: impl Into<NameExpr>) -> Formula {
        let f = f.into();
        let (z0, z1, x, y0, y1) = (fresh("z"), fresh("z"), fresh("x"), fresh("y"), fresh("y"));
        all_in(
            &z0,
            f.clone(),
            all_in(
                &z1,
                f,
                all(
                    &x,
                    all(
                        &y0,
                        all(
                            &y1,
                            imp(
                                and(
                                    op(NameExpr::var(&z0), NameExpr::var(&x), NameExpr::var(&y0)),
                                    op(NameExpr::var(&z1), NameExpr::var(&x), NameExpr::var(&y1)),
                                ),
                                eq(NameExpr::var(&y0), NameExpr::var(&y1)),
                            ),
                        ),
                    ),
                ),
            ),
        )
    }

    /// `fun(F) ∧ dom(F) = X`, split as relation, totality and functionality.
    pub fn fun_dom(f: impl Into<NameExpr>, x: impl Into<NameExpr>) -> Formula {
        let (f, x) = (f.into(), x.into());
        and(relation_over(f.clone(), x.clone()), and(total_on(x, f.clone()), functional(f)))
    }

    /// `I(x, y) = {z ∈ {0} | x = y}` tested against `Y`:
    /// `∀z∈Y (z = 0 ∧ x = y) ∧ (x = y → 0 ∈ Y)`.
    pub fn id_set(big_y: impl Into<NameExpr>, x: impl Into<NameExpr>, y: impl Into<NameExpr>) -> Formula {
        let (big_y, x, y) = (big_y.into(), x.into(), y.into());
        let zv = fresh("z");
        and(
            all_in(&zv, big_y.clone(), and(eq(NameExpr::var(&zv), NameExpr::Dot(0)), eq(x.clone(), y.clone()))),
            imp(eq(x, y), mem(NameExpr::Dot(0), big_y)),
        )
    }

    /// `Y = Σ(X, F)`, as two inclusions:
    /// `∀p∈Y ∃x∈X ∃y ∃Z∈F ∃W (op(p,x,y) ∧ op(Z,x,W) ∧ y ∈ W)` and
    /// `∀Z∈F ∀x∈X ∀W (op(Z,x,W) → ∀y∈W ∃p∈Y op(p,x,y))`.
    pub fn sigma_set(big_y: impl Into<NameExpr>, x: impl Into<NameExpr>, f: impl Into<NameExpr>) -> Formula {
        let (big_y, x, f) = (big_y.into(), x.into(), f.into());
        let (p, xv, yv, zv, wv) = (fresh("p"), fresh("x"), fresh("y"), fresh("Z"), fresh("W"));
        let v = NameExpr::var;
        let left = all_in(
            &p,
            big_y.clone(),
            ex_in(
                &xv,
                x.clone(),
                ex(
                    &yv,
                    ex_in(
                        &zv,
                        f.clone(),
                        ex(
                            &wv,
                            and(op(v(&p), v(&xv), v(&yv)), and(op(v(&zv), v(&xv), v(&wv)), mem(v(&yv), v(&wv)))),
                        ),
                    ),
                ),
            ),
        );
        let (p2, xv2, yv2, zv2, wv2) = (fresh("p"), fresh("x"), fresh("y"), fresh("Z"), fresh("W"));
        let right = all_in(
            &zv2,
            f,
            all_in(
                &xv2,
                x,
                all(
                    &wv2,
                    imp(
                        op(v(&zv2), v(&xv2), v(&wv2)),
                        all_in(&yv2, v(&wv2), ex_in(&p2, big_y, op(v(&p2), v(&xv2), v(&yv2)))),
                    ),
                ),
            ),
        );
        and(left, right)
    }

    /// `h ∈ Π(X, F)` for a candidate `h`: relation into the fibres, total on
    /// `X`, functional.
    pub fn in_pi(h: impl Into<NameExpr>, x: impl Into<NameExpr>, f: impl Into<NameExpr>) -> Formula {
        let (h, x, f) = (h.into(), x.into(), f.into());
        let (zv, xv, yv, bz, bw) = (fresh("z"), fresh("x"), fresh("y"), fresh("Z"), fresh("W"));
        let v = NameExpr::var;
        let rel = all_in(
            &zv,
            h.clone(),
            ex_in(
                &xv,
                x.clone(),
                ex(
                    &yv,
                    ex_in(
                        &bz,
                        f,
                        ex(
                            &bw,
                            and(op(v(&zv), v(&xv), v(&yv)), and(op(v(&bz), v(&xv), v(&bw)), mem(v(&yv), v(&bw)))),
                        ),
                    ),
                ),
            ),
        );
        and(rel, and(total_on(x, h.clone()), functional(h)))
    }

    /// The case split `ϑ(u, Y)` for the disjuncts the canonical-type
    /// realizer handles: 0 (`Y ∈ ω`), 1 (`Y = ω`), 4 (`Y = I(x, y)` for
    /// `x, y ∈ X`). Other tags expand to falsum.
    pub fn theta_case(tag: u64, big_y: impl Into<NameExpr>, omega: impl Into<NameExpr>, big_x: Option<NameExpr>) -> Formula {
        let (big_y, omega) = (big_y.into(), omega.into());
        match tag {
            0 => mem(big_y, omega),
            1 => eq(big_y, omega),
            4 => {
                let big_x = big_x.expect("case 4 needs the carrier X");
                let (xv, yv) = (fresh("x"), fresh("y"));
                ex_in(&xv, big_x.clone(), ex_in(&yv, big_x, id_set(big_y, NameExpr::var(&xv), NameExpr::var(&yv))))
            }
            _ => falsum(),
        }
    }

    /// Membership half of the W characterisation for a candidate tree `y`:
    /// `∃x∈X ∃f (y = ⟨x, f⟩ ∧ fun(f) ∧ dom(f) = F(x) ∧ ∀u∈dom(f) f(u) ∈ Y)`,
    /// with `F(x)` read through `op(Z, x, D)` for some `Z ∈ F`.
    pub fn w_char_member(y: impl Into<NameExpr>, big_y: impl Into<NameExpr>, x: impl Into<NameExpr>, f: impl Into<NameExpr>) -> Formula {
        let (y, big_y, x, f) = (y.into(), big_y.into(), x.into(), f.into());
        let (xv, fv, zv, dv, pv, uv, tv) = (fresh("x"), fresh("f"), fresh("Z"), fresh("D"), fresh("p"), fresh("u"), fresh("t"));
        let v = NameExpr::var;
        ex_in(
            &xv,
            x,
            ex(
                &fv,
                and(
                    op(y, v(&xv), v(&fv)),
                    ex_in(
                        &zv,
                        f,
                        ex(
                            &dv,
                            and(
                                op(v(&zv), v(&xv), v(&dv)),
                                and(
                                    fun_dom(v(&fv), v(&dv)),
                                    all_in(
                                        &pv,
                                        v(&fv),
                                        ex(&uv, ex(&tv, and(op(v(&pv), v(&uv), v(&tv)), mem(v(&tv), big_y.clone())))),
                                    ),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        )
    }

    /// `m = n ∪ {n}`: `n ∈ m ∧ (∀k∈n k ∈ m ∧ ∀k∈m (k ∈ n ∨ k = n))`.
    pub fn succ_of(m: impl Into<NameExpr>, n: impl Into<NameExpr>) -> Formula {
        let (m, n) = (m.into(), n.into());
        let (k0, k1) = (fresh("k"), fresh("k"));
        let v = NameExpr::var;
        and(
            mem(n.clone(), m.clone()),
            and(
                all_in(&k0, n.clone(), mem(v(&k0), m.clone())),
                all_in(&k1, m, or(mem(v(&k1), n.clone()), eq(v(&k1), n))),
            ),
        )
    }

    /// Builds the concrete name `{{x},{x,y}}` for a pair of names.
    pub fn pair_name(x: &Name, y: &Name) -> Name {
        names::vpair(x, y)
    }
}
