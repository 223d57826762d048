//! Type codes over the algebra and their partial equivalence relations.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::pca::{apply, lambda, reduce, Element, EvalOutcome, Fuel, Term, DEFAULT_FUEL};
use crate::tri::{Reason, TriState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("not a type code: {0}")]
    NotATypeCode(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeCode {
    NFin(u64),
    Nat,
    Pi(Box<TypeCode>, Element),
    Sigma(Box<TypeCode>, Element),
    Id(Box<TypeCode>, Element, Element),
    W(Box<TypeCode>, Element),
}

fn tagged(tag: u64, body: Element) -> Element {
    Element::pair(&Element::num(tag), &body)
}

impl TypeCode {
    pub fn pi(base: TypeCode, family: Element) -> TypeCode {
        TypeCode::Pi(Box::new(base), family)
    }
    pub fn sigma(base: TypeCode, family: Element) -> TypeCode {
        TypeCode::Sigma(Box::new(base), family)
    }
    pub fn id(base: TypeCode, a: Element, b: Element) -> TypeCode {
        TypeCode::Id(Box::new(base), a, b)
    }
    pub fn w(base: TypeCode, family: Element) -> TypeCode {
        TypeCode::W(Box::new(base), family)
    }

    /// The constant family `K τ`.
    pub fn constant_family(tau: &TypeCode) -> Element {
        Element::from_value(Term::app(Term::k(), tau.encode().into_term())).unwrap()
    }

    pub fn arrow(sigma: TypeCode, tau: &TypeCode) -> TypeCode {
        TypeCode::pi(sigma, TypeCode::constant_family(tau))
    }

    pub fn product(sigma: TypeCode, tau: &TypeCode) -> TypeCode {
        TypeCode::sigma(sigma, TypeCode::constant_family(tau))
    }

    pub fn encode(&self) -> Element {
        match self {
            TypeCode::NFin(n) => Element::pair(&Element::num(0), &Element::num(*n)),
            TypeCode::Nat => Element::pair(&Element::num(1), &Element::num(0)),
            TypeCode::Pi(a, i) => tagged(2, Element::pair(&a.encode(), i)),
            TypeCode::Sigma(a, i) => tagged(3, Element::pair(&a.encode(), i)),
            TypeCode::Id(c, a, b) => tagged(4, Element::pair(&c.encode(), &Element::pair(a, b))),
            TypeCode::W(a, i) => tagged(5, Element::pair(&a.encode(), i)),
        }
    }

    pub fn decode(e: &Element) -> Result<TypeCode, TypeError> {
        let bad = || TypeError::NotATypeCode(e.to_string());
        let (tag, body) = e.as_pair().ok_or_else(bad)?;
        let split = |x: &Element| x.as_pair().ok_or_else(bad);
        match tag.as_num().ok_or_else(bad)? {
            0 => body.as_num().map(TypeCode::NFin).ok_or_else(bad),
            1 if body.as_num() == Some(0) => Ok(TypeCode::Nat),
            t @ (2 | 3 | 5) => {
                let (a, i) = split(&body)?;
                let a = Box::new(TypeCode::decode(&a)?);
                Ok(match t {
                    2 => TypeCode::Pi(a, i),
                    3 => TypeCode::Sigma(a, i),
                    _ => TypeCode::W(a, i),
                })
            }
            4 => {
                let (c, ab) = split(&body)?;
                let (a, b) = split(&ab)?;
                Ok(TypeCode::Id(Box::new(TypeCode::decode(&c)?), a, b))
            }
            _ => Err(bad()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TypeCode::NFin(_) | TypeCode::Nat => 0,
            TypeCode::Pi(a, _) | TypeCode::Sigma(a, _) | TypeCode::W(a, _) | TypeCode::Id(a, ..) => {
                1 + a.depth()
            }
        }
    }
}

impl fmt::Display for TypeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeCode::NFin(n) => write!(f, "(nfin {n})"),
            TypeCode::Nat => write!(f, "(nat)"),
            TypeCode::Pi(a, i) => write!(f, "(pi {a} {i})"),
            TypeCode::Sigma(a, i) => write!(f, "(sigma {a} {i})"),
            TypeCode::Id(c, a, b) => write!(f, "(id {c} {a} {b})"),
            TypeCode::W(a, i) => write!(f, "(w {a} {i})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub fuel: Fuel,
    /// Numerals enumerated for `N`.
    pub nat_bound: u64,
    /// Tree depth for `W` enumeration and for the clause (v) recursion.
    pub w_depth: usize,
    /// Equivalence classes kept per enumerated relation.
    pub max_classes: usize,
    /// Representatives kept per class.
    pub max_reps: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            fuel: DEFAULT_FUEL,
            nat_bound: 4,
            w_depth: 3,
            max_classes: 64,
            max_reps: 2,
        }
    }
}

/// A partial equivalence relation given by its classes. Every pair of
/// representatives drawn from one class is related.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Per {
    pub classes: Vec<Vec<Element>>,
    pub complete: bool,
}

impl Per {
    pub fn empty(complete: bool) -> Per {
        Per { classes: Vec::new(), complete }
    }

    pub fn pairs(&self) -> BTreeSet<(Element, Element)> {
        self.pair_list().into_iter().collect()
    }

    pub fn pair_list(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for c in &self.classes {
            for a in c {
                for b in c {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    pub fn domain(&self) -> impl Iterator<Item = &Element> {
        self.classes.iter().flatten()
    }

    pub fn reps(&self) -> impl Iterator<Item = &Element> {
        self.classes.iter().map(|c| &c[0])
    }

    pub fn contains(&self, a: &Element, b: &Element) -> bool {
        self.classes.iter().any(|c| c.contains(a) && c.contains(b))
    }

    pub fn class_of(&self, a: &Element) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(a))
    }
}

/// Lightweight shape of a `W` tree, used to deduplicate enumerated trees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct TreeKey(usize, Vec<TreeKey>);

/// Checker for one budget. Caches are per instance and not shared across
/// threads.
pub struct Types {
    pub budget: Budget,
    pers: RefCell<HashMap<TypeCode, Rc<Per>>>,
    elems: RefCell<HashMap<(Element, Element, TypeCode), TriState>>,
}

impl Types {
    pub fn new(budget: Budget) -> Types {
        Types {
            budget,
            pers: RefCell::new(HashMap::new()),
            elems: RefCell::new(HashMap::new()),
        }
    }

    fn apply(&self, f: &Element, a: &Element) -> Result<Element, TriState> {
        match apply(f, a, self.budget.fuel) {
            EvalOutcome::Defined(e) => Ok(e),
            EvalOutcome::Stuck => Err(TriState::Refuted),
            EvalOutcome::FuelOut => Err(TriState::Unknown(Reason::Fuel)),
        }
    }

    fn proj(&self, a: &Element, first: bool) -> Result<Element, TriState> {
        let p = if first { Term::p0() } else { Term::p1() };
        match reduce(&Term::app(p, a.term().clone()), self.budget.fuel) {
            EvalOutcome::Defined(e) => Ok(e),
            EvalOutcome::Stuck => Err(TriState::Refuted),
            EvalOutcome::FuelOut => Err(TriState::Unknown(Reason::Fuel)),
        }
    }

    /// `i a` read back as a type code. Failure to be a code counts as a
    /// refutation of whatever needed it.
    pub fn family_at(&self, i: &Element, a: &Element) -> Result<TypeCode, TriState> {
        let t = self.apply(i, a)?;
        TypeCode::decode(&t).map_err(|_| TriState::Refuted)
    }

    pub fn per(&self, sigma: &TypeCode) -> Rc<Per> {
        if let Some(p) = self.pers.borrow().get(sigma) {
            return p.clone();
        }
        let p = Rc::new(self.compute_per(sigma));
        self.pers.borrow_mut().insert(sigma.clone(), p.clone());
        p
    }

    fn compute_per(&self, sigma: &TypeCode) -> Per {
        let b = self.budget;
        match sigma {
            TypeCode::NFin(n) => Per {
                classes: (0..*n).take(b.max_classes).map(|m| vec![Element::num(m)]).collect(),
                complete: *n as usize <= b.max_classes,
            },
            TypeCode::Nat => Per {
                classes: (0..b.nat_bound).map(|m| vec![Element::num(m)]).collect(),
                complete: false,
            },
            TypeCode::Id(base, l, r) => match self.elem_equiv(l, r, base) {
                TriState::Holds => Per { classes: vec![vec![Element::num(0)]], complete: true },
                TriState::Refuted => Per::empty(true),
                TriState::Unknown(_) => Per::empty(false),
            },
            TypeCode::Sigma(base, i) => self.sigma_per(base, i),
            TypeCode::Pi(base, i) => self.pi_per(base, i),
            TypeCode::W(base, i) => self.w_per(base, i),
        }
    }

    fn fibres(&self, base: &Per, i: &Element) -> Option<Vec<(TypeCode, Rc<Per>)>> {
        base.classes
            .iter()
            .map(|c| {
                let t = self.family_at(i, &c[0]).ok()?;
                let p = self.per(&t);
                Some((t, p))
            })
            .collect()
    }

    fn sigma_per(&self, base: &TypeCode, i: &Element) -> Per {
        let b = self.budget;
        let bp = self.per(base);
        let Some(fibres) = self.fibres(&bp, i) else {
            return Per::empty(false);
        };
        let mut complete = bp.complete;
        let mut classes = Vec::new();
        for (cls, (_, fp)) in bp.classes.iter().zip(&fibres) {
            complete &= fp.complete;
            for fc in &fp.classes {
                let mut reps = Vec::new();
                for a in cls {
                    for c in fc {
                        if reps.len() < b.max_reps {
                            reps.push(Element::pair(a, c));
                        }
                    }
                }
                classes.push(reps);
            }
        }
        if classes.len() > b.max_classes {
            classes.truncate(b.max_classes);
            complete = false;
        }
        Per { classes, complete }
    }

    fn pi_per(&self, base: &TypeCode, i: &Element) -> Per {
        let b = self.budget;
        let bp = self.per(base);
        let Some(fibres) = self.fibres(&bp, i) else {
            return Per::empty(false);
        };
        let mut complete = bp.complete && fibres.iter().all(|(_, p)| p.complete);
        let radices: Vec<usize> = fibres.iter().map(|(_, p)| p.classes.len()).collect();
        let mut classes = Vec::new();
        for graph in product(&radices, b.max_classes + 1) {
            if classes.len() == b.max_classes {
                complete = false;
                break;
            }
            let values: Vec<Term> = graph
                .iter()
                .zip(&fibres)
                .map(|(&l, (_, p))| p.classes[l][0].term().clone())
                .collect();
            let Some(body) = self.dispatch(base, &Term::var("x"), &values) else {
                return Per::empty(false);
            };
            let mut reps = vec![Element::from_value(lambda(&["x"], &body)).unwrap()];
            if b.max_reps > 1 {
                // same graph, different code
                let alt = lambda(&["x"], &Term::app(Term::i(), body));
                reps.push(Element::from_value(alt).unwrap());
            }
            classes.push(reps);
        }
        Per { classes, complete }
    }

    fn w_per(&self, base: &TypeCode, i: &Element) -> Per {
        let b = self.budget;
        let bp = self.per(base);
        let Some(fibres) = self.fibres(&bp, i) else {
            return Per::empty(false);
        };
        // trees of height <= level, deduplicated by shape
        let mut level: Vec<(TreeKey, Element)> = Vec::new();
        let mut complete = false;
        for _ in 0..=b.w_depth {
            let mut next: BTreeMap<TreeKey, Element> = BTreeMap::new();
            'outer: for (k, (cls, (t, fp))) in bp.classes.iter().zip(&fibres).enumerate() {
                let radices = vec![level.len(); fp.classes.len()];
                for children in product(&radices, b.max_classes + 1) {
                    if next.len() >= b.max_classes {
                        break 'outer;
                    }
                    let key = TreeKey(k, children.iter().map(|&c| level[c].0.clone()).collect());
                    let values: Vec<Term> =
                        children.iter().map(|&c| level[c].1.term().clone()).collect();
                    let Some(body) = self.dispatch(t, &Term::var("p"), &values) else {
                        return Per::empty(false);
                    };
                    let f = lambda(&["p"], &body);
                    let node = Element::from_value(Term::pair(cls[0].term().clone(), f)).unwrap();
                    next.entry(key).or_insert(node);
                }
            }
            let grew = next.len() != level.len();
            level = next.into_iter().collect();
            if !grew {
                complete = bp.complete && fibres.iter().all(|(_, p)| p.complete);
                break;
            }
        }
        Per {
            classes: level.into_iter().map(|(_, e)| vec![e]).collect(),
            complete,
        }
    }

    /// A term that evaluates to `branches[k]` when `x` lies in the `k`-th
    /// class of `sigma`. Only the selected branch is evaluated.
    pub fn dispatch(&self, sigma: &TypeCode, x: &Term, branches: &[Term]) -> Option<Term> {
        let per = self.per(sigma);
        if branches.len() != per.classes.len() {
            return None;
        }
        if branches.is_empty() {
            return Some(Term::num(0));
        }
        match sigma {
            TypeCode::NFin(_) | TypeCode::Nat => {
                let mut t = branches.last().unwrap().clone();
                for (k, br) in branches.iter().enumerate().rev().skip(1) {
                    let m = per.classes[k][0].term().clone();
                    t = Term::apps(Term::d(), [x.clone(), m, br.clone(), t]);
                }
                Some(t)
            }
            TypeCode::Id(..) => Some(branches[0].clone()),
            TypeCode::Sigma(base, i) => {
                let bp = self.per(base);
                let fibres = self.fibres(&bp, i)?;
                let x0 = Term::app(Term::p0(), x.clone());
                let x1 = Term::app(Term::p1(), x.clone());
                let mut start = 0;
                let mut outer = Vec::new();
                for (t, fp) in &fibres {
                    let n = fp.classes.len();
                    outer.push(self.dispatch(t, &x1, &branches[start..start + n])?);
                    start += n;
                }
                self.dispatch(base, &x0, &outer)
            }
            TypeCode::Pi(base, i) => {
                let bp = self.per(base);
                let fibres = self.fibres(&bp, i)?;
                if !per.complete {
                    return None;
                }
                let args: Vec<Term> = bp.reps().map(|a| Term::app(x.clone(), a.term().clone())).collect();
                self.dispatch_graph(&fibres, &args, 0, branches)
            }
            TypeCode::W(..) => None,
        }
    }

    fn dispatch_graph(
        &self,
        fibres: &[(TypeCode, Rc<Per>)],
        args: &[Term],
        j: usize,
        branches: &[Term],
    ) -> Option<Term> {
        if j == fibres.len() {
            return Some(branches[0].clone());
        }
        let (t, fp) = &fibres[j];
        let n = fp.classes.len();
        let stride = branches.len() / n;
        let sub: Option<Vec<Term>> = (0..n)
            .map(|l| self.dispatch_graph(fibres, args, j + 1, &branches[l * stride..(l + 1) * stride]))
            .collect();
        self.dispatch(t, &args[j], &sub?)
    }

    /// `λx. dispatch(sigma, x, values)`: the canonical function with the
    /// given value on each class.
    pub fn tabulate(&self, sigma: &TypeCode, values: &[Term]) -> Option<Element> {
        let body = self.dispatch(sigma, &Term::var("x"), values)?;
        Element::from_value(lambda(&["x"], &body))
    }

    pub fn elem_equiv(&self, a: &Element, b: &Element, sigma: &TypeCode) -> TriState {
        let key = (a.clone(), b.clone(), sigma.clone());
        if let Some(r) = self.elems.borrow().get(&key) {
            return *r;
        }
        let r = self.compute_elem(a, b, sigma);
        self.elems.borrow_mut().insert(key, r);
        r
    }

    fn compute_elem(&self, a: &Element, b: &Element, sigma: &TypeCode) -> TriState {
        match sigma {
            TypeCode::NFin(n) => match (a.as_num(), b.as_num()) {
                (Some(x), Some(y)) => TriState::from_bool(x == y && x < *n),
                _ => TriState::Refuted,
            },
            TypeCode::Nat => match (a.as_num(), b.as_num()) {
                (Some(x), Some(y)) => TriState::from_bool(x == y),
                _ => TriState::Refuted,
            },
            TypeCode::Id(base, l, r) => {
                if a.as_num() != Some(0) || b.as_num() != Some(0) {
                    return TriState::Refuted;
                }
                self.elem_equiv(l, r, base)
            }
            TypeCode::Sigma(base, i) => {
                let go = || -> Result<TriState, TriState> {
                    let (a0, b0) = (self.proj(a, true)?, self.proj(b, true)?);
                    let (a1, b1) = (self.proj(a, false)?, self.proj(b, false)?);
                    let first = self.elem_equiv(&a0, &b0, base);
                    if !first.holds() {
                        return Ok(first);
                    }
                    let t = self.family_at(i, &a0)?;
                    Ok(self.elem_equiv(&a1, &b1, &t))
                };
                go().unwrap_or_else(|e| e)
            }
            TypeCode::Pi(base, i) => {
                let bp = self.per(base);
                TriState::all(bp.pair_list(), |(x, y)| {
                    let go = || -> Result<TriState, TriState> {
                        let t = self.family_at(i, &x)?;
                        let fx = self.apply(a, &x)?;
                        let gy = self.apply(b, &y)?;
                        Ok(self.elem_equiv(&fx, &gy, &t))
                    };
                    go().unwrap_or_else(|e| e)
                })
                .weaken_if(!bp.complete, Reason::EnumerationBound)
            }
            TypeCode::W(base, i) => self.w_elem(a, b, base, i, self.budget.w_depth),
        }
    }

    fn w_elem(&self, c: &Element, d: &Element, base: &TypeCode, i: &Element, depth: usize) -> TriState {
        let go = || -> Result<TriState, TriState> {
            let (c0, d0) = (self.proj(c, true)?, self.proj(d, true)?);
            let head = self.elem_equiv(&c0, &d0, base);
            if !head.holds() {
                return Ok(head);
            }
            let t = self.family_at(i, &c0)?;
            let fp = self.per(&t);
            if fp.classes.is_empty() {
                return Ok(TriState::Holds.weaken_if(!fp.complete, Reason::EnumerationBound));
            }
            if depth == 0 {
                return Ok(TriState::Unknown(Reason::EnumerationBound));
            }
            let (c1, d1) = (self.proj(c, false)?, self.proj(d, false)?);
            Ok(TriState::all(fp.pair_list(), |(p, q)| {
                let go = || -> Result<TriState, TriState> {
                    let cp = self.apply(&c1, &p)?;
                    let dq = self.apply(&d1, &q)?;
                    Ok(self.w_elem(&cp, &dq, base, i, depth - 1))
                };
                go().unwrap_or_else(|e| e)
            })
            .weaken_if(!fp.complete, Reason::EnumerationBound))
        };
        go().unwrap_or_else(|e| e)
    }

    pub fn type_equiv(&self, sigma: &TypeCode, tau: &TypeCode) -> TriState {
        use TypeCode::*;
        match (sigma, tau) {
            (NFin(n), NFin(m)) => TriState::from_bool(n == m),
            (Nat, Nat) => TriState::Holds,
            (Pi(s, i), Pi(t, j)) | (Sigma(s, i), Sigma(t, j)) | (W(s, i), W(t, j)) => {
                let bases = self.type_equiv(s, t);
                if !bases.holds() {
                    return bases;
                }
                let bp = self.per(s);
                TriState::all(bp.pair_list(), |(a, b)| {
                    match (self.family_at(i, &a), self.family_at(j, &b)) {
                        (Ok(x), Ok(y)) => self.type_equiv(&x, &y),
                        (Err(e), _) | (_, Err(e)) => e,
                    }
                })
                .weaken_if(!bp.complete, Reason::EnumerationBound)
            }
            (Id(s, a, b), Id(t, a2, b2)) => self
                .type_equiv(s, t)
                .and(self.elem_equiv(a, a2, s))
                .and(self.elem_equiv(b, b2, s)),
            _ => TriState::Refuted,
        }
    }

    /// Index of the class of `a` in the enumeration of `sigma`, if any
    /// representative is provably related to it.
    pub fn class_index(&self, sigma: &TypeCode, a: &Element) -> Option<usize> {
        let per = self.per(sigma);
        if let Some(k) = per.class_of(a) {
            return Some(k);
        }
        per.classes.iter().position(|c| self.elem_equiv(a, &c[0], sigma).holds())
    }
}

/// All digit vectors below `radices` in lexicographic order, at most
/// `limit` of them.
fn product(radices: &[usize], limit: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if radices.iter().any(|&r| r == 0) {
        return out;
    }
    let mut cur = vec![0; radices.len()];
    loop {
        if out.len() == limit {
            return out;
        }
        out.push(cur.clone());
        let mut j = radices.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            cur[j] += 1;
            if cur[j] < radices[j] {
                break;
            }
            cur[j] = 0;
        }
    }
}

pub fn decode(a: &Element) -> Result<TypeCode, TypeError> {
    TypeCode::decode(a)
}

pub fn type_equiv(sigma: &TypeCode, tau: &TypeCode, budget: Budget) -> TriState {
    Types::new(budget).type_equiv(sigma, tau)
}

pub fn elem_equiv(a: &Element, b: &Element, sigma: &TypeCode, budget: Budget) -> TriState {
    Types::new(budget).elem_equiv(a, b, sigma)
}

pub fn per_enumerate(sigma: &TypeCode, budget: Budget) -> Per {
    (*Types::new(budget).per(sigma)).clone()
}
