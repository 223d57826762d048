//! Finite names: sets of triples `(a, b, x)` with `a, b` elements and `x` a
//! name, plus the embedding of typed elements.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::pca::{apply, reduce, Element, EvalOutcome, Term};
use crate::tri::{Reason, TriState};
use crate::types::{TypeCode, Types};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    NatCanonical,
    CheckOfSet,
    XOfType,
}

/// Records how a possibly infinite name was cut down to finitely many
/// entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub kind: GenKind,
    pub bound: u64,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Entry {
    pub left: Element,
    pub right: Element,
    pub child: Name,
}

#[derive(Debug)]
struct NameData {
    entries: Vec<Entry>,
    generator: Option<Generator>,
    rank: usize,
    complete: bool,
    fingerprint: u64,
    /// For `X_σ`: every `(a, b)` with `a ∼_σ b` is a key, listed or not.
    key_type: Option<TypeCode>,
}

/// Immutable, cheaply cloneable name. Entries are kept sorted and
/// deduplicated, so equality is structural.
#[derive(Clone, Debug)]
pub struct Name(Arc<NameData>);

impl Name {
    pub fn new<I: IntoIterator<Item = (Element, Element, Name)>>(entries: I) -> Name {
        Name::with_generator(entries, None)
    }

    pub fn with_generator<I: IntoIterator<Item = (Element, Element, Name)>>(
        entries: I,
        generator: Option<Generator>,
    ) -> Name {
        let mut entries: Vec<Entry> = entries
            .into_iter()
            .map(|(left, right, child)| Entry { left, right, child })
            .collect();
        entries.sort();
        entries.dedup();
        let rank = entries.iter().map(|e| e.child.rank() + 1).max().unwrap_or(0);
        let complete = generator.map_or(true, |g| g.complete) && entries.iter().all(|e| e.child.complete());
        let mut h = DefaultHasher::new();
        for e in &entries {
            e.left.hash(&mut h);
            e.right.hash(&mut h);
            e.child.0.fingerprint.hash(&mut h);
        }
        Name(Arc::new(NameData {
            fingerprint: h.finish(),
            entries,
            generator,
            rank,
            complete,
            key_type: None,
        }))
    }

    /// The same entries, marked as `X_σ`.
    pub fn with_key_type(self, sigma: TypeCode) -> Name {
        let d = &self.0;
        Name(Arc::new(NameData {
            entries: d.entries.clone(),
            generator: d.generator,
            rank: d.rank,
            complete: d.complete,
            fingerprint: d.fingerprint,
            key_type: Some(sigma),
        }))
    }

    pub fn key_type(&self) -> Option<&TypeCode> {
        self.0.key_type.as_ref()
    }

    pub fn empty() -> Name {
        Name::new([])
    }

    pub fn entries(&self) -> &[Entry] {
        &self.0.entries
    }

    pub fn generator(&self) -> Option<Generator> {
        self.0.generator
    }

    pub fn is_empty(&self) -> bool {
        self.0.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.entries.len()
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    /// False if this name or any descendant was truncated.
    pub fn complete(&self) -> bool {
        self.0.complete
    }

    /// Distinct children, in entry order.
    pub fn children(&self) -> Vec<&Name> {
        let mut out: Vec<&Name> = Vec::new();
        for e in self.entries() {
            if !out.contains(&&e.child) {
                out.push(&e.child);
            }
        }
        out
    }

    /// All names reachable from `self`, including `self`, deduplicated.
    pub fn transitive_closure(&self) -> Vec<Name> {
        let mut seen: BTreeSet<Name> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(n) = stack.pop() {
            if seen.insert(n.clone()) {
                for e in n.entries() {
                    stack.push(e.child.clone());
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn size(&self) -> usize {
        1 + self.entries().iter().map(|e| e.child.size()).sum::<usize>()
    }
}

impl PartialEq for Name {
    fn eq(&self, other: &Name) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.fingerprint == other.0.fingerprint && self.0.entries == other.0.entries)
    }
}

impl Eq for Name {}

impl Hash for Name {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.fingerprint.hash(state);
    }
}

impl PartialOrd for Name {
    fn partial_cmp(&self, other: &Name) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Name {
    fn cmp(&self, other: &Name) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.0.rank.cmp(&other.0.rank).then_with(|| self.0.entries.cmp(&other.0.entries))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(name (")?;
        for (k, e) in self.entries().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "({} {} {})", e.left, e.right, e.child)?;
        }
        write!(f, "))")
    }
}

fn zero() -> Element {
    Element::num(0)
}

fn one() -> Element {
    Element::num(1)
}

/// `ṅ = {(m̄, m̄, ṁ) | m < n}`
pub fn dot(n: u64) -> Name {
    let mut names = vec![Name::empty()];
    for m in 1..=n {
        let prev = &names[(m - 1) as usize];
        let mut entries: Vec<(Element, Element, Name)> =
            prev.entries().iter().map(|e| (e.left.clone(), e.right.clone(), e.child.clone())).collect();
        entries.push((Element::num(m - 1), Element::num(m - 1), prev.clone()));
        names.push(Name::new(entries));
    }
    names.pop().unwrap()
}

/// The canonical name of ω cut at `bound`.
pub fn dot_omega(bound: u64) -> Name {
    Name::with_generator(
        (0..bound).map(|m| (Element::num(m), Element::num(m), dot(m))),
        Some(Generator { kind: GenKind::NatCanonical, bound, complete: false }),
    )
}

pub fn vset1(x: &Name) -> Name {
    Name::new([(zero(), zero(), x.clone())])
}

pub fn vset2(x: &Name, y: &Name) -> Name {
    Name::new([(zero(), zero(), x.clone()), (one(), one(), y.clone())])
}

/// Internal ordered pair `{(0,0,{x}), (1,1,{x,y})}`.
pub fn vpair(x: &Name, y: &Name) -> Name {
    Name::new([(zero(), zero(), vset1(x)), (one(), one(), vset2(x, y))])
}

/// Components of a name built by [`vpair`].
pub fn unvpair(z: &Name) -> Option<(Name, Name)> {
    let [a, b] = z.entries() else { return None };
    if a.left != zero() || a.right != zero() || b.left != one() || b.right != one() {
        return None;
    }
    let [x] = a.child.entries() else { return None };
    let [x2, y] = b.child.entries() else { return None };
    (x2.child == x.child && *x == *x2 && y.left == one()).then(|| (x.child.clone(), y.child.clone()))
}

/// Hereditarily finite sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HfSet(pub BTreeSet<HfSet>);

impl HfSet {
    pub fn empty() -> HfSet {
        HfSet::default()
    }

    pub fn of<I: IntoIterator<Item = HfSet>>(items: I) -> HfSet {
        HfSet(items.into_iter().collect())
    }

    /// von Neumann numeral.
    pub fn ordinal(n: usize) -> HfSet {
        let mut s = HfSet::empty();
        for _ in 0..n {
            let mut next = s.0.clone();
            next.insert(s);
            s = HfSet(next);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|x| x.rank() + 1).max().unwrap_or(0)
    }

    /// Every set of rank below `r`. There are 65536 of them for `r = 5`, so
    /// keep `r` small.
    pub fn all_of_rank_below(r: usize) -> Vec<HfSet> {
        let mut level: Vec<HfSet> = vec![];
        for _ in 0..r {
            let n = level.len();
            let mut next = Vec::new();
            for mask in 0u64..(1u64 << n) {
                next.push(HfSet::of((0..n).filter(|k| mask >> k & 1 == 1).map(|k| level[k].clone())));
            }
            level = next;
        }
        level.sort();
        level
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(set")?;
        for x in &self.0 {
            write!(f, " {x}")?;
        }
        write!(f, ")")
    }
}

/// `ǔ = {(0,0,v̌) | v ∈ u}`
pub fn check(u: &HfSet) -> Name {
    Name::new(u.0.iter().map(|v| (zero(), zero(), check(v))))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("element is not of the given type")]
    NotInType,
    #[error("could not decide membership in the type ({0:?})")]
    Unknown(Reason),
}

impl From<TriState> for EmbedError {
    fn from(t: TriState) -> EmbedError {
        match t {
            TriState::Unknown(r) => EmbedError::Unknown(r),
            _ => EmbedError::NotInType,
        }
    }
}

/// The embedding `a ↦ a^σ` and the canonical names `X_σ`, `F_{σ,i}`.
pub struct Embedder<'t> {
    pub types: &'t Types,
    memo: RefCell<HashMap<(Element, TypeCode), Name>>,
    xs: RefCell<HashMap<TypeCode, Name>>,
}

impl<'t> Embedder<'t> {
    pub fn new(types: &'t Types) -> Embedder<'t> {
        Embedder { types, memo: RefCell::new(HashMap::new()), xs: RefCell::new(HashMap::new()) }
    }

    fn eval(&self, t: Term) -> Result<Element, EmbedError> {
        match reduce(&t, self.types.budget.fuel) {
            EvalOutcome::Defined(e) => Ok(e),
            EvalOutcome::Stuck => Err(EmbedError::NotInType),
            EvalOutcome::FuelOut => Err(EmbedError::Unknown(Reason::Fuel)),
        }
    }

    fn app(&self, f: &Element, a: &Element) -> Result<Element, EmbedError> {
        match apply(f, a, self.types.budget.fuel) {
            EvalOutcome::Defined(e) => Ok(e),
            EvalOutcome::Stuck => Err(EmbedError::NotInType),
            EvalOutcome::FuelOut => Err(EmbedError::Unknown(Reason::Fuel)),
        }
    }

    fn fam(&self, i: &Element, a: &Element) -> Result<TypeCode, EmbedError> {
        self.types.family_at(i, a).map_err(EmbedError::from)
    }

    /// `a^σ`, after checking `a ∼_σ a`.
    pub fn embed(&self, a: &Element, sigma: &TypeCode) -> Result<Name, EmbedError> {
        match self.types.elem_equiv(a, a, sigma) {
            TriState::Holds => self.embed_unchecked(a, sigma),
            t => Err(t.into()),
        }
    }

    fn embed_unchecked(&self, a: &Element, sigma: &TypeCode) -> Result<Name, EmbedError> {
        let key = (a.clone(), sigma.clone());
        if let Some(n) = self.memo.borrow().get(&key) {
            return Ok(n.clone());
        }
        let n = self.compute(a, sigma)?;
        self.memo.borrow_mut().insert(key, n.clone());
        Ok(n)
    }

    fn compute(&self, a: &Element, sigma: &TypeCode) -> Result<Name, EmbedError> {
        match sigma {
            TypeCode::NFin(_) | TypeCode::Nat => Ok(dot(a.as_num().ok_or(EmbedError::NotInType)?)),
            TypeCode::Id(..) => Ok(Name::empty()),
            TypeCode::Sigma(base, i) => {
                let a0 = self.eval(Term::app(Term::p0(), a.term().clone()))?;
                let a1 = self.eval(Term::app(Term::p1(), a.term().clone()))?;
                let t = self.fam(i, &a0)?;
                Ok(vpair(&self.embed_unchecked(&a0, base)?, &self.embed_unchecked(&a1, &t)?))
            }
            TypeCode::Pi(base, i) => {
                let bp = self.types.per(base);
                let mut entries = Vec::new();
                for (x, y) in bp.pair_list() {
                    let t = self.fam(i, &x)?;
                    let fx = self.app(a, &x)?;
                    let child = vpair(&self.embed_unchecked(&x, base)?, &self.embed_unchecked(&fx, &t)?);
                    entries.push((x, y, child));
                }
                Ok(Name::with_generator(entries, truncation(bp.complete)))
            }
            TypeCode::W(base, i) => {
                let c0 = self.eval(Term::app(Term::p0(), a.term().clone()))?;
                let c1 = self.eval(Term::app(Term::p1(), a.term().clone()))?;
                let t = self.fam(i, &c0)?;
                let fp = self.types.per(&t);
                let mut entries = Vec::new();
                for (p, q) in fp.pair_list() {
                    let sub = self.app(&c1, &p)?;
                    let child = vpair(&self.embed_unchecked(&p, &t)?, &self.embed_unchecked(&sub, sigma)?);
                    entries.push((p, q, child));
                }
                let branches = Name::with_generator(entries, truncation(fp.complete));
                Ok(vpair(&self.embed_unchecked(&c0, base)?, &branches))
            }
        }
    }

    /// `X_σ = {(a, b, a^σ) | a ∼_σ b}` over the enumerated relation.
    pub fn x_of(&self, sigma: &TypeCode) -> Result<Name, EmbedError> {
        if let Some(n) = self.xs.borrow().get(sigma) {
            return Ok(n.clone());
        }
        let per = self.types.per(sigma);
        let mut entries = Vec::new();
        for (a, b) in per.pair_list() {
            entries.push((a.clone(), b, self.embed_unchecked(&a, sigma)?));
        }
        let n = Name::with_generator(
            entries,
            Some(Generator { kind: GenKind::XOfType, bound: per.classes.len() as u64, complete: per.complete }),
        )
        .with_key_type(sigma.clone());
        self.xs.borrow_mut().insert(sigma.clone(), n.clone());
        Ok(n)
    }

    /// `F_{σ,i} = {(a, b, ⟨a^σ, X_{ia}⟩) | a ∼_σ b}`
    pub fn f_of(&self, sigma: &TypeCode, i: &Element) -> Result<Name, EmbedError> {
        let per = self.types.per(sigma);
        let mut entries = Vec::new();
        for (a, b) in per.pair_list() {
            let t = self.fam(i, &a)?;
            let child = vpair(&self.embed_unchecked(&a, sigma)?, &self.x_of(&t)?);
            entries.push((a, b, child));
        }
        Ok(Name::with_generator(
            entries,
            Some(Generator { kind: GenKind::XOfType, bound: per.classes.len() as u64, complete: per.complete }),
        ))
    }
}

fn truncation(complete: bool) -> Option<Generator> {
    (!complete).then_some(Generator { kind: GenKind::XOfType, bound: 0, complete: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Budget;

    fn n(k: u64) -> Element {
        Element::num(k)
    }

    #[test]
    fn dot_examples() {
        assert!(dot(0).is_empty());
        let two = dot(2);
        assert_eq!(two, Name::new([(n(0), n(0), dot(0)), (n(1), n(1), dot(1))]));
        assert_eq!(two.rank(), 2);
        let w = dot_omega(3);
        assert_eq!(w.entries().len(), 3);
        assert_eq!(w, dot(3));
        assert!(!w.complete());
        assert_eq!(w.generator().unwrap().kind, GenKind::NatCanonical);
    }

    #[test]
    fn pairing() {
        let p = vpair(&dot(0), &dot(0));
        assert_eq!(p.entries().len(), 2);
        assert_eq!(p.entries()[0].left, n(0));
        assert_eq!(p.entries()[1].left, n(1));
        assert_eq!(vset1(&dot(0)), Name::new([(n(0), n(0), Name::empty())]));
        assert_ne!(vpair(&dot(0), &dot(1)), vpair(&dot(1), &dot(0)));
        assert_eq!(unvpair(&vpair(&dot(2), &dot(1))), Some((dot(2), dot(1))));
        assert_eq!(unvpair(&dot(2)), None);
    }

    #[test]
    fn check_examples() {
        assert!(check(&HfSet::empty()).is_empty());
        let one = HfSet::of([HfSet::empty()]);
        assert_eq!(check(&one), Name::new([(n(0), n(0), Name::empty())]));
        let two = HfSet::of([HfSet::empty(), one]);
        let c = check(&two);
        assert_eq!(c.entries().len(), 2);
        assert!(c.entries().iter().all(|e| e.left == n(0) && e.right == n(0)));
    }

    #[test]
    fn check_is_injective_on_small_sets() {
        let sets = HfSet::all_of_rank_below(4);
        assert_eq!(sets.len(), 16);
        for u in &sets {
            for v in &sets {
                assert_eq!(check(u) == check(v), u == v);
            }
        }
        let all = HfSet::all_of_rank_below(5);
        let names: std::collections::HashSet<Name> = all.iter().map(check).collect();
        assert_eq!(names.len(), all.len());
    }

    #[test]
    fn embed_examples() {
        let ty = Types::new(Budget::default());
        let e = Embedder::new(&ty);
        assert_eq!(e.embed(&n(1), &TypeCode::NFin(3)), Ok(dot(1)));
        let id = TypeCode::id(TypeCode::NFin(2), n(0), n(0));
        assert_eq!(e.embed(&n(0), &id), Ok(Name::empty()));
        let sg = TypeCode::product(TypeCode::NFin(2), &TypeCode::NFin(2));
        assert_eq!(e.embed(&Element::pair(&n(0), &n(1)), &sg), Ok(vpair(&dot(0), &dot(1))));
        assert_eq!(e.embed(&n(3), &TypeCode::NFin(3)), Err(EmbedError::NotInType));
    }

    #[test]
    fn canonical_sets() {
        let ty = Types::new(Budget::default());
        let e = Embedder::new(&ty);
        assert_eq!(e.x_of(&TypeCode::NFin(2)).unwrap(), dot(2));
        assert!(e.x_of(&TypeCode::NFin(0)).unwrap().is_empty());
        let f = e.f_of(&TypeCode::NFin(1), &TypeCode::constant_family(&TypeCode::NFin(1))).unwrap();
        assert_eq!(f, Name::new([(n(0), n(0), vpair(&dot(0), &dot(1)))]));
    }

    #[test]
    fn related_functions_have_equal_graphs() {
        let ty = Types::new(Budget::default());
        let e = Embedder::new(&ty);
        let pi = TypeCode::arrow(TypeCode::NFin(2), &TypeCode::NFin(2));
        for c in &ty.per(&pi).classes {
            let names: Vec<Name> = c.iter().map(|f| e.embed(f, &pi).unwrap()).collect();
            assert!(names.windows(2).all(|w| w[0] == w[1]));
        }
        let x = e.x_of(&pi).unwrap();
        assert_eq!(x.children().len(), 4);
    }
}
