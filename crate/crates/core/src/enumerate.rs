//! Bounded enumeration of closed terms and their values.

use std::collections::HashMap;

use crate::pca::{reduce, Element, EvalOutcome, Sym, Term};

/// Leaves used to grow terms: every constant but `ORACLE`, and `0̄`, `1̄`.
pub fn atoms() -> Vec<Term> {
    let mut out: Vec<Term> = Sym::ALL
        .into_iter()
        .filter(|c| *c != Sym::Oracle)
        .map(Term::Const)
        .collect();
    out.push(Term::num(0));
    out.push(Term::num(1));
    out
}

/// All closed terms with at most `size` nodes (leaves plus applications),
/// grouped by exact size. Sizes are odd.
pub fn terms_by_size(size: usize) -> Vec<Vec<Term>> {
    let mut by: Vec<Vec<Term>> = vec![Vec::new(); size + 1];
    if size >= 1 {
        by[1] = atoms();
    }
    for s in (3..=size).step_by(2) {
        let mut out = Vec::new();
        for l in (1..s - 1).step_by(2) {
            let r = s - 1 - l;
            for f in &by[l] {
                for x in &by[r] {
                    out.push(Term::app(f.clone(), x.clone()));
                }
            }
        }
        by[s] = out;
    }
    by
}

/// Distinct values of terms of size at most `size`, each with the least
/// size of a term producing it, in order of that size and then of the
/// value. Terms that get stuck or exhaust `fuel` are dropped.
pub fn elements(size: usize, fuel: u64) -> Vec<(Element, usize)> {
    let mut best: HashMap<Element, usize> = HashMap::new();
    for (s, ts) in terms_by_size(size).into_iter().enumerate() {
        for t in ts {
            if let EvalOutcome::Defined(e) = reduce(&t, fuel) {
                best.entry(e).or_insert(s);
            }
        }
    }
    let mut out: Vec<(Element, usize)> = best.into_iter().collect();
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Realizer pairs for bounded search: every `(a, a)`, and `(a, b)` with
/// `a ≠ b` whenever the two sizes add up to at most `size + 1`.
pub fn pairs(elems: &[(Element, usize)], size: usize) -> Vec<(Element, Element)> {
    let mut out: Vec<(Element, Element)> = elems.iter().map(|(e, _)| (e.clone(), e.clone())).collect();
    for (a, sa) in elems {
        for (b, sb) in elems {
            if sa + sb > size + 1 {
                break;
            }
            if a != b {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let by = terms_by_size(5);
        assert_eq!(by[1].len(), 10);
        assert_eq!(by[3].len(), 100);
        assert_eq!(by[5].len(), 2000);
    }

    #[test]
    fn small_values() {
        let es = elements(3, 1000);
        // SUCC 1 and 1 collapse: values are distinct
        let mut seen = std::collections::HashSet::new();
        assert!(es.iter().all(|(e, _)| seen.insert(e.clone())));
        assert!(es.iter().any(|(e, s)| e.as_num() == Some(2) && *s == 3));
        // PRED 0 is stuck and 0 0 is stuck
        assert!(es.len() < 110);
    }

    #[test]
    fn pair_budget() {
        let es = elements(3, 1000);
        let ps = pairs(&es, 3);
        let small = es.iter().filter(|(_, s)| *s == 1).count();
        let big = es.len() - small;
        // diagonal, ordered pairs of distinct atoms, and atom/size-3 pairs
        assert_eq!(ps.len(), es.len() + small * (small - 1) + 2 * small * big);
    }
}
