//! S-expression syntax for terms, type codes, names, formulas, conditions
//! and arithmetic. Printing any of these with `Display` and parsing the
//! result gives the value back.

use std::fmt;

use thiserror::Error;

use crate::arith::{ATerm, Arith, Bound};
use crate::forcing::{Condition, ConditionPool, FFormula, FTerm};
use crate::formula::{Formula, NameExpr};
use crate::names::{self, Embedder, HfSet, Name};
use crate::pca::{lambda, reduce, Element, EvalOutcome, Fuel, Sym, Term};
use crate::types::TypeCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: {msg}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub msg: String,
}

fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError { pos, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    /// `(head args...)` with an atom head.
    fn form(&self) -> Option<(&str, &[Sexp])> {
        match self {
            Sexp::List(items, _) => match items.split_first() {
                Some((Sexp::Atom(h, _), rest)) => Some((h, rest)),
                _ => None,
            },
            Sexp::Atom(..) => None,
        }
    }
}

/// All top-level expressions in `text`. `;` starts a comment.
pub fn parse_sexps(text: &str) -> Result<Vec<Sexp>, SyntaxError> {
    let mut stack: Vec<(Vec<Sexp>, Pos)> = vec![(Vec::new(), Pos { line: 1, col: 1 })];
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        let here = Pos { line, col };
        let mut advance = |c: char| {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        };
        advance(c);
        match c {
            '(' => stack.push((Vec::new(), here)),
            ')' => {
                if stack.len() == 1 {
                    return err(here, "unexpected ')'");
                }
                let (items, start) = stack.pop().expect("nonempty");
                stack.last_mut().expect("outer").0.push(Sexp::List(items, start));
            }
            ';' => {
                while let Some(&d) = chars.peek() {
                    if d == '\n' {
                        break;
                    }
                    advance(d);
                    chars.next();
                }
            }
            c if c.is_whitespace() => {}
            c => {
                let mut s = String::from(c);
                while let Some(&d) = chars.peek() {
                    if d.is_whitespace() || d == '(' || d == ')' || d == ';' {
                        break;
                    }
                    advance(d);
                    s.push(d);
                    chars.next();
                }
                stack.last_mut().expect("outer").0.push(Sexp::Atom(s, here));
            }
        }
    }
    if stack.len() > 1 {
        let (_, start) = stack.pop().expect("nonempty");
        return err(start, "unclosed '('");
    }
    Ok(stack.pop().expect("outer").0)
}

pub fn parse_sexp(text: &str) -> Result<Sexp, SyntaxError> {
    let mut all = parse_sexps(text)?;
    match all.len() {
        1 => Ok(all.pop().expect("one")),
        0 => err(Pos { line: 1, col: 1 }, "empty input"),
        _ => err(all[1].pos(), "more than one expression"),
    }
}

fn arity(head: &str, args: &[Sexp], n: usize, pos: Pos) -> Result<(), SyntaxError> {
    if args.len() == n {
        Ok(())
    } else {
        err(pos, format!("{head} expects {n} argument{}, got {}", if n == 1 { "" } else { "s" }, args.len()))
    }
}

fn number(s: &Sexp) -> Result<u64, SyntaxError> {
    match s.atom().map(str::parse::<u64>) {
        Some(Ok(n)) => Ok(n),
        _ => err(s.pos(), "expected a natural number"),
    }
}

fn ident(s: &Sexp) -> Result<String, SyntaxError> {
    match s.atom() {
        Some(x) if x.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') => Ok(x.to_string()),
        _ => err(s.pos(), "expected a variable name"),
    }
}

pub fn term_of(s: &Sexp) -> Result<Term, SyntaxError> {
    let pos = s.pos();
    match s {
        Sexp::Atom(a, _) => {
            if let Some(c) = Sym::from_name(a) {
                Ok(Term::Const(c))
            } else if let Ok(n) = a.parse::<u64>() {
                Ok(Term::num(n))
            } else {
                Ok(Term::var(&ident(s)?))
            }
        }
        Sexp::List(items, _) => {
            if let Some((head, args)) = s.form() {
                match head {
                    "num" => {
                        arity(head, args, 1, pos)?;
                        return Ok(Term::num(number(&args[0])?));
                    }
                    "app" => {
                        if args.is_empty() {
                            return err(pos, "app expects at least 1 argument, got 0");
                        }
                        return apps(args);
                    }
                    "lam" => {
                        arity(head, args, 2, pos)?;
                        let Sexp::List(vars, _) = &args[0] else { return err(args[0].pos(), "expected a variable list") };
                        let vars = vars.iter().map(ident).collect::<Result<Vec<_>, _>>()?;
                        let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
                        return Ok(lambda(&refs, &term_of(&args[1])?));
                    }
                    "code" => {
                        arity(head, args, 1, pos)?;
                        return Ok(type_of(&args[0])?.encode().into_term());
                    }
                    "nat-code" => {
                        arity(head, args, 0, pos)?;
                        return Ok(TypeCode::Nat.encode().into_term());
                    }
                    "nfin-code" => {
                        arity(head, args, 1, pos)?;
                        return Ok(TypeCode::NFin(number(&args[0])?).encode().into_term());
                    }
                    _ => {}
                }
            }
            if items.is_empty() {
                return err(pos, "empty application");
            }
            apps(items)
        }
    }
}

fn apps(items: &[Sexp]) -> Result<Term, SyntaxError> {
    let mut t = term_of(&items[0])?;
    for a in &items[1..] {
        t = Term::app(t, term_of(a)?);
    }
    Ok(t)
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    term_of(&parse_sexp(text)?)
}

/// A closed term, normalised.
pub fn element_of(s: &Sexp, fuel: Fuel) -> Result<Element, SyntaxError> {
    let t = term_of(s)?;
    if !t.is_closed() {
        return err(s.pos(), "element has free variables");
    }
    match reduce(&t, fuel) {
        EvalOutcome::Defined(e) => Ok(e),
        other => err(s.pos(), format!("element does not normalise: {other}")),
    }
}

const ELEMENT_FUEL: Fuel = 1_000_000;

pub fn type_of(s: &Sexp) -> Result<TypeCode, SyntaxError> {
    let pos = s.pos();
    let Some((head, args)) = s.form() else { return err(pos, "expected a type code") };
    let el = |s: &Sexp| element_of(s, ELEMENT_FUEL);
    Ok(match head {
        "nfin" => {
            arity(head, args, 1, pos)?;
            TypeCode::NFin(number(&args[0])?)
        }
        "nat" => {
            arity(head, args, 0, pos)?;
            TypeCode::Nat
        }
        "pi" | "sigma" | "w" => {
            arity(head, args, 2, pos)?;
            let (base, family) = (type_of(&args[0])?, el(&args[1])?);
            match head {
                "pi" => TypeCode::pi(base, family),
                "sigma" => TypeCode::sigma(base, family),
                _ => TypeCode::w(base, family),
            }
        }
        "id" => {
            arity(head, args, 3, pos)?;
            TypeCode::id(type_of(&args[0])?, el(&args[1])?, el(&args[2])?)
        }
        _ => return err(pos, format!("unknown type constructor {head}")),
    })
}

pub fn parse_type(text: &str) -> Result<TypeCode, SyntaxError> {
    type_of(&parse_sexp(text)?)
}

pub fn set_of(s: &Sexp) -> Result<HfSet, SyntaxError> {
    let pos = s.pos();
    match s.form() {
        Some(("set", args)) => Ok(HfSet::of(args.iter().map(set_of).collect::<Result<Vec<_>, _>>()?)),
        Some(("ord", args)) => {
            arity("ord", args, 1, pos)?;
            Ok(HfSet::ordinal(number(&args[0])? as usize))
        }
        _ => err(pos, "expected (set ...) or (ord n)"),
    }
}

/// Name expressions: variables, literals `(name ((a b x) ...))` and the
/// sugar `dot`, `dot-omega`, `check`, `vset1`, `vset2`, `vpair`, `xof`.
pub fn name_expr_of(s: &Sexp) -> Result<NameExpr, SyntaxError> {
    let pos = s.pos();
    if s.atom().is_some() {
        return Ok(NameExpr::Var(ident(s)?));
    }
    let Some((head, args)) = s.form() else { return err(pos, "expected a name") };
    let sub = |k: usize| name_expr_of(&args[k]);
    Ok(match head {
        "name" => NameExpr::Lit(literal(args, pos)?),
        "dot" => {
            arity(head, args, 1, pos)?;
            NameExpr::Dot(number(&args[0])?)
        }
        "dot-omega" => {
            arity(head, args, 1, pos)?;
            NameExpr::DotOmega(number(&args[0])?)
        }
        "check" => {
            arity(head, args, 1, pos)?;
            NameExpr::Check(set_of(&args[0])?)
        }
        "vset1" => {
            arity(head, args, 1, pos)?;
            NameExpr::VSet1(Box::new(sub(0)?))
        }
        "vset2" => {
            arity(head, args, 2, pos)?;
            NameExpr::VSet2(Box::new(sub(0)?), Box::new(sub(1)?))
        }
        "vpair" => {
            arity(head, args, 2, pos)?;
            NameExpr::vpair(sub(0)?, sub(1)?)
        }
        "xof" => {
            arity(head, args, 1, pos)?;
            NameExpr::XOf(type_of(&args[0])?)
        }
        _ => return err(pos, format!("unknown name constructor {head}")),
    })
}

fn literal(args: &[Sexp], pos: Pos) -> Result<Name, SyntaxError> {
    arity("name", args, 1, pos)?;
    let Sexp::List(entries, _) = &args[0] else { return err(args[0].pos(), "expected an entry list") };
    let mut out = Vec::new();
    for e in entries {
        let Sexp::List(parts, p) = e else { return err(e.pos(), "expected (a b child)") };
        if parts.len() != 3 {
            return err(*p, format!("entry expects 3 parts, got {}", parts.len()));
        }
        let child = match name_expr_of(&parts[2])? {
            NameExpr::Lit(n) => n,
            _ => return err(parts[2].pos(), "entry child must be a literal (name ...)"),
        };
        out.push((element_of(&parts[0], ELEMENT_FUEL)?, element_of(&parts[1], ELEMENT_FUEL)?, child));
    }
    Ok(Name::new(out))
}

/// Materialises a closed name expression.
pub fn resolve_name(e: &NameExpr, embed: &Embedder) -> Result<Name, String> {
    Ok(match e {
        NameExpr::Lit(n) => n.clone(),
        NameExpr::Var(v) => return Err(format!("unbound variable {v}")),
        NameExpr::Dot(n) => names::dot(*n),
        NameExpr::DotOmega(n) => names::dot_omega(*n),
        NameExpr::Check(s) => names::check(s),
        NameExpr::VSet1(x) => names::vset1(&resolve_name(x, embed)?),
        NameExpr::VSet2(x, y) => names::vset2(&resolve_name(x, embed)?, &resolve_name(y, embed)?),
        NameExpr::VPair(x, y) => names::vpair(&resolve_name(x, embed)?, &resolve_name(y, embed)?),
        NameExpr::XOf(s) => embed.x_of(s).map_err(|e| e.to_string())?,
    })
}

pub fn parse_name_expr(text: &str) -> Result<NameExpr, SyntaxError> {
    name_expr_of(&parse_sexp(text)?)
}

pub fn parse_name(text: &str, embed: &Embedder) -> Result<Name, SyntaxError> {
    let s = parse_sexp(text)?;
    let e = name_expr_of(&s)?;
    resolve_name(&e, embed).or_else(|m| err(s.pos(), m))
}

/// A formula and the names listed by `:universe` on unbounded quantifiers.
#[derive(Clone, Debug)]
pub struct ParsedFormula {
    pub formula: Formula,
    pub universe: Vec<NameExpr>,
}

fn binary(head: &str, args: &[Sexp], pos: Pos, f: impl FnMut(&Sexp) -> Result<Formula, SyntaxError>) -> Result<Formula, SyntaxError> {
    if args.is_empty() {
        return err(pos, format!("{head} expects at least 1 argument, got 0"));
    }
    let mut parts = args.iter().map(f).collect::<Result<Vec<_>, _>>()?;
    let mut acc = parts.pop().expect("nonempty");
    while let Some(a) = parts.pop() {
        acc = if head == "and" { crate::formula::and(a, acc) } else { crate::formula::or(a, acc) };
    }
    Ok(acc)
}

fn formula_into(s: &Sexp, universe: &mut Vec<NameExpr>) -> Result<Formula, SyntaxError> {
    use crate::formula as f;
    let pos = s.pos();
    let Some((head, args)) = s.form() else { return err(pos, "expected a formula") };
    let n = |k: usize| name_expr_of(&args[k]);
    Ok(match head {
        "mem" | "eq" => {
            arity(head, args, 2, pos)?;
            if head == "mem" {
                f::mem(n(0)?, n(1)?)
            } else {
                f::eq(n(0)?, n(1)?)
            }
        }
        "and" | "or" => {
            let mut sub = Vec::new();
            let r = binary(head, args, pos, |a| formula_into(a, &mut sub))?;
            universe.extend(sub);
            r
        }
        "not" => {
            arity(head, args, 1, pos)?;
            f::not(formula_into(&args[0], universe)?)
        }
        "imp" => {
            arity(head, args, 2, pos)?;
            f::imp(formula_into(&args[0], universe)?, formula_into(&args[1], universe)?)
        }
        "allin" | "exin" => {
            arity(head, args, 3, pos)?;
            let (v, y, body) = (ident(&args[0])?, n(1)?, formula_into(&args[2], universe)?);
            if head == "allin" {
                f::all_in(&v, y, body)
            } else {
                f::ex_in(&v, y, body)
            }
        }
        "all" | "ex" => {
            let (core, extra) = match args.len() {
                2 => (args, None),
                4 if args[2].atom() == Some(":universe") => (&args[..2], Some(&args[3])),
                k => return err(pos, format!("{head} expects 2 arguments (and an optional :universe), got {k}")),
            };
            if let Some(Sexp::List(items, _)) = extra {
                for it in items {
                    universe.push(name_expr_of(it)?);
                }
            } else if let Some(x) = extra {
                return err(x.pos(), "expected a list of names after :universe");
            }
            let (v, body) = (ident(&core[0])?, formula_into(&core[1], universe)?);
            if head == "all" {
                f::all(&v, body)
            } else {
                f::ex(&v, body)
            }
        }
        "false" => {
            arity(head, args, 0, pos)?;
            f::falsum()
        }
        _ => return err(pos, format!("unknown connective {head}")),
    })
}

pub fn parse_formula_full(text: &str) -> Result<ParsedFormula, SyntaxError> {
    let mut universe = Vec::new();
    let formula = formula_into(&parse_sexp(text)?, &mut universe)?;
    Ok(ParsedFormula { formula, universe })
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    Ok(parse_formula_full(text)?.formula)
}

pub fn condition_of(s: &Sexp) -> Result<Condition, SyntaxError> {
    let pos = s.pos();
    let Some(("cond", args)) = s.form() else { return err(pos, "expected (cond ((n m) ...))") };
    arity("cond", args, 1, pos)?;
    let Sexp::List(pairs, _) = &args[0] else { return err(args[0].pos(), "expected a list of pairs") };
    let mut graph = Vec::new();
    for p in pairs {
        match p {
            Sexp::List(nm, _) if nm.len() == 2 => graph.push((number(&nm[0])?, number(&nm[1])?)),
            _ => return err(p.pos(), "expected (n m)"),
        }
    }
    Condition::new(graph).or_else(|e| err(pos, e.to_string()))
}

pub fn parse_condition(text: &str) -> Result<Condition, SyntaxError> {
    condition_of(&parse_sexp(text)?)
}

/// Conditions one after another, or wrapped in `(pool ...)`. Also returns
/// how many conditions the union closure added.
pub fn parse_pool(text: &str) -> Result<(ConditionPool, usize), SyntaxError> {
    let all = parse_sexps(text)?;
    let items: Vec<&Sexp> = match all.as_slice() {
        [s] if matches!(s.form(), Some(("pool", _))) => s.form().expect("form").1.iter().collect(),
        _ => all.iter().collect(),
    };
    let conds = items.into_iter().map(condition_of).collect::<Result<Vec<_>, _>>()?;
    Ok(ConditionPool::new(conds))
}

fn aterm_of(s: &Sexp) -> Result<ATerm, SyntaxError> {
    let pos = s.pos();
    if let Some(a) = s.atom() {
        return Ok(match a.parse::<u64>() {
            Ok(n) => ATerm::Num(n),
            Err(_) => ATerm::Var(ident(s)?),
        });
    }
    let Some((head, args)) = s.form() else { return err(pos, "expected an arithmetic term") };
    Ok(match head {
        "S" => {
            arity(head, args, 1, pos)?;
            ATerm::Succ(Box::new(aterm_of(&args[0])?))
        }
        "+" | "*" => {
            arity(head, args, 2, pos)?;
            let (a, b) = (aterm_of(&args[0])?, aterm_of(&args[1])?);
            if head == "+" {
                ATerm::add(a, b)
            } else {
                ATerm::mul(a, b)
            }
        }
        _ => return err(pos, format!("unknown arithmetic operation {head}")),
    })
}

fn bound_of(s: &Sexp) -> Result<Bound, SyntaxError> {
    match s.atom() {
        Some("omega") => Ok(Bound::Omega),
        _ => number(s).map(Bound::Below),
    }
}

pub fn arith_of(s: &Sexp) -> Result<Arith, SyntaxError> {
    use crate::arith as a;
    let pos = s.pos();
    let Some((head, args)) = s.form() else { return err(pos, "expected an arithmetic formula") };
    Ok(match head {
        "=" | "<" => {
            arity(head, args, 2, pos)?;
            let (x, y) = (aterm_of(&args[0])?, aterm_of(&args[1])?);
            if head == "=" {
                a::eq(x, y)
            } else {
                a::lt(x, y)
            }
        }
        "and" | "or" | "->" => {
            arity(head, args, 2, pos)?;
            let (x, y) = (arith_of(&args[0])?, arith_of(&args[1])?);
            match head {
                "and" => a::and(x, y),
                "or" => a::or(x, y),
                _ => a::imp(x, y),
            }
        }
        "not" => {
            arity(head, args, 1, pos)?;
            a::not(arith_of(&args[0])?)
        }
        "forall" | "exists" => {
            arity(head, args, 3, pos)?;
            let (x, b, body) = (ident(&args[0])?, bound_of(&args[1])?, arith_of(&args[2])?);
            if head == "forall" {
                a::all(&x, b, body)
            } else {
                a::ex(&x, b, body)
            }
        }
        _ => return err(pos, format!("unknown arithmetic connective {head}")),
    })
}

pub fn parse_arith(text: &str) -> Result<Arith, SyntaxError> {
    arith_of(&parse_sexp(text)?)
}

fn fterm_of(s: &Sexp) -> Result<FTerm, SyntaxError> {
    let pos = s.pos();
    match s.atom() {
        Some("g") => return Ok(FTerm::G),
        Some("omega") => return Ok(FTerm::Omega),
        Some(_) => return Ok(FTerm::Var(ident(s)?)),
        None => {}
    }
    let Some((head, args)) = s.form() else { return err(pos, "expected a forcing term") };
    Ok(match head {
        "check" => {
            arity(head, args, 1, pos)?;
            FTerm::Num(number(&args[0])?)
        }
        "pair" => {
            arity(head, args, 2, pos)?;
            FTerm::pair(fterm_of(&args[0])?, fterm_of(&args[1])?)
        }
        _ => return err(pos, format!("unknown forcing term {head}")),
    })
}

/// Forcing formulas; `(arith φ)` embeds an arithmetic formula over check
/// names.
pub fn fformula_of(s: &Sexp) -> Result<FFormula, SyntaxError> {
    use crate::forcing as f;
    let pos = s.pos();
    let Some((head, args)) = s.form() else { return err(pos, "expected a forcing formula") };
    let sub = |k: usize| fformula_of(&args[k]);
    Ok(match head {
        "mem" | "eq" => {
            arity(head, args, 2, pos)?;
            let (x, y) = (fterm_of(&args[0])?, fterm_of(&args[1])?);
            if head == "mem" {
                f::fmem(x, y)
            } else {
                f::feq(x, y)
            }
        }
        "prim" => {
            arity(head, args, 1, pos)?;
            FFormula::Prim(arith_of(&args[0])?)
        }
        "arith" => {
            arity(head, args, 1, pos)?;
            f::translate(&arith_of(&args[0])?)
        }
        "and" | "or" | "imp" => {
            arity(head, args, 2, pos)?;
            let (a, b) = (sub(0)?, sub(1)?);
            match head {
                "and" => f::fand(a, b),
                "or" => f::for_(a, b),
                _ => f::fimp(a, b),
            }
        }
        "not" => {
            arity(head, args, 1, pos)?;
            f::fnot(sub(0)?)
        }
        "allin" | "exin" => {
            arity(head, args, 3, pos)?;
            let (v, y, body) = (ident(&args[0])?, fterm_of(&args[1])?, sub(2)?);
            if head == "allin" {
                f::fall_in(&v, y, body)
            } else {
                f::fex_in(&v, y, body)
            }
        }
        "all" | "ex" => {
            arity(head, args, 2, pos)?;
            let (v, body) = (ident(&args[0])?, sub(1)?);
            if head == "all" {
                f::fall(&v, body)
            } else {
                f::fex(&v, body)
            }
        }
        _ => return err(pos, format!("unknown connective {head}")),
    })
}

pub fn parse_fformula(text: &str) -> Result<FFormula, SyntaxError> {
    fformula_of(&parse_sexp(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{Budget, Types};

    #[test]
    fn k_applied_to_three() {
        assert_eq!(parse_term("(K (num 3))").unwrap(), Term::app(Term::k(), Term::num(3)));
        assert_eq!(parse_term("(app K (num 3) S)").unwrap(), Term::apps(Term::k(), [Term::num(3), Term::s()]));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_term("((K) extra").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 1 });
        assert!(e.msg.contains("unclosed"));
        let e = parse_term("(K\n  ))").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 4 });
        let e = parse_formula("(eq x y z)").unwrap_err();
        assert!(e.msg.contains("eq expects 2 arguments, got 3"), "{e}");
    }

    #[test]
    fn pi_code_round_trips() {
        let t = parse_type("(pi (nfin 2) (K (nat-code)))").unwrap();
        assert_eq!(t, TypeCode::pi(TypeCode::NFin(2), TypeCode::constant_family(&TypeCode::Nat)));
        assert_eq!(TypeCode::decode(&t.encode()).unwrap(), t);
        assert_eq!(parse_type(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn name_sugar_resolves() {
        let types = Types::new(Budget::default());
        let embed = Embedder::new(&types);
        assert_eq!(parse_name("(dot 2)", &embed).unwrap(), names::dot(2));
        let v = parse_name("(vpair (dot 0) (dot 1))", &embed).unwrap();
        assert_eq!(v, names::vpair(&names::dot(0), &names::dot(1)));
        assert_eq!(parse_name(&v.to_string(), &embed).unwrap(), v);
        assert_eq!(parse_name("(check (ord 2))", &embed).unwrap(), names::check(&HfSet::ordinal(2)));
    }

    #[test]
    fn formulas_round_trip() {
        for text in [
            "(mem (dot 0) (dot 1))",
            "(imp (eq x y) (allin z (xof (nfin 2)) (mem z y)))",
            "(and (not (ex v (eq v v))) (or (mem a b) (eq b a)))",
        ] {
            let f = parse_formula(text).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
        let p = parse_formula_full("(all v (eq v v) :universe ((dot 0) (dot 1)))").unwrap();
        assert_eq!(p.universe, [NameExpr::Dot(0), NameExpr::Dot(1)]);
    }

    #[test]
    fn conditions_and_pools() {
        let c = parse_condition("(cond ((0 1) (2 0)))").unwrap();
        assert_eq!(parse_condition(&c.to_string()).unwrap(), c);
        assert!(parse_condition("(cond ((0 1) (0 2)))").is_err());
        let (pool, added) = parse_pool("(cond ((0 0))) (cond ((1 1)))").unwrap();
        assert_eq!((pool.len(), added), (4, 1));
    }

    #[test]
    fn arithmetic_and_forcing_formulas_round_trip() {
        let a = parse_arith("(forall x 3 (exists y omega (= y (+ x 1))))").unwrap();
        assert_eq!(parse_arith(&a.to_string()).unwrap(), a);
        let f = parse_fformula("(imp (mem (pair (check 0) (check 1)) g) (exin x omega (eq x (check 2))))").unwrap();
        assert_eq!(parse_fformula(&f.to_string()).unwrap(), f);
    }
}
