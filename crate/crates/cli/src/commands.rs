use std::path::Path;

use serde_json::{json, Value};

use ext_real::forcing::{goodman_demo, mk_generic_names, Condition, ConditionPool, Forcer};
use ext_real::names::{Embedder, EmbedError};
use ext_real::pca::{lambda, reduce_with, Element, Halt};
use ext_real::realize::{Checker, Pool, SearchOutcome};
use ext_real::realizers::{mk_realizer, REALIZER_NAMES};
use ext_real::syntax::{self, parse_sexps, SyntaxError};
use ext_real::types::{Budget, Types};
use ext_real::TriState;

use crate::report::{render, Budgets, Outcome, Verdict};
use crate::{Cli, Command};

type Run = Result<Outcome, String>;

fn syn(e: SyntaxError) -> String {
    format!("syntax error at {e}")
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn element(text: &str, fuel: u64) -> Result<Element, String> {
    syntax::element_of(&syntax::parse_sexp(text).map_err(syn)?, fuel).map_err(syn)
}

fn state(t: TriState) -> Value {
    json!(t.to_string())
}

/// Report text and exit code.
pub fn run(cli: &Cli) -> Result<(String, i32), String> {
    let types = Types::new(Budget { fuel: cli.fuel, nat_bound: cli.enum_bound, ..Budget::default() });
    let (name, input, out) = match &cli.command {
        Command::Eval { term, cond } => ("eval", json!({ "term": term, "cond": cond }), eval(cli, term, cond.as_deref())),
        Command::Abstract { term, vars } => ("abstract", json!({ "term": term, "vars": vars }), abstract_(term, vars)),
        Command::Tyeq { sigma, tau } => ("tyeq", json!({ "sigma": sigma, "tau": tau }), tyeq(&types, sigma, tau)),
        Command::Elemeq { a, b, sigma } => {
            ("elemeq", json!({ "a": a, "b": b, "sigma": sigma }), elemeq(cli, &types, a, b, sigma))
        }
        Command::PerEnum { sigma } => ("per-enum", json!({ "sigma": sigma }), per_enum(&types, sigma)),
        Command::Name { sigma, element } => {
            ("name", json!({ "sigma": sigma, "element": element }), name(cli, &types, sigma, element.as_deref()))
        }
        Command::Realize { formula, a, b, search, pool, universe, exhaustive } => (
            "realize",
            json!({ "formula": formula, "a": a, "b": b, "search": search, "exhaustive": exhaustive }),
            realize(cli, &types, formula, a.as_deref().zip(b.as_deref()), *search, pool.as_deref(), universe.as_deref(), *exhaustive),
        ),
        Command::MkRealizer { name, verify } => {
            ("mk-realizer", json!({ "name": name, "verify": verify }), mk_realizer_cmd(&types, name, *verify))
        }
        Command::Force { formula, pool, full, cond } => (
            "force",
            json!({ "formula": formula, "full": if pool.is_some() { None } else { Some(full) }, "cond": cond }),
            force(cli, formula, pool.as_deref(), full, cond),
        ),
        Command::GoodmanDemo { phi } => ("goodman-demo", json!({ "phi": phi }), goodman(cli, phi)),
    };
    let out = out?;
    let budgets = Budgets {
        fuel: cli.fuel,
        enum_bound: cli.enum_bound,
        size_bound: cli.size_bound,
        pool_file: match &cli.command {
            Command::Realize { pool, .. } | Command::Force { pool, .. } => pool.as_ref().map(|p| p.display().to_string()),
            _ => None,
        },
        universe_file: match &cli.command {
            Command::Realize { universe, .. } => universe.as_ref().map(|p| p.display().to_string()),
            _ => None,
        },
        seed: cli.seed,
    };
    Ok((render(name, input, &budgets, &out), out.verdict.exit_code()))
}

fn eval(cli: &Cli, term: &str, cond: Option<&str>) -> Run {
    let t = syntax::parse_term(term).map_err(syn)?;
    if !t.is_closed() {
        return Err(format!("term has free variables: {}", t.free_vars().into_iter().collect::<Vec<_>>().join(" ")));
    }
    let p = match cond {
        Some(c) => syntax::parse_condition(c).map_err(syn)?,
        None => Condition::empty(),
    };
    Ok(match reduce_with(&t, cli.fuel, &p) {
        Ok((v, left)) => Outcome::new(Verdict::Holds, json!({ "outcome": "defined", "value": v.to_string(), "fuel_used": cli.fuel - left })),
        Err(Halt::Stuck) => Outcome::new(Verdict::Refuted, json!({ "outcome": "stuck" })),
        Err(Halt::FuelOut) => Outcome::new(Verdict::Unknown, json!({ "outcome": "fuelout" })),
        Err(Halt::NeedsOracle(n)) => Outcome::new(Verdict::Unknown, json!({ "outcome": "needs-oracle", "query": n })),
    })
}

fn abstract_(term: &str, vars: &[String]) -> Run {
    let t = syntax::parse_term(term).map_err(syn)?;
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let c = lambda(&refs, &t);
    let free: Vec<String> = c.free_vars().into_iter().collect();
    Ok(Outcome::new(Verdict::Holds, json!({ "combinator": c.to_string(), "size": c.size(), "free": free })))
}

fn tyeq(types: &Types, sigma: &str, tau: &str) -> Run {
    let s = syntax::parse_type(sigma).map_err(syn)?;
    let t = syntax::parse_type(tau).map_err(syn)?;
    let r = types.type_equiv(&s, &t);
    Ok(Outcome::new(r, json!({ "sigma": s.to_string(), "tau": t.to_string(), "state": state(r) })))
}

fn elemeq(cli: &Cli, types: &Types, a: &str, b: &str, sigma: &str) -> Run {
    let (a, b) = (element(a, cli.fuel)?, element(b, cli.fuel)?);
    let s = syntax::parse_type(sigma).map_err(syn)?;
    let r = types.elem_equiv(&a, &b, &s);
    Ok(Outcome::new(r, json!({ "a": a.to_string(), "b": b.to_string(), "sigma": s.to_string(), "state": state(r) })))
}

fn per_enum(types: &Types, sigma: &str) -> Run {
    let s = syntax::parse_type(sigma).map_err(syn)?;
    let per = types.per(&s);
    let classes: Vec<Vec<String>> = per.classes.iter().map(|c| c.iter().map(Element::to_string).collect()).collect();
    let verdict = if per.complete { Verdict::Holds } else { Verdict::Unknown };
    Ok(Outcome::new(verdict, json!({ "sigma": s.to_string(), "complete": per.complete, "classes": classes })))
}

fn name(cli: &Cli, types: &Types, sigma: &str, elem: Option<&str>) -> Run {
    let s = syntax::parse_type(sigma).map_err(syn)?;
    let embed = Embedder::new(types);
    let built = match elem {
        Some(a) => embed.embed(&element(a, cli.fuel)?, &s),
        None => embed.x_of(&s),
    };
    Ok(match built {
        Ok(n) => Outcome::new(
            Verdict::Holds,
            json!({ "name": n.to_string(), "rank": n.rank(), "size": n.size(), "complete": n.complete() }),
        ),
        Err(EmbedError::NotInType) => Outcome::new(Verdict::Refuted, json!({ "error": "element is not of the type" })),
        Err(e @ EmbedError::Unknown(_)) => Outcome::new(Verdict::Unknown, json!({ "error": e.to_string() })),
    })
}

fn pool_pairs(text: &str, fuel: u64) -> Result<Vec<(Element, Element)>, String> {
    let mut out = Vec::new();
    for s in parse_sexps(text).map_err(syn)? {
        match &s {
            syntax::Sexp::List(ab, _) if ab.len() == 2 => out.push((
                syntax::element_of(&ab[0], fuel).map_err(syn)?,
                syntax::element_of(&ab[1], fuel).map_err(syn)?,
            )),
            _ => return Err(format!("{}: pool entries are (a b)", s.pos())),
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn realize(
    cli: &Cli,
    types: &Types,
    formula: &str,
    ab: Option<(&str, &str)>,
    search: bool,
    pool_file: Option<&Path>,
    universe_file: Option<&Path>,
    exhaustive: bool,
) -> Run {
    if ab.is_none() && !search {
        return Err("give --a and --b, or --search".into());
    }
    let parsed = syntax::parse_formula_full(formula).map_err(syn)?;
    let mut exprs = parsed.universe;
    if let Some(path) = universe_file {
        for s in parse_sexps(&read(path)?).map_err(syn)? {
            exprs.push(syntax::name_expr_of(&s).map_err(syn)?);
        }
    }
    let embed = Embedder::new(types);
    let universe = exprs.iter().map(|e| syntax::resolve_name(e, &embed)).collect::<Result<Vec<_>, _>>()?;
    let pool = match pool_file {
        Some(path) => Pool::explicit(pool_pairs(&read(path)?, cli.fuel)?),
        None if search => Pool::explicit(Vec::new()),
        None => Pool::enumerated(cli.size_bound, cli.fuel.min(10_000)),
    };
    let checker = Checker::new(types, pool.with_universe(universe, exhaustive));
    let phi = &parsed.formula;
    if let Some((a, b)) = ab {
        let (a, b) = (element(a, cli.fuel)?, element(b, cli.fuel)?);
        let v = checker.check(&a, &b, phi).map_err(|e| e.to_string())?;
        return Ok(Outcome::new(v.state, json!({ "state": state(v.state), "trace": v.trace })));
    }
    Ok(match checker.search(phi, Some(cli.size_bound)).map_err(|e| e.to_string())? {
        SearchOutcome::Found { a, b, verdict, scanned } => Outcome::new(
            Verdict::Holds,
            json!({ "found": true, "a": a.to_string(), "b": b.to_string(), "scanned": scanned, "trace": verdict.trace }),
        ),
        SearchOutcome::NotFound { scanned, unknown, size_bound } => Outcome::new(
            if unknown == 0 { Verdict::Refuted } else { Verdict::Unknown },
            json!({ "found": false, "scanned": scanned, "unknown": unknown, "size_bound": size_bound, "bounded": true }),
        ),
    })
}

fn mk_realizer_cmd(types: &Types, name: &str, verify: bool) -> Run {
    let case = mk_realizer(name).ok_or_else(|| format!("unknown realizer {name}; expected one of {}", REALIZER_NAMES.join(", ")))?;
    let mut detail = json!({ "name": case.name, "term": case.term.to_string(), "scale": case.scale });
    if !verify {
        return Ok(Outcome::new(Verdict::Holds, detail));
    }
    let cases = case.verify(types);
    // a case over an empty type has no instances and holds vacuously
    let verdict = if cases.iter().all(|c| c.instances.is_empty() || c.all_hold()) {
        Verdict::Holds
    } else if cases.iter().all(|c| c.none_refuted()) {
        Verdict::Unknown
    } else {
        Verdict::Refuted
    };
    detail["cases"] = serde_json::to_value(&cases).expect("reports serialize");
    Ok(Outcome::new(verdict, detail))
}

fn force(cli: &Cli, formula: &str, pool_file: Option<&Path>, full: &str, cond: &str) -> Run {
    let phi = syntax::parse_fformula(formula).map_err(syn)?;
    let p = syntax::parse_condition(cond).map_err(syn)?;
    let (pool, added) = match pool_file {
        Some(path) => syntax::parse_pool(&read(path)?).map_err(syn)?,
        None => {
            let bad = || format!("--full expects KEYS:MAX, got {full}");
            let (k, m) = full.split_once(':').ok_or_else(bad)?;
            (ConditionPool::full(k.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?), 0)
        }
    };
    let names = mk_generic_names(&pool);
    let universe = (0..cli.enum_bound).map(|n| names.numeral(n)).collect();
    let r = Forcer::new(&names).with_universe(universe, false).force(&p, &phi).map_err(|e| e.to_string())?;
    Ok(Outcome::new(
        r,
        json!({ "formula": phi.to_string(), "condition": p.to_string(), "pool_size": pool.len(), "added_by_closure": added, "state": state(r) }),
    ))
}

fn goodman(cli: &Cli, phi: &str) -> Run {
    let a = syntax::parse_arith(phi).map_err(syn)?;
    if let Some(x) = a.free_vars().first() {
        return Err(format!("sentence has a free variable {x}"));
    }
    let r = goodman_demo(&a, cli.fuel).map_err(|e| e.to_string())?;
    let verdict = match (r.verdict.as_str(), r.direct.as_str()) {
        ("holds", _) => Verdict::Holds,
        (_, "refuted") => Verdict::Refuted,
        _ => Verdict::Unknown,
    };
    Ok(Outcome::new(verdict, serde_json::to_value(&r).expect("reports serialize")))
}
