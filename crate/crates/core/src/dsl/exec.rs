use std::collections::HashMap;
use std::sync::Arc;

use super::ast::*;
use super::pretty::claim_text;
use super::{parse, Diagnostic};
use crate::category::{compose, distinguishing_element, element, fn_equal, hom_count, identity, FnMor, SetObj};
use crate::derived::{build_integers, coproduct, indexed_product, quotient, EquivRelation};
use crate::error::Error;
use crate::nno::{recurse, recurse_nat, NatSystem, RecFn, Step};
use crate::universal::{characteristic, function_set, inverse_image_at, product, right_inverse};
use crate::value::Value;
use crate::verifier::{check_all_with, run_check, CheckId, Config, Kernel, Mutation, Report, Stats, Verdict, Witness};

/// The outcome of running a script.
#[derive(Clone, Debug)]
pub struct Execution {
    pub reports: Vec<Report>,
    pub diagnostics: Vec<Diagnostic>,
    /// 0 on success, 1 if an assertion or check failed, 2 on any error diagnostic.
    pub exit_code: i32,
}

/// Parses and executes `src`.
pub fn run(src: &str, cfg: &Config) -> Execution {
    match parse(src) {
        Ok(script) => execute(&script, cfg),
        Err(diagnostics) => Execution { reports: Vec::new(), diagnostics, exit_code: 2 },
    }
}

/// Runs the statements in order. Execution stops at the first error in a
/// statement that binds names; failed assertions and checks do not stop it.
pub fn execute(script: &Script, cfg: &Config) -> Execution {
    let mut ex = Executor { cfg, env: HashMap::new(), reports: Vec::new(), diags: Vec::new(), nat: NatSystem::new(cfg.nat_bound) };
    ex.env.insert("nat".into(), Binding::Nat);
    ex.env.insert("succ".into(), Binding::Succ);
    for stmt in &script.stmts {
        if let Err(d) = ex.stmt(stmt) {
            ex.diags.push(d);
            if matches!(stmt.kind, StmtKind::Set { .. } | StmtKind::Fn { .. } | StmtKind::Let { .. }) {
                break;
            }
        }
    }
    let exit_code = if ex.diags.iter().any(Diagnostic::is_error) {
        2
    } else if ex.reports.iter().any(Report::failed) {
        1
    } else {
        0
    };
    Execution { reports: ex.reports, diagnostics: ex.diags, exit_code }
}

#[derive(Clone)]
enum Binding {
    Set(SetObj),
    Fn(FnMor),
    Seq(Arc<RecFn>),
    Nat,
    Succ,
}

struct Executor<'a> {
    cfg: &'a Config,
    env: HashMap<String, Binding>,
    reports: Vec<Report>,
    diags: Vec<Diagnostic>,
    nat: NatSystem,
}

type XResult<T> = Result<T, Diagnostic>;

fn fail(loc: Loc, e: Error) -> Diagnostic {
    let hint = match &e {
        Error::CompositionMismatch { .. } => Some("in `g . f`, f is applied first and its codomain must be the domain of g"),
        Error::UnsupportedInfinite(_) => Some("only `recurse` accepts `nat`"),
        Error::BudgetExceeded { .. } => Some("use smaller sets or sizes"),
        Error::BoundExceeded { .. } => Some("raise the bound with --nat-bound"),
        Error::NotEquivalence { .. } => Some("list every related pair; `a ~ b` also adds `b ~ a`"),
        _ => None,
    };
    let d = Diagnostic::error(loc, e.to_string());
    match hint {
        Some(h) => d.with_hint(h),
        None => d,
    }
}

impl Executor<'_> {
    fn get(&self, n: &Name) -> XResult<&Binding> {
        self.env.get(&n.text).ok_or_else(|| Diagnostic::error(n.loc, format!("unbound name `{}`", n.text)))
    }

    fn set(&self, n: &Name, kind: &str) -> XResult<SetObj> {
        match self.get(n)? {
            Binding::Set(s) => Ok(s.clone()),
            Binding::Nat => Err(fail(
                n.loc,
                Error::UnsupportedInfinite(format!("the naturals cannot be used in `{kind}`")),
            )),
            _ => Err(Diagnostic::error(n.loc, format!("`{}` is not a set", n.text))),
        }
    }

    fn func(&self, n: &Name) -> XResult<FnMor> {
        match self.get(n)? {
            Binding::Fn(f) => Ok(f.clone()),
            _ => Err(Diagnostic::error(n.loc, format!("`{}` is not a function", n.text))),
        }
    }

    fn budget(&self, loc: Loc, count: u64) -> XResult<()> {
        if count > self.cfg.ceiling {
            return Err(fail(loc, Error::BudgetExceeded { count, ceiling: self.cfg.ceiling }));
        }
        Ok(())
    }

    fn stmt(&mut self, stmt: &Stmt) -> XResult<()> {
        match &stmt.kind {
            StmtKind::Set { name, elems } => {
                let s = SetObj::atoms(elems.iter().map(|e| e.text.as_str()));
                self.env.insert(name.text.clone(), Binding::Set(s));
            }
            StmtKind::Fn { name, dom, cod, map } => {
                let (d, c) = (self.set(dom, "fn")?, self.set(cod, "fn")?);
                let f = FnMor::new(d, c, map.iter().map(|(x, y)| (Value::atom(&x.text), Value::atom(&y.text))))
                    .map_err(|e| fail(stmt.loc, e))?;
                self.env.insert(name.text.clone(), Binding::Fn(f));
            }
            StmtKind::Let { binders, call, .. } => {
                let values = self.call(call)?;
                for (b, v) in binders.iter().zip(values) {
                    self.env.insert(b.text.clone(), v);
                }
            }
            StmtKind::Check { targets, size, mutation } => self.check(targets, size, mutation.as_ref())?,
            StmtKind::Assert { claim } => {
                let (verdict, witness) = self.claim(claim)?;
                self.reports.push(Report {
                    axiom_id: "assert".into(),
                    instance: format!("line {}: {}", stmt.loc.line, claim_text(claim)),
                    verdict,
                    witness,
                    stats: Stats { instances: 1, ..Stats::default() },
                });
            }
        }
        Ok(())
    }

    fn call(&self, call: &Call) -> XResult<Vec<Binding>> {
        let kind = call.kind.text.as_str();
        let loc = call.kind.loc;
        let word = |k: usize| match &call.args[k] {
            Arg::Word(n) => Ok(n),
            other => Err(Diagnostic::error(other.loc(), "a relation is not allowed here")),
        };
        let out = match kind {
            "product" => {
                let c = product(&self.set(word(0)?, kind)?, &self.set(word(1)?, kind)?);
                vec![Binding::Set(c.obj().clone()), Binding::Fn(c.pr1().clone()), Binding::Fn(c.pr2().clone())]
            }
            "funcset" => {
                let (x, y) = (self.set(word(0)?, kind)?, self.set(word(1)?, kind)?);
                self.budget(loc, hom_count(&x, &y))?;
                let fs = function_set(&x, &y);
                vec![Binding::Set(fs.obj().clone()), Binding::Fn(fs.ev().clone())]
            }
            "fibre" => {
                let f = self.func(word(0)?)?;
                let y = word(1)?;
                let cone = inverse_image_at(&f, &Value::atom(&y.text)).map_err(|e| fail(y.loc, e))?;
                vec![Binding::Set(cone.obj().clone()), Binding::Fn(cone.incl().clone())]
            }
            "classify" => vec![Binding::Fn(characteristic(&self.func(word(0)?)?).map_err(|e| fail(loc, e))?)],
            "choice" => vec![Binding::Fn(right_inverse(&self.func(word(0)?)?).map_err(|e| fail(loc, e))?)],
            "quotient" => {
                let x = self.set(word(0)?, kind)?;
                let Arg::Relation { loc: rloc, pairs } = &call.args[1] else {
                    return Err(Diagnostic::error(call.args[1].loc(), "expected a relation `{a ~ b, ...}`"));
                };
                let mut rel: Vec<(Value, Value)> = x.values().iter().map(|v| (v.clone(), v.clone())).collect();
                for (a, b) in pairs {
                    let (a, b) = (Value::atom(&a.text), Value::atom(&b.text));
                    rel.push((b.clone(), a.clone()));
                    rel.push((a, b));
                }
                rel.sort();
                rel.dedup();
                let rel = EquivRelation::from_pairs(x, &rel).map_err(|e| fail(*rloc, e))?;
                let q = quotient(&rel).map_err(|e| fail(loc, e))?;
                vec![Binding::Set(q.obj().clone()), Binding::Fn(q.proj().clone())]
            }
            "coproduct" => {
                let c = coproduct(&self.set(word(0)?, kind)?, &self.set(word(1)?, kind)?).map_err(|e| fail(loc, e))?;
                vec![Binding::Set(c.obj().clone()), Binding::Fn(c.inl().clone()), Binding::Fn(c.inr().clone())]
            }
            "indexedprod" => {
                let p = self.func(word(0)?)?;
                self.budget(loc, hom_count(p.cod(), p.dom()).saturating_add(hom_count(p.cod(), p.cod())))?;
                let ip = indexed_product(&p).map_err(|e| fail(loc, e))?;
                vec![Binding::Set(ip.obj().clone()), Binding::Fn(ip.incl().clone())]
            }
            "integers" => {
                let b = word(0)?;
                let bound = b.as_int().ok_or_else(|| Diagnostic::error(b.loc, "expected a number"))?;
                self.budget(loc, bound.saturating_add(1).saturating_pow(4))?;
                let z = build_integers(bound).map_err(|e| fail(loc, e))?;
                vec![Binding::Set(z.obj().clone()), Binding::Fn(z.proj().clone())]
            }
            "recurse" => vec![Binding::Seq(Arc::new(self.recurse(word(0)?, word(1)?, word(2)?)?))],
            other => return Err(Diagnostic::error(loc, format!("unknown construction `{other}`"))),
        };
        Ok(out)
    }

    fn recurse(&self, target: &Name, base: &Name, step: &Name) -> XResult<RecFn> {
        match self.get(target)? {
            Binding::Nat => {
                let b = base.as_int().ok_or_else(|| Diagnostic::error(base.loc, "the base of a sequence in `nat` is a number"))?;
                let r = match self.get(step)? {
                    Binding::Succ => Step::Succ,
                    Binding::Seq(g) if g.is_natural() => Step::Rec(g.clone()),
                    Binding::Fn(f) => Step::Table(f.clone()),
                    _ => return Err(Diagnostic::error(step.loc, format!("`{}` is not a step on `nat`", step.text))),
                };
                recurse_nat(&self.nat, b, r).map_err(|e| fail(step.loc, e))
            }
            Binding::Set(x) => {
                let a = element(x, &Value::atom(&base.text)).map_err(|e| fail(base.loc, e))?;
                let r = match self.get(step)? {
                    Binding::Fn(f) => f.clone(),
                    _ => return Err(Diagnostic::error(step.loc, format!("`{}` must be a function {} -> {}", step.text, target.text, target.text))),
                };
                recurse(&self.nat, &a, &r).map_err(|e| fail(step.loc, e))
            }
            _ => Err(Diagnostic::error(target.loc, format!("`{}` is not a set", target.text))),
        }
    }

    fn fn_expr(&self, e: &FnExpr) -> XResult<FnMor> {
        let term = |t: &FnTerm| match t {
            FnTerm::Name(n) => self.func(n),
            FnTerm::Id(s) => Ok(identity(&self.set(s, "id")?)),
        };
        let mut terms = e.terms.iter().rev();
        let first = terms.next().expect("a composite has a term");
        let mut acc = term(first)?;
        for t in terms {
            acc = compose(&term(t)?, &acc).map_err(|err| fail(t.loc(), err))?;
        }
        Ok(acc)
    }

    fn claim(&self, claim: &Claim) -> XResult<(Verdict, Option<Witness>)> {
        let verdict = |ok: bool| if ok { Verdict::Pass } else { Verdict::Fail };
        match claim {
            Claim::Equal(l, r) => {
                let (f, g) = (self.fn_expr(l)?, self.fn_expr(r)?);
                let loc = l.terms[0].loc();
                if fn_equal(&f, &g).map_err(|e| fail(loc, e))? {
                    return Ok((Verdict::Pass, None));
                }
                let x = distinguishing_element(&f, &g).expect("unequal functions differ somewhere");
                let show = |h: &FnMor| h.apply(&x).map(Value::to_string).unwrap_or_default();
                Ok((Verdict::Fail, Some(Witness::Element { element: x.to_string(), left: show(&f), right: show(&g) })))
            }
            Claim::Card(set, n) => {
                let s = match set {
                    SetExpr::Name(name) => self.set(name, "|...|")?,
                    SetExpr::Call(call) => match self.call(call)?.into_iter().next() {
                        Some(Binding::Set(s)) => s,
                        _ => return Err(Diagnostic::error(call.kind.loc, "the construction does not yield a set")),
                    },
                };
                let want = n.as_int().expect("checked by the parser");
                let ok = s.len() as u64 == want;
                let w = (!ok).then(|| Witness::Counterexample { instance: s.to_string(), detail: format!("has {} elements", s.len()) });
                Ok((verdict(ok), w))
            }
            Claim::Apply { f, arg, value } => {
                let (got, want) = match self.get(f)? {
                    Binding::Fn(func) => {
                        let x = Value::atom(&arg.text);
                        let got = func.apply(&x).cloned().ok_or_else(|| fail(arg.loc, Error::NotInDomain { value: x }))?;
                        (got, Value::atom(&value.text))
                    }
                    Binding::Seq(seq) => {
                        let n = arg.as_int().ok_or_else(|| Diagnostic::error(arg.loc, "expected a number"))?;
                        let got = seq.value_at(n).map_err(|e| fail(arg.loc, e))?;
                        let want = match (seq.is_natural(), value.as_int()) {
                            (true, Some(k)) => Value::Nat(k),
                            _ => Value::atom(&value.text),
                        };
                        (got, want)
                    }
                    _ => return Err(Diagnostic::error(f.loc, format!("`{}` cannot be applied", f.text))),
                };
                let ok = got == want;
                let w = (!ok).then(|| Witness::Element { element: arg.text.clone(), left: got.to_string(), right: want.to_string() });
                Ok((verdict(ok), w))
            }
        }
    }

    fn check(&mut self, targets: &Targets, size: &Name, mutation: Option<&Name>) -> XResult<()> {
        let size = size.as_int().expect("checked by the parser") as usize;
        let mutation: Option<Mutation> = match mutation {
            Some(m) => Some(m.text.parse().map_err(|e| fail(m.loc, e))?),
            None => None,
        };
        let (loc, results) = match targets {
            Targets::All(loc) => (*loc, check_all_with(size, self.cfg, mutation)),
            Targets::Ids(ids) => {
                let mut results = Vec::new();
                for id in ids {
                    let check: CheckId = id.text.parse().map_err(|e| fail(id.loc, e))?;
                    let kernel = match mutation {
                        Some(m) if m.targets().contains(&check) => Kernel::mutated(m),
                        Some(m) => {
                            self.diags.push(Diagnostic::warning(id.loc, format!("mutation {m} does not affect check {check}")));
                            Kernel::canonical()
                        }
                        None => Kernel::canonical(),
                    };
                    results.push(run_check(check, size, self.cfg, kernel));
                }
                (ids[0].loc, results)
            }
        };
        for r in results {
            match r {
                Ok(report) => self.reports.push(report),
                Err(e) => self.diags.push(fail(loc, e)),
            }
        }
        Ok(())
    }
}
