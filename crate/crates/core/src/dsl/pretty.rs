use super::ast::*;

/// Canonical text of a script, one statement per line. Comments are not kept.
pub fn pretty(script: &Script) -> String {
    let mut out = String::new();
    for stmt in &script.stmts {
        out.push_str(&stmt_text(&stmt.kind));
        out.push('\n');
    }
    out
}

fn words(ns: &[Name]) -> String {
    ns.iter().map(|n| n.text.as_str()).collect::<Vec<_>>().join(", ")
}

fn pairs(ps: &[(Name, Name)], sep: &str) -> String {
    ps.iter().map(|(a, b)| format!("{} {sep} {}", a.text, b.text)).collect::<Vec<_>>().join(", ")
}

pub(crate) fn stmt_text(kind: &StmtKind) -> String {
    match kind {
        StmtKind::Set { name, elems } => format!("set {} = {{{}}}", name.text, words(elems)),
        StmtKind::Fn { name, dom, cod, map } => {
            format!("fn {} : {} -> {} = {{{}}}", name.text, dom.text, cod.text, pairs(map, "|->"))
        }
        StmtKind::Let { binders, tuple, call } => {
            let lhs = if *tuple { format!("({})", words(binders)) } else { words(binders) };
            format!("let {lhs} = {}", call_text(call))
        }
        StmtKind::Check { targets, size, mutation } => {
            let t = match targets {
                Targets::All(_) => "all".to_string(),
                Targets::Ids(ids) => words(ids),
            };
            let m = mutation.as_ref().map(|m| format!(" with {}", m.text)).unwrap_or_default();
            format!("check {t} size {}{m}", size.text)
        }
        StmtKind::Assert { claim } => format!("assert {}", claim_text(claim)),
    }
}

pub(crate) fn call_text(call: &Call) -> String {
    let args: Vec<String> = call
        .args
        .iter()
        .map(|a| match a {
            Arg::Word(n) => n.text.clone(),
            Arg::Relation { pairs: ps, .. } => format!("{{{}}}", pairs(ps, "~")),
        })
        .collect();
    format!("{}({})", call.kind.text, args.join(", "))
}

pub(crate) fn fn_expr_text(e: &FnExpr) -> String {
    e.terms
        .iter()
        .map(|t| match t {
            FnTerm::Name(n) => n.text.clone(),
            FnTerm::Id(s) => format!("id({})", s.text),
        })
        .collect::<Vec<_>>()
        .join(" . ")
}

pub(crate) fn claim_text(claim: &Claim) -> String {
    match claim {
        Claim::Equal(l, r) => format!("{} == {}", fn_expr_text(l), fn_expr_text(r)),
        Claim::Card(SetExpr::Name(n), k) => format!("|{}| == {}", n.text, k.text),
        Claim::Card(SetExpr::Call(c), k) => format!("|{}| == {}", call_text(c), k.text),
        Claim::Apply { f, arg, value } => format!("{}({}) == {}", f.text, arg.text, value.text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    const SCRIPT: &str = "
# every statement kind
set X = { a,b }
set Y = {0, 1}
fn f : X -> Y = {a |-> 0,
                 b |-> 1}
fn g : Y -> X = {0 |-> a, 1 |-> a}
let (P, p1, p2) = product(X, Y)
let F = funcset(X, Y)
let (A, i) = fibre(f, 0)
let (Q, q) = quotient(X, {a ~ b})
let s = recurse(nat, 3, succ)
check A1,A5 size 2 with swap_projection
check all size 1
assert g . f == id(X) . g . f
assert |funcset(X, Y)| == 4
assert f(a) == 0
assert s(2) == 5
";

    #[test]
    fn round_trip() {
        let s = parse(SCRIPT).unwrap();
        let text = pretty(&s);
        let again = parse(&text).unwrap();
        assert_eq!(s, again);
        assert_eq!(pretty(&again), text);
        assert!(text.starts_with("set X = {a, b}\n"));
        assert!(text.contains("check A1, A5 size 2 with swap_projection\n"));
    }
}
