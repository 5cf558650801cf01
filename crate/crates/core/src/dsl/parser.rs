use std::collections::HashMap;

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use super::Diagnostic;
use crate::verifier::{CheckId, Mutation};

/// Words that cannot name a binding.
pub(crate) const RESERVED: [&str; 11] = ["set", "fn", "let", "check", "assert", "all", "size", "with", "id", "nat", "succ"];

const STATEMENTS: &str = "statements start with `set`, `fn`, `let`, `check` or `assert`";

/// Parses and statically checks a script. Any error yields the full list of
/// diagnostics instead of a script.
pub fn parse(src: &str) -> Result<Script, Vec<Diagnostic>> {
    let (tokens, mut diags) = lex(src);
    let mut p = Parser { tokens, pos: 0 };
    let mut stmts = Vec::new();
    while p.peek() != &Tok::Eof {
        match p.stmt() {
            Ok(s) => stmts.push(s),
            Err(d) => {
                diags.push(d);
                p.recover();
            }
        }
    }
    let script = Script { stmts };
    if diags.is_empty() {
        diags = analyze(&script);
    }
    if diags.iter().any(Diagnostic::is_error) {
        diags.sort_by_key(|d| (d.line, d.col));
        return Err(diags);
    }
    Ok(script)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    fn loc(&self) -> Loc {
        self.tokens[self.pos].loc
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    /// Skips to the first token on a later line.
    fn recover(&mut self) {
        let line = self.loc().line;
        while self.peek() != &Tok::Eof && self.loc().line == line {
            self.bump();
        }
    }

    fn unexpected(&self, wanted: &str) -> Diagnostic {
        Diagnostic::error(self.loc(), format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok) -> PResult<Loc> {
        if self.peek() == &tok {
            Ok(self.bump().loc)
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn word(&mut self, wanted: &str) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Word(w) => Ok(Name::new(w, self.bump().loc)),
            _ => Err(self.unexpected(wanted)),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Loc> {
        match self.peek() {
            Tok::Word(w) if w == kw => Ok(self.bump().loc),
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn binding_name(&mut self) -> PResult<Name> {
        let n = self.word("a name")?;
        if n.text.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(Diagnostic::error(n.loc, format!("`{}` cannot be a name", n.text))
                .with_hint("names start with a letter or `_`"));
        }
        if RESERVED.contains(&n.text.as_str()) {
            return Err(Diagnostic::error(n.loc, format!("`{}` is reserved", n.text)));
        }
        Ok(n)
    }

    fn braced<T>(&mut self, mut item: impl FnMut(&mut Parser) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        if self.peek() == &Tok::RBrace {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RBrace => {
                    self.bump();
                    return Ok(out);
                }
                _ => return Err(self.unexpected("`,` or `}`")),
            }
        }
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let loc = self.loc();
        let head = match self.peek() {
            Tok::Word(w) => w.clone(),
            _ => return Err(self.unexpected("a statement").with_hint(STATEMENTS)),
        };
        let kind = match head.as_str() {
            "set" => {
                self.bump();
                let name = self.binding_name()?;
                self.expect(Tok::Eq)?;
                let elems = self.braced(|p| p.word("an element"))?;
                StmtKind::Set { name, elems }
            }
            "fn" => {
                self.bump();
                let name = self.binding_name()?;
                self.expect(Tok::Colon)?;
                let dom = self.word("a domain")?;
                self.expect(Tok::Arrow)?;
                let cod = self.word("a codomain")?;
                self.expect(Tok::Eq)?;
                let map = self.braced(|p| {
                    let x = p.word("an element")?;
                    p.expect(Tok::MapsTo)?;
                    let y = p.word("an element")?;
                    Ok((x, y))
                })?;
                StmtKind::Fn { name, dom, cod, map }
            }
            "let" => {
                self.bump();
                let (binders, tuple) = if self.peek() == &Tok::LParen {
                    self.bump();
                    let mut names = vec![self.binding_name()?];
                    while self.peek() == &Tok::Comma {
                        self.bump();
                        names.push(self.binding_name()?);
                    }
                    self.expect(Tok::RParen)?;
                    (names, true)
                } else {
                    (vec![self.binding_name()?], false)
                };
                self.expect(Tok::Eq)?;
                let call = self.call()?;
                StmtKind::Let { binders, tuple, call }
            }
            "check" => {
                self.bump();
                let targets = match self.peek() {
                    Tok::Word(w) if w == "all" => Targets::All(self.bump().loc),
                    _ => {
                        let mut ids = vec![self.word("a check name or `all`")?];
                        while self.peek() == &Tok::Comma {
                            self.bump();
                            ids.push(self.word("a check name")?);
                        }
                        Targets::Ids(ids)
                    }
                };
                self.keyword("size")?;
                let size = self.word("a size")?;
                if size.as_int().is_none() {
                    return Err(Diagnostic::error(size.loc, format!("size `{}` is not a number", size.text)));
                }
                let mutation = match self.peek() {
                    Tok::Word(w) if w == "with" => {
                        self.bump();
                        Some(self.word("a mutation")?)
                    }
                    _ => None,
                };
                StmtKind::Check { targets, size, mutation }
            }
            "assert" => {
                self.bump();
                StmtKind::Assert { claim: self.claim()? }
            }
            _ => return Err(self.unexpected("a statement").with_hint(STATEMENTS)),
        };
        Ok(Stmt { loc, kind })
    }

    fn call(&mut self) -> PResult<Call> {
        let kind = self.word("a construction")?;
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        if self.peek() != &Tok::RParen {
            loop {
                args.push(self.arg()?);
                if self.peek() == &Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen)?;
        Ok(Call { kind, args })
    }

    fn arg(&mut self) -> PResult<Arg> {
        if self.peek() == &Tok::LBrace {
            let loc = self.loc();
            let pairs = self.braced(|p| {
                let x = p.word("an element")?;
                p.expect(Tok::Tilde)?;
                let y = p.word("an element")?;
                Ok((x, y))
            })?;
            return Ok(Arg::Relation { loc, pairs });
        }
        Ok(Arg::Word(self.word("an argument")?))
    }

    fn claim(&mut self) -> PResult<Claim> {
        if self.peek() == &Tok::Bar {
            self.bump();
            let set = if matches!(self.peek_at(1), Tok::LParen) { SetExpr::Call(self.call()?) } else { SetExpr::Name(self.word("a set")?) };
            self.expect(Tok::Bar)?;
            self.expect(Tok::EqEq)?;
            let n = self.word("a number")?;
            if n.as_int().is_none() {
                return Err(Diagnostic::error(n.loc, format!("`{}` is not a number", n.text)));
            }
            return Ok(Claim::Card(set, n));
        }
        let first = self.word("a function")?;
        if first.text != "id" && self.peek() == &Tok::LParen {
            self.bump();
            let arg = self.word("an element")?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::EqEq)?;
            let value = self.word("an element")?;
            return Ok(Claim::Apply { f: first, arg, value });
        }
        let left = self.fn_expr(Some(first))?;
        self.expect(Tok::EqEq)?;
        let right = self.fn_expr(None)?;
        Ok(Claim::Equal(left, right))
    }

    fn fn_expr(&mut self, first: Option<Name>) -> PResult<FnExpr> {
        let mut terms = vec![self.fn_term(first)?];
        while self.peek() == &Tok::Dot {
            self.bump();
            terms.push(self.fn_term(None)?);
        }
        Ok(FnExpr { terms })
    }

    fn fn_term(&mut self, first: Option<Name>) -> PResult<FnTerm> {
        let n = match first {
            Some(n) => n,
            None => self.word("a function")?,
        };
        if n.text == "id" {
            self.expect(Tok::LParen)?;
            let set = self.word("a set")?;
            self.expect(Tok::RParen)?;
            return Ok(FnTerm::Id(set));
        }
        Ok(FnTerm::Name(n))
    }
}

/// What a name is bound to, as far as is known without executing.
#[derive(Clone, Debug)]
enum Sym {
    /// Elements are known for literal sets.
    Set(Option<Vec<String>>),
    /// Domain and codomain elements, when both are literal.
    Fn(Option<(Vec<String>, Vec<String>)>),
    Seq,
    Nat,
    Succ,
}

impl Sym {
    fn describe(&self) -> &'static str {
        match self {
            Sym::Set(_) | Sym::Nat => "a set",
            Sym::Fn(_) => "a function",
            Sym::Seq => "a sequence",
            Sym::Succ => "the successor",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ArgKind {
    Set,
    Fn,
    Element,
    Int,
    Relation,
    /// A function, a sequence or `succ`.
    Step,
    /// An element or a number.
    Base,
}

#[derive(Clone, Copy)]
enum Out {
    Set,
    Fn,
    Seq,
}

pub(crate) const KINDS: [&str; 10] =
    ["product", "funcset", "fibre", "classify", "choice", "quotient", "coproduct", "indexedprod", "integers", "recurse"];

fn signature(kind: &str) -> Option<(&'static [ArgKind], &'static [Out])> {
    use ArgKind as A;
    Some(match kind {
        "product" => (&[A::Set, A::Set], &[Out::Set, Out::Fn, Out::Fn]),
        "funcset" => (&[A::Set, A::Set], &[Out::Set, Out::Fn]),
        "fibre" => (&[A::Fn, A::Element], &[Out::Set, Out::Fn]),
        "classify" => (&[A::Fn], &[Out::Fn]),
        "choice" => (&[A::Fn], &[Out::Fn]),
        "quotient" => (&[A::Set, A::Relation], &[Out::Set, Out::Fn]),
        "coproduct" => (&[A::Set, A::Set], &[Out::Set, Out::Fn, Out::Fn]),
        "indexedprod" => (&[A::Fn], &[Out::Set, Out::Fn]),
        "integers" => (&[A::Int], &[Out::Set, Out::Fn]),
        "recurse" => (&[A::Set, A::Base, A::Step], &[Out::Seq]),
        _ => return None,
    })
}

struct Scope {
    syms: HashMap<String, (Sym, Loc)>,
    diags: Vec<Diagnostic>,
}

impl Scope {
    fn lookup(&mut self, n: &Name) -> Option<Sym> {
        match self.syms.get(&n.text) {
            Some((s, _)) => Some(s.clone()),
            None => {
                self.diags.push(
                    Diagnostic::error(n.loc, format!("unbound name `{}`", n.text)).with_hint("bind it with `set`, `fn` or `let` before use"),
                );
                None
            }
        }
    }

    fn bind(&mut self, n: &Name, sym: Sym) {
        if let Some((_, prev)) = self.syms.get(&n.text) {
            let hint = if prev.line == 0 { "this name is built in".to_string() } else { format!("first bound at {prev}") };
            self.diags.push(Diagnostic::error(n.loc, format!("`{}` is already bound", n.text)).with_hint(hint));
            return;
        }
        self.syms.insert(n.text.clone(), (sym, n.loc));
    }

    fn expect_set(&mut self, n: &Name) -> Option<Sym> {
        match self.lookup(n)? {
            s @ (Sym::Set(_) | Sym::Nat) => Some(s),
            other => {
                self.diags.push(Diagnostic::error(n.loc, format!("`{}` is {}, expected a set", n.text, other.describe())));
                None
            }
        }
    }

    fn expect_fn(&mut self, n: &Name) -> Option<Option<(Vec<String>, Vec<String>)>> {
        match self.lookup(n)? {
            Sym::Fn(shape) => Some(shape),
            other => {
                self.diags.push(Diagnostic::error(n.loc, format!("`{}` is {}, expected a function", n.text, other.describe())));
                None
            }
        }
    }

    fn in_cod(&mut self, shape: &Option<(Vec<String>, Vec<String>)>, v: &Name) {
        if let Some((_, cod)) = shape {
            if !cod.contains(&v.text) {
                self.diags.push(Diagnostic::error(v.loc, format!("value not in codomain: `{}`", v.text)));
            }
        }
    }
}

/// Name resolution, arity and totality checks.
fn analyze(script: &Script) -> Vec<Diagnostic> {
    let mut sc = Scope { syms: HashMap::new(), diags: Vec::new() };
    sc.syms.insert("nat".into(), (Sym::Nat, Loc::default()));
    sc.syms.insert("succ".into(), (Sym::Succ, Loc::default()));
    for stmt in &script.stmts {
        match &stmt.kind {
            StmtKind::Set { name, elems } => {
                let mut seen: Vec<String> = Vec::new();
                for e in elems {
                    if seen.contains(&e.text) {
                        sc.diags.push(Diagnostic::error(e.loc, format!("duplicate element `{}`", e.text)));
                    } else {
                        seen.push(e.text.clone());
                    }
                }
                sc.bind(name, Sym::Set(Some(seen)));
            }
            StmtKind::Fn { name, dom, cod, map } => {
                let d = literal_elems(&mut sc, dom);
                let c = literal_elems(&mut sc, cod);
                let shape = match (d, c) {
                    (Some(d), Some(c)) => {
                        check_mapping(&mut sc, stmt.loc, name, &d, &c, map);
                        Some((d, c))
                    }
                    _ => None,
                };
                sc.bind(name, Sym::Fn(shape));
            }
            StmtKind::Let { binders, call, .. } => {
                let outs = check_call(&mut sc, call);
                if let Some(outs) = outs {
                    if binders.len() > outs.len() {
                        sc.diags.push(
                            Diagnostic::error(binders[outs.len()].loc, format!("`{}` yields {} value(s)", call.kind.text, outs.len()))
                                .with_hint("bind fewer names"),
                        );
                    }
                }
                for (k, b) in binders.iter().enumerate() {
                    let sym = match outs.and_then(|o| o.get(k).copied()) {
                        Some(Out::Set) => Sym::Set(None),
                        Some(Out::Fn) => Sym::Fn(None),
                        Some(Out::Seq) => Sym::Seq,
                        None => Sym::Set(None),
                    };
                    sc.bind(b, sym);
                }
            }
            StmtKind::Check { targets, size, mutation } => {
                if let Targets::Ids(ids) = targets {
                    for id in ids {
                        if id.text.parse::<CheckId>().is_err() {
                            let names: Vec<&str> = CheckId::ALL.iter().map(|c| c.name()).collect();
                            sc.diags.push(
                                Diagnostic::error(id.loc, format!("unknown check `{}`", id.text))
                                    .with_hint(format!("known checks: {}", names.join(", "))),
                            );
                        }
                    }
                }
                if size.as_int() == Some(0) {
                    sc.diags.push(Diagnostic::error(size.loc, "size must be at least 1"));
                }
                if let Some(m) = mutation {
                    if m.text.parse::<Mutation>().is_err() {
                        let names: Vec<&str> = Mutation::ALL.iter().map(|m| m.name()).collect();
                        sc.diags.push(
                            Diagnostic::error(m.loc, format!("unknown mutation `{}`", m.text))
                                .with_hint(format!("known mutations: {}", names.join(", "))),
                        );
                    }
                }
            }
            StmtKind::Assert { claim } => match claim {
                Claim::Equal(l, r) => {
                    for t in l.terms.iter().chain(&r.terms) {
                        match t {
                            FnTerm::Name(n) => {
                                sc.expect_fn(n);
                            }
                            FnTerm::Id(s) => {
                                sc.expect_set(s);
                            }
                        }
                    }
                }
                Claim::Card(SetExpr::Name(n), _) => {
                    sc.expect_set(n);
                }
                Claim::Card(SetExpr::Call(call), _) => {
                    if let Some(outs) = check_call(&mut sc, call) {
                        if !matches!(outs.first(), Some(Out::Set)) {
                            sc.diags.push(Diagnostic::error(call.kind.loc, format!("`{}` does not yield a set", call.kind.text)));
                        }
                    }
                }
                Claim::Apply { f, arg, value } => match sc.lookup(f) {
                    Some(Sym::Fn(shape)) => {
                        if let Some((dom, _)) = &shape {
                            if !dom.contains(&arg.text) {
                                sc.diags.push(Diagnostic::error(arg.loc, format!("value not in domain: `{}`", arg.text)));
                            }
                        }
                        sc.in_cod(&shape, value);
                    }
                    Some(Sym::Seq) => {
                        if arg.as_int().is_none() {
                            sc.diags.push(Diagnostic::error(arg.loc, format!("sequence index `{}` is not a number", arg.text)));
                        }
                    }
                    Some(other) => {
                        sc.diags.push(Diagnostic::error(f.loc, format!("`{}` is {}, not applicable", f.text, other.describe())));
                    }
                    None => {}
                },
            },
        }
    }
    sc.diags
}

fn literal_elems(sc: &mut Scope, n: &Name) -> Option<Vec<String>> {
    match sc.expect_set(n)? {
        Sym::Set(Some(elems)) => Some(elems),
        _ => {
            sc.diags.push(
                Diagnostic::error(n.loc, format!("`{}` is not a declared set", n.text))
                    .with_hint("functions can only be declared between sets written with `set`"),
            );
            None
        }
    }
}

fn check_mapping(sc: &mut Scope, loc: Loc, name: &Name, dom: &[String], cod: &[String], map: &[(Name, Name)]) {
    let mut covered: Vec<&str> = Vec::new();
    for (x, y) in map {
        if !dom.contains(&x.text) {
            sc.diags.push(Diagnostic::error(x.loc, format!("value not in domain: `{}`", x.text)));
        } else if covered.contains(&x.text.as_str()) {
            sc.diags.push(Diagnostic::error(x.loc, format!("duplicate mapping for `{}`", x.text)));
        } else {
            covered.push(&x.text);
        }
        if !cod.contains(&y.text) {
            sc.diags.push(Diagnostic::error(y.loc, format!("value not in codomain: `{}`", y.text)));
        }
    }
    let missing: Vec<&str> = dom.iter().map(String::as_str).filter(|x| !covered.contains(x)).collect();
    if !missing.is_empty() {
        sc.diags.push(
            Diagnostic::error(loc, format!("function `{}` is not total", name.text))
                .with_hint(format!("add mappings for: {}", missing.join(", "))),
        );
    }
}

fn check_call(sc: &mut Scope, call: &Call) -> Option<&'static [Out]> {
    let Some((params, outs)) = signature(&call.kind.text) else {
        sc.diags.push(
            Diagnostic::error(call.kind.loc, format!("unknown construction `{}`", call.kind.text))
                .with_hint(format!("known constructions: {}", KINDS.join(", "))),
        );
        return None;
    };
    if call.args.len() != params.len() {
        sc.diags.push(Diagnostic::error(
            call.kind.loc,
            format!("`{}` takes {} argument(s), found {}", call.kind.text, params.len(), call.args.len()),
        ));
        return Some(outs);
    }
    let mut fn_shape = None;
    for (arg, kind) in call.args.iter().zip(params) {
        match (arg, kind) {
            (Arg::Relation { .. }, ArgKind::Relation) => {}
            (Arg::Relation { loc, .. }, _) => {
                sc.diags.push(Diagnostic::error(*loc, "a relation is not allowed here"));
            }
            (Arg::Word(n), ArgKind::Relation) => {
                sc.diags.push(Diagnostic::error(n.loc, "expected a relation `{a ~ b, ...}`"));
            }
            (Arg::Word(n), ArgKind::Set) => {
                sc.expect_set(n);
            }
            (Arg::Word(n), ArgKind::Fn) => {
                fn_shape = sc.expect_fn(n);
            }
            (Arg::Word(n), ArgKind::Element) => {
                if let Some(shape) = &fn_shape {
                    sc.in_cod(shape, n);
                }
            }
            (Arg::Word(n), ArgKind::Int) => {
                if n.as_int().is_none() {
                    sc.diags.push(Diagnostic::error(n.loc, format!("`{}` is not a number", n.text)));
                }
            }
            (Arg::Word(_), ArgKind::Base) => {}
            (Arg::Word(n), ArgKind::Step) => match sc.lookup(n) {
                Some(Sym::Fn(_) | Sym::Seq | Sym::Succ) | None => {}
                Some(other) => {
                    sc.diags.push(Diagnostic::error(n.loc, format!("`{}` is {}, expected a step", n.text, other.describe())));
                }
            },
        }
    }
    Some(outs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn errors(src: &str) -> Vec<Diagnostic> {
        parse(src).expect_err("expected diagnostics")
    }

    #[test]
    fn two_statements() {
        let s = parse("set X = {a}\nfn f : X -> X = { a |-> a }").unwrap();
        assert_eq!(s.stmts.len(), 2);
    }

    #[test]
    fn codomain_violation_is_located() {
        let d = errors("set X = {a, b}\nset Y = {0, 1}\nfn f : X -> Y = { a |-> z, b |-> 0 }");
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].message, "value not in codomain: `z`");
        assert_eq!((d[0].line, d[0].col), (3, 25));
    }

    #[test]
    fn check_all_statement() {
        let s = parse("check all size 2").unwrap();
        assert!(matches!(s.stmts[0].kind, StmtKind::Check { targets: Targets::All(_), .. }));
    }

    #[test]
    fn unbound_and_rebound() {
        let d = errors("set X = {a}\nset X = {b}\nassert |Y| == 1");
        assert_eq!(d.len(), 2);
        assert!(d[0].message.contains("already bound"));
        assert!(d[1].message.contains("unbound name `Y`"));
    }

    #[test]
    fn non_total_and_duplicate() {
        let d = errors("set X = {a, b}\nfn f : X -> X = { a |-> a, a |-> b }");
        assert!(d.iter().any(|d| d.message.contains("duplicate mapping")));
        assert!(d.iter().any(|d| d.message.contains("not total")));
    }

    #[test]
    fn syntax_errors_recover_per_line() {
        let d = errors("set X = {a\nfn = 3\nassert |X| = 1\nset Y = {b}");
        assert_eq!(d.len(), 2);
        assert_eq!((d[0].line, d[1].line), (2, 3));
    }

    #[test]
    fn construction_arity_and_binders() {
        let d = errors("set X = {a}\nlet (P, p, q, r) = product(X, X)\nlet F = funcset(X)");
        assert!(d.iter().any(|d| d.message.contains("yields 3")));
        assert!(d.iter().any(|d| d.message.contains("takes 2 argument")));
    }

    #[test]
    fn unknown_names_get_hints() {
        let d = errors("check A11 size 2\nlet P = prodcut(X)");
        assert!(d.iter().all(|d| d.hint.is_some()));
    }
}
