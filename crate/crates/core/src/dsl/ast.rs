use std::fmt;

/// A source position. Equality ignores positions, so a reformatted script
/// compares equal to the original.
#[derive(Clone, Copy, Debug, Default, Eq)]
pub struct Loc {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Loc {
    fn eq(&self, _: &Loc) -> bool {
        true
    }
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A word of the script: a binding name, an element literal or a number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub loc: Loc,
}

impl Name {
    pub fn new(text: impl Into<String>, loc: Loc) -> Name {
        Name { text: text.into(), loc }
    }

    pub fn as_int(&self) -> Option<u64> {
        self.text.parse().ok()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub loc: Loc,
    pub kind: StmtKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    /// `set X = {a, b}`
    Set { name: Name, elems: Vec<Name> },
    /// `fn f : X -> Y = {a |-> 0}`
    Fn { name: Name, dom: Name, cod: Name, map: Vec<(Name, Name)> },
    /// `let (P, p1, p2) = product(X, Y)`; `tuple` records the parenthesised form.
    Let { binders: Vec<Name>, tuple: bool, call: Call },
    /// `check A1, A5 size 2 with swap_projection`
    Check { targets: Targets, size: Name, mutation: Option<Name> },
    Assert { claim: Claim },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Call {
    pub kind: Name,
    pub args: Vec<Arg>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Word(Name),
    /// `{a ~ b, c ~ d}`
    Relation { loc: Loc, pairs: Vec<(Name, Name)> },
}

impl Arg {
    pub fn loc(&self) -> Loc {
        match self {
            Arg::Word(n) => n.loc,
            Arg::Relation { loc, .. } => *loc,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Targets {
    All(Loc),
    Ids(Vec<Name>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `g . f == h`
    Equal(FnExpr, FnExpr),
    /// `|X| == 4`
    Card(SetExpr, Name),
    /// `f(a) == b`
    Apply { f: Name, arg: Name, value: Name },
}

/// A composite `h . g . f`, stored outermost first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnExpr {
    pub terms: Vec<FnTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FnTerm {
    Name(Name),
    /// `id(X)`
    Id(Name),
}

impl FnTerm {
    pub fn loc(&self) -> Loc {
        match self {
            FnTerm::Name(n) | FnTerm::Id(n) => n.loc,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Name(Name),
    Call(Call),
}
