use super::ast::Loc;
use super::Diagnostic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    /// Letters, digits and underscores.
    Word(String),
    Eq,
    EqEq,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    Arrow,
    MapsTo,
    Dot,
    Bar,
    Tilde,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Eq => "`=`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::MapsTo => "`|->`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub loc: Loc,
}

/// Splits `src` into tokens, ending with `Eof`. Unknown characters become
/// diagnostics and are skipped.
pub(crate) fn lex(src: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut out = Vec::new();
    let mut diags = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let loc = Loc { line, col };
        let rest = |k: usize| chars.get(i + k).copied();
        let (tok, len) = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                (Tok::Word(chars[start..j].iter().collect()), j - start)
            }
            '=' if rest(1) == Some('=') => (Tok::EqEq, 2),
            '=' => (Tok::Eq, 1),
            '{' => (Tok::LBrace, 1),
            '}' => (Tok::RBrace, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            ':' => (Tok::Colon, 1),
            '.' => (Tok::Dot, 1),
            '~' => (Tok::Tilde, 1),
            '-' if rest(1) == Some('>') => (Tok::Arrow, 2),
            '|' if rest(1) == Some('-') && rest(2) == Some('>') => (Tok::MapsTo, 3),
            '|' => (Tok::Bar, 1),
            other => {
                let mut d = Diagnostic::error(loc, format!("unexpected character `{other}`"));
                if other == '-' {
                    d = d.with_hint("arrows are written `->` and mappings `|->`");
                }
                diags.push(d);
                i += 1;
                col += 1;
                continue;
            }
        };
        out.push(Token { tok, loc });
        i += len;
        col += len;
    }
    out.push(Token { tok: Tok::Eof, loc: Loc { line, col } });
    (out, diags)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let (toks, diags) = lex("fn f : X -> Y = { a |-> 0 } # note\nassert |X| == 2");
        assert!(diags.is_empty());
        let kinds: Vec<&Tok> = toks.iter().map(|t| &t.tok).collect();
        assert_eq!(kinds[4], &Tok::Arrow);
        assert_eq!(kinds[9], &Tok::MapsTo);
        let bar = toks.iter().find(|t| t.tok == Tok::Bar).unwrap();
        assert_eq!((bar.loc.line, bar.loc.col), (2, 8));
        assert_eq!(toks.last().unwrap().tok, Tok::Eof);
    }

    #[test]
    fn stray_character() {
        let (_, diags) = lex("set X = {a; b}");
        assert_eq!(diags.len(), 1);
        assert_eq!((diags[0].line, diags[0].col), (1, 11));
    }
}
