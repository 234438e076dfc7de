//! Token grammar shared by every word type.
//!
//! Tokens are whitespace separated: `s0 s1 s2` for plain letters, a `-`
//! suffix for inverses (`s1-`), `h0 h1 h2` for hatted letters. `#` starts a
//! comment running to the end of the line. No tokens is the empty word.

use std::fmt;
use std::str::FromStr;

use crate::braid::{Atom, PlainWord, SignedAtom, SignedWord};
use crate::error::ParseError;
use crate::hatted::{HattedLetter, HattedSignedWord, HattedWord, SignedHattedLetter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Token {
    Plain(Atom),
    Inverse(Atom),
    Hatted(Atom),
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub(crate) fn parse_token(tok: &str, line: usize) -> Result<Token, ParseError> {
    let unknown = || ParseError::UnknownToken { token: tok.to_string(), line };
    let bytes = tok.as_bytes();
    let index = |b: u8| Atom::new(b.wrapping_sub(b'0'));
    match bytes {
        [b's', d] => index(*d).map(Token::Plain).ok_or_else(unknown),
        [b's', d, b'-'] => index(*d).map(Token::Inverse).ok_or_else(unknown),
        [b'h', d] => index(*d).map(Token::Hatted).ok_or_else(unknown),
        _ => Err(unknown()),
    }
}

/// Tokens of `input` with their 1-based line numbers.
pub(crate) fn tokenize(input: &str) -> Result<Vec<(Token, usize, &str)>, ParseError> {
    let mut out = Vec::new();
    for (n, line) in input.lines().enumerate() {
        for tok in strip_comment(line).split_whitespace() {
            out.push((parse_token(tok, n + 1)?, n + 1, tok));
        }
    }
    Ok(out)
}

fn disallowed(tok: &str, line: usize, context: &'static str) -> ParseError {
    ParseError::Disallowed { token: tok.to_string(), line, context }
}

impl FromStr for PlainWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        tokenize(s)?
            .into_iter()
            .map(|(t, line, tok)| match t {
                Token::Plain(a) => Ok(a),
                _ => Err(disallowed(tok, line, "a positive word")),
            })
            .collect()
    }
}

impl FromStr for SignedWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        tokenize(s)?
            .into_iter()
            .map(|(t, line, tok)| match t {
                Token::Plain(a) => Ok(SignedAtom::pos(a)),
                Token::Inverse(a) => Ok(SignedAtom::neg(a)),
                Token::Hatted(_) => Err(disallowed(tok, line, "a signed word")),
            })
            .collect()
    }
}

impl FromStr for HattedWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        tokenize(s)?
            .into_iter()
            .map(|(t, line, tok)| match t {
                Token::Plain(a) => Ok(HattedLetter::plain(a)),
                Token::Hatted(a) => Ok(HattedLetter::hatted(a)),
                Token::Inverse(_) => Err(disallowed(tok, line, "a hatted word")),
            })
            .collect()
    }
}

impl FromStr for HattedSignedWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(tokenize(s)?
            .into_iter()
            .map(|(t, _, _)| match t {
                Token::Plain(a) => SignedHattedLetter::Letter(HattedLetter::plain(a)),
                Token::Hatted(a) => SignedHattedLetter::Letter(HattedLetter::hatted(a)),
                Token::Inverse(a) => SignedHattedLetter::Inverse(a),
            })
            .collect())
    }
}

pub(crate) fn write_tokens<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl IntoIterator<Item = T>,
) -> fmt::Result {
    for (i, item) in items.into_iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

impl fmt::Display for PlainWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, self.iter())
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, self.iter())
    }
}
