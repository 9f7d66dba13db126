//! Recursive-descent parser for the term grammar
//!
//! ```text
//! term   := factor { factor } ;
//! factor := atom { "^+" | "^*" } ;
//! atom   := "1" | letter | "(" term ")" ;
//! ```

use std::collections::BTreeSet;

use crate::error::{ParseError, TreeError};
use crate::ops::{AlgebraMode, Operation};
use crate::term::Term;
use crate::tree::Letter;

/// The letters a term may use.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum Alphabet {
    /// Any letter; an identifier run splits into one letter per lowercase
    /// character, each keeping its trailing digits and underscores (`x1y` is `x1 y`).
    #[default]
    Unrestricted,
    /// Only these letters; an identifier run splits by longest match.
    Letters(BTreeSet<Letter>),
}

impl Alphabet {
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Alphabet::Letters(letters.into_iter().collect())
    }

    /// Parses a comma-separated list such as `a,b,c`.
    pub fn parse_list(list: &str) -> Result<Self, TreeError> {
        let letters = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Letter::new)
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(Alphabet::Letters(letters))
    }

    pub fn contains(&self, letter: &Letter) -> bool {
        match self {
            Alphabet::Unrestricted => true,
            Alphabet::Letters(set) => set.contains(letter),
        }
    }

    /// Splits an identifier run into letters.
    fn split(&self, run: &str, position: usize) -> Result<Vec<(Letter, usize)>, ParseError> {
        let mut out = Vec::new();
        let mut rest = run;
        let mut at = position;
        while !rest.is_empty() {
            let len = match self {
                Alphabet::Unrestricted => {
                    1 + rest[1..]
                        .find(|c: char| !(c.is_ascii_digit() || c == '_'))
                        .unwrap_or(rest.len() - 1)
                }
                Alphabet::Letters(set) => (1..=rest.len())
                    .rev()
                    .find(|&n| set.iter().any(|l| l.as_str() == &rest[..n]))
                    .ok_or_else(|| ParseError::UnknownLetter {
                        letter: rest.to_string(),
                        position: at,
                    })?,
            };
            let letter = Letter::new(&rest[..len]).expect("identifier runs are valid letters");
            out.push((letter, at));
            rest = &rest[len..];
            at += len;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Letter(Letter),
    One,
    Open,
    Close,
    Plus,
    Star,
}

fn tokenize(input: &str, alphabet: &Alphabet) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'(' => {
                out.push((Token::Open, i));
                i += 1;
            }
            b')' => {
                out.push((Token::Close, i));
                i += 1;
            }
            b'1' => {
                out.push((Token::One, i));
                i += 1;
            }
            b'^' => {
                let op = match bytes.get(i + 1) {
                    Some(b'+') => Token::Plus,
                    Some(b'*') => Token::Star,
                    _ => {
                        return Err(ParseError::Syntax {
                            position: i + 1,
                            message: "expected `+` or `*` after `^`".into(),
                        })
                    }
                };
                out.push((op, i));
                i += 2;
            }
            b'a'..=b'z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase()
                        || bytes[i].is_ascii_digit()
                        || bytes[i] == b'_')
                {
                    i += 1;
                }
                for (letter, at) in alphabet.split(&input[start..i], start)? {
                    out.push((Token::Letter(letter), at));
                }
            }
            _ => {
                let ch = input[i..].chars().next().expect("in bounds");
                return Err(ParseError::Syntax {
                    position: i,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    next: usize,
    end: usize,
    mode: AlgebraMode,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.next).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.next).map_or(self.end, |&(_, p)| p)
    }

    fn require(&self, op: Operation, position: usize) -> Result<(), ParseError> {
        if self.mode.allows(op) {
            Ok(())
        } else {
            Err(ParseError::OperationNotInSignature { op, position })
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.factor()?;
        while matches!(
            self.peek(),
            Some(Token::Letter(_) | Token::One | Token::Open)
        ) {
            let rhs = self.factor()?;
            acc = Term::product(acc, rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.atom()?;
        loop {
            let at = self.position();
            match self.peek() {
                Some(Token::Plus) => {
                    self.require(Operation::Plus, at)?;
                    acc = Term::plus(acc);
                }
                Some(Token::Star) => {
                    self.require(Operation::Star, at)?;
                    acc = Term::star(acc);
                }
                _ => return Ok(acc),
            }
            self.next += 1;
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let at = self.position();
        let token = self.peek().cloned();
        match token {
            Some(Token::One) => {
                self.require(Operation::Identity, at)?;
                self.next += 1;
                Ok(Term::Identity)
            }
            Some(Token::Letter(l)) => {
                self.next += 1;
                Ok(Term::Letter(l))
            }
            Some(Token::Open) => {
                self.next += 1;
                let inner = self.term()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(ParseError::Syntax {
                        position: self.position(),
                        message: "expected `)`".into(),
                    });
                }
                self.next += 1;
                Ok(inner)
            }
            Some(_) | None => Err(ParseError::Syntax {
                position: at,
                message: "expected `1`, a letter or `(`".into(),
            }),
        }
    }
}

/// Parses a term, checking letters against `alphabet` and operations against `mode`.
pub fn parse_term(input: &str, alphabet: &Alphabet, mode: AlgebraMode) -> Result<Term, ParseError> {
    let tokens = tokenize(input, alphabet)?;
    let mut parser = Parser {
        tokens,
        next: 0,
        end: input.len(),
        mode,
    };
    let term = parser.term()?;
    if parser.next < parser.tokens.len() {
        return Err(ParseError::Syntax {
            position: parser.position(),
            message: "unexpected token".into(),
        });
    }
    Ok(term)
}
