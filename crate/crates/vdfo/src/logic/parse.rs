//! Recursive-descent parser for the formula grammar.
//!
//! Grammar: a prefix of `A <var>` / `E <var>` tokens (nested parenthesized
//! prenex scopes are allowed), then a matrix with atoms `x ~ y`, `R(x,...)`,
//! `x = y`, `x != y`, constants `true`/`false`, and connectives `!`, `&`,
//! `|`, `->`. Precedence `!` > `&` > `|` > `->`; implication is
//! right-associative. `x ~ y` is sugar for `adj(x,y)`; `x != y` for
//! `!(x = y)`.

use std::collections::HashMap;

use super::{Formula, LogicError, Matrix, Quantifier};
use crate::structures::ADJ;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Tilde,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Eq,
    Neq,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, LogicError> {
    let mut toks = Vec::new();
    for (lno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut chars = line.char_indices().peekable();
        while let Some(&(i, c)) = chars.peek() {
            let (lnum, col) = (lno + 1, i + 1);
            match c {
                c if c.is_whitespace() => {
                    chars.next();
                }
                '(' => {
                    chars.next();
                    toks.push(Spanned {
                        tok: Tok::LParen,
                        line: lnum,
                        col,
                    });
                }
                ')' => {
                    chars.next();
                    toks.push(Spanned {
                        tok: Tok::RParen,
                        line: lnum,
                        col,
                    });
                }
                ',' => {
                    chars.next();
                    toks.push(Spanned {
                        tok: Tok::Comma,
                        line: lnum,
                        col,
                    });
                }
                '~' => {
                    chars.next();
                    toks.push(Spanned {
                        tok: Tok::Tilde,
                        line: lnum,
                        col,
                    });
                }
                '&' => {
                    chars.next();
                    toks.push(Spanned {
                        tok: Tok::Amp,
                        line: lnum,
                        col,
                    });
                }
                '|' => {
                    chars.next();
                    toks.push(Spanned {
                        tok: Tok::Pipe,
                        line: lnum,
                        col,
                    });
                }
                '=' => {
                    chars.next();
                    toks.push(Spanned {
                        tok: Tok::Eq,
                        line: lnum,
                        col,
                    });
                }
                '!' => {
                    chars.next();
                    if matches!(chars.peek(), Some(&(_, '='))) {
                        chars.next();
                        toks.push(Spanned {
                            tok: Tok::Neq,
                            line: lnum,
                            col,
                        });
                    } else {
                        toks.push(Spanned {
                            tok: Tok::Bang,
                            line: lnum,
                            col,
                        });
                    }
                }
                '-' => {
                    chars.next();
                    match chars.peek() {
                        Some(&(_, '>')) => {
                            chars.next();
                            toks.push(Spanned {
                                tok: Tok::Arrow,
                                line: lnum,
                                col,
                            });
                        }
                        _ => {
                            return Err(LogicError::Syntax {
                                line: lnum,
                                col,
                                message: "expected `->`".to_string(),
                            })
                        }
                    }
                }
                c if c.is_alphanumeric() || c == '_' => {
                    let mut ident = String::new();
                    while let Some(&(_, c)) = chars.peek() {
                        if c.is_alphanumeric() || c == '_' {
                            ident.push(c);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    toks.push(Spanned {
                        tok: Tok::Ident(ident),
                        line: lnum,
                        col,
                    });
                }
                other => {
                    return Err(LogicError::Syntax {
                        line: lnum,
                        col,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        }
    }
    Ok(toks)
}

// Parser-side matrix with variable names still unresolved.
#[derive(Debug, Clone)]
enum Raw {
    Const(bool),
    Rel(String, Vec<String>),
    Eq(String, String),
    Neq(String, String),
    Not(Box<Raw>),
    And(Box<Raw>, Box<Raw>),
    Or(Box<Raw>, Box<Raw>),
    Implies(Box<Raw>, Box<Raw>),
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&Spanned> {
        self.toks.get(self.pos + offset)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, message: impl Into<String>) -> LogicError {
        let (line, col) = self.peek().map(|s| (s.line, s.col)).unwrap_or_else(|| {
            self.toks
                .last()
                .map(|s| (s.line, s.col + 1))
                .unwrap_or((1, 1))
        });
        LogicError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }

    fn non_prenex_here(&self) -> LogicError {
        let (line, col) = self.peek().map(|s| (s.line, s.col)).unwrap_or((1, 1));
        LogicError::NonPrenex { line, col }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), LogicError> {
        match self.peek() {
            Some(s) if s.tok == tok => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err_here(format!("expected {what}"))),
        }
    }

    // Is the token at `offset` the start of a quantifier (`A`/`E` followed by
    // an identifier)?
    fn quantifier_at(&self, offset: usize) -> Option<Quantifier> {
        match (self.peek_at(offset), self.peek_at(offset + 1)) {
            (
                Some(Spanned {
                    tok: Tok::Ident(q), ..
                }),
                Some(Spanned {
                    tok: Tok::Ident(_), ..
                }),
            ) => match q.as_str() {
                "A" => Some(Quantifier::Forall),
                "E" => Some(Quantifier::Exists),
                _ => None,
            },
            _ => None,
        }
    }

    fn at_scope_end(&self) -> bool {
        matches!(
            self.peek(),
            None | Some(Spanned {
                tok: Tok::RParen,
                ..
            })
        )
    }

    // Parses a prenex formula up to the end of the current scope (EOF or the
    // enclosing `)`), which the caller consumes.
    fn parse_prenex(&mut self) -> Result<(Vec<(Quantifier, String)>, Raw), LogicError> {
        let mut prefix = Vec::new();
        loop {
            if let Some(q) = self.quantifier_at(0) {
                self.next();
                let var = match self.next() {
                    Some(Spanned {
                        tok: Tok::Ident(v),
                        line,
                        col,
                    }) => {
                        if matches!(v.as_str(), "A" | "E" | "true" | "false") {
                            return Err(LogicError::Syntax {
                                line,
                                col,
                                message: format!("`{v}` is reserved and cannot name a variable"),
                            });
                        }
                        v
                    }
                    _ => unreachable!("quantifier_at checked the lookahead"),
                };
                prefix.push((q, var));
                continue;
            }
            // A parenthesized sub-scope that starts with a quantifier stays
            // prenex only if nothing follows it in this scope.
            if matches!(
                self.peek(),
                Some(Spanned {
                    tok: Tok::LParen,
                    ..
                })
            ) && self.quantifier_at(1).is_some()
            {
                self.next();
                let (inner_prefix, matrix) = self.parse_prenex()?;
                self.expect(Tok::RParen, "`)`")?;
                if !self.at_scope_end() {
                    return Err(self.non_prenex_here());
                }
                prefix.extend(inner_prefix);
                return Ok((prefix, matrix));
            }
            let matrix = self.parse_expr()?;
            return Ok((prefix, matrix));
        }
    }

    fn parse_expr(&mut self) -> Result<Raw, LogicError> {
        self.parse_implies()
    }

    fn parse_implies(&mut self) -> Result<Raw, LogicError> {
        let lhs = self.parse_or()?;
        if matches!(
            self.peek(),
            Some(Spanned {
                tok: Tok::Arrow,
                ..
            })
        ) {
            self.next();
            let rhs = self.parse_implies()?;
            return Ok(Raw::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn parse_or(&mut self) -> Result<Raw, LogicError> {
        let mut lhs = self.parse_and()?;
        while matches!(self.peek(), Some(Spanned { tok: Tok::Pipe, .. })) {
            self.next();
            let rhs = self.parse_and()?;
            lhs = Raw::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Raw, LogicError> {
        let mut lhs = self.parse_unary()?;
        while matches!(self.peek(), Some(Spanned { tok: Tok::Amp, .. })) {
            self.next();
            let rhs = self.parse_unary()?;
            lhs = Raw::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Raw, LogicError> {
        match self.peek() {
            Some(Spanned { tok: Tok::Bang, .. }) => {
                self.next();
                let inner = self.parse_unary()?;
                Ok(Raw::Not(Box::new(inner)))
            }
            Some(Spanned {
                tok: Tok::LParen, ..
            }) => {
                if self.quantifier_at(1).is_some() {
                    return Err(self.non_prenex_here());
                }
                self.next();
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Spanned {
                tok: Tok::Ident(_), ..
            }) => self.parse_atom(),
            _ => Err(self.err_here("expected an atom, `!`, or `(`")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, LogicError> {
        match self.peek() {
            Some(Spanned {
                tok: Tok::Ident(v), ..
            }) => {
                let v = v.clone();
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err_here(format!("expected {what}"))),
        }
    }

    fn parse_atom(&mut self) -> Result<Raw, LogicError> {
        let name = self.ident("an identifier")?;
        match name.as_str() {
            "true" => return Ok(Raw::Const(true)),
            "false" => return Ok(Raw::Const(false)),
            "A" | "E" => {
                if matches!(
                    self.peek(),
                    Some(Spanned {
                        tok: Tok::Ident(_),
                        ..
                    })
                ) {
                    self.pos -= 1;
                    return Err(self.non_prenex_here());
                }
            }
            _ => {}
        }
        match self.peek().map(|s| s.tok.clone()) {
            Some(Tok::Tilde) => {
                self.next();
                let rhs = self.ident("a variable after `~`")?;
                Ok(Raw::Rel(ADJ.to_string(), vec![name, rhs]))
            }
            Some(Tok::Eq) => {
                self.next();
                let rhs = self.ident("a variable after `=`")?;
                Ok(Raw::Eq(name, rhs))
            }
            Some(Tok::Neq) => {
                self.next();
                let rhs = self.ident("a variable after `!=`")?;
                Ok(Raw::Neq(name, rhs))
            }
            Some(Tok::LParen) => {
                self.next();
                let mut args = vec![self.ident("a variable")?];
                while matches!(
                    self.peek(),
                    Some(Spanned {
                        tok: Tok::Comma,
                        ..
                    })
                ) {
                    self.next();
                    args.push(self.ident("a variable")?);
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(Raw::Rel(name, args))
            }
            _ => Err(self.err_here(format!("expected `~`, `=`, `!=`, or `(` after `{name}`"))),
        }
    }
}

struct Binder<'v> {
    slots: HashMap<String, usize>,
    symbols: Vec<(String, usize)>,
    vocab: Option<&'v [(&'v str, usize)]>,
}

impl Binder<'_> {
    fn var(&self, name: &str) -> Result<usize, LogicError> {
        self.slots
            .get(name)
            .copied()
            .ok_or_else(|| LogicError::FreeVariable(name.to_string()))
    }

    fn symbol(&mut self, name: &str, arity: usize) -> Result<usize, LogicError> {
        if let Some(idx) = self.symbols.iter().position(|(s, _)| s == name) {
            let declared = self.symbols[idx].1;
            if declared != arity {
                return Err(LogicError::InconsistentArity {
                    symbol: name.to_string(),
                    first: declared,
                    second: arity,
                });
            }
            return Ok(idx);
        }
        if let Some(vocab) = self.vocab {
            match vocab.iter().find(|(s, _)| *s == name) {
                None => return Err(LogicError::UnknownRelation(name.to_string())),
                Some(&(_, declared)) if declared != arity => {
                    return Err(LogicError::InconsistentArity {
                        symbol: name.to_string(),
                        first: declared,
                        second: arity,
                    })
                }
                _ => {}
            }
        }
        self.symbols.push((name.to_string(), arity));
        Ok(self.symbols.len() - 1)
    }

    fn bind(&mut self, raw: &Raw) -> Result<Matrix, LogicError> {
        Ok(match raw {
            Raw::Const(b) => Matrix::Const(*b),
            Raw::Eq(a, b) => Matrix::Eq(self.var(a)?, self.var(b)?),
            Raw::Neq(a, b) => Matrix::Not(Box::new(Matrix::Eq(self.var(a)?, self.var(b)?))),
            Raw::Rel(name, args) => {
                let rel = self.symbol(name, args.len())?;
                let args = args
                    .iter()
                    .map(|a| self.var(a))
                    .collect::<Result<Vec<_>, _>>()?;
                Matrix::Rel { rel, args }
            }
            Raw::Not(x) => Matrix::Not(Box::new(self.bind(x)?)),
            Raw::And(l, r) => Matrix::And(Box::new(self.bind(l)?), Box::new(self.bind(r)?)),
            Raw::Or(l, r) => Matrix::Or(Box::new(self.bind(l)?), Box::new(self.bind(r)?)),
            Raw::Implies(l, r) => Matrix::Implies(Box::new(self.bind(l)?), Box::new(self.bind(r)?)),
        })
    }
}

pub(super) fn parse(text: &str, vocab: Option<&[(&str, usize)]>) -> Result<Formula, LogicError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0 };
    let (prefix, raw) = parser.parse_prenex()?;
    if parser.peek().is_some() {
        return Err(parser.err_here("unexpected trailing input"));
    }
    let mut slots = HashMap::new();
    for (i, (_, v)) in prefix.iter().enumerate() {
        if slots.insert(v.clone(), i).is_some() {
            return Err(LogicError::DuplicateVariable(v.clone()));
        }
    }
    let mut binder = Binder {
        slots,
        symbols: Vec::new(),
        vocab,
    };
    let matrix = binder.bind(&raw)?;
    Ok(Formula::from_parts(prefix, binder.symbols, matrix))
}
