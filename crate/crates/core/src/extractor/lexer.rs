//! Token stream for the declaration parser.
//!
//! Comments, string/char/text-block literals and numbers are reduced to
//! opaque tokens (or dropped entirely, for comments). Punctuation is emitted
//! one character at a time; `>>` therefore arrives as two `>` tokens, which
//! is what generic-argument tracking wants.

use super::Diagnostic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Punct(char),
    Literal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
}

impl Token {
    pub fn is_punct(&self, c: char) -> bool {
        self.kind == TokenKind::Punct(c)
    }

    pub fn ident(&self) -> Option<&str> {
        match &self.kind {
            TokenKind::Ident(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_ident(&self, word: &str) -> bool {
        self.ident() == Some(word)
    }
}

pub fn is_identifier_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

pub fn is_identifier_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

pub fn tokenize(text: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    Lexer::new(text).run()
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    tokens: Vec<Token>,
    diagnostics: Vec<Diagnostic>,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            line: 1,
            tokens: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }

    fn push(&mut self, kind: TokenKind, line: usize) {
        self.tokens.push(Token { kind, line });
    }

    fn warn(&mut self, line: usize, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            line,
            message: message.into(),
        });
    }

    fn run(mut self) -> (Vec<Token>, Vec<Diagnostic>) {
        while let Some(c) = self.peek() {
            let line = self.line;
            match c {
                c if c.is_whitespace() => {
                    self.bump();
                }
                '/' if self.peek2() == Some('/') => self.line_comment(),
                '/' if self.peek2() == Some('*') => self.block_comment(line),
                '"' => self.string_literal(line),
                '\'' => self.char_literal(line),
                c if c.is_ascii_digit() => self.number(line),
                '.' if self.peek2().is_some_and(|d| d.is_ascii_digit()) => self.number(line),
                c if is_identifier_start(c) => {
                    let mut word = String::new();
                    while let Some(c) = self.peek() {
                        if !is_identifier_part(c) {
                            break;
                        }
                        word.push(c);
                        self.bump();
                    }
                    self.push(TokenKind::Ident(word), line);
                }
                c => {
                    self.bump();
                    if c.is_ascii_punctuation() {
                        self.push(TokenKind::Punct(c), line);
                    } else {
                        self.warn(line, format!("unexpected character {c:?}"));
                    }
                }
            }
        }
        (self.tokens, self.diagnostics)
    }

    fn line_comment(&mut self) {
        while let Some(c) = self.peek() {
            if c == '\n' {
                break;
            }
            self.bump();
        }
    }

    fn block_comment(&mut self, line: usize) {
        self.bump();
        self.bump();
        let mut prev = '\0';
        loop {
            match self.bump() {
                Some('/') if prev == '*' => return,
                Some(c) => prev = c,
                None => {
                    self.warn(line, "unterminated block comment");
                    return;
                }
            }
        }
    }

    fn string_literal(&mut self, line: usize) {
        self.bump();
        if self.peek() == Some('"') && self.peek2() == Some('"') {
            self.bump();
            self.bump();
            self.text_block(line);
            return;
        }
        loop {
            match self.peek() {
                Some('\\') => {
                    self.bump();
                    self.bump();
                }
                Some('"') => {
                    self.bump();
                    break;
                }
                Some('\n') | None => {
                    self.warn(line, "unterminated string literal");
                    break;
                }
                Some(_) => {
                    self.bump();
                }
            }
        }
        self.push(TokenKind::Literal, line);
    }

    fn text_block(&mut self, line: usize) {
        let mut quotes = 0;
        loop {
            match self.bump() {
                Some('\\') => {
                    self.bump();
                    quotes = 0;
                }
                Some('"') => {
                    quotes += 1;
                    if quotes == 3 {
                        break;
                    }
                }
                Some(_) => quotes = 0,
                None => {
                    self.warn(line, "unterminated text block");
                    break;
                }
            }
        }
        self.push(TokenKind::Literal, line);
    }

    fn char_literal(&mut self, line: usize) {
        self.bump();
        loop {
            match self.peek() {
                Some('\\') => {
                    self.bump();
                    self.bump();
                }
                Some('\'') => {
                    self.bump();
                    break;
                }
                Some('\n') | None => {
                    self.warn(line, "unterminated character literal");
                    break;
                }
                Some(_) => {
                    self.bump();
                }
            }
        }
        self.push(TokenKind::Literal, line);
    }

    fn number(&mut self, line: usize) {
        // Covers hex, binary, underscores, exponents and type suffixes.
        let mut prev = '\0';
        while let Some(c) = self.peek() {
            let exponent_sign = (c == '+' || c == '-') && matches!(prev, 'e' | 'E' | 'p' | 'P');
            if c.is_ascii_alphanumeric() || c == '_' || c == '.' || exponent_sign {
                prev = c;
                self.bump();
            } else {
                break;
            }
        }
        self.push(TokenKind::Literal, line);
    }
}
