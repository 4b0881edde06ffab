//! Brace-tracking declaration parser.
//!
//! Only declaration headers are understood. Method bodies, initializer blocks
//! and field initializers are skipped by balancing delimiters, so expressions
//! are never parsed.

use std::path::Path;

use super::lexer::{Token, TokenKind};
use super::{Diagnostic, Identifier, IdentifierKind};

const MODIFIERS: &[&str] = &[
    "public",
    "protected",
    "private",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
    "sealed",
    "non",
];

const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
    "true",
    "false",
    "null",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TypeFlavor {
    Class,
    Enum,
    Record,
}

pub struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    file: &'a Path,
    scope: Vec<String>,
    pub identifiers: Vec<Identifier>,
    pub diagnostics: Vec<Diagnostic>,
}

impl<'a> Parser<'a> {
    pub fn new(toks: &'a [Token], file: &'a Path) -> Self {
        Self {
            toks,
            pos: 0,
            file,
            scope: Vec::new(),
            identifiers: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&'a Token> {
        self.toks.get(self.pos + offset)
    }

    fn at_punct(&self, c: char) -> bool {
        self.peek().is_some_and(|t| t.is_punct(c))
    }

    fn at_ident(&self, word: &str) -> bool {
        self.peek().is_some_and(|t| t.is_ident(word))
    }

    fn current_line(&self) -> usize {
        self.peek()
            .or_else(|| self.toks.last())
            .map_or(1, |t| t.line)
    }

    fn warn(&mut self, line: usize, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            line,
            message: message.into(),
        });
    }

    fn emit(&mut self, kind: IdentifierKind, name: &str, line: usize) {
        let qualified_name = if self.scope.is_empty() {
            name.to_owned()
        } else {
            format!("{}.{}", self.scope.join("."), name)
        };
        self.emit_qualified(kind, name, qualified_name, line);
    }

    fn emit_qualified(&mut self, kind: IdentifierKind, name: &str, qualified: String, line: usize) {
        let ordinal = self.identifiers.len();
        self.identifiers.push(Identifier {
            kind,
            simple_name: name.to_owned(),
            qualified_name: qualified,
            file: self.file.to_path_buf(),
            line,
            ordinal,
        });
    }

    pub fn parse_compilation_unit(&mut self) {
        while let Some(tok) = self.peek() {
            if tok.is_punct(';') {
                self.pos += 1;
            } else if tok.is_punct('@') && !self.at_annotation_type_decl() {
                self.skip_annotation();
            } else if tok.ident().is_some_and(|w| MODIFIERS.contains(&w)) {
                self.skip_modifier();
            } else if tok.is_ident("package") {
                self.parse_package();
            } else if tok.is_ident("import") {
                self.skip_past(';');
            } else if let Some(flavor) = self.type_decl_start() {
                self.parse_type_decl(flavor);
            } else if tok.is_ident("module") || tok.is_ident("open") {
                // module-info.java declares no OO elements.
                self.skip_past_block();
            } else if tok.is_punct('}') {
                self.warn(tok.line, "unmatched '}' at top level");
                self.pos += 1;
            } else {
                self.warn(
                    tok.line,
                    format!("unexpected {} at top level", describe(tok)),
                );
                self.recover_top_level();
            }
        }
    }

    fn parse_package(&mut self) {
        self.pos += 1;
        let mut segments: Vec<&str> = Vec::new();
        let mut line = self.current_line();
        while let Some(tok) = self.peek() {
            match &tok.kind {
                TokenKind::Ident(s) => {
                    segments.push(s);
                    line = tok.line;
                }
                TokenKind::Punct('.') => {}
                TokenKind::Punct(';') => {
                    self.pos += 1;
                    break;
                }
                _ => {
                    self.warn(tok.line, "malformed package declaration");
                    self.recover_top_level();
                    return;
                }
            }
            self.pos += 1;
        }
        if let Some(last) = segments.last() {
            let qualified = segments.join(".");
            self.emit_qualified(IdentifierKind::Package, last, qualified, line);
            self.scope = segments.iter().map(|s| (*s).to_owned()).collect();
        } else {
            self.warn(line, "package declaration without a name");
        }
    }

    fn at_annotation_type_decl(&self) -> bool {
        self.at_punct('@') && self.peek_at(1).is_some_and(|t| t.is_ident("interface"))
    }

    /// Recognizes the start of a type declaration without consuming it.
    fn type_decl_start(&self) -> Option<TypeFlavor> {
        let tok = self.peek()?;
        if self.at_annotation_type_decl() || tok.is_ident("class") || tok.is_ident("interface") {
            return Some(TypeFlavor::Class);
        }
        if tok.is_ident("enum") {
            return Some(TypeFlavor::Enum);
        }
        // `record` is contextual: only `record Name (` or `record Name <` opens one.
        if tok.is_ident("record")
            && self.peek_at(1).and_then(Token::ident).is_some()
            && self
                .peek_at(2)
                .is_some_and(|t| t.is_punct('(') || t.is_punct('<'))
        {
            return Some(TypeFlavor::Record);
        }
        None
    }

    fn parse_type_decl(&mut self, flavor: TypeFlavor) {
        if self.at_punct('@') {
            self.pos += 1;
        }
        let keyword_line = self.current_line();
        self.pos += 1;
        let Some(name_tok) = self.peek() else {
            self.warn(keyword_line, "type declaration cut off at end of file");
            return;
        };
        let Some(name) = name_tok.ident().filter(|n| !is_keyword(n)) else {
            self.warn(name_tok.line, "type declaration without a name");
            self.recover_top_level();
            return;
        };
        self.pos += 1;
        self.emit(IdentifierKind::Class, name, name_tok.line);
        self.scope.push(name.to_owned());

        if flavor == TypeFlavor::Record {
            if self.at_punct('<') {
                self.skip_balanced('<', '>');
            }
            if self.at_punct('(') {
                self.parse_record_components();
            }
        }

        // Skip type parameters, extends/implements/permits clauses.
        let mut angle = 0usize;
        loop {
            match self.peek() {
                None => {
                    self.warn(keyword_line, format!("missing body for type {name}"));
                    break;
                }
                Some(t) if t.is_punct('<') => angle += 1,
                Some(t) if t.is_punct('>') => angle = angle.saturating_sub(1),
                Some(t) if t.is_punct('@') => {
                    self.skip_annotation();
                    continue;
                }
                Some(t) if t.is_punct('{') && angle == 0 => {
                    self.pos += 1;
                    if flavor == TypeFlavor::Enum && !self.parse_enum_constants() {
                        break;
                    }
                    self.parse_class_body(name);
                    break;
                }
                Some(t) if t.is_punct(';') || t.is_punct('}') => {
                    self.warn(t.line, format!("missing body for type {name}"));
                    break;
                }
                Some(_) => {}
            }
            self.pos += 1;
        }
        self.scope.pop();
    }

    fn parse_record_components(&mut self) {
        let close = self.matching_close(self.pos, '(', ')');
        self.pos += 1;
        let mut last_ident: Option<&'a Token> = None;
        let mut angle = 0usize;
        while self.pos < close {
            let tok = &self.toks[self.pos];
            match &tok.kind {
                TokenKind::Punct('@') => {
                    self.skip_annotation();
                    continue;
                }
                TokenKind::Punct('<') => angle += 1,
                TokenKind::Punct('>') => angle = angle.saturating_sub(1),
                TokenKind::Punct(',') if angle == 0 => {
                    if let Some(t) = last_ident.take() {
                        self.emit(
                            IdentifierKind::Attribute,
                            t.ident().unwrap_or_default(),
                            t.line,
                        );
                    }
                }
                TokenKind::Ident(s) if !is_keyword(s) => last_ident = Some(tok),
                _ => {}
            }
            self.pos += 1;
        }
        if let Some(t) = last_ident {
            self.emit(
                IdentifierKind::Attribute,
                t.ident().unwrap_or_default(),
                t.line,
            );
        }
        self.pos = (close + 1).min(self.toks.len());
    }

    /// Parses enum constants after the opening brace. Returns false if the
    /// enum body closed (or the file ended) while reading the constants.
    fn parse_enum_constants(&mut self) -> bool {
        loop {
            while self.at_punct('@') {
                self.skip_annotation();
            }
            let Some(tok) = self.peek() else {
                self.warn(
                    self.current_line(),
                    "reached end of file inside enum constants",
                );
                return false;
            };
            match &tok.kind {
                TokenKind::Punct(';') => {
                    self.pos += 1;
                    return true;
                }
                TokenKind::Punct('}') => {
                    self.pos += 1;
                    return false;
                }
                TokenKind::Punct(',') => {
                    self.pos += 1;
                }
                TokenKind::Ident(name) if !is_keyword(name) => {
                    self.emit(IdentifierKind::Attribute, name, tok.line);
                    self.pos += 1;
                    if self.at_punct('(') {
                        self.skip_balanced('(', ')');
                    }
                    if self.at_punct('{') {
                        self.skip_balanced('{', '}');
                    }
                }
                _ => return true,
            }
        }
    }

    /// Parses members until the closing brace of the current body.
    fn parse_class_body(&mut self, owner: &str) {
        let open_line = self.current_line();
        loop {
            let Some(tok) = self.peek() else {
                self.warn(
                    open_line,
                    format!("reached end of file inside body of {owner}"),
                );
                return;
            };
            if tok.is_punct('}') {
                self.pos += 1;
                return;
            } else if tok.is_punct(';') {
                self.pos += 1;
            } else if tok.is_punct('{') {
                self.skip_balanced('{', '}');
            } else if tok.is_punct('@') && !self.at_annotation_type_decl() {
                self.skip_annotation();
            } else if tok.is_ident("static") && self.peek_at(1).is_some_and(|t| t.is_punct('{')) {
                self.pos += 1;
                self.skip_balanced('{', '}');
            } else if tok.ident().is_some_and(|w| MODIFIERS.contains(&w)) {
                self.skip_modifier();
            } else if let Some(flavor) = self.type_decl_start() {
                self.parse_type_decl(flavor);
            } else if tok.is_punct('<') {
                self.skip_balanced('<', '>');
            } else if tok.ident().is_some() {
                self.parse_member();
            } else {
                self.warn(
                    tok.line,
                    format!("unexpected {} in body of {owner}", describe(tok)),
                );
                self.recover_member();
            }
        }
    }

    fn parse_member(&mut self) {
        let start_line = self.current_line();
        let mut angle = 0usize;
        let mut bracket = 0usize;
        let mut name: Option<&'a Token> = None;
        loop {
            let Some(tok) = self.peek() else {
                self.warn(start_line, "declaration cut off at end of file");
                return;
            };
            match &tok.kind {
                TokenKind::Punct('@') => {
                    self.skip_annotation();
                    continue;
                }
                TokenKind::Punct('<') => angle += 1,
                TokenKind::Punct('>') => angle = angle.saturating_sub(1),
                TokenKind::Punct('[') => bracket += 1,
                TokenKind::Punct(']') => bracket = bracket.saturating_sub(1),
                TokenKind::Punct(c @ ('(' | '=' | ';' | ',' | '{' | '}'))
                    if angle == 0 && bracket == 0 =>
                {
                    let stop = *c;
                    let Some(name_tok) = name else {
                        self.warn(
                            tok.line,
                            format!("declaration without a name before '{stop}'"),
                        );
                        self.recover_member();
                        return;
                    };
                    let name = name_tok.ident().unwrap_or_default();
                    match stop {
                        '(' => {
                            self.emit(IdentifierKind::Method, name, name_tok.line);
                            self.skip_balanced('(', ')');
                            self.skip_method_tail();
                        }
                        '=' | ';' | ',' => {
                            self.emit(IdentifierKind::Attribute, name, name_tok.line);
                            self.parse_declarator_tail();
                        }
                        _ => {
                            self.warn(tok.line, format!("unexpected '{stop}' after {name}"));
                            if stop == '{' {
                                self.skip_balanced('{', '}');
                            }
                        }
                    }
                    return;
                }
                TokenKind::Ident(s) if angle == 0 && bracket == 0 && !is_keyword(s) => {
                    name = Some(tok);
                }
                _ => {}
            }
            self.pos += 1;
        }
    }

    /// After a method's parameter list: throws clause, then a body or `;`.
    fn skip_method_tail(&mut self) {
        while let Some(tok) = self.peek() {
            if tok.is_punct('{') {
                self.skip_balanced('{', '}');
                return;
            }
            if tok.is_punct(';') {
                self.pos += 1;
                return;
            }
            if tok.is_punct('}') {
                self.warn(tok.line, "method declaration without body or ';'");
                return;
            }
            self.pos += 1;
        }
    }

    /// Positioned on `=`, `,` or `;` following a field name.
    fn parse_declarator_tail(&mut self) {
        loop {
            let Some(tok) = self.peek() else { return };
            match tok.kind {
                TokenKind::Punct(';') => {
                    self.pos += 1;
                    return;
                }
                TokenKind::Punct('=') => {
                    self.pos += 1;
                    if !self.skip_initializer() {
                        return;
                    }
                }
                TokenKind::Punct(',') => {
                    self.pos += 1;
                    while self.at_punct('@') {
                        self.skip_annotation();
                    }
                    match self.peek() {
                        Some(t) if t.ident().is_some_and(|n| !is_keyword(n)) => {
                            self.emit(
                                IdentifierKind::Attribute,
                                t.ident().unwrap_or_default(),
                                t.line,
                            );
                            self.pos += 1;
                            while self.at_punct('[') || self.at_punct(']') {
                                self.pos += 1;
                            }
                        }
                        Some(t) => {
                            self.warn(t.line, "expected a field name after ','");
                            self.recover_member();
                            return;
                        }
                        None => return,
                    }
                }
                _ => {
                    self.warn(
                        tok.line,
                        format!("unexpected {} in field declaration", describe(tok)),
                    );
                    self.recover_member();
                    return;
                }
            }
        }
    }

    /// Skips an initializer expression up to (not including) the `,` or `;`
    /// that ends it. Returns false when the body's closing brace or end of
    /// file was hit instead.
    fn skip_initializer(&mut self) -> bool {
        let mut depth = 0usize;
        while let Some(tok) = self.peek() {
            match tok.kind {
                TokenKind::Punct('(' | '[' | '{') => depth += 1,
                TokenKind::Punct(')' | ']') => depth = depth.saturating_sub(1),
                TokenKind::Punct('}') => {
                    if depth == 0 {
                        self.warn(tok.line, "field initializer not terminated by ';'");
                        return false;
                    }
                    depth -= 1;
                }
                TokenKind::Punct(',' | ';') if depth == 0 => return true,
                _ => {}
            }
            self.pos += 1;
        }
        false
    }

    fn skip_modifier(&mut self) {
        // `non-sealed` lexes as `non`, `-`, `sealed`.
        if self.at_ident("non")
            && self.peek_at(1).is_some_and(|t| t.is_punct('-'))
            && self.peek_at(2).is_some_and(|t| t.is_ident("sealed"))
        {
            self.pos += 3;
        } else {
            self.pos += 1;
        }
    }

    /// `@Name(.Name)*` with an optional balanced argument list.
    fn skip_annotation(&mut self) {
        self.pos += 1;
        if self.peek().is_some_and(|t| t.ident().is_some()) {
            self.pos += 1;
        }
        while self.at_punct('.') && self.peek_at(1).is_some_and(|t| t.ident().is_some()) {
            self.pos += 2;
        }
        if self.at_punct('(') {
            self.skip_balanced('(', ')');
        }
    }

    /// Index of the token closing the group opened at `from`, or the token
    /// count if the group never closes.
    fn matching_close(&self, from: usize, open: char, close: char) -> usize {
        let mut depth = 0usize;
        for (i, tok) in self.toks.iter().enumerate().skip(from) {
            if tok.is_punct(open) {
                depth += 1;
            } else if tok.is_punct(close) {
                depth -= 1;
                if depth == 0 {
                    return i;
                }
            }
        }
        self.toks.len()
    }

    /// Positioned on `open`; moves past its matching `close`.
    fn skip_balanced(&mut self, open: char, close: char) {
        let line = self.current_line();
        let end = self.matching_close(self.pos, open, close);
        if end >= self.toks.len() {
            self.warn(line, format!("unbalanced '{open}' never closed"));
            self.pos = self.toks.len();
        } else {
            self.pos = end + 1;
        }
    }

    fn skip_past(&mut self, stop: char) {
        while let Some(tok) = self.peek() {
            self.pos += 1;
            if tok.is_punct(stop) {
                return;
            }
        }
    }

    fn skip_past_block(&mut self) {
        while let Some(tok) = self.peek() {
            if tok.is_punct('{') {
                self.skip_balanced('{', '}');
                return;
            }
            self.pos += 1;
        }
    }

    /// Skips to the next `}` that closes back to top level.
    fn recover_top_level(&mut self) {
        let mut depth = 0usize;
        while let Some(tok) = self.peek() {
            self.pos += 1;
            if tok.is_punct('{') {
                depth += 1;
            } else if tok.is_punct('}') {
                if depth <= 1 {
                    return;
                }
                depth -= 1;
            }
        }
    }

    /// Skips a malformed member: through the next `;` or balanced block at
    /// this depth, stopping before the enclosing body's `}`.
    fn recover_member(&mut self) {
        let mut depth = 0usize;
        while let Some(tok) = self.peek() {
            match tok.kind {
                TokenKind::Punct('(' | '[') => depth += 1,
                TokenKind::Punct(')' | ']') => depth = depth.saturating_sub(1),
                TokenKind::Punct('{') if depth == 0 => {
                    self.skip_balanced('{', '}');
                    return;
                }
                TokenKind::Punct('{') => depth += 1,
                TokenKind::Punct('}') if depth == 0 => return,
                TokenKind::Punct('}') => depth -= 1,
                TokenKind::Punct(';') if depth == 0 => {
                    self.pos += 1;
                    return;
                }
                _ => {}
            }
            self.pos += 1;
        }
    }
}

fn describe(tok: &Token) -> String {
    match &tok.kind {
        TokenKind::Ident(s) => format!("identifier `{s}`"),
        TokenKind::Punct(c) => format!("'{c}'"),
        TokenKind::Literal => "literal".to_owned(),
    }
}
