//! Reading graphs with characters from JSON or DOT, and writing them back as JSON.
//!
//! JSON input:
//!
//! ```json
//! {"vertices": ["a", "b"], "edges": [["a", "b"]], "character": {"a": 1, "b": 2}}
//! ```
//!
//! DOT input is an undirected `graph` whose nodes carry an integer attribute `n`:
//!
//! ```text
//! graph { a [n=1]; b [n=2]; a -- b }
//! ```
//!
//! In both formats the vertex order is the order of first declaration.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Character, SimplicialGraph};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    character: BTreeMap<String, i64>,
}

/// Parses JSON or DOT, chosen by the first non-blank character.
pub fn parse_input(bytes: &[u8]) -> Result<(SimplicialGraph, Character)> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| Error::parse(format!("byte {}", e.valid_up_to()), "input is not UTF-8"))?;
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_dot(text)
    }
}

pub fn parse_json(text: &str) -> Result<(SimplicialGraph, Character)> {
    let doc: InputDocument = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let graph = SimplicialGraph::new(doc.vertices, doc.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))
        .map_err(|e| Error::parse("edges", e.to_string()))?;
    let chi = Character::from_map(&graph, &doc.character).map_err(|e| Error::parse("character", e.to_string()))?;
    Ok((graph, chi))
}

/// Canonical JSON form of an input, optionally with a free-text description.
pub fn to_json_input(graph: &SimplicialGraph, chi: &Character, description: Option<&str>) -> String {
    let names = graph.vertices();
    let doc = InputDocument {
        description: description.map(str::to_owned),
        vertices: names.to_vec(),
        edges: graph.edges().map(|(a, b)| (names[a].clone(), names[b].clone())).collect(),
        character: names.iter().cloned().zip(chi.values().iter().copied()).collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("input documents serialize");
    out.push('\n');
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Id(String),
    Punct(&'static str),
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.char_indices().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn here(&self) -> String {
        format!("line {} column {}", self.line, self.col)
    }

    fn tokens(mut self) -> Result<Vec<(Token, String)>> {
        let mut out = Vec::new();
        let mut line_start = true;
        while let Some(c) = self.peek() {
            if c == '\n' {
                line_start = true;
                self.bump();
                continue;
            }
            if c.is_whitespace() {
                self.bump();
                continue;
            }
            let at = self.here();
            if c == '#' && line_start {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
                continue;
            }
            line_start = false;
            if c == '/' {
                self.bump();
                match self.bump() {
                    Some('/') => {
                        while self.peek().is_some_and(|c| c != '\n') {
                            self.bump();
                        }
                    }
                    Some('*') => {
                        let mut prev = ' ';
                        loop {
                            match self.bump() {
                                Some('/') if prev == '*' => break,
                                Some(c) => prev = c,
                                None => return Err(Error::parse(at, "unterminated comment")),
                            }
                        }
                    }
                    _ => return Err(Error::parse(at, "stray '/'")),
                }
                continue;
            }
            if c == '"' {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some('"') => s.push('"'),
                            Some(other) => {
                                s.push('\\');
                                s.push(other);
                            }
                            None => return Err(Error::parse(at, "unterminated string")),
                        },
                        Some(c) => s.push(c),
                        None => return Err(Error::parse(at, "unterminated string")),
                    }
                }
                out.push((Token::Id(s), at));
                continue;
            }
            if c == '-' {
                self.bump();
                match self.peek() {
                    Some('-') => {
                        self.bump();
                        out.push((Token::Punct("--"), at));
                    }
                    Some('>') => return Err(Error::parse(at, "directed edges are not allowed")),
                    Some(d) if d.is_ascii_digit() || d == '.' => {
                        let mut s = String::from("-");
                        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
                            s.push(self.bump().expect("peeked"));
                        }
                        out.push((Token::Id(s), at));
                    }
                    _ => return Err(Error::parse(at, "stray '-'")),
                }
                continue;
            }
            if c.is_alphanumeric() || c == '_' || c == '.' {
                let mut s = String::new();
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '.') {
                    s.push(self.bump().expect("peeked"));
                }
                out.push((Token::Id(s), at));
                continue;
            }
            let p = match c {
                '{' => "{",
                '}' => "}",
                '[' => "[",
                ']' => "]",
                '=' => "=",
                ';' => ";",
                ',' => ",",
                _ => return Err(Error::parse(at, format!("unexpected character {c:?}"))),
            };
            self.bump();
            out.push((Token::Punct(p), at));
        }
        Ok(out)
    }
}

struct DotParser {
    tokens: Vec<(Token, String)>,
    pos: usize,
    end: String,
    order: Vec<String>,
    labels: BTreeMap<String, (i64, String)>,
    edges: Vec<(String, String, String)>,
}

impl DotParser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn at(&self) -> String {
        self.tokens.get(self.pos).map_or_else(|| self.end.clone(), |(_, l)| l.clone())
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, p: &'static str) -> Result<()> {
        let at = self.at();
        match self.next() {
            Some(Token::Punct(q)) if q == p => Ok(()),
            other => Err(Error::parse(at, format!("expected '{p}', found {other:?}"))),
        }
    }

    fn id(&mut self) -> Result<String> {
        let at = self.at();
        match self.next() {
            Some(Token::Id(s)) => Ok(s),
            other => Err(Error::parse(at, format!("expected an identifier, found {other:?}"))),
        }
    }

    fn keyword(t: Option<&Token>, kw: &str) -> bool {
        matches!(t, Some(Token::Id(s)) if s.eq_ignore_ascii_case(kw))
    }

    fn declare(&mut self, v: &str) {
        if !self.order.iter().any(|u| u == v) {
            self.order.push(v.to_owned());
        }
    }

    fn attributes(&mut self) -> Result<Vec<(String, String, String)>> {
        let mut out = Vec::new();
        while self.peek() == Some(&Token::Punct("[")) {
            self.next();
            while self.peek() != Some(&Token::Punct("]")) {
                let at = self.at();
                let key = self.id()?;
                self.expect("=")?;
                let value = self.id()?;
                out.push((key, value, at));
                if matches!(self.peek(), Some(Token::Punct(",")) | Some(Token::Punct(";"))) {
                    self.next();
                }
            }
            self.expect("]")?;
        }
        Ok(out)
    }

    fn parse(mut self) -> Result<(SimplicialGraph, Character)> {
        if Self::keyword(self.peek(), "strict") {
            self.next();
        }
        if Self::keyword(self.peek(), "digraph") {
            return Err(Error::parse(self.at(), "directed graphs are not allowed"));
        }
        if !Self::keyword(self.peek(), "graph") {
            return Err(Error::parse(self.at(), "expected 'graph'"));
        }
        self.next();
        if matches!(self.peek(), Some(Token::Id(_))) {
            self.next();
        }
        self.expect("{")?;
        loop {
            match self.peek() {
                Some(Token::Punct("}")) => {
                    self.next();
                    break;
                }
                Some(Token::Punct(";")) => {
                    self.next();
                }
                None => return Err(Error::parse(self.at(), "missing '}'")),
                _ => self.statement()?,
            }
        }
        if self.pos < self.tokens.len() {
            return Err(Error::parse(self.at(), "content after the closing '}'"));
        }
        let mut values = Vec::with_capacity(self.order.len());
        for v in &self.order {
            match self.labels.get(v) {
                Some((n, _)) => values.push(*n),
                None => return Err(Error::parse(self.end.clone(), format!("vertex {v:?} has no attribute n"))),
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for (a, b, at) in &self.edges {
            if a == b {
                return Err(Error::parse(at.clone(), format!("self-loop at vertex {a:?}")));
            }
            let key = if a < b { (a, b) } else { (b, a) };
            if !seen.insert(key) {
                return Err(Error::parse(at.clone(), format!("duplicate edge {a:?} -- {b:?}")));
            }
        }
        let graph = SimplicialGraph::new(self.order.clone(), self.edges.iter().map(|(a, b, _)| (a.as_str(), b.as_str())))
            .map_err(|e| Error::parse(self.end.clone(), e.to_string()))?;
        Ok((graph, Character::new(values)))
    }

    fn statement(&mut self) -> Result<()> {
        if ["graph", "node", "edge"].iter().any(|kw| Self::keyword(self.peek(), kw))
            && self.tokens.get(self.pos + 1).map(|(t, _)| t) == Some(&Token::Punct("["))
        {
            self.next();
            self.attributes()?;
            return Ok(());
        }
        if Self::keyword(self.peek(), "subgraph") || self.peek() == Some(&Token::Punct("{")) {
            return Err(Error::parse(self.at(), "subgraphs are not supported"));
        }
        let at = self.at();
        let first = self.id()?;
        if self.peek() == Some(&Token::Punct("=")) {
            self.next();
            self.id()?;
            return Ok(());
        }
        self.declare(&first);
        let mut chain = vec![(first, at)];
        while self.peek() == Some(&Token::Punct("--")) {
            self.next();
            let at = self.at();
            let v = self.id()?;
            self.declare(&v);
            chain.push((v, at));
        }
        let attrs = self.attributes()?;
        if chain.len() == 1 {
            let v = chain[0].0.clone();
            for (key, value, at) in attrs {
                if key == "n" {
                    let n: i64 = value
                        .parse()
                        .map_err(|_| Error::parse(at.clone(), format!("attribute n = {value:?} is not an integer")))?;
                    if let Some((_, first_at)) = self.labels.get(&v) {
                        return Err(Error::parse(at, format!("vertex {v:?} already labelled at {first_at}")));
                    }
                    self.labels.insert(v.clone(), (n, at));
                }
            }
        } else {
            for w in chain.windows(2) {
                self.edges.push((w[0].0.clone(), w[1].0.clone(), w[1].1.clone()));
            }
        }
        Ok(())
    }
}

pub fn parse_dot(text: &str) -> Result<(SimplicialGraph, Character)> {
    let lines = text.lines().count().max(1);
    let parser = DotParser {
        tokens: Lexer::new(text).tokens()?,
        pos: 0,
        end: format!("line {lines} (end of input)"),
        order: Vec::new(),
        labels: BTreeMap::new(),
        edges: Vec::new(),
    };
    parser.parse()
}

/// DOT form of an input, declaring every vertex with its label before the edges.
pub fn to_dot(graph: &SimplicialGraph, chi: &Character) -> String {
    let names = graph.vertices();
    let quote = |s: &str| format!("\"{}\"", s.replace('"', "\\\""));
    let mut out = String::from("graph {\n");
    for (v, n) in names.iter().zip(chi.values()) {
        out.push_str(&format!("  {} [n={n}];\n", quote(v)));
    }
    for (a, b) in graph.edges() {
        out.push_str(&format!("  {} -- {};\n", quote(&names[a]), quote(&names[b])));
    }
    out.push_str("}\n");
    out
}
