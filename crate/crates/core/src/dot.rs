//! Restricted DOT reader: `digraph` with quoted or bare node statements, an
//! optional `label` attribute, and `"a" -> "b";` edge statements. All other
//! attributes are ignored; undirected graphs and structural statements
//! (subgraphs, `node`/`edge` defaults) are outside the subset and rejected
//! with a position.

use crate::ingest::IngestError;
use crate::model::{RawGraph, SignatureFlavor};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Quoted(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Equals,
    Arrow,
    UndirectedEdge,
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> IngestError {
    IngestError::DotSyntax { line, column, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, IngestError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    let mut column = 1usize;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else if c.is_some() {
                column += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, column);
        match c {
            c if c.is_whitespace() => {
                bump!();
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump!();
                }
            }
            '/' => {
                bump!();
                match chars.peek() {
                    Some('/') => {
                        while chars.peek().is_some_and(|&c| c != '\n') {
                            bump!();
                        }
                    }
                    Some('*') => {
                        bump!();
                        let mut closed = false;
                        while let Some(c) = bump!() {
                            if c == '*' && chars.peek() == Some(&'/') {
                                bump!();
                                closed = true;
                                break;
                            }
                        }
                        if !closed {
                            return Err(err(tline, tcol, "unterminated block comment"));
                        }
                    }
                    _ => return Err(err(tline, tcol, "stray '/'")),
                }
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    match bump!() {
                        Some('"') => break,
                        Some('\\') => match bump!() {
                            Some(esc @ ('"' | '\\')) => s.push(esc),
                            Some(other) => {
                                s.push('\\');
                                s.push(other);
                            }
                            None => return Err(err(tline, tcol, "unterminated string")),
                        },
                        Some(c) => s.push(c),
                        None => return Err(err(tline, tcol, "unterminated string")),
                    }
                }
                tokens.push(Spanned { token: Token::Quoted(s), line: tline, column: tcol });
            }
            '{' | '}' | '[' | ']' | ';' | ',' | '=' => {
                bump!();
                let token = match c {
                    '{' => Token::LBrace,
                    '}' => Token::RBrace,
                    '[' => Token::LBracket,
                    ']' => Token::RBracket,
                    ';' => Token::Semi,
                    ',' => Token::Comma,
                    _ => Token::Equals,
                };
                tokens.push(Spanned { token, line: tline, column: tcol });
            }
            '-' => {
                bump!();
                match chars.peek() {
                    Some('>') => {
                        bump!();
                        tokens.push(Spanned { token: Token::Arrow, line: tline, column: tcol });
                    }
                    Some('-') => {
                        bump!();
                        tokens.push(Spanned {
                            token: Token::UndirectedEdge,
                            line: tline,
                            column: tcol,
                        });
                    }
                    _ => return Err(err(tline, tcol, "expected '->' after '-'")),
                }
            }
            c if c.is_alphanumeric() || "_.$".contains(c) => {
                let mut s = String::new();
                while chars
                    .peek()
                    .is_some_and(|&c| c.is_alphanumeric() || "_.$".contains(c))
                {
                    s.push(bump!().unwrap());
                }
                tokens.push(Spanned { token: Token::Ident(s), line: tline, column: tcol });
            }
            other => return Err(err(tline, tcol, format!("unexpected character {other:?}"))),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn position(&self) -> (usize, usize) {
        self.peek()
            .map(|s| (s.line, s.column))
            .or_else(|| self.tokens.last().map(|s| (s.line, s.column)))
            .unwrap_or((1, 1))
    }

    fn expect_term(&mut self) -> Result<String, IngestError> {
        let (line, column) = self.position();
        match self.next() {
            Some(Spanned { token: Token::Ident(s) | Token::Quoted(s), .. }) => Ok(s),
            _ => Err(err(line, column, "expected a node id")),
        }
    }
}

/// Parses the DOT subset into a raw graph: node id = DOT id, label = the
/// `label` attribute when present, otherwise the id; edge endpoints are
/// auto-declared.
pub fn read_dot_subset(text: &str) -> Result<RawGraph, IngestError> {
    let mut p = Parser { tokens: tokenize(text)?, pos: 0 };
    let (line, column) = p.position();
    match p.next() {
        Some(Spanned { token: Token::Ident(kw), line, column }) => match kw.as_str() {
            "digraph" => {}
            "graph" => return Err(err(line, column, "undirected graphs are not supported")),
            other => return Err(err(line, column, format!("expected 'digraph', got {other:?}"))),
        },
        _ => return Err(err(line, column, "expected 'digraph'")),
    }
    // optional graph name
    if matches!(p.peek().map(|s| &s.token), Some(Token::Ident(_) | Token::Quoted(_))) {
        p.next();
    }
    let (line, column) = p.position();
    if !matches!(p.next().map(|s| s.token), Some(Token::LBrace)) {
        return Err(err(line, column, "expected '{'"));
    }

    let mut graph = RawGraph::new(SignatureFlavor::Canonical);
    loop {
        match p.peek().map(|s| s.token.clone()) {
            Some(Token::RBrace) => {
                p.next();
                break;
            }
            Some(Token::Semi) => {
                p.next();
            }
            Some(Token::Ident(kw))
                if matches!(kw.as_str(), "node" | "edge" | "graph" | "subgraph") =>
            {
                let (line, column) = p.position();
                return Err(err(line, column, format!("unsupported statement {kw:?}")));
            }
            Some(Token::Ident(_) | Token::Quoted(_)) => {
                parse_statement(&mut p, &mut graph)?;
            }
            Some(Token::UndirectedEdge) => {
                let (line, column) = p.position();
                return Err(err(line, column, "undirected edges are not supported"));
            }
            Some(_) => {
                let (line, column) = p.position();
                return Err(err(line, column, "expected a statement"));
            }
            None => {
                let (line, column) = p.position();
                return Err(err(line, column, "unexpected end of input, missing '}'"));
            }
        }
    }
    Ok(graph)
}

fn parse_statement(p: &mut Parser, graph: &mut RawGraph) -> Result<(), IngestError> {
    let first = p.expect_term()?;
    match p.peek().map(|s| s.token.clone()) {
        Some(Token::Arrow) => {
            let mut chain = vec![first];
            while matches!(p.peek().map(|s| &s.token), Some(Token::Arrow)) {
                p.next();
                chain.push(p.expect_term()?);
            }
            if matches!(p.peek().map(|s| &s.token), Some(Token::LBracket)) {
                parse_attrs(p)?; // edge attributes carry no semantics here
            }
            for pair in chain.windows(2) {
                graph.insert_edge(pair[0].clone(), pair[1].clone());
            }
            Ok(())
        }
        Some(Token::UndirectedEdge) => {
            let (line, column) = p.position();
            Err(err(line, column, "undirected edges are not supported"))
        }
        Some(Token::LBracket) => {
            let attrs = parse_attrs(p)?;
            let label = attrs
                .iter()
                .rev()
                .find(|(k, _)| k == "label")
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| first.clone());
            graph.insert_node(first, label);
            Ok(())
        }
        _ => {
            graph.declare_node(&first);
            Ok(())
        }
    }
}

fn parse_attrs(p: &mut Parser) -> Result<Vec<(String, String)>, IngestError> {
    p.next(); // consume '['
    let mut attrs = Vec::new();
    loop {
        match p.peek().map(|s| s.token.clone()) {
            Some(Token::RBracket) => {
                p.next();
                return Ok(attrs);
            }
            Some(Token::Comma | Token::Semi) => {
                p.next();
            }
            Some(Token::Ident(_) | Token::Quoted(_)) => {
                let key = p.expect_term()?;
                let (line, column) = p.position();
                if !matches!(p.next().map(|s| s.token), Some(Token::Equals)) {
                    return Err(err(line, column, "expected '=' in attribute"));
                }
                let value = p.expect_term()?;
                attrs.push((key, value));
            }
            _ => {
                let (line, column) = p.position();
                return Err(err(line, column, "unterminated attribute list"));
            }
        }
    }
}

/// Renders a raw graph in the DOT subset (deterministic: nodes then edges,
/// both sorted).
pub fn write_dot(graph: &RawGraph) -> String {
    fn quote(s: &str) -> String {
        let escaped = s.replace('\\', "\\\\").replace('"', "\\\"");
        format!("\"{escaped}\"")
    }
    let mut out = String::from("digraph g {\n");
    for (id, label) in &graph.nodes {
        out.push_str(&format!("  {} [label={}];\n", quote(id), quote(label)));
    }
    for (src, dst) in &graph.edges {
        out.push_str(&format!("  {} -> {};\n", quote(src), quote(dst)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nodes_labels_and_edges() {
        let g = read_dot_subset(
            r#"digraph g { "n1" [label="A.f()"]; "n2" [label="A.g()"]; "n1" -> "n2"; }"#,
        )
        .unwrap();
        assert_eq!(g.nodes.get("n1").unwrap(), "A.f()");
        assert_eq!(g.nodes.get("n2").unwrap(), "A.g()");
        assert!(g.edges.contains(&("n1".to_string(), "n2".to_string())));
    }

    #[test]
    fn edge_to_undeclared_node_auto_declares() {
        let g = read_dot_subset(r#"digraph g { "a" -> "b"; }"#).unwrap();
        assert_eq!(g.nodes.get("b").unwrap(), "b");
    }

    #[test]
    fn undirected_graphs_are_out_of_subset() {
        let e = read_dot_subset("graph g { a -- b; }").unwrap_err();
        match e {
            IngestError::DotSyntax { line: 1, column: 1, message } => {
                assert!(message.contains("undirected"))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn other_attributes_are_ignored() {
        let g = read_dot_subset(
            r#"digraph g { "n" [color="red", label="A.f()"]; "n" -> "n" [style="dotted"]; }"#,
        )
        .unwrap();
        assert_eq!(g.nodes.get("n").unwrap(), "A.f()");
        assert_eq!(g.edges.len(), 1);
    }

    #[test]
    fn errors_carry_line_and_column() {
        let e = read_dot_subset("digraph g {\n  \"a\" ->;\n}").unwrap_err();
        match e {
            IngestError::DotSyntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn write_read_round_trip() {
        let mut g = RawGraph::new(SignatureFlavor::Canonical);
        g.insert_node("n1", "<A: void f()>");
        g.insert_edge("n1", "n2");
        let text = write_dot(&g);
        let back = read_dot_subset(&text).unwrap();
        assert_eq!(back.nodes, g.nodes);
        assert_eq!(back.edges, g.edges);
    }

    #[test]
    fn quotes_inside_labels_survive() {
        let mut g = RawGraph::new(SignatureFlavor::Canonical);
        g.insert_node("n", "say \"hi\"");
        let back = read_dot_subset(&write_dot(&g)).unwrap();
        assert_eq!(back.nodes.get("n").unwrap(), "say \"hi\"");
    }
}
