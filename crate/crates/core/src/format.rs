//! Line-oriented text formats.
//!
//! Token systems (`.tks`):
//!
//! ```text
//! states S T P Q
//! token tau: S>T, P>Q
//! token tau~: T>S, Q>P
//! token mu: T>Q
//! token mu~: Q>T
//! theta tau=0.1 tau~=0.2 mu=0.3 mu~=0.4
//! xi uniform
//! ```
//!
//! Set families (`.fam`): `ground x y`, one `member ...` line per set (a
//! bare `member` is the empty set), then optional `edge {x}|{x,y}` lines.
//! Without edge lines the graph is the induced one.
//!
//! `#` starts a comment. Identifiers match `[A-Za-z0-9_~']+`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::gsystem::{CubeGraph, GSystemError, SetFamily};
use crate::stochastic::SUM_TOLERANCE;
use crate::system::{SystemError, TokenSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatErrorKind {
    #[error("syntax error: {0}")]
    SyntaxError(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("unknown ground element `{0}`")]
    UnknownElement(String),
    #[error("invalid distribution: {0}")]
    DistributionError(String),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Family(#[from] GSystemError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub kind: FormatErrorKind,
}

fn err<T>(line: usize, column: usize, kind: FormatErrorKind) -> Result<T, FormatError> {
    Err(FormatError { line, column, kind })
}

fn syntax<T>(line: usize, column: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    err(line, column, FormatErrorKind::SyntaxError(msg.into()))
}

pub fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '~' | '\''))
}

/// A word of a line with its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Word<'a> {
    text: &'a str,
    column: usize,
}

/// Splits on `sep`, trimming whitespace, keeping columns.
fn split<'a>(word: Word<'a>, sep: char) -> Vec<Word<'a>> {
    let mut parts = Vec::new();
    let mut offset = 0;
    for piece in word.text.split(sep) {
        let lead = piece.len() - piece.trim_start().len();
        parts.push(Word {
            text: piece.trim(),
            column: word.column + offset + lead,
        });
        offset += piece.len() + sep.len_utf8();
    }
    parts
}

fn words(text: &str) -> Vec<Word<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Word {
                    text: &text[s..i],
                    column: s + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Word {
            text: &text[s..],
            column: s + 1,
        });
    }
    out
}

/// Lines with comments stripped, paired with their 1-based numbers; blank
/// lines are dropped.
fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        (!line.trim().is_empty()).then_some((i + 1, line))
    })
}

fn identifier<'a>(line: usize, w: Word<'a>) -> Result<&'a str, FormatError> {
    if is_identifier(w.text) {
        Ok(w.text)
    } else {
        syntax(line, w.column, format!("`{}` is not an identifier", w.text))
    }
}

/// A distribution as written: `uniform` or explicit weights.
#[derive(Debug, Clone, PartialEq)]
pub enum Weights {
    Uniform,
    Explicit(Vec<f64>),
}

impl Weights {
    pub fn resolve(&self, len: usize) -> Vec<f64> {
        match self {
            Weights::Uniform => crate::stochastic::uniform(len),
            Weights::Explicit(v) => v.clone(),
        }
    }
}

/// A token system with optional token (`theta`) and initial (`xi`)
/// distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemDocument {
    pub system: TokenSystem,
    pub theta: Option<Weights>,
    pub xi: Option<Weights>,
}

impl SystemDocument {
    pub fn theta(&self) -> Option<Vec<f64>> {
        self.theta.as_ref().map(|w| w.resolve(self.system.token_count()))
    }

    pub fn xi(&self) -> Option<Vec<f64>> {
        self.xi.as_ref().map(|w| w.resolve(self.system.state_count()))
    }
}

fn parse_weights(
    line: usize,
    args: &[Word],
    names: &HashMap<String, usize>,
    unknown: fn(String) -> FormatErrorKind,
) -> Result<Weights, FormatError> {
    if let [w] = args {
        if w.text == "uniform" {
            return Ok(Weights::Uniform);
        }
    }
    let mut values = vec![0.0; names.len()];
    let mut seen = vec![false; names.len()];
    for &w in args {
        let parts = split(w, '=');
        let [name, value] = parts[..] else {
            return syntax(line, w.column, "expected name=probability");
        };
        let name_text = identifier(line, name)?;
        let Some(&i) = names.get(name_text) else {
            return err(line, name.column, unknown(name_text.to_string()));
        };
        if seen[i] {
            return syntax(line, name.column, format!("`{name_text}` is given twice"));
        }
        let Ok(p) = value.text.parse::<f64>() else {
            return syntax(line, value.column, format!("`{}` is not a number", value.text));
        };
        if !p.is_finite() || p < 0.0 {
            return err(
                line,
                value.column,
                FormatErrorKind::DistributionError(format!("`{}` is not a probability", value.text)),
            );
        }
        seen[i] = true;
        values[i] = p;
    }
    let sum: f64 = values.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        let column = args.first().map_or(1, |w| w.column);
        return err(
            line,
            column,
            FormatErrorKind::DistributionError(format!("probabilities sum to {sum}")),
        );
    }
    Ok(Weights::Explicit(values))
}

/// A `token` line: line number, name and `(from, to)` moves.
type TokenLine = (usize, String, Vec<(String, String)>);

/// Parses a `.tks` document.
pub fn parse_system(input: &str) -> Result<SystemDocument, FormatError> {
    let mut states: Option<(usize, Vec<String>)> = None;
    let mut tokens: Vec<TokenLine> = Vec::new();
    let mut theta_line = None;
    let mut xi_line = None;
    let mut last_line = 1;
    for (n, text) in content_lines(input) {
        last_line = n;
        let ws = words(text);
        let keyword = ws[0];
        match keyword.text {
            "states" => {
                if states.is_some() {
                    return syntax(n, keyword.column, "second `states` line");
                }
                if ws.len() < 2 {
                    return syntax(n, keyword.column, "`states` needs at least one name");
                }
                let names = ws[1..]
                    .iter()
                    .map(|&w| identifier(n, w).map(str::to_string))
                    .collect::<Result<Vec<_>, _>>()?;
                states = Some((n, names));
            }
            "token" => {
                let Some((_, names)) = &states else {
                    return syntax(n, keyword.column, "`token` before `states`");
                };
                let start = keyword.column - 1 + keyword.text.len();
                let rest = Word {
                    text: &text[start..],
                    column: start + 1,
                };
                let halves = split(rest, ':');
                if halves.len() != 2 {
                    return syntax(n, rest.column, "expected `token name: A>B, ...`");
                }
                let name = identifier(n, halves[0])?.to_string();
                let mut moves = Vec::new();
                if !halves[1].text.is_empty() {
                    for mv in split(halves[1], ',') {
                        let ends = split(mv, '>');
                        let [from, to] = ends[..] else {
                            return syntax(n, mv.column, "expected a move `A>B`");
                        };
                        for end in [from, to] {
                            let id = identifier(n, end)?;
                            if !names.iter().any(|s| s == id) {
                                return err(n, end.column, FormatErrorKind::UnknownState(id.into()));
                            }
                        }
                        if moves.iter().any(|(f, _): &(String, String)| f == from.text) {
                            return syntax(n, from.column, format!("`{}` is moved twice", from.text));
                        }
                        moves.push((from.text.to_string(), to.text.to_string()));
                    }
                }
                tokens.push((n, name, moves));
            }
            "theta" => {
                if theta_line.is_some() {
                    return syntax(n, keyword.column, "second `theta` line");
                }
                theta_line = Some((n, text));
            }
            "xi" => {
                if xi_line.is_some() {
                    return syntax(n, keyword.column, "second `xi` line");
                }
                xi_line = Some((n, text));
            }
            other => return syntax(n, keyword.column, format!("unknown directive `{other}`")),
        }
    }
    let Some((states_line, state_names)) = states else {
        return syntax(last_line, 1, "missing `states` line");
    };
    let line_of = |name: &str| {
        tokens
            .iter()
            .find(|t| t.1 == name)
            .map_or(states_line, |t| t.0)
    };
    let mut builder = TokenSystem::builder(state_names);
    for (_, name, moves) in &tokens {
        builder.push_token(name.clone(), moves.iter().cloned());
    }
    let system = builder.build().map_err(|e| {
        let line = match &e {
            SystemError::IdentityToken(t)
            | SystemError::DuplicateTransformation(_, t)
            | SystemError::ConflictingMove { token: t, .. } => line_of(t),
            SystemError::DuplicateName(t) => tokens
                .iter()
                .filter(|x| &x.1 == t)
                .nth(1)
                .map_or(line_of(t), |x| x.0),
            _ => states_line,
        };
        FormatError {
            line,
            column: 1,
            kind: e.into(),
        }
    })?;
    let token_index: HashMap<String, usize> = system
        .token_names()
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let state_index: HashMap<String, usize> = system
        .state_names()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let theta = theta_line
        .map(|(n, text)| parse_weights(n, &words(text)[1..], &token_index, FormatErrorKind::UnknownToken))
        .transpose()?;
    let xi = xi_line
        .map(|(n, text)| parse_weights(n, &words(text)[1..], &state_index, FormatErrorKind::UnknownState))
        .transpose()?;
    Ok(SystemDocument { system, theta, xi })
}

fn format_weights(out: &mut String, keyword: &str, weights: &Weights, names: &[String]) {
    out.push_str(keyword);
    match weights {
        Weights::Uniform => out.push_str(" uniform"),
        Weights::Explicit(values) => {
            for (name, v) in names.iter().zip(values) {
                let _ = write!(out, " {name}={v}");
            }
        }
    }
    out.push('\n');
}

/// Canonical `.tks` text: states and tokens in declaration order, each
/// token's moves by source state, every weight listed.
pub fn format_system(doc: &SystemDocument) -> String {
    let sys = &doc.system;
    let mut out = format!("states {}\n", sys.state_names().join(" "));
    for t in sys.tokens() {
        let moves: Vec<String> = sys
            .effective_domain(t)
            .into_iter()
            .map(|s| format!("{}>{}", sys.state_name(s), sys.state_name(sys.image(s, t))))
            .collect();
        let _ = writeln!(out, "token {}: {}", sys.token_name(t), moves.join(", "));
    }
    if let Some(theta) = &doc.theta {
        format_weights(&mut out, "theta", theta, sys.token_names());
    }
    if let Some(xi) = &doc.xi {
        format_weights(&mut out, "xi", xi, sys.state_names());
    }
    out
}

/// Parses `{x,y}` (or `{}`) against the ground.
fn parse_set(
    line: usize,
    w: Word,
    ground: &HashMap<&str, usize>,
) -> Result<BTreeSet<usize>, FormatError> {
    let inner = w
        .text
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .map(|s| Word {
            text: s,
            column: w.column + 1,
        });
    let Some(inner) = inner else {
        return syntax(line, w.column, format!("expected a set `{{x,y}}`, got `{}`", w.text));
    };
    let mut set = BTreeSet::new();
    if inner.text.trim().is_empty() {
        return Ok(set);
    }
    for e in split(inner, ',') {
        let name = identifier(line, e)?;
        match ground.get(name) {
            Some(&x) => {
                set.insert(x);
            }
            None => return err(line, e.column, FormatErrorKind::UnknownElement(name.into())),
        }
    }
    Ok(set)
}

/// Parses a `.fam` document into a cube subgraph.
pub fn parse_family(input: &str) -> Result<CubeGraph, FormatError> {
    let mut ground: Option<(usize, Vec<String>)> = None;
    let mut members: Vec<(usize, BTreeSet<usize>)> = Vec::new();
    let mut edges: Vec<(usize, usize, BTreeSet<usize>, BTreeSet<usize>)> = Vec::new();
    let mut last_line = 1;
    for (n, text) in content_lines(input) {
        last_line = n;
        let ws = words(text);
        let keyword = ws[0];
        match keyword.text {
            "ground" => {
                if ground.is_some() {
                    return syntax(n, keyword.column, "second `ground` line");
                }
                let names = ws[1..]
                    .iter()
                    .map(|&w| identifier(n, w).map(str::to_string))
                    .collect::<Result<Vec<_>, _>>()?;
                ground = Some((n, names));
            }
            "member" | "edge" => {
                let Some((_, names)) = &ground else {
                    return syntax(n, keyword.column, format!("`{}` before `ground`", keyword.text));
                };
                let index: HashMap<&str, usize> =
                    names.iter().enumerate().map(|(i, x)| (x.as_str(), i)).collect();
                if keyword.text == "member" {
                    let mut set = BTreeSet::new();
                    for &w in &ws[1..] {
                        let name = identifier(n, w)?;
                        match index.get(name) {
                            Some(&x) => {
                                set.insert(x);
                            }
                            None => {
                                return err(n, w.column, FormatErrorKind::UnknownElement(name.into()))
                            }
                        }
                    }
                    members.push((n, set));
                } else {
                    let start = keyword.column - 1 + keyword.text.len();
                    let rest = Word {
                        text: &text[start..],
                        column: start + 1,
                    };
                    let ends = split(rest, '|');
                    let [a, b] = ends[..] else {
                        return syntax(n, rest.column, "expected `edge {x}|{x,y}`");
                    };
                    edges.push((n, a.column, parse_set(n, a, &index)?, parse_set(n, b, &index)?));
                }
            }
            other => return syntax(n, keyword.column, format!("unknown directive `{other}`")),
        }
    }
    let Some((ground_line, names)) = ground else {
        return syntax(last_line, 1, "missing `ground` line");
    };
    for (i, (n, m)) in members.iter().enumerate() {
        if members[..i].iter().any(|(_, o)| o == m) {
            return err(*n, 1, GSystemError::DuplicateMember(format!("#{}", i + 1)).into());
        }
    }
    let sets: Vec<BTreeSet<usize>> = members.iter().map(|(_, m)| m.clone()).collect();
    let family = SetFamily::new(names, sets).map_err(|e| FormatError {
        line: ground_line,
        column: 1,
        kind: e.into(),
    })?;
    if edges.is_empty() {
        return CubeGraph::induced(family).map_err(|e| FormatError {
            line: last_line,
            column: 1,
            kind: e.into(),
        });
    }
    let mut pairs = Vec::new();
    for (n, column, a, b) in &edges {
        let (Some(i), Some(j)) = (family.index_of(a), family.index_of(b)) else {
            let missing = if family.index_of(a).is_none() { a } else { b };
            return err(
                *n,
                *column,
                GSystemError::UnknownMember(family.render(missing)).into(),
            );
        };
        if crate::gsystem::distance(a, b) != 1 {
            return err(
                *n,
                *column,
                GSystemError::NotCubeEdge(family.render(a), family.render(b)).into(),
            );
        }
        pairs.push((i, j));
    }
    CubeGraph::new(family, pairs).map_err(|e| FormatError {
        line: last_line,
        column: 1,
        kind: e.into(),
    })
}

/// Canonical `.fam` text. Edge lines are written only when the graph is
/// not the induced one.
pub fn format_family(graph: &CubeGraph) -> String {
    let family = graph.family();
    let mut out = format!("ground {}\n", family.ground().join(" "));
    for m in family.members() {
        out.push_str("member");
        for &x in m {
            out.push(' ');
            out.push_str(&family.ground()[x]);
        }
        out.push('\n');
    }
    if graph.edges() != family.induced_edges() {
        for &(a, b) in graph.edges() {
            let _ = writeln!(
                out,
                "edge {}|{}",
                family.render(family.member(a)),
                family.render(family.member(b))
            );
        }
    }
    out
}
