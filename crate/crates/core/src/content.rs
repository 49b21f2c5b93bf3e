//! Occurrence counts, message contents and state contents.
//!
//! The content of a message is the set of tokens occurring strictly more
//! often than their reverses. The content of a state is the union of the
//! contents of all stepwise-effective messages producing it; on a cubical
//! system it holds exactly one token of each reverse pair, and it is
//! computed here from one shortest producing message per source state.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::axioms::{cubical_defect, Axiom};
use crate::paths::{distances_to, shortest_message_with};
use crate::system::{ClassKind, Message, StateId, TokenId, TokenSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContentError {
    #[error("token `{0}` has no reverse")]
    NoReverse(String),
    #[error("system is not cubical: axiom {0} fails")]
    NotCubical(Axiom),
}

/// A set of tokens, iterated in token order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ContentSet(BTreeSet<TokenId>);

impl ContentSet {
    pub fn new() -> Self {
        ContentSet(BTreeSet::new())
    }

    pub fn contains(&self, token: TokenId) -> bool {
        self.0.contains(&token)
    }

    pub fn insert(&mut self, token: TokenId) -> bool {
        self.0.insert(token)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = TokenId> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &ContentSet) -> ContentSet {
        ContentSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &ContentSet) -> ContentSet {
        ContentSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn symmetric_difference(&self, other: &ContentSet) -> ContentSet {
        ContentSet(self.0.symmetric_difference(&other.0).copied().collect())
    }

    pub fn is_disjoint(&self, other: &ContentSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// `{ tau~, mu }`, or `{ }` when empty.
    pub fn render(&self, system: &TokenSystem) -> String {
        if self.is_empty() {
            return "{ }".to_string();
        }
        let names: Vec<&str> = self.iter().map(|t| system.token_name(t)).collect();
        format!("{{ {} }}", names.join(", "))
    }
}

impl FromIterator<TokenId> for ContentSet {
    fn from_iter<I: IntoIterator<Item = TokenId>>(iter: I) -> Self {
        ContentSet(iter.into_iter().collect())
    }
}

/// `#(tau, m)`.
pub fn occurrence_count(message: &Message, token: TokenId) -> usize {
    message.count(token)
}

fn require_reverse(system: &TokenSystem, token: TokenId) -> Result<TokenId, ContentError> {
    system
        .reverse_of(token)
        .ok_or_else(|| ContentError::NoReverse(system.token_name(token).to_string()))
}

/// `C(m) = { tau | #(tau, m) > #(tau~, m) }`.
pub fn message_content(system: &TokenSystem, message: &Message) -> Result<ContentSet, ContentError> {
    let mut counts = vec![0usize; system.token_count()];
    for &t in message.tokens() {
        require_reverse(system, t)?;
        counts[t.0] += 1;
    }
    let mut content = ContentSet::new();
    for &t in message.tokens() {
        let r = require_reverse(system, t)?;
        if counts[t.0] > counts[r.0] {
            content.insert(t);
        }
    }
    Ok(content)
}

/// Contents of every state of a verified cubical system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateContents {
    contents: Vec<ContentSet>,
}

impl StateContents {
    pub fn new(system: &TokenSystem) -> Result<Self, ContentError> {
        if let Some(v) = cubical_defect(system) {
            return Err(ContentError::NotCubical(v.axiom));
        }
        let contents = system
            .states()
            .map(|s| content_via_shortest_messages(system, s))
            .collect::<Result<_, _>>()?;
        Ok(StateContents { contents })
    }

    pub fn get(&self, state: StateId) -> &ContentSet {
        &self.contents[state.0]
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, &ContentSet)> {
        self.contents.iter().enumerate().map(|(i, c)| (StateId(i), c))
    }

    /// `(V^ \ S^, S^ \ V^)`.
    pub fn delta(&self, s: StateId, v: StateId) -> (ContentSet, ContentSet) {
        let (cs, cv) = (self.get(s), self.get(v));
        (cv.difference(cs), cs.difference(cv))
    }
}

/// Union of `C(m_V)` over one shortest message `m_V` from each state `V`.
fn content_via_shortest_messages(
    system: &TokenSystem,
    target: StateId,
) -> Result<ContentSet, ContentError> {
    let dist = distances_to(system, target);
    let mut content = ContentSet::new();
    for v in system.states() {
        if let Some(m) = shortest_message_with(system, &dist, v) {
            content = content.union(&message_content(system, &m)?);
        }
    }
    Ok(content)
}

/// `S^` on a verified cubical system.
pub fn state_content(system: &TokenSystem, state: StateId) -> Result<ContentSet, ContentError> {
    if let Some(v) = cubical_defect(system) {
        return Err(ContentError::NotCubical(v.axiom));
    }
    content_via_shortest_messages(system, state)
}

/// `(V^ \ S^, S^ \ V^)` on a verified cubical system.
pub fn content_delta(
    system: &TokenSystem,
    s: StateId,
    v: StateId,
) -> Result<(ContentSet, ContentSet), ContentError> {
    Ok(StateContents::new(system)?.delta(s, v))
}

/// Brute-force state content: the union of `C(m)` over every
/// stepwise-effective message of length at most `max_len` that produces
/// `state`, from any start.
///
/// Messages are explored breadth first from every start, merged on their
/// (current state, per-class net count) summary, which determines both the
/// state they produce and their content. Works on any system whose tokens
/// all have reverses.
pub fn state_content_oracle(
    system: &TokenSystem,
    state: StateId,
    max_len: usize,
) -> Result<ContentSet, ContentError> {
    for t in system.tokens() {
        require_reverse(system, t)?;
    }
    let table = system.reverse_table();
    let classes = table.class_count();
    let mut seen: HashSet<(StateId, Vec<i32>)> = HashSet::new();
    let mut queue = VecDeque::new();
    for v in system.states() {
        let node = (v, vec![0i32; classes]);
        seen.insert(node.clone());
        queue.push_back((node, 0usize));
    }
    let mut content = ContentSet::new();
    while let Some(((s, net), len)) = queue.pop_front() {
        if s == state && len > 0 {
            for t in system.tokens() {
                let c = table.class_of(t);
                if table.kind(c) == ClassKind::Pair && net[c] * table.sign(t) as i32 > 0 {
                    content.insert(t);
                }
            }
        }
        if len == max_len {
            continue;
        }
        for t in system.effective_tokens(s) {
            let c = table.class_of(t);
            let mut next = net.clone();
            next[c] += table.sign(t) as i32;
            let node = (system.image(s, t), next);
            if seen.insert(node.clone()) {
                queue.push_back((node, len + 1));
            }
        }
    }
    Ok(content)
}
