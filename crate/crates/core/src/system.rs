//! Finite token systems and messages.
//!
//! A [`TokenSystem`] is a finite set of named states together with a set of
//! named tokens, each token a total, non-identity transformation of the
//! states. Messages are finite token strings acting left to right.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of a state inside its [`TokenSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

/// Index of a token inside its [`TokenSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TokenId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl TokenId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("empty state or token name")]
    EmptyName,
    #[error("token `{0}` is the identity transformation")]
    IdentityToken(String),
    #[error("a token system needs at least two states, got {0}")]
    TooFewStates(usize),
    #[error("a token system needs at least one token")]
    NoTokens,
    #[error("tokens `{0}` and `{1}` are the same transformation")]
    DuplicateTransformation(String, String),
    #[error("token `{token}` moves state `{state}` twice")]
    ConflictingMove { token: String, state: String },
    #[error("token `{token}` has {got} images, expected {expected}")]
    NotTotal {
        token: String,
        got: usize,
        expected: usize,
    },
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("not a bijection: {0}")]
    NotBijective(String),
}

/// A finite (possibly empty) token string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Message(Vec<TokenId>);

impl Message {
    pub fn new(tokens: Vec<TokenId>) -> Self {
        Message(tokens)
    }

    pub fn empty() -> Self {
        Message(Vec::new())
    }

    pub fn tokens(&self) -> &[TokenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, token: TokenId) {
        self.0.push(token);
    }

    /// Concatenation `mn`.
    pub fn concat(&self, other: &Message) -> Message {
        let mut tokens = self.0.clone();
        tokens.extend_from_slice(&other.0);
        Message(tokens)
    }

    /// Number of literal occurrences of `token`.
    pub fn count(&self, token: TokenId) -> usize {
        self.0.iter().filter(|&&t| t == token).count()
    }

    pub fn into_tokens(self) -> Vec<TokenId> {
        self.0
    }
}

impl From<Vec<TokenId>> for Message {
    fn from(tokens: Vec<TokenId>) -> Self {
        Message(tokens)
    }
}

impl FromIterator<TokenId> for Message {
    fn from_iter<I: IntoIterator<Item = TokenId>>(iter: I) -> Self {
        Message(iter.into_iter().collect())
    }
}

/// How a token relates to its reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    /// Two distinct mutually reverse tokens.
    Pair,
    /// A token that is its own reverse.
    SelfReverse,
    /// A token with no reverse.
    Unpaired,
}

/// Reverses inferred from the transformations, plus the partition of tokens
/// into reverse-pair classes.
///
/// Every class has a canonical member (the lower token index). A token
/// contributes `+1` to its class when it is canonical and `-1` when it is
/// the reverse of the canonical member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReverseTable {
    reverse: Vec<Option<TokenId>>,
    class: Vec<usize>,
    canonical: Vec<TokenId>,
}

impl ReverseTable {
    fn infer(images: &[Vec<StateId>]) -> Self {
        let n = images.len();
        let mut reverse = vec![None; n];
        for t in 0..n {
            for r in 0..n {
                if reverses(&images[t], &images[r]) {
                    reverse[t] = Some(TokenId(r));
                    break;
                }
            }
        }
        let mut class = vec![usize::MAX; n];
        let mut canonical = Vec::new();
        for t in 0..n {
            if class[t] != usize::MAX {
                continue;
            }
            class[t] = canonical.len();
            if let Some(r) = reverse[t] {
                class[r.0] = canonical.len();
            }
            canonical.push(TokenId(t));
        }
        ReverseTable {
            reverse,
            class,
            canonical,
        }
    }

    pub fn reverse(&self, token: TokenId) -> Option<TokenId> {
        self.reverse[token.0]
    }

    pub fn class_count(&self) -> usize {
        self.canonical.len()
    }

    /// Class index of `token`.
    pub fn class_of(&self, token: TokenId) -> usize {
        self.class[token.0]
    }

    /// Canonical (lowest-index) member of a class.
    pub fn canonical(&self, class: usize) -> TokenId {
        self.canonical[class]
    }

    pub fn kind(&self, class: usize) -> ClassKind {
        let t = self.canonical[class];
        match self.reverse[t.0] {
            None => ClassKind::Unpaired,
            Some(r) if r == t => ClassKind::SelfReverse,
            Some(_) => ClassKind::Pair,
        }
    }

    /// Orientation of `token` within its class: `+1` for the canonical
    /// member, `-1` for its reverse.
    pub fn sign(&self, token: TokenId) -> i64 {
        if self.canonical[self.class[token.0]] == token {
            1
        } else {
            -1
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.reverse.iter().enumerate().all(|(t, r)| match r {
            Some(r) => self.reverse[r.0] == Some(TokenId(t)),
            None => true,
        })
    }
}

/// `b` is a reverse of `a`: for all distinct S, V, `Sa = V <=> Vb = S`.
fn reverses(a: &[StateId], b: &[StateId]) -> bool {
    let n = a.len();
    (0..n).all(|s| {
        (0..n).all(|v| {
            if s == v {
                return true;
            }
            (a[s].0 == v) == (b[v].0 == s)
        })
    })
}

/// A finite token system.
#[derive(Debug, Clone)]
pub struct TokenSystem {
    states: Vec<String>,
    tokens: Vec<String>,
    images: Vec<Vec<StateId>>,
    reverses: ReverseTable,
    state_index: HashMap<String, StateId>,
    token_index: HashMap<String, TokenId>,
}

impl PartialEq for TokenSystem {
    fn eq(&self, other: &Self) -> bool {
        self.states == other.states && self.tokens == other.tokens && self.images == other.images
    }
}

impl Eq for TokenSystem {}

/// Accumulates states and per-token moves; unlisted states are fixed points.
#[derive(Debug, Clone, Default)]
pub struct TokenSystemBuilder {
    states: Vec<String>,
    tokens: Vec<(String, Vec<(String, String)>)>,
}

impl TokenSystemBuilder {
    pub fn token<N, I, A, B>(mut self, name: N, moves: I) -> Self
    where
        N: Into<String>,
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        self.push_token(name, moves);
        self
    }

    pub fn push_token<N, I, A, B>(&mut self, name: N, moves: I)
    where
        N: Into<String>,
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let moves = moves
            .into_iter()
            .map(|(a, b)| (a.into(), b.into()))
            .collect();
        self.tokens.push((name.into(), moves));
    }

    pub fn build(self) -> Result<TokenSystem, SystemError> {
        let index: HashMap<&str, usize> = self
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| SystemError::UnknownState(name.to_string()))
        };
        let mut tokens = Vec::with_capacity(self.tokens.len());
        for (name, moves) in &self.tokens {
            let mut image: Vec<Option<StateId>> = vec![None; self.states.len()];
            for (from, to) in moves {
                let (f, t) = (lookup(from)?, lookup(to)?);
                match image[f] {
                    Some(prev) if prev.0 != t => {
                        return Err(SystemError::ConflictingMove {
                            token: name.clone(),
                            state: from.clone(),
                        })
                    }
                    _ => image[f] = Some(StateId(t)),
                }
            }
            let image = image
                .into_iter()
                .enumerate()
                .map(|(s, img)| img.unwrap_or(StateId(s)))
                .collect();
            tokens.push((name.clone(), image));
        }
        TokenSystem::from_images(self.states, tokens)
    }
}

impl TokenSystem {
    /// Start a system on the given states, listed in their canonical order.
    pub fn builder<I, S>(states: I) -> TokenSystemBuilder
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        TokenSystemBuilder {
            states: states.into_iter().map(Into::into).collect(),
            tokens: Vec::new(),
        }
    }

    /// Build from total transformations given as image vectors.
    pub fn from_images(
        states: Vec<String>,
        tokens: Vec<(String, Vec<StateId>)>,
    ) -> Result<Self, SystemError> {
        if states.len() < 2 {
            return Err(SystemError::TooFewStates(states.len()));
        }
        if tokens.is_empty() {
            return Err(SystemError::NoTokens);
        }
        let mut state_index = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if s.is_empty() {
                return Err(SystemError::EmptyName);
            }
            if state_index.insert(s.clone(), StateId(i)).is_some() {
                return Err(SystemError::DuplicateName(s.clone()));
            }
        }
        let mut token_index = HashMap::new();
        let mut names: Vec<String> = Vec::with_capacity(tokens.len());
        let mut images = Vec::with_capacity(tokens.len());
        for (i, (name, image)) in tokens.into_iter().enumerate() {
            if name.is_empty() {
                return Err(SystemError::EmptyName);
            }
            if token_index.insert(name.clone(), TokenId(i)).is_some()
                || state_index.contains_key(&name)
            {
                return Err(SystemError::DuplicateName(name));
            }
            if image.len() != states.len() || image.iter().any(|s| s.0 >= states.len()) {
                return Err(SystemError::NotTotal {
                    token: name,
                    got: image.len(),
                    expected: states.len(),
                });
            }
            if image.iter().enumerate().all(|(s, img)| img.0 == s) {
                return Err(SystemError::IdentityToken(name));
            }
            if let Some(j) = images.iter().position(|other| *other == image) {
                return Err(SystemError::DuplicateTransformation(
                    names[j].clone(),
                    name,
                ));
            }
            names.push(name);
            images.push(image);
        }
        let reverses = ReverseTable::infer(&images);
        debug_assert!(reverses.is_symmetric());
        Ok(TokenSystem {
            states,
            tokens: names,
            images,
            reverses,
            state_index,
            token_index,
        })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.states.len()).map(StateId)
    }

    pub fn tokens(&self) -> impl Iterator<Item = TokenId> + '_ {
        (0..self.tokens.len()).map(TokenId)
    }

    pub fn state_name(&self, state: StateId) -> &str {
        &self.states[state.0]
    }

    pub fn token_name(&self, token: TokenId) -> &str {
        &self.tokens[token.0]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn token_names(&self) -> &[String] {
        &self.tokens
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_index.get(name).copied()
    }

    pub fn token_id(&self, name: &str) -> Option<TokenId> {
        self.token_index.get(name).copied()
    }

    pub fn state(&self, name: &str) -> Result<StateId, SystemError> {
        self.state_id(name)
            .ok_or_else(|| SystemError::UnknownState(name.to_string()))
    }

    pub fn token(&self, name: &str) -> Result<TokenId, SystemError> {
        self.token_id(name)
            .ok_or_else(|| SystemError::UnknownToken(name.to_string()))
    }

    /// Resolve a message given by token names.
    pub fn message<I, S>(&self, names: I) -> Result<Message, SystemError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names
            .into_iter()
            .map(|n| self.token(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(Message)
    }

    /// Token names of a message, comma separated inside brackets.
    pub fn render(&self, message: &Message) -> String {
        let names: Vec<&str> = message.tokens().iter().map(|&t| self.token_name(t)).collect();
        format!("[{}]", names.join(", "))
    }

    /// `S tau`.
    pub fn image(&self, state: StateId, token: TokenId) -> StateId {
        self.images[token.0][state.0]
    }

    /// The full transformation of a token as an image vector.
    pub fn transformation(&self, token: TokenId) -> &[StateId] {
        &self.images[token.0]
    }

    /// `S m`, composing left to right; the empty message is the identity.
    pub fn apply(&self, state: StateId, message: &Message) -> StateId {
        message
            .tokens()
            .iter()
            .fold(state, |s, &t| self.image(s, t))
    }

    /// The states `S_0 .. S_n` produced by `message` from `state`.
    pub fn produced_sequence(&self, state: StateId, message: &Message) -> Vec<StateId> {
        let mut seq = Vec::with_capacity(message.len() + 1);
        seq.push(state);
        let mut s = state;
        for &t in message.tokens() {
            s = self.image(s, t);
            seq.push(s);
        }
        seq
    }

    pub fn reverse_table(&self) -> &ReverseTable {
        &self.reverses
    }

    pub fn reverse_of(&self, token: TokenId) -> Option<TokenId> {
        self.reverses.reverse(token)
    }

    pub fn is_effective_token(&self, state: StateId, token: TokenId) -> bool {
        self.image(state, token) != state
    }

    /// `U_tau`: the states where `token` is effective.
    pub fn effective_domain(&self, token: TokenId) -> Vec<StateId> {
        self.states()
            .filter(|&s| self.is_effective_token(s, token))
            .collect()
    }

    /// Tokens effective at `state`, in token order.
    pub fn effective_tokens(&self, state: StateId) -> impl Iterator<Item = TokenId> + '_ {
        self.tokens()
            .filter(move |&t| self.is_effective_token(state, t))
    }

    /// `to` is adjacent to `from`: distinct, and some token maps `from` to `to`.
    pub fn is_adjacent_to(&self, from: StateId, to: StateId) -> bool {
        from != to && self.tokens().any(|t| self.image(from, t) == to)
    }

    /// Mutual adjacency.
    pub fn is_adjacent(&self, a: StateId, b: StateId) -> bool {
        self.is_adjacent_to(a, b) && self.is_adjacent_to(b, a)
    }

    pub fn is_effective(&self, state: StateId, message: &Message) -> bool {
        self.apply(state, message) != state
    }

    pub fn is_ineffective(&self, state: StateId, message: &Message) -> bool {
        !self.is_effective(state, message)
    }

    pub fn is_stepwise_effective(&self, state: StateId, message: &Message) -> bool {
        let mut s = state;
        for &t in message.tokens() {
            let next = self.image(s, t);
            if next == s {
                return false;
            }
            s = next;
        }
        true
    }

    /// Stepwise effective and returning to `state`.
    pub fn is_closed(&self, state: StateId, message: &Message) -> bool {
        self.is_stepwise_effective(state, message) && self.apply(state, message) == state
    }

    /// Token occurrences pair off into mutual reverses.
    ///
    /// Counted per reverse-pair class: the two orientations of a pair must
    /// occur equally often, a self-reverse token an even number of times,
    /// and a token without reverse not at all.
    pub fn is_vacuous(&self, message: &Message) -> bool {
        let table = &self.reverses;
        let mut net = vec![0i64; table.class_count()];
        for &t in message.tokens() {
            let c = table.class_of(t);
            match table.kind(c) {
                ClassKind::Unpaired => return false,
                ClassKind::SelfReverse => net[c] ^= 1,
                ClassKind::Pair => net[c] += table.sign(t),
            }
        }
        net.iter().all(|&n| n == 0)
    }

    /// Stepwise effective, no token twice, and never a token together with
    /// its reverse.
    pub fn is_concise(&self, state: StateId, message: &Message) -> bool {
        if !self.is_stepwise_effective(state, message) {
            return false;
        }
        let mut seen = vec![false; self.token_count()];
        for &t in message.tokens() {
            if seen[t.0] {
                return false;
            }
            if let Some(r) = self.reverse_of(t) {
                if seen[r.0] {
                    return false;
                }
            }
            seen[t.0] = true;
        }
        true
    }

    /// `m~`: reversed order with every token replaced by its reverse.
    pub fn reverse_message(&self, message: &Message) -> Option<Message> {
        message
            .tokens()
            .iter()
            .rev()
            .map(|&t| self.reverse_of(t))
            .collect::<Option<Vec<_>>>()
            .map(Message)
    }
}

impl fmt::Display for TokenSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "token system ({} states, {} tokens)",
            self.state_count(),
            self.token_count()
        )
    }
}

/// A candidate isomorphism `(alpha, beta)` between two token systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub states: Vec<StateId>,
    pub tokens: Vec<TokenId>,
}

impl Isomorphism {
    pub fn identity(system: &TokenSystem) -> Self {
        Isomorphism {
            states: system.states().collect(),
            tokens: system.tokens().collect(),
        }
    }

    /// Resolve name pairs `(name in a, name in b)`.
    pub fn from_names<S: AsRef<str>>(
        a: &TokenSystem,
        b: &TokenSystem,
        states: &[(S, S)],
        tokens: &[(S, S)],
    ) -> Result<Self, SystemError> {
        let mut state_map = vec![None; a.state_count()];
        for (x, y) in states {
            state_map[a.state(x.as_ref())?.0] = Some(b.state(y.as_ref())?);
        }
        let mut token_map = vec![None; a.token_count()];
        for (x, y) in tokens {
            token_map[a.token(x.as_ref())?.0] = Some(b.token(y.as_ref())?);
        }
        let states = state_map
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    SystemError::NotBijective(format!("state `{}` unmapped", a.state_name(StateId(i))))
                })
            })
            .collect::<Result<_, _>>()?;
        let tokens = token_map
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| {
                    SystemError::NotBijective(format!("token `{}` unmapped", a.token_name(TokenId(i))))
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Isomorphism { states, tokens })
    }
}

fn is_bijection(map: &[usize], size: usize) -> bool {
    if map.len() != size {
        return false;
    }
    let mut hit = vec![false; size];
    for &m in map {
        if m >= size || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    true
}

/// Checks `S tau = T <=> alpha(S) beta(tau) = alpha(T)` for all states and tokens.
pub fn check_isomorphism(
    a: &TokenSystem,
    b: &TokenSystem,
    iso: &Isomorphism,
) -> Result<bool, SystemError> {
    let states: Vec<usize> = iso.states.iter().map(|s| s.0).collect();
    let tokens: Vec<usize> = iso.tokens.iter().map(|t| t.0).collect();
    if a.state_count() != b.state_count() || !is_bijection(&states, b.state_count()) {
        return Err(SystemError::NotBijective("state map".into()));
    }
    if a.token_count() != b.token_count() || !is_bijection(&tokens, b.token_count()) {
        return Err(SystemError::NotBijective("token map".into()));
    }
    for t in a.tokens() {
        let bt = iso.tokens[t.0];
        for s in a.states() {
            if iso.states[a.image(s, t).0] != b.image(iso.states[s.0], bt) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn cub4() -> TokenSystem {
        TokenSystem::builder(["S", "T", "P", "Q"])
            .token("tau", [("S", "T"), ("P", "Q")])
            .token("tau~", [("T", "S"), ("Q", "P")])
            .token("mu", [("T", "Q")])
            .token("mu~", [("Q", "T")])
            .build()
            .unwrap()
    }

    fn fig21() -> TokenSystem {
        TokenSystem::builder(["S", "T"])
            .token("tau", [("S", "T")])
            .build()
            .unwrap()
    }

    fn swap() -> TokenSystem {
        TokenSystem::builder(["A", "B"])
            .token("sigma", [("A", "B"), ("B", "A")])
            .build()
            .unwrap()
    }

    fn msg(sys: &TokenSystem, names: &[&str]) -> Message {
        sys.message(names).unwrap()
    }

    #[test]
    fn build_cub4() {
        let sys = cub4();
        assert_eq!(sys.state_count(), 4);
        assert_eq!(sys.token_count(), 4);
    }

    #[test]
    fn build_rejects_identity_and_small_systems() {
        let err = TokenSystem::builder(["A", "B"])
            .token("nu", Vec::<(&str, &str)>::new())
            .build()
            .unwrap_err();
        assert_eq!(err, SystemError::IdentityToken("nu".into()));

        let err = TokenSystem::builder(["A"])
            .token("t", [("A", "A")])
            .build()
            .unwrap_err();
        assert_eq!(err, SystemError::TooFewStates(1));

        let err = TokenSystem::builder(["A", "A"])
            .token("t", [("A", "A")])
            .build()
            .unwrap_err();
        assert_eq!(err, SystemError::DuplicateName("A".into()));

        let err = TokenSystem::builder(["A", "B"])
            .token("t", [("A", "B")])
            .token("u", [("A", "B")])
            .build()
            .unwrap_err();
        assert!(matches!(err, SystemError::DuplicateTransformation(..)));

        let err = TokenSystem::builder(["A", "B"])
            .token("t", [("A", "C")])
            .build()
            .unwrap_err();
        assert_eq!(err, SystemError::UnknownState("C".into()));
    }

    #[test]
    fn apply_and_sequences() {
        let sys = cub4();
        let s = sys.state("S").unwrap();
        let name = |x| sys.state_name(x).to_string();
        assert_eq!(name(sys.apply(s, &msg(&sys, &["tau", "mu"]))), "Q");
        assert_eq!(sys.apply(s, &Message::empty()), s);
        assert_eq!(name(sys.apply(s, &msg(&sys, &["mu"]))), "S");

        let seq: Vec<_> = sys
            .produced_sequence(s, &msg(&sys, &["tau", "mu", "tau~"]))
            .into_iter()
            .map(name)
            .collect();
        assert_eq!(seq, ["S", "T", "Q", "P"]);
        let seq: Vec<_> = sys
            .produced_sequence(s, &msg(&sys, &["mu", "tau"]))
            .into_iter()
            .map(name)
            .collect();
        assert_eq!(seq, ["S", "S", "T"]);
        assert_eq!(sys.produced_sequence(s, &Message::empty()), vec![s]);
        assert_eq!(
            sys.message(["tau", "nu"]).unwrap_err(),
            SystemError::UnknownToken("nu".into())
        );
    }

    #[test]
    fn reverses() {
        let sys = cub4();
        let tau = sys.token("tau").unwrap();
        assert_eq!(sys.reverse_of(tau), sys.token_id("tau~"));
        assert_eq!(sys.reverse_of(sys.token("tau~").unwrap()), Some(tau));

        let f = fig21();
        assert_eq!(f.reverse_of(f.token("tau").unwrap()), None);

        let w = swap();
        let sigma = w.token("sigma").unwrap();
        assert_eq!(w.reverse_of(sigma), Some(sigma));
        assert_eq!(w.reverse_table().kind(0), ClassKind::SelfReverse);
    }

    #[test]
    fn adjacency() {
        let sys = cub4();
        let st = |n| sys.state(n).unwrap();
        assert!(sys.is_adjacent(st("S"), st("T")));
        assert!(!sys.is_adjacent(st("S"), st("Q")));
        assert!(!sys.is_adjacent_to(st("S"), st("Q")));

        let f = fig21();
        let (s, t) = (f.state("S").unwrap(), f.state("T").unwrap());
        assert!(f.is_adjacent_to(s, t));
        assert!(!f.is_adjacent_to(t, s));
        assert!(!f.is_adjacent(s, t));
    }

    #[test]
    fn message_predicates() {
        let sys = cub4();
        let s = sys.state("S").unwrap();
        let back = msg(&sys, &["tau", "tau~"]);
        assert!(sys.is_closed(s, &back));
        assert!(sys.is_vacuous(&back));
        assert!(sys.is_ineffective(s, &back));

        let detour = msg(&sys, &["tau", "mu", "tau~"]);
        assert!(sys.is_stepwise_effective(s, &detour));
        assert!(!sys.is_concise(s, &detour));
        assert!(!sys.is_vacuous(&detour));
        assert!(sys.is_effective(s, &detour));

        assert!(sys.is_concise(s, &msg(&sys, &["tau", "mu"])));
        assert!(!sys.is_stepwise_effective(s, &msg(&sys, &["mu"])));
        assert!(!sys.is_concise(s, &msg(&sys, &["tau", "tau"])));

        let w = swap();
        let a = w.state("A").unwrap();
        assert!(w.is_vacuous(&msg(&w, &["sigma", "sigma"])));
        assert!(!w.is_vacuous(&msg(&w, &["sigma"])));
        assert!(w.is_closed(a, &msg(&w, &["sigma", "sigma"])));

        let f = fig21();
        assert!(!f.is_vacuous(&msg(&f, &["tau"])));
        assert!(f.is_vacuous(&Message::empty()));
    }

    #[test]
    fn reverse_messages() {
        let sys = cub4();
        assert_eq!(
            sys.reverse_message(&msg(&sys, &["tau", "mu"])),
            Some(msg(&sys, &["mu~", "tau~"]))
        );
        assert_eq!(sys.reverse_message(&Message::empty()), Some(Message::empty()));
        let f = fig21();
        assert_eq!(f.reverse_message(&msg(&f, &["tau"])), None);
    }

    #[test]
    fn isomorphism_checks() {
        let sys = cub4();
        assert!(check_isomorphism(&sys, &sys, &Isomorphism::identity(&sys)).unwrap());

        let mut bad = Isomorphism::identity(&sys);
        bad.states[1] = StateId(0);
        assert!(matches!(
            check_isomorphism(&sys, &sys, &bad),
            Err(SystemError::NotBijective(_))
        ));

        // swapping tau with mu breaks the S-T edge
        let swapped = Isomorphism::from_names(
            &sys,
            &sys,
            &[("S", "S"), ("T", "T"), ("P", "P"), ("Q", "Q")],
            &[("tau", "mu"), ("tau~", "mu~"), ("mu", "tau"), ("mu~", "tau~")],
        )
        .unwrap();
        assert!(!check_isomorphism(&sys, &sys, &swapped).unwrap());
    }
}
