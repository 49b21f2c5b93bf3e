//! Deciding the cubical axioms C1–C4 and the medium axioms Ma/Mb on
//! finite token systems, with replayable counterexamples.
//!
//! C1, C2, C4 and Ma are always decided exactly. C3 and Mb are decided
//! exactly through the cycle space of the transition graph whenever every
//! token has a reverse: every effective step then has an anti-parallel step
//! with the opposite class count, so the net class-count vector of a closed
//! walk is a sum of fundamental cycle vectors of any spanning forest. When
//! some token has no reverse the check falls back to enumerating
//! stepwise-effective messages up to a length bound, and the verdict
//! records `Method::Bounded`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::paths::BfsTree;
use crate::system::{ClassKind, Message, StateId, TokenId, TokenSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    C1,
    C2,
    C3,
    C4,
    Ma,
    Mb,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4, Axiom::Ma, Axiom::Mb];
    pub const CUBICAL: [Axiom; 4] = [Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::C1 => "C1",
            Axiom::C2 => "C2",
            Axiom::C3 => "C3",
            Axiom::C4 => "C4",
            Axiom::Ma => "Ma",
            Axiom::Mb => "Mb",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "c1" => Ok(Axiom::C1),
            "c2" => Ok(Axiom::C2),
            "c3" => Ok(Axiom::C3),
            "c4" => Ok(Axiom::C4),
            "ma" => Ok(Axiom::Ma),
            "mb" => Ok(Axiom::Mb),
            _ => Err(format!("unknown axiom `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    /// Every stepwise-effective message up to this length was examined.
    Bounded(usize),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Exact => f.write_str("exact"),
            Method::Bounded(l) => write!(f, "bounded({l})"),
        }
    }
}

/// A counterexample to an axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A token without a usable reverse (C1).
    Token(TokenId),
    /// An ordered pair of states (C2: unreachable; Ma: no concise message).
    Pair(StateId, StateId),
    /// A stepwise-effective message from `start` (C3, C4, Mb).
    Message { start: StateId, message: Message },
}

impl Witness {
    pub fn describe(&self, system: &TokenSystem) -> String {
        match self {
            Witness::Token(t) => format!("token {}", system.token_name(*t)),
            Witness::Pair(a, b) => format!(
                "pair ({}, {})",
                system.state_name(*a),
                system.state_name(*b)
            ),
            Witness::Message { start, message } => format!(
                "message {} from {}",
                system.render(message),
                system.state_name(*start)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub method: Method,
}

impl AxiomVerdict {
    fn pass(axiom: Axiom, method: Method) -> Self {
        AxiomVerdict {
            axiom,
            holds: true,
            witness: None,
            method,
        }
    }

    fn fail(axiom: Axiom, witness: Witness, method: Method) -> Self {
        AxiomVerdict {
            axiom,
            holds: false,
            witness: Some(witness),
            method,
        }
    }

    /// One-line summary such as `C3 fails (exact): message [...] from S`.
    pub fn describe(&self, system: &TokenSystem) -> String {
        match (&self.witness, self.holds) {
            (_, true) => format!("{} holds ({})", self.axiom, self.method),
            (Some(w), false) => format!(
                "{} fails ({}): {}",
                self.axiom,
                self.method,
                w.describe(system)
            ),
            (None, false) => format!("{} fails ({})", self.axiom, self.method),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AxiomError {
    #[error("message enumeration exceeded its budget of {0} transitions")]
    BudgetExceeded(usize),
}

/// Tuning for the bounded fallback.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Length bound for enumeration; `None` means `2 * |states|`.
    pub bound: Option<usize>,
    /// Cap on explored transitions per enumeration.
    pub node_budget: usize,
    /// Use enumeration for C3/C4/Mb even where an exact method applies.
    pub force_bounded: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            bound: None,
            node_budget: 20_000_000,
            force_bounded: false,
        }
    }
}

impl CheckOptions {
    pub fn bounded(len: usize) -> Self {
        CheckOptions {
            bound: Some(len),
            force_bounded: true,
            ..CheckOptions::default()
        }
    }

    fn bound_for(&self, system: &TokenSystem) -> usize {
        self.bound.unwrap_or(2 * system.state_count())
    }
}

// ---------------------------------------------------------------------------
// message enumeration

/// Which enumerated messages to yield.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MessageFilter {
    All,
    /// Non-empty closed messages.
    Closed,
    Concise,
    Producing(StateId),
}

#[derive(Debug, Clone)]
struct Frame {
    state: StateId,
    next: usize,
}

/// Stepwise-effective messages from one state, shortest first and in token
/// order within a length (iterative deepening).
#[derive(Debug, Clone)]
pub struct MessageStream<'a> {
    system: &'a TokenSystem,
    start: StateId,
    max_len: usize,
    filter: MessageFilter,
    budget: usize,
    nodes: usize,
    target: usize,
    in_pass: bool,
    extended: bool,
    finished: bool,
    stack: Vec<Frame>,
    prefix: Vec<TokenId>,
    used: Vec<bool>,
}

impl<'a> MessageStream<'a> {
    fn allowed(&self, token: TokenId) -> bool {
        if self.filter != MessageFilter::Concise {
            return true;
        }
        !self.used[self.system.reverse_table().class_of(token)]
    }

    fn accepts(&self, end: StateId, len: usize) -> bool {
        match self.filter {
            MessageFilter::All | MessageFilter::Concise => true,
            MessageFilter::Closed => len > 0 && end == self.start,
            MessageFilter::Producing(v) => end == v,
        }
    }

    fn set_used(&mut self, token: TokenId, on: bool) {
        if self.filter == MessageFilter::Concise {
            let c = self.system.reverse_table().class_of(token);
            self.used[c] = on;
        }
    }
}

impl Iterator for MessageStream<'_> {
    type Item = Result<Message, AxiomError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.finished {
                return None;
            }
            if !self.in_pass {
                if self.target > self.max_len || (self.target > 0 && !self.extended) {
                    self.finished = true;
                    return None;
                }
                self.extended = false;
                self.prefix.clear();
                self.stack.clear();
                if self.target == 0 {
                    self.target = 1;
                    self.extended = true;
                    if self.accepts(self.start, 0) {
                        return Some(Ok(Message::empty()));
                    }
                    continue;
                }
                self.in_pass = true;
                self.stack.push(Frame {
                    state: self.start,
                    next: 0,
                });
            }
            let Some(top) = self.stack.last() else {
                self.in_pass = false;
                self.target += 1;
                continue;
            };
            let state = top.state;
            let found = (top.next..self.system.token_count())
                .map(TokenId)
                .find(|&t| self.system.is_effective_token(state, t) && self.allowed(t));
            match found {
                None => {
                    self.stack.pop();
                    if let Some(t) = self.prefix.pop() {
                        self.set_used(t, false);
                    }
                }
                Some(t) => {
                    if let Some(top) = self.stack.last_mut() {
                        top.next = t.0 + 1;
                    }
                    self.nodes += 1;
                    if self.nodes > self.budget {
                        self.finished = true;
                        return Some(Err(AxiomError::BudgetExceeded(self.budget)));
                    }
                    let end = self.system.image(state, t);
                    if self.prefix.len() + 1 == self.target {
                        self.extended = true;
                        if self.accepts(end, self.target) {
                            let mut tokens = self.prefix.clone();
                            tokens.push(t);
                            return Some(Ok(Message::new(tokens)));
                        }
                    } else {
                        self.prefix.push(t);
                        self.set_used(t, true);
                        self.stack.push(Frame { state: end, next: 0 });
                    }
                }
            }
        }
    }
}

/// Every stepwise-effective message from `start` of length at most
/// `max_len` that passes `filter`.
pub fn enumerate_messages(
    system: &TokenSystem,
    start: StateId,
    max_len: usize,
    filter: MessageFilter,
) -> MessageStream<'_> {
    enumerate_messages_with_budget(system, start, max_len, filter, CheckOptions::default().node_budget)
}

pub fn enumerate_messages_with_budget(
    system: &TokenSystem,
    start: StateId,
    max_len: usize,
    filter: MessageFilter,
    budget: usize,
) -> MessageStream<'_> {
    MessageStream {
        system,
        start,
        max_len,
        filter,
        budget,
        nodes: 0,
        target: 0,
        in_pass: false,
        extended: false,
        finished: false,
        stack: Vec::new(),
        prefix: Vec::new(),
        used: vec![false; system.reverse_table().class_count()],
    }
}

/// Runs `violates` over every stepwise-effective message up to the bound,
/// shortest first across all starts. Returns the verdict.
fn bounded_check<F>(system: &TokenSystem, axiom: Axiom, opts: &CheckOptions, violates: F) -> AxiomVerdict
where
    F: Fn(StateId, &Message) -> bool,
{
    let bound = opts.bound_for(system);
    // Shortest-first across starts: run one length at a time.
    let mut streams: Vec<_> = system
        .states()
        .map(|s| {
            (
                s,
                enumerate_messages_with_budget(system, s, bound, MessageFilter::All, opts.node_budget)
                    .peekable(),
            )
        })
        .collect();
    for len in 0..=bound {
        let mut any = false;
        for (start, stream) in streams.iter_mut() {
            while let Some(item) = stream.next_if(|m| matches!(m, Ok(m) if m.len() == len)) {
                any = true;
                let Ok(message) = item else { unreachable!() };
                if violates(*start, &message) {
                    return AxiomVerdict::fail(
                        axiom,
                        Witness::Message {
                            start: *start,
                            message,
                        },
                        Method::Bounded(bound),
                    );
                }
            }
            if let Some(Err(AxiomError::BudgetExceeded(_))) = stream.peek() {
                return AxiomVerdict::pass(axiom, Method::Bounded(len.saturating_sub(1)));
            }
        }
        if !any {
            break;
        }
    }
    AxiomVerdict::pass(axiom, Method::Bounded(bound))
}

// ---------------------------------------------------------------------------
// C1, C2

pub fn check_c1(system: &TokenSystem) -> AxiomVerdict {
    for t in system.tokens() {
        match system.reverse_of(t) {
            Some(r) if r != t => {}
            _ => return AxiomVerdict::fail(Axiom::C1, Witness::Token(t), Method::Exact),
        }
    }
    AxiomVerdict::pass(Axiom::C1, Method::Exact)
}

pub fn check_c2(system: &TokenSystem) -> AxiomVerdict {
    for s in system.states() {
        let tree = BfsTree::new(system, s);
        if let Some(v) = system.states().find(|&v| !tree.contains(v)) {
            return AxiomVerdict::fail(Axiom::C2, Witness::Pair(s, v), Method::Exact);
        }
    }
    AxiomVerdict::pass(Axiom::C2, Method::Exact)
}

// ---------------------------------------------------------------------------
// C3, Mb: cycle space

/// Net count vector over reverse-pair classes. Pair classes count in Z
/// (canonical orientation positive), self-reverse classes in Z/2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct NetVector(Vec<i64>);

impl NetVector {
    fn zero(len: usize) -> Self {
        NetVector(vec![0; len])
    }

    fn step(&self, system: &TokenSystem, token: TokenId) -> Self {
        let table = system.reverse_table();
        let mut v = self.0.clone();
        let c = table.class_of(token);
        match table.kind(c) {
            ClassKind::SelfReverse => v[c] = (v[c] + 1).rem_euclid(2),
            _ => v[c] += table.sign(token),
        }
        NetVector(v)
    }
}

enum CycleDefect {
    /// A closed, non-vacuous message.
    Unbalanced { start: StateId, message: Message },
    /// A vacuous message between distinct states.
    Collision { start: StateId, message: Message },
}

/// Spanning forest with potentials. Requires every token to have a reverse.
fn cycle_space_defects(system: &TokenSystem, want_collisions: bool) -> Option<CycleDefect> {
    let n = system.state_count();
    let classes = system.reverse_table().class_count();
    let mut potential: Vec<Option<NetVector>> = vec![None; n];
    let mut tree_of: Vec<usize> = vec![usize::MAX; n];
    let mut trees = Vec::new();
    for root in system.states() {
        if potential[root.0].is_some() {
            continue;
        }
        let tree = BfsTree::new(system, root);
        potential[root.0] = Some(NetVector::zero(classes));
        for &s in &tree.order()[1..] {
            let (p, t) = tree.parent(s).expect("non-root tree states have a parent");
            let next = potential[p.0].as_ref().map(|base| base.step(system, t));
            potential[s.0] = next;
        }
        for &s in tree.order() {
            tree_of[s.0] = trees.len();
        }
        trees.push(tree);
    }
    let pot = |s: StateId| potential[s.0].as_ref().expect("every state lies in a tree");

    // Fundamental cycles: every effective step must agree with the potentials.
    for s in system.states() {
        for t in system.effective_tokens(s) {
            let v = system.image(s, t);
            if pot(s).step(system, t) != *pot(v) {
                let tree = &trees[tree_of[s.0]];
                let back = tree
                    .tree_message(system, v, s)
                    .expect("reverses exist on the exact path");
                let message = Message::new(vec![t]).concat(&back);
                return Some(CycleDefect::Unbalanced { start: s, message });
            }
        }
    }
    if !want_collisions {
        return None;
    }
    for s in system.states() {
        for v in system.states().skip(s.0 + 1) {
            if tree_of[s.0] == tree_of[v.0] && pot(s) == pot(v) {
                let tree = &trees[tree_of[s.0]];
                let message = tree
                    .tree_message(system, s, v)
                    .expect("reverses exist on the exact path");
                return Some(CycleDefect::Collision { start: s, message });
            }
        }
    }
    None
}

fn all_tokens_reversible(system: &TokenSystem) -> bool {
    system.tokens().all(|t| system.reverse_of(t).is_some())
}

pub fn check_c3(system: &TokenSystem) -> AxiomVerdict {
    check_c3_with(system, &CheckOptions::default())
}

pub fn check_c3_with(system: &TokenSystem, opts: &CheckOptions) -> AxiomVerdict {
    if opts.force_bounded || !all_tokens_reversible(system) {
        return bounded_check(system, Axiom::C3, opts, |s, m| {
            system.is_closed(s, m) != system.is_vacuous(m)
        });
    }
    match cycle_space_defects(system, true) {
        None => AxiomVerdict::pass(Axiom::C3, Method::Exact),
        Some(CycleDefect::Unbalanced { start, message })
        | Some(CycleDefect::Collision { start, message }) => {
            AxiomVerdict::fail(Axiom::C3, Witness::Message { start, message }, Method::Exact)
        }
    }
}

pub fn check_mb(system: &TokenSystem) -> AxiomVerdict {
    check_mb_with(system, &CheckOptions::default())
}

pub fn check_mb_with(system: &TokenSystem, opts: &CheckOptions) -> AxiomVerdict {
    if opts.force_bounded || !all_tokens_reversible(system) {
        return bounded_check(system, Axiom::Mb, opts, |s, m| {
            system.is_closed(s, m) && !system.is_vacuous(m)
        });
    }
    match cycle_space_defects(system, false) {
        Some(CycleDefect::Unbalanced { start, message }) => {
            AxiomVerdict::fail(Axiom::Mb, Witness::Message { start, message }, Method::Exact)
        }
        _ => AxiomVerdict::pass(Axiom::Mb, Method::Exact),
    }
}

// ---------------------------------------------------------------------------
// C4

/// First token whose occurrences fail to alternate with its reverse.
///
/// Self-reverse tokens alternate with themselves trivially. A token without
/// a reverse may occur at most once.
pub fn alternation_violation(system: &TokenSystem, message: &Message) -> Option<TokenId> {
    let table = system.reverse_table();
    let mut last: Vec<Option<TokenId>> = vec![None; table.class_count()];
    for &t in message.tokens() {
        let c = table.class_of(t);
        if table.kind(c) == ClassKind::SelfReverse {
            continue;
        }
        if last[c] == Some(t) {
            return Some(t);
        }
        last[c] = Some(t);
    }
    None
}

pub fn check_c4(system: &TokenSystem) -> AxiomVerdict {
    check_c4_with(system, &CheckOptions::default())
}

pub fn check_c4_with(system: &TokenSystem, opts: &CheckOptions) -> AxiomVerdict {
    if opts.force_bounded {
        return bounded_check(system, Axiom::C4, opts, |_, m| {
            alternation_violation(system, m).is_some()
        });
    }
    let n = system.state_count();
    for tau in system.tokens() {
        let rev = system.reverse_of(tau);
        if rev == Some(tau) {
            continue;
        }
        let excluded = |t: TokenId| t == tau || Some(t) == rev;
        // BFS from every image S tau, S in U_tau, avoiding tau and its reverse.
        let mut parent: Vec<Option<(StateId, TokenId)>> = vec![None; n];
        let mut origin: Vec<Option<StateId>> = vec![None; n];
        let mut queue = VecDeque::new();
        for s in system.effective_domain(tau) {
            let img = system.image(s, tau);
            if origin[img.0].is_none() {
                origin[img.0] = Some(s);
                queue.push_back(img);
            }
        }
        while let Some(x) = queue.pop_front() {
            if system.is_effective_token(x, tau) {
                let mut path = Vec::new();
                let mut y = x;
                while let Some((p, t)) = parent[y.0] {
                    path.push(t);
                    y = p;
                }
                path.reverse();
                let start = origin[y.0].expect("path roots at an image state");
                let mut tokens = vec![tau];
                tokens.extend(path);
                tokens.push(tau);
                return AxiomVerdict::fail(
                    Axiom::C4,
                    Witness::Message {
                        start,
                        message: Message::new(tokens),
                    },
                    Method::Exact,
                );
            }
            for t in system.effective_tokens(x) {
                if excluded(t) {
                    continue;
                }
                let v = system.image(x, t);
                if origin[v.0].is_none() {
                    parent[v.0] = Some((x, t));
                    origin[v.0] = origin[x.0];
                    queue.push_back(v);
                }
            }
        }
    }
    AxiomVerdict::pass(Axiom::C4, Method::Exact)
}

// ---------------------------------------------------------------------------
// Ma

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct ClassSet(Vec<u64>);

impl ClassSet {
    fn new(n: usize) -> Self {
        ClassSet(vec![0; n.div_ceil(64).max(1)])
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn with(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.0[i / 64] |= 1 << (i % 64);
        s
    }
}

/// States reachable from `start` by concise messages.
pub fn concise_reachable(system: &TokenSystem, start: StateId) -> Vec<bool> {
    let table = system.reverse_table();
    let mut reached = vec![false; system.state_count()];
    reached[start.0] = true;
    let mut seen = HashSet::new();
    let init = (start, ClassSet::new(table.class_count()));
    seen.insert(init.clone());
    let mut stack = vec![init];
    while let Some((s, used)) = stack.pop() {
        for t in system.effective_tokens(s) {
            let c = table.class_of(t);
            if used.contains(c) {
                continue;
            }
            let next = (system.image(s, t), used.with(c));
            reached[next.0 .0] = true;
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    reached
}

pub fn check_ma(system: &TokenSystem) -> AxiomVerdict {
    for s in system.states() {
        let reached = concise_reachable(system, s);
        if let Some(v) = system.states().find(|&v| !reached[v.0]) {
            return AxiomVerdict::fail(Axiom::Ma, Witness::Pair(s, v), Method::Exact);
        }
    }
    AxiomVerdict::pass(Axiom::Ma, Method::Exact)
}

// ---------------------------------------------------------------------------
// classification

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    Medium,
    CubicalNotMedium,
    NotCubical,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::Medium => "medium",
            SystemKind::CubicalNotMedium => "cubical_not_medium",
            SystemKind::NotCubical => "not_cubical",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub kind: SystemKind,
    pub verdicts: Vec<AxiomVerdict>,
}

impl Classification {
    pub fn verdict(&self, axiom: Axiom) -> &AxiomVerdict {
        self.verdicts
            .iter()
            .find(|v| v.axiom == axiom)
            .expect("classification carries all six verdicts")
    }

    pub fn failing(&self) -> impl Iterator<Item = &AxiomVerdict> {
        self.verdicts.iter().filter(|v| !v.holds)
    }
}

pub fn check_axiom(system: &TokenSystem, axiom: Axiom, opts: &CheckOptions) -> AxiomVerdict {
    match axiom {
        Axiom::C1 => check_c1(system),
        Axiom::C2 => check_c2(system),
        Axiom::C3 => check_c3_with(system, opts),
        Axiom::C4 => check_c4_with(system, opts),
        Axiom::Ma => check_ma(system),
        Axiom::Mb => check_mb_with(system, opts),
    }
}

pub fn classify(system: &TokenSystem) -> Classification {
    classify_with(system, &CheckOptions::default())
}

pub fn classify_with(system: &TokenSystem, opts: &CheckOptions) -> Classification {
    let verdicts: Vec<_> = Axiom::ALL
        .iter()
        .map(|&a| check_axiom(system, a, opts))
        .collect();
    let holds = |a: Axiom| verdicts.iter().any(|v| v.axiom == a && v.holds);
    let cubical = Axiom::CUBICAL.iter().all(|&a| holds(a));
    let kind = match (cubical, holds(Axiom::Ma) && holds(Axiom::Mb)) {
        (true, true) => SystemKind::Medium,
        (true, false) => SystemKind::CubicalNotMedium,
        (false, _) => SystemKind::NotCubical,
    };
    Classification { kind, verdicts }
}

/// The first failing cubical axiom, if any.
pub fn cubical_defect(system: &TokenSystem) -> Option<AxiomVerdict> {
    Axiom::CUBICAL
        .iter()
        .map(|&a| check_axiom(system, a, &CheckOptions::default()))
        .find(|v| !v.holds)
}

pub fn is_cubical(system: &TokenSystem) -> bool {
    cubical_defect(system).is_none()
}

/// Replays a failed verdict's witness through the core predicates and
/// reports whether it is a genuine violation.
pub fn witness_replays(system: &TokenSystem, verdict: &AxiomVerdict) -> bool {
    let Some(witness) = &verdict.witness else {
        return false;
    };
    match (verdict.axiom, witness) {
        (Axiom::C1, Witness::Token(t)) => match system.reverse_of(*t) {
            None => true,
            Some(r) => r == *t,
        },
        (Axiom::C2, Witness::Pair(a, b)) => {
            a != b && !reachable_by_messages(system, *a, *b)
        }
        (Axiom::Ma, Witness::Pair(a, b)) => {
            a != b
                && !enumerate_messages(
                    system,
                    *a,
                    system.reverse_table().class_count(),
                    MessageFilter::Concise,
                )
                .filter_map(Result::ok)
                .any(|m| system.apply(*a, &m) == *b && system.is_concise(*a, &m))
        }
        (Axiom::C3, Witness::Message { start, message }) => {
            system.is_stepwise_effective(*start, message)
                && system.is_closed(*start, message) != system.is_vacuous(message)
        }
        (Axiom::Mb, Witness::Message { start, message }) => {
            system.is_closed(*start, message) && !system.is_vacuous(message)
        }
        (Axiom::C4, Witness::Message { start, message }) => {
            system.is_stepwise_effective(*start, message)
                && alternation_violation(system, message).is_some()
        }
        _ => false,
    }
}

/// Reachability via stepwise-effective messages shorter than `|states|`.
fn reachable_by_messages(system: &TokenSystem, from: StateId, to: StateId) -> bool {
    enumerate_messages(system, from, system.state_count(), MessageFilter::Producing(to))
        .filter_map(Result::ok)
        .next()
        .is_some()
}
