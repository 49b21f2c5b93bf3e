//! The graph of a token system and the embedding of a cubical system into
//! a cube.
//!
//! Each reverse pair `{tau, tau~}` becomes a label `j:<name>`, named after
//! the lexicographically smaller of the two token names. A state maps to
//! the set of labels crossed an odd number of times on a path from the
//! base; the BFS tree supplies one such path per state.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::axioms::{cubical_defect, Axiom};
use crate::gsystem::{build_gsystem, CubeGraph, GSystem, SetFamily};
use crate::paths::BfsTree;
use crate::system::{check_isomorphism, ClassKind, Isomorphism, StateId, TokenId, TokenSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepresentationError {
    #[error("system is not cubical: axiom {0} fails")]
    NotCubical(Axiom),
    #[error("no state #{0}")]
    UnknownState(usize),
    #[error("internal consistency error: {0}")]
    InternalInconsistency(String),
}

/// Label name of a reverse-pair class.
pub fn label_name(system: &TokenSystem, class: usize) -> String {
    let table = system.reverse_table();
    let t = table.canonical(class);
    let name = system.token_name(t);
    match table.reverse(t) {
        Some(r) if system.token_name(r) < name => format!("j:{}", system.token_name(r)),
        _ => format!("j:{name}"),
    }
}

/// Undirected graph on the states: `{S, T}` is an edge when `S tau = T`
/// for some token, labelled with the class of `tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemGraph {
    state_count: usize,
    labels: Vec<String>,
    edges: Vec<(StateId, StateId, usize)>,
}

impl SystemGraph {
    pub fn state_count(&self) -> usize {
        self.state_count
    }

    /// Label names, indexed by reverse-pair class.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `(a, b, class)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(StateId, StateId, usize)] {
        &self.edges
    }

    pub fn label_of(&self, a: StateId, b: StateId) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges
            .iter()
            .find(|e| (e.0, e.1) == key)
            .map(|e| e.2)
    }
}

/// The system graph without checking the axioms. When several classes act
/// on one pair of states, the first in token order labels the edge.
pub fn system_graph_unchecked(system: &TokenSystem) -> SystemGraph {
    let table = system.reverse_table();
    let labels = (0..table.class_count()).map(|c| label_name(system, c)).collect();
    let mut edges: Vec<(StateId, StateId, usize)> = Vec::new();
    for t in system.tokens() {
        for s in system.effective_domain(t) {
            let v = system.image(s, t);
            let (a, b) = (s.min(v), s.max(v));
            if !edges.iter().any(|e| (e.0, e.1) == (a, b)) {
                edges.push((a, b, table.class_of(t)));
            }
        }
    }
    edges.sort();
    SystemGraph {
        state_count: system.state_count(),
        labels,
        edges,
    }
}

pub fn system_graph(system: &TokenSystem) -> Result<SystemGraph, RepresentationError> {
    if let Some(v) = cubical_defect(system) {
        return Err(RepresentationError::NotCubical(v.axiom));
    }
    Ok(system_graph_unchecked(system))
}

/// Label sets for the states, orientations for the tokens, and the
/// G-system they span.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub base: StateId,
    /// Label names, indexed by reverse-pair class.
    pub labels: Vec<String>,
    /// Label set of each state.
    pub alpha: Vec<BTreeSet<usize>>,
    /// `(label, adds)`: the token maps to `g:label` when `adds`, else to
    /// `g~:label`.
    pub beta: Vec<(usize, bool)>,
    gsystem: GSystem,
}

impl Embedding {
    pub fn gsystem(&self) -> &GSystem {
        &self.gsystem
    }

    pub fn alpha_names(&self, state: StateId) -> Vec<&str> {
        self.alpha[state.0].iter().map(|&j| self.labels[j].as_str()).collect()
    }

    /// `{j:tau,j:mu}`.
    pub fn render_alpha(&self, state: StateId) -> String {
        format!("{{{}}}", self.alpha_names(state).join(","))
    }

    /// Name of the G-system token a token maps to.
    pub fn beta_name(&self, token: TokenId) -> String {
        let (j, adds) = self.beta[token.0];
        let label = &self.labels[j];
        if adds {
            crate::gsystem::add_token_name(label)
        } else {
            crate::gsystem::remove_token_name(label)
        }
    }

    /// The isomorphism from the system onto the G-system.
    pub fn isomorphism(&self) -> Isomorphism {
        isomorphism_onto(&self.gsystem, &self.beta)
    }
}

fn isomorphism_onto(g: &GSystem, beta: &[(usize, bool)]) -> Isomorphism {
    Isomorphism {
        states: (0..g.family().len()).map(StateId).collect(),
        tokens: beta
            .iter()
            .map(|&(j, adds)| {
                let t = if adds { g.gamma(j) } else { g.gamma_reverse(j) };
                t.unwrap_or(TokenId(usize::MAX))
            })
            .collect(),
    }
}

/// The G-system on the label sets `alpha` with the system's adjacencies as
/// edges. State `i` of the result is state `i` of `system`.
fn image_gsystem(
    system: &TokenSystem,
    labels: &[String],
    alpha: &[BTreeSet<usize>],
) -> Result<GSystem, String> {
    let family = SetFamily::new(labels.to_vec(), alpha.to_vec()).map_err(|e| e.to_string())?;
    let mut edges = Vec::new();
    for t in system.tokens() {
        for s in system.effective_domain(t) {
            edges.push((s.0, system.image(s, t).0));
        }
    }
    let graph = CubeGraph::new(family, edges).map_err(|e| e.to_string())?;
    build_gsystem(graph).map_err(|e| e.to_string())
}

/// Embeds a cubical system; `base` defaults to the first state.
pub fn embed(system: &TokenSystem, base: Option<StateId>) -> Result<Embedding, RepresentationError> {
    let base = base.unwrap_or(StateId(0));
    if base.0 >= system.state_count() {
        return Err(RepresentationError::UnknownState(base.0));
    }
    if let Some(v) = cubical_defect(system) {
        return Err(RepresentationError::NotCubical(v.axiom));
    }
    let internal = RepresentationError::InternalInconsistency;
    let table = system.reverse_table();
    if let Some(t) = system
        .tokens()
        .find(|&t| table.kind(table.class_of(t)) != ClassKind::Pair)
    {
        return Err(internal(format!(
            "token {} has no distinct reverse",
            system.token_name(t)
        )));
    }
    let labels: Vec<String> = (0..table.class_count()).map(|c| label_name(system, c)).collect();

    let tree = BfsTree::new(system, base);
    let mut alpha = vec![BTreeSet::new(); system.state_count()];
    for &s in &tree.order()[1..] {
        let (parent, t) = tree
            .parent(s)
            .ok_or_else(|| internal("tree vertex without parent".into()))?;
        let mut set = alpha[parent.0].clone();
        let j = table.class_of(t);
        if !set.remove(&j) {
            set.insert(j);
        }
        alpha[s.0] = set;
    }
    if tree.order().len() != system.state_count() {
        return Err(internal("system graph is disconnected".into()));
    }

    let mut beta: Vec<Option<(usize, bool)>> = vec![None; system.token_count()];
    for t in system.tokens() {
        let j = table.class_of(t);
        for s in system.effective_domain(t) {
            let (from, to) = (&alpha[s.0], &alpha[system.image(s, t).0]);
            let diff: Vec<usize> = from.symmetric_difference(to).copied().collect();
            if diff != [j] {
                return Err(internal(format!(
                    "{} and {} are not one label apart",
                    system.state_name(s),
                    system.state_name(system.image(s, t))
                )));
            }
            let orientation = (j, to.contains(&j));
            match beta[t.0] {
                Some(o) if o != orientation => {
                    return Err(internal(format!(
                        "token {} both adds and removes its label",
                        system.token_name(t)
                    )))
                }
                _ => beta[t.0] = Some(orientation),
            }
        }
    }
    let beta: Vec<(usize, bool)> = beta
        .into_iter()
        .map(|b| b.ok_or_else(|| internal("ineffective token".into())))
        .collect::<Result<_, _>>()?;

    let gsystem = image_gsystem(system, &labels, &alpha).map_err(internal)?;
    let embedding = Embedding {
        base,
        labels,
        alpha,
        beta,
        gsystem,
    };
    if check_isomorphism(system, embedding.gsystem.system(), &embedding.isomorphism()) != Ok(true) {
        return Err(internal("embedding is not an isomorphism".into()));
    }
    Ok(embedding)
}

/// Replays every property of an embedding against `system`: shapes, empty
/// base set, injectivity, one-label steps agreeing with `beta`, and the
/// isomorphism onto a G-system rebuilt from `alpha`.
pub fn verify_embedding(system: &TokenSystem, embedding: &Embedding) -> bool {
    let Embedding {
        base,
        labels,
        alpha,
        beta,
        ..
    } = embedding;
    if alpha.len() != system.state_count()
        || beta.len() != system.token_count()
        || base.0 >= alpha.len()
        || !alpha[base.0].is_empty()
    {
        return false;
    }
    if alpha.iter().flatten().chain(beta.iter().map(|b| &b.0)).any(|&j| j >= labels.len()) {
        return false;
    }
    let distinct: BTreeSet<&BTreeSet<usize>> = alpha.iter().collect();
    if distinct.len() != alpha.len() {
        return false;
    }
    for t in system.tokens() {
        let (j, adds) = beta[t.0];
        for s in system.effective_domain(t) {
            let (from, to) = (&alpha[s.0], &alpha[system.image(s, t).0]);
            let diff: Vec<usize> = from.symmetric_difference(to).copied().collect();
            if diff != [j] || to.contains(&j) != adds {
                return false;
            }
        }
    }
    let Ok(g) = image_gsystem(system, labels, alpha) else {
        return false;
    };
    if g.system().token_count() != system.token_count() {
        return false;
    }
    check_isomorphism(system, g.system(), &isomorphism_onto(&g, beta)) == Ok(true)
}

/// Whether the system's graph embeds into a cube; `reason` explains a
/// negative answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphVerdict {
    pub cubical: bool,
    pub reason: Option<String>,
}

pub fn is_cubical_system_graph(system: &TokenSystem) -> GraphVerdict {
    match embed(system, None) {
        Ok(_) => GraphVerdict {
            cubical: true,
            reason: None,
        },
        Err(e) => GraphVerdict {
            cubical: false,
            reason: Some(e.to_string()),
        },
    }
}
