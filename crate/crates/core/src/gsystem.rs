//! Set families, subgraphs of the cube on a ground set, and the token
//! systems they induce.
//!
//! For a connected subgraph of the cube, element `x` contributes the token
//! `g:x`, adding `x` along an edge when the edge is present, and `g~:x`,
//! removing it. Both act as the identity elsewhere.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::system::{Message, StateId, SystemError, TokenId, TokenSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GSystemError {
    #[error("ground element `{0}` is listed twice")]
    DuplicateElement(String),
    #[error("`{0}` is not a ground element")]
    UnknownElement(String),
    #[error("member {0} is listed twice")]
    DuplicateMember(String),
    #[error("family needs at least two members, got {0}")]
    TooFewMembers(usize),
    #[error("{0} is not a member of the family")]
    UnknownMember(String),
    #[error("{0} and {1} do not differ in exactly one element")]
    NotCubeEdge(String, String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("every element lies in all members or in none")]
    DegenerateGround,
    #[error("step {0} of the walk is not an edge")]
    NotAWalk(usize),
    #[error("token {0} of the message is ineffective")]
    NotStepwiseEffective(usize),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

/// A finite family of subsets of an ordered ground set. Elements are
/// stored as indices into the ground.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground: Vec<String>,
    members: Vec<BTreeSet<usize>>,
}

impl SetFamily {
    pub fn new(
        ground: Vec<String>,
        members: Vec<BTreeSet<usize>>,
    ) -> Result<Self, GSystemError> {
        let mut seen = BTreeSet::new();
        for x in &ground {
            if !seen.insert(x.as_str()) {
                return Err(GSystemError::DuplicateElement(x.clone()));
            }
        }
        let mut family = SetFamily {
            ground,
            members: Vec::with_capacity(members.len()),
        };
        let mut index = BTreeSet::new();
        for m in members {
            if let Some(&x) = m.iter().find(|&&x| x >= family.ground.len()) {
                return Err(GSystemError::UnknownElement(format!("#{x}")));
            }
            if !index.insert(m.clone()) {
                return Err(GSystemError::DuplicateMember(family.render(&m)));
            }
            family.members.push(m);
        }
        if family.members.len() < 2 {
            return Err(GSystemError::TooFewMembers(family.members.len()));
        }
        Ok(family)
    }

    /// Members given by element names.
    pub fn from_names<G, M, E>(ground: G, members: M) -> Result<Self, GSystemError>
    where
        G: IntoIterator,
        G::Item: Into<String>,
        M: IntoIterator,
        M::Item: IntoIterator<Item = E>,
        E: AsRef<str>,
    {
        let ground: Vec<String> = ground.into_iter().map(Into::into).collect();
        let lookup: HashMap<&str, usize> =
            ground.iter().enumerate().map(|(i, x)| (x.as_str(), i)).collect();
        let mut sets = Vec::new();
        for m in members {
            let mut set = BTreeSet::new();
            for e in m {
                let x = *lookup
                    .get(e.as_ref())
                    .ok_or_else(|| GSystemError::UnknownElement(e.as_ref().to_string()))?;
                set.insert(x);
            }
            sets.push(set);
        }
        SetFamily::new(ground, sets)
    }

    /// All subsets of the ground, ordered by size, then lexicographically.
    pub fn power_set<G>(ground: G) -> Result<Self, GSystemError>
    where
        G: IntoIterator,
        G::Item: Into<String>,
    {
        let ground: Vec<String> = ground.into_iter().map(Into::into).collect();
        let n = ground.len();
        let mut members: Vec<BTreeSet<usize>> = (0u64..1 << n)
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
            .collect();
        members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        SetFamily::new(ground, members)
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn members(&self) -> &[BTreeSet<usize>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, i: usize) -> &BTreeSet<usize> {
        &self.members[i]
    }

    pub fn index_of(&self, set: &BTreeSet<usize>) -> Option<usize> {
        self.members.iter().position(|m| m == set)
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.ground.iter().position(|x| x == name)
    }

    pub fn union(&self) -> BTreeSet<usize> {
        self.members.iter().flatten().copied().collect()
    }

    pub fn intersection(&self) -> BTreeSet<usize> {
        let mut iter = self.members.iter();
        let first = iter.next().cloned().unwrap_or_default();
        iter.fold(first, |acc, m| acc.intersection(m).copied().collect())
    }

    /// `{x,y}`; the empty set renders as `{}`.
    pub fn render(&self, set: &BTreeSet<usize>) -> String {
        let names: Vec<&str> = set.iter().map(|&x| self.ground[x].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Cube edges between members: pairs `i < j` at distance one.
    pub fn induced_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.members.len() {
            for j in i + 1..self.members.len() {
                if distance(&self.members[i], &self.members[j]) == 1 {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}

/// `|A Δ B|`.
pub fn distance(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> usize {
    a.symmetric_difference(b).count()
}

/// A connected subgraph of the cube on a family's ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeGraph {
    family: SetFamily,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl CubeGraph {
    /// Edges are member index pairs, in either orientation; duplicates are
    /// merged.
    pub fn new(family: SetFamily, edges: Vec<(usize, usize)>) -> Result<Self, GSystemError> {
        let n = family.len();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(GSystemError::UnknownMember(format!("#{}", a.max(b))));
            }
            if distance(family.member(a), family.member(b)) != 1 {
                return Err(GSystemError::NotCubeEdge(
                    family.render(family.member(a)),
                    family.render(family.member(b)),
                ));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &set {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let graph = CubeGraph {
            family,
            edges: set.into_iter().collect(),
            adjacency,
        };
        if !graph.is_connected() {
            return Err(GSystemError::Disconnected);
        }
        Ok(graph)
    }

    /// The induced subgraph: every cube edge between members.
    pub fn induced(family: SetFamily) -> Result<Self, GSystemError> {
        let edges = family.induced_edges();
        CubeGraph::new(family, edges)
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, member: usize) -> &[usize] {
        &self.adjacency[member]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    fn is_connected(&self) -> bool {
        let n = self.family.len();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }
}

/// The token system of a cube subgraph. State `i` is member `i`.
#[derive(Debug, Clone)]
pub struct GSystem {
    graph: CubeGraph,
    system: TokenSystem,
    /// `(element, g:x, g~:x)` for each element of `∪F \ ∩F`.
    elements: Vec<(usize, TokenId, TokenId)>,
}

impl GSystem {
    pub fn graph(&self) -> &CubeGraph {
        &self.graph
    }

    pub fn family(&self) -> &SetFamily {
        self.graph.family()
    }

    pub fn system(&self) -> &TokenSystem {
        &self.system
    }

    pub fn into_system(self) -> TokenSystem {
        self.system
    }

    pub fn member(&self, state: StateId) -> &BTreeSet<usize> {
        self.graph.family().member(state.0)
    }

    pub fn state_of(&self, set: &BTreeSet<usize>) -> Option<StateId> {
        self.graph.family().index_of(set).map(StateId)
    }

    /// Elements of `∪F \ ∩F` with their add and remove tokens.
    pub fn elements(&self) -> &[(usize, TokenId, TokenId)] {
        &self.elements
    }

    pub fn gamma(&self, element: usize) -> Option<TokenId> {
        self.elements.iter().find(|e| e.0 == element).map(|e| e.1)
    }

    pub fn gamma_reverse(&self, element: usize) -> Option<TokenId> {
        self.elements.iter().find(|e| e.0 == element).map(|e| e.2)
    }

    /// `(element, adds)` for a token of this system.
    pub fn token_action(&self, token: TokenId) -> Option<(usize, bool)> {
        self.elements.iter().find_map(|&(x, add, remove)| {
            if token == add {
                Some((x, true))
            } else if token == remove {
                Some((x, false))
            } else {
                None
            }
        })
    }
}

pub fn add_token_name(element: &str) -> String {
    format!("g:{element}")
}

pub fn remove_token_name(element: &str) -> String {
    format!("g~:{element}")
}

pub fn build_gsystem(graph: CubeGraph) -> Result<GSystem, GSystemError> {
    let family = graph.family();
    let union = family.union();
    let meet = family.intersection();
    let active: Vec<usize> = union.difference(&meet).copied().collect();
    if active.is_empty() {
        return Err(GSystemError::DegenerateGround);
    }
    let n = family.len();
    let states: Vec<String> = family.members().iter().map(|m| family.render(m)).collect();
    let mut tokens = Vec::with_capacity(2 * active.len());
    for &x in &active {
        let mut add: Vec<StateId> = (0..n).map(StateId).collect();
        let mut remove = add.clone();
        for &(a, b) in graph.edges() {
            let (lo, hi) = if family.member(a).contains(&x) { (b, a) } else { (a, b) };
            if family.member(hi).contains(&x) && !family.member(lo).contains(&x) {
                add[lo] = StateId(hi);
                remove[hi] = StateId(lo);
            }
        }
        let name = &family.ground()[x];
        tokens.push((add_token_name(name), add));
        tokens.push((remove_token_name(name), remove));
    }
    let system = TokenSystem::from_images(states, tokens).map_err(|e| match e {
        SystemError::IdentityToken(t) => GSystemError::Internal(format!("token {t} is the identity")),
        other => GSystemError::Internal(other.to_string()),
    })?;
    let elements = active
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, TokenId(2 * i), TokenId(2 * i + 1)))
        .collect();
    Ok(GSystem {
        graph,
        system,
        elements,
    })
}

/// The stepwise-effective message whose produced sequence is `walk`.
pub fn walk_to_message(g: &GSystem, walk: &[StateId]) -> Result<Message, GSystemError> {
    if let Some(&s) = walk.iter().find(|s| s.0 >= g.family().len()) {
        return Err(GSystemError::UnknownMember(format!("#{}", s.0)));
    }
    let mut message = Message::empty();
    for (i, pair) in walk.windows(2).enumerate() {
        let (a, b) = (pair[0], pair[1]);
        if !g.graph.has_edge(a.0, b.0) {
            return Err(GSystemError::NotAWalk(i));
        }
        let (ma, mb) = (g.member(a), g.member(b));
        let token = match mb.difference(ma).next() {
            Some(&x) => g.gamma(x),
            None => ma.difference(mb).next().and_then(|&x| g.gamma_reverse(x)),
        };
        message.push(token.ok_or_else(|| GSystemError::Internal("edge without token".into()))?);
    }
    Ok(message)
}

/// The walk a stepwise-effective message traces from `start`.
pub fn message_to_walk(
    g: &GSystem,
    start: StateId,
    message: &Message,
) -> Result<Vec<StateId>, GSystemError> {
    let mut walk = vec![start];
    let mut s = start;
    for (i, &t) in message.tokens().iter().enumerate() {
        let next = g.system.image(s, t);
        if next == s {
            return Err(GSystemError::NotStepwiseEffective(i));
        }
        walk.push(next);
        s = next;
    }
    Ok(walk)
}

/// Element names `x1, x2, ...`.
pub fn numbered_ground(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// A random connected cube subgraph on `ground_size` elements with
/// `members` vertices (capped at `2^ground_size`).
///
/// Members are grown as a random tree: each new member flips one element
/// of an existing one. Every other cube edge between members is then kept
/// independently with probability `p`.
pub fn random_cube_graph<R: Rng + ?Sized>(
    rng: &mut R,
    ground_size: usize,
    members: usize,
    p: f64,
) -> CubeGraph {
    assert!((1..20).contains(&ground_size));
    let target = members.clamp(2, 1 << ground_size);
    let start: BTreeSet<usize> = (0..ground_size).filter(|_| rng.gen_bool(0.5)).collect();
    let mut sets = vec![start];
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::from([(sets[0].clone(), 0)]);
    let mut tree = BTreeSet::new();
    while sets.len() < target {
        let from = rng.gen_range(0..sets.len());
        let x = rng.gen_range(0..ground_size);
        let mut next = sets[from].clone();
        if !next.remove(&x) {
            next.insert(x);
        }
        if index.contains_key(&next) {
            continue;
        }
        index.insert(next.clone(), sets.len());
        tree.insert((from, sets.len()));
        sets.push(next);
    }
    // Shuffle so the first member is not always the tree root.
    let mut position: Vec<usize> = (0..sets.len()).collect();
    position.shuffle(rng);
    let mut shuffled = vec![BTreeSet::new(); sets.len()];
    for (i, set) in sets.into_iter().enumerate() {
        shuffled[position[i]] = set;
    }
    let tree: BTreeSet<(usize, usize)> = tree
        .into_iter()
        .map(|(a, b)| (position[a].min(position[b]), position[a].max(position[b])))
        .collect();
    let family = SetFamily::new(numbered_ground(ground_size), shuffled).expect("distinct members");
    let mut edges: Vec<(usize, usize)> = tree.iter().copied().collect();
    for pair in family.induced_edges() {
        if !tree.contains(&pair) && rng.gen_bool(p) {
            edges.push(pair);
        }
    }
    CubeGraph::new(family, edges).expect("grown tree is connected")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{classify, SystemKind};
    use crate::system::{check_isomorphism, tests::cub4, Isomorphism};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    /// All subsets of {x,y}, without the edge {∅,{y}}.
    fn example_graph() -> CubeGraph {
        let family =
            SetFamily::from_names(["x", "y"], [vec![], vec!["x"], vec!["x", "y"], vec!["y"]])
                .unwrap();
        CubeGraph::new(family, vec![(0, 1), (1, 2), (3, 2)]).unwrap()
    }

    #[test]
    fn example_graph_is_cub4() {
        let g = build_gsystem(example_graph()).unwrap();
        let sys = g.system();
        assert_eq!(sys.state_names(), ["{}", "{x}", "{x,y}", "{y}"]);
        assert_eq!(sys.token_names(), ["g:x", "g~:x", "g:y", "g~:y"]);
        let iso = Isomorphism::from_names(
            &cub4(),
            sys,
            &[("S", "{}"), ("T", "{x}"), ("Q", "{x,y}"), ("P", "{y}")],
            &[("tau", "g:x"), ("tau~", "g~:x"), ("mu", "g:y"), ("mu~", "g~:y")],
        )
        .unwrap();
        assert!(check_isomorphism(&cub4(), sys, &iso).unwrap());
        assert_eq!(classify(sys).kind, SystemKind::CubicalNotMedium);
    }

    #[test]
    fn small_cases() {
        let edge = CubeGraph::induced(SetFamily::from_names(["x"], [vec![], vec!["x"]]).unwrap())
            .unwrap();
        let g = build_gsystem(edge).unwrap();
        assert_eq!(g.system().state_count(), 2);
        assert_eq!(g.system().reverse_of(TokenId(0)), Some(TokenId(1)));
        assert_eq!(classify(g.system()).kind, SystemKind::Medium);

        let square = CubeGraph::induced(SetFamily::power_set(["x", "y"]).unwrap()).unwrap();
        assert_eq!(square.edges().len(), 4);
        let g = build_gsystem(square).unwrap();
        assert_eq!(classify(g.system()).kind, SystemKind::Medium);
    }

    #[test]
    fn rejects_bad_graphs() {
        let fam = SetFamily::from_names(["x", "y"], [vec![], vec!["x", "y"]]).unwrap();
        assert!(matches!(
            CubeGraph::new(fam.clone(), vec![(0, 1)]),
            Err(GSystemError::NotCubeEdge(_, _))
        ));
        assert_eq!(CubeGraph::induced(fam), Err(GSystemError::Disconnected));
        let fam = SetFamily::from_names(["x", "y"], [vec!["y"], vec!["x", "y"]]).unwrap();
        let g = CubeGraph::induced(fam).unwrap();
        assert!(build_gsystem(g).is_ok());
        assert_eq!(
            SetFamily::from_names(["x"], [vec!["x"]]),
            Err(GSystemError::TooFewMembers(1))
        );
        assert!(matches!(
            SetFamily::from_names(["x"], [vec!["x"], vec!["x"]]),
            Err(GSystemError::DuplicateMember(_))
        ));
        assert!(matches!(
            SetFamily::from_names(["x"], [vec!["z"]]),
            Err(GSystemError::UnknownElement(_))
        ));
    }

    #[test]
    fn constant_elements_get_no_tokens() {
        let fam = SetFamily::new(vec!["x".into(), "y".into()], vec![set(&[0]), set(&[0, 1])]).unwrap();
        let g = build_gsystem(CubeGraph::induced(fam).unwrap()).unwrap();
        assert_eq!(g.elements(), &[(1, TokenId(0), TokenId(1))]);
        assert_eq!(g.system().token_names(), ["g:y", "g~:y"]);
    }

    #[test]
    fn walks_and_messages() {
        let g = build_gsystem(example_graph()).unwrap();
        let sys = g.system();
        let (e, x, xy) = (StateId(0), StateId(1), StateId(2));
        let m = walk_to_message(&g, &[e, x, xy]).unwrap();
        assert_eq!(sys.render(&m), "[g:x, g:y]");
        assert_eq!(walk_to_message(&g, &[e]).unwrap(), Message::empty());
        let back = walk_to_message(&g, &[e, x, e]).unwrap();
        assert_eq!(sys.render(&back), "[g:x, g~:x]");
        for walk in [vec![e, x, xy], vec![e], vec![e, x, e]] {
            let m = walk_to_message(&g, &walk).unwrap();
            assert_eq!(message_to_walk(&g, walk[0], &m).unwrap(), walk);
        }
        assert_eq!(walk_to_message(&g, &[e, StateId(3)]), Err(GSystemError::NotAWalk(0)));
        let bad = sys.message(["g:y"]).unwrap();
        assert_eq!(
            message_to_walk(&g, e, &bad),
            Err(GSystemError::NotStepwiseEffective(0))
        );
    }

    #[test]
    fn random_graphs_are_cubical() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=5);
            let size = rng.gen_range(2..=20);
            let graph = random_cube_graph(&mut rng, n, size, 0.5);
            assert_eq!(graph.family().len(), size.min(1 << n));
            let g = build_gsystem(graph).unwrap();
            assert_ne!(classify(g.system()).kind, SystemKind::NotCubical);
        }
    }
}
