//! Breadth-first structure over effective transitions.

use std::collections::VecDeque;

use crate::system::{Message, StateId, TokenId, TokenSystem};

/// Breadth-first spanning tree of the states reachable from `root` through
/// effective transitions. Children are discovered in token order.
#[derive(Debug, Clone)]
pub struct BfsTree {
    root: StateId,
    parent: Vec<Option<(StateId, TokenId)>>,
    depth: Vec<Option<usize>>,
    order: Vec<StateId>,
}

impl BfsTree {
    pub fn new(system: &TokenSystem, root: StateId) -> Self {
        let n = system.state_count();
        let mut parent = vec![None; n];
        let mut depth = vec![None; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        depth[root.0] = Some(0);
        while let Some(s) = queue.pop_front() {
            order.push(s);
            let d = depth[s.0].unwrap_or(0);
            for t in system.effective_tokens(s) {
                let v = system.image(s, t);
                if depth[v.0].is_none() {
                    depth[v.0] = Some(d + 1);
                    parent[v.0] = Some((s, t));
                    queue.push_back(v);
                }
            }
        }
        BfsTree {
            root,
            parent,
            depth,
            order,
        }
    }

    pub fn root(&self) -> StateId {
        self.root
    }

    pub fn contains(&self, state: StateId) -> bool {
        self.depth[state.0].is_some()
    }

    pub fn depth(&self, state: StateId) -> Option<usize> {
        self.depth[state.0]
    }

    /// Tree edge into `state`: `(parent, token)` with `parent token = state`.
    pub fn parent(&self, state: StateId) -> Option<(StateId, TokenId)> {
        self.parent[state.0]
    }

    /// Reached states in discovery order, root first.
    pub fn order(&self) -> &[StateId] {
        &self.order
    }

    /// The tree message from the root to `state`.
    pub fn message_from_root(&self, state: StateId) -> Option<Message> {
        self.contains(state).then(|| {
            let mut tokens = Vec::new();
            let mut s = state;
            while let Some((p, t)) = self.parent[s.0] {
                tokens.push(t);
                s = p;
            }
            tokens.reverse();
            Message::new(tokens)
        })
    }

    /// Message along the tree from `from` to `to`, through their lowest
    /// common ancestor. Climbing uses reverse tokens, so every token on the
    /// way up must have a reverse.
    pub fn tree_message(&self, system: &TokenSystem, from: StateId, to: StateId) -> Option<Message> {
        let up = self.message_from_root(from)?;
        let down = self.message_from_root(to)?;
        let common = up
            .tokens()
            .iter()
            .zip(down.tokens())
            .take_while(|(a, b)| a == b)
            .count();
        let mut tokens = Vec::new();
        for &t in up.tokens()[common..].iter().rev() {
            tokens.push(system.reverse_of(t)?);
        }
        tokens.extend_from_slice(&down.tokens()[common..]);
        Some(Message::new(tokens))
    }
}

/// Length of a shortest stepwise-effective message from each state to `target`.
pub fn distances_to(system: &TokenSystem, target: StateId) -> Vec<Option<usize>> {
    let n = system.state_count();
    let mut incoming: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for s in system.states() {
        for t in system.effective_tokens(s) {
            incoming[system.image(s, t).0].push(s);
        }
    }
    let mut dist = vec![None; n];
    dist[target.0] = Some(0);
    let mut queue = VecDeque::from([target]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v.0].unwrap_or(0);
        for &u in &incoming[v.0] {
            if dist[u.0].is_none() {
                dist[u.0] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// The lexicographically least (by token index) among the shortest
/// stepwise-effective messages producing `to` from `from`.
pub fn shortest_message(system: &TokenSystem, from: StateId, to: StateId) -> Option<Message> {
    let dist = distances_to(system, to);
    shortest_message_with(system, &dist, from)
}

/// As [`shortest_message`], reusing distances from [`distances_to`].
pub fn shortest_message_with(
    system: &TokenSystem,
    dist: &[Option<usize>],
    from: StateId,
) -> Option<Message> {
    let mut d = dist[from.0]?;
    let mut s = from;
    let mut msg = Message::empty();
    while d > 0 {
        let t = system
            .effective_tokens(s)
            .find(|&t| dist[system.image(s, t).0] == Some(d - 1))?;
        msg.push(t);
        s = system.image(s, t);
        d -= 1;
    }
    Some(msg)
}

/// States reachable from `from` (including itself) via effective transitions.
pub fn reachable(system: &TokenSystem, from: StateId) -> Vec<bool> {
    let tree = BfsTree::new(system, from);
    system.states().map(|s| tree.contains(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::tests::cub4;

    #[test]
    fn shortest_messages_on_cub4() {
        let sys = cub4();
        let s = sys.state("S").unwrap();
        let p = sys.state("P").unwrap();
        let m = shortest_message(&sys, s, p).unwrap();
        assert_eq!(sys.render(&m), "[tau, mu, tau~]");
        assert_eq!(shortest_message(&sys, p, p), Some(Message::empty()));
    }

    #[test]
    fn tree_paths_meet_at_ancestor() {
        let sys = cub4();
        let s = sys.state("S").unwrap();
        let tree = BfsTree::new(&sys, s);
        let (q, p) = (sys.state("Q").unwrap(), sys.state("P").unwrap());
        let m = tree.tree_message(&sys, p, q).unwrap();
        assert_eq!(sys.render(&m), "[tau]");
        let m = tree.tree_message(&sys, p, s).unwrap();
        assert_eq!(sys.render(&m), "[tau, mu~, tau~]");
        assert_eq!(sys.apply(p, &m), s);
    }
}
