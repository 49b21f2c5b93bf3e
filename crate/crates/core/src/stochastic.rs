//! The Markov chain a token distribution induces on a cubical system.
//!
//! At each step a token is drawn from `theta` and applied. The chain stays
//! put when the token is ineffective, so `p(S, V) = theta(tau)` when
//! `S tau = V != S`, and `p(S, S)` takes the remaining mass.

use nalgebra::DMatrix;
use rand::distributions::WeightedIndex;
use rand::prelude::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::axioms::{cubical_defect, Axiom};
use crate::content::{ContentError, StateContents};
use crate::system::{StateId, TokenSystem};

/// Tolerance on distribution sums.
pub const SUM_TOLERANCE: f64 = 1e-9;
/// Relative tolerance for detailed balance.
pub const BALANCE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StochasticError {
    #[error("system is not cubical: axiom {0} fails")]
    NotCubical(Axiom),
    #[error("token `{0}` has probability zero")]
    ZeroTokenProbability(String),
    #[error("{what} is not a probability distribution: {detail}")]
    NotADistribution { what: &'static str, detail: String },
    #[error("internal consistency error: {0}")]
    Internal(String),
}

/// Row-stochastic matrix indexed by states.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix(DMatrix<f64>);

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, from: StateId, to: StateId) -> f64 {
        self.0[(from.0, to.0)]
    }

    pub fn row(&self, from: StateId) -> Vec<f64> {
        self.0.row(from.0).iter().copied().collect()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0.0)
    }
}

/// A cubical system with validated initial and token distributions.
#[derive(Debug, Clone)]
pub struct StochasticSystem {
    system: TokenSystem,
    xi: Vec<f64>,
    theta: Vec<f64>,
    matrix: TransitionMatrix,
    contents: StateContents,
}

impl StochasticSystem {
    pub fn system(&self) -> &TokenSystem {
        &self.system
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn matrix(&self) -> &TransitionMatrix {
        &self.matrix
    }

    pub fn contents(&self) -> &StateContents {
        &self.contents
    }
}

fn check_distribution(what: &'static str, values: &[f64], len: usize) -> Result<(), StochasticError> {
    let fail = |detail: String| StochasticError::NotADistribution { what, detail };
    if values.len() != len {
        return Err(fail(format!("expected {len} entries, got {}", values.len())));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(fail(format!("entry {v} is not a probability")));
    }
    let sum: f64 = values.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(fail(format!("entries sum to {sum}")));
    }
    Ok(())
}

/// The uniform distribution on `n` outcomes.
pub fn uniform(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

/// Validates `(system, xi, theta)` and builds the transition matrix.
/// `xi` is indexed by state, `theta` by token.
pub fn build_chain(
    system: TokenSystem,
    xi: Vec<f64>,
    theta: Vec<f64>,
) -> Result<StochasticSystem, StochasticError> {
    check_distribution("xi", &xi, system.state_count())?;
    check_distribution("theta", &theta, system.token_count())?;
    if let Some(t) = system.tokens().find(|t| theta[t.0] == 0.0) {
        return Err(StochasticError::ZeroTokenProbability(
            system.token_name(t).to_string(),
        ));
    }
    if let Some(v) = cubical_defect(&system) {
        return Err(StochasticError::NotCubical(v.axiom));
    }
    let contents = StateContents::new(&system).map_err(|e| match e {
        ContentError::NotCubical(a) => StochasticError::NotCubical(a),
        other => StochasticError::Internal(other.to_string()),
    })?;
    let n = system.state_count();
    let mut p = DMatrix::zeros(n, n);
    for s in system.states() {
        let mut moved = 0.0;
        for t in system.effective_tokens(s) {
            let v = system.image(s, t);
            if p[(s.0, v.0)] != 0.0 {
                return Err(StochasticError::Internal(format!(
                    "two tokens map {} to {}",
                    system.state_name(s),
                    system.state_name(v)
                )));
            }
            p[(s.0, v.0)] = theta[t.0];
            moved += theta[t.0];
        }
        let stay = 1.0 - moved;
        if !(stay > 0.0 && stay < 1.0) {
            return Err(StochasticError::Internal(format!(
                "holding probability {stay} at {}",
                system.state_name(s)
            )));
        }
        p[(s.0, s.0)] = stay;
    }
    Ok(StochasticSystem {
        system,
        xi,
        theta,
        matrix: TransitionMatrix(p),
        contents,
    })
}

/// `P^n`.
pub fn n_step_matrix(chain: &StochasticSystem, n: u32) -> TransitionMatrix {
    let p = chain.matrix.as_matrix();
    let mut result = DMatrix::identity(p.nrows(), p.ncols());
    let mut base = p.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = &result * &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    TransitionMatrix(result)
}

/// Whether `P^(|S|-1)` is entrywise positive.
pub fn check_regularity(chain: &StochasticSystem) -> bool {
    let n = chain.system.state_count() as u32;
    n_step_matrix(chain, n.saturating_sub(1)).is_positive()
}

/// `t(S)`: the product of `theta` over the content of `S`, as a logarithm.
fn log_weights(chain: &StochasticSystem) -> Vec<f64> {
    chain
        .contents
        .iter()
        .map(|(_, c)| c.iter().map(|t| chain.theta[t.0].ln()).sum())
        .collect()
}

/// `pi(S)` proportional to the product of `theta` over the content of `S`.
pub fn stationary_closed_form(chain: &StochasticSystem) -> Vec<f64> {
    let logs = log_weights(chain);
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = logs.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / total).collect()
}

/// Solves `pi P = pi`, `sum pi = 1` by LU decomposition.
pub fn stationary_solve(chain: &StochasticSystem) -> Vec<f64> {
    let p = chain.matrix.as_matrix();
    let n = p.nrows();
    let mut a = p.transpose() - DMatrix::<f64>::identity(n, n);
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    let mut b = nalgebra::DVector::zeros(n);
    b[n - 1] = 1.0;
    let x = a
        .lu()
        .solve(&b)
        .expect("a regular chain has a unique stationary distribution");
    x.iter().copied().collect()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= BALANCE_TOLERANCE * a.abs().max(b.abs())
}

/// Checks `pi(S) p(S, V) = pi(V) p(V, S)` for every pair of states, and
/// `t(V) p(V, S) = t(S) p(S, V)` for every adjacent pair.
pub fn check_detailed_balance(chain: &StochasticSystem, pi: &[f64]) -> bool {
    let p = chain.matrix.as_matrix();
    let n = p.nrows();
    if pi.len() != n {
        return false;
    }
    let logs = log_weights(chain);
    for s in 0..n {
        for v in s + 1..n {
            if !close(pi[s] * p[(s, v)], pi[v] * p[(v, s)]) {
                return false;
            }
            if p[(s, v)] > 0.0 {
                let lhs = (logs[v] - logs[s]).exp() * p[(v, s)];
                if !close(lhs, p[(s, v)]) {
                    return false;
                }
            }
        }
    }
    true
}

/// A simulated run: the visited states and the visit tally per state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub seed: u64,
    pub states: Vec<StateId>,
    pub counts: Vec<u64>,
}

impl Trajectory {
    pub fn frequencies(&self) -> Vec<f64> {
        frequencies(&self.counts)
    }
}

pub fn frequencies(counts: &[u64]) -> Vec<f64> {
    let total: u64 = counts.iter().sum();
    counts.iter().map(|&c| c as f64 / total as f64).collect()
}

/// Draws the initial state from `xi`, then applies `steps` tokens drawn
/// from `theta`. Uses ChaCha8 seeded with `seed`. The `steps + 1` visited
/// states, initial state included, are all tallied.
pub fn simulate(chain: &StochasticSystem, seed: u64, steps: usize) -> Trajectory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = WeightedIndex::new(&chain.xi).expect("validated xi");
    let tokens = WeightedIndex::new(&chain.theta).expect("validated theta");
    let mut s = StateId(start.sample(&mut rng));
    let mut states = Vec::with_capacity(steps + 1);
    let mut counts = vec![0u64; chain.system.state_count()];
    states.push(s);
    counts[s.0] += 1;
    for _ in 0..steps {
        let t = crate::system::TokenId(tokens.sample(&mut rng));
        s = chain.system.image(s, t);
        states.push(s);
        counts[s.0] += 1;
    }
    Trajectory {
        seed,
        states,
        counts,
    }
}

/// One trajectory per seed, run on separate threads, returned in seed
/// order.
pub fn simulate_many(chain: &StochasticSystem, seeds: &[u64], steps: usize) -> Vec<Trajectory> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .iter()
            .map(|&seed| scope.spawn(move || simulate(chain, seed, steps)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation thread panicked"))
            .collect()
    })
}

/// Visit counts summed over trajectories.
pub fn merged_counts(trajectories: &[Trajectory]) -> Vec<u64> {
    let n = trajectories.first().map_or(0, |t| t.counts.len());
    let mut total = vec![0u64; n];
    for t in trajectories {
        for (acc, c) in total.iter_mut().zip(&t.counts) {
            *acc += c;
        }
    }
    total
}
