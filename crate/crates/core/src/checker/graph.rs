//! Explicit state-graph construction.
//!
//! The reachable state space is built breadth-first from the initial
//! configuration. Each state's successors are the instantaneous rule
//! applications plus, when no message is pending and some finite deadline
//! exists, a single maximal time step. Deadlocked states get a stuttering
//! self-loop so that every state has at least one successor.

use std::collections::HashMap;

use thiserror::Error;

use crate::devices::Params;
use crate::kernel::{instantaneous_successors, Configuration, TimeValue};

/// Default bound on the number of distinct states explored.
pub const DEFAULT_STATE_CAP: usize = 20_000_000;

/// Environment variable overriding the default state cap.
pub const STATE_CAP_ENV: &str = "CROSSLIGHT_STATE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeLabel {
    /// An instantaneous rule application.
    Rule(&'static str),
    /// Time advances by the given positive amount.
    Tick(u64),
    /// Artificial self-loop on a state with no successors.
    Stutter,
}

impl std::fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EdgeLabel::Rule(name) => write!(f, "{name}"),
            EdgeLabel::Tick(d) => write!(f, "tick({d})"),
            EdgeLabel::Stutter => write!(f, "stutter"),
        }
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("state space exceeds the cap of {cap} states")]
    StateCapExceeded { cap: usize },
}

/// The reachable state graph. State 0 is the initial configuration.
#[derive(Debug)]
pub struct StateGraph {
    pub configs: Vec<Configuration>,
    pub edges: Vec<Vec<(EdgeLabel, u32)>>,
}

impl StateGraph {
    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn successors(&self, state: u32) -> &[(EdgeLabel, u32)] {
        &self.edges[state as usize]
    }
}

/// The state cap: the environment override when set and parseable,
/// otherwise the given value, otherwise [`DEFAULT_STATE_CAP`].
pub fn effective_state_cap(requested: Option<usize>) -> usize {
    if let Ok(text) = std::env::var(STATE_CAP_ENV) {
        if let Ok(n) = text.trim().parse::<usize>() {
            return n;
        }
    }
    requested.unwrap_or(DEFAULT_STATE_CAP)
}

/// Successors of one configuration: rule steps, then a maximal tick.
pub fn step(config: &Configuration, p: &Params) -> Vec<(EdgeLabel, Configuration)> {
    let mut out: Vec<(EdgeLabel, Configuration)> = instantaneous_successors(config, p)
        .into_iter()
        .map(|(label, c)| (EdgeLabel::Rule(label), c))
        .collect();
    if let TimeValue::Finite(d) = config.max_time_elapse() {
        if d > 0 {
            let ticked = config.tick(TimeValue::Finite(d)).expect("maximal tick is valid");
            out.push((EdgeLabel::Tick(d), ticked));
        }
    }
    out
}

/// Build the reachable graph from `initial`, deduplicating configurations.
/// Frontier levels are expanded in parallel; the merge order is the frontier
/// order, so state numbering and the result are deterministic.
pub fn build_graph(
    initial: &Configuration,
    p: &Params,
    cap: usize,
) -> Result<StateGraph, GraphError> {
    use rayon::prelude::*;

    let initial = initial.clone().normalized();
    let mut index: HashMap<Configuration, u32> = HashMap::new();
    let mut configs: Vec<Configuration> = vec![initial.clone()];
    let mut edges: Vec<Vec<(EdgeLabel, u32)>> = vec![Vec::new()];
    index.insert(initial, 0);

    let mut frontier: Vec<u32> = vec![0];
    while !frontier.is_empty() {
        let level: Vec<(u32, Vec<(EdgeLabel, Configuration)>)> = frontier
            .par_iter()
            .map(|&id| (id, step(&configs[id as usize], p)))
            .collect();
        let mut next_frontier = Vec::new();
        for (id, succ) in level {
            let mut out = Vec::with_capacity(succ.len().max(1));
            for (label, c) in succ {
                let target = match index.get(&c) {
                    Some(&t) => t,
                    None => {
                        if configs.len() >= cap {
                            return Err(GraphError::StateCapExceeded { cap });
                        }
                        let t = configs.len() as u32;
                        index.insert(c.clone(), t);
                        configs.push(c);
                        edges.push(Vec::new());
                        next_frontier.push(t);
                        t
                    }
                };
                out.push((label, target));
            }
            if out.is_empty() {
                out.push((EdgeLabel::Stutter, id));
            }
            edges[id as usize] = out;
        }
        frontier = next_frontier;
    }

    Ok(StateGraph { configs, edges })
}
