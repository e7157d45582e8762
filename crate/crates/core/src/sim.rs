//! Seeded random simulation of a configuration.
//!
//! Each step picks uniformly among the enabled instantaneous rules; when
//! none is enabled, time advances maximally. The run is reproducible from
//! the seed and replayable through the kernel step function.

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::checker::graph::{step, EdgeLabel};
use crate::devices::Params;
use crate::kernel::Configuration;

/// One executed simulation step.
#[derive(Debug, Clone)]
pub struct SimStep {
    /// Global time after the step.
    pub time: u64,
    pub label: EdgeLabel,
    pub state: Configuration,
}

/// Run `steps` transitions from `initial` with the given seed. Stops early
/// if the configuration deadlocks (no rule enabled and no finite deadline).
pub fn simulate(initial: &Configuration, p: &Params, steps: usize, seed: u64) -> Vec<SimStep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = initial.clone().normalized();
    let mut time = 0u64;
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let mut succ = step(&current, p);
        if succ.is_empty() {
            break;
        }
        // Prefer instantaneous rules; the tick successor (always last when
        // present) is taken only when no rule is enabled.
        let rules = succ.iter().filter(|(l, _)| matches!(l, EdgeLabel::Rule(_))).count();
        let pick = if rules > 0 {
            (0..rules).choose(&mut rng).unwrap()
        } else {
            0
        };
        let (label, next) = if rules > 0 { succ.swap_remove(pick) } else { succ.pop().unwrap() };
        if let EdgeLabel::Tick(d) = label {
            time += d;
        }
        out.push(SimStep { time, label, state: next.clone() });
        current = next;
    }
    out
}
