//! Nested depth-first search over the product of a state graph and a
//! Büchi automaton for the negated property.
//!
//! The outer (blue) DFS explores the product; on postorder exit from an
//! accepting product state it launches an inner (red) DFS that looks for a
//! path back to a state on the blue stack, which closes an accepting cycle.
//! Counterexamples are returned as a lasso: a finite prefix of graph edges
//! and a nonempty cycle.

use std::collections::{HashMap, HashSet};

use super::buchi::Buchi;
use super::graph::EdgeLabel;

/// A counterexample lasso over graph states. `prefix` leads from the
/// initial state to the start of `cycle`; each element is the edge taken
/// and the state it leads to.
#[derive(Debug, Clone)]
pub struct Lasso {
    pub prefix: Vec<(EdgeLabel, u32)>,
    pub cycle: Vec<(EdgeLabel, u32)>,
}

type Prod = (u32, u32); // (graph state, automaton state)

/// Search for an accepting lasso. `val` maps a graph state to its atom
/// valuation bitmask. Returns `None` when the product has no accepting
/// cycle, i.e. the original property holds.
pub fn find_accepting_lasso(
    edges: &[Vec<(EdgeLabel, u32)>],
    auto: &Buchi,
    val: &dyn Fn(u32) -> u64,
) -> Option<Lasso> {
    let vals: Vec<u64> = (0..edges.len() as u32).map(val).collect();

    // Stack frame: product state plus the index of the next automaton
    // successor × graph successor pair to try.
    struct Frame {
        state: Prod,
        edge_idx: usize,
        auto_idx: usize,
        // Edge that led here from the parent frame (None at roots).
        via: Option<(EdgeLabel, u32)>,
    }

    impl FrameLike for Frame {
        fn state(&self) -> Prod {
            self.state
        }
        fn via(&self) -> Option<(EdgeLabel, u32)> {
            self.via
        }
    }

    let mut blue: HashSet<Prod> = HashSet::new();
    let mut red: HashSet<Prod> = HashSet::new();
    let mut cyan: HashSet<Prod> = HashSet::new();

    for &q0 in &auto.initial {
        if !auto.label_matches(q0, vals[0]) {
            continue;
        }
        let root = (0u32, q0);
        if blue.contains(&root) {
            continue;
        }
        let mut stack: Vec<Frame> = vec![Frame { state: root, edge_idx: 0, auto_idx: 0, via: None }];
        cyan.insert(root);

        while !stack.is_empty() {
            let i = stack.len() - 1;
            let (s, q) = stack[i].state;
            let graph_edges = &edges[s as usize];
            let auto_succs = &auto.states[q as usize].succs;

            // Find the next unexplored product successor.
            let mut pushed = false;
            while stack[i].edge_idx < graph_edges.len() {
                if stack[i].auto_idx >= auto_succs.len() {
                    stack[i].auto_idx = 0;
                    stack[i].edge_idx += 1;
                    continue;
                }
                let (label, s2) = graph_edges[stack[i].edge_idx];
                let q2 = auto_succs[stack[i].auto_idx];
                stack[i].auto_idx += 1;
                if !auto.label_matches(q2, vals[s2 as usize]) {
                    continue;
                }
                let next = (s2, q2);
                if cyan.contains(&next) || blue.contains(&next) {
                    continue;
                }
                cyan.insert(next);
                stack.push(Frame {
                    state: next,
                    edge_idx: 0,
                    auto_idx: 0,
                    via: Some((label, s2)),
                });
                pushed = true;
                break;
            }
            if pushed {
                continue;
            }

            // Postorder: run the red search from accepting states.
            let state = stack[i].state;
            if auto.states[q as usize].accepting {
                if let Some(result) = red_search(edges, auto, &vals, state, &cyan, &mut red, &stack)
                {
                    return Some(result);
                }
            }
            cyan.remove(&state);
            blue.insert(state);
            stack.pop();
        }
    }
    None
}

/// Inner DFS from the accepting seed. A hit on a cyan (blue-stack) state
/// closes an accepting cycle through the seed; the lasso is assembled from
/// the blue stack and the red path.
fn red_search(
    edges: &[Vec<(EdgeLabel, u32)>],
    auto: &Buchi,
    vals: &[u64],
    seed: Prod,
    cyan: &HashSet<Prod>,
    red: &mut HashSet<Prod>,
    blue_stack: &[impl FrameLike],
) -> Option<Lasso> {
    // parent map for path reconstruction: state -> (pred, edge)
    let mut parent: HashMap<Prod, (Prod, (EdgeLabel, u32))> = HashMap::new();
    let mut work: Vec<Prod> = vec![seed];
    red.insert(seed);
    while let Some((s, q)) = work.pop() {
        for &(label, s2) in &edges[s as usize] {
            for &q2 in &auto.states[q as usize].succs {
                if !auto.label_matches(q2, vals[s2 as usize]) {
                    continue;
                }
                let next = (s2, q2);
                if cyan.contains(&next) {
                    // Cycle: blue stack up to `next`, then stack suffix to
                    // the seed, then the red path from the seed back here.
                    if !parent.contains_key(&next) && next != seed {
                        parent.insert(next, ((s, q), (label, s2)));
                    } else if next == seed {
                        parent.entry(next).or_insert(((s, q), (label, s2)));
                    }
                    return Some(assemble(blue_stack, &parent, seed, next));
                }
                if red.insert(next) {
                    parent.insert(next, ((s, q), (label, s2)));
                    work.push(next);
                }
            }
        }
    }
    None
}

/// Minimal view of a DFS frame needed to rebuild paths.
pub trait FrameLike {
    fn state(&self) -> Prod;
    fn via(&self) -> Option<(EdgeLabel, u32)>;
}

fn assemble(
    blue_stack: &[impl FrameLike],
    parent: &HashMap<Prod, (Prod, (EdgeLabel, u32))>,
    seed: Prod,
    hit: Prod,
) -> Lasso {
    // Position of `hit` on the blue stack.
    let hit_pos = blue_stack
        .iter()
        .position(|f| f.state() == hit)
        .expect("red search hit a state not on the stack");

    // Prefix: initial state down to just before `hit`.
    let prefix: Vec<(EdgeLabel, u32)> =
        blue_stack[1..=hit_pos].iter().map(|f| f.via().unwrap()).collect();

    // Cycle part 1: stack edges from `hit` to the seed (the seed is the top
    // of the stack).
    let mut cycle: Vec<(EdgeLabel, u32)> =
        blue_stack[hit_pos + 1..].iter().map(|f| f.via().unwrap()).collect();

    // Cycle part 2: red path seed -> ... -> hit, reconstructed backwards.
    let mut back = Vec::new();
    let mut cur = hit;
    if hit == seed {
        // The red path closed a cycle back onto the seed itself; take the
        // final edge first so the walk below terminates at the seed.
        let (pred, edge) = parent[&cur];
        back.push(edge);
        cur = pred;
    }
    while cur != seed {
        let (pred, edge) = parent[&cur];
        back.push(edge);
        cur = pred;
        if back.len() > parent.len() + 1 {
            panic!("red path reconstruction did not terminate");
        }
    }
    back.reverse();
    cycle.extend(back);
    assert!(!cycle.is_empty(), "accepting cycle must contain an edge");
    Lasso { prefix, cycle }
}
