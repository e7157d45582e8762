//! Bounded-response checking: every `p`-state is followed by a `q`-state
//! within `tau` time units, along every path.
//!
//! The check runs a breadth-first search over pairs of a graph state and an
//! optional obligation age: the age of the oldest undischarged `p`
//! occurrence. Rule edges keep the age; tick edges add their duration.
//! An obligation older than `tau` that has not met `q` is a violation.

use std::collections::{HashMap, VecDeque};

use super::graph::EdgeLabel;
use super::ndfs::Lasso;

/// Outcome of a bounded-response query.
#[derive(Debug, Clone)]
pub enum BoundedVerdict {
    Holds,
    /// A finite path witnessing the violation, as edges from state 0.
    Violated { path: Vec<(EdgeLabel, u32)> },
}

/// Check `p ==> <=tau q` on the graph: whenever `p` holds, `q` must hold
/// within `tau` time units (at a state reached after at most `tau` units,
/// inclusive).
pub fn check_bounded_response(
    edges: &[Vec<(EdgeLabel, u32)>],
    p: &dyn Fn(u32) -> bool,
    q: &dyn Fn(u32) -> bool,
    tau: u64,
) -> BoundedVerdict {
    // Search node: (state, obligation age). Age `None` means no pending
    // obligation. Ages saturate at tau + 1, which is already a violation.
    type Node = (u32, Option<u64>);
    let start_age = |s: u32| -> Option<u64> {
        if p(s) && !q(s) {
            Some(0)
        } else {
            None
        }
    };

    let root: Node = (0, start_age(0));
    let mut parent: HashMap<Node, (Node, (EdgeLabel, u32))> = HashMap::new();
    let mut queue: VecDeque<Node> = VecDeque::new();
    parent.insert(root, (root, (EdgeLabel::Stutter, 0)));
    queue.push_back(root);

    while let Some(node) = queue.pop_front() {
        let (s, age) = node;
        for &(label, s2) in &edges[s as usize] {
            let elapsed = match label {
                EdgeLabel::Tick(d) => d,
                _ => 0,
            };
            let mut age2 = age.map(|a| (a + elapsed).min(tau + 1));
            if let Some(a) = age2 {
                if a > tau {
                    // Deadline passed without q.
                    let mut path = rebuild(&parent, node);
                    path.push((label, s2));
                    return BoundedVerdict::Violated { path };
                }
                if q(s2) {
                    age2 = None;
                }
            }
            if age2.is_none() && p(s2) && !q(s2) {
                age2 = Some(0);
            }
            let next: Node = (s2, age2);
            if !parent.contains_key(&next) {
                parent.insert(next, (node, (label, s2)));
                queue.push_back(next);
            }
        }
    }
    BoundedVerdict::Holds
}

fn rebuild(parent: &HashMap<(u32, Option<u64>), ((u32, Option<u64>), (EdgeLabel, u32))>, end: (u32, Option<u64>)) -> Vec<(EdgeLabel, u32)> {
    let mut path = Vec::new();
    let mut cur = end;
    loop {
        let (pred, edge) = parent[&cur];
        if pred == cur {
            break;
        }
        path.push(edge);
        cur = pred;
    }
    path.reverse();
    path
}

impl BoundedVerdict {
    /// Present the violation as a lasso with an empty cycle replaced by a
    /// trailing stutter, matching the shape of liveness counterexamples.
    pub fn into_lasso(self) -> Option<Lasso> {
        match self {
            BoundedVerdict::Holds => None,
            BoundedVerdict::Violated { path } => {
                let last = path.last().map(|&(_, s)| s).unwrap_or(0);
                Some(Lasso { prefix: path, cycle: vec![(EdgeLabel::Stutter, last)] })
            }
        }
    }
}
