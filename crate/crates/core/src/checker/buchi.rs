//! Translation of LTL (in negation normal form) to a Büchi automaton.
//!
//! The construction is the classical tableau expansion: nodes carry sets of
//! obligations that are split into a propositional "now" part and a "next"
//! part, yielding a generalized Büchi automaton with one acceptance set per
//! until-subformula, which is then degeneralized with a counter.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::ltl::Nnf;

/// A state-labeled Büchi automaton. A run over a word `w0 w1 ...` visits
/// states `q0 q1 ...` with `q0` initial, each `q_{i+1}` a successor of
/// `q_i`, `w_i` satisfying the label of `q_i`, and some accepting state
/// visited infinitely often.
#[derive(Debug, Clone)]
pub struct Buchi {
    pub states: Vec<BuchiState>,
    /// Indices of the initial states.
    pub initial: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct BuchiState {
    /// Propositions that must hold (bit `i` set means atom `i` required).
    pub label_pos: u64,
    /// Propositions that must be false.
    pub label_neg: u64,
    pub accepting: bool,
    pub succs: Vec<u32>,
}

impl Buchi {
    /// True when valuation `val` (bit per atom) satisfies the state label.
    pub fn label_matches(&self, state: u32, val: u64) -> bool {
        let s = &self.states[state as usize];
        (val & s.label_pos) == s.label_pos && (val & s.label_neg) == 0
    }
}

/// Tableau node during expansion.
#[derive(Debug)]
struct Node {
    incoming: BTreeSet<usize>, // indices into `done`, usize::MAX = initial
    new: BTreeSet<Nnf>,
    old: BTreeSet<Nnf>,
    next: BTreeSet<Nnf>,
}

const INIT: usize = usize::MAX;

/// Build a Büchi automaton accepting exactly the words satisfying `f`.
/// Atom indices in `f` must be below 64.
pub fn translate(f: &Nnf) -> Buchi {
    // Expanded nodes: (old, next) -> index, plus incoming edges.
    let mut done: Vec<(BTreeSet<Nnf>, BTreeSet<Nnf>, BTreeSet<usize>)> = Vec::new();
    let mut queue: VecDeque<Node> = VecDeque::new();
    queue.push_back(Node {
        incoming: BTreeSet::from([INIT]),
        new: BTreeSet::from([f.clone()]),
        old: BTreeSet::new(),
        next: BTreeSet::new(),
    });

    while let Some(mut node) = queue.pop_front() {
        let Some(g) = node.new.iter().next().cloned() else {
            // Fully expanded: merge with an existing node or record it.
            if let Some(idx) = done
                .iter()
                .position(|(old, next, _)| *old == node.old && *next == node.next)
            {
                done[idx].2.extend(node.incoming);
            } else {
                done.push((node.old.clone(), node.next.clone(), node.incoming.clone()));
                let idx = done.len() - 1;
                queue.push_back(Node {
                    incoming: BTreeSet::from([idx]),
                    new: node.next.clone(),
                    old: BTreeSet::new(),
                    next: BTreeSet::new(),
                });
            }
            continue;
        };
        node.new.remove(&g);
        match &g {
            Nnf::False => {} // contradiction: drop the node
            Nnf::Lit { prop, positive } => {
                let negated = Nnf::Lit { prop: *prop, positive: !positive };
                if node.old.contains(&negated) {
                    continue; // contradiction
                }
                node.old.insert(g);
                queue.push_back(node);
            }
            Nnf::True => {
                node.old.insert(g);
                queue.push_back(node);
            }
            Nnf::And(a, b) => {
                for part in [a, b] {
                    if !node.old.contains(part) {
                        node.new.insert((**part).clone());
                    }
                }
                node.old.insert(g);
                queue.push_back(node);
            }
            Nnf::Next(a) => {
                node.next.insert((**a).clone());
                node.old.insert(g);
                queue.push_back(node);
            }
            Nnf::Or(a, b) => {
                let mut left = split(&node, &g);
                if !left.old.contains(a.as_ref()) {
                    left.new.insert((**a).clone());
                }
                let mut right = split(&node, &g);
                if !right.old.contains(b.as_ref()) {
                    right.new.insert((**b).clone());
                }
                queue.push_back(left);
                queue.push_back(right);
            }
            Nnf::Until(a, b) => {
                // a U b = b \/ (a /\ X(a U b))
                let mut left = split(&node, &g);
                if !left.old.contains(a.as_ref()) {
                    left.new.insert((**a).clone());
                }
                left.next.insert(g.clone());
                let mut right = split(&node, &g);
                if !right.old.contains(b.as_ref()) {
                    right.new.insert((**b).clone());
                }
                queue.push_back(left);
                queue.push_back(right);
            }
            Nnf::Release(a, b) => {
                // a R b = b /\ (a \/ X(a R b))
                let mut left = split(&node, &g);
                if !left.old.contains(b.as_ref()) {
                    left.new.insert((**b).clone());
                }
                left.next.insert(g.clone());
                let mut right = split(&node, &g);
                for part in [a, b] {
                    if !right.old.contains(part.as_ref()) {
                        right.new.insert((**part).clone());
                    }
                }
                queue.push_back(left);
                queue.push_back(right);
            }
        }
    }

    // Acceptance sets: one per until-subformula u = a U b. A node is in
    // F_u iff u not in old, or b in old.
    let mut untils: Vec<Nnf> = Vec::new();
    collect_untils(f, &mut untils);
    untils.sort();
    untils.dedup();

    let in_set = |old: &BTreeSet<Nnf>, u: &Nnf| -> bool {
        let Nnf::Until(_, b) = u else { unreachable!() };
        !old.contains(u) || old.contains(b.as_ref())
    };

    // Degeneralize: state (node, counter). Counter advances from j when the
    // source node satisfies F_j; accepting states are (node, 0) reached
    // after completing all sets.
    let nsets = untils.len().max(1);
    let gba_accepting: Vec<Vec<bool>> = done
        .iter()
        .map(|(old, _, _)| {
            if untils.is_empty() {
                vec![true]
            } else {
                untils.iter().map(|u| in_set(old, u)).collect()
            }
        })
        .collect();

    // Successor relation of the GBA: node j is a successor of node i iff
    // i is in j's incoming set.
    let n = done.len();
    let mut succs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut gba_initial: Vec<usize> = Vec::new();
    for (j, (_, _, incoming)) in done.iter().enumerate() {
        for &i in incoming {
            if i == INIT {
                gba_initial.push(j);
            } else {
                succs[i].push(j);
            }
        }
    }

    // Counter i waits for acceptance set i; it advances by one (mod the set
    // count) whenever the source node lies in F_i. States with counter 0
    // whose node lies in F_0 are accepting: visiting them infinitely often
    // forces the counter through every set infinitely often.
    let next_counter =
        |node: usize, k: usize| -> usize { if gba_accepting[node][k] { (k + 1) % nsets } else { k } };

    // Build the reachable part of the counter product.
    let mut index: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut initial = Vec::new();
    for &j in &gba_initial {
        let key = (j, 0);
        let id = *index.entry(key).or_insert_with(|| {
            order.push(key);
            (order.len() - 1) as u32
        });
        if !initial.contains(&id) {
            initial.push(id);
        }
    }
    let mut work: VecDeque<usize> = (0..order.len()).collect();
    let mut built: Vec<Option<BuchiState>> = vec![None; order.len()];
    while let Some(id) = work.pop_front() {
        if built[id].is_some() {
            continue;
        }
        let (node, k) = order[id];
        let (old, _, _) = &done[node];
        let mut label_pos = 0u64;
        let mut label_neg = 0u64;
        for g in old {
            if let Nnf::Lit { prop, positive } = g {
                let bit = 1u64 << *prop;
                if *positive {
                    label_pos |= bit;
                } else {
                    label_neg |= bit;
                }
            }
        }
        let k2 = next_counter(node, k);
        let mut out = Vec::new();
        for &j in &succs[node] {
            let key = (j, k2);
            let next_id = *index.entry(key).or_insert_with(|| {
                order.push(key);
                built.push(None);
                (order.len() - 1) as u32
            });
            out.push(next_id);
            work.push_back(next_id as usize);
        }
        built[id] = Some(BuchiState {
            label_pos,
            label_neg,
            accepting: k == 0 && gba_accepting[node][0],
            succs: out,
        });
    }

    Buchi { states: built.into_iter().map(|s| s.unwrap()).collect(), initial }
}

fn split(node: &Node, done: &Nnf) -> Node {
    let mut old = node.old.clone();
    old.insert(done.clone());
    Node { incoming: node.incoming.clone(), new: node.new.clone(), old, next: node.next.clone() }
}

fn collect_untils(f: &Nnf, out: &mut Vec<Nnf>) {
    match f {
        Nnf::True | Nnf::False | Nnf::Lit { .. } => {}
        Nnf::Next(a) => collect_untils(a, out),
        Nnf::And(a, b) | Nnf::Or(a, b) | Nnf::Release(a, b) => {
            collect_untils(a, out);
            collect_untils(b, out);
        }
        Nnf::Until(a, b) => {
            out.push(f.clone());
            collect_untils(a, out);
            collect_untils(b, out);
        }
    }
}
