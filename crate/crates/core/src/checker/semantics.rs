//! Direct LTL evaluation on lasso-shaped words.
//!
//! A lasso word `u v^ω` (prefix `u`, cycle `v`) has finitely many distinct
//! suffixes, so every subformula is evaluated positionwise by fixpoint
//! iteration over the `|u| + |v|` positions. Used as an independent check
//! against the automaton-based algorithm.

use super::ltl::Ltl;

/// Evaluate `f` on the lasso word given by the valuations at `prefix`
/// positions followed by the `cycle`, which repeats forever. `cycle` must
/// be nonempty. Valuation `i` holds the truth of each interned atom.
pub fn eval_lasso(f: &Ltl<u32>, prefix: &[Vec<bool>], cycle: &[Vec<bool>]) -> bool {
    assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
    let vals: Vec<&Vec<bool>> = prefix.iter().chain(cycle.iter()).collect();
    eval_at(f, &vals, prefix.len())[0]
}

/// Truth value of `f` at every position of the lasso. Position `i` for
/// `i < n` is the prefix; positions `n..n+m` are the cycle, and the
/// successor of the final position wraps to `n`.
fn eval_at(f: &Ltl<u32>, vals: &[&Vec<bool>], n: usize) -> Vec<bool> {
    let len = vals.len();
    let succ = |i: usize| if i + 1 == len { n } else { i + 1 };
    match f {
        Ltl::True => vec![true; len],
        Ltl::False => vec![false; len],
        Ltl::Prop(p) => vals.iter().map(|v| v[*p as usize]).collect(),
        Ltl::Not(a) => eval_at(a, vals, n).into_iter().map(|b| !b).collect(),
        Ltl::And(a, b) => zip_with(eval_at(a, vals, n), eval_at(b, vals, n), |x, y| x && y),
        Ltl::Or(a, b) => zip_with(eval_at(a, vals, n), eval_at(b, vals, n), |x, y| x || y),
        Ltl::Implies(a, b) => zip_with(eval_at(a, vals, n), eval_at(b, vals, n), |x, y| !x || y),
        Ltl::Leadsto(a, b) => {
            let imp = Ltl::implies((**a).clone(), (**b).clone());
            eval_at(&Ltl::always(imp), vals, n)
        }
        Ltl::Always(a) => {
            let inner = eval_at(a, vals, n);
            // Greatest fixpoint of X = inner /\ Next X.
            fixpoint(len, n, true, |out, i| inner[i] && out[succ(i)])
        }
        Ltl::Eventually(a) => {
            let inner = eval_at(a, vals, n);
            fixpoint(len, n, false, |out, i| inner[i] || out[succ(i)])
        }
        Ltl::Until(a, b) => {
            let lhs = eval_at(a, vals, n);
            let rhs = eval_at(b, vals, n);
            fixpoint(len, n, false, |out, i| rhs[i] || (lhs[i] && out[succ(i)]))
        }
        Ltl::WeakUntil(a, b) => {
            let lhs = eval_at(a, vals, n);
            let rhs = eval_at(b, vals, n);
            fixpoint(len, n, true, |out, i| rhs[i] || (lhs[i] && out[succ(i)]))
        }
    }
}

fn zip_with(a: Vec<bool>, b: Vec<bool>, f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

/// Iterate a monotone backward update until stable. `init` is `true` for
/// greatest fixpoints (Always, WeakUntil) and `false` for least fixpoints
/// (Eventually, Until).
fn fixpoint(len: usize, _n: usize, init: bool, step: impl Fn(&[bool], usize) -> bool) -> Vec<bool> {
    let mut out = vec![init; len];
    loop {
        let mut changed = false;
        // Backward sweeps converge quickly; correctness only needs the loop.
        for i in (0..len).rev() {
            let v = step(&out, i);
            if v != out[i] {
                out[i] = v;
                changed = true;
            }
        }
        if !changed {
            return out;
        }
    }
}
