//! LTL and bounded-response model checking over the intersection kernel.

pub mod bounded;
pub mod buchi;
pub mod catalog;
pub mod graph;
pub mod ltl;
pub mod ndfs;
pub mod props;
pub mod semantics;

use thiserror::Error;

pub use catalog::CatalogProperty;
pub use graph::{build_graph, effective_state_cap, EdgeLabel, GraphError, StateGraph};
pub use ltl::{parse_formula, Ltl, LtlFormula, ParseError};
pub use props::{eval_prop, validate_prop, AtomicProp, PropError, PropKind};

use crate::devices::Params;
use crate::kernel::Configuration;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Prop(#[from] PropError),
    #[error("formula has {count} distinct propositions; at most 64 are supported")]
    TooManyProps { count: usize },
}

/// One step of a counterexample: the transition taken and the state it
/// leads to.
pub type TraceStep = (EdgeLabel, Configuration);

/// Result of a check. A violation comes with a replayable lasso: the
/// prefix runs from `initial`, and the cycle repeats forever from the end
/// of the prefix.
#[derive(Debug)]
pub enum Verdict {
    Holds,
    Violated { initial: Configuration, prefix: Vec<TraceStep>, cycle: Vec<TraceStep> },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// A verdict together with the size of the explored state space.
#[derive(Debug)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub states: usize,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

/// Options for a check; `state_cap` limits graph construction.
#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    pub state_cap: Option<usize>,
}

fn resolve_lasso(graph: &StateGraph, lasso: ndfs::Lasso) -> Verdict {
    let steps = |edges: Vec<(EdgeLabel, u32)>| -> Vec<TraceStep> {
        edges.into_iter().map(|(l, s)| (l, graph.configs[s as usize].clone())).collect()
    };
    Verdict::Violated {
        initial: graph.configs[0].clone(),
        prefix: steps(lasso.prefix),
        cycle: steps(lasso.cycle),
    }
}

/// Model-check an LTL formula over every infinite path from `init`.
pub fn model_check_ltl(
    init: &Configuration,
    p: &Params,
    f: &LtlFormula,
    opts: &CheckOptions,
) -> Result<CheckReport, CheckError> {
    let init = init.clone().normalized();
    let (interned, atoms) = f.interned();
    if atoms.len() > 64 {
        return Err(CheckError::TooManyProps { count: atoms.len() });
    }
    for a in &atoms {
        validate_prop(&init, a)?;
    }
    let graph = build_graph(&init, p, effective_state_cap(opts.state_cap))?;

    let vals: Vec<u64> = graph
        .configs
        .iter()
        .map(|c| {
            let mut bits = 0u64;
            for (i, a) in atoms.iter().enumerate() {
                if eval_prop(c, a).expect("validated proposition") {
                    bits |= 1 << i;
                }
            }
            bits
        })
        .collect();

    // Search for a counterexample: a path accepted by the automaton of the
    // negated formula.
    let neg = interned.nnf(false);
    let auto = buchi::translate(&neg);
    let verdict = match ndfs::find_accepting_lasso(&graph.edges, &auto, &|s| vals[s as usize]) {
        None => Verdict::Holds,
        Some(lasso) => resolve_lasso(&graph, lasso),
    };
    Ok(CheckReport { verdict, states: graph.len() })
}

/// Check the bounded response `p ==> <=tau q` from `init`.
pub fn check_bounded_response(
    init: &Configuration,
    params: &Params,
    p: &AtomicProp,
    q: &AtomicProp,
    tau: u64,
    opts: &CheckOptions,
) -> Result<CheckReport, CheckError> {
    let init = init.clone().normalized();
    validate_prop(&init, p)?;
    validate_prop(&init, q)?;
    let graph = build_graph(&init, params, effective_state_cap(opts.state_cap))?;
    let pv: Vec<bool> =
        graph.configs.iter().map(|c| eval_prop(c, p).expect("validated")).collect();
    let qv: Vec<bool> =
        graph.configs.iter().map(|c| eval_prop(c, q).expect("validated")).collect();
    let verdict = bounded::check_bounded_response(
        &graph.edges,
        &|s| pv[s as usize],
        &|s| qv[s as usize],
        tau,
    );
    let verdict = match verdict.into_lasso() {
        None => Verdict::Holds,
        Some(lasso) => resolve_lasso(&graph, lasso),
    };
    Ok(CheckReport { verdict, states: graph.len() })
}

/// Check one of the named catalog properties. The intersection name is
/// taken from the configuration, which must hold exactly one intersection.
pub fn check_property_catalog(
    init: &Configuration,
    params: &Params,
    property: CatalogProperty,
    opts: &CheckOptions,
) -> Result<CheckReport, CheckError> {
    let xing = init
        .intersection_name()
        .ok_or_else(|| PropError::UnknownIntersection("<none>".to_owned()))?;
    match property {
        CatalogProperty::P1 => model_check_ltl(init, params, &catalog::p1(&xing), opts),
        CatalogProperty::P2 => model_check_ltl(init, params, &catalog::p2(&xing), opts),
        CatalogProperty::P3 => model_check_ltl(init, params, &catalog::p3(&xing), opts),
        CatalogProperty::P4 => model_check_ltl(init, params, &catalog::p4(&xing), opts),
        CatalogProperty::P4x => model_check_ltl(init, params, &catalog::p4x(&xing), opts),
        CatalogProperty::P5(tau) => {
            let (p, q) = catalog::p5_props(&xing);
            check_bounded_response(init, params, &p, &q, tau, opts)
        }
    }
}
