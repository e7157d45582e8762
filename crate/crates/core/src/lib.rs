//! Decentralized traffic-intersection controllers as an executable
//! real-time transition system, with an explicit-state LTL and
//! bounded-response model checker.
//!
//! The model is a four-way intersection run by communicating car-light,
//! pedestrian-light, and approach-sensor objects, with nondeterministic
//! environments injecting traffic, emergencies, and device failures.
//! States are multisets of objects and in-flight messages; transitions are
//! instantaneous rule applications interleaved with discrete time steps.

pub mod checker;
pub mod devices;
pub mod environments;
pub mod kernel;
pub mod scenarios;
pub mod sim;

pub use checker::{
    check_bounded_response, check_property_catalog, model_check_ltl, CatalogProperty, CheckError,
    CheckOptions, CheckReport, Verdict,
};
pub use devices::{Params, Regime, RuleMutation};
pub use kernel::{Configuration, Direction, Message, Oid, TimeValue};
pub use scenarios::{init, parse_scenario, ScenarioError, ScenarioSpec};
