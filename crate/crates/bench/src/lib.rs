//! Shared scenario builders for the benchmarks.

use crosslight_core::devices::Params;
use crosslight_core::kernel::{Configuration, Payload};
use crosslight_core::{init, Direction, Oid};

/// The bounded-response scenario: one intersection, traffic environment,
/// no emergencies or failures (20,368 reachable states).
pub fn traffic_scenario() -> (Configuration, Params) {
    let c = init("Spitsbergen", 5, 6, 0, 0, 0, 1, 1).expect("valid scenario");
    (c, Params::default())
}

/// A closed intersection without environments: the lights cycle
/// deterministically against permanently present cars (tiny state space).
pub fn closed_loop() -> (Configuration, Params) {
    let p = Params::default();
    let mut c = crosslight_core::scenarios::build_lights("X", Direction::NS, 5, 6, &p)
        .expect("valid lights");
    for dir in [Direction::NS, Direction::EW] {
        if let Some(Payload::Approach(a)) = c.object_mut(&Oid::approach("X", dir)) {
            a.cars_present = true;
        }
    }
    (c.normalized(), p)
}
