//! Environment generators: periodic traffic, alternating emergencies, and
//! failure injection with a repair-to-failure separation.

use std::collections::BTreeSet;

use crosslight_core::environments::{
    env_successors, EmergencyEnvState, FailureEnvState, FailurePhase, PeriodicEnvState,
};
use crosslight_core::kernel::{Configuration, Finite, Message, Payload};
use crosslight_core::{Direction, Oid};

const XING: &str = "X";

fn successors(c: &Configuration) -> Vec<(&'static str, Configuration)> {
    let mut out = Vec::new();
    env_successors(c, &mut out);
    out
}

fn periodic_env(time_to_next: u64) -> Configuration {
    let mut c = Configuration::new();
    c.insert_object(
        Oid::EnvCarsPeds(XING.to_owned()),
        Payload::PeriodicEnv(PeriodicEnvState {
            frequency: 1,
            time_to_next_events: Finite(time_to_next),
            possible_events: vec![
                Message::NewCars(Oid::approach(XING, Direction::NS)),
                Message::NewCars(Oid::approach(XING, Direction::EW)),
                Message::NewPed(Oid::ped_stop(XING, Direction::NS)),
                Message::NewPed(Oid::ped_stop(XING, Direction::EW)),
            ],
        }),
    );
    c
}

#[test]
fn periodic_env_emits_every_subset_of_its_events() {
    let c = periodic_env(0);
    let succs = successors(&c);
    assert_eq!(succs.len(), 16); // 2^4 subsets, empty and full included
    let distinct: BTreeSet<Vec<u8>> = succs.iter().map(|(_, s)| s.canonical_key()).collect();
    assert_eq!(distinct.len(), 16);
    for (label, s) in &succs {
        assert_eq!(*label, "generateSubsetAndReset");
        match s.object(&Oid::EnvCarsPeds(XING.to_owned())) {
            Some(Payload::PeriodicEnv(e)) => assert_eq!(e.time_to_next_events, Finite(1)),
            other => panic!("unexpected payload {other:?}"),
        }
    }
    let sizes: BTreeSet<usize> = succs.iter().map(|(_, s)| s.messages().len()).collect();
    assert_eq!(sizes, BTreeSet::from([0, 1, 2, 3, 4]));
}

#[test]
fn periodic_env_empty_subset_only_resets_the_timer() {
    let c = periodic_env(0);
    let quiet: Vec<Configuration> = successors(&c)
        .into_iter()
        .filter(|(_, s)| s.messages().is_empty())
        .map(|(_, s)| s)
        .collect();
    assert_eq!(quiet.len(), 1);
    assert_eq!(quiet[0], periodic_env(1));
}

#[test]
fn periodic_env_waits_for_its_timer() {
    assert!(successors(&periodic_env(1)).is_empty());
}

fn emergency_env(on: bool) -> Configuration {
    let mut c = Configuration::new();
    c.insert_object(
        Oid::EnvEmergency(XING.to_owned()),
        Payload::EmergencyEnv(EmergencyEnvState {
            frequency: 2,
            time_to_next_events: Finite(0),
            emergency_on: on,
            xing: XING.to_owned(),
        }),
    );
    c
}

fn emergency_flag(c: &Configuration) -> bool {
    match c.object(&Oid::EnvEmergency(XING.to_owned())) {
        Some(Payload::EmergencyEnv(e)) => e.emergency_on,
        other => panic!("unexpected payload {other:?}"),
    }
}

#[test]
fn emergency_env_starts_an_emergency_only_when_none_is_running() {
    let succs = successors(&emergency_env(false));
    assert_eq!(succs.len(), 2);
    let emitting: Vec<&Configuration> =
        succs.iter().filter(|(_, s)| !s.messages().is_empty()).map(|(_, s)| s).collect();
    assert_eq!(emitting.len(), 1);
    assert_eq!(emitting[0].messages(), &[Message::EmergencyXing(XING.to_owned())]);
    assert!(emergency_flag(emitting[0]));
    // Normalization then fans the signal out to both car lights.
    let fanned = emitting[0].clone().normalized();
    assert_eq!(fanned.messages().len(), 2);
    assert!(fanned
        .messages()
        .contains(&Message::EmergencyDev(Oid::car_light(XING, Direction::NS))));
}

#[test]
fn emergency_env_ends_a_running_emergency() {
    let succs = successors(&emergency_env(true));
    let emitting: Vec<&Configuration> =
        succs.iter().filter(|(_, s)| !s.messages().is_empty()).map(|(_, s)| s).collect();
    assert_eq!(emitting.len(), 1);
    assert_eq!(emitting[0].messages(), &[Message::EmergencyOverXing(XING.to_owned())]);
    assert!(!emergency_flag(emitting[0]));
}

#[test]
fn emergency_env_skip_branch_keeps_the_flag() {
    for on in [false, true] {
        let succs = successors(&emergency_env(on));
        let quiet: Vec<&Configuration> =
            succs.iter().filter(|(_, s)| s.messages().is_empty()).map(|(_, s)| s).collect();
        assert_eq!(quiet.len(), 1);
        assert_eq!(emergency_flag(quiet[0]), on);
    }
}

fn failure_env(phase: FailurePhase) -> Configuration {
    let mut c = Configuration::new();
    let device = Oid::car_light(XING, Direction::NS);
    c.insert_object(
        Oid::EnvFailure(Box::new(device.clone())),
        Payload::FailureEnv(FailureEnvState {
            device,
            frequency: 2,
            min_separation: 9,
            phase,
        }),
    );
    c
}

fn failure_phase(c: &Configuration) -> FailurePhase {
    let device = Oid::car_light(XING, Direction::NS);
    match c.object(&Oid::EnvFailure(Box::new(device))) {
        Some(Payload::FailureEnv(e)) => e.phase.clone(),
        other => panic!("unexpected payload {other:?}"),
    }
}

#[test]
fn failure_env_may_break_its_device_at_a_decision_point() {
    let succs = successors(&failure_env(FailurePhase::Up(Finite(0))));
    assert_eq!(succs.len(), 2);
    let device = Oid::car_light(XING, Direction::NS);
    let failing: Vec<&Configuration> =
        succs.iter().filter(|(_, s)| !s.messages().is_empty()).map(|(_, s)| s).collect();
    assert_eq!(failing.len(), 1);
    assert_eq!(
        failing[0].messages(),
        &[Message::Error { to: device.clone(), failed: device }]
    );
    assert_eq!(failure_phase(failing[0]), FailurePhase::Down(Finite(2)));
}

#[test]
fn repair_enforces_the_minimum_separation_before_the_next_failure() {
    let succs = successors(&failure_env(FailurePhase::Down(Finite(0))));
    assert_eq!(succs.len(), 2);
    let device = Oid::car_light(XING, Direction::NS);
    let repairing: Vec<&Configuration> =
        succs.iter().filter(|(_, s)| !s.messages().is_empty()).map(|(_, s)| s).collect();
    assert_eq!(repairing.len(), 1);
    assert_eq!(
        repairing[0].messages(),
        &[Message::Repaired { to: device.clone(), fixed: device }]
    );
    // The next failure decision is at least min_separation away.
    assert_eq!(failure_phase(repairing[0]), FailurePhase::Up(Finite(9)));
}

#[test]
fn failure_env_skip_branches_only_rearm_the_timer() {
    for phase in [FailurePhase::Up(Finite(0)), FailurePhase::Down(Finite(0))] {
        let succs = successors(&failure_env(phase.clone()));
        let quiet: Vec<&Configuration> =
            succs.iter().filter(|(_, s)| s.messages().is_empty()).map(|(_, s)| s).collect();
        assert_eq!(quiet.len(), 1);
        let rearmed = failure_phase(quiet[0]);
        match (phase, rearmed) {
            (FailurePhase::Up(_), FailurePhase::Up(t)) => assert_eq!(t, Finite(2)),
            (FailurePhase::Down(_), FailurePhase::Down(t)) => assert_eq!(t, Finite(2)),
            (was, now) => panic!("phase flipped on skip: {was:?} -> {now:?}"),
        }
    }
}
