//! Initial-state builders and the scenario file reader.

use crosslight_core::devices::{ClState, Color, Params, PlMode};
use crosslight_core::kernel::{Finite, Infinity, Payload};
use crosslight_core::scenarios::{build_env, build_init, build_lights};
use crosslight_core::{
    init, parse_scenario, Direction, Oid, Regime, ScenarioError, ScenarioSpec,
};

use Direction::{EW, NS};

#[test]
fn lights_derive_the_opposite_phase_from_the_prioritized_one() {
    let p = Params::default();
    let c = build_lights("S", NS, 5, 6, &p).unwrap();

    let ns = c.car_light(&Oid::car_light("S", NS)).unwrap();
    assert_eq!(ns.state, ClState::Green);
    assert!(ns.lights.is(Color::Green));
    assert_eq!(ns.timer, Finite(5));
    assert_eq!((ns.green_time, ns.red_time), (5, 6));
    assert!(ns.default_starter);

    let ew = c.car_light(&Oid::car_light("S", EW)).unwrap();
    assert_eq!(ew.state, ClState::Red);
    assert!(ew.lights.is(Color::Red));
    assert_eq!(ew.timer, Finite(4)); // GREENTIME monus Delta
    assert_eq!(ew.red_time, 8); // GREENTIME + yellowTime + 2*safetyMargin
    assert_eq!(ew.green_time, 3); // REDTIME monus (yellowTime + 2*safetyMargin)
    assert!(!ew.default_starter);
}

#[test]
fn ped_lights_start_red_with_idle_timers() {
    let c = build_lights("S", NS, 5, 6, &Params::default()).unwrap();
    for dir in [NS, EW] {
        let pl = c.ped_light(&Oid::ped_light("S", dir)).unwrap();
        assert_eq!(pl.color, Color::Red);
        assert_eq!(pl.timer, Infinity);
        assert!(!pl.button_lit);
        assert_eq!(pl.mode, PlMode::Normal);
        assert!(!c.approach(&Oid::approach("S", dir)).unwrap().cars_present);
    }
}

#[test]
fn exactly_one_default_starter_per_intersection() {
    let c = build_lights("S", NS, 5, 6, &Params::default()).unwrap();
    let starters = [NS, EW]
        .iter()
        .filter(|d| c.car_light(&Oid::car_light("S", **d)).unwrap().default_starter)
        .count();
    assert_eq!(starters, 1);
}

#[test]
fn bounds_are_enforced() {
    let p = Params::default();
    assert_eq!(
        build_lights("S", NS, 2, 6, &p),
        Err(ScenarioError::GreenTimeTooShort { got: 2, min: 3 })
    );
    assert_eq!(
        build_lights("S", NS, 5, 5, &p),
        Err(ScenarioError::RedTimeTooShort { got: 5, min: 6 })
    );
}

#[test]
fn env_composition_follows_the_fault_and_emergency_switches() {
    let no_emergency = build_env(&ScenarioSpec::new("S", 5, 6, 0, 0, 0, 1, 1));
    assert!(no_emergency.object(&Oid::EnvEmergency("S".to_owned())).is_none());
    assert!(no_emergency.object(&Oid::EnvCarsPeds("S".to_owned())).is_some());

    let with_emergency = build_env(&ScenarioSpec::new("S", 5, 6, 2, 0, 0, 1, 1));
    assert!(with_emergency.object(&Oid::EnvEmergency("S".to_owned())).is_some());

    let one_car_fault = build_env(&ScenarioSpec::new("S", 5, 6, 0, 1, 0, 2, 9));
    let ns_env = Oid::EnvFailure(Box::new(Oid::car_light("S", NS)));
    let ew_env = Oid::EnvFailure(Box::new(Oid::car_light("S", EW)));
    assert!(one_car_fault.object(&ns_env).is_some());
    assert!(one_car_fault.object(&ew_env).is_none());

    let one_ped_fault = build_env(&ScenarioSpec::new("S", 5, 6, 0, 0, 1, 2, 9));
    let ped_ew_env = Oid::EnvFailure(Box::new(Oid::ped_light("S", EW)));
    let ped_ns_env = Oid::EnvFailure(Box::new(Oid::ped_light("S", NS)));
    assert!(one_ped_fault.object(&ped_ew_env).is_some());
    assert!(one_ped_fault.object(&ped_ns_env).is_none());
}

#[test]
fn cars_and_peds_env_starts_due_immediately() {
    let c = build_env(&ScenarioSpec::new("S", 5, 6, 0, 0, 0, 1, 1));
    match c.object(&Oid::EnvCarsPeds("S".to_owned())) {
        Some(Payload::PeriodicEnv(e)) => {
            assert_eq!(e.time_to_next_events, Finite(0));
            assert_eq!(e.frequency, 1);
            assert_eq!(e.possible_events.len(), 4);
        }
        other => panic!("unexpected payload {other:?}"),
    }
}

#[test]
fn init_assembles_devices_and_environments() {
    let c = init("Spitsbergen", 5, 6, 2, 0, 0, 1, 1).unwrap();
    assert_eq!(c.objects().count(), 8); // 6 devices + cars/peds + emergency envs
    assert!(c.messages().is_empty());
    assert_eq!(c.max_time_elapse(), Finite(0));

    let c = init("Spitsbergen", 5, 6, 0, 1, 0, 2, 9).unwrap();
    assert_eq!(c.objects().count(), 8); // 6 devices + cars/peds + one failure env
    assert!(c.object(&Oid::EnvEmergency("Spitsbergen".to_owned())).is_none());
}

#[test]
fn extra_intersections_are_disjoint() {
    let mut spec = ScenarioSpec::new("A", 5, 6, 0, 0, 0, 1, 1);
    spec.extra_intersections.push(("B".to_owned(), 5, 6));
    let c = build_init(&spec).unwrap();
    let device_count = c
        .objects()
        .filter(|(o, _)| {
            matches!(
                o,
                Oid::CarLight(..) | Oid::PedLight(..) | Oid::Approach(..) | Oid::PedStop(..)
            )
        })
        .count();
    assert_eq!(device_count, 12);
    assert!(c.intersection_name().is_none(), "two intersections have no single name");
    assert!(c.car_light(&Oid::car_light("B", NS)).unwrap().default_starter);
}

#[test]
fn scenario_files_round_trip_the_core_parameters() {
    let spec = parse_scenario(
        "# comment\n\
         xing = Oslo\n\
         green_time = 7\n\
         red_time = 9\n\
         emergency_period = 3\n\
         car_faults = 1\n\
         ped_faults = 2\n\
         fail_frequency = 2\n\
         fail_separation = 9\n\
         regime = european\n\
         intersection = Bergen, 5, 6\n",
    )
    .unwrap();
    assert_eq!(spec.xing, "Oslo");
    assert_eq!((spec.green_time_ns, spec.red_time_ns), (7, 9));
    assert_eq!(spec.emergency_period, 3);
    assert_eq!((spec.car_faults, spec.ped_faults), (1, 2));
    assert_eq!((spec.fail_frequency, spec.fail_separation), (2, 9));
    assert_eq!(spec.params.regime, Regime::European);
    assert_eq!(spec.extra_intersections, vec![("Bergen".to_owned(), 5, 6)]);
    spec.validate().unwrap();
}

#[test]
fn unknown_keys_and_malformed_lines_are_rejected_with_positions() {
    match parse_scenario("xing = A\nbogus = 1\n") {
        Err(ScenarioError::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected parse error, got {other:?}"),
    }
    match parse_scenario("no equals sign") {
        Err(ScenarioError::Parse { line, .. }) => assert_eq!(line, 1),
        other => panic!("expected parse error, got {other:?}"),
    }
    match parse_scenario("green_time = many") {
        Err(ScenarioError::Parse { line, .. }) => assert_eq!(line, 1),
        other => panic!("expected parse error, got {other:?}"),
    }
}

#[test]
fn validate_rejects_out_of_range_specs() {
    assert!(ScenarioSpec::new("S", 5, 6, 0, 3, 0, 1, 1).validate().is_err());
    assert!(ScenarioSpec::new("S", 5, 6, 0, 0, 0, 0, 1).validate().is_err());
    assert!(ScenarioSpec::new("S", 5, 6, 0, 0, 0, 1, 0).validate().is_err());
    assert!(ScenarioSpec::new("S", 5, 6, 0, 0, 0, 1, 1).validate().is_ok());
}
