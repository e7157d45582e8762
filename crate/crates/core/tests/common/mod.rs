//! Shared helpers for the integration tests: hand-built configurations
//! with every device in a chosen state.
#![allow(dead_code)] // each test binary uses a different subset

use crosslight_core::devices::{
    ApproachState, CarLightState, ClState, Color, ColorSet, PedLightState, PlMode,
};
use crosslight_core::kernel::{Configuration, Infinity, Payload, TimeValue};
use crosslight_core::{Direction, Oid};

pub const XING: &str = "X";

pub fn car_light(state: ClState, lights: Color, timer: TimeValue) -> CarLightState {
    CarLightState {
        lights: ColorSet::single(lights),
        timer,
        state,
        red_time: 6,
        green_time: 5,
        ped_waiting: false,
        default_starter: false,
    }
}

pub fn ped_light_red() -> PedLightState {
    PedLightState { timer: Infinity, color: Color::Red, button_lit: false, mode: PlMode::Normal }
}

/// Six quiescent devices: both car lights red with infinite timers, both
/// pedestrian lights red, both approaches empty. Tests then overwrite the
/// object they exercise.
pub fn quiet_intersection() -> Configuration {
    let mut c = Configuration::new();
    for dir in [Direction::NS, Direction::EW] {
        let mut cl = car_light(ClState::Red, Color::Red, Infinity);
        cl.default_starter = dir == Direction::NS;
        c.insert_object(Oid::car_light(XING, dir), Payload::CarLight(cl));
        c.insert_object(Oid::ped_light(XING, dir), Payload::PedLight(ped_light_red()));
        c.insert_object(
            Oid::approach(XING, dir),
            Payload::Approach(ApproachState { cars_present: false }),
        );
    }
    c
}

pub fn set_car_light(c: &mut Configuration, dir: Direction, f: impl FnOnce(&mut CarLightState)) {
    match c.object_mut(&Oid::car_light(XING, dir)) {
        Some(Payload::CarLight(s)) => f(s),
        _ => panic!("missing car light"),
    }
}

pub fn set_ped_light(c: &mut Configuration, dir: Direction, f: impl FnOnce(&mut PedLightState)) {
    match c.object_mut(&Oid::ped_light(XING, dir)) {
        Some(Payload::PedLight(s)) => f(s),
        _ => panic!("missing ped light"),
    }
}

pub fn set_approach(c: &mut Configuration, dir: Direction, cars: bool) {
    match c.object_mut(&Oid::approach(XING, dir)) {
        Some(Payload::Approach(s)) => s.cars_present = cars,
        _ => panic!("missing approach"),
    }
}

pub fn get_car_light(c: &Configuration, dir: Direction) -> &CarLightState {
    c.car_light(&Oid::car_light(XING, dir)).expect("car light")
}

pub fn get_ped_light(c: &Configuration, dir: Direction) -> &PedLightState {
    c.ped_light(&Oid::ped_light(XING, dir)).expect("ped light")
}
