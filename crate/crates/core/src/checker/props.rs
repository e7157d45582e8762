//! Atomic state propositions, each a pure function of one configuration.

use std::fmt;

use thiserror::Error;

use crate::devices::Color;
use crate::kernel::{Configuration, Direction, Message, Oid};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PropError {
    #[error("unknown intersection `{0}`")]
    UnknownIntersection(String),
}

/// The proposition kinds of the property catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropKind {
    PedLightRed(Direction),
    PedArriving(Direction),
    ButtonPushed(Direction),
    CarLightRed(Direction),
    CarLightGreen(Direction),
    CarWaiting(Direction),
    CarArriving(Direction),
    Walking(Direction),
    Driving(Direction),
    Failure,
    Repair,
}

/// A proposition bound to an intersection name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicProp {
    pub xing: String,
    pub kind: PropKind,
}

impl AtomicProp {
    pub fn new(xing: &str, kind: PropKind) -> Self {
        AtomicProp { xing: xing.to_owned(), kind }
    }
}

impl fmt::Display for AtomicProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PropKind::PedLightRed(d) => write!(f, "pedLightRed({d})"),
            PropKind::PedArriving(d) => write!(f, "pedArriving({d})"),
            PropKind::ButtonPushed(d) => write!(f, "buttonPushed({d})"),
            PropKind::CarLightRed(d) => write!(f, "carLightRed({d})"),
            PropKind::CarLightGreen(d) => write!(f, "carLightGreen({d})"),
            PropKind::CarWaiting(d) => write!(f, "carWaiting({d})"),
            PropKind::CarArriving(d) => write!(f, "carArriving({d})"),
            PropKind::Walking(d) => write!(f, "walking({d})"),
            PropKind::Driving(d) => write!(f, "driving({d})"),
            PropKind::Failure => write!(f, "failure"),
            PropKind::Repair => write!(f, "repair"),
        }
    }
}

/// Check that the proposition's intersection exists in the configuration.
pub fn validate_prop(c: &Configuration, a: &AtomicProp) -> Result<(), PropError> {
    let probe = Oid::car_light(&a.xing, Direction::NS);
    if c.car_light(&probe).is_none() {
        return Err(PropError::UnknownIntersection(a.xing.clone()));
    }
    Ok(())
}

/// Evaluate a proposition in a normalized configuration.
pub fn eval_prop(c: &Configuration, a: &AtomicProp) -> Result<bool, PropError> {
    validate_prop(c, a)?;
    let xing = a.xing.as_str();
    let value = match a.kind {
        PropKind::PedLightRed(d) => {
            c.ped_light(&Oid::ped_light(xing, d)).map_or(false, |s| s.color == Color::Red)
        }
        PropKind::PedArriving(d) => c
            .messages()
            .iter()
            .any(|m| matches!(m, Message::NewPed(o) if *o == Oid::ped_stop(xing, d))),
        PropKind::ButtonPushed(d) => {
            c.ped_light(&Oid::ped_light(xing, d)).map_or(false, |s| s.button_lit)
        }
        PropKind::CarLightRed(d) => c
            .car_light(&Oid::car_light(xing, d))
            .map_or(false, |s| s.lights.contains(Color::Red)),
        PropKind::CarLightGreen(d) => c
            .car_light(&Oid::car_light(xing, d))
            .map_or(false, |s| s.lights.contains(Color::Green)),
        PropKind::CarWaiting(d) => {
            c.approach(&Oid::approach(xing, d)).map_or(false, |s| s.cars_present)
        }
        PropKind::CarArriving(d) => c
            .messages()
            .iter()
            .any(|m| matches!(m, Message::NewCars(o) if *o == Oid::approach(xing, d))),
        PropKind::Walking(d) => c
            .ped_light(&Oid::ped_light(xing, d))
            .map_or(false, |s| s.color == Color::Green || s.color == Color::Blinking),
        // `driving` matches the exact light display `green`, nothing else.
        PropKind::Driving(d) => c
            .car_light(&Oid::car_light(xing, d))
            .map_or(false, |s| s.lights.is(Color::Green)),
        PropKind::Failure => c.messages().iter().any(|m| {
            matches!(m, Message::Error { to, failed } if to == failed && to.xing() == xing)
        }),
        PropKind::Repair => c.messages().iter().any(|m| {
            matches!(m, Message::Repaired { to, fixed } if to == fixed && to.xing() == xing)
        }),
    };
    Ok(value)
}
