//! In-flight messages between devices and from the environment.

use std::fmt;

use super::oid::Oid;
use super::time::TimeValue;

/// A message in a configuration. Every variant names its receiver; the
/// intersection-level `EmergencyXing`/`EmergencyOverXing` forms are
/// transient and distributed to both car lights by normalization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Message {
    /// The opposite light will not turn green; stay green another round.
    ContinueGreen(Oid),
    /// Pedestrian light may show green/blinking for the given duration.
    PedGo(Oid, TimeValue),
    /// A pedestrian pushed the unlit button; sent to the car light.
    PedsWaiting(Oid),
    /// Environment: new pedestrians arrived at a pedestrian stop.
    NewPed(Oid),
    /// Environment: new cars arrived at an approach.
    NewCars(Oid),
    /// Environment: an emergency started at the intersection.
    EmergencyXing(String),
    /// Environment: the emergency at the intersection is over.
    EmergencyOverXing(String),
    /// Emergency signal addressed to a single device.
    EmergencyDev(Oid),
    /// Emergency-over signal addressed to a single device.
    EmergencyOverDev(Oid),
    /// Post-emergency instruction to a pedestrian light: show red.
    ResumeRed(Oid),
    /// Post-emergency instruction to a pedestrian light: show green for the duration.
    ResumeGreen(Oid, TimeValue),
    /// Post-emergency instruction to the non-prioritized car light: restart red.
    ReStartRed(Oid),
    /// Post-emergency instruction to the non-prioritized car light: restart green.
    ReStartGreen(Oid),
    /// Device failure notification: `to` learns that `failed` broke.
    Error { to: Oid, failed: Oid },
    /// Repair notification: `to` learns that `fixed` was repaired.
    Repaired { to: Oid, fixed: Oid },
}

impl Message {
    /// The receiver object, if the message is device-addressed.
    pub fn receiver(&self) -> Option<&Oid> {
        match self {
            Message::ContinueGreen(o)
            | Message::PedGo(o, _)
            | Message::PedsWaiting(o)
            | Message::NewPed(o)
            | Message::NewCars(o)
            | Message::EmergencyDev(o)
            | Message::EmergencyOverDev(o)
            | Message::ResumeRed(o)
            | Message::ResumeGreen(o, _)
            | Message::ReStartRed(o)
            | Message::ReStartGreen(o) => Some(o),
            Message::Error { to, .. } | Message::Repaired { to, .. } => Some(to),
            Message::EmergencyXing(_) | Message::EmergencyOverXing(_) => None,
        }
    }
}

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Message::ContinueGreen(o) => write!(f, "continueGreen({o})"),
            Message::PedGo(o, t) => write!(f, "pedGo({o},{t})"),
            Message::PedsWaiting(o) => write!(f, "pedsWaiting({o})"),
            Message::NewPed(o) => write!(f, "newPed({o})"),
            Message::NewCars(o) => write!(f, "newCars({o})"),
            Message::EmergencyXing(c) => write!(f, "emergency({c})"),
            Message::EmergencyOverXing(c) => write!(f, "emergencyOver({c})"),
            Message::EmergencyDev(o) => write!(f, "emergency({o})"),
            Message::EmergencyOverDev(o) => write!(f, "emergencyOver({o})"),
            Message::ResumeRed(o) => write!(f, "resumeRed({o})"),
            Message::ResumeGreen(o, t) => write!(f, "resumeGreen({o},{t})"),
            Message::ReStartRed(o) => write!(f, "reStartRed({o})"),
            Message::ReStartGreen(o) => write!(f, "reStartGreen({o})"),
            Message::Error { to, failed } => write!(f, "(to {to} error({failed}))"),
            Message::Repaired { to, fixed } => write!(f, "(to {to} repaired({fixed}))"),
        }
    }
}
