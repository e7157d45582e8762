//! Configurations: the global state as a multiset of objects and messages.
//!
//! Objects live in a `BTreeMap` keyed by identifier and messages in a sorted
//! vector, so two configurations built from any permutation of the same
//! elements compare equal and hash identically.

use std::collections::BTreeMap;

use thiserror::Error;

use super::message::Message;
use super::oid::{Direction, Oid};
use super::time::{Finite, TimeValue};
use crate::devices::{ApproachState, CarLightState, Params, PedLightState};
use crate::environments::{EmergencyEnvState, FailureEnvState, PeriodicEnvState};

/// The state payload of one object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Payload {
    CarLight(CarLightState),
    PedLight(PedLightState),
    Approach(ApproachState),
    PeriodicEnv(PeriodicEnvState),
    EmergencyEnv(EmergencyEnvState),
    FailureEnv(FailureEnvState),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("tick duration {requested} exceeds maximal time elapse {max}")]
    TickTooLarge { requested: TimeValue, max: TimeValue },
    #[error("tick duration must be finite and nonzero")]
    TickNotPositive,
}

/// A multiset of objects and in-flight messages. At most one object per
/// identifier; messages may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Configuration {
    objects: BTreeMap<Oid, Payload>,
    messages: Vec<Message>,
}

impl Configuration {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert_object(&mut self, oid: Oid, payload: Payload) {
        let prev = self.objects.insert(oid, payload);
        assert!(prev.is_none(), "duplicate object identifier");
    }

    pub fn object(&self, oid: &Oid) -> Option<&Payload> {
        self.objects.get(oid)
    }

    pub fn object_mut(&mut self, oid: &Oid) -> Option<&mut Payload> {
        self.objects.get_mut(oid)
    }

    pub fn objects(&self) -> impl Iterator<Item = (&Oid, &Payload)> {
        self.objects.iter()
    }

    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    pub fn has_messages(&self) -> bool {
        !self.messages.is_empty()
    }

    pub fn add_message(&mut self, m: Message) {
        let pos = self.messages.partition_point(|x| x <= &m);
        self.messages.insert(pos, m);
    }

    pub fn remove_message_at(&mut self, idx: usize) -> Message {
        self.messages.remove(idx)
    }

    pub fn car_light(&self, oid: &Oid) -> Option<&CarLightState> {
        match self.object(oid) {
            Some(Payload::CarLight(s)) => Some(s),
            _ => None,
        }
    }

    pub fn ped_light(&self, oid: &Oid) -> Option<&PedLightState> {
        match self.object(oid) {
            Some(Payload::PedLight(s)) => Some(s),
            _ => None,
        }
    }

    pub fn approach(&self, oid: &Oid) -> Option<&ApproachState> {
        match self.object(oid) {
            Some(Payload::Approach(s)) => Some(s),
            _ => None,
        }
    }

    /// Whether cars are present at the approach in the car light's direction.
    pub fn cars_present_at(&self, car_light: &Oid) -> bool {
        let app = match car_light {
            Oid::CarLight(c, d) => Oid::Approach(c.clone(), *d),
            _ => return false,
        };
        self.approach(&app).map_or(false, |a| a.cars_present)
    }

    /// Apply the emergency distribution equations until fixpoint: every
    /// intersection-level emergency(-over) message is replaced by one
    /// device-level message per car light of that intersection.
    pub fn normalize(&mut self) {
        let mut redistributed = Vec::new();
        self.messages.retain(|m| match m {
            Message::EmergencyXing(cn) => {
                redistributed.push(Message::EmergencyDev(Oid::car_light(cn, Direction::EW)));
                redistributed.push(Message::EmergencyDev(Oid::car_light(cn, Direction::NS)));
                false
            }
            Message::EmergencyOverXing(cn) => {
                redistributed.push(Message::EmergencyOverDev(Oid::car_light(cn, Direction::EW)));
                redistributed.push(Message::EmergencyOverDev(Oid::car_light(cn, Direction::NS)));
                false
            }
            _ => true,
        });
        for m in redistributed {
            self.add_message(m);
        }
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// The timers that constrain time advance: every finite device timer and
    /// environment deadline.
    fn deadlines(&self) -> impl Iterator<Item = TimeValue> + '_ {
        self.objects.values().filter_map(|p| match p {
            Payload::CarLight(s) => Some(s.timer),
            Payload::PedLight(s) => Some(s.timer),
            Payload::Approach(_) => None,
            Payload::PeriodicEnv(s) => Some(s.time_to_next_events),
            Payload::EmergencyEnv(s) => Some(s.time_to_next_events),
            Payload::FailureEnv(s) => Some(s.phase.timer()),
        })
    }

    /// How far time may advance: zero while messages are pending or a timer
    /// has expired, otherwise the minimum finite deadline (infinity if none).
    pub fn max_time_elapse(&self) -> TimeValue {
        if self.has_messages() {
            return Finite(0);
        }
        self.deadlines()
            .min()
            .unwrap_or(TimeValue::Infinity)
    }

    /// Advance time by `d`, decrementing every deadline. Rejects a `d` that
    /// would skip past a deadline or a pending message.
    pub fn tick(&self, d: TimeValue) -> Result<Configuration, KernelError> {
        let dur = match d {
            Finite(0) | TimeValue::Infinity => return Err(KernelError::TickNotPositive),
            Finite(n) => Finite(n),
        };
        let max = self.max_time_elapse();
        if dur > max {
            return Err(KernelError::TickTooLarge { requested: dur, max });
        }
        let mut next = self.clone();
        for payload in next.objects.values_mut() {
            match payload {
                Payload::CarLight(s) => s.timer = s.timer.monus(dur),
                Payload::PedLight(s) => s.timer = s.timer.monus(dur),
                Payload::Approach(_) => {}
                Payload::PeriodicEnv(s) => {
                    s.time_to_next_events = s.time_to_next_events.monus(dur)
                }
                Payload::EmergencyEnv(s) => {
                    s.time_to_next_events = s.time_to_next_events.monus(dur)
                }
                Payload::FailureEnv(s) => s.phase.advance(dur),
            }
        }
        Ok(next)
    }

    /// A deterministic byte key: equal multisets map to equal keys, distinct
    /// ones to distinct keys, stable across process runs.
    pub fn canonical_key(&self) -> Vec<u8> {
        format!("{self:?}").into_bytes()
    }

    /// The intersection name, when the configuration holds exactly one.
    pub fn intersection_name(&self) -> Option<String> {
        let mut found: Option<&str> = None;
        for oid in self.objects.keys() {
            let name = oid.xing();
            match found {
                None => found = Some(name),
                Some(prev) if prev == name => {}
                Some(_) => return None,
            }
        }
        found.map(str::to_owned)
    }
}

/// All successors reachable by one application of any enabled instantaneous
/// rule, each labeled with the rule name and normalized.
pub fn instantaneous_successors(
    c: &Configuration,
    p: &Params,
) -> Vec<(&'static str, Configuration)> {
    let mut out = Vec::new();
    crate::devices::device_successors(c, p, &mut out);
    crate::environments::env_successors(c, &mut out);
    for (_, succ) in &mut out {
        succ.normalize();
    }
    out
}
