//! Nondeterministic environment generators: periodic car/pedestrian
//! arrivals, alternating emergency start/stop signals, and per-device
//! failure/repair injection with a minimum repair-to-failure separation.

use crate::kernel::message::Message;
use crate::kernel::oid::Oid;
use crate::kernel::time::{Finite, TimeValue};
use crate::kernel::{Configuration, Payload};

/// Periodically emits an arbitrary subset of its possible events.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodicEnvState {
    pub frequency: u64,
    pub time_to_next_events: TimeValue,
    pub possible_events: Vec<Message>,
}

/// Emits emergency and emergency-over signals in strict alternation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EmergencyEnvState {
    pub frequency: u64,
    pub time_to_next_events: TimeValue,
    pub emergency_on: bool,
    pub xing: String,
}

/// Whether the watched device is currently up or down, with the timer to
/// the next injection decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FailurePhase {
    Up(TimeValue),
    Down(TimeValue),
}

impl FailurePhase {
    pub fn timer(&self) -> TimeValue {
        match self {
            FailurePhase::Up(t) | FailurePhase::Down(t) => *t,
        }
    }

    pub fn advance(&mut self, d: TimeValue) {
        match self {
            FailurePhase::Up(t) | FailurePhase::Down(t) => *t = t.monus(d),
        }
    }
}

/// Injects failures and repairs for one device. A new failure can occur no
/// earlier than `min_separation` after the previous repair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FailureEnvState {
    pub device: Oid,
    pub frequency: u64,
    pub min_separation: u64,
    pub phase: FailurePhase,
}

type Successors = Vec<(&'static str, Configuration)>;

/// All environment-rule successors of a normalized configuration.
pub fn env_successors(c: &Configuration, out: &mut Successors) {
    for (oid, payload) in c.objects() {
        match payload {
            Payload::PeriodicEnv(s) if s.time_to_next_events.is_zero() => {
                // generateSubsetAndReset: one successor per subset of the
                // possible events, the empty set included.
                let k = s.possible_events.len();
                for mask in 0..(1u32 << k) {
                    let mut next = c.clone();
                    if let Some(Payload::PeriodicEnv(e)) = next.object_mut(oid) {
                        e.time_to_next_events = Finite(s.frequency);
                    }
                    for (i, ev) in s.possible_events.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            next.add_message(ev.clone());
                        }
                    }
                    out.push(("generateSubsetAndReset", next));
                }
            }
            Payload::EmergencyEnv(s) if s.time_to_next_events.is_zero() => {
                let mut skip = c.clone();
                if let Some(Payload::EmergencyEnv(e)) = skip.object_mut(oid) {
                    e.time_to_next_events = Finite(s.frequency);
                }
                out.push(("emergencySkip", skip));

                let mut emit = c.clone();
                if let Some(Payload::EmergencyEnv(e)) = emit.object_mut(oid) {
                    e.time_to_next_events = Finite(s.frequency);
                    e.emergency_on = !s.emergency_on;
                }
                let msg = if s.emergency_on {
                    Message::EmergencyOverXing(s.xing.clone())
                } else {
                    Message::EmergencyXing(s.xing.clone())
                };
                emit.add_message(msg);
                let label = if s.emergency_on { "emergencyOverSignal" } else { "emergencySignal" };
                out.push((label, emit));
            }
            Payload::FailureEnv(s) if s.phase.timer().is_zero() => {
                match s.phase {
                    FailurePhase::Up(_) => {
                        let mut skip = c.clone();
                        if let Some(Payload::FailureEnv(e)) = skip.object_mut(oid) {
                            e.phase = FailurePhase::Up(Finite(s.frequency));
                        }
                        out.push(("failureSkip", skip));

                        let mut fail = c.clone();
                        if let Some(Payload::FailureEnv(e)) = fail.object_mut(oid) {
                            e.phase = FailurePhase::Down(Finite(s.frequency));
                        }
                        fail.add_message(Message::Error {
                            to: s.device.clone(),
                            failed: s.device.clone(),
                        });
                        out.push(("injectFailure", fail));
                    }
                    FailurePhase::Down(_) => {
                        let mut skip = c.clone();
                        if let Some(Payload::FailureEnv(e)) = skip.object_mut(oid) {
                            e.phase = FailurePhase::Down(Finite(s.frequency));
                        }
                        out.push(("repairSkip", skip));

                        let mut repair = c.clone();
                        if let Some(Payload::FailureEnv(e)) = repair.object_mut(oid) {
                            e.phase = FailurePhase::Up(Finite(s.min_separation));
                        }
                        repair.add_message(Message::Repaired {
                            to: s.device.clone(),
                            fixed: s.device.clone(),
                        });
                        out.push(("injectRepair", repair));
                    }
                }
            }
            _ => {}
        }
    }
}
