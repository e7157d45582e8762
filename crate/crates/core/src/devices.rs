//! The three device automata: car light controller, pedestrian light
//! controller, and car approach sensor. Normal operation, emergency
//! clearance, and failure handling are instantaneous rules over a
//! configuration; each rule family contributes zero or more labeled
//! successors.

use std::fmt;

use crate::kernel::message::Message;
use crate::kernel::oid::Oid;
use crate::kernel::time::{Finite, Infinity, TimeValue};
use crate::kernel::{Configuration, Payload};

/// American lights jump from red straight to green; European lights show
/// red+yellow in between.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Regime {
    #[default]
    American,
    European,
}

/// Deliberate rule defects for mutation testing of the safety properties.
/// `None` is the faithful model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RuleMutation {
    #[default]
    None,
    /// Remove the safety margin from the red-phase timers and stretch the
    /// prioritized light's green phase by the margin.
    DropSafetyMargin,
    /// Let a red light turn green directly, skipping the pre-green wait.
    GreenFromRed,
}

/// System-wide timing parameters shared by every device of a deployment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    pub regime: Regime,
    pub delta: u64,
    pub safety_margin: u64,
    pub yellow_time: u64,
    pub walk_time: u64,
    pub mutation: RuleMutation,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            regime: Regime::American,
            delta: 1,
            safety_margin: 1,
            yellow_time: 1,
            walk_time: 2,
            mutation: RuleMutation::None,
        }
    }
}

impl Params {
    /// Shortest green phase that still lets a pedestrian see green before blinking.
    pub fn min_green_time(&self) -> u64 {
        self.walk_time + 1
    }

    pub fn min_red_time(&self) -> u64 {
        self.safety_margin + self.min_green_time() + self.yellow_time + self.safety_margin
    }

    /// The part of the red phase spent after the go-green decision; the
    /// initial red timer is `redTime` minus this.
    fn red_slack(&self) -> u64 {
        match self.mutation {
            RuleMutation::DropSafetyMargin => self.delta + self.yellow_time,
            _ => self.delta + self.yellow_time + self.safety_margin,
        }
    }

    fn green_timer(&self, s: &CarLightState) -> u64 {
        match self.mutation {
            RuleMutation::DropSafetyMargin if s.default_starter => {
                s.green_time + self.safety_margin
            }
            _ => s.green_time,
        }
    }

    /// Red timer when a light restarts red after an emergency or recovery.
    /// It must expire `Delta` before the restarted green light's timer, the
    /// same offset the initial state establishes; in the light's own terms
    /// that is its red time minus the yellow-plus-two-margins tail.
    fn restart_red_timer(&self, s: &CarLightState) -> TimeValue {
        Finite(s.red_time).monus(Finite(self.yellow_time + 2 * self.safety_margin + self.delta))
    }
}

/// Light colors, including the failure-mode blinking displays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Yellow,
    Green,
    Blinking,
    BlinkingYellow,
    BlinkingRed,
    Off,
}

/// A set of colors shown at once (European lights show red+yellow together).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ColorSet(u8);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn single(c: Color) -> ColorSet {
        ColorSet(1 << c as u8)
    }

    pub fn with(self, c: Color) -> ColorSet {
        ColorSet(self.0 | 1 << c as u8)
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 & (1 << c as u8) != 0
    }

    pub fn is(self, c: Color) -> bool {
        self == ColorSet::single(c)
    }

    fn iter(self) -> impl Iterator<Item = Color> {
        [
            Color::Red,
            Color::Yellow,
            Color::Green,
            Color::Blinking,
            Color::BlinkingYellow,
            Color::BlinkingRed,
            Color::Off,
        ]
        .into_iter()
        .filter(move |c| self.contains(*c))
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in self.iter() {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "{c:?}")?;
            first = false;
        }
        if first {
            write!(f, "none")?;
        }
        Ok(())
    }
}

/// Internal state of a car light controller. `Error(n)` counts the devices
/// of the intersection currently believed failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClState {
    Red,
    ToRedYellow,
    ToGreen,
    Green,
    Yellow,
    Emergency,
    Error(u32),
    ErrorRecovery,
}

impl ClState {
    /// Normal operating states: neither emergency nor failure handling.
    pub fn is_normal(self) -> bool {
        matches!(
            self,
            ClState::Red | ClState::ToRedYellow | ClState::ToGreen | ClState::Green | ClState::Yellow
        )
    }

    pub fn is_error(self) -> bool {
        matches!(self, ClState::Error(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CarLightState {
    pub lights: ColorSet,
    pub timer: TimeValue,
    pub state: ClState,
    pub red_time: u64,
    pub green_time: u64,
    pub ped_waiting: bool,
    pub default_starter: bool,
}

/// Operating mode of a pedestrian light.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlMode {
    Normal,
    Emergency,
    Error(u32),
    ErrorRecovery,
}

impl PlMode {
    pub fn is_error(self) -> bool {
        matches!(self, PlMode::Error(_))
    }

    /// Failure handling, where all incoming device messages are ignored.
    pub fn ignores_messages(self) -> bool {
        matches!(self, PlMode::Error(_) | PlMode::ErrorRecovery)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PedLightState {
    pub timer: TimeValue,
    pub color: Color,
    pub button_lit: bool,
    pub mode: PlMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ApproachState {
    pub cars_present: bool,
}

type Successors = Vec<(&'static str, Configuration)>;

/// All device-rule successors of a normalized configuration.
pub fn device_successors(c: &Configuration, p: &Params, out: &mut Successors) {
    timer_rules(c, p, out);
    approach_spontaneous_rules(c, out);
    for (idx, msg) in c.messages().iter().enumerate() {
        message_rules(c, p, idx, msg, out);
    }
}

/// Clone `c` with message `idx` consumed.
fn consume(c: &Configuration, idx: usize) -> Configuration {
    let mut next = c.clone();
    next.remove_message_at(idx);
    next
}

fn update_car(c: &mut Configuration, oid: &Oid, f: impl FnOnce(&mut CarLightState)) {
    match c.object_mut(oid) {
        Some(Payload::CarLight(s)) => f(s),
        _ => panic!("update_car: no car light at {oid}"),
    }
}

fn update_ped(c: &mut Configuration, oid: &Oid, f: impl FnOnce(&mut PedLightState)) {
    match c.object_mut(oid) {
        Some(Payload::PedLight(s)) => f(s),
        _ => panic!("update_ped: no pedestrian light at {oid}"),
    }
}

fn update_approach(c: &mut Configuration, oid: &Oid, f: impl FnOnce(&mut ApproachState)) {
    match c.object_mut(oid) {
        Some(Payload::Approach(s)) => f(s),
        _ => panic!("update_approach: no approach at {oid}"),
    }
}

/// Rules triggered by an expired timer (no message involved).
fn timer_rules(c: &Configuration, p: &Params, out: &mut Successors) {
    let yellow = p.yellow_time;
    for (oid, payload) in c.objects() {
        match payload {
            Payload::CarLight(s) if s.timer.is_zero() => {
                let cars = c.cars_present_at(oid);
                match s.state {
                    ClState::Red => {
                        if !s.ped_waiting && !cars {
                            // dontGoGreen: skip this round, let the other light keep going.
                            let mut next = c.clone();
                            update_car(&mut next, oid, |s| {
                                s.timer = Finite(s.green_time + s.red_time + yellow);
                            });
                            next.add_message(Message::ContinueGreen(oid.opposite()));
                            out.push(("dontGoGreen", next));
                        } else if p.mutation == RuleMutation::GreenFromRed {
                            let mut next = c.clone();
                            let dur = Finite(p.green_timer(s));
                            let was_ped = s.ped_waiting;
                            update_car(&mut next, oid, |s| {
                                s.state = ClState::Green;
                                s.lights = ColorSet::single(Color::Green);
                                s.timer = dur;
                                s.ped_waiting = false;
                            });
                            if was_ped {
                                next.add_message(Message::PedGo(oid.ped_of(), dur));
                            }
                            out.push(("redToGreen", next));
                        } else {
                            let mut next = c.clone();
                            match p.regime {
                                Regime::American => update_car(&mut next, oid, |s| {
                                    s.state = ClState::ToGreen;
                                    s.timer = Finite(p.red_slack());
                                }),
                                Regime::European => update_car(&mut next, oid, |s| {
                                    s.state = ClState::ToRedYellow;
                                    s.timer = Finite(p.delta + yellow);
                                }),
                            }
                            out.push(("redToSafetyMargin", next));
                        }
                    }
                    ClState::ToRedYellow => {
                        let mut next = c.clone();
                        update_car(&mut next, oid, |s| {
                            s.lights = ColorSet::single(Color::Red).with(Color::Yellow);
                            s.state = ClState::ToGreen;
                            s.timer = Finite(p.safety_margin);
                        });
                        out.push(("redYellowToGreen", next));
                    }
                    ClState::ToGreen => {
                        let mut next = c.clone();
                        let dur = Finite(p.green_timer(s));
                        let was_ped = s.ped_waiting;
                        update_car(&mut next, oid, |s| {
                            s.state = ClState::Green;
                            s.lights = ColorSet::single(Color::Green);
                            s.timer = dur;
                            s.ped_waiting = false;
                        });
                        if was_ped {
                            next.add_message(Message::PedGo(oid.ped_of(), dur));
                        }
                        out.push(("redToGreen", next));
                    }
                    ClState::Green => {
                        let mut next = c.clone();
                        update_car(&mut next, oid, |s| {
                            s.state = ClState::Yellow;
                            s.lights = ColorSet::single(Color::Yellow);
                            s.timer = Finite(yellow);
                        });
                        out.push(("greenToYellow", next));
                    }
                    ClState::Yellow => {
                        let mut next = c.clone();
                        update_car(&mut next, oid, |s| {
                            s.state = ClState::Red;
                            s.lights = ColorSet::single(Color::Red);
                            s.timer = Finite(s.red_time).monus(Finite(p.red_slack()));
                        });
                        out.push(("goRed", next));
                    }
                    ClState::Emergency if s.lights.is(Color::Yellow) => {
                        let mut next = c.clone();
                        update_car(&mut next, oid, |s| {
                            s.lights = ColorSet::single(Color::Red);
                            s.timer = Infinity;
                        });
                        out.push(("emergencyYellowToRed", next));
                    }
                    ClState::ErrorRecovery => {
                        let mut next = c.clone();
                        if s.default_starter {
                            let dur = Finite(p.green_timer(s));
                            update_car(&mut next, oid, |s| {
                                s.state = ClState::Green;
                                s.lights = ColorSet::single(Color::Green);
                                s.timer = dur;
                                s.ped_waiting = false;
                            });
                        } else {
                            update_car(&mut next, oid, |s| {
                                s.state = ClState::Red;
                                s.lights = ColorSet::single(Color::Red);
                                s.timer = p.restart_red_timer(s);
                                s.ped_waiting = false;
                            });
                        }
                        out.push(("recoveryDone", next));
                    }
                    _ => {}
                }
            }
            Payload::PedLight(s) if s.timer.is_zero() => match (s.mode, s.color) {
                (PlMode::Normal, Color::Green) => {
                    let mut next = c.clone();
                    update_ped(&mut next, oid, |s| {
                        s.timer = Finite(p.walk_time);
                        s.color = Color::Blinking;
                    });
                    out.push(("startBlinking", next));
                }
                (PlMode::Normal, Color::Blinking) => {
                    let mut next = c.clone();
                    update_ped(&mut next, oid, |s| {
                        s.timer = Infinity;
                        s.color = Color::Red;
                    });
                    out.push(("stop", next));
                }
                (PlMode::ErrorRecovery, _) => {
                    let mut next = c.clone();
                    update_ped(&mut next, oid, |s| {
                        s.mode = PlMode::Normal;
                        s.color = Color::Red;
                        s.timer = Infinity;
                        s.button_lit = false;
                    });
                    out.push(("pedRecoveryDone", next));
                }
                _ => {}
            },
            _ => {}
        }
    }
}

/// allCarsPass is spontaneous: it may or may not be applied when enabled,
/// and never blocks time advance.
fn approach_spontaneous_rules(c: &Configuration, out: &mut Successors) {
    for (oid, payload) in c.objects() {
        if let (Oid::Approach(cn, dir), Payload::Approach(a)) = (oid, payload) {
            if !a.cars_present {
                continue;
            }
            let cl = Oid::CarLight(cn.clone(), *dir);
            let green = c
                .car_light(&cl)
                .map_or(false, |s| s.lights.is(Color::Green));
            if green {
                let mut next = c.clone();
                update_approach(&mut next, oid, |a| a.cars_present = false);
                out.push(("allCarsPass", next));
            }
        }
    }
}

/// Rules that consume message `idx`. Every message kind is consumable in
/// every receiver state (absorption rules keep the system input-enabled).
fn message_rules(c: &Configuration, p: &Params, idx: usize, msg: &Message, out: &mut Successors) {
    match msg {
        Message::PedsWaiting(cl) => {
            let Some(s) = c.car_light(cl) else { return };
            match s.state {
                ClState::Green if s.timer >= Finite(p.walk_time) => {
                    let mut next = consume(c, idx);
                    next.add_message(Message::PedGo(cl.ped_of(), s.timer));
                    out.push(("buttonPressedTurnOn", next));
                }
                st if st.is_normal() || st == ClState::Emergency => {
                    let mut next = consume(c, idx);
                    update_car(&mut next, cl, |s| s.ped_waiting = true);
                    out.push(("rememberButtonPressed", next));
                }
                _ => out.push(("ignoreInError", consume(c, idx))),
            }
        }
        Message::ContinueGreen(cl) => {
            let Some(s) = c.car_light(cl) else { return };
            if s.state.is_normal() {
                let mut next = consume(c, idx);
                let round = s.green_time + s.red_time + p.yellow_time;
                let new_timer = s.timer + round;
                let was_ped = s.ped_waiting;
                update_car(&mut next, cl, |s| {
                    s.timer = new_timer;
                    s.ped_waiting = false;
                });
                if was_ped {
                    next.add_message(Message::PedGo(cl.ped_of(), new_timer));
                }
                out.push(("continueGreen", next));
            } else {
                out.push(("ignoreContinueGreen", consume(c, idx)));
            }
        }
        Message::EmergencyDev(dev) => match dev {
            Oid::CarLight(..) => {
                let Some(s) = c.car_light(dev) else { return };
                if s.state.is_normal() {
                    let mut next = consume(c, idx);
                    let timer = match s.state {
                        ClState::Green => Finite(p.yellow_time),
                        ClState::Yellow => s.timer,
                        _ => Infinity,
                    };
                    let lights = match s.state {
                        ClState::Green | ClState::Yellow => ColorSet::single(Color::Yellow),
                        _ => ColorSet::single(Color::Red),
                    };
                    update_car(&mut next, dev, |s| {
                        s.state = ClState::Emergency;
                        s.timer = timer;
                        s.lights = lights;
                    });
                    next.add_message(Message::EmergencyDev(dev.ped_of()));
                    out.push(("newEmergency", next));
                } else {
                    out.push(("ignoreEmergency", consume(c, idx)));
                }
            }
            Oid::PedLight(..) => {
                let Some(s) = c.ped_light(dev) else { return };
                if s.mode == PlMode::Normal {
                    let mut next = consume(c, idx);
                    update_ped(&mut next, dev, |s| {
                        s.mode = PlMode::Emergency;
                        s.color = Color::Red;
                        s.timer = Infinity;
                    });
                    out.push(("pedEmergency", next));
                } else {
                    out.push(("ignoreEmergency", consume(c, idx)));
                }
            }
            _ => {}
        },
        Message::EmergencyOverDev(dev) => match dev {
            Oid::CarLight(..) => {
                let Some(s) = c.car_light(dev) else { return };
                if s.state != ClState::Emergency {
                    out.push(("ignoreEmergencyOver", consume(c, idx)));
                } else if !s.default_starter {
                    // The restart instruction arrives separately via reStartRed/Green.
                    out.push(("emergencyOverOther", consume(c, idx)));
                } else {
                    let cars = c.cars_present_at(dev);
                    if cars || s.ped_waiting {
                        let mut next = consume(c, idx);
                        let dur = Finite(p.green_timer(s));
                        let was_ped = s.ped_waiting;
                        update_car(&mut next, dev, |s| {
                            s.state = ClState::Green;
                            s.lights = ColorSet::single(Color::Green);
                            s.timer = dur;
                            s.ped_waiting = false;
                        });
                        next.add_message(Message::ReStartRed(dev.opposite()));
                        if was_ped {
                            next.add_message(Message::ResumeGreen(dev.ped_of(), dur));
                        } else {
                            next.add_message(Message::ResumeRed(dev.ped_of()));
                        }
                        out.push(("emergencyOverMainDirectionStart", next));
                    } else {
                        let mut next = consume(c, idx);
                        update_car(&mut next, dev, |s| {
                            s.state = ClState::Red;
                            s.lights = ColorSet::single(Color::Red);
                            s.timer = p.restart_red_timer(s);
                        });
                        next.add_message(Message::ReStartGreen(dev.opposite()));
                        next.add_message(Message::ResumeRed(dev.ped_of()));
                        out.push(("emergencyOverMainDirectionYield", next));
                    }
                }
            }
            _ => {}
        },
        Message::ReStartRed(cl) => {
            let Some(s) = c.car_light(cl) else { return };
            if s.state == ClState::Emergency {
                let mut next = consume(c, idx);
                update_car(&mut next, cl, |s| {
                    s.state = ClState::Red;
                    s.lights = ColorSet::single(Color::Red);
                    s.timer = p.restart_red_timer(s);
                });
                next.add_message(Message::ResumeRed(cl.ped_of()));
                out.push(("reStartRed", next));
            } else {
                out.push(("ignoreReStart", consume(c, idx)));
            }
        }
        Message::ReStartGreen(cl) => {
            let Some(s) = c.car_light(cl) else { return };
            if s.state == ClState::Emergency {
                let mut next = consume(c, idx);
                let dur = Finite(p.green_timer(s));
                let was_ped = s.ped_waiting;
                update_car(&mut next, cl, |s| {
                    s.state = ClState::Green;
                    s.lights = ColorSet::single(Color::Green);
                    s.timer = dur;
                    s.ped_waiting = false;
                });
                if was_ped {
                    next.add_message(Message::ResumeGreen(cl.ped_of(), dur));
                } else {
                    next.add_message(Message::ResumeRed(cl.ped_of()));
                }
                out.push(("reStartGreen", next));
            } else {
                out.push(("ignoreReStart", consume(c, idx)));
            }
        }
        Message::PedGo(pl, dur) => {
            let Some(s) = c.ped_light(pl) else { return };
            if s.mode == PlMode::Normal {
                let mut next = consume(c, idx);
                let timer = dur.monus(Finite(p.walk_time));
                update_ped(&mut next, pl, |s| {
                    s.timer = timer;
                    s.color = Color::Green;
                    s.button_lit = false;
                });
                out.push(("turnGreen", next));
            } else {
                out.push(("ignorePedGo", consume(c, idx)));
            }
        }
        Message::ResumeRed(pl) => {
            let Some(s) = c.ped_light(pl) else { return };
            if s.mode == PlMode::Emergency {
                let mut next = consume(c, idx);
                update_ped(&mut next, pl, |s| {
                    s.mode = PlMode::Normal;
                    s.color = Color::Red;
                    s.timer = Infinity;
                });
                out.push(("pedResumeRed", next));
            } else {
                out.push(("ignoreResume", consume(c, idx)));
            }
        }
        Message::ResumeGreen(pl, dur) => {
            let Some(s) = c.ped_light(pl) else { return };
            if s.mode == PlMode::Emergency {
                let mut next = consume(c, idx);
                let timer = dur.monus(Finite(p.walk_time));
                update_ped(&mut next, pl, |s| {
                    s.mode = PlMode::Normal;
                    s.color = Color::Green;
                    s.timer = timer;
                    s.button_lit = false;
                });
                out.push(("pedResumeGreen", next));
            } else {
                out.push(("ignoreResume", consume(c, idx)));
            }
        }
        Message::NewPed(stop) => {
            let pl = match stop {
                Oid::PedStop(cn, dir) => Oid::PedLight(cn.clone(), *dir),
                _ => return,
            };
            let Some(s) = c.ped_light(&pl) else { return };
            if s.mode.ignores_messages() {
                out.push(("ignoreInError", consume(c, idx)));
            } else if !s.button_lit && s.color != Color::Green {
                let mut next = consume(c, idx);
                update_ped(&mut next, &pl, |s| s.button_lit = true);
                next.add_message(Message::PedsWaiting(pl.car_of()));
                out.push(("newPedestrian1", next));
            } else {
                out.push(("newPedestrian2", consume(c, idx)));
            }
        }
        Message::NewCars(app) => {
            if c.approach(app).is_none() {
                return;
            }
            let mut next = consume(c, idx);
            update_approach(&mut next, app, |a| a.cars_present = true);
            out.push(("newCars", next));
        }
        Message::Error { to, failed } => failure_message(c, p, idx, to, failed, false, out),
        Message::Repaired { to, fixed } => failure_message(c, p, idx, to, fixed, true, out),
        Message::EmergencyXing(_) | Message::EmergencyOverXing(_) => {
            // Removed by normalization; never present when rules run.
        }
    }
}

/// Failure bookkeeping shared by car and pedestrian lights: count failed
/// devices up and down, and fan a self-addressed event out to the three
/// sibling controllers.
fn failure_message(
    c: &Configuration,
    p: &Params,
    idx: usize,
    to: &Oid,
    device: &Oid,
    is_repair: bool,
    out: &mut Successors,
) {
    let notify = |next: &mut Configuration| {
        if to == device {
            for sib in to.siblings() {
                let msg = if is_repair {
                    Message::Repaired { to: sib.clone(), fixed: device.clone() }
                } else {
                    Message::Error { to: sib.clone(), failed: device.clone() }
                };
                next.add_message(msg);
            }
        }
    };
    match to {
        Oid::CarLight(..) => {
            let Some(s) = c.car_light(to) else { return };
            if is_repair {
                match s.state {
                    ClState::Error(n) if n >= 2 => {
                        let mut next = consume(c, idx);
                        update_car(&mut next, to, |s| s.state = ClState::Error(n - 1));
                        notify(&mut next);
                        out.push(("repairDecrement", next));
                    }
                    ClState::Error(1) => {
                        let mut next = consume(c, idx);
                        let starter = s.default_starter;
                        update_car(&mut next, to, |s| {
                            s.state = ClState::ErrorRecovery;
                            s.timer = Finite(p.delta);
                            s.lights = ColorSet::single(if starter { Color::Green } else { Color::Red });
                        });
                        notify(&mut next);
                        out.push(("lastDeviceFixed", next));
                    }
                    _ => out.push(("ignoreRepaired", consume(c, idx))),
                }
            } else {
                match s.state {
                    ClState::Error(n) => {
                        let mut next = consume(c, idx);
                        update_car(&mut next, to, |s| s.state = ClState::Error(n + 1));
                        notify(&mut next);
                        out.push(("somethingBrokenMore", next));
                    }
                    _ => {
                        let mut next = consume(c, idx);
                        let starter = s.default_starter;
                        update_car(&mut next, to, |s| {
                            s.state = ClState::Error(1);
                            s.timer = Infinity;
                            s.lights = ColorSet::single(if starter {
                                Color::BlinkingYellow
                            } else {
                                Color::BlinkingRed
                            });
                        });
                        notify(&mut next);
                        out.push(("somethingBroken1", next));
                    }
                }
            }
        }
        Oid::PedLight(..) => {
            let Some(s) = c.ped_light(to) else { return };
            if is_repair {
                match s.mode {
                    PlMode::Error(n) if n >= 2 => {
                        let mut next = consume(c, idx);
                        update_ped(&mut next, to, |s| s.mode = PlMode::Error(n - 1));
                        notify(&mut next);
                        out.push(("pedRepairDecrement", next));
                    }
                    PlMode::Error(1) => {
                        let mut next = consume(c, idx);
                        update_ped(&mut next, to, |s| {
                            s.mode = PlMode::ErrorRecovery;
                            s.timer = Finite(p.delta);
                            s.color = Color::Off;
                        });
                        notify(&mut next);
                        out.push(("pedLastFixed", next));
                    }
                    _ => out.push(("ignoreRepaired", consume(c, idx))),
                }
            } else {
                match s.mode {
                    PlMode::Error(n) => {
                        let mut next = consume(c, idx);
                        update_ped(&mut next, to, |s| s.mode = PlMode::Error(n + 1));
                        notify(&mut next);
                        out.push(("pedBrokenMore", next));
                    }
                    _ => {
                        let mut next = consume(c, idx);
                        update_ped(&mut next, to, |s| {
                            s.mode = PlMode::Error(1);
                            s.color = Color::Off;
                            s.timer = Infinity;
                            s.button_lit = false;
                        });
                        notify(&mut next);
                        out.push(("pedBroken1", next));
                    }
                }
            }
        }
        _ => {}
    }
}
