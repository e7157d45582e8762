//! Parametric initial-state construction for one or more intersections,
//! plus a line-oriented `key = value` scenario file reader.

use thiserror::Error;

use crate::devices::{
    ApproachState, CarLightState, ClState, Color, ColorSet, Params, PedLightState, PlMode, Regime,
};
use crate::environments::{EmergencyEnvState, FailurePhase, FailureEnvState, PeriodicEnvState};
use crate::kernel::{Configuration, Direction, Finite, Infinity, Message, Oid, Payload};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("green time {got} is below the minimum {min}")]
    GreenTimeTooShort { got: u64, min: u64 },
    #[error("red time {got} is below the minimum {min}")]
    RedTimeTooShort { got: u64, min: u64 },
    #[error("fault count {0} out of range 0..=2")]
    FaultCountOutOfRange(u32),
    #[error("{0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("scenario file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Everything needed to build an initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioSpec {
    pub xing: String,
    pub green_time_ns: u64,
    pub red_time_ns: u64,
    /// Period between emergency signal decisions; 0 disables emergencies.
    pub emergency_period: u64,
    pub car_faults: u32,
    pub ped_faults: u32,
    pub fail_frequency: u64,
    pub fail_separation: u64,
    pub params: Params,
    pub extra_intersections: Vec<(String, u64, u64)>,
}

impl ScenarioSpec {
    /// A scenario with the given core parameters and default device params.
    pub fn new(
        xing: &str,
        green_time: u64,
        red_time: u64,
        emergency_period: u64,
        car_faults: u32,
        ped_faults: u32,
        fail_frequency: u64,
        fail_separation: u64,
    ) -> Self {
        ScenarioSpec {
            xing: xing.to_owned(),
            green_time_ns: green_time,
            red_time_ns: red_time,
            emergency_period,
            car_faults,
            ped_faults,
            fail_frequency,
            fail_separation,
            params: Params::default(),
            extra_intersections: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let p = &self.params;
        for (gt, rt) in std::iter::once((self.green_time_ns, self.red_time_ns))
            .chain(self.extra_intersections.iter().map(|(_, g, r)| (*g, *r)))
        {
            if gt < p.min_green_time() {
                return Err(ScenarioError::GreenTimeTooShort { got: gt, min: p.min_green_time() });
            }
            if rt < p.min_red_time() {
                return Err(ScenarioError::RedTimeTooShort { got: rt, min: p.min_red_time() });
            }
        }
        if self.car_faults > 2 {
            return Err(ScenarioError::FaultCountOutOfRange(self.car_faults));
        }
        if self.ped_faults > 2 {
            return Err(ScenarioError::FaultCountOutOfRange(self.ped_faults));
        }
        if self.fail_frequency == 0 {
            return Err(ScenarioError::ZeroParameter("fail_frequency"));
        }
        if self.fail_separation == 0 {
            return Err(ScenarioError::ZeroParameter("fail_separation"));
        }
        Ok(())
    }
}

/// The six device objects of one intersection: the prioritized car light
/// starts green with a full green timer; the opposite light's red/green
/// times are derived so the two phases interlock.
pub fn build_lights(
    xing: &str,
    prioritized: Direction,
    green_time: u64,
    red_time: u64,
    p: &Params,
) -> Result<Configuration, ScenarioError> {
    if green_time < p.min_green_time() {
        return Err(ScenarioError::GreenTimeTooShort { got: green_time, min: p.min_green_time() });
    }
    if red_time < p.min_red_time() {
        return Err(ScenarioError::RedTimeTooShort { got: red_time, min: p.min_red_time() });
    }
    let other = prioritized.opposite();
    let mut c = Configuration::new();
    c.insert_object(
        Oid::car_light(xing, prioritized),
        Payload::CarLight(CarLightState {
            lights: ColorSet::single(Color::Green),
            timer: Finite(green_time),
            state: ClState::Green,
            red_time,
            green_time,
            ped_waiting: false,
            default_starter: true,
        }),
    );
    c.insert_object(
        Oid::car_light(xing, other),
        Payload::CarLight(CarLightState {
            lights: ColorSet::single(Color::Red),
            timer: Finite(green_time).monus(Finite(p.delta)),
            state: ClState::Red,
            red_time: green_time + p.yellow_time + p.safety_margin + p.safety_margin,
            green_time: red_time - (p.yellow_time + p.safety_margin + p.safety_margin),
            ped_waiting: false,
            default_starter: false,
        }),
    );
    for dir in [Direction::NS, Direction::EW] {
        c.insert_object(
            Oid::ped_light(xing, dir),
            Payload::PedLight(PedLightState {
                timer: Infinity,
                color: Color::Red,
                button_lit: false,
                mode: PlMode::Normal,
            }),
        );
        c.insert_object(
            Oid::approach(xing, dir),
            Payload::Approach(ApproachState { cars_present: false }),
        );
    }
    Ok(c)
}

/// The car/pedestrian generator for one intersection, deciding every
/// `frequency` time units, starting immediately.
pub fn cars_and_peds(xing: &str, frequency: u64) -> (Oid, Payload) {
    (
        Oid::EnvCarsPeds(xing.to_owned()),
        Payload::PeriodicEnv(PeriodicEnvState {
            frequency,
            time_to_next_events: Finite(0),
            possible_events: vec![
                Message::NewCars(Oid::approach(xing, Direction::NS)),
                Message::NewCars(Oid::approach(xing, Direction::EW)),
                Message::NewPed(Oid::ped_stop(xing, Direction::NS)),
                Message::NewPed(Oid::ped_stop(xing, Direction::EW)),
            ],
        }),
    )
}

fn failure_env(device: Oid, frequency: u64, min_separation: u64) -> (Oid, Payload) {
    (
        Oid::EnvFailure(Box::new(device.clone())),
        Payload::FailureEnv(FailureEnvState {
            device,
            frequency,
            min_separation,
            phase: FailurePhase::Up(Finite(0)),
        }),
    )
}

/// The environment objects of a scenario: the car/pedestrian generator, an
/// emergency generator when the period is nonzero, and one failure
/// generator per potentially faulty device.
pub fn build_env(spec: &ScenarioSpec) -> Configuration {
    let mut c = Configuration::new();
    for xing in std::iter::once(spec.xing.as_str())
        .chain(spec.extra_intersections.iter().map(|(n, _, _)| n.as_str()))
    {
        let (oid, payload) = cars_and_peds(xing, 1);
        c.insert_object(oid, payload);
        if spec.emergency_period != 0 {
            c.insert_object(
                Oid::EnvEmergency(xing.to_owned()),
                Payload::EmergencyEnv(EmergencyEnvState {
                    frequency: spec.emergency_period,
                    time_to_next_events: Finite(0),
                    emergency_on: false,
                    xing: xing.to_owned(),
                }),
            );
        }
        // Faulty car lights: NS first, then both. Faulty ped lights: EW first.
        let car_targets: &[Direction] = match spec.car_faults {
            0 => &[],
            1 => &[Direction::NS],
            _ => &[Direction::NS, Direction::EW],
        };
        for dir in car_targets {
            let (oid, payload) = failure_env(
                Oid::car_light(xing, *dir),
                spec.fail_frequency,
                spec.fail_separation,
            );
            c.insert_object(oid, payload);
        }
        let ped_targets: &[Direction] = match spec.ped_faults {
            0 => &[],
            1 => &[Direction::EW],
            _ => &[Direction::NS, Direction::EW],
        };
        for dir in ped_targets {
            let (oid, payload) = failure_env(
                Oid::ped_light(xing, *dir),
                spec.fail_frequency,
                spec.fail_separation,
            );
            c.insert_object(oid, payload);
        }
    }
    c
}

/// The full initial state: lights (NS prioritized) for every intersection,
/// plus the environments, normalized.
pub fn build_init(spec: &ScenarioSpec) -> Result<Configuration, ScenarioError> {
    spec.validate()?;
    let mut c = build_lights(
        &spec.xing,
        Direction::NS,
        spec.green_time_ns,
        spec.red_time_ns,
        &spec.params,
    )?;
    for (name, gt, rt) in &spec.extra_intersections {
        let extra = build_lights(name, Direction::NS, *gt, *rt, &spec.params)?;
        for (oid, payload) in extra.objects() {
            c.insert_object(oid.clone(), payload.clone());
        }
    }
    for (oid, payload) in build_env(spec).objects() {
        c.insert_object(oid.clone(), payload.clone());
    }
    c.normalize();
    Ok(c)
}

/// Shorthand mirroring the eight-argument initial-state constructor.
pub fn init(
    xing: &str,
    green_time: u64,
    red_time: u64,
    emergency_period: u64,
    car_faults: u32,
    ped_faults: u32,
    fail_frequency: u64,
    fail_separation: u64,
) -> Result<Configuration, ScenarioError> {
    build_init(&ScenarioSpec::new(
        xing,
        green_time,
        red_time,
        emergency_period,
        car_faults,
        ped_faults,
        fail_frequency,
        fail_separation,
    ))
}

/// Parse a scenario file: one `key = value` per line, `#` comments,
/// repeated `intersection = name,green,red` lines for extra intersections.
/// Unknown keys are errors.
pub fn parse_scenario(text: &str) -> Result<ScenarioSpec, ScenarioError> {
    let mut spec = ScenarioSpec::new("Spitsbergen", 5, 6, 0, 0, 0, 1, 1);
    let err = |line: usize, msg: String| ScenarioError::Parse { line, msg };
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(line_no, format!("expected `key = value`, got `{line}`")))?;
        let key = key.trim();
        let value = value.trim();
        let parse_u64 = |v: &str| {
            v.parse::<u64>()
                .map_err(|e| err(line_no, format!("invalid number `{v}`: {e}")))
        };
        match key {
            "xing" => spec.xing = value.to_owned(),
            "green_time" => spec.green_time_ns = parse_u64(value)?,
            "red_time" => spec.red_time_ns = parse_u64(value)?,
            "emergency_period" => spec.emergency_period = parse_u64(value)?,
            "car_faults" => spec.car_faults = parse_u64(value)? as u32,
            "ped_faults" => spec.ped_faults = parse_u64(value)? as u32,
            "fail_frequency" => spec.fail_frequency = parse_u64(value)?,
            "fail_separation" => spec.fail_separation = parse_u64(value)?,
            "regime" => {
                spec.params.regime = match value {
                    "american" => Regime::American,
                    "european" => Regime::European,
                    other => {
                        return Err(err(line_no, format!("unknown regime `{other}`")));
                    }
                }
            }
            "intersection" => {
                let parts: Vec<&str> = value.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(err(line_no, "expected `intersection = name,green,red`".into()));
                }
                let gt = parse_u64(parts[1])?;
                let rt = parse_u64(parts[2])?;
                spec.extra_intersections.push((parts[0].to_owned(), gt, rt));
            }
            other => return Err(err(line_no, format!("unknown key `{other}`"))),
        }
    }
    Ok(spec)
}
