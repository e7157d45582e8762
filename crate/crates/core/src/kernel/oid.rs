//! Object identifiers for devices and environment objects.

use std::fmt;

/// One of the two axis directions of an intersection. A single controller
/// drives both ways of an axis, so two directions suffice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    NS,
    EW,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::NS => Direction::EW,
            Direction::EW => Direction::NS,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::NS => write!(f, "NS"),
            Direction::EW => write!(f, "EW"),
        }
    }
}

/// Identifier of an object in a configuration. Device names carry the
/// intersection name so multiple independent intersections can coexist.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Oid {
    CarLight(String, Direction),
    PedLight(String, Direction),
    Approach(String, Direction),
    PedStop(String, Direction),
    EnvCarsPeds(String),
    EnvEmergency(String),
    EnvFailure(Box<Oid>),
}

impl Oid {
    pub fn car_light(xing: &str, dir: Direction) -> Oid {
        Oid::CarLight(xing.to_owned(), dir)
    }

    pub fn ped_light(xing: &str, dir: Direction) -> Oid {
        Oid::PedLight(xing.to_owned(), dir)
    }

    pub fn approach(xing: &str, dir: Direction) -> Oid {
        Oid::Approach(xing.to_owned(), dir)
    }

    pub fn ped_stop(xing: &str, dir: Direction) -> Oid {
        Oid::PedStop(xing.to_owned(), dir)
    }

    /// The pedestrian light paired with a car light.
    pub fn ped_of(&self) -> Oid {
        match self {
            Oid::CarLight(c, d) => Oid::PedLight(c.clone(), *d),
            _ => panic!("ped_of: not a car light: {self}"),
        }
    }

    /// The car light paired with a pedestrian light.
    pub fn car_of(&self) -> Oid {
        match self {
            Oid::PedLight(c, d) => Oid::CarLight(c.clone(), *d),
            _ => panic!("car_of: not a pedestrian light: {self}"),
        }
    }

    /// The same kind of device in the opposite direction.
    pub fn opposite(&self) -> Oid {
        match self {
            Oid::CarLight(c, d) => Oid::CarLight(c.clone(), d.opposite()),
            Oid::PedLight(c, d) => Oid::PedLight(c.clone(), d.opposite()),
            Oid::Approach(c, d) => Oid::Approach(c.clone(), d.opposite()),
            Oid::PedStop(c, d) => Oid::PedStop(c.clone(), d.opposite()),
            _ => panic!("opposite: not a directional device: {self}"),
        }
    }

    /// The intersection the object belongs to.
    pub fn xing(&self) -> &str {
        match self {
            Oid::CarLight(c, _)
            | Oid::PedLight(c, _)
            | Oid::Approach(c, _)
            | Oid::PedStop(c, _)
            | Oid::EnvCarsPeds(c)
            | Oid::EnvEmergency(c) => c,
            Oid::EnvFailure(d) => d.xing(),
        }
    }

    /// The three other controllers of the same intersection, for a car or
    /// pedestrian light. A failed device notifies exactly these.
    pub fn siblings(&self) -> [Oid; 3] {
        match self {
            Oid::CarLight(..) => [self.opposite(), self.ped_of(), self.opposite().ped_of()],
            Oid::PedLight(..) => [self.car_of(), self.opposite(), self.opposite().car_of()],
            _ => panic!("siblings: not a light controller: {self}"),
        }
    }
}

impl fmt::Display for Oid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Oid::CarLight(c, d) => write!(f, "carLight({c},{d})"),
            Oid::PedLight(c, d) => write!(f, "pedLight({c},{d})"),
            Oid::Approach(c, d) => write!(f, "approach({c},{d})"),
            Oid::PedStop(c, d) => write!(f, "pedStop({c},{d})"),
            Oid::EnvCarsPeds(c) => write!(f, "carsAndPeds({c})"),
            Oid::EnvEmergency(c) => write!(f, "emergencyEnv({c})"),
            Oid::EnvFailure(d) => write!(f, "errors({d})"),
        }
    }
}
