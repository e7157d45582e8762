//! The catalog of named intersection properties P1 through P5.

use std::str::FromStr;

use super::ltl::{Ltl, LtlFormula};
use super::props::{AtomicProp, PropKind};
use crate::kernel::Direction;

/// A named property from the catalog. `P5` carries its time bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogProperty {
    P1,
    P2,
    P3,
    P4,
    P4x,
    P5(u64),
}

impl FromStr for CatalogProperty {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "P1" => Ok(CatalogProperty::P1),
            "P2" => Ok(CatalogProperty::P2),
            "P3" => Ok(CatalogProperty::P3),
            "P4" => Ok(CatalogProperty::P4),
            "P4x" => Ok(CatalogProperty::P4x),
            other => {
                // P5 or P5(tau)
                if let Some(rest) = other.strip_prefix("P5") {
                    let tau = if rest.is_empty() {
                        15
                    } else {
                        rest.trim_start_matches('(')
                            .trim_end_matches(')')
                            .parse::<u64>()
                            .map_err(|e| format!("bad P5 bound: {e}"))?
                    };
                    Ok(CatalogProperty::P5(tau))
                } else {
                    Err(format!("unknown property `{other}`"))
                }
            }
        }
    }
}

fn prop(xing: &str, kind: PropKind) -> LtlFormula {
    Ltl::Prop(AtomicProp::new(xing, kind))
}

/// P1 for a single direction: a red pedestrian light with an unlit button
/// stays red at least until a pedestrian arrives.
fn p1_dir(xing: &str, d: Direction) -> LtlFormula {
    Ltl::leadsto(
        Ltl::and(
            prop(xing, PropKind::PedLightRed(d)),
            Ltl::not(prop(xing, PropKind::ButtonPushed(d))),
        ),
        Ltl::weak_until(prop(xing, PropKind::PedLightRed(d)), prop(xing, PropKind::PedArriving(d))),
    )
}

/// P1: the single-direction guarantee, conjoined over both directions.
pub fn p1(xing: &str) -> LtlFormula {
    Ltl::and(p1_dir(xing, Direction::EW), p1_dir(xing, Direction::NS))
}

/// P2: a red prioritized light with no pushed button and no waiting cars
/// stays red until a pedestrian or a car actually arrives.
pub fn p2(xing: &str) -> LtlFormula {
    Ltl::leadsto(
        Ltl::and(
            prop(xing, PropKind::CarLightRed(Direction::NS)),
            Ltl::and(
                Ltl::not(prop(xing, PropKind::ButtonPushed(Direction::NS))),
                Ltl::not(prop(xing, PropKind::CarWaiting(Direction::NS))),
            ),
        ),
        Ltl::weak_until(
            prop(xing, PropKind::CarLightRed(Direction::NS)),
            Ltl::or(
                prop(xing, PropKind::PedArriving(Direction::NS)),
                prop(xing, PropKind::CarArriving(Direction::NS)),
            ),
        ),
    )
}

/// P3: under fair repairs and recurring traffic, the prioritized light is
/// green infinitely often.
pub fn p3(xing: &str) -> LtlFormula {
    Ltl::implies(
        Ltl::always(Ltl::implies(
            prop(xing, PropKind::Failure),
            Ltl::eventually(prop(xing, PropKind::Repair)),
        )),
        Ltl::implies(
            Ltl::always(Ltl::eventually(prop(xing, PropKind::CarArriving(Direction::NS)))),
            Ltl::always(Ltl::eventually(prop(xing, PropKind::CarLightGreen(Direction::NS)))),
        ),
    )
}

/// P4: never a walk signal in one direction while cars may drive across it.
pub fn p4(xing: &str) -> LtlFormula {
    Ltl::always(Ltl::and(
        Ltl::not(Ltl::and(
            prop(xing, PropKind::Walking(Direction::NS)),
            prop(xing, PropKind::Driving(Direction::EW)),
        )),
        Ltl::not(Ltl::and(
            prop(xing, PropKind::Walking(Direction::EW)),
            prop(xing, PropKind::Driving(Direction::NS)),
        )),
    ))
}

/// P4x: cars never legally drive in both directions at once.
pub fn p4x(xing: &str) -> LtlFormula {
    Ltl::always(Ltl::not(Ltl::and(
        prop(xing, PropKind::Driving(Direction::NS)),
        prop(xing, PropKind::Driving(Direction::EW)),
    )))
}

/// The triggering and target propositions of P5: an arriving pedestrian on
/// the prioritized axis gets a walk signal within the bound.
pub fn p5_props(xing: &str) -> (AtomicProp, AtomicProp) {
    (
        AtomicProp::new(xing, PropKind::PedArriving(Direction::NS)),
        AtomicProp::new(xing, PropKind::Walking(Direction::NS)),
    )
}
