//! LTL formula syntax, negation normal form, and the text parser.
//!
//! Formulas are generic over the atom type: the property catalog uses
//! [`AtomicProp`](super::props::AtomicProp) atoms, while the automaton
//! layer works on formulas over interned proposition indices.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::props::{AtomicProp, PropKind};
use crate::kernel::Direction;

/// An LTL formula over atoms of type `P`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ltl<P> {
    True,
    False,
    Prop(P),
    Not(Box<Ltl<P>>),
    And(Box<Ltl<P>>, Box<Ltl<P>>),
    Or(Box<Ltl<P>>, Box<Ltl<P>>),
    Implies(Box<Ltl<P>>, Box<Ltl<P>>),
    Always(Box<Ltl<P>>),
    Eventually(Box<Ltl<P>>),
    Until(Box<Ltl<P>>, Box<Ltl<P>>),
    /// `p W q`: p holds until q holds, or p holds forever.
    WeakUntil(Box<Ltl<P>>, Box<Ltl<P>>),
    /// `p => q`, an abbreviation for `[] (p -> q)`.
    Leadsto(Box<Ltl<P>>, Box<Ltl<P>>),
}

/// The catalog's formula type.
pub type LtlFormula = Ltl<AtomicProp>;

impl<P: Clone + Ord> Ltl<P> {
    pub fn not(f: Ltl<P>) -> Ltl<P> {
        Ltl::Not(Box::new(f))
    }

    pub fn and(a: Ltl<P>, b: Ltl<P>) -> Ltl<P> {
        Ltl::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Ltl<P>, b: Ltl<P>) -> Ltl<P> {
        Ltl::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Ltl<P>, b: Ltl<P>) -> Ltl<P> {
        Ltl::Implies(Box::new(a), Box::new(b))
    }

    pub fn always(f: Ltl<P>) -> Ltl<P> {
        Ltl::Always(Box::new(f))
    }

    pub fn eventually(f: Ltl<P>) -> Ltl<P> {
        Ltl::Eventually(Box::new(f))
    }

    pub fn until(a: Ltl<P>, b: Ltl<P>) -> Ltl<P> {
        Ltl::Until(Box::new(a), Box::new(b))
    }

    pub fn weak_until(a: Ltl<P>, b: Ltl<P>) -> Ltl<P> {
        Ltl::WeakUntil(Box::new(a), Box::new(b))
    }

    pub fn leadsto(a: Ltl<P>, b: Ltl<P>) -> Ltl<P> {
        Ltl::Leadsto(Box::new(a), Box::new(b))
    }

    /// The atoms of the formula, in first-occurrence order, deduplicated.
    pub fn atoms(&self) -> Vec<P> {
        let mut seen = BTreeMap::new();
        let mut out = Vec::new();
        self.collect_atoms(&mut seen, &mut out);
        out
    }

    fn collect_atoms(&self, seen: &mut BTreeMap<P, ()>, out: &mut Vec<P>) {
        match self {
            Ltl::True | Ltl::False => {}
            Ltl::Prop(p) => {
                if seen.insert(p.clone(), ()).is_none() {
                    out.push(p.clone());
                }
            }
            Ltl::Not(a) | Ltl::Always(a) | Ltl::Eventually(a) => a.collect_atoms(seen, out),
            Ltl::And(a, b)
            | Ltl::Or(a, b)
            | Ltl::Implies(a, b)
            | Ltl::Until(a, b)
            | Ltl::WeakUntil(a, b)
            | Ltl::Leadsto(a, b) => {
                a.collect_atoms(seen, out);
                b.collect_atoms(seen, out);
            }
        }
    }

    /// Replace atoms by their index in `atoms()`.
    pub fn interned(&self) -> (Ltl<u32>, Vec<P>) {
        let atoms = self.atoms();
        let index: BTreeMap<&P, u32> =
            atoms.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        (self.map_atoms(&|p| index[p]), atoms)
    }

    pub fn map_atoms<Q>(&self, f: &impl Fn(&P) -> Q) -> Ltl<Q> {
        match self {
            Ltl::True => Ltl::True,
            Ltl::False => Ltl::False,
            Ltl::Prop(p) => Ltl::Prop(f(p)),
            Ltl::Not(a) => Ltl::Not(Box::new(a.map_atoms(f))),
            Ltl::And(a, b) => Ltl::And(Box::new(a.map_atoms(f)), Box::new(b.map_atoms(f))),
            Ltl::Or(a, b) => Ltl::Or(Box::new(a.map_atoms(f)), Box::new(b.map_atoms(f))),
            Ltl::Implies(a, b) => Ltl::Implies(Box::new(a.map_atoms(f)), Box::new(b.map_atoms(f))),
            Ltl::Always(a) => Ltl::Always(Box::new(a.map_atoms(f))),
            Ltl::Eventually(a) => Ltl::Eventually(Box::new(a.map_atoms(f))),
            Ltl::Until(a, b) => Ltl::Until(Box::new(a.map_atoms(f)), Box::new(b.map_atoms(f))),
            Ltl::WeakUntil(a, b) => {
                Ltl::WeakUntil(Box::new(a.map_atoms(f)), Box::new(b.map_atoms(f)))
            }
            Ltl::Leadsto(a, b) => Ltl::Leadsto(Box::new(a.map_atoms(f)), Box::new(b.map_atoms(f))),
        }
    }
}

/// Negation normal form over literals, with weak-until and the derived
/// operators rewritten into until/release.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nnf {
    True,
    False,
    Lit { prop: u32, positive: bool },
    And(Box<Nnf>, Box<Nnf>),
    Or(Box<Nnf>, Box<Nnf>),
    Next(Box<Nnf>),
    Until(Box<Nnf>, Box<Nnf>),
    Release(Box<Nnf>, Box<Nnf>),
}

impl Ltl<u32> {
    /// Negation normal form; `positive == false` converts the negation.
    pub fn nnf(&self, positive: bool) -> Nnf {
        match self {
            Ltl::True => {
                if positive {
                    Nnf::True
                } else {
                    Nnf::False
                }
            }
            Ltl::False => {
                if positive {
                    Nnf::False
                } else {
                    Nnf::True
                }
            }
            Ltl::Prop(p) => Nnf::Lit { prop: *p, positive },
            Ltl::Not(a) => a.nnf(!positive),
            Ltl::And(a, b) => {
                if positive {
                    Nnf::And(Box::new(a.nnf(true)), Box::new(b.nnf(true)))
                } else {
                    Nnf::Or(Box::new(a.nnf(false)), Box::new(b.nnf(false)))
                }
            }
            Ltl::Or(a, b) => {
                if positive {
                    Nnf::Or(Box::new(a.nnf(true)), Box::new(b.nnf(true)))
                } else {
                    Nnf::And(Box::new(a.nnf(false)), Box::new(b.nnf(false)))
                }
            }
            Ltl::Implies(a, b) => Ltl::or(Ltl::not((**a).clone()), (**b).clone()).nnf(positive),
            Ltl::Always(a) => {
                if positive {
                    Nnf::Release(Box::new(Nnf::False), Box::new(a.nnf(true)))
                } else {
                    Nnf::Until(Box::new(Nnf::True), Box::new(a.nnf(false)))
                }
            }
            Ltl::Eventually(a) => {
                if positive {
                    Nnf::Until(Box::new(Nnf::True), Box::new(a.nnf(true)))
                } else {
                    Nnf::Release(Box::new(Nnf::False), Box::new(a.nnf(false)))
                }
            }
            Ltl::Until(a, b) => {
                if positive {
                    Nnf::Until(Box::new(a.nnf(true)), Box::new(b.nnf(true)))
                } else {
                    Nnf::Release(Box::new(a.nnf(false)), Box::new(b.nnf(false)))
                }
            }
            Ltl::WeakUntil(a, b) => {
                Ltl::or(Ltl::until((**a).clone(), (**b).clone()), Ltl::always((**a).clone()))
                    .nnf(positive)
            }
            Ltl::Leadsto(a, b) => {
                Ltl::always(Ltl::implies((**a).clone(), (**b).clone())).nnf(positive)
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("formula parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Parse the catalog's formula syntax: `[]`, `<>`, `~`, `/\`, `\/`, `->`,
/// `=>`, `U`, `W`, `True`, `False`, and proposition names with an optional
/// direction argument. Atoms are bound to the given intersection name.
pub fn parse_formula(text: &str, xing: &str) -> Result<LtlFormula, ParseError> {
    Parser { text: text.as_bytes(), pos: 0, xing }.parse_toplevel()
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    xing: &'a str,
}

impl<'a> Parser<'a> {
    fn parse_toplevel(&mut self) -> Result<LtlFormula, ParseError> {
        let f = self.parse_leadsto()?;
        self.skip_ws();
        if self.pos != self.text.len() {
            return Err(self.err("trailing input"));
        }
        Ok(f)
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_owned() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn peek(&mut self, token: &str) -> bool {
        self.skip_ws();
        self.text[self.pos..].starts_with(token.as_bytes())
    }

    // Lowest precedence: p => q (right-associative).
    fn parse_leadsto(&mut self) -> Result<LtlFormula, ParseError> {
        let lhs = self.parse_implies()?;
        if self.eat("=>") {
            let rhs = self.parse_leadsto()?;
            Ok(Ltl::leadsto(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn parse_implies(&mut self) -> Result<LtlFormula, ParseError> {
        let lhs = self.parse_or()?;
        // `->` but not `=>`.
        if self.peek("->") {
            self.eat("->");
            let rhs = self.parse_implies()?;
            Ok(Ltl::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn parse_or(&mut self) -> Result<LtlFormula, ParseError> {
        let mut f = self.parse_and()?;
        while self.eat("\\/") {
            let rhs = self.parse_and()?;
            f = Ltl::or(f, rhs);
        }
        Ok(f)
    }

    fn parse_and(&mut self) -> Result<LtlFormula, ParseError> {
        let mut f = self.parse_until()?;
        while self.eat("/\\") {
            let rhs = self.parse_until()?;
            f = Ltl::and(f, rhs);
        }
        Ok(f)
    }

    // `U` and `W`, right-associative, tighter than the boolean connectives.
    fn parse_until(&mut self) -> Result<LtlFormula, ParseError> {
        let lhs = self.parse_unary()?;
        self.skip_ws();
        if self.eat_keyword("U") {
            let rhs = self.parse_until()?;
            Ok(Ltl::until(lhs, rhs))
        } else if self.eat_keyword("W") {
            let rhs = self.parse_until()?;
            Ok(Ltl::weak_until(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    /// A single-word keyword followed by a non-identifier character.
    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        if rest.starts_with(kw.as_bytes()) {
            let after = rest.get(kw.len());
            if after.map_or(true, |c| !c.is_ascii_alphanumeric()) {
                self.pos += kw.len();
                return true;
            }
        }
        false
    }

    fn parse_unary(&mut self) -> Result<LtlFormula, ParseError> {
        if self.eat("[]") {
            Ok(Ltl::always(self.parse_unary()?))
        } else if self.eat("<>") {
            Ok(Ltl::eventually(self.parse_unary()?))
        } else if self.eat("~") {
            Ok(Ltl::not(self.parse_unary()?))
        } else {
            self.parse_atom()
        }
    }

    fn parse_atom(&mut self) -> Result<LtlFormula, ParseError> {
        self.skip_ws();
        if self.eat("(") {
            let f = self.parse_leadsto()?;
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(f);
        }
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a formula"));
        }
        let name = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        match name {
            "True" => return Ok(Ltl::True),
            "False" => return Ok(Ltl::False),
            "failure" => return Ok(Ltl::Prop(AtomicProp::new(self.xing, PropKind::Failure))),
            "repair" => return Ok(Ltl::Prop(AtomicProp::new(self.xing, PropKind::Repair))),
            _ => {}
        }
        if !self.eat("(") {
            return Err(self.err(&format!("proposition `{name}` needs a direction argument")));
        }
        self.skip_ws();
        let dir = if self.eat("NS") {
            Direction::NS
        } else if self.eat("EW") {
            Direction::EW
        } else {
            return Err(self.err("expected direction NS or EW"));
        };
        if !self.eat(")") {
            return Err(self.err("expected `)`"));
        }
        let kind = match name {
            "pedLightRed" => PropKind::PedLightRed(dir),
            "pedArriving" => PropKind::PedArriving(dir),
            "buttonPushed" => PropKind::ButtonPushed(dir),
            "carLightRed" => PropKind::CarLightRed(dir),
            "carLightGreen" => PropKind::CarLightGreen(dir),
            "carWaiting" => PropKind::CarWaiting(dir),
            "carArriving" => PropKind::CarArriving(dir),
            "walking" => PropKind::Walking(dir),
            "driving" => PropKind::Driving(dir),
            other => return Err(self.err(&format!("unknown proposition `{other}`"))),
        };
        Ok(Ltl::Prop(AtomicProp::new(self.xing, kind)))
    }
}

impl fmt::Display for LtlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ltl::True => write!(f, "True"),
            Ltl::False => write!(f, "False"),
            Ltl::Prop(p) => write!(f, "{p}"),
            Ltl::Not(a) => write!(f, "~ {a}"),
            Ltl::And(a, b) => write!(f, "({a} /\\ {b})"),
            Ltl::Or(a, b) => write!(f, "({a} \\/ {b})"),
            Ltl::Implies(a, b) => write!(f, "({a} -> {b})"),
            Ltl::Always(a) => write!(f, "[] {a}"),
            Ltl::Eventually(a) => write!(f, "<> {a}"),
            Ltl::Until(a, b) => write!(f, "({a} U {b})"),
            Ltl::WeakUntil(a, b) => write!(f, "({a} W {b})"),
            Ltl::Leadsto(a, b) => write!(f, "({a} => {b})"),
        }
    }
}
