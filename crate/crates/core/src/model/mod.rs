//! Finite monoids with a unary operation, given by tables, as targets for
//! evaluating trees.
//!
//! A model is checked against the axioms of left (or right) adequate monoids
//! by direct quantifier evaluation over the tables; [`Evaluator`] then
//! realizes the unique morphism from the free left (or right) adequate monoid
//! that extends a generator assignment.

mod enumerate;
mod eval;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::ModelError;
use crate::ops::Sidedness;
use crate::tree::Letter;

pub use enumerate::{enumerate_small_models, MODEL_ORDER_BOUND};
pub use eval::Evaluator;

pub type Element = usize;

/// A finite monoid (or semigroup) with `plus` and/or `star` tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteUnaryAlgebra {
    order: usize,
    identity: Option<Element>,
    mult: Vec<Element>,
    plus: Option<Vec<Element>>,
    star: Option<Vec<Element>>,
}

/// An equivalence relation on the elements, as a list of classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<Element>>,
}

impl Partition {
    fn from_relation(n: usize, related: impl Fn(Element, Element) -> bool) -> Self {
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<Element>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<Element> = (a..n)
                .filter(|&b| class_of[b] == usize::MAX && related(a, b))
                .collect();
            for &b in &members {
                class_of[b] = id;
            }
            classes.push(members);
        }
        Partition { class_of, classes }
    }

    pub fn related(&self, a: Element, b: Element) -> bool {
        self.class_of[a] == self.class_of[b]
    }
}

/// The first adequacy axiom a model fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    NotAssociative {
        x: Element,
        y: Element,
        z: Element,
    },
    NotAnIdentity {
        x: Element,
    },
    IdempotentsDoNotCommute {
        e: Element,
        f: Element,
    },
    NoIdempotentInClass {
        x: Element,
    },
    SeveralIdempotentsInClass {
        e: Element,
        f: Element,
    },
    MissingTable,
    WrongUnaryValue {
        x: Element,
        expected: Element,
        found: Element,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NotAssociative { x, y, z } => {
                write!(f, "({x}*{y})*{z} differs from {x}*({y}*{z})")
            }
            Violation::NotAnIdentity { x } => write!(f, "identity does not fix {x}"),
            Violation::IdempotentsDoNotCommute { e, f: g } => {
                write!(f, "idempotents {e} and {g} do not commute")
            }
            Violation::NoIdempotentInClass { x } => {
                write!(f, "the class of {x} contains no idempotent")
            }
            Violation::SeveralIdempotentsInClass { e, f: g } => {
                write!(f, "idempotents {e} and {g} share a class")
            }
            Violation::MissingTable => f.write_str("unary table is missing"),
            Violation::WrongUnaryValue { x, expected, found } => {
                write!(f, "unary image of {x} is {found}, expected {expected}")
            }
        }
    }
}

impl FiniteUnaryAlgebra {
    /// Checks table shapes and ranges only; see [`verify`](Self::verify) for the axioms.
    pub fn new(
        mult: Vec<Vec<Element>>,
        identity: Option<Element>,
        plus: Option<Vec<Element>>,
        star: Option<Vec<Element>>,
    ) -> Result<Self, ModelError> {
        let order = mult.len();
        if order == 0 {
            return Err(ModelError::Format {
                line: 1,
                message: "order must be positive".into(),
            });
        }
        if mult.iter().any(|row| row.len() != order) {
            return Err(ModelError::Format {
                line: 0,
                message: "multiplication table is not square".into(),
            });
        }
        for table in [plus.as_ref(), star.as_ref()].into_iter().flatten() {
            if table.len() != order {
                return Err(ModelError::Format {
                    line: 0,
                    message: "unary table has the wrong length".into(),
                });
            }
        }
        let all = mult
            .iter()
            .flatten()
            .chain(plus.iter().flatten())
            .chain(star.iter().flatten())
            .chain(identity.iter());
        if let Some(&bad) = all.into_iter().find(|&&x| x >= order) {
            return Err(ModelError::ElementOutOfRange(bad));
        }
        Ok(FiniteUnaryAlgebra {
            order,
            identity,
            mult: mult.into_iter().flatten().collect(),
            plus,
            star,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Option<Element> {
        self.identity
    }

    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.mult[x * self.order + y]
    }

    pub fn plus_table(&self) -> Option<&[Element]> {
        self.plus.as_deref()
    }

    pub fn star_table(&self) -> Option<&[Element]> {
        self.star.as_deref()
    }

    pub fn plus(&self, x: Element) -> Option<Element> {
        self.plus.as_ref().map(|t| t[x])
    }

    pub fn star(&self, x: Element) -> Option<Element> {
        self.star.as_ref().map(|t| t[x])
    }

    pub fn with_plus(mut self, plus: Vec<Element>) -> Self {
        self.plus = Some(plus);
        self
    }

    pub fn with_star(mut self, star: Vec<Element>) -> Self {
        self.star = Some(star);
        self
    }

    pub fn is_idempotent(&self, x: Element) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<Element> {
        (0..self.order).filter(|&x| self.is_idempotent(x)).collect()
    }

    /// `S¹`: unchanged when there is an identity, otherwise a new element
    /// `order()` is adjoined as identity and fixed by the unary operations.
    pub fn with_adjoined_identity(&self) -> FiniteUnaryAlgebra {
        if self.identity.is_some() {
            return self.clone();
        }
        let n = self.order;
        let one = n;
        let mult = (0..=n)
            .map(|x| {
                (0..=n)
                    .map(|y| match (x == one, y == one) {
                        (true, _) => y,
                        (_, true) => x,
                        _ => self.mul(x, y),
                    })
                    .collect()
            })
            .collect();
        let extend = |t: &Vec<Element>| t.iter().copied().chain([one]).collect::<Vec<_>>();
        FiniteUnaryAlgebra::new(
            mult,
            Some(one),
            self.plus.as_ref().map(extend),
            self.star.as_ref().map(extend),
        )
        .expect("adjoining preserves shape")
    }

    /// The opposite monoid, with the roles of `plus` and `star` exchanged.
    pub fn opposite(&self) -> FiniteUnaryAlgebra {
        let n = self.order;
        let mult = (0..n)
            .map(|x| (0..n).map(|y| self.mul(y, x)).collect())
            .collect();
        FiniteUnaryAlgebra::new(mult, self.identity, self.star.clone(), self.plus.clone())
            .expect("transposing preserves shape")
    }

    /// `a R* b` iff `xa = ya ⇔ xb = yb` for all `x, y` in `S¹`.
    pub fn compute_rstar(&self) -> Partition {
        let full = self.with_adjoined_identity();
        let m = full.order;
        Partition::from_relation(self.order, |a, b| {
            (0..m).all(|x| {
                (0..m).all(|y| {
                    (full.mul(x, a) == full.mul(y, a)) == (full.mul(x, b) == full.mul(y, b))
                })
            })
        })
    }

    /// `a L* b` iff `ax = ay ⇔ bx = by` for all `x, y` in `S¹`.
    pub fn compute_lstar(&self) -> Partition {
        let full = self.with_adjoined_identity();
        let m = full.order;
        Partition::from_relation(self.order, |a, b| {
            (0..m).all(|x| {
                (0..m).all(|y| {
                    (full.mul(a, x) == full.mul(a, y)) == (full.mul(b, x) == full.mul(b, y))
                })
            })
        })
    }

    fn check_semigroup(&self) -> Result<(), Violation> {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(Violation::NotAssociative { x, y, z });
                    }
                }
            }
        }
        if let Some(one) = self.identity {
            if let Some(x) = (0..n).find(|&x| self.mul(one, x) != x || self.mul(x, one) != x) {
                return Err(Violation::NotAnIdentity { x });
            }
        }
        let idem = self.idempotents();
        for &e in &idem {
            for &f in &idem {
                if self.mul(e, f) != self.mul(f, e) {
                    return Err(Violation::IdempotentsDoNotCommute { e, f });
                }
            }
        }
        Ok(())
    }

    /// The unique idempotent of each class, or the first failure.
    fn class_idempotents(&self, classes: &Partition) -> Result<Vec<Element>, Violation> {
        let mut rep = vec![None; classes.classes.len()];
        for e in self.idempotents() {
            let c = classes.class_of[e];
            if let Some(f) = rep[c] {
                return Err(Violation::SeveralIdempotentsInClass { e: f, f: e });
            }
            rep[c] = Some(e);
        }
        (0..self.order)
            .map(|x| rep[classes.class_of[x]].ok_or(Violation::NoIdempotentInClass { x }))
            .collect()
    }

    /// The `plus` table a left adequate structure must carry, if there is one.
    pub fn derived_plus(&self) -> Result<Vec<Element>, Violation> {
        self.check_semigroup()?;
        self.class_idempotents(&self.compute_rstar())
    }

    pub fn derived_star(&self) -> Result<Vec<Element>, Violation> {
        self.check_semigroup()?;
        self.class_idempotents(&self.compute_lstar())
    }

    pub fn verify_left_adequate(&self) -> Result<(), Violation> {
        let expected = self.derived_plus()?;
        check_unary(self.plus.as_deref(), &expected)
    }

    pub fn verify_right_adequate(&self) -> Result<(), Violation> {
        let expected = self.derived_star()?;
        check_unary(self.star.as_deref(), &expected)
    }

    pub fn verify(&self, sidedness: Sidedness) -> Result<(), Violation> {
        match sidedness {
            Sidedness::Left => self.verify_left_adequate(),
            Sidedness::Right => self.verify_right_adequate(),
            Sidedness::TwoSided => self
                .verify_left_adequate()
                .and_then(|_| self.verify_right_adequate()),
        }
    }

    /// Serializes in the model file format.
    pub fn to_model_string(&self) -> String {
        let mut out = format!("n={}\n", self.order);
        match self.identity {
            Some(one) => out.push_str(&format!("id={one}\n")),
            None => out.push_str("id=none\n"),
        }
        for row in self.mult.chunks(self.order) {
            out.push_str(&join(row));
            out.push('\n');
        }
        if let Some(p) = &self.plus {
            out.push_str(&format!("plus= {}\n", join(p)));
        }
        if let Some(s) = &self.star {
            out.push_str(&format!("star= {}\n", join(s)));
        }
        out
    }
}

fn join(xs: &[Element]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_unary(table: Option<&[Element]>, expected: &[Element]) -> Result<(), Violation> {
    let table = table.ok_or(Violation::MissingTable)?;
    for (x, (&found, &expected)) in table.iter().zip(expected).enumerate() {
        if found != expected {
            return Err(Violation::WrongUnaryValue { x, expected, found });
        }
    }
    Ok(())
}

impl FromStr for FiniteUnaryAlgebra {
    type Err = ModelError;

    fn from_str(text: &str) -> Result<Self, ModelError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, message: &str| ModelError::Format {
            line,
            message: message.to_string(),
        };
        let last_line = text.lines().count().max(1);

        let (line, header) = lines
            .next()
            .ok_or_else(|| err(last_line, "expected `n=<order>`"))?;
        let order: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| err(line, "expected `n=<order>`"))?;
        if order == 0 {
            return Err(err(line, "order must be positive"));
        }

        let (line, id) = lines
            .next()
            .ok_or_else(|| err(last_line, "expected `id=<index>`"))?;
        let id = id
            .strip_prefix("id=")
            .map(str::trim)
            .ok_or_else(|| err(line, "expected `id=<index>`"))?;
        let identity = if id == "none" {
            None
        } else {
            let one: usize = id.parse().map_err(|_| err(line, "bad identity index"))?;
            if one >= order {
                return Err(err(line, "identity index out of range"));
            }
            Some(one)
        };

        let parse_row = |line: usize, row: &str| -> Result<Vec<Element>, ModelError> {
            let values = row
                .split_whitespace()
                .map(|t| {
                    t.parse::<Element>()
                        .map_err(|_| err(line, &format!("bad entry `{t}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if values.len() != order {
                return Err(err(
                    line,
                    &format!("expected {order} entries, found {}", values.len()),
                ));
            }
            if let Some(bad) = values.iter().find(|&&v| v >= order) {
                return Err(err(line, &format!("entry {bad} out of range")));
            }
            Ok(values)
        };

        let mut mult = Vec::with_capacity(order);
        for _ in 0..order {
            let (line, row) = lines
                .next()
                .ok_or_else(|| err(last_line, "multiplication table is too short"))?;
            mult.push(parse_row(line, row)?);
        }
        let (mut plus, mut star) = (None, None);
        for (line, rest) in lines {
            let (slot, values) = if let Some(v) = rest.strip_prefix("plus=") {
                (&mut plus, v)
            } else if let Some(v) = rest.strip_prefix("star=") {
                (&mut star, v)
            } else {
                return Err(err(line, "expected `plus=` or `star=`"));
            };
            if slot.is_some() {
                return Err(err(line, "table given twice"));
            }
            *slot = Some(parse_row(line, values)?);
        }
        FiniteUnaryAlgebra::new(mult, identity, plus, star)
    }
}

/// A generator assignment `χ`: letter to element.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Letter, Element>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, letter: Letter, value: Element) -> Self {
        self.0.insert(letter, value);
        self
    }

    pub fn insert(&mut self, letter: Letter, value: Element) {
        self.0.insert(letter, value);
    }

    pub fn get(&self, letter: &Letter) -> Result<Element, ModelError> {
        self.0
            .get(letter)
            .copied()
            .ok_or_else(|| ModelError::MissingGenerator(letter.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &Element)> {
        self.0.iter()
    }

    /// Every assignment of `letters` into `0..order`.
    pub fn all(letters: &[Letter], order: usize) -> Vec<Assignment> {
        let mut out = vec![Assignment::new()];
        for l in letters {
            out = out
                .into_iter()
                .flat_map(|a| (0..order).map(move |v| a.clone().with(l.clone(), v)))
                .collect();
        }
        out
    }
}

impl FromStr for Assignment {
    type Err = ModelError;

    /// Parses `a=0,b=1`.
    fn from_str(s: &str) -> Result<Self, ModelError> {
        let mut out = Assignment::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || ModelError::Format {
                line: 0,
                message: format!("bad assignment `{part}`"),
            };
            let (name, value) = part.split_once('=').ok_or_else(bad)?;
            let letter = Letter::new(name.trim()).map_err(|_| bad())?;
            let value = value.trim().parse().map_err(|_| bad())?;
            out.insert(letter, value);
        }
        Ok(out)
    }
}
