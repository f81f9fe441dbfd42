//! Three-valued decisions.
//!
//! Concrete inputs produce `Yes`/`No`. Inputs with free parameters can produce
//! `Conditional`, carrying the polynomial conditions in the parameters under
//! which the answer is yes.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::poly::{Indeterminate, Polynomial};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Conditions {
    pub must_be_zero: Vec<Polynomial>,
    pub must_be_nonzero: Vec<Polynomial>,
}

impl Conditions {
    fn canonicalize(&mut self) {
        for list in [&mut self.must_be_zero, &mut self.must_be_nonzero] {
            for p in list.iter_mut() {
                *p = p.normalized();
            }
            list.sort();
            list.dedup();
        }
    }

    pub fn is_empty(&self) -> bool {
        self.must_be_zero.is_empty() && self.must_be_nonzero.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Conditional(Conditions),
}

impl Verdict {
    /// Yes iff every polynomial vanishes. A nonzero constant forces No;
    /// nonconstant survivors become must-be-zero conditions.
    pub fn require_zero<I: IntoIterator<Item = Polynomial>>(polys: I) -> Verdict {
        let mut conditions = Conditions::default();
        for p in polys {
            match p.as_constant() {
                Some(c) if num_traits::Zero::is_zero(&c) => {}
                Some(_) => return Verdict::No,
                None => conditions.must_be_zero.push(p),
            }
        }
        Verdict::from_conditions(conditions)
    }

    /// Yes iff no polynomial vanishes. The zero polynomial forces No.
    pub fn require_nonzero<I: IntoIterator<Item = Polynomial>>(polys: I) -> Verdict {
        let mut conditions = Conditions::default();
        for p in polys {
            match p.as_constant() {
                Some(c) if num_traits::Zero::is_zero(&c) => return Verdict::No,
                Some(_) => {}
                None => conditions.must_be_nonzero.push(p),
            }
        }
        Verdict::from_conditions(conditions)
    }

    fn from_conditions(mut conditions: Conditions) -> Verdict {
        if conditions.is_empty() {
            Verdict::Yes
        } else {
            conditions.canonicalize();
            Verdict::Conditional(conditions)
        }
    }

    /// Conjunction.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::Yes, v) | (v, Verdict::Yes) => v,
            (Verdict::Conditional(mut a), Verdict::Conditional(b)) => {
                a.must_be_zero.extend(b.must_be_zero);
                a.must_be_nonzero.extend(b.must_be_nonzero);
                Verdict::from_conditions(a)
            }
        }
    }

    pub fn all<I: IntoIterator<Item = Verdict>>(verdicts: I) -> Verdict {
        let mut acc = Verdict::Yes;
        for v in verdicts {
            acc = acc.and(v);
            if acc == Verdict::No {
                break;
            }
        }
        acc
    }

    /// Re-evaluates the conditions after binding parameters.
    pub fn specialize(&self, bindings: &BTreeMap<Indeterminate, Polynomial>) -> Verdict {
        match self {
            Verdict::Conditional(c) => {
                let zero =
                    Verdict::require_zero(c.must_be_zero.iter().map(|p| p.substitute(bindings)));
                let nonzero = Verdict::require_nonzero(
                    c.must_be_nonzero.iter().map(|p| p.substitute(bindings)),
                );
                zero.and(nonzero)
            }
            v => v.clone(),
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No)
    }

    pub fn conditions(&self) -> Option<&Conditions> {
        match self {
            Verdict::Conditional(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Conditional(_) => "conditional",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Conditional(c) => {
                f.write_str("conditional:")?;
                for p in &c.must_be_zero {
                    write!(f, " [{p} = 0]")?;
                }
                for p in &c.must_be_nonzero {
                    write!(f, " [{p} != 0]")?;
                }
                Ok(())
            }
            v => f.write_str(v.label()),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Verdict", 3)?;
        s.serialize_field("verdict", self.label())?;
        let (zero, nonzero): (Vec<String>, Vec<String>) = match self {
            Verdict::Conditional(c) => (
                c.must_be_zero.iter().map(ToString::to_string).collect(),
                c.must_be_nonzero.iter().map(ToString::to_string).collect(),
            ),
            _ => (Vec::new(), Vec::new()),
        };
        s.serialize_field("must_be_zero", &zero)?;
        s.serialize_field("must_be_nonzero", &nonzero)?;
        s.end()
    }
}
