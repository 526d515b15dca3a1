//! Parts of an overpartition and their total order.
//!
//! Parts are ordered by size first; among parts of equal size the overlined
//! copy is the smaller one, so `1~ < 1 < 2~ < 2 < ...`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Part {
    size: u64,
    overlined: bool,
}

impl Part {
    pub fn new(size: u64, overlined: bool) -> Result<Self> {
        if size == 0 {
            return Err(Error::ZeroPart);
        }
        Ok(Part { size, overlined })
    }

    /// Non-overlined part. Size zero is tolerated as a comparison threshold
    /// but never stored in an [`Overpartition`](crate::Overpartition).
    pub const fn plain(size: u64) -> Self {
        Part {
            size,
            overlined: false,
        }
    }

    pub const fn overlined(size: u64) -> Self {
        Part {
            size,
            overlined: true,
        }
    }

    pub const fn size(self) -> u64 {
        self.size
    }

    pub const fn is_overlined(self) -> bool {
        self.overlined
    }

    /// Same flag, size increased by `b`.
    pub const fn shifted(self, b: u64) -> Self {
        Part {
            size: self.size + b,
            overlined: self.overlined,
        }
    }

    /// `[|p| / eta]`
    pub const fn floor_div(self, eta: u64) -> u64 {
        self.size / eta
    }

    pub const fn divisible_by(self, eta: u64) -> bool {
        self.size.is_multiple_of(eta)
    }

    fn key(self) -> (u64, u8) {
        (self.size, if self.overlined { 0 } else { 1 })
    }
}

impl Ord for Part {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Part {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn cmp_parts(a: Part, b: Part) -> Ordering {
    a.cmp(&b)
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.overlined {
            write!(f, "{}~", self.size)
        } else {
            write!(f, "{}", self.size)
        }
    }
}

impl FromStr for Part {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let token = s.trim();
        let (digits, overlined) = match token.strip_suffix('~') {
            Some(rest) => (rest, true),
            None => (token, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::MalformedToken {
                token: token.to_string(),
                reason: "expected <int> or <int>~",
            });
        }
        let size = digits.parse::<u64>().map_err(|_| Error::MalformedToken {
            token: token.to_string(),
            reason: "size out of range",
        })?;
        Part::new(size, overlined)
    }
}

/// A part or the sentinel `+inf`, which exceeds every part.
///
/// Used for `s(pi)` and `g(pi)`; `min(Infinity, x) = x` falls out of the
/// derived order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtPart {
    Finite(Part),
    Infinity,
}

impl ExtPart {
    pub fn is_infinite(self) -> bool {
        matches!(self, ExtPart::Infinity)
    }

    pub fn finite(self) -> Option<Part> {
        match self {
            ExtPart::Finite(p) => Some(p),
            ExtPart::Infinity => None,
        }
    }

    /// `[|x| / eta]`, with `None` standing for infinity.
    pub fn floor_div(self, eta: u64) -> Option<u64> {
        self.finite().map(|p| p.floor_div(eta))
    }
}

impl From<Part> for ExtPart {
    fn from(p: Part) -> Self {
        ExtPart::Finite(p)
    }
}

impl PartialEq<Part> for ExtPart {
    fn eq(&self, other: &Part) -> bool {
        *self == ExtPart::Finite(*other)
    }
}

impl PartialOrd<Part> for ExtPart {
    fn partial_cmp(&self, other: &Part) -> Option<Ordering> {
        Some(self.cmp(&ExtPart::Finite(*other)))
    }
}

impl fmt::Display for ExtPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPart::Finite(p) => p.fmt(f),
            ExtPart::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtPart {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn order_examples() {
        assert_eq!(
            cmp_parts(Part::overlined(20), Part::plain(20)),
            Ordering::Less
        );
        assert_eq!(
            cmp_parts(Part::plain(20), Part::overlined(27)),
            Ordering::Less
        );
        assert_eq!(cmp_parts(Part::plain(10), Part::plain(10)), Ordering::Equal);
        assert!(Part::overlined(1) < Part::plain(1));
        assert!(Part::plain(1) < Part::overlined(2));
    }

    #[test]
    fn parse_tokens() {
        assert_eq!("50~".parse::<Part>().unwrap(), Part::overlined(50));
        assert_eq!(" 7 ".parse::<Part>().unwrap(), Part::plain(7));
        assert!(matches!("0".parse::<Part>(), Err(Error::ZeroPart)));
        assert!(matches!(
            "~".parse::<Part>(),
            Err(Error::MalformedToken { .. })
        ));
        assert!(matches!(
            "3~~".parse::<Part>(),
            Err(Error::MalformedToken { .. })
        ));
        assert!(matches!(
            "-3".parse::<Part>(),
            Err(Error::MalformedToken { .. })
        ));
    }

    #[test]
    fn infinity_dominates() {
        let inf = ExtPart::Infinity;
        assert!(inf > ExtPart::from(Part::plain(u64::MAX)));
        assert_eq!(
            inf.min(ExtPart::from(Part::overlined(3))),
            ExtPart::from(Part::overlined(3))
        );
        assert_eq!(inf.floor_div(10), None);
        assert_eq!(ExtPart::from(Part::overlined(27)).floor_div(10), Some(2));
    }

    fn arb_part() -> impl Strategy<Value = Part> {
        (1u64..50, any::<bool>()).prop_map(|(s, o)| Part::new(s, o).unwrap())
    }

    proptest! {
        #[test]
        fn total_order(a in arb_part(), b in arb_part(), c in arb_part()) {
            // trichotomy / antisymmetry
            prop_assert_eq!(cmp_parts(a, b), cmp_parts(b, a).reverse());
            prop_assert_eq!(cmp_parts(a, b) == Ordering::Equal, a == b);
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }

        #[test]
        fn shift_keeps_flag(a in arb_part(), b in 0u64..100) {
            let s = a.shifted(b);
            prop_assert_eq!(s.is_overlined(), a.is_overlined());
            prop_assert_eq!(s.size(), a.size() + b);
        }
    }
}
