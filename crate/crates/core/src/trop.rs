//! Min-plus arithmetic on ℚ ∪ {∞} and canonical points of tropical
//! projective space.
//!
//! Tropical addition is `min`, tropical multiplication is `+`, and `∞` is
//! the additive identity. A [`TropPoint`] is a coset of `ℚ·𝟙` and is always
//! stored with its first finite coordinate equal to zero.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// An element of ℚ ∪ {∞}; `Fin < Inf` under the derived order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropVal {
    Fin(BigRational),
    Inf,
}

impl TropVal {
    pub fn zero() -> Self {
        TropVal::Fin(BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        TropVal::Fin(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        TropVal::Fin(BigRational::new(n.into(), d.into()))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, TropVal::Inf)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_inf()
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            TropVal::Fin(q) => Some(q),
            TropVal::Inf => None,
        }
    }

    /// Tropical sum.
    pub fn min_with(&self, other: &Self) -> Self {
        if self <= other { self.clone() } else { other.clone() }
    }

    /// Shift by a finite amount; `∞` is absorbing.
    pub fn shift(&self, c: &BigRational) -> Self {
        match self {
            TropVal::Fin(q) => TropVal::Fin(q + c),
            TropVal::Inf => TropVal::Inf,
        }
    }

    pub fn neg_finite(&self) -> Option<BigRational> {
        self.finite().map(|q| -q)
    }
}

impl Add for &TropVal {
    type Output = TropVal;

    fn add(self, rhs: &TropVal) -> TropVal {
        match (self, rhs) {
            (TropVal::Fin(a), TropVal::Fin(b)) => TropVal::Fin(a + b),
            _ => TropVal::Inf,
        }
    }
}

impl Add for TropVal {
    type Output = TropVal;

    fn add(self, rhs: TropVal) -> TropVal {
        &self + &rhs
    }
}

/// Difference of a tropical value and a finite one.
impl Sub<&BigRational> for &TropVal {
    type Output = TropVal;

    fn sub(self, rhs: &BigRational) -> TropVal {
        self.shift(&-rhs)
    }
}

impl From<BigRational> for TropVal {
    fn from(q: BigRational) -> Self {
        TropVal::Fin(q)
    }
}

impl From<i64> for TropVal {
    fn from(n: i64) -> Self {
        TropVal::int(n)
    }
}

impl fmt::Display for TropVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropVal::Fin(q) => write!(f, "{}", format_rational(q)),
            TropVal::Inf => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for TropVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for TropVal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            Ok(TropVal::Inf)
        } else {
            parse_rational(s).map(TropVal::Fin)
        }
    }
}

/// Canonical textual form `a/b` with `b > 0` and `gcd(a, b) = 1`.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `a/b` or a bare integer `a`. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// True iff the minimum of `values` is attained at least twice.
///
/// An all-`∞` list counts as attaining its minimum everywhere.
pub fn min_attained_twice(values: &[TropVal]) -> Result<bool> {
    let first = values.first().ok_or(Error::EmptyInput("min_attained_twice"))?;
    let mut min = first;
    let mut count = 0usize;
    for v in values {
        if v < min {
            min = v;
            count = 1;
        } else if v == min {
            count += 1;
        }
    }
    Ok(min.is_inf() || count >= 2)
}

/// A point of tropical projective space, stored canonically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TropPoint {
    coords: Vec<TropVal>,
}

impl TropPoint {
    /// Canonical representative of the class of `raw` modulo `ℚ·𝟙`:
    /// the first finite coordinate is subtracted from every entry.
    pub fn normalize(raw: Vec<TropVal>) -> Result<Self> {
        let shift = raw
            .iter()
            .find_map(|v| v.finite().cloned())
            .ok_or(Error::AllInfinite)?;
        let coords = if shift.is_zero() { raw } else { raw.iter().map(|v| v - &shift).collect() };
        Ok(TropPoint { coords })
    }

    pub fn from_ints(raw: &[i64]) -> Result<Self> {
        Self::normalize(raw.iter().map(|&x| TropVal::int(x)).collect())
    }

    /// All-zero point of the given length.
    pub fn origin(len: usize) -> Self {
        TropPoint { coords: vec![TropVal::zero(); len] }
    }

    pub fn coords(&self) -> &[TropVal] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<TropVal> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, i: usize) -> &TropVal {
        &self.coords[i]
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(TropVal::is_finite)
    }

    /// Finite coordinates as rationals, if the point has no `∞` entry.
    pub fn finite_coords(&self) -> Option<Vec<BigRational>> {
        self.coords.iter().map(|v| v.finite().cloned()).collect()
    }

    /// Restricts to the coordinates in `subset` (in the given order) and
    /// renormalizes. Fails if every selected coordinate is `∞`.
    pub fn project_coords(&self, subset: &[usize]) -> Result<Self> {
        let mut raw = Vec::with_capacity(subset.len());
        for &i in subset {
            let v = self.coords.get(i).ok_or(Error::Dimension {
                expected: self.coords.len(),
                found: i + 1,
            })?;
            raw.push(v.clone());
        }
        Self::normalize(raw).map_err(|_| Error::ForbiddenProjection(subset.to_vec()))
    }

    /// Whether every coordinate is a (finite) integer.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|v| v.finite().is_some_and(|q| q.is_integer()))
    }

    /// Largest absolute value among finite coordinates.
    pub fn max_abs(&self) -> BigRational {
        self.coords
            .iter()
            .filter_map(TropVal::finite)
            .map(|q| q.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

impl fmt::Debug for TropPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tv(s: &str) -> TropVal {
        s.parse().unwrap()
    }

    fn pt(s: &[&str]) -> Vec<TropVal> {
        s.iter().map(|x| tv(x)).collect()
    }

    #[test]
    fn min_twice_examples() {
        assert!(min_attained_twice(&pt(&["0", "0", "1"])).unwrap());
        assert!(!min_attained_twice(&pt(&["-1", "0", "0"])).unwrap());
        assert!(min_attained_twice(&pt(&["inf", "inf"])).unwrap());
        assert!(!min_attained_twice(&pt(&["inf", "3"])).unwrap());
        assert!(matches!(min_attained_twice(&[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(TropPoint::normalize(pt(&["3", "4", "inf"])).unwrap().coords(), pt(&["0", "1", "inf"]));
        assert_eq!(TropPoint::normalize(pt(&["0", "0", "0"])).unwrap().coords(), pt(&["0", "0", "0"]));
        assert_eq!(TropPoint::normalize(pt(&["inf", "2", "5"])).unwrap().coords(), pt(&["inf", "0", "3"]));
        assert!(matches!(TropPoint::normalize(pt(&["inf", "inf"])), Err(Error::AllInfinite)));
    }

    #[test]
    fn projection_examples() {
        let p = TropPoint::normalize(pt(&["0", "1", "inf"])).unwrap();
        assert_eq!(p.project_coords(&[0, 1]).unwrap().coords(), pt(&["0", "1"]));
        let q = TropPoint::normalize(pt(&["0", "inf", "inf"])).unwrap();
        assert!(matches!(q.project_coords(&[1, 2]), Err(Error::ForbiddenProjection(_))));
        let r = TropPoint::normalize(pt(&["0", "1", "5"])).unwrap();
        assert_eq!(r.project_coords(&[1, 2]).unwrap().coords(), pt(&["0", "4"]));
    }

    #[test]
    fn rational_text() {
        assert_eq!(tv("6/4"), TropVal::ratio(3, 2));
        assert_eq!(tv("-2"), TropVal::int(-2));
        assert_eq!(TropVal::ratio(-3, 6).to_string(), "-1/2");
        assert_eq!(TropVal::int(4).to_string(), "4/1");
        assert!(matches!("1/0".parse::<TropVal>(), Err(Error::Parse(_))));
        assert!("x".parse::<TropVal>().is_err());
    }

    fn arb_tropval() -> impl Strategy<Value = TropVal> {
        prop_oneof![
            4 => (-20i64..20, 1i64..4).prop_map(|(n, d)| TropVal::ratio(n, d)),
            1 => Just(TropVal::Inf),
        ]
    }

    fn arb_raw() -> impl Strategy<Value = Vec<TropVal>> {
        prop::collection::vec(arb_tropval(), 1..6)
            .prop_filter("needs a finite coordinate", |v| v.iter().any(TropVal::is_finite))
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent_and_class_invariant(raw in arb_raw(), c in -10i64..10) {
            let p = TropPoint::normalize(raw.clone()).unwrap();
            prop_assert_eq!(TropPoint::normalize(p.coords().to_vec()).unwrap(), p.clone());
            let c = BigRational::from_integer(c.into());
            let shifted: Vec<_> = raw.iter().map(|v| v.shift(&c)).collect();
            prop_assert_eq!(TropPoint::normalize(shifted).unwrap(), p);
        }

        #[test]
        fn projection_commutes_with_normalize(raw in arb_raw(), mask in 1u32..64) {
            let subset: Vec<usize> = (0..raw.len()).filter(|i| mask & (1 << i) != 0).collect();
            prop_assume!(!subset.is_empty());
            let restricted: Vec<TropVal> = subset.iter().map(|&i| raw[i].clone()).collect();
            let p = TropPoint::normalize(raw).unwrap();
            match TropPoint::normalize(restricted) {
                Ok(direct) => prop_assert_eq!(p.project_coords(&subset).unwrap(), direct),
                Err(_) => prop_assert!(p.project_coords(&subset).is_err()),
            }
        }

        #[test]
        fn min_twice_is_shift_invariant(raw in prop::collection::vec(arb_tropval(), 1..6), c in -10i64..10) {
            let c = BigRational::from_integer(c.into());
            let shifted: Vec<_> = raw.iter().map(|v| v.shift(&c)).collect();
            prop_assert_eq!(min_attained_twice(&raw).unwrap(), min_attained_twice(&shifted).unwrap());
        }
    }
}
