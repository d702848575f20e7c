//! Exact arithmetic in the supported non-Archimedean valued fields.
//!
//! Three backends are available: ℚ with a `p`-adic valuation, ℚ(t) with the
//! `t`-adic valuation, and ℚ with the trivial valuation. All of them are
//! discretely or trivially valued, hence spherically complete, so every
//! seminorm over them is diagonalizable.

mod matrix;
pub mod poly;

use std::borrow::Cow;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use matrix::Mat;
pub use matrix::RowValuations;
pub use poly::{Poly, RatFunc};

use crate::error::{Error, Result};
use crate::trop::TropVal;

/// The kind of valued field, see [`FieldSpec`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldKind {
    /// ℚ with the `p`-adic valuation.
    PAdic(u64),
    /// ℚ(t) with the `t`-adic valuation.
    TAdic,
    /// ℚ with the trivial valuation.
    Trivial,
}

/// A validated field description; `p` is checked to be prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
}

impl FieldSpec {
    pub fn p_adic(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { kind: FieldKind::PAdic(p) })
    }

    pub fn t_adic() -> Self {
        FieldSpec { kind: FieldKind::TAdic }
    }

    pub fn trivial() -> Self {
        FieldSpec { kind: FieldKind::Trivial }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// Name used in JSON documents.
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            FieldKind::PAdic(_) => "rationals-p-adic",
            FieldKind::TAdic => "rational-functions-t-adic",
            FieldKind::Trivial => "rationals-trivial",
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.kind == FieldKind::Trivial
    }

    pub fn is_discrete(&self) -> bool {
        !self.is_trivial()
    }

    /// The uniformizer `p` or `t`; `None` for the trivial valuation.
    pub fn uniformizer(&self) -> Option<Elem> {
        match self.kind {
            FieldKind::PAdic(p) => Some(Elem::int(p as i64)),
            FieldKind::TAdic => Some(Elem::from_func(RatFunc::t_power(1))),
            FieldKind::Trivial => None,
        }
    }

    /// `π^k` for the uniformizer `π`.
    pub fn uniformizer_pow(&self, k: i64) -> Option<Elem> {
        match self.kind {
            FieldKind::PAdic(p) => {
                let base = BigRational::from_integer(BigInt::from(p));
                Some(Elem::Rat(num_traits::pow::Pow::pow(&base, k as i32)))
            }
            FieldKind::TAdic => Some(Elem::from_func(RatFunc::t_power(k))),
            FieldKind::Trivial => None,
        }
    }

    /// Valuation of `x`; `∞` exactly when `x = 0`.
    pub fn valuation(&self, x: &Elem) -> TropVal {
        if x.is_zero() {
            return TropVal::Inf;
        }
        let v = match (self.kind, x) {
            (FieldKind::Trivial, _) => 0,
            (FieldKind::PAdic(p), Elem::Rat(q)) => {
                let p = BigInt::from(p);
                poly::ord_p(q.numer(), &p) - poly::ord_p(q.denom(), &p)
            }
            (FieldKind::PAdic(_), Elem::Func(_)) => {
                panic!("rational function in a p-adic context")
            }
            (FieldKind::TAdic, Elem::Rat(_)) => 0,
            (FieldKind::TAdic, Elem::Func(f)) => f.ord_t().expect("nonzero"),
        };
        TropVal::int(v)
    }

    /// Integer-valued valuation of a nonzero element.
    pub fn ord(&self, x: &Elem) -> Option<i64> {
        match self.valuation(x) {
            TropVal::Fin(q) => Some(q.to_integer().try_into().expect("valuation fits in i64")),
            TropVal::Inf => None,
        }
    }

    /// Checks that `x` is an element of this field.
    pub fn check(&self, x: &Elem) -> Result<()> {
        match (self.kind, x) {
            (FieldKind::TAdic, _) | (_, Elem::Rat(_)) => Ok(()),
            _ => Err(Error::FieldMismatch(self.to_string())),
        }
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::PAdic(p) => write!(f, "Q with {p}-adic valuation"),
            FieldKind::TAdic => write!(f, "Q(t) with t-adic valuation"),
            FieldKind::Trivial => write!(f, "Q with trivial valuation"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element: a rational number or a non-constant rational function.
///
/// Constant rational functions are always demoted to `Rat`, so equality is
/// representational across both variants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(BigRational),
    Func(RatFunc),
}

impl Elem {
    pub fn zero() -> Self {
        Elem::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Elem::Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Elem::Rat(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Elem::Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn from_func(f: RatFunc) -> Self {
        match f.as_constant() {
            Some(c) => Elem::Rat(c),
            None => Elem::Func(f),
        }
    }

    pub fn poly(coeffs: &[i64]) -> Self {
        Self::from_func(RatFunc::poly(Poly::from_ints(coeffs)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Rat(q) => q.is_zero(),
            Elem::Func(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Elem::Rat(q) if q.is_one())
    }

    fn as_func(&self) -> Cow<'_, RatFunc> {
        match self {
            Elem::Rat(q) => Cow::Owned(RatFunc::constant(q.clone())),
            Elem::Func(f) => Cow::Borrowed(f),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Elem {
        match self {
            Elem::Rat(q) => Elem::Rat(q.recip()),
            Elem::Func(f) => Elem::from_func(f.recip()),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(q) => write!(f, "{q}"),
            Elem::Func(r) => write!(f, "{r}"),
        }
    }
}

impl Add for &Elem {
    type Output = Elem;

    fn add(self, rhs: &Elem) -> Elem {
        match (self, rhs) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            _ => Elem::from_func(self.as_func().add(&rhs.as_func())),
        }
    }
}

impl Sub for &Elem {
    type Output = Elem;

    fn sub(self, rhs: &Elem) -> Elem {
        match (self, rhs) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a - b),
            _ => Elem::from_func(self.as_func().sub(&rhs.as_func())),
        }
    }
}

impl Mul for &Elem {
    type Output = Elem;

    fn mul(self, rhs: &Elem) -> Elem {
        match (self, rhs) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            _ => Elem::from_func(self.as_func().mul(&rhs.as_func())),
        }
    }
}

impl Div for &Elem {
    type Output = Elem;

    fn div(self, rhs: &Elem) -> Elem {
        match (self, rhs) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a / b),
            _ => Elem::from_func(self.as_func().div(&rhs.as_func())),
        }
    }
}

impl Neg for &Elem {
    type Output = Elem;

    fn neg(self) -> Elem {
        match self {
            Elem::Rat(a) => Elem::Rat(-a),
            Elem::Func(f) => Elem::Func(f.neg()),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Elem {
            type Output = Elem;
            fn $m(self, rhs: Elem) -> Elem {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Elem {
    type Output = Elem;

    fn neg(self) -> Elem {
        -&self
    }
}

/// An element together with the field it lives in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValuedScalar {
    spec: FieldSpec,
    value: Elem,
}

impl ValuedScalar {
    pub fn new(spec: FieldSpec, value: Elem) -> Result<Self> {
        spec.check(&value)?;
        Ok(ValuedScalar { spec, value })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn valuation(&self) -> TropVal {
        self.spec.valuation(&self.value)
    }
}

/// Sum of `a_i·v_i` for covectors given as slices.
pub fn lin_comb(terms: &[(&Elem, &[Elem])]) -> Vec<Elem> {
    let len = terms.first().map_or(0, |(_, v)| v.len());
    let mut out = vec![Elem::zero(); len];
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v.iter()) {
            if !x.is_zero() {
                *o = &*o + &(*c * x);
            }
        }
    }
    out
}
