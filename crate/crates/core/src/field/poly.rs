//! Univariate polynomials over ℚ and the field of rational functions ℚ(t).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial in `t` with rational coefficients, lowest degree first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn ord_t(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Constant term.
    pub fn at_zero(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divides out `t^k`; the caller guarantees `k ≤ ord_t`.
    pub fn shift_down(&self, k: usize) -> Self {
        Poly { coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec() }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc = divisor.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient; debug-asserts that the remainder vanishes.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    ///
    /// Runs the primitive remainder sequence in ℤ[t]; Euclid over ℚ spends
    /// most of its time normalizing coefficients.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.add(other).monic();
        }
        let mut a = ZPoly::from_poly(self).1.primitive();
        let mut b = ZPoly::from_poly(other).1.primitive();
        if a.0.len() < b.0.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.to_poly().monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        self.mul(other).div_exact(&self.gcd(other)).monic()
    }

    /// Power series coefficients of `self / other` modulo `t^len`, assuming
    /// `other(0) ≠ 0`.
    pub fn series_div(&self, other: &Self, len: usize) -> Vec<BigRational> {
        let d0 = other.at_zero();
        debug_assert!(!d0.is_zero());
        let inv0 = d0.recip();
        let zero = BigRational::zero();
        let mut out: Vec<BigRational> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
            for j in 1..=k {
                let dj = other.coeffs.get(j).unwrap_or(&zero);
                if !dj.is_zero() {
                    acc -= dj * &out[k - j];
                }
            }
            out.push(acc * &inv0);
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial over ℤ, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ZPoly(Vec<BigInt>);

impl ZPoly {
    fn trimmed(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        ZPoly(c)
    }

    pub(crate) fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub(crate) fn one() -> Self {
        ZPoly(vec![BigInt::one()])
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `(c, z)` with `z = c·p` in ℤ[t] and `c > 0` the lcm of the
    /// coefficient denominators.
    pub(crate) fn from_poly(p: &Poly) -> (BigInt, ZPoly) {
        let c = p.coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        (c.clone(), ZPoly(p.coeffs.iter().map(|q| q.numer() * (&c / q.denom())).collect()))
    }

    pub(crate) fn to_poly(&self) -> Poly {
        Poly { coeffs: self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect() }
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::trimmed(c)
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = BigInt::zero();
        Self::trimmed((0..n).map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero)).collect())
    }

    /// Order of vanishing at `t = 0`; `None` for zero.
    pub(crate) fn ord_t(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub(crate) fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = BigInt::zero();
        Self::trimmed((0..n).map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero)).collect())
    }

    pub(crate) fn neg(&self) -> Self {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    /// Quotient by a divisor known to divide exactly in ℤ[t].
    pub(crate) fn div_exact(&self, d: &Self) -> Self {
        let dd = d.0.len() - 1;
        if self.0.len() <= dd {
            debug_assert!(self.is_zero(), "inexact polynomial division");
            return Self::zero();
        }
        let lc = &d.0[dd];
        let mut rem = self.0.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            if rem[k + dd].is_zero() {
                continue;
            }
            let (c, r) = rem[k + dd].div_rem(lc);
            debug_assert!(r.is_zero(), "inexact polynomial division");
            for (j, x) in d.0.iter().enumerate() {
                rem[k + j] -= &c * x;
            }
            quot[k] = c;
        }
        debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Self::trimmed(quot)
    }

    /// Divides out the content and makes the leading coefficient positive.
    fn primitive(&self) -> Self {
        let Some(lc) = self.0.last() else {
            return Self::zero();
        };
        let mut g = self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if lc.is_negative() {
            g = -g;
        }
        ZPoly(self.0.iter().map(|c| c / &g).collect())
    }

    /// `lc(d)^k · self mod d` for the least sufficient `k`.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.0.len() - 1;
        let lc = &d.0[dd];
        let mut r = self.0.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let lr = r[top].clone();
            for x in r.iter_mut() {
                *x *= lc;
            }
            for (j, x) in d.0.iter().enumerate() {
                r[top - dd + j] -= &lr * x;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        ZPoly(r)
    }
}

/// Element of ℚ(t) in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num/den` in canonical form. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let lc = den.leading().unwrap().recip();
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// `t^k` for any integer `k`.
    pub fn t_power(k: i64) -> Self {
        let m = Poly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::poly(m)
        } else {
            RatFunc { num: Poly::one(), den: m }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Returns the constant if this function is one.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.at_zero())
        } else {
            None
        }
    }

    /// `ord_t(num) − ord_t(den)`; `None` for zero.
    pub fn ord_t(&self) -> Option<i64> {
        let n = self.num.ord_t()? as i64;
        Some(n - self.den.ord_t().expect("nonzero denominator") as i64)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// `p`-adic order of a nonzero integer.
pub(crate) fn ord_p(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn division_and_gcd() {
        // (t^2 - 1) = (t - 1)(t + 1)
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[1, 1]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(quot, Poly::from_ints(&[-1, 1]));
        assert!(rem.is_zero());
        let c = Poly::from_ints(&[2, 2]).mul(&Poly::from_ints(&[3, 0, 1]));
        assert_eq!(a.gcd(&c), Poly::from_ints(&[1, 1]));
    }

    #[test]
    fn ratfunc_is_canonical() {
        // t^2 / (3t) = t / 3
        let x = RatFunc::new(Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[0, 3]));
        assert_eq!(x.num(), &Poly::new(vec![q(0, 1), q(1, 3)]));
        assert!(x.den().is_one());
        assert_eq!(x.ord_t(), Some(1));
        let y = RatFunc::new(Poly::from_ints(&[0, 2]), Poly::from_ints(&[0, 0, 6]));
        assert_eq!(y, RatFunc::new(Poly::from_ints(&[1]), Poly::from_ints(&[0, 3])));
        assert_eq!(y.ord_t(), Some(-1));
    }

    #[test]
    fn series_of_geometric() {
        // 1/(1 - t) = 1 + t + t^2 + ...
        let s = Poly::one().series_div(&Poly::from_ints(&[1, -1]), 4);
        assert!(s.iter().all(|c| c.is_one()));
    }

    #[test]
    fn p_adic_order() {
        assert_eq!(ord_p(&BigInt::from(12), &BigInt::from(2)), 2);
        assert_eq!(ord_p(&BigInt::from(-81), &BigInt::from(3)), 4);
        assert_eq!(ord_p(&BigInt::from(5), &BigInt::from(3)), 0);
    }
}
