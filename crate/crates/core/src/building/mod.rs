//! Homothety classes of diagonalizable seminorms on `(K^{r+1})*`.
//!
//! A class is stored as a basis of covectors together with canonical
//! `−log` coordinates: the seminorm `‖·‖_{B,u}` sends `f = Σ λ_b b` to
//! `max_b |λ_b|·e^{−u_b}`, so `−log‖f‖ = min_b (val(λ_b) + u_b)`.

mod flag;
mod tightspan;

pub use flag::{flag_to_seminorm, seminorm_to_flag, trivial_project, Flag};
pub use tightspan::{phi, tight_span_chart, MaxPlusMatroid, TightSpanChart};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec, Mat, RowValuations};
use crate::linspace::{project_pi, Embedding};
use crate::trop::{TropPoint, TropVal};

/// The class of `‖·‖_{basis, coords}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagSeminorm {
    basis: Mat,
    coords: TropPoint,
}

impl DiagSeminorm {
    /// `basis` must be square with independent columns; `coords` is
    /// canonicalized.
    pub fn new(basis: Mat, coords: Vec<TropVal>) -> Result<Self> {
        if basis.rows() != basis.cols() {
            return Err(Error::Dimension { expected: basis.rows(), found: basis.cols() });
        }
        if coords.len() != basis.cols() {
            return Err(Error::Dimension { expected: basis.cols(), found: coords.len() });
        }
        if basis.rank() != basis.cols() {
            return Err(Error::Singular);
        }
        Ok(DiagSeminorm { basis, coords: TropPoint::normalize(coords)? })
    }

    /// A seminorm diagonalized by the standard dual basis.
    pub fn standard(spec: FieldSpec, coords: Vec<TropVal>) -> Result<Self> {
        Self::new(Mat::identity(spec, coords.len()), coords)
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn coords(&self) -> &TropPoint {
        &self.coords
    }

    pub fn spec(&self) -> FieldSpec {
        self.basis.spec()
    }

    /// Dimension `r+1` of the ambient space.
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Whether the seminorm has trivial kernel.
    pub fn is_norm(&self) -> bool {
        self.coords.is_finite()
    }

    /// `−log‖f‖`; `∞` exactly on the kernel.
    pub fn evaluate(&self, f: &[Elem]) -> Result<TropVal> {
        let lambda = self.basis.solve(f)?;
        Ok(min_plus(self.spec(), &lambda, self.coords.coords()))
    }

    /// Precomputes the inverse basis for repeated evaluation.
    pub fn evaluator(&self) -> Evaluator<'_> {
        Evaluator { inverse: RowValuations::new(&self.basis.inverse().expect("basis is invertible")), norm: self }
    }
}

fn min_plus(spec: FieldSpec, lambda: &[Elem], coords: &[TropVal]) -> TropVal {
    lambda
        .iter()
        .zip(coords)
        .map(|(l, u)| &spec.valuation(l) + u)
        .min()
        .unwrap_or(TropVal::Inf)
}

/// Evaluates one seminorm on many covectors.
pub struct Evaluator<'a> {
    inverse: RowValuations,
    norm: &'a DiagSeminorm,
}

impl Evaluator<'_> {
    pub fn evaluate(&self, f: &[Elem]) -> Result<TropVal> {
        let vals = self.inverse.apply(f)?;
        Ok(vals.iter().zip(self.norm.coords.coords()).map(|(l, u)| l + u).min().unwrap_or(TropVal::Inf))
    }
}

/// Whether two seminorms lie in the same homothety class.
///
/// Both are projected through the embedding whose columns are the union of
/// their bases. A seminorm diagonal in `A` is bounded below by any seminorm
/// agreeing with it on `A`, so agreement on both bases forces equality.
pub fn class_equal(x: &DiagSeminorm, y: &DiagSeminorm) -> Result<bool> {
    if x.spec() != y.spec() {
        return Err(Error::FieldMismatch(y.spec().to_string()));
    }
    if x.dim() != y.dim() {
        return Err(Error::Dimension { expected: x.dim(), found: y.dim() });
    }
    let union = Embedding::new(x.basis.hcat(&y.basis)?)?;
    Ok(project_pi(&union, x)? == project_pi(&union, y)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(v: &[&str]) -> Vec<TropVal> {
        v.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn evaluate_examples() {
        let q = FieldSpec::trivial();
        let x = DiagSeminorm::standard(q, tv(&["0", "0"])).unwrap();
        assert_eq!(x.evaluate(&[Elem::one(), Elem::one()]).unwrap(), TropVal::zero());
        let y = DiagSeminorm::standard(q, tv(&["0", "inf"])).unwrap();
        assert_eq!(y.evaluate(&[Elem::zero(), Elem::one()]).unwrap(), TropVal::Inf);
        let two = FieldSpec::p_adic(2).unwrap();
        let z = DiagSeminorm::standard(two, tv(&["2", "0"])).unwrap();
        // canonical coords are (0, -2): min(1 + 0, 0 - 2) = -2, i.e. 0 for coords (2, 0)
        assert_eq!(z.coords().coords(), tv(&["0", "-2"]));
        assert_eq!(z.evaluate(&[Elem::int(2), Elem::one()]).unwrap(), TropVal::int(-2));
        assert!(matches!(z.evaluate(&[Elem::one()]), Err(Error::Dimension { .. })));
        assert_eq!(z.evaluator().evaluate(&[Elem::int(2), Elem::one()]).unwrap(), TropVal::int(-2));
    }

    #[test]
    fn rejects_dependent_basis() {
        let q = FieldSpec::trivial();
        let b = Mat::from_int_columns(q, &[&[1, 1], &[2, 2]]).unwrap();
        assert!(matches!(DiagSeminorm::new(b, tv(&["0", "0"])), Err(Error::Singular)));
        assert!(DiagSeminorm::standard(q, tv(&["inf", "inf"])).is_err());
    }

    #[test]
    fn class_equal_examples() {
        let q = FieldSpec::trivial();
        let x = DiagSeminorm::standard(q, tv(&["0", "0"])).unwrap();
        assert!(class_equal(&x, &x).unwrap());
        let sheared = Mat::from_int_columns(q, &[&[1, 0], &[1, 1]]).unwrap();
        let y = DiagSeminorm::new(sheared, tv(&["0", "0"])).unwrap();
        assert!(class_equal(&x, &y).unwrap());
        let a = DiagSeminorm::standard(q, tv(&["0", "1"])).unwrap();
        let b = DiagSeminorm::standard(q, tv(&["0", "2"])).unwrap();
        assert!(!class_equal(&a, &b).unwrap());
        // homothety: shifting all coordinates does not change the class
        let c = DiagSeminorm::standard(q, tv(&["5", "6"])).unwrap();
        assert!(class_equal(&a, &c).unwrap());
    }
}
