//! Trivially valued tropical linear spaces as cones over chains of flats.

use num_rational::BigRational;

use crate::error::Result;
use crate::matroid::{Matroid, Subset};
use crate::trop::{TropPoint, TropVal};

/// A decomposition `u = Σ a_j e_{F_j} + c·𝟙` over a chain of proper flats
/// `F_1 ⊋ F_2 ⊋ …`, listed from the largest flat down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BergmanWitness {
    pub chain: Vec<Subset>,
    /// Positive coefficients; only the innermost flat may carry `∞`.
    pub coefficients: Vec<TropVal>,
    /// The offset `c`, the least coordinate of `u`.
    pub offset: BigRational,
}

/// Result of [`bergman_contains`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BergmanMembership {
    Member(BergmanWitness),
    /// A super-level set of `u` that is not a flat.
    NotMember { non_flat: Subset },
}

impl BergmanMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, BergmanMembership::Member(_))
    }
}

/// Decides whether `u` lies in the Bergman fan of the loopless matroid `m`
/// (closure included).
///
/// Reading the distinct coordinate values from the top, every super-level
/// set `{i : u_i ≥ w}` other than the whole ground set must be a flat.
pub fn bergman_contains(m: &Matroid, u: &TropPoint) -> Result<BergmanMembership> {
    if u.len() != m.ground() {
        return Err(crate::Error::Dimension { expected: m.ground(), found: u.len() });
    }
    let loops = m.loops();
    if !loops.is_empty() {
        return Err(crate::Error::Loops(loops));
    }
    let mut levels: Vec<&TropVal> = u.coords().iter().collect();
    levels.sort();
    levels.dedup();
    // ascending; the least value is finite since u is a projective point
    let offset = levels[0].finite().expect("some coordinate is finite").clone();
    let mut chain = Vec::new();
    let mut coefficients = Vec::new();
    for w in levels.windows(2) {
        let (lower, upper) = (w[0], w[1]);
        let set = (0..u.len()).filter(|&i| u.get(i) >= upper).fold(Subset::EMPTY, Subset::with);
        if !m.is_flat(set) {
            return Ok(BergmanMembership::NotMember { non_flat: set });
        }
        chain.push(set);
        coefficients.push(match (upper, lower) {
            (TropVal::Fin(a), TropVal::Fin(b)) => TropVal::Fin(a - b),
            _ => TropVal::Inf,
        });
    }
    Ok(BergmanMembership::Member(BergmanWitness { chain, coefficients, offset }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Mat};
    use crate::matroid::ValuatedMatroid;

    fn member(m: BergmanMembership) -> BergmanWitness {
        match m {
            BergmanMembership::Member(w) => w,
            other => panic!("expected a member, got {other:?}"),
        }
    }

    fn u23() -> Matroid {
        let f = Mat::from_int_columns(FieldSpec::trivial(), &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        ValuatedMatroid::from_matrix(&f).unwrap().underlying_matroid()
    }

    #[test]
    fn examples() {
        let m = u23();
        let w = member(bergman_contains(&m, &TropPoint::from_ints(&[1, 0, 0]).unwrap()).unwrap());
        assert_eq!(w.chain, vec![Subset::singleton(0)]);
        assert_eq!(w.coefficients, vec![TropVal::int(1)]);

        let bad = bergman_contains(&m, &TropPoint::from_ints(&[0, 1, 2]).unwrap()).unwrap();
        assert_eq!(bad, BergmanMembership::NotMember { non_flat: Subset::from_slice(&[1, 2]) });

        let w = member(bergman_contains(&m, &TropPoint::origin(3)).unwrap());
        assert!(w.chain.is_empty());
    }

    #[test]
    fn boundary_points() {
        let m = u23();
        let u = TropPoint::normalize(vec![TropVal::Inf, TropVal::zero(), TropVal::zero()]).unwrap();
        let w = member(bergman_contains(&m, &u).unwrap());
        assert_eq!(w.coefficients, vec![TropVal::Inf]);
        let u = TropPoint::normalize(vec![TropVal::Inf, TropVal::Inf, TropVal::zero()]).unwrap();
        assert!(!bergman_contains(&m, &u).unwrap().is_member());
    }

    #[test]
    fn loops_rejected() {
        let m = Matroid::from_bases(3, 1, [Subset::singleton(0), Subset::singleton(1)]).unwrap();
        assert!(bergman_contains(&m, &TropPoint::origin(3)).is_err());
    }
}
