//! Finite valuated matroids and their underlying and initial matroids.

mod flats;
mod subset;

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;

pub use flats::FlatLattice;
pub use subset::{k_subsets, k_subsets_of, Subset, MAX_GROUND};

use crate::error::{Error, Result};
use crate::field::Mat;
use crate::trop::{min_attained_twice, TropPoint, TropVal};

/// A basis-valuation table on the `(rank)`-subsets of `{0, …, ground-1}`.
///
/// Only finite values are stored, shifted so the least of them is zero.
/// Subsets absent from the map have value `∞`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisTable {
    ground: usize,
    rank: usize,
    values: BTreeMap<Subset, BigRational>,
}

impl BasisTable {
    pub fn new(ground: usize, rank: usize, entries: impl IntoIterator<Item = (Subset, TropVal)>) -> Result<Self> {
        if ground > MAX_GROUND {
            return Err(Error::Limit(format!("ground set of size {ground} exceeds {MAX_GROUND}")));
        }
        if rank > ground {
            return Err(Error::InvalidMatroid(format!("rank {rank} exceeds ground set size {ground}")));
        }
        let mut values = BTreeMap::new();
        for (s, v) in entries {
            if s.len() != rank || !s.is_subset_of(Subset::full(ground)) {
                return Err(Error::InvalidMatroid(format!("{s:?} is not a {rank}-subset of the ground set")));
            }
            if let TropVal::Fin(q) = v {
                values.insert(s, q);
            }
        }
        let min = values.values().min().cloned().ok_or(Error::NoFiniteEntry)?;
        if !min.is_zero() {
            for q in values.values_mut() {
                *q -= &min;
            }
        }
        Ok(BasisTable { ground, rank, values })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn value(&self, s: Subset) -> TropVal {
        match self.values.get(&s) {
            Some(q) => TropVal::Fin(q.clone()),
            None => TropVal::Inf,
        }
    }

    /// Finite entries in lexicographic order of the subsets.
    pub fn finite_entries(&self) -> impl Iterator<Item = (Subset, &BigRational)> {
        self.values.iter().map(|(s, q)| (*s, q))
    }

    /// Every `rank`-subset with its value, in lexicographic order.
    pub fn all_entries(&self) -> Vec<(Subset, TropVal)> {
        k_subsets(self.ground, self.rank).into_iter().map(|s| (s, self.value(s))).collect()
    }
}

/// Outcome of [`check_plucker`]: `None` means every relation holds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PluckerViolation {
    pub tau: Subset,
    pub sigma: Subset,
}

/// Checks the three-term tropical Plücker relations: for every `τ` of size
/// `rank+1` and `σ` of size `rank−1`, the minimum over `j ∈ τ∖σ` of
/// `v(τ∖j) + v(σ∪j)` is attained at least twice.
pub fn check_plucker(table: &BasisTable) -> Option<PluckerViolation> {
    let (n, k) = (table.ground, table.rank);
    if k == 0 {
        return None;
    }
    let taus = k_subsets(n, k + 1);
    let sigmas = k_subsets(n, k - 1);
    let mut terms = Vec::with_capacity(k + 1);
    for &tau in &taus {
        for &sigma in &sigmas {
            terms.clear();
            for j in tau.difference(sigma).iter() {
                terms.push(&table.value(tau.without(j)) + &table.value(sigma.with(j)));
            }
            if terms.is_empty() {
                continue;
            }
            if !min_attained_twice(&terms).expect("nonempty") {
                return Some(PluckerViolation { tau, sigma });
            }
        }
    }
    None
}

/// A basis table satisfying the valuated exchange axiom.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValuatedMatroid {
    table: BasisTable,
}

impl ValuatedMatroid {
    /// Validates `table` with [`check_plucker`].
    pub fn new(table: BasisTable) -> Result<Self> {
        if let Some(w) = check_plucker(&table) {
            return Err(Error::InvalidMatroid(format!(
                "Plücker relation fails for tau={:?}, sigma={:?}",
                w.tau, w.sigma
            )));
        }
        Ok(ValuatedMatroid { table })
    }

    pub fn from_entries(
        ground: usize,
        rank: usize,
        entries: impl IntoIterator<Item = (Subset, TropVal)>,
    ) -> Result<Self> {
        Self::new(BasisTable::new(ground, rank, entries)?)
    }

    /// The valuated matroid `A ↦ val(det f_A)` of a matrix whose columns are
    /// nonzero and span.
    pub fn from_matrix(f: &Mat) -> Result<Self> {
        let zero = f.zero_columns();
        if !zero.is_empty() {
            return Err(Error::ZeroColumns(zero));
        }
        let rank = f.rows();
        let found = f.rank();
        if found != rank {
            return Err(Error::RankDeficient { expected: rank, found });
        }
        let spec = f.spec();
        let mut entries = Vec::new();
        for s in k_subsets(f.cols(), rank) {
            let d = f.select_columns(&s.to_vec()).det()?;
            entries.push((s, spec.valuation(&d)));
        }
        // Grassmann–Plücker identities make the exchange check redundant here.
        Ok(ValuatedMatroid { table: BasisTable::new(f.cols(), rank, entries)? })
    }

    pub fn table(&self) -> &BasisTable {
        &self.table
    }

    pub fn ground(&self) -> usize {
        self.table.ground
    }

    pub fn rank(&self) -> usize {
        self.table.rank
    }

    pub fn value(&self, s: Subset) -> TropVal {
        self.table.value(s)
    }

    pub fn bases(&self) -> impl Iterator<Item = Subset> + '_ {
        self.table.values.keys().copied()
    }

    /// Bases of the underlying matroid: the subsets with finite value.
    pub fn underlying_matroid(&self) -> Matroid {
        Matroid {
            ground: self.ground(),
            rank: self.rank(),
            bases: self.bases().collect(),
        }
    }

    /// Bases minimising `v(B) − Σ_{b∈B} u_b`.
    pub fn initial_matroid(&self, u: &TropPoint) -> Result<Matroid> {
        if u.len() != self.ground() {
            return Err(Error::Dimension { expected: self.ground(), found: u.len() });
        }
        let u = u.finite_coords().ok_or(Error::InfiniteCoordinate)?;
        let mut best: Option<BigRational> = None;
        let mut bases = BTreeSet::new();
        for (b, v) in self.table.finite_entries() {
            let w = b.iter().fold(v.clone(), |acc, i| acc - &u[i]);
            match &best {
                Some(m) if &w > m => {}
                Some(m) if &w == m => {
                    bases.insert(b);
                }
                _ => {
                    best = Some(w);
                    bases.clear();
                    bases.insert(b);
                }
            }
        }
        Ok(Matroid { ground: self.ground(), rank: self.rank(), bases })
    }

    /// Restriction to `s`, relabelled to `{0, …, |s|-1}` in increasing order.
    pub fn restrict(&self, s: Subset) -> Result<Self> {
        if !s.is_subset_of(Subset::full(self.ground())) {
            return Err(Error::InvalidMatroid(format!("{s:?} is not a subset of the ground set")));
        }
        let elems = s.to_vec();
        let relabel = |b: Subset| {
            Subset::from_slice(&b.iter().map(|i| elems.iter().position(|&e| e == i).unwrap()).collect::<Vec<_>>())
        };
        let entries: Vec<(Subset, TropVal)> = self
            .table
            .finite_entries()
            .filter(|(b, _)| b.is_subset_of(s))
            .map(|(b, q)| (relabel(b), TropVal::Fin(q.clone())))
            .collect();
        if entries.is_empty() {
            return Err(Error::NoBasisInSubset(elems));
        }
        Ok(ValuatedMatroid { table: BasisTable::new(elems.len(), self.rank(), entries)? })
    }

    /// The same matroid with every value shifted by `c`; normalization makes
    /// this the identity on the stored table.
    pub fn shifted(&self, c: &BigRational) -> Self {
        let entries = self.table.finite_entries().map(|(s, q)| (s, TropVal::Fin(q + c)));
        ValuatedMatroid { table: BasisTable::new(self.ground(), self.rank(), entries).expect("nonempty") }
    }
}

/// A matroid given by its bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matroid {
    ground: usize,
    rank: usize,
    bases: BTreeSet<Subset>,
}

impl Matroid {
    pub fn from_bases(ground: usize, rank: usize, bases: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let bases: BTreeSet<Subset> = bases.into_iter().collect();
        if bases.is_empty() {
            return Err(Error::NoFiniteEntry);
        }
        if let Some(b) = bases.iter().find(|b| b.len() != rank || !b.is_subset_of(Subset::full(ground))) {
            return Err(Error::InvalidMatroid(format!("{b:?} is not a {rank}-subset of the ground set")));
        }
        let m = Matroid { ground, rank, bases };
        if let Some((a, b, x)) = m.exchange_violation() {
            return Err(Error::InvalidMatroid(format!(
                "basis exchange fails for {a:?}, {b:?} at element {x}"
            )));
        }
        Ok(m)
    }

    /// The uniform matroid `U_{rank,ground}`.
    pub fn uniform(rank: usize, ground: usize) -> Self {
        Matroid { ground, rank, bases: k_subsets(ground, rank).into_iter().collect() }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &BTreeSet<Subset> {
        &self.bases
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        self.bases.contains(&s)
    }

    /// Rank of an arbitrary subset: the largest intersection with a basis.
    pub fn rank_of(&self, s: Subset) -> usize {
        self.bases.iter().map(|b| b.intersection(s).len()).max().unwrap_or(0)
    }

    pub fn closure(&self, s: Subset) -> Subset {
        let r = self.rank_of(s);
        (0..self.ground).filter(|&i| s.contains(i) || self.rank_of(s.with(i)) == r).fold(s, Subset::with)
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.closure(s) == s
    }

    /// Elements contained in no basis.
    pub fn loops(&self) -> Vec<usize> {
        let covered = self.bases.iter().fold(Subset::EMPTY, |acc, b| acc.union(*b));
        (0..self.ground).filter(|&i| !covered.contains(i)).collect()
    }

    /// A triple `(A, B, a)` with `a ∈ A∖B` such that no `b ∈ B∖A` makes
    /// `A − a + b` a basis, if one exists.
    pub fn exchange_violation(&self) -> Option<(Subset, Subset, usize)> {
        for &a in &self.bases {
            for &b in &self.bases {
                for x in a.difference(b).iter() {
                    let ok = b.difference(a).iter().any(|y| self.bases.contains(&a.without(x).with(y)));
                    if !ok {
                        return Some((a, b, x));
                    }
                }
            }
        }
        None
    }

    pub fn flats(&self) -> Result<FlatLattice> {
        FlatLattice::new(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn sets(v: &[&[usize]]) -> Vec<Subset> {
        v.iter().map(|s| Subset::from_slice(s)).collect()
    }

    /// Table on the 2-subsets of {0..3} in lexicographic order.
    fn rank2_table(vals: [&str; 6]) -> BasisTable {
        let entries = k_subsets(4, 2).into_iter().zip(vals.iter().map(|v| v.parse::<TropVal>().unwrap()));
        BasisTable::new(4, 2, entries).unwrap()
    }

    fn fixture_matrix() -> Mat {
        Mat::from_int_columns(FieldSpec::p_adic(2).unwrap(), &[&[1, 0], &[0, 1], &[2, 1], &[1, 1]]).unwrap()
    }

    #[test]
    fn from_matrix_examples() {
        let id = Mat::identity(FieldSpec::trivial(), 2);
        let v = ValuatedMatroid::from_matrix(&id).unwrap();
        assert_eq!(v.value(Subset::from_slice(&[0, 1])), TropVal::zero());

        // minors: 01 -> 1, 02 -> 1, 03 -> 1, 12 -> -2, 13 -> -1, 23 -> 1
        let v = ValuatedMatroid::from_matrix(&fixture_matrix()).unwrap();
        assert_eq!(v.table(), &rank2_table(["0", "0", "0", "1", "0", "0"]));

        let rep = Mat::from_int_columns(FieldSpec::trivial(), &[&[1, 2], &[3, 1], &[1, 2]]).unwrap();
        let v = ValuatedMatroid::from_matrix(&rep).unwrap();
        assert_eq!(v.value(Subset::from_slice(&[0, 2])), TropVal::Inf);
        assert!(v.value(Subset::from_slice(&[0, 1])).is_finite());
    }

    #[test]
    fn from_matrix_errors() {
        let spec = FieldSpec::trivial();
        let zero_col = Mat::from_int_columns(spec, &[&[1, 0], &[0, 0], &[0, 1]]).unwrap();
        assert!(matches!(ValuatedMatroid::from_matrix(&zero_col), Err(Error::ZeroColumns(z)) if z == vec![1]));
        let deficient = Mat::from_int_columns(spec, &[&[1, 2], &[2, 4]]).unwrap();
        assert!(matches!(ValuatedMatroid::from_matrix(&deficient), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn plucker_examples() {
        assert_eq!(check_plucker(&rank2_table(["0", "0", "0", "1", "0", "0"])), None);
        assert_eq!(check_plucker(&rank2_table(["0"; 6])), None);
        let w = check_plucker(&rank2_table(["0", "0", "0", "-1", "0", "0"])).expect("violation");
        assert!(w.tau.contains(1) && w.tau.contains(2));
        assert!(ValuatedMatroid::new(rank2_table(["0", "0", "0", "-1", "0", "0"])).is_err());
    }

    #[test]
    fn underlying_matroid_examples() {
        let v = ValuatedMatroid::new(rank2_table(["0"; 6])).unwrap();
        assert_eq!(v.underlying_matroid(), Matroid::uniform(2, 4));
        let v = ValuatedMatroid::new(rank2_table(["0", "0", "0", "1", "0", "0"])).unwrap();
        assert_eq!(v.underlying_matroid(), Matroid::uniform(2, 4));
        let rep = Mat::from_int_columns(FieldSpec::trivial(), &[&[1, 0], &[0, 1], &[1, 0]]).unwrap();
        let m = ValuatedMatroid::from_matrix(&rep).unwrap().underlying_matroid();
        assert_eq!(m.bases().iter().copied().collect::<Vec<_>>(), sets(&[&[0, 1], &[1, 2]]));
    }

    #[test]
    fn initial_matroid_examples() {
        let u23 = ValuatedMatroid::from_entries(3, 2, k_subsets(3, 2).into_iter().map(|s| (s, TropVal::zero()))).unwrap();
        let m = u23.initial_matroid(&TropPoint::from_ints(&[0, 0, 1]).unwrap()).unwrap();
        assert_eq!(m.bases().iter().copied().collect::<Vec<_>>(), sets(&[&[0, 2], &[1, 2]]));

        let v = ValuatedMatroid::new(rank2_table(["0", "0", "0", "1", "0", "0"])).unwrap();
        let m = v.initial_matroid(&TropPoint::origin(4)).unwrap();
        let expected: Vec<Subset> = k_subsets(4, 2).into_iter().filter(|s| *s != Subset::from_slice(&[1, 2])).collect();
        assert_eq!(m.bases().iter().copied().collect::<Vec<_>>(), expected);

        let boundary = TropPoint::normalize(vec![TropVal::zero(), TropVal::Inf, TropVal::zero(), TropVal::zero()]).unwrap();
        assert!(matches!(v.initial_matroid(&boundary), Err(Error::InfiniteCoordinate)));
    }

    #[test]
    fn restrict_examples() {
        let v = ValuatedMatroid::new(rank2_table(["0", "0", "0", "1", "0", "0"])).unwrap();
        assert_eq!(v.restrict(Subset::full(4)).unwrap(), v);
        let r = v.restrict(Subset::from_slice(&[0, 1, 2])).unwrap();
        let expected = ValuatedMatroid::from_entries(
            3,
            2,
            k_subsets(3, 2).into_iter().zip([TropVal::zero(), TropVal::zero(), TropVal::int(1)]),
        )
        .unwrap();
        assert_eq!(r, expected);
        let single = v.restrict(Subset::from_slice(&[1, 2])).unwrap();
        assert_eq!(single.bases().count(), 1);
        let rep = Mat::from_int_columns(FieldSpec::trivial(), &[&[1, 0], &[0, 1], &[1, 0]]).unwrap();
        let w = ValuatedMatroid::from_matrix(&rep).unwrap();
        assert!(matches!(w.restrict(Subset::from_slice(&[0, 2])), Err(Error::NoBasisInSubset(_))));
    }

    #[test]
    fn basis_exchange_validation() {
        assert!(Matroid::from_bases(4, 2, sets(&[&[0, 1], &[2, 3]])).is_err());
        assert!(Matroid::from_bases(3, 2, sets(&[&[0, 1], &[0, 2], &[1, 2]])).is_ok());
    }
}
