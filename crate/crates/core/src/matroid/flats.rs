use std::collections::{BTreeMap, BTreeSet};

use super::{Matroid, Subset};
use crate::error::{Error, Result};

/// The lattice of flats of a loopless matroid with its cover relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatLattice {
    /// Flats sorted by rank, then lexicographically.
    flats: Vec<Subset>,
    ranks: Vec<usize>,
    /// `covers[i]` lists the indices of flats covering `flats[i]`.
    covers: Vec<Vec<usize>>,
}

impl FlatLattice {
    pub fn new(m: &Matroid) -> Result<Self> {
        let loops = m.loops();
        if !loops.is_empty() {
            return Err(Error::Loops(loops));
        }
        // every flat arises from a smaller one by adding an element and closing
        let mut found: BTreeMap<Subset, usize> = BTreeMap::new();
        let mut cover_pairs: BTreeSet<(Subset, Subset)> = BTreeSet::new();
        let mut frontier = vec![Subset::EMPTY];
        found.insert(Subset::EMPTY, 0);
        while let Some(f) = frontier.pop() {
            for x in 0..m.ground() {
                if f.contains(x) {
                    continue;
                }
                let g = m.closure(f.with(x));
                cover_pairs.insert((f, g));
                if !found.contains_key(&g) {
                    found.insert(g, m.rank_of(g));
                    frontier.push(g);
                }
            }
        }
        let mut flats: Vec<(usize, Subset)> = found.into_iter().map(|(s, r)| (r, s)).collect();
        flats.sort();
        let index: BTreeMap<Subset, usize> = flats.iter().enumerate().map(|(i, (_, s))| (*s, i)).collect();
        let mut covers = vec![Vec::new(); flats.len()];
        for (lo, hi) in cover_pairs {
            covers[index[&lo]].push(index[&hi]);
        }
        for c in &mut covers {
            c.sort();
            c.dedup();
        }
        Ok(FlatLattice {
            ranks: flats.iter().map(|(r, _)| *r).collect(),
            flats: flats.into_iter().map(|(_, s)| s).collect(),
            covers,
        })
    }

    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn rank_of_flat(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    /// Flats other than `∅` and the ground set.
    pub fn proper_flats(&self) -> impl Iterator<Item = Subset> + '_ {
        let top = *self.flats.last().expect("lattice has a top");
        self.flats.iter().copied().filter(move |f| !f.is_empty() && *f != top)
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.flats.contains(&s)
    }

    /// All maximal chains `∅ ⊊ F_1 ⊊ … ⊊ E`, as lists of flats.
    pub fn maximal_chains(&self) -> Vec<Vec<Subset>> {
        let mut out = Vec::new();
        let mut path = vec![0usize];
        self.extend_chains(&mut path, &mut out);
        out
    }

    fn extend_chains(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<Subset>>) {
        let last = *path.last().unwrap();
        if self.covers[last].is_empty() {
            out.push(path.iter().map(|&i| self.flats[i]).collect());
            return;
        }
        for &next in &self.covers[last] {
            path.push(next);
            self.extend_chains(path, out);
            path.pop();
        }
    }
}
