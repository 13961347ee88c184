//! Graded chain complexes over GF(2) and their homology tables.
//!
//! A complex is a family of blocks keyed by [`Grading`]. The differential
//! moves the homological index `h` by a fixed `step` (+1 for the oriented and
//! chromatic theories, -1 for the framed and annular ones) and preserves the
//! remaining gradings, so each block has at most one outgoing matrix.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::f2linalg::{self, F2Matrix, F2Subspace};
use crate::LaurentPoly;

/// A grading tuple `(h, q)` or `(h, q, k)`; `h` is homological.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Grading {
    pub h: i32,
    pub q: i32,
    pub k: Option<i32>,
}

impl Grading {
    pub const fn new(h: i32, q: i32) -> Self {
        Self { h, q, k: None }
    }

    pub const fn triple(h: i32, q: i32, k: i32) -> Self {
        Self { h, q, k: Some(k) }
    }

    pub fn shifted(&self, step: i32) -> Self {
        Self {
            h: self.h + step,
            ..*self
        }
    }

    pub fn to_vec(&self) -> Vec<i32> {
        let mut v = vec![self.h, self.q];
        v.extend(self.k);
        v
    }

    pub fn from_slice(v: &[i32]) -> Option<Self> {
        match *v {
            [h, q] => Some(Self::new(h, q)),
            [h, q, k] => Some(Self::triple(h, q, k)),
            _ => None,
        }
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            None => write!(f, "({},{})", self.h, self.q),
            Some(k) => write!(f, "({},{},{})", self.h, self.q, k),
        }
    }
}

impl Serialize for Grading {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Grading {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i32>::deserialize(d)?;
        Grading::from_slice(&v).ok_or_else(|| serde::de::Error::custom("grading must have 2 or 3 entries"))
    }
}

/// Chain complex with basis elements of type `S`.
///
/// `diffs[g]` is the matrix of `d: C_g -> C_{g.shifted(step)}` with one
/// column per basis element of `C_g`; a missing target block gives a matrix
/// with zero rows.
#[derive(Clone, Debug)]
pub struct GradedComplex<S> {
    step: i32,
    blocks: BTreeMap<Grading, Vec<S>>,
    diffs: BTreeMap<Grading, F2Matrix>,
}

impl<S> GradedComplex<S> {
    pub fn from_parts(step: i32, blocks: BTreeMap<Grading, Vec<S>>, mut diffs: BTreeMap<Grading, F2Matrix>) -> Self {
        for (g, basis) in &blocks {
            let rows = blocks.get(&g.shifted(step)).map_or(0, Vec::len);
            let d = diffs.entry(*g).or_insert_with(|| F2Matrix::zeros(rows, basis.len()));
            assert_eq!((d.rows(), d.cols()), (rows, basis.len()), "bad shape at {g}");
        }
        Self { step, blocks, diffs }
    }

    pub fn step(&self) -> i32 {
        self.step
    }

    pub fn gradings(&self) -> impl Iterator<Item = &Grading> {
        self.blocks.keys()
    }

    pub fn blocks(&self) -> &BTreeMap<Grading, Vec<S>> {
        &self.blocks
    }

    pub fn basis(&self, g: &Grading) -> &[S] {
        self.blocks.get(g).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, g: &Grading) -> usize {
        self.basis(g).len()
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(Vec::len).sum()
    }

    /// Outgoing differential of block `g`.
    pub fn differential(&self, g: &Grading) -> Option<&F2Matrix> {
        self.diffs.get(g)
    }

    pub fn differential_mut(&mut self, g: &Grading) -> Option<&mut F2Matrix> {
        self.diffs.get_mut(g)
    }

    /// Differential arriving at block `g`.
    pub fn incoming(&self, g: &Grading) -> Option<&F2Matrix> {
        self.diffs.get(&g.shifted(-self.step))
    }

    /// Gradings where `d ∘ d` is nonzero.
    pub fn d_squared_violations(&self) -> Vec<Grading> {
        self.diffs
            .iter()
            .filter_map(|(g, d)| {
                let next = self.diffs.get(&g.shifted(self.step))?;
                (!next.mul(d).is_zero()).then_some(*g)
            })
            .collect()
    }

    /// `ker d` inside `C_g`.
    pub fn cycles(&self, g: &Grading) -> F2Subspace {
        match self.diffs.get(g) {
            Some(d) => f2linalg::kernel(d),
            None => F2Subspace::full(self.dim(g)),
        }
    }

    /// `im d` inside `C_g`.
    pub fn boundaries(&self, g: &Grading) -> F2Subspace {
        match self.incoming(g) {
            Some(d) => f2linalg::image(d),
            None => F2Subspace::zero(self.dim(g)),
        }
    }

    pub fn chain_dims(&self) -> BTreeMap<Grading, usize> {
        self.blocks.iter().map(|(g, b)| (*g, b.len())).collect()
    }

    /// `Σ (-1)^h q^q dim C_g`, summing over any third grading.
    pub fn chain_euler_polynomial(&self) -> LaurentPoly {
        euler_of(self.chain_dims().into_iter())
    }
}

impl<S: Clone + Eq + Hash + Send + Sync> GradedComplex<S> {
    /// Assembles a complex from blocks and a term generator: `terms(g, s)`
    /// lists the basis elements of block `g.shifted(step)` occurring in
    /// `d(s)`; repeated terms cancel mod 2.
    pub fn assemble<F>(step: i32, blocks: BTreeMap<Grading, Vec<S>>, terms: F) -> Result<Self>
    where
        F: Fn(&Grading, &S) -> Vec<S> + Sync,
    {
        let index: HashMap<&S, usize> = blocks
            .values()
            .flat_map(|b| b.iter().enumerate().map(|(i, s)| (s, i)))
            .collect();
        let diffs = blocks
            .par_iter()
            .map(|(g, basis)| {
                let tgt = g.shifted(step);
                let tgt_basis = blocks.get(&tgt).map_or(&[][..], Vec::as_slice);
                let mut entries = Vec::new();
                for (col, s) in basis.iter().enumerate() {
                    for t in terms(g, s) {
                        match index.get(&t) {
                            Some(&row) if tgt_basis.get(row) == Some(&t) => entries.push((row, col)),
                            _ => return Err(Error::Grading(format!("term from {g}"))),
                        }
                    }
                }
                Ok((*g, F2Matrix::from_entries(tgt_basis.len(), basis.len(), entries)))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self::from_parts(step, blocks, diffs))
    }
}

pub(crate) fn euler_of(dims: impl Iterator<Item = (Grading, usize)>) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (g, d) in dims {
        let sign = if g.h.rem_euclid(2) == 0 { 1 } else { -1 };
        p.add_term(sign * d as i64, g.q);
    }
    p
}

/// GF(2) dimensions of homology, keyed by grading; only nonzero entries are
/// stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HomologyTable {
    entries: BTreeMap<Grading, usize>,
}

impl HomologyTable {
    pub fn from_dims(dims: impl IntoIterator<Item = (Grading, usize)>) -> Self {
        Self {
            entries: dims.into_iter().filter(|(_, d)| *d > 0).collect(),
        }
    }

    pub fn get(&self, g: &Grading) -> usize {
        self.entries.get(g).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Grading, &usize)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn euler_polynomial(&self) -> LaurentPoly {
        euler_of(self.entries.iter().map(|(g, d)| (*g, *d)))
    }

    /// Text form: entries ordered by `h`, then by decreasing inner gradings,
    /// e.g. `(0,1):1 (0,-1):1`.
    pub fn to_table_string(&self) -> String {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by(|(a, _), (b, _)| a.h.cmp(&b.h).then(b.q.cmp(&a.q)).then(b.k.cmp(&a.k)));
        v.iter().map(|(g, d)| format!("{g}:{d}")).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Serialize, Deserialize)]
struct TableEntry {
    grading: Grading,
    dim: usize,
}

impl Serialize for HomologyTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TableEntry> = self
            .entries
            .iter()
            .map(|(g, d)| TableEntry { grading: *g, dim: *d })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomologyTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TableEntry>::deserialize(d)?;
        Ok(HomologyTable::from_dims(v.into_iter().map(|e| (e.grading, e.dim))))
    }
}

/// Homology of a complex, one grading at a time. Blocks are independent, so
/// ranks are computed in parallel on the current rayon pool.
pub fn homology<S: Sync>(c: &GradedComplex<S>) -> HomologyTable {
    let ranks: HashMap<Grading, usize> = c.diffs.par_iter().map(|(g, d)| (*g, d.rank())).collect();
    HomologyTable::from_dims(c.blocks.iter().map(|(g, b)| {
        let out = ranks.get(g).copied().unwrap_or(0);
        let inc = ranks.get(&g.shifted(-c.step)).copied().unwrap_or(0);
        (*g, b.len() - out - inc)
    }))
}

/// A map of complexes given by one matrix per source grading, shifting
/// `(h, q)` by a fixed amount and preserving any third grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub shift: (i32, i32),
    pub blocks: BTreeMap<Grading, F2Matrix>,
}

impl ChainMap {
    pub fn target(&self, g: &Grading) -> Grading {
        Grading {
            h: g.h + self.shift.0,
            q: g.q + self.shift.1,
            k: g.k,
        }
    }

    /// Builds the map from a term generator: `f(g, s)` lists the basis
    /// elements of `dst` at `target(g)` in the image of `s`.
    pub fn from_terms<S, T, F>(src: &GradedComplex<S>, dst: &GradedComplex<T>, shift: (i32, i32), f: F) -> Result<Self>
    where
        S: Sync,
        T: Eq + Hash + Sync,
        F: Fn(&Grading, &S) -> Vec<T> + Sync,
    {
        let mut map = Self {
            shift,
            blocks: BTreeMap::new(),
        };
        let blocks = src
            .blocks
            .par_iter()
            .map(|(g, basis)| {
                let tg = map.target(g);
                let tgt = dst.basis(&tg);
                let index: HashMap<&T, usize> = tgt.iter().enumerate().map(|(i, t)| (t, i)).collect();
                let mut entries = Vec::new();
                for (col, s) in basis.iter().enumerate() {
                    for t in f(g, s) {
                        let row = *index
                            .get(&t)
                            .ok_or_else(|| Error::Grading(format!("map term from {g} misses {tg}")))?;
                        entries.push((row, col));
                    }
                }
                Ok((*g, F2Matrix::from_entries(tgt.len(), basis.len(), entries)))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        map.blocks = blocks;
        Ok(map)
    }

    /// Block of the map at source grading `g` (zero when not stored).
    pub fn matrix<S, T>(&self, src: &GradedComplex<S>, dst: &GradedComplex<T>, g: &Grading) -> F2Matrix {
        self.blocks
            .get(g)
            .cloned()
            .unwrap_or_else(|| F2Matrix::zeros(dst.dim(&self.target(g)), src.dim(g)))
    }

    /// Source gradings where `d ∘ f != f ∘ d`.
    pub fn commutation_violations<S, T>(&self, src: &GradedComplex<S>, dst: &GradedComplex<T>) -> Vec<Grading> {
        assert_eq!(src.step, dst.step, "complexes differ in direction");
        let dmat = |c_rows: usize, c_cols: usize, d: Option<&F2Matrix>| {
            d.cloned().unwrap_or_else(|| F2Matrix::zeros(c_rows, c_cols))
        };
        src.blocks
            .keys()
            .filter(|g| {
                let tg = self.target(g);
                let next = g.shifted(src.step);
                let d_dst = dmat(dst.dim(&tg.shifted(dst.step)), dst.dim(&tg), dst.differential(&tg));
                let d_src = dmat(src.dim(&next), src.dim(g), src.differential(g));
                let lhs = d_dst.mul(&self.matrix(src, dst, g));
                let rhs = self.matrix(src, dst, &next).mul(&d_src);
                lhs != rhs
            })
            .copied()
            .collect()
    }

    /// `self ∘ first`.
    pub fn compose<S, T, U>(
        &self,
        first: &ChainMap,
        src: &GradedComplex<S>,
        mid: &GradedComplex<T>,
        dst: &GradedComplex<U>,
    ) -> ChainMap {
        let shift = (self.shift.0 + first.shift.0, self.shift.1 + first.shift.1);
        let blocks = src
            .blocks
            .keys()
            .map(|g| {
                let a = first.matrix(src, mid, g);
                let b = self.matrix(mid, dst, &first.target(g));
                (*g, b.mul(&a))
            })
            .collect();
        ChainMap { shift, blocks }
    }

    /// Matrix of the induced map `H_g(src) -> H_target(g)(dst)`.
    pub fn induced<S, T>(&self, src: &GradedComplex<S>, dst: &GradedComplex<T>, g: &Grading) -> Result<F2Matrix> {
        let tg = self.target(g);
        f2linalg::matrix_between_quotients(
            &self.matrix(src, dst, g),
            &src.cycles(g),
            &src.boundaries(g),
            &dst.cycles(&tg),
            &dst.boundaries(&tg),
        )
    }

    /// Whether every induced map on homology is square and invertible.
    pub fn is_quasi_isomorphism<S: Sync, T: Sync>(
        &self,
        src: &GradedComplex<S>,
        dst: &GradedComplex<T>,
    ) -> Result<bool> {
        let hs = homology(src);
        let hd = homology(dst);
        if hs.total_dim() != hd.total_dim() {
            return Ok(false);
        }
        for (g, &dim) in hs.iter() {
            let m = self.induced(src, dst, g)?;
            if m.rows() != dim || m.cols() != dim || m.rank() != dim {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
