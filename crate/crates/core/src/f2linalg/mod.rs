//! Linear algebra over GF(2).
//!
//! Matrices are dense bit-packed rows; sparse position lists are only used to
//! build them. Every elimination picks the smallest available column as its
//! pivot, so all bases returned here are reproducible.

mod bits;
mod echelon;
mod matrix;
mod subspace;

pub use bits::BitRow;
pub use matrix::F2Matrix;
pub use subspace::F2Subspace;

use crate::error::{Error, Result};
use echelon::{Coordinates, Echelon};

pub fn rank(m: &F2Matrix) -> usize {
    m.rank()
}

/// `{v : m v = 0}` as a subspace of GF(2)^cols.
pub fn kernel(m: &F2Matrix) -> F2Subspace {
    let mut ech = Echelon::new(m.cols());
    for r in 0..m.rows() {
        ech.insert(m.row(r).clone());
    }
    let rref = ech.into_rref();
    let pivots: Vec<usize> = rref.iter().map(|r| r.lowest_set().unwrap()).collect();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..m.cols()).filter(|&f| !is_pivot[f]).map(|f| {
        let mut v = BitRow::unit(m.cols(), f);
        for (row, &p) in rref.iter().zip(&pivots) {
            if row.get(f) {
                v.set(p, true);
            }
        }
        v
    });
    F2Subspace::span(m.cols(), vectors)
}

/// Column space of `m` as a subspace of GF(2)^rows.
pub fn image(m: &F2Matrix) -> F2Subspace {
    let t = m.transpose();
    F2Subspace::span(m.rows(), (0..t.rows()).map(|r| t.row(r).clone()))
}

/// Vectors of `sup` extending a basis of `sub` to a basis of `sup`; one
/// representative per basis vector of the quotient `sup / sub`.
pub fn quotient_basis(sub: &F2Subspace, sup: &F2Subspace) -> Result<Vec<BitRow>> {
    if sub.ambient_dim() != sup.ambient_dim() {
        return Err(Error::Subspace(format!(
            "ambient dimensions differ ({} vs {})",
            sub.ambient_dim(),
            sup.ambient_dim()
        )));
    }
    if !sub.is_subspace_of(sup) {
        return Err(Error::Subspace("sub is not contained in super".into()));
    }
    let mut ech = Echelon::new(sup.ambient_dim());
    for v in sub.basis() {
        ech.insert(v.clone());
    }
    Ok(sup
        .basis()
        .iter()
        .filter(|v| ech.insert((*v).clone()))
        .cloned()
        .collect())
}

/// Matrix of the map induced by `m` from `src_cycles / src_boundaries` to
/// `dst_cycles / dst_boundaries`, in the representative bases returned by
/// [`quotient_basis`].
pub fn matrix_between_quotients(
    m: &F2Matrix,
    src_cycles: &F2Subspace,
    src_boundaries: &F2Subspace,
    dst_cycles: &F2Subspace,
    dst_boundaries: &F2Subspace,
) -> Result<F2Matrix> {
    if m.cols() != src_cycles.ambient_dim() || m.rows() != dst_cycles.ambient_dim() {
        return Err(Error::Subspace(format!(
            "map is {}x{} but spaces have dimensions {} -> {}",
            m.rows(),
            m.cols(),
            src_cycles.ambient_dim(),
            dst_cycles.ambient_dim()
        )));
    }
    let src_reps = quotient_basis(src_boundaries, src_cycles)?;
    let dst_reps = quotient_basis(dst_boundaries, dst_cycles)?;
    if !src_cycles.basis().iter().all(|z| dst_cycles.contains(&m.mul_vec(z))) {
        return Err(Error::Subspace("map does not send cycles to cycles".into()));
    }
    if !src_boundaries
        .basis()
        .iter()
        .all(|b| dst_boundaries.contains(&m.mul_vec(b)))
    {
        return Err(Error::Subspace("map does not send boundaries to boundaries".into()));
    }
    let nb = dst_boundaries.dim();
    let mut coords_basis = dst_boundaries.basis().to_vec();
    coords_basis.extend(dst_reps.iter().cloned());
    let coords = Coordinates::new(dst_cycles.ambient_dim(), &coords_basis);
    let columns: Vec<BitRow> = src_reps
        .iter()
        .map(|r| {
            let x = coords
                .solve(&m.mul_vec(r))
                .expect("image of a cycle lies in the cycle space");
            BitRow::from_indices(dst_reps.len(), x.ones().filter(|&i| i >= nb).map(|i| i - nb))
        })
        .collect();
    Ok(F2Matrix::from_columns(dst_reps.len(), &columns))
}

/// Matrix of the map `m` induces on `cycles / boundaries`.
pub fn matrix_of_map_on_quotient(m: &F2Matrix, cycles: &F2Subspace, boundaries: &F2Subspace) -> Result<F2Matrix> {
    matrix_between_quotients(m, cycles, boundaries, cycles, boundaries)
}
