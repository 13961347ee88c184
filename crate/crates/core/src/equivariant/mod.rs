//! Quotients of graded complexes by a cyclic group acting on basis elements.
//!
//! Everything here is generic over the basis type: the action is a function
//! on basis elements that must preserve gradings and commute with the
//! differential. Khovanov-specific entry points live in [`kh`].

pub mod kh;

pub use kh::{compare_with_fixed_points, khovanov_equivariant, symmetric_r1_check, SymmetricR1Report};

use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::Hash;

use crate::complex::{homology, ChainMap, GradedComplex, Grading, HomologyTable};
use crate::error::{Error, Result};
use crate::f2linalg::{self, F2Matrix};
use crate::LaurentPoly;

/// Rejects even group orders unless explicitly allowed.
pub fn require_odd(p: usize, allow_even: bool) -> Result<()> {
    if p % 2 == 1 {
        Ok(())
    } else if allow_even {
        log::warn!("group order {p} is even; the invariance theorems do not apply");
        Ok(())
    } else {
        Err(Error::EvenOrder { p })
    }
}

/// An orbit of basis elements; `members[0]` is the smallest element and
/// the representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit<S> {
    pub members: Vec<S>,
}

impl<S> Orbit<S> {
    pub fn rep(&self) -> &S {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Per-grading permutation matrices of the action.
pub fn action_matrices<S, F>(c: &GradedComplex<S>, act: &F) -> Result<BTreeMap<Grading, F2Matrix>>
where
    S: Eq + Hash,
    F: Fn(&S) -> S,
{
    let mut out = BTreeMap::new();
    for (g, basis) in c.blocks() {
        let index: HashMap<&S, usize> = basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut perm = Vec::with_capacity(basis.len());
        for s in basis {
            let t = act(s);
            match index.get(&t) {
                Some(&i) => perm.push(i),
                None => {
                    return Err(Error::InvalidAction(format!(
                        "action moves a basis element out of grading {g}"
                    )))
                }
            }
        }
        let mut seen = vec![false; perm.len()];
        if perm.iter().any(|&i| std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidAction(format!("action is not injective in grading {g}")));
        }
        out.insert(*g, F2Matrix::permutation(&perm));
    }
    Ok(out)
}

/// Gradings `g` where `d ∘ φ != φ ∘ d` on `C_g`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub violations: Vec<Grading>,
}

impl EquivarianceReport {
    pub fn commutes(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_equivariance<S, F>(c: &GradedComplex<S>, act: &F) -> Result<EquivarianceReport>
where
    S: Eq + Hash,
    F: Fn(&S) -> S,
{
    let phi = action_matrices(c, act)?;
    let map = ChainMap {
        shift: (0, 0),
        blocks: phi,
    };
    Ok(EquivarianceReport {
        violations: map.commutation_violations(c, c),
    })
}

/// Orbits of `act` on each block, ordered by representative.
pub fn orbits<S, F>(c: &GradedComplex<S>, p: usize, act: &F) -> Result<BTreeMap<Grading, Vec<Orbit<S>>>>
where
    S: Clone + Ord + Hash,
    F: Fn(&S) -> S,
{
    let mut out = BTreeMap::new();
    for (g, basis) in c.blocks() {
        let mut assigned: HashSet<S> = HashSet::new();
        let mut list = Vec::new();
        for s in basis {
            if assigned.contains(s) {
                continue;
            }
            let mut members = vec![s.clone()];
            let mut cur = act(s);
            while cur != *s {
                if members.len() >= p {
                    return Err(Error::InvalidAction(format!(
                        "orbit in grading {g} is longer than the group order {p}"
                    )));
                }
                members.push(cur.clone());
                cur = act(&cur);
            }
            if !p.is_multiple_of(members.len()) {
                return Err(Error::InvalidAction(format!(
                    "orbit of size {} does not divide {p}",
                    members.len()
                )));
            }
            assigned.extend(members.iter().cloned());
            members.sort();
            list.push(Orbit { members });
        }
        list.sort_by(|a, b| a.rep().cmp(b.rep()));
        out.insert(*g, list);
    }
    Ok(out)
}

/// The quotient complex together with the data needed to compare it with
/// the covering complex.
#[derive(Clone, Debug)]
pub struct EquivariantComplex<S> {
    pub underlying: GradedComplex<S>,
    pub p: usize,
    pub orbits: BTreeMap<Grading, Vec<Orbit<S>>>,
    /// Basis elements are orbit representatives.
    pub quotient: GradedComplex<S>,
    /// `π: C -> C̄`, each basis element to its orbit class.
    pub projection: ChainMap,
    /// Permutation matrices of the generator on `C`.
    pub action: BTreeMap<Grading, F2Matrix>,
}

/// Builds `C̄ = C / (1 + φ)`: `d̄(O) = π(d(rep O))`, with coefficients
/// folded per orbit class mod 2.
pub fn quotient_complex<S, F>(c: GradedComplex<S>, p: usize, act: &F) -> Result<EquivariantComplex<S>>
where
    S: Clone + Ord + Hash + Send + Sync,
    F: Fn(&S) -> S,
{
    if p < 1 {
        return Err(Error::InvalidAction("group order must be at least 1".into()));
    }
    let report = check_equivariance(&c, act)?;
    if !report.commutes() {
        return Err(Error::Equivariance {
            count: report.violations.len(),
        });
    }
    let action = action_matrices(&c, act)?;
    let orbits = orbits(&c, p, act)?;
    let mut class_of: HashMap<&S, usize> = HashMap::new();
    for list in orbits.values() {
        for (k, o) in list.iter().enumerate() {
            for m in &o.members {
                class_of.insert(m, k);
            }
        }
    }
    let blocks: BTreeMap<Grading, Vec<S>> = orbits
        .iter()
        .map(|(g, list)| (*g, list.iter().map(|o| o.rep().clone()).collect()))
        .collect();
    let mut diffs = BTreeMap::new();
    for (g, list) in &orbits {
        let tg = g.shifted(c.step());
        let rows = orbits.get(&tg).map_or(0, Vec::len);
        let mut entries = Vec::new();
        if let Some(d) = c.differential(g) {
            let basis = c.basis(g);
            let tgt = c.basis(&tg);
            let pos: HashMap<&S, usize> = basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
            for (col, o) in list.iter().enumerate() {
                let j = pos[o.rep()];
                for r in d.column(j).ones() {
                    entries.push((class_of[&tgt[r]], col));
                }
            }
        }
        diffs.insert(*g, F2Matrix::from_entries(rows, list.len(), entries));
    }
    let quotient = GradedComplex::from_parts(c.step(), blocks, diffs);
    let projection = ChainMap {
        shift: (0, 0),
        blocks: c
            .blocks()
            .iter()
            .map(|(g, basis)| {
                let entries = basis.iter().enumerate().map(|(i, s)| (class_of[s], i));
                (*g, F2Matrix::from_entries(quotient.dim(g), basis.len(), entries))
            })
            .collect(),
    };
    Ok(EquivariantComplex {
        underlying: c,
        p,
        orbits,
        quotient,
        projection,
        action,
    })
}

impl<S: Sync> EquivariantComplex<S> {
    pub fn homology(&self) -> HomologyTable {
        homology(&self.quotient)
    }

    /// Quotient dimension per grading (the number of orbits).
    pub fn orbit_counts(&self) -> BTreeMap<Grading, usize> {
        self.orbits.iter().map(|(g, l)| (*g, l.len())).collect()
    }
}

pub fn equivariant_homology<S: Sync>(e: &EquivariantComplex<S>) -> HomologyTable {
    e.homology()
}

/// `Σ (-1)^i q^j dim H_G^{i,j}`.
pub fn equivariant_jones(h: &HomologyTable) -> LaurentPoly {
    h.euler_polynomial()
}

#[derive(Clone, Debug)]
pub struct TransferReport {
    /// `t: C̄ -> C`, `t(O) = (p/|O|) Σ_{S ∈ O} S`.
    pub transfer: ChainMap,
    pub projection: ChainMap,
    pub transfer_is_chain_map: bool,
    pub projection_is_chain_map: bool,
    /// Gradings where `π ∘ t` differs from the identity.
    pub not_identity: Vec<Grading>,
}

impl TransferReport {
    pub fn passed(&self) -> bool {
        self.transfer_is_chain_map && self.projection_is_chain_map && self.not_identity.is_empty()
    }
}

pub fn transfer_and_projection<S>(e: &EquivariantComplex<S>, allow_even: bool) -> Result<TransferReport>
where
    S: Clone + Eq + Hash + Sync,
{
    require_odd(e.p, allow_even)?;
    let mut blocks = BTreeMap::new();
    for (g, list) in &e.orbits {
        let basis = e.underlying.basis(g);
        let pos: HashMap<&S, usize> = basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut entries = Vec::new();
        for (col, o) in list.iter().enumerate() {
            if (e.p / o.len()) % 2 == 1 {
                entries.extend(o.members.iter().map(|m| (pos[m], col)));
            }
        }
        blocks.insert(*g, F2Matrix::from_entries(basis.len(), list.len(), entries));
    }
    let transfer = ChainMap { shift: (0, 0), blocks };
    let mut not_identity = Vec::new();
    for g in e.quotient.gradings() {
        let pt =
            e.projection
                .matrix(&e.underlying, &e.quotient, g)
                .mul(&transfer.matrix(&e.quotient, &e.underlying, g));
        if pt != F2Matrix::identity(e.quotient.dim(g)) {
            not_identity.push(*g);
        }
    }
    Ok(TransferReport {
        transfer_is_chain_map: transfer.commutation_violations(&e.quotient, &e.underlying).is_empty(),
        projection_is_chain_map: e
            .projection
            .commutation_violations(&e.underlying, &e.quotient)
            .is_empty(),
        transfer,
        projection: e.projection.clone(),
        not_identity,
    })
}

/// Matrix of `φ_*` on each nonzero homology group, in the coset basis of
/// [`f2linalg::quotient_basis`].
pub fn induced_action_on_homology<S, F>(c: &GradedComplex<S>, act: &F) -> Result<BTreeMap<Grading, F2Matrix>>
where
    S: Eq + Hash + Sync,
    F: Fn(&S) -> S,
{
    let phi = ChainMap {
        shift: (0, 0),
        blocks: action_matrices(c, act)?,
    };
    let h = homology(c);
    let mut out = BTreeMap::new();
    for (g, _) in h.iter() {
        out.insert(*g, phi.induced(c, c, g)?);
    }
    Ok(out)
}

/// `dim ker(φ_* - id)` per grading.
pub fn fixed_subspace_dims(phi_star: &BTreeMap<Grading, F2Matrix>) -> HomologyTable {
    HomologyTable::from_dims(phi_star.iter().map(|(g, m)| {
        let diff = m.add(&F2Matrix::identity(m.rows()));
        (*g, m.rows() - diff.rank())
    }))
}

/// Per-grading comparison of equivariant homology with the fixed subspace
/// of the induced action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointReport {
    pub p: usize,
    pub equivariant: HomologyTable,
    pub fixed: HomologyTable,
    pub homology: HomologyTable,
    pub mismatches: Vec<Grading>,
}

impl FixedPointReport {
    pub fn new(p: usize, equivariant: HomologyTable, fixed: HomologyTable, homology: HomologyTable) -> Self {
        let mut keys: Vec<Grading> = equivariant.iter().map(|(g, _)| *g).collect();
        keys.extend(fixed.iter().map(|(g, _)| *g));
        keys.sort();
        keys.dedup();
        let mismatches = keys
            .into_iter()
            .filter(|g| equivariant.get(g) != fixed.get(g))
            .collect();
        Self {
            p,
            equivariant,
            fixed,
            homology,
            mismatches,
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Fixed-point comparison for any complex with a cyclic action.
pub fn compare_fixed_points<S, F>(
    c: GradedComplex<S>,
    p: usize,
    act: &F,
    allow_even: bool,
) -> Result<(EquivariantComplex<S>, FixedPointReport)>
where
    S: Clone + Ord + Hash + Send + Sync,
    F: Fn(&S) -> S,
{
    require_odd(p, allow_even)?;
    let fixed = fixed_subspace_dims(&induced_action_on_homology(&c, act)?);
    let e = quotient_complex(c, p, act)?;
    let report = FixedPointReport::new(p, e.homology(), fixed, homology(&e.underlying));
    Ok((e, report))
}

/// Kernel dimension of `m - id`, exposed for callers holding raw matrices.
pub fn fixed_dim(m: &F2Matrix) -> usize {
    f2linalg::kernel(&m.add(&F2Matrix::identity(m.rows()))).dim()
}
