use std::collections::{BTreeMap, HashMap};

use crate::complex::{ChainMap, HomologyTable};
use crate::diagram::{add_symmetric_kinks, CyclicAction, LinkDiagram};
use crate::error::Result;
use crate::f2linalg::F2Matrix;
use crate::khovanov::{r1_chain_map, EnhancedState, Flavor, KhOptions, StateSpace};

use super::{action_matrices, compare_fixed_points, quotient_complex, EquivariantComplex, FixedPointReport};

/// The quotient of the Khovanov complex of `d` by `a`.
pub fn khovanov_equivariant(
    d: &LinkDiagram,
    a: &CyclicAction,
    flavor: Flavor,
    opts: &KhOptions,
) -> Result<EquivariantComplex<EnhancedState>> {
    let space = StateSpace::new(d, opts)?;
    let c = space.complex(flavor)?;
    quotient_complex(c, a.order(), &|s: &EnhancedState| space.act(a, s))
}

/// Equivariant homology against the fixed subspace of the induced action,
/// grading by grading.
pub fn compare_with_fixed_points(
    d: &LinkDiagram,
    a: &CyclicAction,
    flavor: Flavor,
    opts: &KhOptions,
    allow_even: bool,
) -> Result<(EquivariantComplex<EnhancedState>, FixedPointReport)> {
    let space = StateSpace::new(d, opts)?;
    let c = space.complex(flavor)?;
    compare_fixed_points(c, a.order(), &|s: &EnhancedState| space.act(a, s), allow_even)
}

#[derive(Clone, Debug)]
pub struct SymmetricR1Report {
    pub after: LinkDiagram,
    pub after_action: CyclicAction,
    /// Each single-kink map is a quasi-isomorphism.
    pub steps_passed: bool,
    /// The composite commutes with the two actions.
    pub equivariant: bool,
    /// The induced map of quotient complexes commutes with `d̄`.
    pub quotient_commutes: bool,
    pub quotient_quasi_isomorphism: bool,
    pub before_table: HomologyTable,
    pub after_table: HomologyTable,
}

impl SymmetricR1Report {
    pub fn passed(&self) -> bool {
        self.steps_passed
            && self.equivariant
            && self.quotient_commutes
            && self.quotient_quasi_isomorphism
            && self.before_table == self.after_table
    }
}

/// Adds a positive kink along the orbit of `arc` and checks the composite
/// R1 map `h`, its equivariance and the map it induces on quotients.
pub fn symmetric_r1_check(d: &LinkDiagram, a: &CyclicAction, arc: u32, opts: &KhOptions) -> Result<SymmetricR1Report> {
    let (chain, after_action) = add_symmetric_kinks(d, a, arc)?;
    let n = d.crossing_count();
    let mut steps = Vec::with_capacity(a.order());
    for k in 0..a.order() {
        steps.push(r1_chain_map(&chain[k], &chain[k + 1], n + k, opts)?);
    }
    let steps_passed = steps.iter().all(|r| r.passed());
    let src = &steps[0].before;
    let mut h = steps[0].map.clone();
    for step in &steps[1..] {
        h = step.map.compose(&h, src, &step.before, &step.after);
    }
    let dst = &steps.last().expect("p >= 1").after;
    let after = chain.last().expect("nonempty").clone();

    let sb = StateSpace::new(d, opts)?;
    let sa = StateSpace::new(&after, opts)?;
    let act_b = |s: &EnhancedState| sb.act(a, s);
    let act_a = |s: &EnhancedState| sa.act(&after_action, s);
    let phi_b = ChainMap {
        shift: (0, 0),
        blocks: action_matrices(src, &act_b)?,
    };
    let phi_a = ChainMap {
        shift: (0, 0),
        blocks: action_matrices(dst, &act_a)?,
    };
    let equivariant = src.gradings().all(|g| {
        h.compose(&phi_b, src, src, dst).matrix(src, dst, g) == phi_a.compose(&h, src, dst, dst).matrix(src, dst, g)
    });

    let eb = quotient_complex(src.clone(), a.order(), &act_b)?;
    let ea = quotient_complex(dst.clone(), a.order(), &act_a)?;
    let section = ChainMap {
        shift: (0, 0),
        blocks: eb
            .quotient
            .blocks()
            .iter()
            .map(|(g, reps)| {
                let basis = src.basis(g);
                let pos: HashMap<&EnhancedState, usize> = basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
                let entries = reps.iter().enumerate().map(|(col, r)| (pos[r], col));
                (*g, F2Matrix::from_entries(basis.len(), reps.len(), entries))
            })
            .collect::<BTreeMap<_, _>>(),
    };
    let h_bar = ea.projection.compose(
        &h.compose(&section, &eb.quotient, src, dst),
        &eb.quotient,
        dst,
        &ea.quotient,
    );
    let quotient_commutes = h_bar.commutation_violations(&eb.quotient, &ea.quotient).is_empty();
    let quotient_quasi_isomorphism = quotient_commutes && h_bar.is_quasi_isomorphism(&eb.quotient, &ea.quotient)?;
    Ok(SymmetricR1Report {
        before_table: eb.homology(),
        after_table: ea.homology(),
        after,
        after_action,
        steps_passed,
        equivariant,
        quotient_commutes,
        quotient_quasi_isomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Grading;
    use crate::diagram::{lift_fundamental_domain, Tangle};
    use crate::equivariant::{fixed_subspace_dims, induced_action_on_homology, transfer_and_projection};

    fn opts() -> KhOptions {
        KhOptions::default()
    }

    fn unlink3() -> (LinkDiagram, CyclicAction) {
        let d = LinkDiagram::unlink(3);
        let a = CyclicAction::new(&d, 3, vec![], &BTreeMap::from([(1, 2), (2, 3), (3, 1)])).unwrap();
        (d, a)
    }

    fn trefoil() -> (LinkDiagram, CyclicAction) {
        let t = Tangle::new(vec![[1, 2, 3, 4]], vec![], vec![1, 4], vec![2, 3]).unwrap();
        lift_fundamental_domain(&t, 3).unwrap()
    }

    fn table(entries: &[((i32, i32), usize)]) -> HomologyTable {
        HomologyTable::from_dims(entries.iter().map(|&((h, q), d)| (Grading::new(h, q), d)))
    }

    #[test]
    fn unlink_example() {
        let (d, a) = unlink3();
        let (e, r) = compare_with_fixed_points(&d, &a, Flavor::Oriented, &opts(), false).unwrap();
        let ones = table(&[((0, 3), 1), ((0, 1), 1), ((0, -1), 1), ((0, -3), 1)]);
        assert_eq!(r.equivariant, ones);
        assert_eq!(r.fixed, ones);
        assert!(r.passed());
        assert_eq!(e.homology().euler_polynomial().to_string(), "q^3+q+q^-1+q^-3");
        assert!(transfer_and_projection(&e, false).unwrap().passed());
        // φ_* on H^{0,1} is a 3-cycle permutation matrix.
        let space = StateSpace::new(&d, &opts()).unwrap();
        let phi = induced_action_on_homology(&e.underlying, &|s: &EnhancedState| space.act(&a, s)).unwrap();
        let m = &phi[&Grading::new(0, 1)];
        assert_eq!(m.rows(), 3);
        assert_eq!(m.nnz(), 3);
        assert_eq!(m.mul(m).mul(m), F2Matrix::identity(3));
        assert_ne!(*m, F2Matrix::identity(3));
    }

    #[test]
    fn trefoil_example() {
        let (d, a) = trefoil();
        let (e, r) = compare_with_fixed_points(&d, &a, Flavor::Oriented, &opts(), false).unwrap();
        let expected = table(&[
            ((0, 1), 1),
            ((0, 3), 1),
            ((2, 5), 1),
            ((2, 7), 1),
            ((3, 7), 1),
            ((3, 9), 1),
        ]);
        assert_eq!(r.equivariant, expected);
        assert_eq!(r.homology, expected);
        assert!(r.passed());
        assert_eq!(e.homology().euler_polynomial().to_string(), "-q^9+q^5+q^3+q");
        assert!(transfer_and_projection(&e, false).unwrap().passed());
    }

    #[test]
    fn identity_action_gives_ordinary_homology() {
        let (d, _) = trefoil();
        let id = CyclicAction::identity(&d);
        let e = khovanov_equivariant(&d, &id, Flavor::Oriented, &opts()).unwrap();
        assert_eq!(e.homology(), crate::complex::homology(&e.underlying));
        let space = StateSpace::new(&d, &opts()).unwrap();
        let phi = induced_action_on_homology(&e.underlying, &|s: &EnhancedState| space.act(&id, s)).unwrap();
        assert_eq!(fixed_subspace_dims(&phi), e.homology());
    }

    #[test]
    fn corrupted_quotient_differential_is_detected() {
        let (d, a) = trefoil();
        let (mut e, r) = compare_with_fixed_points(&d, &a, Flavor::Oriented, &opts(), false).unwrap();
        let g = *e
            .quotient
            .gradings()
            .find(|g| e.quotient.differential(g).is_some_and(|m| !m.is_zero()))
            .unwrap();
        let m = e.quotient.differential_mut(&g).unwrap();
        *m = F2Matrix::zeros(m.rows(), m.cols());
        let bad = FixedPointReport::new(3, e.homology(), r.fixed.clone(), r.homology.clone());
        assert!(!bad.passed());
    }

    #[test]
    fn symmetric_kinks_on_trefoil_and_unlink() {
        let (d, a) = trefoil();
        let r = symmetric_r1_check(&d, &a, 1, &opts()).unwrap();
        assert!(r.passed(), "{r:?}");
        let (u, b) = unlink3();
        let r = symmetric_r1_check(&u, &b, 1, &opts()).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
