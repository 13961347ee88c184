//! Homology of diagrams in the thickened annulus.
//!
//! A third grading `k` counts signs on essential circles: `+1` for each
//! essential `+` circle and `-1` for each essential `-` circle. The
//! differential is the framed Khovanov differential with every term that
//! changes `k` removed.

use std::collections::BTreeMap;

use log::warn;

use crate::complex::{homology, GradedComplex, Grading, HomologyTable};
use crate::diagram::{CyclicAction, LinkDiagram, Resolution};
use crate::equivariant::{quotient_complex, require_odd, EquivariantComplex};
use crate::error::{Error, Result};
use crate::khovanov::{EnhancedState, Flavor, KhOptions, StateSpace};
use crate::LaurentPoly;

/// An enhanced state together with its annular grading.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AnnularState {
    pub underlying: EnhancedState,
    pub k: i32,
}

#[derive(Clone, Debug)]
pub struct AnnularComplex {
    /// Keyed by `(framed p, framed q, k)`.
    pub complex: GradedComplex<EnhancedState>,
    /// Number of framed differential terms removed because they change `k`.
    pub dropped_terms: usize,
}

pub fn annular_k(r: &Resolution, signs: u64) -> i32 {
    (0..r.circle_count())
        .filter(|&i| r.is_essential(i))
        .map(|i| if signs >> i & 1 == 1 { -1 } else { 1 })
        .sum()
}

pub fn annular_state(space: &StateSpace, s: &EnhancedState) -> AnnularState {
    AnnularState {
        underlying: *s,
        k: annular_k(space.resolution(s.markers), s.signs),
    }
}

fn annular_grading(space: &StateSpace, s: &EnhancedState) -> Result<Grading> {
    let g = space.grading(s, Flavor::Framed)?;
    Ok(Grading::triple(g.h, g.q, annular_state(space, s).k))
}

fn require_rays(d: &LinkDiagram) -> Result<()> {
    if d.is_annular() {
        Ok(())
    } else {
        Err(Error::MissingRayData)
    }
}

fn build_from_space(space: &StateSpace) -> Result<AnnularComplex> {
    let d = space.diagram();
    require_rays(d)?;
    let wide = (0..1u32 << d.crossing_count()).any(|m| space.resolution(m).windings().iter().any(|w| w.abs() >= 2));
    if wide {
        warn!("some state circles wind more than once around the puncture; they are graded as essential");
    }
    let mut blocks: BTreeMap<Grading, Vec<EnhancedState>> = BTreeMap::new();
    for s in space.states() {
        blocks.entry(annular_grading(space, &s)?).or_default().push(s);
    }
    let dropped = std::sync::atomic::AtomicUsize::new(0);
    let complex = GradedComplex::assemble(Flavor::Framed.step(), blocks, |g, s| {
        let mut terms = space.differential_terms(s);
        let before = terms.len();
        terms.retain(|t| Some(annular_state(space, t).k) == g.k);
        dropped.fetch_add(before - terms.len(), std::sync::atomic::Ordering::Relaxed);
        terms
    })?;
    Ok(AnnularComplex {
        complex,
        dropped_terms: dropped.into_inner(),
    })
}

pub fn build_annular_complex(d: &LinkDiagram, opts: &KhOptions) -> Result<AnnularComplex> {
    require_rays(d)?;
    build_from_space(&StateSpace::new(d, opts)?)
}

pub fn annular_homology(c: &AnnularComplex) -> HomologyTable {
    homology(&c.complex)
}

/// Orbit quotient of the annular complex of `d` under `a`.
pub fn annular_quotient(
    d: &LinkDiagram,
    a: &CyclicAction,
    opts: &KhOptions,
    allow_even: bool,
) -> Result<EquivariantComplex<EnhancedState>> {
    require_odd(a.order(), allow_even)?;
    require_rays(d)?;
    let space = StateSpace::new(d, opts)?;
    let c = build_from_space(&space)?;
    quotient_complex(c.complex, a.order(), &|s: &EnhancedState| space.act(a, s))
}

pub fn equivariant_annular_homology(
    d: &LinkDiagram,
    a: &CyclicAction,
    opts: &KhOptions,
    allow_even: bool,
) -> Result<HomologyTable> {
    Ok(annular_quotient(d, a, opts, allow_even)?.homology())
}

/// `Σ (-1)^p q^q dim` for each value of `k`.
pub fn annular_euler(dims: impl IntoIterator<Item = (Grading, usize)>) -> BTreeMap<i32, LaurentPoly> {
    let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
    for (g, n) in dims {
        let sign = if g.h.rem_euclid(2) == 0 { 1 } else { -1 };
        out.entry(g.k.unwrap_or(0))
            .or_insert_with(LaurentPoly::zero)
            .add_term(sign * n as i64, g.q);
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// `d` with one more crossingless circle of winding zero.
pub fn adjoin_trivial_circle(d: &LinkDiagram) -> Result<LinkDiagram> {
    let mut loops = d.loops().to_vec();
    loops.push(d.max_label() + 1);
    LinkDiagram::new(d.crossings().to_vec(), loops, d.rays().clone(), true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{lift_fundamental_domain, parse_diagram, Tangle};
    use crate::khovanov::build_complex;

    fn opts() -> KhOptions {
        KhOptions::default()
    }

    fn k_dims(h: &HomologyTable) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (g, d) in h.iter() {
            *out.entry(g.k.unwrap()).or_insert(0) += d;
        }
        out
    }

    #[test]
    fn essential_and_trivial_circles() {
        let z = parse_diagram("O 1\nRAY 1 1\n").unwrap();
        let c = build_annular_complex(&z, &opts()).unwrap();
        assert_eq!(c.complex.total_dim(), 2);
        assert_eq!(k_dims(&annular_homology(&c)), BTreeMap::from([(-1, 1), (1, 1)]));

        let o = parse_diagram("O\nANNULAR\n").unwrap();
        let c = build_annular_complex(&o, &opts()).unwrap();
        assert_eq!(k_dims(&annular_homology(&c)), BTreeMap::from([(0, 2)]));

        let z2 = parse_diagram("O 1\nO 2\nRAY 1 1\nRAY 2 -1\n").unwrap();
        let h = annular_homology(&build_annular_complex(&z2, &opts()).unwrap());
        assert_eq!(k_dims(&h), BTreeMap::from([(-2, 1), (0, 2), (2, 1)]));
    }

    #[test]
    fn needs_ray_data() {
        assert!(matches!(
            build_annular_complex(&LinkDiagram::unknot(), &opts()),
            Err(Error::MissingRayData)
        ));
    }

    #[test]
    fn doubled_core_drops_k_changing_terms() {
        // One crossing on a curve winding twice: the +1 smoothing gives a
        // single trivial circle, the -1 smoothing two parallel essential ones.
        let d = parse_diagram("X 1 2 2 1\nRAY 1 1\nRAY 2 1\n").unwrap();
        let space = StateSpace::new(&d, &opts()).unwrap();
        let essential = |m: u32| {
            let r = space.resolution(m);
            (0..r.circle_count()).filter(|&i| r.is_essential(i)).count()
        };
        assert_eq!((essential(0), essential(1)), (0, 2));
        let c = build_annular_complex(&d, &opts()).unwrap();
        let full = build_complex(&d, Flavor::Framed, &opts()).unwrap();
        let nnz = |c: &GradedComplex<EnhancedState>| {
            c.gradings()
                .filter_map(|g| c.differential(g))
                .map(|m| m.nnz())
                .sum::<usize>()
        };
        assert!(c.dropped_terms > 0);
        assert_eq!(nnz(&c.complex) + c.dropped_terms, nnz(&full));
        for g in c.complex.gradings() {
            if c.complex.differential(g).is_some_and(|m| !m.is_zero()) {
                assert_eq!(g.k, Some(0));
            }
        }
        assert!(c.complex.d_squared_violations().is_empty());
    }

    #[test]
    fn disk_unknot_forgets_to_framed_homology() {
        let u = LinkDiagram::unknot();
        let (kinked, _, _) = u.add_positive_kink(1, None).unwrap();
        let d = LinkDiagram::new(kinked.crossings().to_vec(), vec![], BTreeMap::new(), true).unwrap();
        let h = annular_homology(&build_annular_complex(&d, &opts()).unwrap());
        let framed = homology(&build_complex(&d, Flavor::Framed, &opts()).unwrap());
        assert!(h.iter().all(|(g, _)| g.k == Some(0)));
        let forgotten = HomologyTable::from_dims(h.iter().map(|(g, n)| (Grading::new(g.h, g.q), *n)));
        assert_eq!(forgotten, framed);
    }

    #[test]
    fn chain_dims_sum_over_k() {
        let t = Tangle::braid(2, &[1, 1, -1]).unwrap();
        let (d, _) = lift_fundamental_domain(&t, 3).unwrap();
        let c = build_annular_complex(&d, &opts()).unwrap();
        assert!(c.complex.d_squared_violations().is_empty());
        let full = build_complex(&d, Flavor::Framed, &opts()).unwrap();
        let mut summed: BTreeMap<Grading, usize> = BTreeMap::new();
        for (g, n) in c.complex.chain_dims() {
            *summed.entry(Grading::new(g.h, g.q)).or_insert(0) += n;
        }
        assert_eq!(summed, full.chain_dims());
    }

    #[test]
    fn skein_relation_with_trivial_circle() {
        let t = Tangle::braid(2, &[1, 1]).unwrap();
        let (d, _) = lift_fundamental_domain(&t, 3).unwrap();
        let e1 = annular_euler(build_annular_complex(&d, &opts()).unwrap().complex.chain_dims());
        let d2 = adjoin_trivial_circle(&d).unwrap();
        let e2 = annular_euler(build_annular_complex(&d2, &opts()).unwrap().complex.chain_dims());
        // -A^2 - A^-2 with A = q.
        let factor = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
        let expected: BTreeMap<i32, LaurentPoly> = e1.iter().map(|(k, p)| (*k, p * &factor)).collect();
        assert_eq!(e2, expected);
    }

    #[test]
    fn three_essential_circles_quotient() {
        let d = parse_diagram("O 1\nO 2\nO 3\nRAY 1 1\nRAY 2 1\nRAY 3 1\n").unwrap();
        let a = CyclicAction::new(&d, 3, vec![], &BTreeMap::from([(1, 2), (2, 3), (3, 1)])).unwrap();
        let h = equivariant_annular_homology(&d, &a, &opts(), false).unwrap();
        assert_eq!(k_dims(&h), BTreeMap::from([(-3, 1), (-1, 1), (1, 1), (3, 1)]));
        let id = CyclicAction::identity(&d);
        assert_eq!(
            equivariant_annular_homology(&d, &id, &opts(), false).unwrap(),
            annular_homology(&build_annular_complex(&d, &opts()).unwrap())
        );
    }

    #[test]
    fn orbitwise_r2_pair() {
        let lift = |w: &[i32]| lift_fundamental_domain(&Tangle::braid(2, w).unwrap(), 3).unwrap();
        let (d1, a1) = lift(&[1]);
        let (d2, a2) = lift(&[1, 1, -1]);
        let h1 = equivariant_annular_homology(&d1, &a1, &opts(), false).unwrap();
        let h2 = equivariant_annular_homology(&d2, &a2, &opts(), false).unwrap();
        assert_eq!(h1, h2);
    }
}
