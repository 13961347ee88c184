use crate::complex::{ChainMap, Grading};
use crate::diagram::{LinkDiagram, Marker, Resolution};
use crate::error::{Error, Result};
use crate::f2linalg::{self, F2Subspace};

use super::{EnhancedState, Flavor, KhOptions, StateSpace};

/// Result of checking `0 -> C(D_∞) -α-> C(D_+) -β-> C(D_0) -> 0` in framed
/// gradings. Violations are keyed by the grading of the `C(D_+)` block.
#[derive(Clone, Debug, Default)]
pub struct SkeinReport {
    pub crossing: usize,
    pub gradings_checked: usize,
    pub violations: Vec<(Grading, &'static str)>,
}

impl SkeinReport {
    pub fn is_exact(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Moves signs between a resolution of `from` and one of `to`, matching
/// circles through arc labels. Every label of `to` is also a label of
/// `from` on the matching circle.
fn transport(signs: u64, from: &LinkDiagram, rf: &Resolution, to: &LinkDiagram, rt: &Resolution) -> u64 {
    let mut out = 0;
    for (j, circ) in rt.circles().iter().enumerate() {
        let a = from
            .arc_index(to.arc_label(circ[0]))
            .expect("smoothing keeps class representatives");
        if signs >> rf.circle_of(a) & 1 == 1 {
            out |= 1 << j;
        }
    }
    out
}

pub fn skein_exactness_check(d_plus: &LinkDiagram, v: usize, opts: &KhOptions) -> Result<SkeinReport> {
    if v >= d_plus.crossing_count() {
        return Err(Error::InvalidDiagram(format!("no crossing {v}")));
    }
    let (d_zero, _) = d_plus.smooth(v, Marker::Plus)?;
    let (d_inf, _) = d_plus.smooth(v, Marker::Minus)?;
    let (sp, s0, si) = (
        StateSpace::new(d_plus, opts)?,
        StateSpace::new(&d_zero, opts)?,
        StateSpace::new(&d_inf, opts)?,
    );
    let (cp, c0, ci) = (
        sp.complex(Flavor::Framed)?,
        s0.complex(Flavor::Framed)?,
        si.complex(Flavor::Framed)?,
    );
    let low = (1u32 << v) - 1;
    let insert = |m: u32, bit: u32| (m & low) | ((m & !low) << 1) | bit << v;
    let remove = |m: u32| (m & low) | ((m >> 1) & !low);

    let alpha = ChainMap::from_terms(&ci, &cp, (0, -1), |_, s: &EnhancedState| {
        let m = insert(s.markers, 1);
        let signs = transport(s.signs, &d_inf, si.resolution(s.markers), d_plus, sp.resolution(m));
        // Inverse direction: every circle of D_+ carries a label of D_∞.
        let back = transport(signs, d_plus, sp.resolution(m), &d_inf, si.resolution(s.markers));
        debug_assert_eq!(back, s.signs);
        vec![EnhancedState { markers: m, signs }]
    })?;
    let beta = ChainMap::from_terms(&cp, &c0, (0, -1), |_, s: &EnhancedState| {
        if s.markers >> v & 1 == 1 {
            return vec![];
        }
        let m = remove(s.markers);
        let signs = transport(s.signs, d_plus, sp.resolution(s.markers), &d_zero, s0.resolution(m));
        vec![EnhancedState { markers: m, signs }]
    })?;

    let mut report = SkeinReport {
        crossing: v,
        ..Default::default()
    };
    for g in alpha.commutation_violations(&ci, &cp) {
        report.violations.push((alpha.target(&g), "alpha is not a chain map"));
    }
    for g in beta.commutation_violations(&cp, &c0) {
        report.violations.push((g, "beta is not a chain map"));
    }
    for g in ci.gradings() {
        let a = alpha.matrix(&ci, &cp, g);
        if a.rank() != a.cols() {
            report.violations.push((alpha.target(g), "alpha is not injective"));
        }
    }
    for g in cp.gradings() {
        report.gradings_checked += 1;
        let src = Grading { q: g.q + 1, ..*g };
        let b = beta.matrix(&cp, &c0, g);
        if b.rank() != b.rows() {
            report.violations.push((*g, "beta is not surjective"));
        }
        let im_alpha = if ci.dim(&src) > 0 {
            f2linalg::image(&alpha.matrix(&ci, &cp, &src))
        } else {
            F2Subspace::zero(cp.dim(g))
        };
        if im_alpha != f2linalg::kernel(&b) {
            report
                .violations
                .push((*g, "image of alpha differs from kernel of beta"));
        }
        if cp.dim(g) != ci.dim(&src) + c0.dim(&beta.target(g)) {
            report.violations.push((*g, "dimensions do not add up"));
        }
    }
    Ok(report)
}
