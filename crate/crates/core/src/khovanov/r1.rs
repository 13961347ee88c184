use crate::complex::{homology, ChainMap, HomologyTable};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

use super::{EnhancedState, Flavor, KhComplex, KhOptions, StateSpace};

/// Outcome of checking the first Reidemeister move map.
#[derive(Clone, Debug)]
pub struct R1Report {
    pub before: KhComplex,
    pub after: KhComplex,
    /// `h: C(before) -> C(after)`, degree zero in oriented gradings.
    pub map: ChainMap,
    pub commutes: bool,
    pub homology_before: HomologyTable,
    pub homology_after: HomologyTable,
    pub induced_isomorphism: bool,
}

impl R1Report {
    pub fn passed(&self) -> bool {
        self.commutes && self.homology_before == self.homology_after && self.induced_isomorphism
    }
}

/// The map `h(S) = S ⊗ x₋ + (X_c S) ⊗ x₊` for a kink at crossing `v` of
/// `after` whose `+1` smoothing splits off the small loop `x`. Here `c` is
/// the circle through the kinked strand and `X_c` turns its `+` into `-`
/// (and kills the term when it is already `-`).
pub fn r1_chain_map(before: &LinkDiagram, after: &LinkDiagram, v: usize, opts: &KhOptions) -> Result<R1Report> {
    if after.remove_kink(v)? != *before {
        return Err(Error::MoveShape(format!(
            "removing the kink at crossing {v} does not give the first diagram"
        )));
    }
    let x = after.crossings()[v];
    let (loop_label, strand_slot) = if x[2] == x[3] { (x[2], 0) } else { (x[0], 2) };
    let sb = StateSpace::new(before, opts)?;
    let sa = StateSpace::new(after, opts)?;
    let cb = sb.complex(Flavor::Oriented)?;
    let ca = sa.complex(Flavor::Oriented)?;
    let loop_arc = after.arc_index(loop_label).expect("kink loop");
    let strand_arc = after.slots(v)[strand_slot];
    let low = (1u32 << v) - 1;
    let insert = |m: u32| (m & low) | ((m & !low) << 1);

    let map = ChainMap::from_terms(&cb, &ca, (0, 0), |_, s: &EnhancedState| {
        let m = insert(s.markers);
        let (rb, ra) = (sb.resolution(s.markers), sa.resolution(m));
        let mut base = 0u64;
        for (i, circ) in rb.circles().iter().enumerate() {
            if s.signs >> i & 1 == 1 {
                let a = after
                    .arc_index(before.arc_label(circ[0]))
                    .expect("labels survive the move");
                base |= 1 << ra.circle_of(a);
            }
        }
        let xc = ra.circle_of(loop_arc);
        let c = ra.circle_of(strand_arc);
        let mut out = vec![EnhancedState {
            markers: m,
            signs: base | 1 << xc,
        }];
        if base >> c & 1 == 0 {
            out.push(EnhancedState {
                markers: m,
                signs: base | 1 << c,
            });
        }
        out
    })?;
    let commutes = map.commutation_violations(&cb, &ca).is_empty();
    let induced_isomorphism = commutes && map.is_quasi_isomorphism(&cb, &ca)?;
    Ok(R1Report {
        homology_before: homology(&cb),
        homology_after: homology(&ca),
        before: cb,
        after: ca,
        map,
        commutes,
        induced_isomorphism,
    })
}
