use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::{LinkDiagram, Resolution};

/// A cyclic group of diagram automorphisms generated by one element.
///
/// Crossing records are transported slot by slot, so the generator maps the
/// arc at slot `s` of crossing `c` to the arc at slot `s` of
/// `crossing_perm[c]`. Free loops are moved by an explicit loop permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAction {
    p: usize,
    crossing_perm: Vec<usize>,
    arc_perm: Vec<usize>,
}

impl CyclicAction {
    pub fn identity(d: &LinkDiagram) -> Self {
        Self {
            p: 1,
            crossing_perm: (0..d.crossing_count()).collect(),
            arc_perm: (0..d.arc_count()).collect(),
        }
    }

    /// Derives the arc permutation from `crossing_perm` and checks that the
    /// result is an automorphism of order dividing `p`. Loops missing from
    /// `loop_perm` are fixed.
    pub fn new(d: &LinkDiagram, p: usize, crossing_perm: Vec<usize>, loop_perm: &BTreeMap<u32, u32>) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidAction("group order must be at least 1".into()));
        }
        let n = d.crossing_count();
        if crossing_perm.len() != n || !is_permutation(&crossing_perm) {
            return Err(Error::InvalidAction(format!(
                "crossing map {crossing_perm:?} is not a permutation of {n} crossings"
            )));
        }
        let m = d.arc_count();
        let mut arc_perm = vec![usize::MAX; m];
        for (c, &img) in crossing_perm.iter().enumerate() {
            for s in 0..4 {
                let a = d.slots(c)[s];
                let b = d.slots(img)[s];
                if arc_perm[a] != usize::MAX && arc_perm[a] != b {
                    return Err(Error::InvalidAction(format!(
                        "arc {} would map to both {} and {}",
                        d.arc_label(a),
                        d.arc_label(arc_perm[a]),
                        d.arc_label(b)
                    )));
                }
                arc_perm[a] = b;
            }
        }
        for &l in d.loops() {
            let a = d.arc_index(l).expect("loop is an arc");
            let img = loop_perm.get(&l).copied().unwrap_or(l);
            match d.arc_index(img) {
                Some(b) if d.is_loop(b) => arc_perm[a] = b,
                _ => {
                    return Err(Error::InvalidAction(format!(
                        "free loop {l} must map to a free loop, not {img}"
                    )))
                }
            }
        }
        for l in loop_perm.keys() {
            if !d.arc_index(*l).is_some_and(|a| d.is_loop(a)) {
                return Err(Error::InvalidAction(format!("{l} is not a free loop")));
            }
        }
        if !is_permutation(&arc_perm) {
            return Err(Error::InvalidAction("induced arc map is not a bijection".into()));
        }
        let act = Self {
            p,
            crossing_perm,
            arc_perm,
        };
        let id = Self::identity(d);
        let pw = act.power(p);
        if pw.crossing_perm != id.crossing_perm || pw.arc_perm != id.arc_perm {
            return Err(Error::InvalidAction(format!(
                "generator does not have order dividing {p}"
            )));
        }
        Ok(act)
    }

    pub fn order(&self) -> usize {
        self.p
    }

    pub fn crossing_perm(&self) -> &[usize] {
        &self.crossing_perm
    }

    /// Permutation of arc indices (see [`LinkDiagram::arc_index`]).
    pub fn arc_perm(&self) -> &[usize] {
        &self.arc_perm
    }

    /// Rejects even orders unless explicitly allowed.
    pub fn require_odd(&self, allow_even: bool) -> Result<()> {
        if self.p % 2 == 1 {
            return Ok(());
        }
        if allow_even {
            log::warn!("group order {} is even; invariance results do not apply", self.p);
            Ok(())
        } else {
            Err(Error::EvenOrder { p: self.p })
        }
    }

    /// The `k`-th power of the generator (with the same declared order).
    pub fn power(&self, k: usize) -> Self {
        let mut c: Vec<usize> = (0..self.crossing_perm.len()).collect();
        let mut a: Vec<usize> = (0..self.arc_perm.len()).collect();
        for _ in 0..k {
            c = c.iter().map(|&i| self.crossing_perm[i]).collect();
            a = a.iter().map(|&i| self.arc_perm[i]).collect();
        }
        Self {
            p: self.p,
            crossing_perm: c,
            arc_perm: a,
        }
    }

    /// Marker mask after moving the marker at `c` to `crossing_perm[c]`.
    pub fn apply_mask(&self, mask: u32) -> u32 {
        self.crossing_perm
            .iter()
            .enumerate()
            .filter(|(c, _)| mask >> c & 1 == 1)
            .fold(0, |acc, (_, &img)| acc | 1 << img)
    }

    pub fn apply_resolution(&self, d: &LinkDiagram, r: &Resolution) -> Resolution {
        d.resolve(self.apply_mask(r.marker_mask()))
    }

    /// Where each circle of `src` goes in `dst = apply_resolution(src)`.
    pub fn circle_map(&self, src: &Resolution, dst: &Resolution) -> Vec<usize> {
        src.circles()
            .iter()
            .map(|c| dst.circle_of(self.arc_perm[c[0]]))
            .collect()
    }
}

fn is_permutation(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len()];
    for &i in v {
        if i >= v.len() || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}
