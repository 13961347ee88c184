//! Enhanced Kauffman states and the Khovanov complex over GF(2).
//!
//! Oriented gradings are `i = (w - σ)/2`, `j = (3w - σ + 2τ)/2` with the
//! differential raising `i`; framed gradings are `p = τ`, `q = σ - 2τ` with
//! the differential lowering `p`. Both differentials change one `+1` marker
//! to `-1` and lower `τ` by one.

mod r1;
mod skein;

pub use r1::{r1_chain_map, R1Report};
pub use skein::{skein_exactness_check, SkeinReport};

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::complex::{homology, GradedComplex, Grading, HomologyTable};
use crate::diagram::{CyclicAction, LinkDiagram, Resolution};
use crate::error::{Error, Result};
use crate::LaurentPoly;

/// Default bound on the number of crossings.
pub const DEFAULT_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KhOptions {
    pub cap: usize,
}

impl Default for KhOptions {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Oriented,
    Framed,
}

impl Flavor {
    pub fn step(self) -> i32 {
        match self {
            Flavor::Oriented => 1,
            Flavor::Framed => -1,
        }
    }
}

/// A marker mask (bit `c` set for `-1`) and a sign mask over the circles of
/// its resolution (bit `i` set when circle `i` carries `-`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EnhancedState {
    pub markers: u32,
    pub signs: u64,
}

pub type KhComplex = GradedComplex<EnhancedState>;

/// All resolutions of a diagram, indexed by marker mask.
#[derive(Clone, Debug)]
pub struct StateSpace<'a> {
    diagram: &'a LinkDiagram,
    res: Vec<Resolution>,
}

impl<'a> StateSpace<'a> {
    pub fn new(diagram: &'a LinkDiagram, opts: &KhOptions) -> Result<Self> {
        let n = diagram.crossing_count();
        if n > opts.cap {
            return Err(Error::ResourceCap {
                what: "crossing count",
                size: n,
                cap: opts.cap,
            });
        }
        let res: Vec<Resolution> = (0..1u32 << n).into_par_iter().map(|m| diagram.resolve(m)).collect();
        if let Some(r) = res.iter().find(|r| r.circle_count() > 63) {
            return Err(Error::ResourceCap {
                what: "circle count",
                size: r.circle_count(),
                cap: 63,
            });
        }
        Ok(Self { diagram, res })
    }

    pub fn diagram(&self) -> &'a LinkDiagram {
        self.diagram
    }

    pub fn resolution(&self, markers: u32) -> &Resolution {
        &self.res[markers as usize]
    }

    pub fn state_count(&self) -> usize {
        self.res.iter().map(|r| 1usize << r.circle_count()).sum()
    }

    /// Every state, ordered by markers and then signs.
    pub fn states(&self) -> impl Iterator<Item = EnhancedState> + '_ {
        self.res.iter().enumerate().flat_map(|(m, r)| {
            (0..1u64 << r.circle_count()).map(move |signs| EnhancedState {
                markers: m as u32,
                signs,
            })
        })
    }

    pub fn sigma(&self, s: &EnhancedState) -> i32 {
        self.resolution(s.markers).sigma()
    }

    pub fn tau(&self, s: &EnhancedState) -> i32 {
        self.resolution(s.markers).circle_count() as i32 - 2 * s.signs.count_ones() as i32
    }

    pub fn grading(&self, s: &EnhancedState, flavor: Flavor) -> Result<Grading> {
        let (sigma, tau) = (self.sigma(s), self.tau(s));
        match flavor {
            Flavor::Framed => Ok(Grading::new(tau, sigma - 2 * tau)),
            Flavor::Oriented => {
                let w = self.diagram.writhe()?;
                Ok(Grading::new((w - sigma) / 2, (3 * w - sigma + 2 * tau) / 2))
            }
        }
    }

    /// States in `d(s)`: one crossing changes from `+1` to `-1`, the circles
    /// away from it keep their signs, and the signs at the crossing follow
    /// the merge/split rule that lowers `τ` by one.
    pub fn differential_terms(&self, s: &EnhancedState) -> Vec<EnhancedState> {
        let d = self.diagram;
        let r = self.resolution(s.markers);
        let neg = |i: usize| s.signs >> i & 1 == 1;
        let mut out = Vec::new();
        for v in 0..d.crossing_count() {
            if s.markers >> v & 1 == 1 {
                continue;
            }
            let m2 = s.markers | 1 << v;
            let r2 = self.resolution(m2);
            let sl = d.slots(v);
            let (c1, c2) = (r.circle_of(sl[0]), r.circle_of(sl[2]));
            let (e1, e2) = (r2.circle_of(sl[0]), r2.circle_of(sl[1]));
            let mut base = 0u64;
            for (i, circ) in r.circles().iter().enumerate() {
                if i != c1 && i != c2 && neg(i) {
                    base |= 1 << r2.circle_of(circ[0]);
                }
            }
            let mut push = |signs: u64| out.push(EnhancedState { markers: m2, signs });
            if c1 != c2 && e1 == e2 {
                match (neg(c1), neg(c2)) {
                    (true, true) => {}
                    (false, false) => push(base),
                    _ => push(base | 1 << e1),
                }
            } else if c1 == c2 && e1 != e2 {
                if neg(c1) {
                    push(base | 1 << e1 | 1 << e2);
                } else {
                    push(base | 1 << e2);
                    push(base | 1 << e1);
                }
            }
            // One circle on both sides only happens for non-planar codes;
            // that component of the differential is zero.
        }
        out
    }

    /// Image of a state under the action: markers move with the crossings
    /// and signs travel with the circles.
    pub fn act(&self, a: &CyclicAction, s: &EnhancedState) -> EnhancedState {
        let m2 = a.apply_mask(s.markers);
        let (r, r2) = (self.resolution(s.markers), self.resolution(m2));
        let map = a.circle_map(r, r2);
        let signs = map
            .iter()
            .enumerate()
            .filter(|(i, _)| s.signs >> i & 1 == 1)
            .fold(0u64, |acc, (_, &j)| acc | 1 << j);
        EnhancedState { markers: m2, signs }
    }

    pub fn blocks(&self, flavor: Flavor) -> Result<BTreeMap<Grading, Vec<EnhancedState>>> {
        if flavor == Flavor::Oriented {
            self.diagram.writhe()?;
        }
        let mut blocks: BTreeMap<Grading, Vec<EnhancedState>> = BTreeMap::new();
        for s in self.states() {
            blocks.entry(self.grading(&s, flavor)?).or_default().push(s);
        }
        Ok(blocks)
    }

    pub fn complex(&self, flavor: Flavor) -> Result<KhComplex> {
        let blocks = self.blocks(flavor)?;
        GradedComplex::assemble(flavor.step(), blocks, |_, s| self.differential_terms(s))
    }
}

/// States of `d`, optionally restricted to one grading, in marker-then-sign
/// order.
pub fn enumerate_states(
    d: &LinkDiagram,
    flavor: Flavor,
    grading: Option<Grading>,
    opts: &KhOptions,
) -> Result<Vec<EnhancedState>> {
    let space = StateSpace::new(d, opts)?;
    if flavor == Flavor::Oriented {
        d.writhe()?;
    }
    let mut out = Vec::new();
    for s in space.states() {
        if grading.is_none_or(|g| space.grading(&s, flavor).ok() == Some(g)) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Coefficient of `s2` in `d_v(s)`, computed directly from the circle sets
/// of the two resolutions.
pub fn incidence(space: &StateSpace, s: &EnhancedState, s2: &EnhancedState, v: usize) -> bool {
    if s.markers >> v & 1 == 1 || s2.markers != s.markers | 1 << v {
        return false;
    }
    let circles = |st: &EnhancedState| -> BTreeMap<BTreeSet<usize>, bool> {
        let r = space.resolution(st.markers);
        r.circles()
            .iter()
            .enumerate()
            .map(|(i, c)| (c.iter().copied().collect(), st.signs >> i & 1 == 0))
            .collect()
    };
    let (before, after) = (circles(s), circles(s2));
    let at_v: BTreeSet<usize> = space.diagram().slots(v).into_iter().collect();
    let touches = |c: &BTreeSet<usize>| !c.is_disjoint(&at_v);
    let mut old = Vec::new();
    for (c, plus) in &before {
        if touches(c) {
            old.push(*plus);
        } else if after.get(c) != Some(plus) {
            return false;
        }
    }
    let new: Vec<bool> = after.iter().filter(|(c, _)| touches(c)).map(|(_, p)| *p).collect();
    match (old.as_slice(), new.as_slice()) {
        ([a, b], [c]) => match (a, b) {
            (true, true) => *c,
            (false, false) => false,
            _ => !*c,
        },
        ([a], [b, c]) => {
            if *a {
                b != c
            } else {
                !*b && !*c
            }
        }
        _ => false,
    }
}

pub fn build_complex(d: &LinkDiagram, flavor: Flavor, opts: &KhOptions) -> Result<KhComplex> {
    StateSpace::new(d, opts)?.complex(flavor)
}

pub fn khovanov_homology(d: &LinkDiagram, flavor: Flavor, opts: &KhOptions) -> Result<HomologyTable> {
    Ok(homology(&build_complex(d, flavor, opts)?))
}

/// `Σ (-1)^i q^j dim H^{i,j}`.
pub fn euler_polynomial(h: &HomologyTable) -> LaurentPoly {
    h.euler_polynomial()
}

/// Regrades a framed table `(p, q)` as an oriented one `(i, j)` using the
/// writhe: `i = (w - q)/2 - p`, `j = (3w - q)/2`.
pub fn framed_to_oriented(h: &HomologyTable, writhe: i32) -> HomologyTable {
    HomologyTable::from_dims(
        h.iter()
            .map(|(g, d)| (Grading::new((writhe - g.q) / 2 - g.h, (3 * writhe - g.q) / 2), *d)),
    )
}
