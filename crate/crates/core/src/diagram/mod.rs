//! Planar link diagrams in crossing-record form.
//!
//! A crossing is four arc labels listed counterclockwise starting at the
//! incoming under-strand. A `+1` marker joins slots (0,1) and (2,3); a `-1`
//! marker joins slots (0,3) and (1,2). Free loops are arcs that touch no
//! crossing. Annular diagrams carry a signed count of crossings with a fixed
//! ray from the puncture for each arc, measured along the arc's reference
//! direction (tail to head).

mod action;
mod parse;
mod tangle;

pub use action::CyclicAction;
pub use parse::{parse_diagram, parse_file, parse_tangle, DiagramInput, ParsedFile, SymmetrySpec};
pub use tangle::{lift_fundamental_domain, Tangle};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Marker at a crossing in a Kauffman state.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Marker {
    Plus,
    Minus,
}

impl Marker {
    pub fn value(self) -> i32 {
        match self {
            Marker::Plus => 1,
            Marker::Minus => -1,
        }
    }

    /// Slot joined to `slot` when the crossing is smoothed with this marker.
    pub fn partner(self, slot: usize) -> usize {
        match self {
            Marker::Plus => [1, 0, 3, 2][slot],
            Marker::Minus => [3, 2, 1, 0][slot],
        }
    }

    /// Markers are packed into masks with bit `c` set for a `-1` marker.
    pub fn from_mask(mask: u32, c: usize) -> Marker {
        if mask >> c & 1 == 1 {
            Marker::Minus
        } else {
            Marker::Plus
        }
    }
}

/// One end of an arc: the crossing it touches and the slot it occupies.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct End {
    pub crossing: usize,
    pub slot: usize,
}

/// Largest crossing count a diagram may have; markers are packed into `u32`.
pub const MAX_CROSSINGS: usize = 31;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[u32; 4]>,
    loops: Vec<u32>,
    rays: BTreeMap<u32, i32>,
    annular: bool,
    arcs: Vec<u32>,
    index: HashMap<u32, usize>,
    slots: Vec<[usize; 4]>,
    /// `[tail, head]` for crossing arcs, `None` for free loops.
    ends: Vec<Option<[End; 2]>>,
    oriented: bool,
}

impl LinkDiagram {
    /// Validates and indexes a diagram. `rays` is only meaningful when
    /// `annular` is set.
    pub fn new(crossings: Vec<[u32; 4]>, loops: Vec<u32>, rays: BTreeMap<u32, i32>, annular: bool) -> Result<Self> {
        if crossings.len() > MAX_CROSSINGS {
            return Err(Error::ResourceCap {
                what: "crossing count",
                size: crossings.len(),
                cap: MAX_CROSSINGS,
            });
        }
        let mut occurrences: BTreeMap<u32, Vec<End>> = BTreeMap::new();
        for (c, x) in crossings.iter().enumerate() {
            for (slot, &a) in x.iter().enumerate() {
                occurrences.entry(a).or_default().push(End { crossing: c, slot });
            }
        }
        for (a, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(Error::InvalidDiagram(format!(
                    "arc {a} occurs {} times in crossings (expected 2)",
                    occ.len()
                )));
            }
        }
        let mut loops = loops;
        loops.sort_unstable();
        for w in loops.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidDiagram(format!("free loop {} declared twice", w[0])));
            }
        }
        for l in &loops {
            if occurrences.contains_key(l) {
                return Err(Error::InvalidDiagram(format!(
                    "free loop label {l} also used by a crossing"
                )));
            }
        }
        let arcs: Vec<u32> = occurrences
            .keys()
            .copied()
            .chain(loops.iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<u32, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let rays: BTreeMap<u32, i32> = rays.into_iter().filter(|(_, n)| *n != 0).collect();
        for a in rays.keys() {
            if !index.contains_key(a) {
                return Err(Error::InvalidDiagram(format!("RAY refers to unknown arc {a}")));
            }
        }
        let slots: Vec<[usize; 4]> = crossings.iter().map(|x| x.map(|a| index[&a])).collect();
        let mut ends: Vec<Option<[End; 2]>> = vec![None; arcs.len()];
        for (a, occ) in occurrences {
            ends[index[&a]] = Some([occ[0], occ[1]]);
        }
        let mut d = Self {
            crossings,
            loops,
            rays,
            annular,
            arcs,
            index,
            slots,
            ends,
            oriented: true,
        };
        d.orient();
        Ok(d)
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// Crossingless diagram with `n` free loops labelled `1..=n`.
    pub fn unlink(n: u32) -> Self {
        Self::new(Vec::new(), (1..=n).collect(), BTreeMap::new(), false).expect("unlink is valid")
    }

    /// Orients every component so that under-strands run from slot 0 to
    /// slot 2. Components that never pass under keep the direction leaving
    /// their smallest arc at its first occurrence.
    fn orient(&mut self) {
        let m = self.arcs.len();
        let mut seen = vec![false; m];
        for start in 0..m {
            let Some([e0, e1]) = self.ends[start] else {
                continue;
            };
            if seen[start] {
                continue;
            }
            let mut walk: Vec<(usize, End, End)> = Vec::new();
            let (mut cur, mut from, mut to) = (start, e0, e1);
            let (mut fwd, mut rev) = (0, 0);
            loop {
                walk.push((cur, from, to));
                seen[cur] = true;
                match to.slot {
                    0 => fwd += 1,
                    2 => rev += 1,
                    _ => {}
                }
                let through = End {
                    crossing: to.crossing,
                    slot: (to.slot + 2) % 4,
                };
                let next = self.slots[through.crossing][through.slot];
                if next == start && through == e0 {
                    break;
                }
                let [a, b] = self.ends[next].expect("crossing arc");
                let far = if a == through { b } else { a };
                cur = next;
                from = through;
                to = far;
            }
            if fwd > 0 && rev > 0 {
                self.oriented = false;
            }
            let flip = rev > 0 && fwd == 0;
            for (arc, from, to) in walk {
                self.ends[arc] = Some(if flip { [to, from] } else { [from, to] });
            }
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    pub fn free_loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn arc_labels(&self) -> &[u32] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_index(&self, label: u32) -> Option<usize> {
        self.index.get(&label).copied()
    }

    pub fn arc_label(&self, index: usize) -> u32 {
        self.arcs[index]
    }

    /// Arc indices at the four slots of crossing `c`.
    pub fn slots(&self, c: usize) -> [usize; 4] {
        self.slots[c]
    }

    /// `[tail, head]` of a crossing arc; `None` for free loops.
    pub fn arc_ends(&self, arc: usize) -> Option<[End; 2]> {
        self.ends[arc]
    }

    pub fn is_loop(&self, arc: usize) -> bool {
        self.ends[arc].is_none()
    }

    pub fn is_annular(&self) -> bool {
        self.annular
    }

    pub fn rays(&self) -> &BTreeMap<u32, i32> {
        &self.rays
    }

    pub fn ray(&self, arc: usize) -> i32 {
        self.rays.get(&self.arcs[arc]).copied().unwrap_or(0)
    }

    pub fn max_label(&self) -> u32 {
        self.arcs.last().copied().unwrap_or(0)
    }

    /// Whether the under-strand convention admits a consistent orientation.
    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    /// Sign of crossing `c`: `+1` when the over-strand runs from slot 3 to
    /// slot 1.
    pub fn crossing_sign(&self, c: usize) -> i32 {
        let over_in = self.slots[c][3];
        let [_, head] = self.ends[over_in].expect("crossing arc");
        if head == (End { crossing: c, slot: 3 }) {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self) -> Result<i32> {
        if !self.oriented {
            return Err(Error::Unoriented("writhe needs an orientation".into()));
        }
        Ok((0..self.crossing_count()).map(|c| self.crossing_sign(c)).sum())
    }

    /// Link components as lists of arc indices in traversal order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let m = self.arcs.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let Some([_, mut head]) = self.ends[start] else {
                out.push(vec![start]);
                continue;
            };
            let mut comp = vec![start];
            loop {
                let through = End {
                    crossing: head.crossing,
                    slot: (head.slot + 2) % 4,
                };
                let next = self.slots[through.crossing][through.slot];
                if seen[next] {
                    break;
                }
                seen[next] = true;
                comp.push(next);
                let [a, b] = self.ends[next].expect("crossing arc");
                head = if a == through { b } else { a };
            }
            out.push(comp);
        }
        out
    }

    /// Smooths every crossing according to `markers` (bit `c` set for a
    /// `-1` marker) and traces the resulting circles.
    pub fn resolve(&self, markers: u32) -> Resolution {
        let m = self.arcs.len();
        let mut circle_of = vec![usize::MAX; m];
        let mut circles = Vec::new();
        let mut windings = Vec::new();
        for start in 0..m {
            if circle_of[start] != usize::MAX {
                continue;
            }
            let id = circles.len();
            let mut circle = vec![start];
            circle_of[start] = id;
            let mut winding = self.ray(start);
            if let Some([tail, mut head]) = self.ends[start] {
                loop {
                    let marker = Marker::from_mask(markers, head.crossing);
                    let enter = End {
                        crossing: head.crossing,
                        slot: marker.partner(head.slot),
                    };
                    let next = self.slots[enter.crossing][enter.slot];
                    if next == start && enter == tail {
                        break;
                    }
                    let [t, h] = self.ends[next].expect("crossing arc");
                    if t == enter {
                        winding += self.ray(next);
                        head = h;
                    } else {
                        winding -= self.ray(next);
                        head = t;
                    }
                    circle_of[next] = id;
                    circle.push(next);
                }
            }
            circles.push(circle);
            windings.push(winding);
        }
        Resolution {
            markers,
            crossings: self.crossing_count(),
            circle_of,
            circles,
            windings,
        }
    }

    /// Resolves from an explicit marker vector.
    pub fn resolve_markers(&self, markers: &[Marker]) -> Result<Resolution> {
        if markers.len() != self.crossing_count() {
            return Err(Error::InvalidDiagram(format!(
                "{} markers for {} crossings",
                markers.len(),
                self.crossing_count()
            )));
        }
        let mask = markers
            .iter()
            .enumerate()
            .filter(|(_, m)| **m == Marker::Minus)
            .fold(0u32, |acc, (c, _)| acc | 1 << c);
        Ok(self.resolve(mask))
    }

    /// Checks that the crossing records describe a planar 4-valent graph:
    /// every connected piece satisfies `V - E + F = 2`.
    pub fn is_planar(&self) -> bool {
        let n = self.crossing_count();
        if n == 0 {
            return true;
        }
        // Darts are (crossing, slot) leaving along that slot.
        let dart = |e: End| e.crossing * 4 + e.slot;
        let mut opposite = vec![0usize; 4 * n];
        for e in self.ends.iter().flatten() {
            opposite[dart(e[0])] = dart(e[1]);
            opposite[dart(e[1])] = dart(e[0]);
        }
        let mut seen = vec![false; 4 * n];
        let mut faces = 0;
        for d0 in 0..4 * n {
            if seen[d0] {
                continue;
            }
            faces += 1;
            let mut d = d0;
            while !seen[d] {
                seen[d] = true;
                let o = opposite[d];
                d = (o / 4) * 4 + (o % 4 + 1) % 4;
            }
        }
        // Connected pieces of the crossing graph.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.ends.iter().flatten() {
            let (a, b) = (find(&mut parent, e[0].crossing), find(&mut parent, e[1].crossing));
            parent[a] = b;
        }
        let pieces = (0..n).filter(|&c| find(&mut parent, c) == c).count();
        faces == n + 2 * pieces
    }

    /// Removes crossing `v` by smoothing it with `marker`. Arcs joined by the
    /// smoothing are merged under their smallest label; the map from old to
    /// new labels is returned alongside. Ray data is dropped.
    pub fn smooth(&self, v: usize, marker: Marker) -> Result<(LinkDiagram, HashMap<u32, u32>)> {
        if v >= self.crossing_count() {
            return Err(Error::InvalidDiagram(format!("no crossing {v}")));
        }
        let x = self.crossings[v];
        let mut rep: HashMap<u32, u32> = self.arcs.iter().map(|&a| (a, a)).collect();
        let find = |rep: &HashMap<u32, u32>, mut a: u32| {
            while rep[&a] != a {
                a = rep[&a];
            }
            a
        };
        for s in 0..4 {
            let t = marker.partner(s);
            let (a, b) = (find(&rep, x[s]), find(&rep, x[t]));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                rep.insert(hi, lo);
            }
        }
        let relabel: HashMap<u32, u32> = self.arcs.iter().map(|&a| (a, find(&rep, a))).collect();
        let crossings: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(c, _)| *c != v)
            .map(|(_, x)| x.map(|a| relabel[&a]))
            .collect();
        let used: BTreeSet<u32> = crossings.iter().flatten().copied().collect();
        let loops: BTreeSet<u32> = relabel.values().filter(|a| !used.contains(a)).copied().collect();
        let d = LinkDiagram::new(crossings, loops.into_iter().collect(), BTreeMap::new(), false)?;
        Ok((d, relabel))
    }

    /// Inserts a positive kink on `arc` (a label), as crossing index
    /// `crossing_count()`. The new crossing is `[arc, y, x, x]` where `x`
    /// is the small loop and `y` continues to the old head of `arc`, so its
    /// `+1` smoothing detaches `x`.
    ///
    /// `head` overrides which end of `arc` is treated as its head. Returns
    /// the new diagram and the labels `(x, y)`.
    pub fn add_positive_kink(&self, arc: u32, head: Option<End>) -> Result<(LinkDiagram, u32, u32)> {
        let a = self
            .arc_index(arc)
            .ok_or_else(|| Error::InvalidDiagram(format!("no arc {arc}")))?;
        let x = self.max_label() + 1;
        let y = x + 1;
        let mut crossings = self.crossings.clone();
        let mut loops = self.loops.clone();
        match self.ends[a] {
            None => {
                loops.retain(|&l| l != arc);
                crossings.push([arc, arc, x, x]);
                return Ok((
                    LinkDiagram::new(crossings, loops, self.rays.clone(), self.annular)?,
                    x,
                    arc,
                ));
            }
            Some([_, h]) => {
                let h = head.unwrap_or(h);
                if crossings[h.crossing][h.slot] != arc {
                    return Err(Error::InvalidDiagram(format!("end {h:?} is not on arc {arc}")));
                }
                crossings[h.crossing][h.slot] = y;
                crossings.push([arc, y, x, x]);
            }
        }
        Ok((
            LinkDiagram::new(crossings, loops, self.rays.clone(), self.annular)?,
            x,
            y,
        ))
    }

    /// Undoes a kink at `v` whose `+1` smoothing detaches a loop (slots 0,1
    /// or slots 2,3 carry the same arc). Inverse of [`add_positive_kink`].
    ///
    /// [`add_positive_kink`]: LinkDiagram::add_positive_kink
    pub fn remove_kink(&self, v: usize) -> Result<LinkDiagram> {
        if v >= self.crossing_count() {
            return Err(Error::MoveShape(format!("no crossing {v}")));
        }
        let x = self.crossings[v];
        let (keep, drop) = if x[2] == x[3] {
            (x[0], x[1])
        } else if x[0] == x[1] {
            (x[2], x[3])
        } else {
            return Err(Error::MoveShape(format!(
                "crossing {v} is not a kink whose +1 smoothing detaches a loop"
            )));
        };
        let looped = if x[2] == x[3] { x[2] } else { x[0] };
        if x[2] == x[3] && x[0] == x[1] {
            // Twisted free loop.
            let mut crossings = self.crossings.clone();
            crossings.remove(v);
            let mut loops = self.loops.clone();
            loops.push(x[0]);
            let mut rays = self.rays.clone();
            let r = rays.remove(&x[0]).unwrap_or(0) + rays.remove(&x[2]).unwrap_or(0);
            rays.insert(x[0], r);
            return LinkDiagram::new(crossings, loops, rays, self.annular);
        }
        let mut crossings = self.crossings.clone();
        crossings.remove(v);
        let keep_label = keep.min(drop);
        let lose_label = keep.max(drop);
        for c in crossings.iter_mut() {
            for a in c.iter_mut() {
                if *a == lose_label {
                    *a = keep_label;
                }
            }
        }
        let mut rays = self.rays.clone();
        let r = rays.remove(&keep).unwrap_or(0)
            + if keep != drop {
                rays.remove(&drop).unwrap_or(0)
            } else {
                0
            };
        rays.remove(&looped);
        rays.insert(keep_label, r);
        LinkDiagram::new(crossings, self.loops.clone(), rays, self.annular)
    }

    /// Structural isomorphism of crossing records: a bijection of crossings
    /// and arcs preserving slots up to rotating each record by two slots.
    pub fn is_isomorphic(&self, other: &LinkDiagram) -> bool {
        let n = self.crossing_count();
        if n != other.crossing_count() || self.loops.len() != other.loops.len() {
            return false;
        }
        let mut map = vec![None::<(usize, usize)>; n];
        let mut used = vec![false; n];
        self.iso_search(other, &mut map, &mut used)
    }

    fn iso_search(&self, other: &LinkDiagram, map: &mut Vec<Option<(usize, usize)>>, used: &mut Vec<bool>) -> bool {
        let Some(c0) = map.iter().position(Option::is_none) else {
            return true;
        };
        for t in 0..other.crossing_count() {
            if used[t] {
                continue;
            }
            for rot in [0, 2] {
                let (saved_map, saved_used) = (map.clone(), used.clone());
                if self.iso_propagate(other, c0, t, rot, map, used) && self.iso_search(other, map, used) {
                    return true;
                }
                *map = saved_map;
                *used = saved_used;
            }
        }
        false
    }

    fn iso_propagate(
        &self,
        other: &LinkDiagram,
        c0: usize,
        t0: usize,
        rot0: usize,
        map: &mut [Option<(usize, usize)>],
        used: &mut [bool],
    ) -> bool {
        let mut queue = vec![(c0, t0, rot0)];
        map[c0] = Some((t0, rot0));
        used[t0] = true;
        while let Some((c, t, rot)) = queue.pop() {
            for s in 0..4 {
                let s2 = (s + rot) % 4;
                let here = End { crossing: c, slot: s };
                let there = End { crossing: t, slot: s2 };
                let [a0, a1] = self.ends[self.slots[c][s]].expect("crossing arc");
                let [b0, b1] = other.ends[other.slots[t][s2]].expect("crossing arc");
                let far = if a0 == here { a1 } else { a0 };
                let far2 = if b0 == there { b1 } else { b0 };
                let r = (far2.slot + 4 - far.slot) % 4;
                if r % 2 == 1 {
                    return false;
                }
                match map[far.crossing] {
                    Some((tt, rr)) => {
                        if tt != far2.crossing || rr != r {
                            return false;
                        }
                    }
                    None => {
                        if used[far2.crossing] {
                            return false;
                        }
                        map[far.crossing] = Some((far2.crossing, r));
                        used[far2.crossing] = true;
                        queue.push((far.crossing, far2.crossing, r));
                    }
                }
            }
        }
        true
    }

    /// Serializes in the line format read by [`parse_diagram`], including
    /// symmetry lines when an action is supplied.
    pub fn to_text(&self, action: Option<&CyclicAction>) -> String {
        let mut s = String::new();
        for x in &self.crossings {
            s.push_str(&format!("X {} {} {} {}\n", x[0], x[1], x[2], x[3]));
        }
        for l in &self.loops {
            s.push_str(&format!("O {l}\n"));
        }
        if self.annular {
            for (a, n) in &self.rays {
                s.push_str(&format!("RAY {a} {n}\n"));
            }
        }
        if let Some(act) = action {
            s.push_str(&format!("SYM {}\n", act.order()));
            for (c, &img) in act.crossing_perm().iter().enumerate() {
                s.push_str(&format!("MAP {} {}\n", c + 1, img + 1));
            }
            for &l in &self.loops {
                let i = self.index[&l];
                let img = act.arc_perm()[i];
                if img != i {
                    s.push_str(&format!("MAPARC {} {}\n", l, self.arcs[img]));
                }
            }
        }
        s
    }
}

/// Adds a positive kink on every arc in the orbit of `arc`, one at a time
/// and equivariantly (the head end of each image arc is the image of the
/// head end of `arc`). Returns the diagrams after 0, 1, .., p kinks and the
/// extended action on the last one; kink `k` is crossing `n + k`.
pub fn add_symmetric_kinks(d: &LinkDiagram, a: &CyclicAction, arc: u32) -> Result<(Vec<LinkDiagram>, CyclicAction)> {
    let p = a.order();
    let i0 = d
        .arc_index(arc)
        .ok_or_else(|| Error::InvalidDiagram(format!("no arc {arc}")))?;
    let mut orbit = vec![i0];
    let mut cur = a.arc_perm()[i0];
    while cur != i0 {
        orbit.push(cur);
        cur = a.arc_perm()[cur];
    }
    if orbit.len() != p {
        return Err(Error::InvalidAction(format!(
            "arc {arc} has an orbit of size {} under a group of order {p}",
            orbit.len()
        )));
    }
    let n = d.crossing_count();
    let head0 = d.arc_ends(i0).map(|[_, h]| h);
    let mut chain = vec![d.clone()];
    for (k, &ai) in orbit.iter().enumerate() {
        let head = head0.map(|h| End {
            crossing: a.power(k).crossing_perm()[h.crossing],
            slot: h.slot,
        });
        let last = chain.last().expect("nonempty");
        let (next, _, _) = last.add_positive_kink(d.arc_label(ai), head)?;
        chain.push(next);
    }
    let mut perm = a.crossing_perm().to_vec();
    perm.extend((0..p).map(|k| n + (k + 1) % p));
    let last = chain.last().expect("nonempty");
    let loop_perm: BTreeMap<u32, u32> = last
        .loops()
        .iter()
        .map(|&l| {
            let i = d.arc_index(l).expect("loop of the original diagram");
            (l, d.arc_label(a.arc_perm()[i]))
        })
        .collect();
    let action = CyclicAction::new(last, p, perm, &loop_perm)?;
    Ok((chain, action))
}

/// Circles of a Kauffman state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    markers: u32,
    crossings: usize,
    circle_of: Vec<usize>,
    circles: Vec<Vec<usize>>,
    windings: Vec<i32>,
}

impl Resolution {
    pub fn marker_mask(&self) -> u32 {
        self.markers
    }

    pub fn markers(&self) -> Vec<Marker> {
        (0..self.crossings)
            .map(|c| Marker::from_mask(self.markers, c))
            .collect()
    }

    /// `#(+1 markers) - #(-1 markers)`.
    pub fn sigma(&self) -> i32 {
        self.crossings as i32 - 2 * self.markers.count_ones() as i32
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    /// Arc indices of each circle; circles are ordered by smallest arc.
    pub fn circles(&self) -> &[Vec<usize>] {
        &self.circles
    }

    pub fn circle_of(&self, arc: usize) -> usize {
        self.circle_of[arc]
    }

    /// Signed winding of each circle around the puncture (zero when the
    /// diagram carries no ray data).
    pub fn windings(&self) -> &[i32] {
        &self.windings
    }

    pub fn is_essential(&self, circle: usize) -> bool {
        self.windings[circle] != 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LinkDiagram {
        parse_diagram("X 1 2 5 4\nX 2 3 6 5\nX 3 1 4 6\n").unwrap()
    }

    #[test]
    fn unknot_resolution() {
        let d = LinkDiagram::unknot();
        assert_eq!(d.resolve(0).circle_count(), 1);
        assert_eq!(d.writhe().unwrap(), 0);
        assert_eq!(LinkDiagram::unlink(2).resolve(0).circle_count(), 2);
    }

    #[test]
    fn trefoil_resolutions_and_writhe() {
        let d = trefoil();
        assert!(d.is_oriented());
        assert!(d.is_planar());
        assert_eq!(d.components().len(), 1);
        let all_plus = d.resolve(0).circle_count();
        let all_minus = d.resolve(0b111).circle_count();
        assert_eq!((all_plus, all_minus), (2, 3));
        assert_eq!(d.writhe().unwrap(), 3);
    }

    #[test]
    fn spec_listed_code_is_well_formed_but_not_a_planar_knot() {
        let d = parse_diagram("X 1 4 2 3\nX 3 6 4 5\nX 5 2 6 1").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.arc_count(), 6);
        assert_eq!(d.components().len(), 3);
        assert!(!d.is_planar());
    }

    #[test]
    fn flipping_one_marker_changes_circle_count_by_one() {
        let d = trefoil();
        for m in 0..8u32 {
            for v in 0..3 {
                let a = d.resolve(m).circle_count() as i32;
                let b = d.resolve(m ^ 1 << v).circle_count() as i32;
                assert_eq!((a - b).abs(), 1);
            }
        }
    }

    #[test]
    fn mirror_connected_sum_has_zero_writhe() {
        // Trefoil # mirror trefoil as a braid closure.
        let t = Tangle::braid(3, &[1, 1, 1, -2, -2, -2]).unwrap();
        let d = t.closure().unwrap();
        assert_eq!(d.writhe().unwrap(), 0);
        assert_eq!(d.components().len(), 1);
    }

    #[test]
    fn kink_roundtrip() {
        let d = trefoil();
        for &a in d.arc_labels() {
            let (k, x, _) = d.add_positive_kink(a, None).unwrap();
            assert_eq!(k.writhe().unwrap(), 4);
            let v = k.crossing_count() - 1;
            let r = k.resolve(0);
            let xi = k.arc_index(x).unwrap();
            assert_eq!(r.circles()[r.circle_of(xi)].len(), 1);
            assert_eq!(k.remove_kink(v).unwrap(), d);
        }
        let u = LinkDiagram::unknot();
        let (k, _, _) = u.add_positive_kink(1, None).unwrap();
        assert_eq!(k.crossings(), &[[1, 1, 2, 2]]);
        assert_eq!(k.remove_kink(0).unwrap(), u);
    }

    #[test]
    fn smoothing_creates_loops_when_needed() {
        let k = parse_diagram("X 1 1 2 2").unwrap();
        let (d0, _) = k.smooth(0, Marker::Plus).unwrap();
        assert_eq!((d0.crossing_count(), d0.free_loop_count()), (0, 2));
        let (d1, _) = k.smooth(0, Marker::Minus).unwrap();
        assert_eq!((d1.crossing_count(), d1.free_loop_count()), (0, 1));
    }

    #[test]
    fn isomorphism_detects_relabelling() {
        let d = trefoil();
        let relabelled = parse_diagram("X 20 30 60 50\nX 10 20 50 40\nX 30 10 40 60").unwrap();
        assert!(d.is_isomorphic(&relabelled));
        let figure8 = Tangle::braid(3, &[1, -2, 1, -2]).unwrap().closure().unwrap();
        let other = Tangle::braid(2, &[1, 1, 1, 1]).unwrap().closure().unwrap();
        assert!(!figure8.is_isomorphic(&other));
    }
}
