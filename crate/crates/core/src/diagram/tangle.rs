use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

use super::{CyclicAction, End, LinkDiagram};

/// A tangle in a strip with `k` boundary points on each side.
///
/// Boundary labels occur once in the crossing records; a label listed on
/// both sides with no crossing occurrence is a strand running straight
/// through. The same position on the left and right is glued when copies
/// are stacked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangle {
    crossings: Vec<[u32; 4]>,
    loops: Vec<u32>,
    left: Vec<u32>,
    right: Vec<u32>,
}

impl Tangle {
    pub fn new(crossings: Vec<[u32; 4]>, loops: Vec<u32>, left: Vec<u32>, right: Vec<u32>) -> Result<Self> {
        if left.len() != right.len() {
            return Err(Error::InvalidDiagram(format!(
                "LEFT has {} labels but RIGHT has {}",
                left.len(),
                right.len()
            )));
        }
        for side in [&left, &right] {
            let set: BTreeSet<_> = side.iter().collect();
            if set.len() != side.len() {
                return Err(Error::InvalidDiagram("repeated boundary label".into()));
            }
        }
        let mut count: BTreeMap<u32, usize> = BTreeMap::new();
        for a in crossings.iter().flatten() {
            *count.entry(*a).or_default() += 1;
        }
        let on_left: BTreeSet<u32> = left.iter().copied().collect();
        let on_right: BTreeSet<u32> = right.iter().copied().collect();
        for a in on_left.union(&on_right) {
            let n = count.get(a).copied().unwrap_or(0);
            let expected = if on_left.contains(a) && on_right.contains(a) {
                0
            } else {
                1
            };
            if n != expected {
                return Err(Error::InvalidDiagram(format!(
                    "boundary arc {a} occurs {n} times in crossings (expected {expected})"
                )));
            }
        }
        for (a, n) in &count {
            if !on_left.contains(a) && !on_right.contains(a) && *n != 2 {
                return Err(Error::InvalidDiagram(format!(
                    "interior arc {a} occurs {n} times (expected 2)"
                )));
            }
        }
        for l in &loops {
            if count.contains_key(l) || on_left.contains(l) || on_right.contains(l) {
                return Err(Error::InvalidDiagram(format!("free loop {l} reuses an arc label")));
            }
        }
        if loops.iter().collect::<BTreeSet<_>>().len() != loops.len() {
            return Err(Error::InvalidDiagram("repeated free loop label".into()));
        }
        Ok(Self {
            crossings,
            loops,
            left,
            right,
        })
    }

    /// Braid on `strands` strands; generator `i` crosses positions `i-1`
    /// and `i` positively, `-i` negatively.
    pub fn braid(strands: usize, word: &[i32]) -> Result<Self> {
        let mut cur: Vec<u32> = (1..=strands as u32).collect();
        let left = cur.clone();
        let mut next = strands as u32 + 1;
        let mut crossings = Vec::with_capacity(word.len());
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if i == 0 || i >= strands {
                return Err(Error::InvalidDiagram(format!(
                    "generator {g} out of range for {strands} strands"
                )));
            }
            let (b_in, t_in) = (cur[i - 1], cur[i]);
            let (b_out, t_out) = (next, next + 1);
            next += 2;
            crossings.push(if g > 0 {
                [b_in, b_out, t_out, t_in]
            } else {
                [t_in, b_in, b_out, t_out]
            });
            cur[i - 1] = b_out;
            cur[i] = t_out;
        }
        Self::new(crossings, Vec::new(), left, cur)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    pub fn left(&self) -> &[u32] {
        &self.left
    }

    pub fn right(&self) -> &[u32] {
        &self.right
    }

    /// Glues each right boundary point to the left one at the same position.
    pub fn closure(&self) -> Result<LinkDiagram> {
        let mut rep: HashMap<u32, u32> = HashMap::new();
        fn find(rep: &HashMap<u32, u32>, mut a: u32) -> u32 {
            while let Some(&b) = rep.get(&a) {
                if b == a {
                    break;
                }
                a = b;
            }
            a
        }
        for (&r, &l) in self.right.iter().zip(&self.left) {
            let (a, b) = (find(&rep, r), find(&rep, l));
            if a != b {
                rep.insert(a.max(b), a.min(b));
            }
        }
        let crossings: Vec<[u32; 4]> = self.crossings.iter().map(|x| x.map(|a| find(&rep, a))).collect();
        let used: BTreeSet<u32> = crossings.iter().flatten().copied().collect();
        let mut loops: BTreeSet<u32> = self
            .left
            .iter()
            .map(|&a| find(&rep, a))
            .filter(|a| !used.contains(a))
            .collect();
        loops.extend(&self.loops);
        LinkDiagram::new(crossings, loops.into_iter().collect(), BTreeMap::new(), false)
    }
}

/// Stacks `p` copies of `t` around an annulus, gluing copy `i`'s right side
/// to copy `i+1`'s left side, and returns the closed diagram with the
/// rotation action. The puncture ray runs through the seam between copy
/// `p-1` and copy `0`, so the result carries ray data.
///
/// Labels are renumbered from 1 copy by copy; crossing `j` of copy `i`
/// becomes crossing `i * n + j`.
pub fn lift_fundamental_domain(t: &Tangle, p: usize) -> Result<(LinkDiagram, CyclicAction)> {
    if p < 1 {
        return Err(Error::InvalidAction("group order must be at least 1".into()));
    }
    let nc = t.crossings.len();
    let mut local: Vec<u32> = t
        .crossings
        .iter()
        .flatten()
        .chain(&t.left)
        .chain(&t.right)
        .chain(&t.loops)
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    local.sort_unstable();
    let lidx: HashMap<u32, usize> = local.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let nl = local.len();
    let node = |i: usize, a: u32| i * nl + lidx[&a];

    let mut parent: Vec<usize> = (0..p * nl).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..p {
        for (&r, &l) in t.right.iter().zip(&t.left) {
            let (a, b) = (find(&mut parent, node(i, r)), find(&mut parent, node((i + 1) % p, l)));
            parent[a] = b;
        }
    }

    let mut label_of_class: HashMap<usize, u32> = HashMap::new();
    let mut fresh = 0u32;
    let mut label = |parent: &mut Vec<usize>, n: usize| {
        let c = find(parent, n);
        *label_of_class.entry(c).or_insert_with(|| {
            fresh += 1;
            fresh
        })
    };
    let mut crossings = Vec::with_capacity(p * nc);
    for i in 0..p {
        for x in &t.crossings {
            crossings.push(x.map(|a| label(&mut parent, node(i, a))));
        }
    }
    let in_crossings: BTreeSet<u32> = crossings.iter().flatten().copied().collect();
    let mut loop_nodes: Vec<(u32, usize, u32)> = Vec::new();
    for i in 0..p {
        for &a in t.left.iter().chain(&t.loops) {
            let l = label(&mut parent, node(i, a));
            if !in_crossings.contains(&l) && !loop_nodes.iter().any(|(x, _, _)| *x == l) {
                loop_nodes.push((l, i, a));
            }
        }
    }

    let on_left: HashMap<u32, usize> = t.left.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let on_right: HashMap<u32, usize> = t.right.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let through = |a: u32| on_left.contains_key(&a) && on_right.contains_key(&a);
    // Walks from boundary node (i, a) away from the tangle interior until it
    // reaches a label with a crossing occurrence, counting signed seam
    // passages (rightward across the seam is +1).
    let walk = |mut i: usize, mut a: u32, rightward: bool| -> i32 {
        let mut seam = 0;
        loop {
            if rightward {
                let k = on_right[&a];
                if i == p - 1 {
                    seam += 1;
                }
                i = (i + 1) % p;
                a = t.left[k];
            } else {
                let k = on_left[&a];
                if i == 0 {
                    seam -= 1;
                }
                i = (i + p - 1) % p;
                a = t.right[k];
            }
            if !through(a) {
                return seam;
            }
        }
    };

    // Raw seam counts per crossing arc, measured from the boundary end met
    // first; the sign is fixed once the arc's orientation is known.
    let mut raw: BTreeMap<u32, (End, i32)> = BTreeMap::new();
    for i in 0..p {
        for (j, x) in t.crossings.iter().enumerate() {
            for (slot, &a) in x.iter().enumerate() {
                if !(on_left.contains_key(&a) || on_right.contains_key(&a)) {
                    continue;
                }
                let l = label(&mut parent, node(i, a));
                if raw.contains_key(&l) {
                    continue;
                }
                let seam = walk(i, a, on_right.contains_key(&a));
                let start = End {
                    crossing: i * nc + j,
                    slot,
                };
                raw.insert(l, (start, seam));
            }
        }
    }
    let mut rays: BTreeMap<u32, i32> = BTreeMap::new();
    for &(l, i, a) in &loop_nodes {
        if through(a) {
            let mut seam = 0;
            let (mut ii, mut aa) = (i, a);
            loop {
                let k = on_right[&aa];
                if ii == p - 1 {
                    seam += 1;
                }
                ii = (ii + 1) % p;
                aa = t.left[k];
                if (ii, aa) == (i, a) {
                    break;
                }
            }
            rays.insert(l, seam);
        }
    }

    let loops: Vec<u32> = loop_nodes.iter().map(|(l, _, _)| *l).collect();
    let provisional = LinkDiagram::new(crossings.clone(), loops.clone(), BTreeMap::new(), true)?;
    for (l, (start, seam)) in raw {
        let arc = provisional.arc_index(l).expect("lifted arc");
        let [tail, _] = provisional.arc_ends(arc).expect("crossing arc");
        rays.insert(l, if tail == start { seam } else { -seam });
    }
    let d = LinkDiagram::new(crossings, loops, rays, true)?;

    let crossing_perm: Vec<usize> = (0..p * nc).map(|c| (c + nc) % (p * nc)).collect();
    let mut loop_perm = BTreeMap::new();
    for &(l, i, a) in &loop_nodes {
        let img = label(&mut parent, node((i + 1) % p, a));
        loop_perm.insert(l, img);
    }
    let action = CyclicAction::new(&d, p, crossing_perm, &loop_perm)?;
    Ok((d, action))
}
