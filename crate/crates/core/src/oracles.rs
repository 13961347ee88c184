//! Brute-force reference computations.
//!
//! Nothing here reuses the resolution, traversal or elimination code of the
//! main pipeline; inputs are read through plain accessors only.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::Hash;

use crate::complex::{GradedComplex, Grading, HomologyTable};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::LaurentPoly;

pub const DENSE_CAP: usize = 4096;

fn find(parent: &mut HashMap<u32, u32>, x: u32) -> u32 {
    let p = *parent.entry(x).or_insert(x);
    if p == x {
        return x;
    }
    let r = find(parent, p);
    parent.insert(x, r);
    r
}

/// `Σ_s (-A)^{σ(s)} (-A² - A⁻²)^{|s|}` over all `2^n` marker choices.
pub fn bracket_statesum(d: &LinkDiagram, cap: usize) -> Result<LaurentPoly> {
    let xs = d.crossings();
    if xs.len() > cap {
        return Err(Error::ResourceCap {
            what: "crossing count",
            size: xs.len(),
            cap,
        });
    }
    let loop_factor = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
    let mut total = LaurentPoly::zero();
    for mask in 0u64..1 << xs.len() {
        let mut parent = HashMap::new();
        let mut sigma = 0i32;
        for (c, x) in xs.iter().enumerate() {
            let (p, q) = if mask >> c & 1 == 0 {
                sigma += 1;
                ((0, 1), (2, 3))
            } else {
                sigma -= 1;
                ((0, 3), (1, 2))
            };
            for (a, b) in [p, q] {
                let (ra, rb) = (find(&mut parent, x[a]), find(&mut parent, x[b]));
                parent.insert(ra, rb);
            }
        }
        let labels: BTreeSet<u32> = xs.iter().flatten().copied().collect();
        let roots: BTreeSet<u32> = labels.into_iter().map(|l| find(&mut parent, l)).collect();
        let circles = roots.len() + d.loops().len();
        let sign = if sigma.rem_euclid(2) == 0 { 1 } else { -1 };
        total = &total + &(&LaurentPoly::monomial(sign, sigma) * &loop_factor.pow(circles as u32));
    }
    Ok(total)
}

/// Multiplies by `A^{-3w}` and substitutes `A² = -q⁻¹`.
pub fn jones_from_bracket(b: &LaurentPoly, writhe: i32) -> LaurentPoly {
    let shifted = b.shift(-3 * writhe);
    let mut out = LaurentPoly::zero();
    for (e, c) in shifted.terms() {
        assert!(e % 2 == 0, "normalized bracket has an odd exponent");
        let half = e / 2;
        let sign = if half.rem_euclid(2) == 0 { 1 } else { -1 };
        out.add_term(sign * c, -half);
    }
    out
}

type GraphKey = (usize, BTreeSet<(usize, usize)>);

fn delcon(n: usize, edges: BTreeSet<(usize, usize)>, memo: &mut HashMap<GraphKey, LaurentPoly>) -> LaurentPoly {
    let Some(&(a, b)) = edges.iter().next() else {
        return LaurentPoly::monomial(1, n as i32);
    };
    let key = (n, edges.clone());
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let mut deleted = edges.clone();
    deleted.remove(&(a, b));
    // Contract b into a, then renumber so vertices stay 0..n-1.
    let relabel = |v: usize| {
        let v = if v == b { a } else { v };
        if v > b {
            v - 1
        } else {
            v
        }
    };
    let contracted: BTreeSet<(usize, usize)> = deleted
        .iter()
        .map(|&(x, y)| (relabel(x), relabel(y)))
        .filter(|(x, y)| x != y)
        .map(|(x, y)| (x.min(y), x.max(y)))
        .collect();
    let p = &delcon(n, deleted, memo) - &delcon(n - 1, contracted, memo);
    memo.insert(key, p.clone());
    p
}

/// Chromatic polynomial in `λ` by deletion and contraction.
pub fn chromatic_delcon(vertices: usize, edges: &[(usize, usize)]) -> LaurentPoly {
    let set = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    delcon(vertices, set, &mut HashMap::new())
}

fn dense_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Homology by dense Gaussian elimination on `Vec<bool>` rows.
pub fn dense_homology<S>(c: &GradedComplex<S>, cap: usize) -> Result<HomologyTable> {
    let mut ranks: BTreeMap<Grading, usize> = BTreeMap::new();
    for g in c.gradings() {
        let n = c.dim(g);
        if n > cap {
            return Err(Error::ResourceCap {
                what: "dense block dimension",
                size: n,
                cap,
            });
        }
        let r = match c.differential(g) {
            Some(m) => dense_rank(
                (0..m.rows())
                    .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
                    .collect(),
            ),
            None => 0,
        };
        ranks.insert(*g, r);
    }
    Ok(HomologyTable::from_dims(c.gradings().map(|g| {
        let incoming = ranks.get(&g.shifted(-c.step())).copied().unwrap_or(0);
        (*g, c.dim(g) - ranks[g] - incoming)
    })))
}

/// `(1/p) Σ_k |Fix(φ^k)|` per grading.
pub fn burnside_orbit_count<S, F>(
    blocks: &BTreeMap<Grading, Vec<S>>,
    p: usize,
    act: F,
) -> Result<BTreeMap<Grading, usize>>
where
    S: Clone + Eq + Hash,
    F: Fn(&S) -> S,
{
    let mut out = BTreeMap::new();
    for (g, states) in blocks {
        let mut fixed = 0usize;
        for s in states {
            let mut t = s.clone();
            for _ in 0..p {
                if t == *s {
                    fixed += 1;
                }
                t = act(&t);
            }
        }
        if !fixed.is_multiple_of(p) {
            return Err(Error::InvalidAction(format!(
                "Burnside count {fixed}/{p} in grading {g} is not an integer"
            )));
        }
        out.insert(*g, fixed / p);
    }
    Ok(out)
}
