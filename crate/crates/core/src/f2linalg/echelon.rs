use super::bits::BitRow;

const NONE: usize = usize::MAX;

/// Incremental row-echelon basis. Each stored row is keyed by its lowest set
/// bit, and no two rows share a pivot.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    width: usize,
    rows: Vec<BitRow>,
    pivot_row: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            pivot_row: vec![NONE; width],
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`, returning `true` when it was independent of the rows
    /// already present.
    pub(crate) fn insert(&mut self, mut v: BitRow) -> bool {
        debug_assert_eq!(v.len(), self.width);
        while let Some(c) = v.lowest_set() {
            match self.pivot_row[c] {
                NONE => {
                    self.pivot_row[c] = self.rows.len();
                    self.rows.push(v);
                    return true;
                }
                r => v.xor_assign(&self.rows[r]),
            }
        }
        false
    }

    /// Reduced row-echelon form: rows sorted by pivot, each pivot column
    /// clear in every other row.
    pub(crate) fn into_rref(self) -> Vec<BitRow> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.lowest_set());
        for i in (0..rows.len()).rev() {
            let p = rows[i].lowest_set().expect("echelon rows are nonzero");
            let (head, tail) = rows.split_at_mut(i);
            for r in head.iter_mut() {
                if r.get(p) {
                    r.xor_assign(&tail[0]);
                }
            }
        }
        rows
    }
}

/// Solves for coordinates with respect to a fixed list of independent
/// vectors.
#[derive(Clone, Debug)]
pub(crate) struct Coordinates {
    count: usize,
    rows: Vec<(BitRow, BitRow)>,
    pivot_row: Vec<usize>,
}

impl Coordinates {
    /// Panics when `vectors` are dependent.
    pub(crate) fn new(width: usize, vectors: &[BitRow]) -> Self {
        let count = vectors.len();
        let mut me = Self {
            count,
            rows: Vec::with_capacity(count),
            pivot_row: vec![NONE; width],
        };
        for (i, v) in vectors.iter().enumerate() {
            let (v, combo) = me.reduce(v.clone(), BitRow::unit(count, i));
            let c = v.lowest_set().expect("coordinate vectors must be independent");
            me.pivot_row[c] = me.rows.len();
            me.rows.push((v, combo));
        }
        me
    }

    fn reduce(&self, mut v: BitRow, mut combo: BitRow) -> (BitRow, BitRow) {
        while let Some(c) = v.lowest_set() {
            match self.pivot_row[c] {
                NONE => break,
                r => {
                    v.xor_assign(&self.rows[r].0);
                    combo.xor_assign(&self.rows[r].1);
                }
            }
        }
        (v, combo)
    }

    /// Coefficients `x` with `Σ x_i vectors_i = v`, or `None` when `v` is
    /// outside their span.
    pub(crate) fn solve(&self, v: &BitRow) -> Option<BitRow> {
        let (rest, combo) = self.reduce(v.clone(), BitRow::zeros(self.count));
        rest.is_zero().then_some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_has_clean_pivot_columns() {
        let mut e = Echelon::new(4);
        assert!(e.insert(BitRow::from_indices(4, [0, 1, 2])));
        assert!(e.insert(BitRow::from_indices(4, [1, 3])));
        assert!(!e.insert(BitRow::from_indices(4, [0, 2, 3])));
        let rref = e.into_rref();
        assert_eq!(rref.len(), 2);
        assert_eq!(rref[0].ones().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert_eq!(rref[1].ones().collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn coordinates_recover_combination() {
        let vs = vec![BitRow::from_indices(3, [0, 1]), BitRow::from_indices(3, [1, 2])];
        let co = Coordinates::new(3, &vs);
        let x = co.solve(&BitRow::from_indices(3, [0, 2])).unwrap();
        assert_eq!(x.ones().collect::<Vec<_>>(), vec![0, 1]);
        assert!(co.solve(&BitRow::from_indices(3, [0])).is_none());
    }
}
