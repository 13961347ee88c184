use super::bits::BitRow;
use super::echelon::Echelon;

/// A subspace of GF(2)^n held as a reduced row-echelon basis.
///
/// Pivots (lowest set bits) strictly increase and every pivot column is clear
/// in all other basis rows, so the basis is canonical and derived equality is
/// subspace equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct F2Subspace {
    ambient: usize,
    basis: Vec<BitRow>,
}

impl F2Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| BitRow::unit(ambient, i)))
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = BitRow>) -> Self {
        let mut ech = Echelon::new(ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dimension");
            ech.insert(v);
        }
        Self {
            ambient,
            basis: ech.into_rref(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitRow] {
        &self.basis
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().map(|r| r.lowest_set().expect("nonzero basis row"))
    }

    /// Reduction of `v` modulo the subspace; canonical coset representative.
    pub fn reduce(&self, v: &BitRow) -> BitRow {
        let mut v = v.clone();
        for row in &self.basis {
            let p = row.lowest_set().expect("nonzero basis row");
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitRow) -> bool {
        v.len() == self.ambient && self.reduce(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &F2Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }
}
