//! Word-parallel bitsets: vertex subsets and adjacency rows.
//!
//! Hinge and mixing counts reduce to popcounts of row intersections, so both
//! the adjacency matrix and vertex subsets share one u64-block layout.

use rand::Rng;

/// A subset of the fixed vertex enumeration 0..n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexSet {
    nbits: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(nbits: usize) -> Self {
        VertexSet {
            nbits,
            words: vec![0; nbits.div_ceil(64)],
        }
    }

    pub fn full(nbits: usize) -> Self {
        let mut s = Self::empty(nbits);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            *w = if lo + 64 <= nbits {
                u64::MAX
            } else {
                mask_below(nbits - lo)
            };
        }
        s
    }

    pub fn from_indices(nbits: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(nbits);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Uniform random subset of exactly `size` vertices, without replacement.
    pub fn random(nbits: usize, size: usize, rng: &mut impl Rng) -> Self {
        assert!(size <= nbits, "subset size {size} exceeds universe {nbits}");
        let picked = rand::seq::index::sample(rng, nbits, size);
        Self::from_indices(nbits, picked.iter())
    }

    #[inline(always)]
    pub fn universe(&self) -> usize {
        self.nbits
    }

    #[inline(always)]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    #[inline(always)]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Cardinality of the set.
    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline(always)]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Member indices, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        iter_ones(&self.words)
    }

    /// Is `self` a subset of `other`?
    pub fn subset_of(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }
}

#[inline(always)]
fn mask_below(bits: usize) -> u64 {
    debug_assert!(bits < 64);
    (1u64 << bits) - 1
}

/// Popcount of the intersection of two word slices of equal length.
#[inline]
pub fn intersect_count(a: &[u64], b: &[u64]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x & y).count_ones() as usize)
        .sum()
}

/// Indices of set bits in a word slice, ascending.
pub fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rem = w;
        std::iter::from_fn(move || {
            if rem == 0 {
                None
            } else {
                let b = rem.trailing_zeros() as usize;
                rem &= rem - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

/// Dense symmetric 0/1 adjacency stored as bitset rows with a common stride.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    n: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Self {
        let stride = n.div_ceil(64);
        BitMatrix {
            n,
            stride,
            words: vec![0; n * stride],
        }
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn set(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.n && j < self.n);
        self.words[i * self.stride + j / 64] |= 1u64 << (j % 64);
    }

    #[inline(always)]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.words[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline(always)]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn row_degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn full_and_empty() {
        let f = VertexSet::full(70);
        assert_eq!(f.len(), 70);
        assert!(f.contains(69));
        let e = VertexSet::empty(70);
        assert!(e.is_empty());
        assert!(e.subset_of(&f));
    }

    #[test]
    fn iteration_matches_membership() {
        let s = VertexSet::from_indices(130, [0, 63, 64, 127, 129]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 127, 129]);
        assert_eq!(s.len(), 5);
        assert!(s.contains(64));
        assert!(!s.contains(65));
    }

    #[test]
    fn intersection_counts() {
        let a = VertexSet::from_indices(100, [1, 2, 3, 64, 65]);
        let b = VertexSet::from_indices(100, [2, 3, 4, 65, 99]);
        assert_eq!(intersect_count(a.words(), b.words()), 3);
    }

    #[test]
    fn random_subsets_are_seed_deterministic() {
        let mut r1 = ChaCha8Rng::seed_from_u64(42);
        let mut r2 = ChaCha8Rng::seed_from_u64(42);
        let a = VertexSet::random(169, 40, &mut r1);
        let b = VertexSet::random(169, 40, &mut r2);
        assert_eq!(a, b);
        assert_eq!(a.len(), 40);
    }

    #[test]
    fn bit_matrix_rows() {
        let mut m = BitMatrix::zeros(9);
        m.set(0, 3);
        m.set(3, 0);
        m.set(8, 8);
        assert!(m.get(0, 3));
        assert!(!m.get(0, 4));
        assert_eq!(m.row_degree(0), 1);
        assert_eq!(iter_ones(m.row(3)).collect::<Vec<_>>(), vec![0]);
    }
}
