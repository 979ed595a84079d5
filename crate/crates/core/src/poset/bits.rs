/// Dense square boolean matrix stored as packed `u64` rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    #[inline]
    pub(crate) fn get(&self, row: usize, col: usize) -> bool {
        self.data[row * self.words + col / 64] >> (col % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize) {
        self.data[row * self.words + col / 64] |= 1 << (col % 64);
    }

    #[inline]
    pub(crate) fn row(&self, row: usize) -> &[u64] {
        &self.data[row * self.words..(row + 1) * self.words]
    }

    /// `dst |= src`, row-wise.
    pub(crate) fn union_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let w = self.words;
        let (d, s) = (dst * w, src * w);
        for k in 0..w {
            self.data[d + k] |= self.data[s + k];
        }
    }

    pub(crate) fn count_row(&self, row: usize) -> usize {
        self.row(row).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn transpose(&self) -> Self {
        let mut t = Self::new(self.n);
        for i in 0..self.n {
            for j in ones(self.row(i)) {
                t.set(j, i);
            }
        }
        t
    }
}

/// Indices of set bits in a packed row, ascending.
pub(crate) fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(k, &word)| {
        let mut w = word;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * 64 + bit)
        })
    })
}

/// Bitwise AND of two packed rows.
pub(crate) fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

/// `a ⊆ b` for packed rows.
pub(crate) fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_and_iterate() {
        let mut m = BitMatrix::new(130);
        m.set(3, 0);
        m.set(3, 64);
        m.set(3, 129);
        assert!(m.get(3, 64));
        assert!(!m.get(3, 65));
        assert_eq!(ones(m.row(3)).collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(m.count_row(3), 3);
        let t = m.transpose();
        assert!(t.get(129, 3));
    }

    #[test]
    fn union_and_subset() {
        let mut m = BitMatrix::new(10);
        m.set(0, 1);
        m.set(1, 2);
        m.union_rows(0, 1);
        assert_eq!(ones(m.row(0)).collect::<Vec<_>>(), vec![1, 2]);
        assert!(is_subset(m.row(1), m.row(0)));
        assert!(!is_subset(m.row(0), m.row(1)));
        assert_eq!(ones(&and(m.row(0), m.row(1))).collect::<Vec<_>>(), vec![2]);
    }
}
