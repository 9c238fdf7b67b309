/// Dense matrix over `F_2` with rows packed 64 columns per word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        let bit = 1u64 << (j % 64);
        if v {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    /// `row[dst] ^= row[src]`, touching only words from `from_word` on.
    fn xor_rows(&mut self, src: usize, dst: usize, from_word: usize) {
        let w = self.words;
        let (s, d) = (src * w, dst * w);
        for k in from_word..w {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    /// Reduces to row-echelon form in place and returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pr) = (rank..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(pr, rank);
            let word = c / 64;
            for i in 0..self.rows {
                if i != rank && self.get(i, c) {
                    self.xor_rows(rank, i, word);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_zero() {
        let mut id = BitMatrix::zeros(70, 70);
        for i in 0..70 {
            id.set(i, i, true);
        }
        let before = id.clone();
        assert_eq!(id.rref_in_place(), (0..70).collect::<Vec<_>>());
        assert_eq!(id, before);
        assert_eq!(BitMatrix::zeros(5, 130).rank(), 0);
    }

    #[test]
    fn dependent_rows_across_word_boundary() {
        let mut m = BitMatrix::zeros(3, 130);
        for j in [0, 63, 64, 129] {
            m.set(0, j, true);
        }
        for j in [1, 64, 100] {
            m.set(1, j, true);
        }
        for j in [0, 1, 63, 100, 129] {
            m.set(2, j, true);
        }
        assert_eq!(m.rank(), 2);
    }
}
