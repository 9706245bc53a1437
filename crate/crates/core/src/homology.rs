//! Reduced simplicial homology with Z₂ coefficients.
//!
//! The chain complex is augmented: the empty face spans degree −1, so `∂₀`
//! maps every vertex to `∅` and reduced Betti numbers fall out directly.

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Dim};
use crate::face::Face;

/// Dense matrix over Z₂ stored column-major as packed bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = rows.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; words * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[c * self.words + r / 64] >> (r % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.data[c * self.words + r / 64];
        if value {
            *w |= 1 << (r % 64);
        } else {
            *w &= !(1 << (r % 64));
        }
    }

    fn column(&self, c: usize) -> &[u64] {
        &self.data[c * self.words..(c + 1) * self.words]
    }

    /// Rank over Z₂ by column reduction on lowest set bits.
    pub fn rank(&self) -> usize {
        let mut pivots: Vec<Option<Vec<u64>>> = vec![None; self.rows];
        let mut rank = 0;
        for c in 0..self.cols {
            let mut col = self.column(c).to_vec();
            while let Some(low) = lowest_bit(&col) {
                match &pivots[low] {
                    Some(p) => {
                        for (a, b) in col.iter_mut().zip(p) {
                            *a ^= b;
                        }
                    }
                    None => {
                        pivots[low] = Some(col);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    /// Product `self · other` over Z₂.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for c in 0..other.cols {
            for k in 0..other.rows {
                if other.get(k, c) {
                    let src = self.column(k).to_vec();
                    let dst = &mut out.data[c * out.words..(c + 1) * out.words];
                    for (a, b) in dst.iter_mut().zip(&src) {
                        *a ^= b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }
}

fn lowest_bit(col: &[u64]) -> Option<usize> {
    col.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Boundary map `∂_d` from d-faces (columns) to (d−1)-faces (rows), both in
/// graded lexicographic order. For `d = 0` the single row is `∅`.
pub fn boundary_matrix(k: &Complex, d: isize) -> BitMatrix {
    let rows = k.faces_of_dim(d - 1);
    let cols = k.faces_of_dim(d);
    let row_index: std::collections::HashMap<&Face, usize> =
        rows.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = BitMatrix::zeros(rows.len(), cols.len());
    for (j, f) in cols.iter().enumerate() {
        for r in f.ridges() {
            m.set(row_index[&r], j, true);
        }
    }
    m
}

/// Reduced Betti numbers `β̃_{-1}, …, β̃_d` and the reduced Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiProfile {
    pub betti: Vec<usize>,
    pub euler_reduced: i64,
}

impl BettiProfile {
    /// `β̃_i`; zero outside the stored range.
    pub fn get(&self, i: isize) -> usize {
        if i < -1 {
            return 0;
        }
        self.betti.get((i + 1) as usize).copied().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }
}

pub fn reduced_betti(k: &Complex) -> BettiProfile {
    let top = match k.dim() {
        Dim::NegInfinity => {
            return BettiProfile {
                betti: Vec::new(),
                euler_reduced: 0,
            }
        }
        Dim::Finite(d) => d,
    };
    let f = k.f_vector();
    // rank[i + 1] = rank ∂_i for i in -1..=top+1 (∂_{-1} and ∂_{top+1} are zero).
    let mut ranks = vec![0usize; (top + 3) as usize];
    for d in 0..=top {
        ranks[(d + 1) as usize] = boundary_matrix(k, d).rank();
    }
    let betti = (-1..=top)
        .map(|i| {
            let fi = f[(i + 1) as usize];
            fi - ranks[(i + 1) as usize] - ranks[(i + 2) as usize]
        })
        .collect();
    BettiProfile {
        betti,
        euler_reduced: reduced_euler(k),
    }
}

/// `Σ_{i ≥ -1} (−1)^i f_i`; zero for the empty complex.
pub fn reduced_euler(k: &Complex) -> i64 {
    k.f_vector()
        .iter()
        .enumerate()
        .map(|(n, &count)| {
            // size n means dimension n - 1
            if n % 2 == 1 {
                count as i64
            } else {
                -(count as i64)
            }
        })
        .sum()
}

pub fn has_trivial_reduced_homology(k: &Complex) -> bool {
    reduced_betti(k).is_trivial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face::Vertex;

    fn c(facets: &[&[Vertex]]) -> Complex {
        Complex::from_facets(facets.iter().map(|f| Face::from(*f)))
    }

    #[test]
    fn boundary_matrix_examples() {
        let edge = Complex::simplex([1, 2]);
        let m = boundary_matrix(&edge, 1);
        assert_eq!((m.rows(), m.cols()), (2, 1));
        assert!(m.get(0, 0) && m.get(1, 0));

        let pt = Complex::simplex([1]);
        let m0 = boundary_matrix(&pt, 0);
        assert_eq!((m0.rows(), m0.cols()), (1, 1));
        assert!(m0.get(0, 0));

        let cycle = Complex::boundary_simplex(&Face::from([1, 2, 3]));
        let m1 = boundary_matrix(&cycle, 1);
        assert_eq!((m1.rows(), m1.cols()), (3, 3));
        for j in 0..3 {
            assert_eq!((0..3).filter(|&i| m1.get(i, j)).count(), 2);
        }
    }

    #[test]
    fn spheres() {
        let circle = Complex::boundary_simplex(&Face::from([1, 2, 3]));
        assert_eq!(reduced_betti(&circle).betti, vec![0, 0, 1]);
        assert_eq!(reduced_euler(&circle), -1);
        let s2 = Complex::boundary_simplex(&Face::from([1, 2, 3, 4]));
        assert_eq!(reduced_betti(&s2).betti, vec![0, 0, 0, 1]);
    }

    #[test]
    fn units_and_points() {
        assert_eq!(reduced_betti(&Complex::unit()).betti, vec![1]);
        assert_eq!(reduced_euler(&Complex::unit()), -1);
        assert_eq!(reduced_betti(&Complex::empty()).betti, Vec::<usize>::new());
        assert_eq!(reduced_euler(&Complex::simplex([4])), 0);
        let two_points = c(&[&[1], &[2]]);
        assert_eq!(reduced_betti(&two_points).betti, vec![0, 1]);
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let k = Complex::simplex([0, 1, 2, 3, 4]);
        for d in 1..=4 {
            assert!(boundary_matrix(&k, d - 1)
                .mul(&boundary_matrix(&k, d))
                .is_zero());
        }
    }
}
