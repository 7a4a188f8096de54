//! Dense exact rational matrices: just enough linear algebra for the
//! verification oracle.  No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// The Jordan block `J_λ(s)`: `λ` on the diagonal, ones directly above.
    pub fn jordan_block(lambda: &BigRational, size: usize) -> Self {
        let mut m = RationalMatrix::zeros(size, size);
        for i in 0..size {
            m.set(i, i, lambda.clone());
            if i + 1 < size {
                m.set(i, i + 1, BigRational::one());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Writes `block` into `self` with its top-left corner at `(r, c)`.
    pub fn place(&mut self, r: usize, c: usize, block: &RationalMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j) - other.get(i, j));
            }
        }
        out
    }

    /// Kronecker product: block `(i, j)` of the result is
    /// `self[i][j] · other`.
    pub fn kronecker(&self, other: &RationalMatrix) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Exact rank by fraction-free (Bareiss) elimination over the integers,
    /// after clearing denominators row by row.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row: Vec<&BigRational> =
                    (0..self.cols).map(|j| self.get(i, j)).collect();
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
                row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect();

        let (nr, nc) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = BigInt::one();
        let mut row = 0;
        for col in 0..nc {
            // Pivot search: smallest nonzero magnitude keeps growth modest.
            let pivot = (row..nr)
                .filter(|&r| !m[r][col].is_zero())
                .min_by_key(|&r| m[r][col].abs());
            let Some(p) = pivot else { continue };
            m.swap(row, p);
            for r in row + 1..nr {
                for c in col + 1..nc {
                    let val = (&m[row][col] * &m[r][c] - &m[r][col] * &m[row][c]) / &prev;
                    m[r][c] = val;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[row][col].clone();
            rank += 1;
            row += 1;
            if row == nr {
                break;
            }
        }
        rank
    }
}
