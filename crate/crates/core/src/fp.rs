//! Exact arithmetic and linear algebra over prime fields F_p.
//!
//! Message symbols, side-information matrices and code generator matrices all
//! live here. Entries are canonical residues in `[0, p)` stored as `u64`; the
//! modulus is restricted to `p < 2^31` so products never overflow.

use rand::Rng;

use crate::error::{Error, Result};

/// A prime field F_p identified by its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Construct the field, verifying primality by trial division.
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        debug_assert!(a < self.p);
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0 && a < self.p, "inverse of zero or out-of-range element");
        self.pow(a, self.p - 2)
    }

    /// Reduce an arbitrary integer to its canonical residue.
    pub fn reduce_i64(&self, a: i64) -> u64 {
        let p = self.p as i64;
        (((a % p) + p) % p) as u64
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Dense row-major matrix over F_p. Column vectors are `cols == 1` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
    field: PrimeField,
}

impl FpMatrix {
    /// Build from row-major entries, reducing each into `[0, p)`.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            entries.extend(row.iter().map(|&e| e % field.modulus()));
        }
        Self { rows: nrows, cols: ncols, entries, field }
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0; rows * cols], field }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Column vector from a slice of residues.
    pub fn column_vector(field: PrimeField, entries: &[u64]) -> Self {
        let entries: Vec<u64> = entries.iter().map(|&e| e % field.modulus()).collect();
        Self { rows: entries.len(), cols: 1, entries, field }
    }

    /// A matrix with zero rows (used for the "no side information" case).
    pub fn empty(field: PrimeField, cols: usize) -> Self {
        Self { rows: 0, cols, entries: Vec::new(), field }
    }

    /// Entries i.i.d. uniform on `[0, p)`, reproducible from the given stream.
    pub fn random<R: Rng>(field: PrimeField, rows: usize, cols: usize, rng: &mut R) -> Self {
        let p = field.modulus();
        let entries = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
        Self { rows, cols, entries, field }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        assert_eq!(self.field, other.field, "fields must agree");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = f.add(out[(i, j)], f.mul(a, other[(k, j)]));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Self { rows: self.rows, cols: self.cols, entries, field: f }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Self { rows: self.rows, cols: self.cols, entries, field: f }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    /// Vertical concatenation of `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self { rows: self.rows + other.rows, cols: self.cols, entries, field: self.field }
    }

    /// Reduced row-echelon form and the list of pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(r) = (pivot_row..m.rows).find(|&r| m[(r, col)] != 0) else {
                continue;
            };
            m.swap_rows(pivot_row, r);
            let inv = f.inv(m[(pivot_row, col)]);
            for j in col..m.cols {
                m[(pivot_row, j)] = f.mul(m[(pivot_row, j)], inv);
            }
            for r in 0..m.rows {
                if r != pivot_row && m[(r, col)] != 0 {
                    let factor = m[(r, col)];
                    for j in col..m.cols {
                        let delta = f.mul(factor, m[(pivot_row, j)]);
                        m[(r, j)] = f.sub(m[(r, j)], delta);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A matrix whose columns form a basis of `{x : self * x = 0}`.
    ///
    /// Column count is `cols - rank`; the returned matrix always has full
    /// column rank. Built from the rref: each free column contributes one
    /// basis vector with a 1 in that coordinate.
    pub fn null_space_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let f = self.field;
        let mut basis = Self::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis[(fc, k)] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                basis[(pc, k)] = f.neg(r[(i, fc)]);
            }
        }
        basis
    }

    /// One solution `v` of `self * v = u`, with free variables set to zero.
    pub fn particular_solution(&self, u: &Self) -> Result<Self> {
        assert_eq!(u.cols, 1, "right-hand side must be a column vector");
        if u.rows != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: u.rows });
        }
        let aug = self.hstack(u);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(Error::InconsistentSystem);
        }
        let mut v = Self::zeros(self.field, self.cols, 1);
        for (i, &pc) in pivots.iter().enumerate() {
            v[(pc, 0)] = r[(i, self.cols)];
        }
        Ok(v)
    }

    /// Kronecker product `self ⊗ I_ell`: block `(i, j)` is `self[i,j] * I_ell`.
    pub fn kron_with_identity(&self, ell: usize) -> Self {
        assert!(ell >= 1);
        let mut out = Self::zeros(self.field, self.rows * ell, self.cols * ell);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self[(i, j)];
                if e == 0 {
                    continue;
                }
                for k in 0..ell {
                    out[(i * ell + k, j * ell + k)] = e;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for FpMatrix {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FpMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.entries[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn primality_check() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(97).is_ok());
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(91), Err(Error::NotPrime(91)));
        assert!(PrimeField::new(1 << 31).is_err());
    }

    #[test]
    fn field_axioms_exhaustive_small_primes() {
        for p in [2u64, 3, 5, 7, 11, 13, 31, 97] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p {
                for b in 0..p {
                    assert_eq!(f.add(a, b), (a + b) % p);
                    assert_eq!(f.mul(a, b), a * b % p);
                    assert_eq!(f.add(a, f.neg(a)), 0);
                    assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
                    for c in 0..p {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
            }
        }
    }

    #[test]
    fn rref_example_2_matrix() {
        // first row is the F_5 sum of the other two, so rank 2
        let m = FpMatrix::from_rows(f5(), &[vec![1, 4, 3], vec![4, 3, 0], vec![2, 1, 3]]);
        let (_, pivots) = m.rref();
        assert_eq!(pivots.len(), 2);
        assert_eq!(m.rank(), 2);
        let sum_row = FpMatrix::from_rows(f5(), &[vec![4, 3, 0]])
            .add(&FpMatrix::from_rows(f5(), &[vec![2, 1, 3]]));
        assert_eq!(sum_row.row(0), &[1, 4, 3]);
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = FpMatrix::identity(f5(), 3);
        let (r, pivots) = id.rref();
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1, 2]);

        let f3 = PrimeField::new(3).unwrap();
        let z = FpMatrix::zeros(f3, 2, 4);
        let (r, pivots) = z.rref();
        assert!(r.is_zero());
        assert!(pivots.is_empty());
    }

    #[test]
    fn rank_examples() {
        let m = FpMatrix::from_rows(f5(), &[vec![0, 1, 0]]);
        assert_eq!(m.rank(), 1);
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(FpMatrix::identity(f7, 4).rank(), 4);
    }

    #[test]
    fn null_space_of_coordinate_kernel() {
        let m = FpMatrix::from_rows(f5(), &[vec![0, 1, 0]]);
        let basis = m.null_space_basis();
        assert_eq!((basis.rows(), basis.cols()), (3, 2));
        assert_eq!(basis.entries(), &[1, 0, 0, 0, 0, 1]);
        assert!(m.mul(&basis).is_zero());
    }

    #[test]
    fn null_space_of_identity_is_empty() {
        let f3 = PrimeField::new(3).unwrap();
        let basis = FpMatrix::identity(f3, 2).null_space_basis();
        assert_eq!(basis.cols(), 0);
    }

    #[test]
    fn null_space_matches_exhaustive_scan() {
        // kernel of a 2x3 rank-2 matrix over F_5, cross-checked by scanning
        // all 5^3 vectors
        let m = FpMatrix::from_rows(f5(), &[vec![4, 3, 0], vec![2, 1, 3]]);
        let basis = m.null_space_basis();
        assert_eq!(basis.cols(), 1);
        assert!(!basis.is_zero());
        assert!(m.mul(&basis).is_zero());

        let mut kernel_count = 0;
        for a in 0..5u64 {
            for b in 0..5u64 {
                for c in 0..5u64 {
                    let v = FpMatrix::column_vector(f5(), &[a, b, c]);
                    if m.mul(&v).is_zero() {
                        kernel_count += 1;
                    }
                }
            }
        }
        assert_eq!(kernel_count, 5); // span of one basis vector
    }

    #[test]
    fn particular_solution_examples() {
        let m = FpMatrix::from_rows(f5(), &[vec![0, 1, 0]]);
        let u = FpMatrix::column_vector(f5(), &[3]);
        let v = m.particular_solution(&u).unwrap();
        assert_eq!(v.entries(), &[0, 3, 0]);

        let f3 = PrimeField::new(3).unwrap();
        let id = FpMatrix::identity(f3, 2);
        let u = FpMatrix::column_vector(f3, &[1, 2]);
        assert_eq!(id.particular_solution(&u).unwrap().entries(), &[1, 2]);

        let m = FpMatrix::from_rows(f3, &[vec![1, 0], vec![1, 0]]);
        let u = FpMatrix::column_vector(f3, &[1, 2]);
        assert_eq!(m.particular_solution(&u), Err(Error::InconsistentSystem));
    }

    #[test]
    fn kron_with_identity_examples() {
        let m = FpMatrix::from_rows(f5(), &[vec![2]]);
        let k = m.kron_with_identity(2);
        assert_eq!(k.entries(), &[2, 0, 0, 2]);

        let m = FpMatrix::from_rows(f5(), &[vec![0, 1, 0]]);
        assert_eq!(m.kron_with_identity(1), m);

        let f3 = PrimeField::new(3).unwrap();
        let s = FpMatrix::from_rows(f3, &[vec![1, 2], vec![0, 1]]);
        let k = s.kron_with_identity(2);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i % 2 == j % 2 { s[(i / 2, j / 2)] } else { 0 };
                assert_eq!(k[(i, j)], expected);
            }
        }
    }

    #[test]
    fn kron_rank_is_ell_times_rank() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for p in [2u64, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            for k in 1..=4usize {
                for ell in 1..=3usize {
                    let rows = 1 + (rng.gen_range(0..k as u64) as usize);
                    let s = FpMatrix::random(f, rows, k, &mut rng);
                    assert_eq!(s.kron_with_identity(ell).rank(), ell * s.rank());
                }
            }
        }
    }

    #[test]
    fn random_matrix_is_deterministic_per_seed() {
        let f = f5();
        let a = FpMatrix::random(f, 4, 3, &mut ChaCha12Rng::seed_from_u64(42));
        let b = FpMatrix::random(f, 4, 3, &mut ChaCha12Rng::seed_from_u64(42));
        assert_eq!(a, b);
    }

    #[test]
    fn random_matrix_is_uniform() {
        // p=2: fraction of ones over 1e5 scalar draws within a 5-sigma
        // binomial interval of 1/2
        let f2 = PrimeField::new(2).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let n = 100_000;
        let ones: u64 = (0..n)
            .map(|_| FpMatrix::random(f2, 1, 1, &mut rng)[(0, 0)])
            .sum();
        let frac = ones as f64 / n as f64;
        assert!((frac - 0.5).abs() < 0.01, "fraction of ones {frac}");

        // p=5: each residue frequency within 5 sigma of 0.2
        let f = f5();
        let n = 10_000usize;
        let mut counts = [0usize; 5];
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        for _ in 0..n {
            counts[FpMatrix::random(f, 1, 1, &mut rng)[(0, 0)] as usize] += 1;
        }
        let sigma = (0.2 * 0.8 / n as f64).sqrt();
        for &c in &counts {
            let freq = c as f64 / n as f64;
            assert!((freq - 0.2).abs() <= 5.0 * sigma, "residue frequency {freq}");
        }
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..50 {
            let p = [2u64, 3, 5, 7][rng.gen_range(0..4) as usize];
            let f = PrimeField::new(p).unwrap();
            let m = FpMatrix::random(f, rng.gen_range(1..6), rng.gen_range(1..6), &mut rng);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn null_space_and_solution_properties() {
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        for _ in 0..100 {
            let p = [2u64, 3, 5][rng.gen_range(0..3) as usize];
            let f = PrimeField::new(p).unwrap();
            let m = FpMatrix::random(f, rng.gen_range(1..5), rng.gen_range(1..5), &mut rng);
            let basis = m.null_space_basis();
            assert!(m.mul(&basis).is_zero());
            assert_eq!(basis.rank(), m.cols() - m.rank());

            // build a guaranteed-consistent rhs and check the solver
            let x = FpMatrix::random(f, m.cols(), 1, &mut rng);
            let u = m.mul(&x);
            let v = m.particular_solution(&u).unwrap();
            assert_eq!(m.mul(&v), u);
        }
    }
}
