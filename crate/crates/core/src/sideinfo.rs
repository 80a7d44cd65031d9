//! Receiver side information and algebraic binning.
//!
//! A receiver knows the values of some F_p-linear combinations of the
//! messages. Canonicalizing the combination matrix, solving the resulting
//! underdetermined system and intersecting with the code carves the subcode
//! the decoder actually searches.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::fp::{FpMatrix, PrimeField};

/// A canonical side information matrix: `M` linearly independent rows over
/// F_p with `M < K`. No side information is the 0 x K matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideInfoMatrix {
    matrix: FpMatrix,
}

impl SideInfoMatrix {
    /// Canonicalize a raw matrix: reduce to rref and drop dependent rows.
    /// Fails if the rows span all of F_p^K (the receiver would already know
    /// every message).
    pub fn canonicalize(raw: &FpMatrix) -> Result<Self> {
        let k = raw.cols();
        let (r, pivots) = raw.rref();
        let m = pivots.len();
        if m == k {
            return Err(Error::FullRankSideInfo(k));
        }
        let rows: Vec<Vec<u64>> = (0..m).map(|i| r.row(i).to_vec()).collect();
        let matrix = if m == 0 {
            FpMatrix::empty(raw.field(), k)
        } else {
            FpMatrix::from_rows(raw.field(), &rows)
        };
        Ok(Self { matrix })
    }

    /// The empty (no side information) matrix.
    pub fn none(field: PrimeField, k: usize) -> Self {
        Self { matrix: FpMatrix::empty(field, k) }
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    /// Number of independent equations M = rank(S).
    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn k(&self) -> usize {
        self.matrix.cols()
    }

    pub fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    /// The block-expanded system matrix `S (x) I_ell` acting on stacked
    /// message vectors.
    pub fn expanded(&self, ell: usize) -> FpMatrix {
        self.matrix.kron_with_identity(ell)
    }

    /// Side information values for a given true message: `u = (S (x) I_ell) w`.
    pub fn observe(&self, w: &FpMatrix, ell: usize) -> FpMatrix {
        self.expanded(ell).mul(w)
    }
}

/// The binning data a receiver derives from `(S, u)` and the code generator:
/// a null-space basis, the coset leader consistent with `u`, and the subcode
/// generator `G * A_S`.
#[derive(Debug, Clone)]
pub struct ExpurgationData {
    a_s: FpMatrix,
    v: FpMatrix,
    sub_gen: FpMatrix,
}

impl ExpurgationData {
    pub fn a_s(&self) -> &FpMatrix {
        &self.a_s
    }

    /// Coset leader: one message vector consistent with the side information.
    pub fn coset_leader(&self) -> &FpMatrix {
        &self.v
    }

    pub fn sub_generator(&self) -> &FpMatrix {
        &self.sub_gen
    }

    /// Reconstruct a full message from the effective message: `w = v + A_S w~`.
    pub fn recover_message(&self, w_tilde: &FpMatrix) -> FpMatrix {
        self.v.add(&self.a_s.mul(w_tilde))
    }

    /// Replace the coset leader with one solved from fresh side values
    /// (the basis and subcode generator do not depend on `u`).
    pub fn with_side_values(&self, s: &SideInfoMatrix, u: &FpMatrix, ell: usize) -> Result<Self> {
        let v = solve_coset_leader(s, u, ell)?;
        Ok(Self { a_s: self.a_s.clone(), v, sub_gen: self.sub_gen.clone() })
    }
}

/// Compute the binning data for a receiver `(S, u)` against generator `G`.
pub fn expurgate(
    s: &SideInfoMatrix,
    u: &FpMatrix,
    generator: &FpMatrix,
    ell: usize,
) -> Result<ExpurgationData> {
    let skron = s.expanded(ell);
    let a_s = skron.null_space_basis();
    debug_assert_eq!(a_s.cols(), (s.k() - s.rank()) * ell);
    let v = solve_coset_leader(s, u, ell)?;
    let sub_gen = generator.mul(&a_s);
    let expected = a_s.cols();
    let rank = sub_gen.rank();
    if rank < expected {
        return Err(Error::DegenerateSubcode { rank, expected });
    }
    Ok(ExpurgationData { a_s, v, sub_gen })
}

fn solve_coset_leader(s: &SideInfoMatrix, u: &FpMatrix, ell: usize) -> Result<FpMatrix> {
    if u.rows() != s.rank() * ell {
        return Err(Error::DimensionMismatch { expected: s.rank() * ell, got: u.rows() });
    }
    s.expanded(ell)
        .particular_solution(u)
        .map_err(|_| Error::InconsistentSideInfo)
}

/// One canonical matrix per subspace of F_p^K with dimension 0..K-1.
///
/// Duplicate row spaces collapse because the rref form is a unique canonical
/// representative. The raw scan enumerates all M x K matrices, so the cap
/// guards the total work.
pub fn enumerate_subspaces(field: PrimeField, k: usize, cap: u128) -> Result<Vec<SideInfoMatrix>> {
    assert!(k >= 1);
    let p = field.modulus() as u128;
    let mut work: u128 = 0;
    for m in 1..k {
        work = work
            .checked_add(p.pow((m * k) as u32))
            .ok_or(Error::EnumerationTooLarge { required: u128::MAX, cap })?;
    }
    if work > cap {
        return Err(Error::EnumerationTooLarge { required: work, cap });
    }

    let mut out = vec![SideInfoMatrix::none(field, k)];
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for m in 1..k {
        let total = p.pow((m * k) as u32);
        for idx in 0..total {
            let mut digits = vec![0u64; m * k];
            let mut rem = idx;
            for d in digits.iter_mut().rev() {
                *d = (rem % p) as u64;
                rem /= p;
            }
            let rows: Vec<Vec<u64>> = digits.chunks(k).map(|c| c.to_vec()).collect();
            let raw = FpMatrix::from_rows(field, &rows);
            if raw.rank() != m {
                continue; // lower-dimensional spans are covered by smaller M
            }
            let canon = SideInfoMatrix::canonicalize(&raw)?;
            if seen.insert(canon.matrix().entries().to_vec()) {
                out.push(canon);
            }
        }
    }
    out.sort_by(|a, b| {
        (a.rank(), a.matrix().entries()).cmp(&(b.rank(), b.matrix().entries()))
    });
    Ok(out)
}

/// Number of M-dimensional subspaces of F_p^K (Gaussian binomial).
pub fn subspace_count(p: u64, k: usize, m: usize) -> u128 {
    if m > k {
        return 0;
    }
    let p = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..m {
        num *= p.pow((k - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}
