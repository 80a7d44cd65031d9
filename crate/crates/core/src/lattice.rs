//! Coarse lattices with exact closest-point quantizers.
//!
//! Three scaled families are supported: Z^n, D_n (checkerboard) and E8. Each
//! admits a fast exact nearest-point algorithm, so modulo reduction and
//! decoding are exact rather than approximate. Geometry (volume, effective
//! radius, covering radius) comes from closed forms per family.

use rand::Rng;

use crate::error::{Error, Result};
use crate::vecmath::{distance, sub};

/// Absolute tolerance for geometric comparisons.
pub const GEOM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeFamily {
    /// Scaled integer lattice Z^n.
    Zn,
    /// Scaled checkerboard lattice D_n = {x in Z^n : sum(x) even}, n >= 2.
    Dn,
    /// Scaled Gosset lattice E8 = D8 union (D8 + 1/2), n = 8.
    E8,
}

impl LatticeFamily {
    pub fn name(&self) -> &'static str {
        match self {
            LatticeFamily::Zn => "zn",
            LatticeFamily::Dn => "dn",
            LatticeFamily::E8 => "e8",
        }
    }

    /// Covering radius of the unit-scale lattice.
    fn base_covering_radius(&self, n: usize) -> f64 {
        match self {
            LatticeFamily::Zn => (n as f64).sqrt() / 2.0,
            // deep holes of D_n: (1,0,...,0) at distance 1 and the half-point
            // (1/2,...,1/2) at distance sqrt(n)/2; the larger one covers
            LatticeFamily::Dn => f64::max(1.0, (n as f64).sqrt() / 2.0),
            LatticeFamily::E8 => 1.0,
        }
    }

    /// Voronoi cell volume of the unit-scale lattice.
    fn base_volume(&self) -> f64 {
        match self {
            LatticeFamily::Zn => 1.0,
            LatticeFamily::Dn => 2.0,
            LatticeFamily::E8 => 1.0,
        }
    }

    fn check_dimension(&self, n: usize) -> bool {
        match self {
            LatticeFamily::Zn => n >= 1,
            LatticeFamily::Dn => n >= 2,
            LatticeFamily::E8 => n == 8,
        }
    }
}

/// Geometric figures of a lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub volume: f64,
    pub r_eff: f64,
    pub r_cov: f64,
}

/// A scaled lattice `scale * family`, with generator rows as basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    family: LatticeFamily,
    dim: usize,
    scale: f64,
    generator: Vec<Vec<f64>>,
    inverse: Vec<Vec<f64>>,
}

impl LatticeSpec {
    pub fn new(family: LatticeFamily, dim: usize, scale: f64) -> Result<Self> {
        if !family.check_dimension(dim) {
            return Err(Error::DimensionMismatch { expected: 8, got: dim });
        }
        assert!(scale > 0.0 && scale.is_finite(), "scale must be positive");
        let generator: Vec<Vec<f64>> = base_generator(family, dim)
            .iter()
            .map(|row| row.iter().map(|&e| scale * e).collect())
            .collect();
        let inverse = invert(&generator).expect("family generators are full rank");
        Ok(Self { family, dim, scale, generator, inverse })
    }

    /// Scale chosen so that the covering radius equals sqrt(n).
    pub fn scaled_to_covering(family: LatticeFamily, dim: usize) -> Result<Self> {
        let target = (dim as f64).sqrt();
        let scale = target / family.base_covering_radius(dim);
        Self::new(family, dim, scale)
    }

    pub fn family(&self) -> LatticeFamily {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Basis vectors as rows.
    pub fn generator(&self) -> &[Vec<f64>] {
        &self.generator
    }

    /// The lattice point with the given integer (or real) coefficients:
    /// sum of `coeffs[i] * basis_row[i]`.
    pub fn lattice_point(&self, coeffs: &[f64]) -> Vec<f64> {
        assert_eq!(coeffs.len(), self.dim);
        let mut out = vec![0.0; self.dim];
        for (c, row) in coeffs.iter().zip(&self.generator) {
            for (o, g) in out.iter_mut().zip(row) {
                *o += c * g;
            }
        }
        out
    }

    /// Coefficients of an arbitrary point in the basis (real-valued).
    pub fn coefficients_of(&self, point: &[f64]) -> Vec<f64> {
        assert_eq!(point.len(), self.dim);
        // point = G^T c  =>  c = (G^-1)^T point
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.inverse[j][i] * point[j]).sum())
            .collect()
    }

    /// Exact closest lattice point.
    ///
    /// Ties are broken deterministically: half-integers round to even in the
    /// coordinate rounding, the D_n parity repair flips the lowest qualifying
    /// index, and E8 prefers the D8 branch over D8 + 1/2 on equal distance.
    pub fn quantize(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let y: Vec<f64> = x.iter().map(|&v| v / self.scale).collect();
        let q = match self.family {
            LatticeFamily::Zn => round_zn(&y),
            LatticeFamily::Dn => round_dn(&y),
            LatticeFamily::E8 => round_e8(&y),
        };
        Ok(q.iter().map(|&v| v * self.scale).collect())
    }

    /// `x mod Lambda = x - Q(x)`; the result lies in the Voronoi region.
    pub fn mod_lattice(&self, x: &[f64]) -> Result<Vec<f64>> {
        let q = self.quantize(x)?;
        Ok(sub(x, &q))
    }

    pub fn geometry(&self) -> Geometry {
        let n = self.dim;
        let volume = self.family.base_volume() * self.scale.powi(n as i32);
        let r_eff = (volume / unit_ball_volume(n)).powf(1.0 / n as f64);
        let r_cov = self.scale * self.family.base_covering_radius(n);
        Geometry { volume, r_eff, r_cov }
    }

    /// Integer coefficient bounds `(lo, hi)` covering every lattice point in
    /// the closed ball `B(center, r)`: the i-th coefficient of any such point
    /// deviates from the center's coefficient by at most
    /// `||i-th column of G^-1|| * r`.
    pub fn coefficient_box(&self, center: &[f64], r: f64) -> (Vec<i64>, Vec<i64>) {
        assert_eq!(center.len(), self.dim);
        assert!(r >= 0.0);
        let c0 = self.coefficients_of(center);
        let bounds: Vec<f64> = (0..self.dim)
            .map(|i| {
                let col_norm: f64 = (0..self.dim)
                    .map(|j| self.inverse[j][i] * self.inverse[j][i])
                    .sum::<f64>()
                    .sqrt();
                col_norm * r
            })
            .collect();
        let lo: Vec<i64> = (0..self.dim)
            .map(|i| (c0[i] - bounds[i] - GEOM_TOL).ceil() as i64)
            .collect();
        let hi: Vec<i64> = (0..self.dim)
            .map(|i| (c0[i] + bounds[i] + GEOM_TOL).floor() as i64)
            .collect();
        (lo, hi)
    }

    /// Exact number of lattice points in the closed ball `B(center, r)`,
    /// by exhaustive enumeration of a coefficient box. Only for n <= 4.
    pub fn count_points_in_ball(&self, center: &[f64], r: f64) -> Result<usize> {
        if self.dim > 4 {
            return Err(Error::DimensionTooLarge { max: 4, got: self.dim });
        }
        if center.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: center.len() });
        }
        let (lo, hi) = self.coefficient_box(center, r);
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(0);
        }
        let mut count = 0usize;
        let mut coeffs = lo.clone();
        'outer: loop {
            let real: Vec<f64> = coeffs.iter().map(|&c| c as f64).collect();
            let point = self.lattice_point(&real);
            if distance(&point, center) <= r + GEOM_TOL {
                count += 1;
            }
            for i in 0..self.dim {
                coeffs[i] += 1;
                if coeffs[i] <= hi[i] {
                    continue 'outer;
                }
                coeffs[i] = lo[i];
            }
            break;
        }
        Ok(count)
    }

    /// Uniform sample from the fundamental parallelepiped of the generator.
    pub fn sample_fundamental<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        let coeffs: Vec<f64> = (0..self.dim).map(|_| rng.gen::<f64>()).collect();
        self.lattice_point(&coeffs)
    }
}

/// Volume of the n-dimensional unit ball, via V_n = V_{n-2} * 2*pi/n.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(n - 2) * 2.0 * std::f64::consts::PI / n as f64,
    }
}

fn base_generator(family: LatticeFamily, n: usize) -> Vec<Vec<f64>> {
    match family {
        LatticeFamily::Zn => (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect(),
        LatticeFamily::Dn => {
            // rows: (-1,-1,0,...), (1,-1,0,...), (0,1,-1,...), ..., (0,...,1,-1)
            let mut rows = vec![vec![0.0; n]; n];
            rows[0][0] = -1.0;
            rows[0][1] = -1.0;
            rows[1][0] = 1.0;
            rows[1][1] = -1.0;
            for (i, row) in rows.iter_mut().enumerate().skip(2) {
                row[i - 1] = 1.0;
                row[i] = -1.0;
            }
            rows
        }
        LatticeFamily::E8 => {
            let mut rows = vec![vec![0.0; 8]; 8];
            rows[0][0] = 2.0;
            for i in 1..7 {
                rows[i][i - 1] = -1.0;
                rows[i][i] = 1.0;
            }
            rows[7] = vec![0.5; 8];
            rows
        }
    }
}

fn round_zn(y: &[f64]) -> Vec<f64> {
    y.iter().map(|&v| v.round_ties_even()).collect()
}

/// Nearest point of D_n: round every coordinate, and if the coordinate sum is
/// odd, re-round the coordinate with the largest residual the other way.
fn round_dn(y: &[f64]) -> Vec<f64> {
    let mut f = round_zn(y);
    let sum: i64 = f.iter().map(|&v| v as i64).sum();
    if sum.rem_euclid(2) == 1 {
        let mut worst = 0;
        let mut worst_res = -1.0;
        for (i, (&yi, &fi)) in y.iter().zip(&f).enumerate() {
            let res = (yi - fi).abs();
            if res > worst_res + GEOM_TOL {
                worst = i;
                worst_res = res;
            }
        }
        let dir = if y[worst] - f[worst] >= 0.0 { 1.0 } else { -1.0 };
        f[worst] += dir;
    }
    f
}

/// Nearest point of E8 via the D8 / (D8 + 1/2) decomposition.
fn round_e8(y: &[f64]) -> Vec<f64> {
    let a = round_dn(y);
    let shifted: Vec<f64> = y.iter().map(|&v| v - 0.5).collect();
    let b: Vec<f64> = round_dn(&shifted).iter().map(|&v| v + 0.5).collect();
    let da = sq_dist(y, &a);
    let db = sq_dist(y, &b);
    if da <= db {
        a
    } else {
        b
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Gauss-Jordan inverse with partial pivoting; `None` if singular.
fn invert(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        let p = a[col][col];
        for v in a[col].iter_mut() {
            *v /= p;
        }
        for row in 0..n {
            if row != col && a[row][col] != 0.0 {
                let factor = a[row][col];
                let pivot_row = a[col].clone();
                for (v, pv) in a[row].iter_mut().zip(&pivot_row) {
                    *v -= factor * pv;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by LU with partial pivoting (used in tests and diagnostics).
pub fn determinant(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (v, pv) in a[row].iter_mut().zip(&pivot_row).skip(col) {
                *v -= factor * pv;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vecmath::norm;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn zn_quantize_rounds_coordinates() {
        let l = LatticeSpec::new(LatticeFamily::Zn, 2, 1.0).unwrap();
        assert_eq!(l.quantize(&[1.3, -0.6]).unwrap(), vec![1.0, -1.0]);

        let l5 = LatticeSpec::new(LatticeFamily::Zn, 2, 5.0).unwrap();
        assert_eq!(l5.quantize(&[3.0, 1.0]).unwrap(), vec![5.0, 0.0]);
    }

    #[test]
    fn quantize_is_identity_on_lattice_points() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for l in [
            LatticeSpec::new(LatticeFamily::Zn, 3, 1.5).unwrap(),
            LatticeSpec::new(LatticeFamily::Dn, 4, 2.0).unwrap(),
            LatticeSpec::new(LatticeFamily::E8, 8, 0.7).unwrap(),
        ] {
            for _ in 0..50 {
                let coeffs: Vec<f64> =
                    (0..l.dim()).map(|_| rng.gen_range(-5..=5) as f64).collect();
                let p = l.lattice_point(&coeffs);
                let q = l.quantize(&p).unwrap();
                for (a, b) in p.iter().zip(&q) {
                    assert!((a - b).abs() < GEOM_TOL, "{p:?} -> {q:?}");
                }
            }
        }
    }

    #[test]
    fn mod_lattice_examples() {
        let l = LatticeSpec::new(LatticeFamily::Zn, 2, 1.0).unwrap();
        let m = l.mod_lattice(&[1.3, -0.6]).unwrap();
        assert!((m[0] - 0.3).abs() < GEOM_TOL && (m[1] - 0.4).abs() < GEOM_TOL);

        // zero exactly on lattice points
        let m = l.mod_lattice(&[3.0, -7.0]).unwrap();
        assert_eq!(m, vec![0.0, 0.0]);
    }

    #[test]
    fn mod_lattice_distributivity() {
        // [x1 + x2] mod L == [[x1] mod L + x2] mod L
        let l = LatticeSpec::new(LatticeFamily::Zn, 2, 1.0).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a: Vec<f64> = (0..2).map(|_| rng.gen_range(-10.0..10.0)).collect();
            let b: Vec<f64> = (0..2).map(|_| rng.gen_range(-10.0..10.0)).collect();
            let lhs = l.mod_lattice(&crate::vecmath::add(&a, &b)).unwrap();
            let rhs = l
                .mod_lattice(&crate::vecmath::add(&l.mod_lattice(&a).unwrap(), &b))
                .unwrap();
            for (x, y) in lhs.iter().zip(&rhs) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mod_lattice_stays_within_covering_radius() {
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        for l in [
            LatticeSpec::new(LatticeFamily::Zn, 4, 2.0).unwrap(),
            LatticeSpec::new(LatticeFamily::Dn, 3, 1.0).unwrap(),
            LatticeSpec::new(LatticeFamily::E8, 8, 1.0).unwrap(),
        ] {
            let r_cov = l.geometry().r_cov;
            for _ in 0..200 {
                let x: Vec<f64> = (0..l.dim()).map(|_| rng.gen_range(-20.0..20.0)).collect();
                let m = l.mod_lattice(&x).unwrap();
                assert!(norm(&m) <= r_cov + GEOM_TOL);
            }
        }
    }

    #[test]
    fn geometry_z1_and_z2() {
        let g = LatticeSpec::new(LatticeFamily::Zn, 1, 1.0).unwrap().geometry();
        assert!((g.volume - 1.0).abs() < 1e-12);
        assert!((g.r_cov - 0.5).abs() < 1e-12);
        assert!((g.r_eff - 0.5).abs() < 1e-12);

        let g = LatticeSpec::new(LatticeFamily::Zn, 2, 1.0).unwrap().geometry();
        assert!((g.volume - 1.0).abs() < 1e-12);
        assert!((g.r_cov - std::f64::consts::SQRT_2 / 2.0).abs() < 1e-12);
        assert!((g.r_eff - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn geometry_volume_matches_generator_determinant() {
        for l in [
            LatticeSpec::new(LatticeFamily::Zn, 4, 1.3).unwrap(),
            LatticeSpec::new(LatticeFamily::Dn, 2, 1.0).unwrap(),
            LatticeSpec::new(LatticeFamily::Dn, 5, 0.8).unwrap(),
            LatticeSpec::new(LatticeFamily::E8, 8, 1.0).unwrap(),
            LatticeSpec::new(LatticeFamily::E8, 8, 2.5).unwrap(),
        ] {
            let det = determinant(l.generator()).abs();
            assert!(
                (det - l.geometry().volume).abs() < 1e-9 * l.geometry().volume,
                "{:?}: det {det} vs volume {}",
                l.family(),
                l.geometry().volume
            );
        }
    }

    #[test]
    fn geometry_r_eff_never_exceeds_r_cov() {
        for l in [
            LatticeSpec::new(LatticeFamily::Zn, 1, 1.0).unwrap(),
            LatticeSpec::new(LatticeFamily::Zn, 6, 2.0).unwrap(),
            LatticeSpec::new(LatticeFamily::Dn, 2, 1.0).unwrap(),
            LatticeSpec::new(LatticeFamily::Dn, 8, 3.0).unwrap(),
            LatticeSpec::new(LatticeFamily::E8, 8, 1.0).unwrap(),
        ] {
            let g = l.geometry();
            assert!(g.r_eff <= g.r_cov + 1e-12, "{:?}: {g:?}", l.family());
        }
    }

    #[test]
    fn covering_radius_witnessed_by_deep_holes() {
        // a known deep hole attains r_cov, and random search never exceeds it
        let cases = [
            (LatticeSpec::new(LatticeFamily::Zn, 2, 1.0).unwrap(), vec![0.5, 0.5]),
            (LatticeSpec::new(LatticeFamily::Dn, 2, 1.0).unwrap(), vec![1.0, 0.0]),
            (LatticeSpec::new(LatticeFamily::Dn, 6, 1.0).unwrap(), vec![0.5; 6]),
            (
                LatticeSpec::new(LatticeFamily::E8, 8, 1.0).unwrap(),
                vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            ),
        ];
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        for (l, hole) in cases {
            let r_cov = l.geometry().r_cov;
            let d = distance(&hole, &l.quantize(&hole).unwrap());
            assert!((d - r_cov).abs() < GEOM_TOL, "{:?}: hole at {d}, r_cov {r_cov}", l.family());
            let mut max_seen: f64 = 0.0;
            for _ in 0..20_000 {
                let x: Vec<f64> = (0..l.dim()).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let dist = distance(&x, &l.quantize(&x).unwrap());
                max_seen = max_seen.max(dist);
                assert!(dist <= r_cov + GEOM_TOL);
            }
            assert!(max_seen > 0.5 * r_cov, "search should get reasonably deep");
        }
    }

    #[test]
    fn scale_to_covering_examples() {
        let l = LatticeSpec::scaled_to_covering(LatticeFamily::Zn, 4).unwrap();
        assert!((l.scale() - 2.0).abs() < 1e-12);
        assert!((l.geometry().r_cov - 2.0).abs() < 1e-12);

        let l = LatticeSpec::scaled_to_covering(LatticeFamily::Zn, 1).unwrap();
        assert!((l.scale() - 2.0).abs() < 1e-12);

        let l = LatticeSpec::scaled_to_covering(LatticeFamily::E8, 8).unwrap();
        assert!((l.scale() - 8.0_f64.sqrt()).abs() < 1e-12);
        assert!((l.geometry().r_cov - 8.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn count_points_in_ball_examples() {
        let z2 = LatticeSpec::new(LatticeFamily::Zn, 2, 1.0).unwrap();
        assert_eq!(z2.count_points_in_ball(&[0.0, 0.0], 1.2).unwrap(), 5);
        assert_eq!(z2.count_points_in_ball(&[0.0, 0.0], 0.5).unwrap(), 1);

        let z1 = LatticeSpec::new(LatticeFamily::Zn, 1, 1.0).unwrap();
        assert_eq!(z1.count_points_in_ball(&[0.5], 0.5).unwrap(), 2);

        let e8 = LatticeSpec::new(LatticeFamily::E8, 8, 1.0).unwrap();
        assert!(matches!(
            e8.count_points_in_ball(&[0.0; 8], 1.0),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn counting_bound_on_z2_and_d2() {
        // |L ∩ B(s,r)| <= (V_n / Vol) * (r_cov + r)^n
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for l in [
            LatticeSpec::new(LatticeFamily::Zn, 2, 1.0).unwrap(),
            LatticeSpec::new(LatticeFamily::Dn, 2, 1.0).unwrap(),
        ] {
            let g = l.geometry();
            for _ in 0..100 {
                let center: Vec<f64> = (0..2).map(|_| rng.gen_range(-3.0..3.0)).collect();
                let r = rng.gen_range(0.0..5.0);
                let count = l.count_points_in_ball(&center, r).unwrap() as f64;
                let bound = unit_ball_volume(2) / g.volume * (g.r_cov + r).powi(2);
                assert!(count <= bound + 1e-9, "count {count} > bound {bound}");
            }
        }
    }

    #[test]
    fn coefficients_roundtrip() {
        let mut rng = ChaCha12Rng::seed_from_u64(29);
        for l in [
            LatticeSpec::new(LatticeFamily::Dn, 4, 1.7).unwrap(),
            LatticeSpec::new(LatticeFamily::E8, 8, 2.0).unwrap(),
        ] {
            for _ in 0..20 {
                let coeffs: Vec<f64> =
                    (0..l.dim()).map(|_| rng.gen_range(-4..=4) as f64).collect();
                let p = l.lattice_point(&coeffs);
                let back = l.coefficients_of(&p);
                for (a, b) in coeffs.iter().zip(&back) {
                    assert!((a - b).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn dn_quantizer_respects_parity() {
        let l = LatticeSpec::new(LatticeFamily::Dn, 3, 1.0).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for _ in 0..500 {
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-4.0..4.0)).collect();
            let q = l.quantize(&x).unwrap();
            let sum: i64 = q.iter().map(|&v| v.round() as i64).sum();
            assert_eq!(sum.rem_euclid(2), 0, "{q:?} not in D_n");
        }
    }

    #[test]
    fn e8_quantizer_beats_or_matches_both_cosets() {
        let l = LatticeSpec::new(LatticeFamily::E8, 8, 1.0).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(37);
        for _ in 0..500 {
            let x: Vec<f64> = (0..8).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let q = l.quantize(&x).unwrap();
            // membership: integer coords with even sum, or all-half-integer
            // coords whose shift by 1/2 lands in D8
            let is_integer = q.iter().all(|&v| (v - v.round()).abs() < 1e-9);
            let shifted: Vec<f64> = q.iter().map(|&v| v - 0.5).collect();
            let is_half = shifted.iter().all(|&v| (v - v.round()).abs() < 1e-9);
            if is_integer {
                let sum: i64 = q.iter().map(|&v| v.round() as i64).sum();
                assert_eq!(sum.rem_euclid(2), 0, "{q:?} not in D8");
            } else {
                assert!(is_half, "{q:?} not in E8");
                let sum: i64 = shifted.iter().map(|&v| v.round() as i64).sum();
                assert_eq!(sum.rem_euclid(2), 0, "{q:?} not in D8 + 1/2");
            }
            // distance never worse than the plain D8 rounding
            let d = distance(&x, &q);
            let a = distance(&x, &round_dn(&x));
            assert!(d <= a + 1e-12);
        }
    }
}
