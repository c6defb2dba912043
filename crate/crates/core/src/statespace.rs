//! Floating-point state spaces of block-diagonal matrix algebras Mat(n₁)⊕…⊕Mat(n_k):
//! faces through support and maximal projections, sampled sharpness checks, and the
//! cone-of-revolution experiment. Every verdict here is numeric, within tolerances.

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use thiserror::Error;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateSpaceError {
    #[error("matrix is not self-adjoint (deviation {0:e})")]
    NotSelfAdjoint(f64),
    #[error("not a state: {0}")]
    NotAState(String),
    #[error("eigen-decomposition failed")]
    EigenFailure,
    #[error("angle {0} is outside (0, 90) degrees")]
    BadAngle(f64),
    #[error("matrix size does not match the algebra")]
    DimensionMismatch,
}

pub type Result<T> = std::result::Result<T, StateSpaceError>;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tolerances {
    pub sym: f64,
    pub proj: f64,
    pub psd: f64,
    pub tr: f64,
    pub rank: f64,
    pub gap: f64,
    pub flat: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { sym: 1e-10, proj: 1e-10, psd: 1e-10, tr: 1e-10, rank: 1e-8, gap: 1e-8, flat: 1e-6 }
    }
}

fn c(re: f64) -> C64 {
    Complex::new(re, 0.0)
}

fn frob(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Clone, Debug)]
pub struct HermMat(CMat);

impl HermMat {
    pub fn new(m: CMat, tau_sym: f64) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(StateSpaceError::DimensionMismatch);
        }
        let dev = frob(&(&m - m.adjoint()));
        if dev > tau_sym {
            return Err(StateSpaceError::NotSelfAdjoint(dev));
        }
        Ok(HermMat((&m + m.adjoint()) * c(0.5)))
    }

    fn from_raw(m: CMat) -> Self {
        HermMat((&m + m.adjoint()) * c(0.5))
    }

    pub fn from_real_diag(d: &[f64]) -> Self {
        HermMat(CMat::from_diagonal(&nalgebra::DVector::from_iterator(d.len(), d.iter().map(|&x| c(x)))))
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// Real part of tr(AB), the inner product on self-adjoint matrices.
    pub fn inner(&self, o: &HermMat) -> f64 {
        (&self.0 * &o.0).trace().re
    }

    fn eigen(&self) -> Result<nalgebra::SymmetricEigen<C64, nalgebra::Dyn>> {
        let e = self.0.clone().symmetric_eigen();
        if e.eigenvalues.iter().any(|x| !x.is_finite()) {
            return Err(StateSpaceError::EigenFailure);
        }
        Ok(e)
    }

    /// Eigenvalues in decreasing order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut v: Vec<f64> = self.eigen()?.eigenvalues.iter().copied().collect();
        v.sort_by(|a, b| b.total_cmp(a));
        Ok(v)
    }

    /// Sum of the spectral projections whose eigenvalue satisfies `keep`.
    pub fn spectral_projection(&self, keep: impl Fn(f64) -> bool) -> Result<OrthProj> {
        let n = self.dim();
        let e = self.eigen()?;
        let mut p = CMat::zeros(n, n);
        for k in 0..n {
            if keep(e.eigenvalues[k]) {
                let v = e.eigenvectors.column(k);
                p += &v * v.adjoint();
            }
        }
        Ok(OrthProj(HermMat::from_raw(p)))
    }

    pub fn max_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?[0])
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(*self.eigenvalues()?.last().expect("nonempty"))
    }
}

/// Orthogonal projection p = p² = p*.
#[derive(Clone, Debug)]
pub struct OrthProj(HermMat);

impl OrthProj {
    pub fn matrix(&self) -> &CMat {
        self.0.matrix()
    }

    pub fn rank(&self) -> usize {
        self.0.matrix().trace().re.round() as usize
    }

    /// p ≤ q in the projection order, i.e. pq = p.
    pub fn leq(&self, q: &OrthProj, tau: f64) -> bool {
        frob(&(self.matrix() * q.matrix() - self.matrix())) <= tau
    }

    pub fn distance(&self, q: &OrthProj) -> f64 {
        frob(&(self.matrix() - q.matrix()))
    }

    pub fn is_projection(&self, tau: f64) -> bool {
        frob(&(self.matrix() * self.matrix() - self.matrix())) <= tau
    }
}

/// Block sizes of Mat(n₁,ℂ)⊕…⊕Mat(n_k,ℂ), embedded block-diagonally.
#[derive(Clone, Debug, Serialize)]
pub struct Algebra {
    pub blocks: Vec<usize>,
}

impl Algebra {
    pub fn new(blocks: Vec<usize>) -> Self {
        assert!(!blocks.is_empty() && blocks.iter().all(|&b| b > 0), "blocks must be positive");
        Algebra { blocks }
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().sum()
    }

    fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|&b| {
                start += b;
                start - b..start
            })
            .collect()
    }

    fn in_algebra(&self, m: &CMat, tau: f64) -> bool {
        let rs = self.block_ranges();
        let block_of = |i: usize| rs.iter().position(|r| r.contains(&i));
        (0..m.nrows()).all(|i| (0..m.ncols()).all(|j| block_of(i) == block_of(j) || m[(i, j)].norm() <= tau))
    }

    fn gaussian(rng: &mut impl Rng, n: usize, m: usize) -> CMat {
        CMat::from_fn(n, m, |_, _| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
    }

    fn unitary(rng: &mut impl Rng, n: usize) -> CMat {
        Self::gaussian(rng, n, n).qr().q()
    }

    /// Either a Gaussian self-adjoint element, or one with a deliberately repeated spectrum.
    pub fn random_element(&self, rng: &mut impl Rng) -> HermMat {
        let n = self.dim();
        let mut m = CMat::zeros(n, n);
        let degenerate = rng.gen_bool(0.5);
        for r in self.block_ranges() {
            let b = r.len();
            let blk = if degenerate {
                let v = Self::unitary(rng, b);
                let d: Vec<C64> = (0..b).map(|_| c(rng.gen_range(-1..=2) as f64)).collect();
                &v * CMat::from_diagonal(&nalgebra::DVector::from_vec(d)) * v.adjoint()
            } else {
                let g = Self::gaussian(rng, b, b);
                (&g + g.adjoint()) * c(0.5)
            };
            m.view_mut((r.start, r.start), (b, b)).copy_from(&blk);
        }
        HermMat::from_raw(m)
    }

    /// A state of random rank, with some blocks possibly carrying no weight.
    pub fn random_state(&self, rng: &mut impl Rng) -> State {
        let n = self.dim();
        let ranges = self.block_ranges();
        let mut weights: Vec<f64> = ranges.iter().map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.1..1.0) }).collect();
        if weights.iter().all(|&w| w == 0.0) {
            let k = rng.gen_range(0..weights.len());
            weights[k] = 1.0;
        }
        let mut m = CMat::zeros(n, n);
        for (r, w) in ranges.iter().zip(&weights) {
            if *w == 0.0 {
                continue;
            }
            let b = r.len();
            let k = rng.gen_range(1..=b);
            let g = Self::gaussian(rng, b, k);
            let blk = &g * g.adjoint();
            let t = blk.trace().re;
            m.view_mut((r.start, r.start), (b, b)).copy_from(&(blk * c(*w / t)));
        }
        let t = m.trace().re;
        State { matrix: HermMat::from_raw(m * c(1.0 / t)), algebra: self.clone() }
    }

    /// A random state whose support projection is exactly `p`.
    fn random_state_with_support(&self, rng: &mut impl Rng, p: &OrthProj) -> State {
        let n = self.dim();
        let mut g = Self::gaussian(rng, n, n);
        // keep it inside the algebra
        let ranges = self.block_ranges();
        for i in 0..n {
            for j in 0..n {
                if ranges.iter().position(|r| r.contains(&i)) != ranges.iter().position(|r| r.contains(&j)) {
                    g[(i, j)] = c(0.0);
                }
            }
        }
        let m = p.matrix() * &g * g.adjoint() * p.matrix();
        let t = m.trace().re;
        State { matrix: HermMat::from_raw(m * c(1.0 / t)), algebra: self.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct State {
    matrix: HermMat,
    algebra: Algebra,
}

impl State {
    pub fn new(m: CMat, algebra: &Algebra, tol: &Tolerances) -> Result<Self> {
        if m.nrows() != algebra.dim() {
            return Err(StateSpaceError::DimensionMismatch);
        }
        let h = HermMat::new(m, tol.sym)?;
        if !algebra.in_algebra(h.matrix(), tol.sym) {
            return Err(StateSpaceError::NotAState("not block diagonal".into()));
        }
        let lmin = h.min_eigenvalue()?;
        if lmin < -tol.psd {
            return Err(StateSpaceError::NotAState(format!("negative eigenvalue {lmin:e}")));
        }
        let t = h.matrix().trace().re;
        if (t - 1.0).abs() > tol.tr {
            return Err(StateSpaceError::NotAState(format!("trace {t}")));
        }
        Ok(State { matrix: h, algebra: algebra.clone() })
    }

    pub fn matrix(&self) -> &HermMat {
        &self.matrix
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }
}

/// s(ρ): sum of the spectral projections for eigenvalues above τ_rank.
pub fn support_projection(rho: &State, tau_rank: f64) -> Result<OrthProj> {
    rho.matrix.spectral_projection(|x| x > tau_rank)
}

/// p₊(u): spectral projection for the largest eigenvalue, merging eigenvalues within τ_gap.
pub fn maximal_projection(u: &HermMat, tau_gap: f64) -> Result<OrthProj> {
    let top = u.max_eigenvalue()?;
    u.spectral_projection(|x| x >= top - tau_gap)
}

/// F⊥(S,u) = {ρ : s(ρ) ≤ p₊(u)}, with relative interior {ρ : s(ρ) = p₊(u)}.
#[derive(Clone, Debug)]
pub struct ExposedFaceState {
    pub projection: OrthProj,
    tol: Tolerances,
}

impl ExposedFaceState {
    pub fn contains(&self, rho: &State) -> Result<bool> {
        Ok(support_projection(rho, self.tol.rank)?.leq(&self.projection, 1e-6))
    }

    pub fn ri_contains(&self, rho: &State) -> Result<bool> {
        Ok(support_projection(rho, self.tol.rank)?.distance(&self.projection) <= 1e-6)
    }

    /// The face is all of S(A).
    pub fn is_whole(&self) -> bool {
        self.projection.rank() == self.projection.matrix().nrows()
    }
}

pub fn exposed_face_state(u: &HermMat, tol: &Tolerances) -> Result<ExposedFaceState> {
    Ok(ExposedFaceState { projection: maximal_projection(u, tol.gap)?, tol: *tol })
}

/// N(S,ρ) = {u : s(ρ) ≤ p₊(u)}, with relative interior {u : s(ρ) = p₊(u)}.
#[derive(Clone, Debug)]
pub struct NormalConeState {
    pub support: OrthProj,
    tol: Tolerances,
}

impl NormalConeState {
    pub fn contains(&self, u: &HermMat) -> Result<bool> {
        Ok(self.support.leq(&maximal_projection(u, self.tol.gap)?, 1e-6))
    }

    pub fn ri_contains(&self, u: &HermMat) -> Result<bool> {
        Ok(self.support.distance(&maximal_projection(u, self.tol.gap)?) <= 1e-6)
    }
}

pub fn normal_cone_state(rho: &State, tol: &Tolerances) -> Result<NormalConeState> {
    Ok(NormalConeState { support: support_projection(rho, tol.rank)?, tol: *tol })
}

#[derive(Clone, Debug, Serialize)]
pub struct SharpReport {
    pub blocks: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub tau: f64,
    pub violations: usize,
    pub max_violation: f64,
    /// Violations per check.
    pub by_check: Vec<(String, usize)>,
    pub numeric: bool,
}

impl SharpReport {
    pub fn passes(&self) -> bool {
        self.violations == 0
    }
}

/// Samples u and ρ and checks that u is sharp normal and ρ is sharp exposed, comparing the
/// definitions (tr ρu = λ_max(u)) with the projection descriptions of faces and cones.
pub fn verify_sharp_properties(algebra: &Algebra, samples: usize, tau: f64, seed: u64) -> Result<SharpReport> {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = ["shift_invariance", "sharp_normal", "sharp_exposed", "pointwise_duality"];
    let mut counts = [0usize; 4];
    let mut max_violation: f64 = 0.0;
    let mut violations = 0;
    let n = algebra.dim();
    let id = CMat::identity(n, n);
    for _ in 0..samples {
        let mut dev = [0.0f64; 4];
        let u = algebra.random_element(&mut rng);
        let p = maximal_projection(&u, tol.gap)?;
        let lmax = u.max_eigenvalue()?;

        let (alpha, beta): (f64, f64) = (rng.gen_range(0.5..3.0), rng.gen_range(-2.0..2.0));
        let shifted = HermMat::from_raw(u.matrix() * c(alpha) + &id * c(beta));
        dev[0] = maximal_projection(&shifted, tol.gap)?.distance(&p);

        // ρ in ri F⊥(u): it attains the support value and u lies in ri N(ρ)
        let rho = algebra.random_state_with_support(&mut rng, &p);
        let attained = ((rho.matrix.matrix() * u.matrix()).trace().re - lmax).abs();
        let ri = normal_cone_state(&rho, &tol)?.support.distance(&p);
        dev[1] = attained.max(ri);

        // v in ri N(σ): σ attains the support value of v and lies in ri F⊥(v)
        let sigma = algebra.random_state(&mut rng);
        let s = support_projection(&sigma, tol.rank)?;
        let comp = &id - s.matrix();
        let h = algebra.random_element(&mut rng);
        let shift = h.max_eigenvalue()? + rng.gen_range(0.1..1.0);
        let below = &comp * (h.matrix() - &id * c(shift)) * &comp;
        let v = HermMat::from_raw((s.matrix() + below) * c(alpha) + &id * c(beta));
        let vmax = v.max_eigenvalue()?;
        let attained = ((sigma.matrix.matrix() * v.matrix()).trace().re - vmax).abs();
        let ri = exposed_face_state(&v, &tol)?.projection.distance(&s);
        dev[2] = attained.max(ri);

        // tr(σu) = h(S,u) ⟺ s(σ) ≤ p₊(u)
        let by_value = ((sigma.matrix.matrix() * u.matrix()).trace().re - lmax).abs() <= tau.max(1e-7);
        let by_proj = s.leq(&p, 1e-6);
        dev[3] = if by_value == by_proj { 0.0 } else { 1.0 };

        let mut bad = false;
        for k in 0..4 {
            max_violation = max_violation.max(dev[k]);
            if dev[k] > tau {
                counts[k] += 1;
                bad = true;
            }
        }
        violations += usize::from(bad);
    }
    Ok(SharpReport {
        blocks: algebra.blocks.clone(),
        samples,
        seed,
        tau,
        violations,
        max_violation,
        by_check: names.iter().map(|s| s.to_string()).zip(counts).collect(),
        numeric: true,
    })
}

/// Orthonormal frame of the trace-one, σ₃-free affine space inside Mat(ℂ,2)⊕ℂ, centered at I/3.
pub struct ConeFrame {
    pub basis: [HermMat; 3],
}

impl ConeFrame {
    pub fn new() -> Self {
        let i = Complex::new(0.0, 1.0);
        let z = c(0.0);
        let r2 = 1.0 / 2f64.sqrt();
        let r6 = 1.0 / 6f64.sqrt();
        let e1 = CMat::from_row_slice(3, 3, &[z, c(r2), z, c(r2), z, z, z, z, z]);
        let e2 = CMat::from_row_slice(3, 3, &[z, -i * r2, z, i * r2, z, z, z, z, z]);
        let e3 = CMat::from_row_slice(3, 3, &[c(-r6), z, z, z, c(-r6), z, z, z, c(2.0 * r6)]);
        ConeFrame { basis: [HermMat::from_raw(e1), HermMat::from_raw(e2), HermMat::from_raw(e3)] }
    }

    pub fn matrix(&self, v: [f64; 3]) -> HermMat {
        let m = self.basis.iter().zip(v).fold(CMat::zeros(3, 3), |acc, (b, x)| acc + b.matrix() * c(x));
        HermMat::from_raw(m)
    }

    pub fn coords(&self, m: &HermMat) -> [f64; 3] {
        [self.basis[0].inner(m), self.basis[1].inner(m), self.basis[2].inner(m)]
    }

    fn centered(&self, m: &CMat) -> HermMat {
        HermMat::from_raw(m - CMat::identity(3, 3) * c(1.0 / 3.0))
    }

    pub fn apex(&self) -> [f64; 3] {
        self.coords(&self.centered(&CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.0), c(0.0), c(1.0)]))))
    }

    pub fn base_center(&self) -> [f64; 3] {
        self.coords(&self.centered(&CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.5), c(0.5), c(0.0)]))))
    }

    /// Radius of the base disk: distance from its center to the pure state (I+σ₁)/2 ⊕ 0.
    pub fn base_radius(&self) -> f64 {
        let half = c(0.5);
        let pure = CMat::from_row_slice(3, 3, &[half, half, c(0.0), half, half, c(0.0), c(0.0), c(0.0), c(0.0)]);
        let (p, b) = (self.coords(&self.centered(&pure)), self.base_center());
        (0..3).map(|k| (p[k] - b[k]).powi(2)).sum::<f64>().sqrt()
    }

    /// Half-aperture of the cone, in degrees.
    pub fn half_aperture_deg(&self) -> f64 {
        let (a, b) = (self.apex(), self.base_center());
        let h = (0..3).map(|k| (a[k] - b[k]).powi(2)).sum::<f64>().sqrt();
        (self.base_radius() / h).atan().to_degrees()
    }
}

impl Default for ConeFrame {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionReport {
    pub flat_spots: usize,
    pub corners: usize,
    /// Smooth endpoints of flat spots: the tangency points.
    pub non_exposed_points: usize,
    /// Each flat spot is exposed by its limiting normal, so the touching cone there is a
    /// normal cone.
    pub touching_equals_normal: bool,
    pub max_support_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub boundary_samples: usize,
    pub flat_spots: usize,
    /// Sampled boundary points whose face failed the exposure test.
    pub non_exposed_samples: usize,
    pub all_exposed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeReport {
    pub phi_deg: f64,
    /// Angle between plane and axis at which the section turns from hyperbolic to elliptic.
    pub phi_star_deg: f64,
    pub conic_type: String,
    pub resolution: usize,
    pub projection: ProjectionReport,
    pub intersection: IntersectionReport,
    /// Largest gap between the support functions of π(K) and conv(base ∪ apex).
    pub duality_max_deviation: f64,
    pub numeric: bool,
}

struct Plane {
    w: [[f64; 3]; 2],
}

impl Plane {
    fn at(&self, a: f64, b: f64) -> [f64; 3] {
        [0, 1, 2].map(|k| a * self.w[0][k] + b * self.w[1][k])
    }
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Plane through I/3 spanned by e₁ and a unit vector at angle φ from the axis e₃.
fn plane(phi: f64) -> Plane {
    let (s, co) = phi.to_radians().sin_cos();
    Plane { w: [[1.0, 0.0, 0.0], [0.0, s, co]] }
}

/// Support point of C in direction v (frame coordinates), with its support value and rank.
fn support_point(frame: &ConeFrame, v: [f64; 3], tol: &Tolerances) -> Result<([f64; 3], f64, usize)> {
    let u = frame.matrix(v);
    let p = maximal_projection(&u, tol.gap)?;
    let rank = p.rank();
    let rho = HermMat::from_raw(p.matrix() * c(1.0 / rank as f64));
    Ok((frame.coords(&rho), u.max_eigenvalue()?, rank))
}

fn project_report(frame: &ConeFrame, pl: &Plane, n: usize, tol: &Tolerances) -> Result<ProjectionReport> {
    let theta0 = 0.1234;
    let dir = |t: f64| pl.at(t.cos(), t.sin());
    let q_at = |t: f64| -> Result<([f64; 2], f64)> {
        let (x, h, _) = support_point(frame, dir(t), tol)?;
        Ok(([dot3(x, pl.w[0]), dot3(x, pl.w[1])], h))
    };
    let dist = |a: [f64; 2], b: [f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
    let step = std::f64::consts::TAU / n as f64;
    let mut qs = Vec::with_capacity(n);
    let mut max_support_deviation: f64 = 0.0;
    for k in 0..n {
        let t = theta0 + k as f64 * step;
        let (q, h) = q_at(t)?;
        max_support_deviation = max_support_deviation.max((q[0] * t.cos() + q[1] * t.sin() - h).abs());
        qs.push(q);
    }
    let still: Vec<bool> = (0..n).map(|k| dist(qs[k], qs[(k + 1) % n]) <= tol.flat).collect();
    let mut flat_spots = 0;
    let mut non_exposed_points = 0;
    let mut touching_equals_normal = true;
    for k in 0..n {
        if still[k] {
            continue;
        }
        // a discontinuity of the support point survives bisection, a smooth step does not
        let (mut ta, mut tb) = (theta0 + k as f64 * step, theta0 + (k + 1) as f64 * step);
        let (mut qa, mut qb) = (qs[k], qs[(k + 1) % n]);
        for _ in 0..40 {
            let tm = 0.5 * (ta + tb);
            let (qm, _) = q_at(tm)?;
            if dist(qm, qa) > dist(qb, qm) {
                tb = tm;
                qb = qm;
            } else {
                ta = tm;
                qa = qm;
            }
        }
        if dist(qa, qb) <= 1e-6 {
            continue;
        }
        flat_spots += 1;
        let t = 0.5 * (ta + tb);
        let (nrm, (_, h)) = ([t.cos(), t.sin()], q_at(t)?);
        let on = |q: [f64; 2]| (q[0] * nrm[0] + q[1] * nrm[1] - h).abs() <= 1e-6;
        touching_equals_normal &= on(qa) && on(qb);
        if !still[(k + n - 1) % n] {
            non_exposed_points += 1;
        }
        if !still[(k + 1) % n] {
            non_exposed_points += 1;
        }
    }
    let corners = (0..n).filter(|&k| still[k] && !still[(k + n - 1) % n]).count();
    Ok(ProjectionReport { flat_spots, corners, non_exposed_points, touching_equals_normal, max_support_deviation })
}

fn intersection_report(frame: &ConeFrame, pl: &Plane, n: usize, tol: &Tolerances) -> Result<IntersectionReport> {
    let third = CMat::identity(3, 3) * c(1.0 / 3.0);
    let state_at = |x: [f64; 3]| HermMat::from_raw(&third + frame.matrix(x).matrix());
    let step = std::f64::consts::TAU / n as f64;
    let mut pts = Vec::with_capacity(n);
    let mut supports = Vec::with_capacity(n);
    let alg = Algebra::new(vec![2, 1]);
    for k in 0..n {
        let t = 0.0567 + k as f64 * step;
        let (mut lo, mut hi) = (0.0, 2.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if state_at(pl.at(mid * t.cos(), mid * t.sin())).min_eigenvalue()? >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let rho = State { matrix: state_at(pl.at(lo * t.cos(), lo * t.sin())), algebra: alg.clone() };
        supports.push(support_projection(&rho, tol.rank)?);
        pts.push([lo * t.cos(), lo * t.sin()]);
    }
    let same: Vec<bool> = (0..n).map(|k| supports[k].distance(&supports[(k + 1) % n]) <= 1e-6).collect();
    let flat_spots = (0..n).filter(|&k| same[k] && !same[(k + n - 1) % n]).count();
    let mut non_exposed_samples = 0;
    for k in 0..n {
        let (a, b) = (pts[(k + n - 1) % n], pts[(k + 1) % n]);
        let tangent = [b[0] - a[0], b[1] - a[1]];
        let len = tangent[0].hypot(tangent[1]);
        let nrm = [tangent[1] / len, -tangent[0] / len];
        let val = |p: [f64; 2]| p[0] * nrm[0] + p[1] * nrm[1];
        let top = val(pts[k]);
        let exposed = (0..n).all(|m| val(pts[m]) < top - 1e-9 || supports[m].leq(&supports[k], 1e-6));
        if !exposed {
            non_exposed_samples += 1;
        }
    }
    Ok(IntersectionReport { boundary_samples: n, flat_spots, non_exposed_samples, all_exposed: non_exposed_samples == 0 })
}

/// The cone C = conv(equatorial disk ⊕ 0, 0₂ ⊕ 1) cut and projected by the plane through I/3
/// at angle φ (degrees) from the cone axis.
pub fn cone_experiment(phi_deg: f64, resolution: usize, tau_flat: f64) -> Result<ConeReport> {
    if !(phi_deg > 0.0 && phi_deg < 90.0) {
        return Err(StateSpaceError::BadAngle(phi_deg));
    }
    let tol = Tolerances { flat: tau_flat, ..Tolerances::default() };
    let frame = ConeFrame::new();
    let phi_star = frame.half_aperture_deg();
    let conic_type = if (phi_deg - phi_star).abs() <= 1e-9 {
        "parabolic"
    } else if phi_deg > phi_star {
        "elliptic"
    } else {
        "hyperbolic"
    };
    let pl = plane(phi_deg);
    let projection = project_report(&frame, &pl, resolution, &tol)?;
    let intersection = intersection_report(&frame, &pl, resolution, &tol)?;

    let (apex, base, r) = (frame.apex(), frame.base_center(), frame.base_radius());
    let mut duality_max_deviation: f64 = 0.0;
    let m = 200;
    for k in 0..m {
        // Fibonacci sphere directions
        let z = 1.0 - (2 * k + 1) as f64 / m as f64;
        let rad = (1.0 - z * z).sqrt();
        let a = k as f64 * 2.399_963_229_728_653;
        let v = [rad * a.cos(), rad * a.sin(), z];
        let h_proj = frame.matrix(v).max_eigenvalue()?;
        let h_conv = dot3(apex, v).max(dot3(base, v) + r * v[0].hypot(v[1]));
        duality_max_deviation = duality_max_deviation.max((h_proj - h_conv).abs());
    }
    Ok(ConeReport {
        phi_deg,
        phi_star_deg: phi_star,
        conic_type: conic_type.into(),
        resolution,
        projection,
        intersection,
        duality_max_deviation,
        numeric: true,
    })
}
