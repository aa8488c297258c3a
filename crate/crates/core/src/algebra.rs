//! 2×2 complex matrix kernel: the isometry lift group SL(2,C), its Lie
//! algebra sl(2,C), the variation function and one-parameter centralizer
//! subgroups.
//!
//! The variation function with respect to the trace form b(A,B) = tr(AB) is
//!
//!   F(A) = A − ½ tr(A)·id,
//!
//! which satisfies (d tr)_A(B) = b(F(A), B) and Ad(A)F(A) = F(A). The
//! one-parameter subgroup associated with a non-central A is
//!
//!   ζ_z = exp(z F(A)),  z ∈ C,
//!
//! which centralizes A. For an elliptic A = diag(e^{iα/2}, e^{−iα/2}) real
//! time rotates by 2t·sin(α/2) and imaginary time translates by
//! −2t·sin(α/2) along the invariant axis.
//!
//! Special-unitary elements are identified with unit quaternions
//! q = w + xi + yj + zk via
//!
//!   m(q) = [[w+ix, y+iz], [−y+iz, w−ix]],
//!
//! so that conjugation acts on the imaginary part as the rotation of S² ⊂ R³.
//! All axis computations in the cone-surface layer use this correspondence.

use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Vec3 = Vector3<f64>;

/// Default relative tolerance for the kernel (double precision with 2×2
/// conditioning leaves ample headroom).
pub const DEFAULT_TOL: f64 = 1e-9;

/// Determinant tolerance for the SL(2,C) invariant.
pub const DET_TOL: f64 = 1e-12;

const ONE: C64 = C64::new(1.0, 0.0);
const ZERO: C64 = C64::new(0.0, 0.0);

/// A 2×2 complex matrix with row-major entries (a, b; c, d).
///
/// Serializes as `[[re,im],[re,im],[re,im],[re,im]]`, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Serialize for Mat2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [
            [self.a.re, self.a.im],
            [self.b.re, self.b.im],
            [self.c.re, self.c.im],
            [self.d.re, self.d.im],
        ]
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let e = <[[f64; 2]; 4]>::deserialize(d)?;
        Ok(Mat2::new(
            C64::new(e[0][0], e[0][1]),
            C64::new(e[1][0], e[1][1]),
            C64::new(e[2][0], e[2][1]),
            C64::new(e[3][0], e[3][1]),
        ))
    }
}

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn zero() -> Self {
        Mat2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub fn diag(x: C64, y: C64) -> Self {
        Mat2::new(x, ZERO, ZERO, y)
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(self.a + rhs.a, self.b + rhs.b, self.c + rhs.c, self.d + rhs.d)
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(self.a - rhs.a, self.b - rhs.b, self.c - rhs.c, self.d - rhs.d)
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat2 {
        Mat2::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    /// Max-entry norm; cheap and adequate for 2×2 tolerance checks.
    pub fn norm(&self) -> f64 {
        self.a
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max(self.d.norm())
    }

    pub fn dist(&self, rhs: &Mat2) -> f64 {
        self.sub(rhs).norm()
    }

    pub fn is_finite(&self) -> bool {
        [self.a, self.b, self.c, self.d]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// An element of SL(2,C): a unit-determinant 2×2 complex matrix.
///
/// The constructor renormalizes by a square root of the determinant and
/// rejects near-singular input, so a held value always satisfies
/// |det − 1| ≤ `DET_TOL` up to rounding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElem(Mat2);

impl GroupElem {
    /// Build from a matrix, renormalizing det to 1.
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidInput("non-finite matrix entries".into()));
        }
        let det = m.det();
        if det.norm() < 1e-300 {
            return Err(Error::Singular { det_abs: det.norm() });
        }
        if (det - ONE).norm() <= DET_TOL {
            return Ok(GroupElem(m));
        }
        let s = det.sqrt();
        if s.norm() < 1e-150 {
            return Err(Error::Singular { det_abs: det.norm() });
        }
        Ok(GroupElem(m.scale(s.inv())))
    }

    /// Build without renormalization; debug-asserts the invariant.
    pub(crate) fn new_unchecked(m: Mat2) -> Self {
        debug_assert!((m.det() - ONE).norm() < 1e-6, "det far from 1");
        GroupElem(m)
    }

    pub fn identity() -> Self {
        GroupElem(Mat2::identity())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn det(&self) -> C64 {
        self.0.det()
    }

    /// Group multiplication, renormalized so determinant drift cannot
    /// accumulate along long products.
    pub fn mul(&self, rhs: &GroupElem) -> GroupElem {
        let m = self.0.mul(&rhs.0);
        let det = m.det();
        if (det - ONE).norm() > DET_TOL {
            GroupElem(m.scale(det.sqrt().inv()))
        } else {
            GroupElem(m)
        }
    }

    /// Inverse via the adjugate; exact for unit determinant.
    pub fn inverse(&self) -> GroupElem {
        let m = &self.0;
        GroupElem(Mat2::new(m.d, -m.b, -m.c, m.a))
    }

    pub fn conjugate(&self, by: &GroupElem) -> GroupElem {
        by.mul(self).mul(&by.inverse())
    }

    pub fn dist(&self, rhs: &GroupElem) -> f64 {
        self.0.dist(&rhs.0)
    }

    /// Distance to the nearest central element ±I.
    pub fn central_distance(&self) -> f64 {
        self.0
            .dist(&Mat2::identity())
            .min(self.0.dist(&Mat2::identity().scale(-ONE)))
    }

    pub fn is_central(&self, tol: f64) -> bool {
        self.central_distance() <= tol
    }

    /// m m† = I within tol.
    pub fn is_special_unitary(&self, tol: f64) -> bool {
        self.0.mul(&self.0.adjoint()).dist(&Mat2::identity()) <= tol
    }

    /// Unit-quaternion components (w, x, y, z) of a special-unitary element.
    pub fn to_quaternion(&self) -> [f64; 4] {
        let m = &self.0;
        [
            0.5 * (m.a.re + m.d.re),
            0.5 * (m.a.im - m.d.im),
            0.5 * (m.b.re - m.c.re),
            0.5 * (m.b.im + m.c.im),
        ]
    }

    pub fn from_quaternion(q: [f64; 4]) -> Result<Self> {
        let [w, x, y, z] = q;
        GroupElem::new(Mat2::new(
            C64::new(w, x),
            C64::new(y, z),
            C64::new(-y, z),
            C64::new(w, -x),
        ))
    }

    /// Rotation of S² by angle `angle` about the unit axis `axis`.
    pub fn rotation(axis: Vec3, angle: f64) -> Result<Self> {
        let u = axis.normalize();
        let (s, c) = (0.5 * angle).sin_cos();
        GroupElem::from_quaternion([c, s * u.x, s * u.y, s * u.z])
    }

    /// Action of a special-unitary element on R³ via q v q̄.
    pub fn rotate_vector(&self, v: Vec3) -> Vec3 {
        let [w, x, y, z] = self.to_quaternion();
        let u = Vec3::new(x, y, z);
        let uv = u.cross(&v);
        v + 2.0 * (w * uv + u.cross(&uv))
    }

    /// diag(e^{iθ}, e^{−iθ}); elliptic with eigen-angle θ.
    pub fn elliptic_diag(theta: f64) -> Self {
        GroupElem(Mat2::diag(
            C64::from_polar(1.0, theta),
            C64::from_polar(1.0, -theta),
        ))
    }

    /// diag(e^{l/2}, e^{−l/2}); hyperbolic with signed translation length l.
    pub fn hyperbolic_diag(l: f64) -> Self {
        GroupElem(Mat2::diag(
            C64::new((0.5 * l).exp(), 0.0),
            C64::new((-0.5 * l).exp(), 0.0),
        ))
    }
}

/// An element of sl(2,C): a traceless 2×2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TangentVec(Mat2);

impl TangentVec {
    pub fn new(m: Mat2) -> Result<Self> {
        let t = m.trace().norm();
        if t > DEFAULT_TOL * (1.0 + m.norm()) {
            return Err(Error::InvalidInput(format!(
                "matrix is not traceless (|tr| = {t:.3e})"
            )));
        }
        // Symmetrize away the rounding residue on the diagonal.
        let half = m.trace() * C64::new(0.5, 0.0);
        Ok(TangentVec(Mat2::new(m.a - half, m.b, m.c, m.d - half)))
    }

    pub fn zero() -> Self {
        TangentVec(Mat2::zero())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn scale(&self, s: C64) -> TangentVec {
        TangentVec(self.0.scale(s))
    }

    pub fn add(&self, rhs: &TangentVec) -> TangentVec {
        TangentVec(self.0.add(&rhs.0))
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }
}

/// Trace classification of an SL(2,C) element as an isometry.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsometryClass {
    Identity,
    MinusIdentity,
    /// Real trace in (−2,2): eigenvalues e^{±iθ} with θ = eigen_angle ∈ (0,π).
    /// The geometric rotation angle of the isometry is 2θ.
    Elliptic { eigen_angle: f64 },
    Parabolic,
    /// Real trace with |tr| > 2; translation_length = 2·arccosh(|tr|/2) > 0.
    Hyperbolic { translation_length: f64 },
    Loxodromic,
}

/// Trace form b(A,B) = tr(AB) on sl(2,C); symmetric, bilinear, Ad-invariant.
pub fn trace_form(a: &TangentVec, b: &TangentVec) -> C64 {
    a.matrix().mul(b.matrix()).trace()
}

/// Variation function F(A) = A − ½ tr(A)·id with respect to the trace form.
///
/// F(A) is traceless, Ad(A)-invariant, and represents (d tr)_A under b.
pub fn variation(a: &GroupElem) -> TangentVec {
    let m = a.matrix();
    let half = m.trace() * C64::new(0.5, 0.0);
    TangentVec(Mat2::new(m.a - half, m.b, m.c, m.d - half))
}

/// Closed-form exponential of a traceless matrix:
///
///   exp(v) = cosh(δ)·I + sinh(δ)/δ · v,   δ² = −det v,
///
/// with the even Taylor expansions of cosh and sinh(δ)/δ below |δ| < 1e−4
/// to avoid cancellation at the δ → 0 limit.
pub fn exp_traceless(v: &TangentVec) -> GroupElem {
    let m = v.matrix();
    let delta_sq = -m.det();
    let (ch, shd) = cosh_sinhc(delta_sq);
    let e = Mat2::new(ch + shd * m.a, shd * m.b, shd * m.c, ch + shd * m.d);
    // det(exp v) = 1 exactly in theory; renormalize the rounding residue.
    GroupElem::new(e).expect("exponential of traceless matrix is invertible")
}

/// (cosh δ, sinh(δ)/δ) as functions of δ²; both are entire in δ².
fn cosh_sinhc(delta_sq: C64) -> (C64, C64) {
    if delta_sq.norm() < 1e-8 {
        // |δ| < 1e-4: truncated series, error below 1e-25.
        let d2 = delta_sq;
        let d4 = d2 * d2;
        let ch = ONE + d2 * 0.5 + d4 * (1.0 / 24.0) + d4 * d2 * (1.0 / 720.0);
        let sh = ONE + d2 * (1.0 / 6.0) + d4 * (1.0 / 120.0) + d4 * d2 * (1.0 / 5040.0);
        (ch, sh)
    } else {
        let delta = delta_sq.sqrt();
        (delta.cosh(), delta.sinh() / delta)
    }
}

/// One-parameter centralizer subgroup ζ_z = exp(z F(a)).
///
/// Errors on central input, where F = 0 and the subgroup degenerates to the
/// identity for all z.
pub fn one_param(a: &GroupElem, z: C64) -> Result<GroupElem> {
    let f = variation(a);
    if f.norm() <= DEFAULT_TOL {
        return Err(Error::CentralElement { tol: DEFAULT_TOL });
    }
    Ok(exp_traceless(&f.scale(z)))
}

/// Classify an SL(2,C) element by its trace.
pub fn classify(a: &GroupElem, tol: f64) -> Result<IsometryClass> {
    let m = a.matrix();
    if m.dist(&Mat2::identity()) <= tol {
        return Ok(IsometryClass::Identity);
    }
    if m.dist(&Mat2::identity().scale(-ONE)) <= tol {
        return Ok(IsometryClass::MinusIdentity);
    }
    let tr = a.trace();
    if tr.im.abs() > tol * (1.0 + tr.norm()) {
        return Ok(IsometryClass::Loxodromic);
    }
    let t = tr.re;
    if (t.abs() - 2.0).abs() <= tol {
        // Genuinely parabolic when visibly off ±I; ambiguous in the
        // borderline band where rounding cannot separate the two.
        if a.central_distance() > tol.sqrt() {
            return Ok(IsometryClass::Parabolic);
        }
        return Err(Error::BorderlineTrace { trace: t, tol });
    }
    if t.abs() < 2.0 {
        Ok(IsometryClass::Elliptic {
            eigen_angle: (t / 2.0).acos(),
        })
    } else {
        Ok(IsometryClass::Hyperbolic {
            translation_length: 2.0 * (t.abs() / 2.0).acosh(),
        })
    }
}

/// Fixed-point data of a non-central element: the two projective
/// eigenvectors, plus the rotation axis on S² when the element is
/// special-unitary.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    /// Eigenvector for eigenvalue λ with Im λ ≥ 0 (elliptic convention),
    /// then its partner; each normalized to unit length.
    pub eigenvectors: [[C64; 2]; 2],
    /// For special-unitary input: the unit axis û with
    /// a = cos(θ) + sin(θ)·û·(i,j,k), θ ∈ (0,π); the fixed pair is ±û.
    pub axis: Option<Vec3>,
}

/// Eigen data of a non-central SL(2,C) element.
///
/// Parabolic input (a single fixed point) is rejected.
pub fn fixed_points(a: &GroupElem, tol: f64) -> Result<FixedPoints> {
    if a.is_central(tol) {
        return Err(Error::CentralElement { tol });
    }
    let tr = a.trace();
    let half = tr * 0.5;
    let disc = half * half - ONE;
    if disc.norm() <= tol * tol {
        return Err(Error::ParabolicInput);
    }
    let root = disc.sqrt();
    // Order eigenvalues so the first has Im ≥ 0 for elliptic elements.
    let (l1, l2) = if (half + root).im >= (half - root).im {
        (half + root, half - root)
    } else {
        (half - root, half + root)
    };
    let ev = |lambda: C64| -> [C64; 2] {
        let m = a.matrix();
        // (b, λ−a) and (λ−d, c) both span the eigenline; pick the larger.
        let v1 = [m.b, lambda - m.a];
        let v2 = [lambda - m.d, m.c];
        let n1 = v1[0].norm() + v1[1].norm();
        let n2 = v2[0].norm() + v2[1].norm();
        let v = if n1 >= n2 { v1 } else { v2 };
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / n, v[1] / n]
    };
    let axis = if a.is_special_unitary(tol.max(1e-12).sqrt() * 1e-3) {
        let [_, x, y, z] = a.to_quaternion();
        let u = Vec3::new(x, y, z);
        let n = u.norm();
        (n > tol).then(|| u / n)
    } else {
        None
    };
    Ok(FixedPoints {
        eigenvectors: [ev(l1), ev(l2)],
        axis,
    })
}

/// Solve g·x_i·g⁻¹ = y_i for all i simultaneously.
///
/// The stacked linear system g·x_i − y_i·g = 0 is 4k×4 over C; the
/// conjugator is its one-dimensional null space, extracted by SVD and
/// renormalized to det 1. A second small singular value signals a reducible
/// tuple; a large smallest singular value signals non-conjugate tuples.
pub fn conjugator_solve(xs: &[GroupElem], ys: &[GroupElem], tol: f64) -> Result<GroupElem> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidInput(
            "conjugator_solve needs two tuples of equal length ≥ 2".into(),
        ));
    }
    let k = xs.len();
    let mut m = DMatrix::<C64>::zeros(4 * k, 4);
    // Unknown g laid out as [g00, g01, g10, g11].
    for (n, (x, y)) in xs.iter().zip(ys.iter()).enumerate() {
        let xm = x.matrix();
        let ym = y.matrix();
        let x_arr = [[xm.a, xm.b], [xm.c, xm.d]];
        let y_arr = [[ym.a, ym.b], [ym.c, ym.d]];
        for i in 0..2 {
            for j in 0..2 {
                let row = 4 * n + 2 * i + j;
                for l in 0..2 {
                    m[(row, 2 * i + l)] += x_arr[l][j];
                    m[(row, 2 * l + j)] -= y_arr[i][l];
                }
            }
        }
    }
    let svd = m.svd(false, true);
    let sv = &svd.singular_values;
    let v_t = svd.v_t.as_ref().expect("svd computed with v_t");
    let scale = sv[0].max(1.0);
    if sv[3] > tol * scale {
        return Err(Error::NotConjugate {
            residual: sv[3],
            tol: tol * scale,
        });
    }
    if sv[2] <= tol.sqrt() * scale {
        return Err(Error::ReducibleTuple);
    }
    let row = v_t.row(3);
    let g = Mat2::new(
        row[0].conj(),
        row[1].conj(),
        row[2].conj(),
        row[3].conj(),
    );
    let g = GroupElem::new(g)?;
    // Residual check in the group: guards against null vectors of the
    // linear system that are singular as matrices.
    let residual = xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| x.conjugate(&g).dist(y))
        .fold(0.0f64, f64::max);
    if residual > tol.sqrt() {
        return Err(Error::NotConjugate {
            residual,
            tol: tol.sqrt(),
        });
    }
    Ok(g)
}

/// Commutator distance ‖aba⁻¹b⁻¹ − I‖; zero exactly on commuting pairs.
pub fn commutator_defect(a: &GroupElem, b: &GroupElem) -> f64 {
    a.mul(b)
        .mul(&a.inverse())
        .mul(&b.inverse())
        .dist(&GroupElem::identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    pub(crate) fn random_su2(rng: &mut ChaCha8Rng) -> GroupElem {
        loop {
            let q: [f64; 4] = [
                rng.gen::<f64>() - 0.5,
                rng.gen::<f64>() - 0.5,
                rng.gen::<f64>() - 0.5,
                rng.gen::<f64>() - 0.5,
            ];
            let n = (q.iter().map(|x| x * x).sum::<f64>()).sqrt();
            if n > 1e-3 {
                return GroupElem::from_quaternion([q[0] / n, q[1] / n, q[2] / n, q[3] / n])
                    .unwrap();
            }
        }
    }

    fn random_sl2(rng: &mut ChaCha8Rng) -> GroupElem {
        loop {
            let m = Mat2::new(
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            );
            if m.det().norm() > 1e-2 {
                return GroupElem::new(m).unwrap();
            }
        }
    }

    fn random_traceless(rng: &mut ChaCha8Rng, scale: f64) -> TangentVec {
        let a = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5) * scale;
        let b = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5) * scale;
        let c = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5) * scale;
        TangentVec::new(Mat2::new(a, b, c, -a)).unwrap()
    }

    /// Scaling-and-squaring power-series oracle for the matrix exponential,
    /// independent of the closed form it checks.
    fn exp_series_oracle(v: &Mat2) -> Mat2 {
        let mut k = 0u32;
        let mut norm = v.norm();
        while norm > 0.25 {
            norm *= 0.5;
            k += 1;
        }
        let s = C64::new((0.5f64).powi(k as i32), 0.0);
        let w = v.scale(s);
        let mut term = Mat2::identity();
        let mut sum = Mat2::identity();
        for n in 1..40 {
            term = term.mul(&w).scale(C64::new(1.0 / n as f64, 0.0));
            sum = sum.add(&term);
            if term.norm() < 1e-20 {
                break;
            }
        }
        let mut out = sum;
        for _ in 0..k {
            out = out.mul(&out);
        }
        out
    }

    #[test]
    fn group_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let id = GroupElem::identity();
        assert_eq!(id.mul(&id).dist(&id), 0.0);
        for _ in 0..100 {
            let x = random_sl2(&mut rng);
            assert!(x.mul(&x.inverse()).dist(&id) < 1e-12);
            assert!((x.det() - ONE).norm() < 1e-10);
        }
        // diag(e^{iπ/3}, e^{−iπ/3}) has trace 2cos(π/3) = 1.
        let a = GroupElem::elliptic_diag(PI / 3.0);
        assert!((a.trace() - ONE).norm() < 1e-14);
    }

    #[test]
    fn trace_form_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let zero = TangentVec::zero();
        let v = random_traceless(&mut rng, 1.0);
        assert_eq!(trace_form(&zero, &v), ZERO);
        // b(diag(i,−i), diag(i,−i)) = tr diag(−1,−1) = −2.
        let h = TangentVec::new(Mat2::diag(C64::i(), -C64::i())).unwrap();
        assert!((trace_form(&h, &h) + 2.0 * ONE).norm() < 1e-15);
        // Ad-invariance under 100 random conjugations.
        for _ in 0..100 {
            let g = random_sl2(&mut rng);
            let x = random_traceless(&mut rng, 1.0);
            let y = random_traceless(&mut rng, 1.0);
            let gx = TangentVec::new(g.matrix().mul(x.matrix()).mul(g.inverse().matrix()))
                .unwrap();
            let gy = TangentVec::new(g.matrix().mul(y.matrix()).mul(g.inverse().matrix()))
                .unwrap();
            assert!((trace_form(&gx, &gy) - trace_form(&x, &y)).norm() < 1e-10);
        }
    }

    #[test]
    fn variation_function() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(variation(&GroupElem::identity()).norm(), 0.0);
        // F(diag(e^{iα/2}, e^{−iα/2})) = diag(i sin(α/2), −i sin(α/2)).
        let alpha = 0.83;
        let a = GroupElem::elliptic_diag(alpha / 2.0);
        let f = variation(&a);
        let s = (alpha / 2.0).sin();
        assert!(f.matrix().dist(&Mat2::diag(C64::new(0.0, s), C64::new(0.0, -s))) < 1e-14);
        for _ in 0..50 {
            let a = random_sl2(&mut rng);
            let f = variation(&a);
            // Traceless and Ad(A)-invariant.
            assert!(f.matrix().trace().norm() < 1e-13);
            let conj = a.matrix().mul(f.matrix()).mul(a.inverse().matrix());
            assert!(conj.dist(f.matrix()) < 1e-12);
            // b(F(A), B) equals the directional derivative of tr at A.
            let b = random_traceless(&mut rng, 1.0);
            let eps = 1e-6;
            let step = exp_traceless(&b.scale(C64::new(eps, 0.0)));
            let back = exp_traceless(&b.scale(C64::new(-eps, 0.0)));
            let fd = (a.mul(&step).trace() - a.mul(&back).trace()) / (2.0 * eps);
            assert!(
                (fd - trace_form(&f, &b)).norm() < 1e-7,
                "finite difference mismatch"
            );
        }
    }

    #[test]
    fn exp_matches_series_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(exp_traceless(&TangentVec::zero())
            .dist(&GroupElem::identity()) == 0.0);
        let theta = 0.71;
        let v = TangentVec::new(Mat2::diag(C64::new(0.0, theta), C64::new(0.0, -theta)))
            .unwrap();
        let e = exp_traceless(&v);
        assert!(e.matrix().dist(&GroupElem::elliptic_diag(theta).matrix()) < 1e-14);
        // 1000 random traceless matrices of norm ≤ 3 against the oracle.
        for _ in 0..1000 {
            let scale = 6.0 * rng.gen::<f64>().min(0.5);
            let v = random_traceless(&mut rng, scale);
            let closed = exp_traceless(&v);
            let oracle = exp_series_oracle(v.matrix());
            assert!(
                closed.matrix().dist(&oracle) < 1e-12,
                "closed form vs series: {:.3e}",
                closed.matrix().dist(&oracle)
            );
        }
        // Small-δ branch.
        for _ in 0..200 {
            let v = random_traceless(&mut rng, 1e-5);
            let closed = exp_traceless(&v);
            let oracle = exp_series_oracle(v.matrix());
            assert!(closed.matrix().dist(&oracle) < 1e-14);
        }
    }

    #[test]
    fn one_param_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = random_sl2(&mut rng);
            if a.is_central(1e-3) {
                continue;
            }
            let z = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            let w = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            let zz = one_param(&a, z).unwrap();
            let zw = one_param(&a, w).unwrap();
            let zsum = one_param(&a, z + w).unwrap();
            // ζ_{z+w} = ζ_z ζ_w and ζ_z centralizes a.
            assert!(zz.mul(&zw).dist(&zsum) < 1e-10);
            assert!(zz.mul(&a).dist(&a.mul(&zz)) < 1e-10);
        }
        assert!(one_param(&GroupElem::identity(), C64::new(1.0, 0.0)).is_err());
        assert!(one_param(&GroupElem::elliptic_diag(0.3), ZERO)
            .unwrap()
            .dist(&GroupElem::identity()) < 1e-15);
    }

    #[test]
    fn rotation_translation_laws() {
        // ζ_t rotates by 2t sin(α/2); ζ_{it} translates by −2t sin(α/2).
        for k in 1..12 {
            let alpha = PI / 6.0 * k as f64;
            let a = GroupElem::elliptic_diag(alpha / 2.0);
            for t in [-2.0, -0.9, 0.35, 1.7] {
                let rot = one_param(&a, C64::new(t, 0.0)).unwrap();
                let measured = 2.0 * rot.matrix().a.arg();
                let expected = 2.0 * t * (alpha / 2.0).sin();
                let wrapped = (measured - expected).rem_euclid(2.0 * PI);
                let diff = wrapped.min(2.0 * PI - wrapped);
                assert!(diff < 1e-9, "rotation law: {diff:.2e}");

                let tra = one_param(&a, C64::new(0.0, t)).unwrap();
                let length = 2.0 * tra.matrix().a.norm().ln();
                assert!(
                    (length + 2.0 * t * (alpha / 2.0).sin()).abs() < 1e-9,
                    "translation law"
                );
            }
        }
    }

    #[test]
    fn classify_by_trace() {
        assert_eq!(
            classify(&GroupElem::identity(), 1e-9).unwrap(),
            IsometryClass::Identity
        );
        let alpha = 1.9;
        match classify(&GroupElem::elliptic_diag(alpha / 2.0), 1e-9).unwrap() {
            IsometryClass::Elliptic { eigen_angle } => {
                assert!((eigen_angle - alpha / 2.0).abs() < 1e-12)
            }
            c => panic!("expected elliptic, got {c:?}"),
        }
        let l = 0.62;
        match classify(&GroupElem::hyperbolic_diag(l), 1e-9).unwrap() {
            IsometryClass::Hyperbolic { translation_length } => {
                assert!((translation_length - l).abs() < 1e-12)
            }
            c => panic!("expected hyperbolic, got {c:?}"),
        }
        // A visible parabolic.
        let p = GroupElem::new(Mat2::new(ONE, ONE, ZERO, ONE)).unwrap();
        assert_eq!(classify(&p, 1e-9).unwrap(), IsometryClass::Parabolic);
        // Loxodromic.
        let m = GroupElem::new(Mat2::diag(C64::new(1.2, 0.7), ZERO.into())).is_err();
        assert!(m); // singular diag(…, 0) rejected
        let lox = GroupElem::new(Mat2::diag(
            C64::new(1.2, 0.7),
            (C64::new(1.2, 0.7)).inv(),
        ))
        .unwrap();
        assert_eq!(classify(&lox, 1e-9).unwrap(), IsometryClass::Loxodromic);
    }

    #[test]
    fn fixed_points_and_axes() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = GroupElem::elliptic_diag(0.4);
        let fp = fixed_points(&a, 1e-9).unwrap();
        // Diagonal: axes [1,0] and [0,1], rotation axis the x-axis.
        assert!(fp.eigenvectors[0][1].norm() < 1e-12);
        assert!(fp.eigenvectors[1][0].norm() < 1e-12);
        let axis = fp.axis.unwrap();
        assert!((axis - Vec3::new(1.0, 0.0, 0.0)).norm() < 1e-12);

        let r = GroupElem::rotation(Vec3::new(1.0, 0.0, 0.0), 1.1).unwrap();
        let axis = fixed_points(&r, 1e-9).unwrap().axis.unwrap();
        assert!((axis - Vec3::new(1.0, 0.0, 0.0)).norm() < 1e-12);

        // Equivariance: fixed points of gag⁻¹ are g·(fixed points of a).
        for _ in 0..20 {
            let a = random_su2(&mut rng);
            if a.is_central(1e-2) {
                continue;
            }
            let g = random_su2(&mut rng);
            let fp_a = fixed_points(&a, 1e-9).unwrap();
            let fp_c = fixed_points(&a.conjugate(&g), 1e-9).unwrap();
            let rotated = g.rotate_vector(fp_a.axis.unwrap());
            let got = fp_c.axis.unwrap();
            assert!(
                (rotated - got).norm() < 1e-8 || (rotated + got).norm() < 1e-8,
                "axis equivariance"
            );
        }
    }

    #[test]
    fn conjugator_recovery() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let xs: Vec<GroupElem> = (0..3).map(|_| random_sl2(&mut rng)).collect();
            let h = random_sl2(&mut rng);
            let ys: Vec<GroupElem> = xs.iter().map(|x| x.conjugate(&h)).collect();
            let g = conjugator_solve(&xs, &ys, 1e-9).unwrap();
            // g = ±h projectively: conjugation actions agree.
            for x in &xs {
                assert!(x.conjugate(&g).dist(&x.conjugate(&h)) < 1e-8);
            }
        }
        // Identity case.
        let xs: Vec<GroupElem> = (0..2).map(|_| random_sl2(&mut rng)).collect();
        let g = conjugator_solve(&xs, &xs, 1e-9).unwrap();
        assert!(g.central_distance() < 1e-8);
        // Perturbed traces are not conjugate.
        let mut ys = xs.clone();
        ys[0] = ys[0].mul(&GroupElem::elliptic_diag(0.1));
        match conjugator_solve(&xs, &ys, 1e-9) {
            Err(Error::NotConjugate { .. }) => {}
            other => panic!("expected NotConjugate, got {other:?}"),
        }
        // Reducible (commuting diagonal) tuple has a 2-dimensional solution space.
        let d1 = GroupElem::elliptic_diag(0.3);
        let d2 = GroupElem::elliptic_diag(0.9);
        match conjugator_solve(&[d1, d2], &[d1, d2], 1e-9) {
            Err(Error::ReducibleTuple) => {}
            other => panic!("expected ReducibleTuple, got {other:?}"),
        }
    }
}
