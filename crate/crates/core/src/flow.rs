//! Complex twist flows on representation varieties.
//!
//! For a separating standard curve γ with value W = ρ(γ), the flow at
//! complex time z fixes the side-1 generators and conjugates the side-2
//! generators by ζ_z = exp(z F(W)). Since ζ_z centralizes W, the surface
//! relation is preserved exactly and the traces of γ and of every one-sided
//! word are unchanged. Real time twists; imaginary time translates.
//!
//! Orientation convention: side 1 is the side to the left of the curve;
//! flipping the sides replaces z by −z.
//!
//! For a non-separating curve on a closed surface the group splits as an
//! HNN-extension: the flow fixes the cut-surface generators and multiplies
//! the stable letter by ζ_z. With the standard relation ∏[a_i,b_i] the data
//! (λ = b1, γ = b1·a1·b1⁻¹) realizes the twist along the a1-curve; the
//! period of the flow at λ is F(ρ(γ)).

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{one_param, GroupElem, Mat2, TangentVec, C64};
use crate::error::{Error, Result};
use crate::pants::CurveClass;
use crate::surface::{
    chars_distance, default_word_set, evaluate, fingerprint, Presentation, Representation, Word,
};

/// Splitting data for a separating twist: the curve with its two sides.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplitData {
    pub curve: CurveClass,
}

impl SplitData {
    pub fn new(curve: CurveClass) -> SplitData {
        SplitData { curve }
    }
}

/// HNN splitting data for a non-separating twist on a closed surface.
///
/// `stable` is the index of the stable letter λ; `curve` is the word of the
/// twisting curve, expressed so that the defining relation contains the
/// sandwich λ·u·λ⁻¹ with u a power of the curve (for the standard genus-g
/// relation and λ = b1 this is b1·a1·b1⁻¹).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HNNData {
    pub stable: usize,
    pub curve: Word,
}

impl HNNData {
    /// The twist along the a_k-curve with stable letter b_k.
    pub fn along_a_curve(pres: &Presentation, k: usize) -> Result<HNNData> {
        match pres {
            Presentation::ClosedGenus { g } if k < *g => Ok(HNNData {
                stable: 2 * k + 1,
                curve: Word::new(vec![(2 * k + 1, 1), (2 * k, 1), (2 * k + 1, -1)]),
            }),
            Presentation::ClosedGenus { .. } => {
                Err(Error::InvalidInput(format!("handle index {k} out of range")))
            }
            _ => Err(Error::InvalidInput(
                "HNN twists live on closed surfaces".into(),
            )),
        }
    }
}

/// One flow step: a curve and a complex time.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlowStep {
    pub curve: CurveClass,
    #[serde(with = "crate::wire::complex")]
    pub z: C64,
}

/// A composition of twist flows along pairwise disjoint curves.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlowSpec {
    pub steps: Vec<FlowStep>,
}

/// Twist flow along a separating standard curve: side-1 generators fixed,
/// side-2 generators conjugated by ζ_z = exp(z F(ρ(γ))).
pub fn twist_separating(rep: &Representation, s: &SplitData, z: C64) -> Result<Representation> {
    let w = evaluate(rep, &s.curve.word);
    if w.is_central(crate::algebra::DEFAULT_TOL) {
        return Err(Error::CentralCurve);
    }
    let zeta = one_param(&w, z)?;
    let mut matrices = rep.generators().to_vec();
    for &i in &s.curve.side2 {
        matrices[i] = matrices[i].conjugate(&zeta);
    }
    rep.with_matrices(matrices)
}

/// Twist flow along a non-separating curve on a closed surface:
/// ρ(λ) ↦ ζ_z·ρ(λ), everything else fixed.
///
/// The relation is re-checked after the update; inconsistent HNN data (a
/// curve word that the relation does not sandwich around λ) is reported.
pub fn twist_hnn(rep: &Representation, h: &HNNData, z: C64) -> Result<Representation> {
    if !matches!(rep.presentation, Presentation::ClosedGenus { .. }) {
        return Err(Error::InvalidInput(
            "HNN twists require a closed-genus presentation".into(),
        ));
    }
    h.curve.validate(&rep.presentation)?;
    let w = evaluate(rep, &h.curve);
    if w.is_central(crate::algebra::DEFAULT_TOL) {
        return Err(Error::CentralCurve);
    }
    let zeta = one_param(&w, z)?;
    let mut matrices = rep.generators().to_vec();
    matrices[h.stable] = zeta.mul(&matrices[h.stable]);
    rep.with_matrices(matrices)
}

/// Compose twist flows along the steps of a spec; the curves must be
/// pairwise structurally disjoint (nested or disjoint intervals).
pub fn flow(rep: &Representation, spec: &FlowSpec) -> Result<Representation> {
    for (i, a) in spec.steps.iter().enumerate() {
        for b in &spec.steps[i + 1..] {
            if !a.curve.disjoint_from(&b.curve) {
                return Err(Error::OverlappingCurves);
            }
        }
    }
    let mut out = rep.clone();
    for step in &spec.steps {
        out = twist_separating(&out, &SplitData::new(step.curve.clone()), step.z)?;
    }
    Ok(out)
}

/// Character distance between the two orders of applying twists along two
/// disjoint curves; the flows Poisson-commute, so this vanishes.
pub fn commutation_defect(
    rep: &Representation,
    c1: &CurveClass,
    c2: &CurveClass,
    s: C64,
    t: C64,
) -> Result<f64> {
    let ab = twist_separating(
        &twist_separating(rep, &SplitData::new(c1.clone()), s)?,
        &SplitData::new(c2.clone()),
        t,
    )?;
    let ba = twist_separating(
        &twist_separating(rep, &SplitData::new(c2.clone()), t)?,
        &SplitData::new(c1.clone()),
        s,
    )?;
    let words = default_word_set(&rep.presentation);
    Ok(chars_distance(
        &fingerprint(&ab, &words),
        &fingerprint(&ba, &words),
    ))
}

/// Numerical rank data of a trace map differential.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JacobianRank {
    /// Rank at the `RANK_THRESHOLD` cut.
    pub rank: usize,
    /// Singular values of the conjugation-reduced differential, descending.
    pub singular_values: Vec<f64>,
    /// Smallest retained singular value (0 when rank = 0).
    pub sigma_min: f64,
}

/// Singular values above this count toward the rank. Sits between the
/// conjugation-direction noise floor (~1e−10 for central differences) and
/// genuine rank directions (≳1e−6).
pub const RANK_THRESHOLD: f64 = 1e-7;

/// Numerical rank of the differential of the trace map
/// χ ↦ (tr ρ(w))_{w ∈ words} on the character variety of a punctured
/// sphere, at the class of `rep`.
///
/// Central finite differences over the 3(d−1) tangent directions of the
/// free generator matrices, with the 3 global-conjugation directions
/// projected out. The submersion statements assume irreducibility, but the
/// rank itself is computed for any representation (the drop below full rank
/// at commuting pairs is exactly what the checks observe).
pub fn trace_jacobian_rank(rep: &Representation, words: &[Word]) -> Result<JacobianRank> {
    let d = match &rep.presentation {
        Presentation::PuncturedSphere { d } => *d,
        _ => {
            return Err(Error::InvalidInput(
                "trace Jacobians are computed on punctured-sphere representations".into(),
            ))
        }
    };
    for w in words {
        w.validate(&rep.presentation)?;
    }
    let free = d - 1;
    let basis = sl2_basis();
    let eps = 1e-5;
    let n_cols = 3 * free;
    let mut jac = DMatrix::<C64>::zeros(words.len(), n_cols);
    for k in 0..free {
        for (j, e) in basis.iter().enumerate() {
            let col = 3 * k + j;
            let plus = perturbed(rep, k, e, eps)?;
            let minus = perturbed(rep, k, e, -eps)?;
            for (row, w) in words.iter().enumerate() {
                let fp = evaluate(&plus, w).trace();
                let fm = evaluate(&minus, w).trace();
                jac[(row, col)] = (fp - fm) / (2.0 * eps);
            }
        }
    }
    // Conjugation directions: M_k(ε) = e^{εB} M_k e^{−εB} has tangent
    // Ad(M_k⁻¹)B − B in the right-translated frame spanned by `basis`.
    let mut conj = DMatrix::<C64>::zeros(n_cols, 3);
    for (bcol, b) in basis.iter().enumerate() {
        for k in 0..free {
            let m = rep.generator(k);
            let ad = m
                .inverse()
                .matrix()
                .mul(b.matrix())
                .mul(m.matrix())
                .sub(b.matrix());
            // Coordinates in the basis (H, E, F): H = diag(1,−1), E, F.
            conj[(3 * k, bcol)] = ad.a;
            conj[(3 * k + 1, bcol)] = ad.b;
            conj[(3 * k + 2, bcol)] = ad.c;
        }
    }
    // Orthonormalize the conjugation space and project it out of the rows.
    let svd_c = conj.svd(true, false);
    let u = svd_c.u.as_ref().expect("svd with u");
    let mut projected = jac.clone();
    for q in 0..3 {
        if svd_c.singular_values[q] < 1e-12 {
            continue;
        }
        let col = u.column(q);
        for row in 0..projected.nrows() {
            let mut dot = Complex64::new(0.0, 0.0);
            for c in 0..n_cols {
                dot += projected[(row, c)] * col[c].conj();
            }
            for c in 0..n_cols {
                let sub = dot * col[c];
                projected[(row, c)] -= sub;
            }
        }
    }
    let svd = projected.svd(false, false);
    let mut sigmas: Vec<f64> = svd.singular_values.iter().copied().collect();
    sigmas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rank = sigmas.iter().take_while(|&&s| s > RANK_THRESHOLD).count();
    let sigma_min = if rank > 0 { sigmas[rank - 1] } else { 0.0 };
    Ok(JacobianRank {
        rank,
        singular_values: sigmas,
        sigma_min,
    })
}

fn sl2_basis() -> [TangentVec; 3] {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    [
        TangentVec::new(Mat2::new(one, zero, zero, -one)).unwrap(),
        TangentVec::new(Mat2::new(zero, one, zero, zero)).unwrap(),
        TangentVec::new(Mat2::new(zero, zero, one, zero)).unwrap(),
    ]
}

fn perturbed(
    rep: &Representation,
    k: usize,
    dir: &TangentVec,
    eps: f64,
) -> Result<Representation> {
    let step = crate::algebra::exp_traceless(&dir.scale(Complex64::new(eps, 0.0)));
    let mut mats = rep.generators()[..rep.presentation.free_rank()].to_vec();
    mats[k] = mats[k].mul(&step);
    crate::surface::make_representation(&rep.presentation, &mats)
}
