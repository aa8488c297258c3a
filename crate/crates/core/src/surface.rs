//! Surface groups, words, representations and mapping-class automorphisms.
//!
//! Punctured-sphere groups ⟨γ1,…,γd | ∏γi = 1⟩ are stored with all d
//! peripheral generators but only d−1 free: the last matrix is always the
//! inverse product of the others, which keeps peripheral traces first-class.
//! Closed genus-g groups carry the relation ∏[a_i,b_i] = 1, checked rather
//! than enforced.
//!
//! Character equality is tested through trace fingerprints on the word set
//! generators ∪ pairwise products ∪ consecutive triples, which determines
//! irreducible characters and is cheap.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{exp_traceless, variation, GroupElem, C64, DEFAULT_TOL};
use crate::error::{Error, Result};

/// Relation defect tolerance for constructed representations.
pub const RELATION_TOL: f64 = 1e-10;

/// Presentation of a punctured-sphere or closed surface group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Presentation {
    /// ⟨γ1,…,γd | γ1⋯γd = 1⟩ with d ≥ 3; γi is a loop around puncture i.
    PuncturedSphere { d: usize },
    /// ⟨a1,b1,…,ag,bg | ∏[a_i,b_i] = 1⟩ with g ≥ 2; generators are stored
    /// interleaved a1, b1, a2, b2, ….
    ClosedGenus { g: usize },
}

impl Presentation {
    pub fn punctured_sphere(d: usize) -> Result<Self> {
        if d < 3 {
            return Err(Error::Presentation(format!(
                "punctured sphere needs d ≥ 3, got {d}"
            )));
        }
        Ok(Presentation::PuncturedSphere { d })
    }

    pub fn closed_genus(g: usize) -> Result<Self> {
        if g < 2 {
            return Err(Error::Presentation(format!(
                "closed surface needs genus ≥ 2, got {g}"
            )));
        }
        Ok(Presentation::ClosedGenus { g })
    }

    /// Total number of generators (d, or 2g).
    pub fn rank(&self) -> usize {
        match self {
            Presentation::PuncturedSphere { d } => *d,
            Presentation::ClosedGenus { g } => 2 * g,
        }
    }

    /// Number of freely choosable generator matrices.
    pub fn free_rank(&self) -> usize {
        match self {
            Presentation::PuncturedSphere { d } => d - 1,
            Presentation::ClosedGenus { g } => 2 * g,
        }
    }

    pub fn generator_name(&self, index: usize) -> String {
        match self {
            Presentation::PuncturedSphere { .. } => format!("g{}", index + 1),
            Presentation::ClosedGenus { .. } => {
                let pair = index / 2 + 1;
                if index % 2 == 0 {
                    format!("a{pair}")
                } else {
                    format!("b{pair}")
                }
            }
        }
    }

    /// The defining relation as a word.
    pub fn relation(&self) -> Word {
        match self {
            Presentation::PuncturedSphere { d } => Word::new((0..*d).map(|i| (i, 1)).collect()),
            Presentation::ClosedGenus { g } => {
                let mut letters = Vec::with_capacity(8 * g);
                for i in 0..*g {
                    let a = 2 * i;
                    let b = 2 * i + 1;
                    letters.extend_from_slice(&[(a, 1), (b, 1), (a, -1), (b, -1)]);
                }
                Word::new(letters)
            }
        }
    }
}

/// A word in the generators: a sequence of (generator index, exponent ±1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<(usize, i8)>);

impl Word {
    pub fn new(letters: Vec<(usize, i8)>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(index: usize) -> Self {
        Word(vec![(index, 1)])
    }

    /// Product of the generators `indices` in order, all with exponent +1.
    pub fn product(indices: &[usize]) -> Self {
        Word(indices.iter().map(|&i| (i, 1)).collect())
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(i, e)| (i, -e)).collect())
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&rhs.0);
        Word(letters).freely_reduced()
    }

    pub fn conjugated_by(&self, w: &Word) -> Word {
        w.concat(self).concat(&w.inverse())
    }

    /// Cancel adjacent inverse pairs.
    pub fn freely_reduced(&self) -> Word {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(self.0.len());
        for &(i, e) in &self.0 {
            if let Some(&(j, f)) = out.last() {
                if i == j && e == -f {
                    out.pop();
                    continue;
                }
            }
            out.push((i, e));
        }
        Word(out)
    }

    /// Free and cyclic reduction (conjugacy-class representative).
    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.freely_reduced().0;
        while w.len() >= 2 {
            let (first, last) = (w[0], w[w.len() - 1]);
            if first.0 == last.0 && first.1 == -last.1 {
                w.remove(0);
                w.pop();
            } else {
                break;
            }
        }
        Word(w)
    }

    pub fn validate(&self, pres: &Presentation) -> Result<()> {
        let n = pres.rank();
        for &(i, e) in &self.0 {
            if i >= n {
                return Err(Error::WordIndex {
                    index: i,
                    generators: n,
                });
            }
            if e != 1 && e != -1 {
                return Err(Error::InvalidInput(format!("word exponent {e} not ±1")));
            }
        }
        Ok(())
    }
}

/// A representation ρ: π1S → SL(2,C), one matrix per generator.
///
/// The relation word evaluates to the identity within `RELATION_TOL`; for
/// punctured spheres the last generator matrix is derived from the others.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Representation {
    pub presentation: Presentation,
    matrices: Vec<GroupElem>,
}

impl Representation {
    pub fn generator(&self, index: usize) -> &GroupElem {
        &self.matrices[index]
    }

    pub fn generators(&self) -> &[GroupElem] {
        &self.matrices
    }

    /// Replace the generator matrices wholesale; the relation is re-checked.
    pub fn with_matrices(&self, matrices: Vec<GroupElem>) -> Result<Representation> {
        let rep = Representation {
            presentation: self.presentation.clone(),
            matrices,
        };
        rep.check_relation(RELATION_TOL)?;
        Ok(rep)
    }

    pub fn relation_defect(&self) -> f64 {
        evaluate(self, &self.presentation.relation()).dist(&GroupElem::identity())
    }

    pub fn check_relation(&self, tol: f64) -> Result<()> {
        let defect = self.relation_defect();
        if defect > tol {
            return Err(Error::RelationViolated { defect, tol });
        }
        Ok(())
    }

    pub fn conjugated(&self, g: &GroupElem) -> Representation {
        Representation {
            presentation: self.presentation.clone(),
            matrices: self.matrices.iter().map(|m| m.conjugate(g)).collect(),
        }
    }

    pub fn is_special_unitary(&self, tol: f64) -> bool {
        self.matrices.iter().all(|m| m.is_special_unitary(tol))
    }
}

/// Build a representation from the free generator matrices.
///
/// Punctured sphere: pass d−1 matrices, γ_d is set to (γ1⋯γ_{d−1})⁻¹.
/// Closed genus: pass all 2g matrices; the commutator relation is checked.
pub fn make_representation(pres: &Presentation, mats: &[GroupElem]) -> Result<Representation> {
    match pres {
        Presentation::PuncturedSphere { d } => {
            if mats.len() != d - 1 {
                return Err(Error::Presentation(format!(
                    "expected {} free matrices for a {d}-punctured sphere, got {}",
                    d - 1,
                    mats.len()
                )));
            }
            let mut matrices = mats.to_vec();
            let mut prod = GroupElem::identity();
            for m in mats {
                prod = prod.mul(m);
            }
            matrices.push(prod.inverse());
            Ok(Representation {
                presentation: pres.clone(),
                matrices,
            })
        }
        Presentation::ClosedGenus { g } => {
            if mats.len() != 2 * g {
                return Err(Error::Presentation(format!(
                    "expected {} matrices for genus {g}, got {}",
                    2 * g,
                    mats.len()
                )));
            }
            let rep = Representation {
                presentation: pres.clone(),
                matrices: mats.to_vec(),
            };
            rep.check_relation(RELATION_TOL)?;
            Ok(rep)
        }
    }
}

/// Evaluate ρ on a word; the homomorphism property holds by construction.
pub fn evaluate(rep: &Representation, w: &Word) -> GroupElem {
    let mut out = GroupElem::identity();
    for &(i, e) in w.letters() {
        let m = &rep.matrices[i];
        if e > 0 {
            out = out.mul(m);
        } else {
            out = out.mul(&m.inverse());
        }
    }
    out
}

/// Invariant projective lines (eigenlines) of a single group element.
///
/// Central elements leave every line invariant and contribute no candidate;
/// parabolic elements have exactly one.
fn eigenlines(g: &GroupElem, tol: f64) -> Vec<[C64; 2]> {
    if g.is_central(tol) {
        return Vec::new();
    }
    let m = g.matrix();
    let half = m.trace() * 0.5;
    let disc = half * half - Complex64::new(1.0, 0.0);
    let line = |lambda: C64| -> [C64; 2] {
        let v1 = [m.b, lambda - m.a];
        let v2 = [lambda - m.d, m.c];
        let n1 = v1[0].norm() + v1[1].norm();
        let n2 = v2[0].norm() + v2[1].norm();
        let v = if n1 >= n2 { v1 } else { v2 };
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / n, v[1] / n]
    };
    if disc.norm() <= tol {
        vec![line(half)]
    } else {
        let root = disc.sqrt();
        vec![line(half + root), line(half - root)]
    }
}

fn line_invariant_under(v: &[C64; 2], g: &GroupElem, tol: f64) -> bool {
    let m = g.matrix();
    let w = [m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1]];
    // v and w are parallel iff the 2×2 determinant vanishes.
    (w[0] * v[1] - w[1] * v[0]).norm() <= tol
}

/// True iff the generator matrices leave no common line in C² invariant.
///
/// The candidate lines are the eigenlines of the first non-central
/// generator; an all-central representation is reducible.
pub fn is_irreducible(rep: &Representation) -> bool {
    let tol = DEFAULT_TOL;
    let Some(first) = rep.matrices.iter().find(|m| !m.is_central(1e3 * tol)) else {
        return false;
    };
    let lines = eigenlines(first, tol);
    for v in &lines {
        if rep
            .matrices
            .iter()
            .all(|g| line_invariant_under(v, g, 1e3 * tol))
        {
            return false;
        }
    }
    true
}

/// Conjugate an irreducible representation into SU(2).
///
/// Solves for a positive-definite Hermitian form H with A*·H·A = H for every
/// generator and conjugates by H^{1/2}. Fails when no positive-definite
/// invariant form exists (e.g. a hyperbolic generator).
pub fn unitarize(rep: &Representation) -> Result<Representation> {
    if !is_irreducible(rep) {
        return Err(Error::Reducible);
    }
    // H = [[h1, h2 + i h3], [h2 − i h3, h4]] over real unknowns (h1,…,h4).
    let hermitian = |h: &[f64; 4]| {
        crate::algebra::Mat2::new(
            C64::new(h[0], 0.0),
            C64::new(h[1], h[2]),
            C64::new(h[1], -h[2]),
            C64::new(h[3], 0.0),
        )
    };
    let k = rep.matrices.len();
    let mut sys = nalgebra::DMatrix::<f64>::zeros(4 * k, 4);
    let basis = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ];
    for (n, g) in rep.matrices.iter().enumerate() {
        for (col, b) in basis.iter().enumerate() {
            let h = hermitian(b);
            let r = g.matrix().adjoint().mul(&h).mul(g.matrix()).sub(&h);
            sys[(4 * n, col)] = r.a.re;
            sys[(4 * n + 1, col)] = r.b.re;
            sys[(4 * n + 2, col)] = r.b.im;
            sys[(4 * n + 3, col)] = r.d.re;
        }
    }
    let svd = sys.svd(false, true);
    let sv = &svd.singular_values;
    let scale = sv[0].max(1.0);
    if sv[3] > 1e-8 * scale {
        return Err(Error::NotUnitarizable);
    }
    let v_t = svd.v_t.as_ref().expect("svd with v_t");
    let hvec = [v_t[(3, 0)], v_t[(3, 1)], v_t[(3, 2)], v_t[(3, 3)]];
    let mut h = hermitian(&hvec);
    if h.trace().re < 0.0 {
        h = h.scale(C64::new(-1.0, 0.0));
    }
    let det = h.det().re;
    if det <= 1e-12 || h.a.re <= 0.0 {
        return Err(Error::NotUnitarizable);
    }
    // Normalize det H = 1; then H^{1/2} = (H + I)/√(tr H + 2) for a
    // positive-definite unit-determinant H.
    let h = h.scale(C64::new(1.0 / det.sqrt(), 0.0));
    let denom = (h.trace().re + 2.0).sqrt();
    let root = h
        .add(&crate::algebra::Mat2::identity())
        .scale(C64::new(1.0 / denom, 0.0));
    let p = GroupElem::new(root)?;
    let out = rep.conjugated(&p);
    if !out.is_special_unitary(1e-7) {
        return Err(Error::NotUnitarizable);
    }
    Ok(out)
}

/// An automorphism of the surface group, given by image words.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Automorphism {
    pub images: Vec<Word>,
}

impl Automorphism {
    pub fn identity(pres: &Presentation) -> Self {
        Automorphism {
            images: (0..pres.rank()).map(Word::single).collect(),
        }
    }

    /// Apply to a word by substituting image words for letters.
    pub fn apply_word(&self, w: &Word) -> Word {
        let mut letters = Vec::new();
        for &(i, e) in w.letters() {
            let img = &self.images[i];
            if e > 0 {
                letters.extend_from_slice(img.letters());
            } else {
                letters.extend_from_slice(img.inverse().letters());
            }
        }
        Word::new(letters).freely_reduced()
    }

    /// Composition self ∘ rhs (apply rhs first, then self).
    pub fn compose(&self, rhs: &Automorphism) -> Automorphism {
        Automorphism {
            images: rhs.images.iter().map(|w| self.apply_word(w)).collect(),
        }
    }

    pub fn power(&self, n: usize) -> Automorphism {
        let mut out = Automorphism {
            images: (0..self.images.len()).map(Word::single).collect(),
        };
        for _ in 0..n {
            out = self.compose(&out);
        }
        out
    }
}

/// Precompose ρ by an automorphism: generator i ↦ ρ(aut.images[i]).
pub fn apply_automorphism(rep: &Representation, aut: &Automorphism) -> Result<Representation> {
    if aut.images.len() != rep.presentation.rank() {
        return Err(Error::InvalidInput(
            "automorphism rank does not match presentation".into(),
        ));
    }
    let matrices: Vec<GroupElem> = aut.images.iter().map(|w| evaluate(rep, w)).collect();
    let out = Representation {
        presentation: rep.presentation.clone(),
        matrices,
    };
    out.check_relation(RELATION_TOL)?;
    Ok(out)
}

/// The canonical fingerprint word set: generators, all pairwise products
/// γ_iγ_j (i < j), and consecutive triples γ_iγ_{i+1}γ_{i+2}.
pub fn default_word_set(pres: &Presentation) -> Vec<Word> {
    let n = pres.rank();
    let mut words: Vec<Word> = (0..n).map(Word::single).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            words.push(Word::new(vec![(i, 1), (j, 1)]));
        }
    }
    for i in 0..n.saturating_sub(2) {
        words.push(Word::new(vec![(i, 1), (i + 1, 1), (i + 2, 1)]));
    }
    words
}

/// Conjugation-invariant trace vector over a word set.
pub fn fingerprint(rep: &Representation, words: &[Word]) -> Vec<C64> {
    words.iter().map(|w| evaluate(rep, w).trace()).collect()
}

/// Max absolute trace difference; a pseudometric on characters.
pub fn chars_distance(f1: &[C64], f2: &[C64]) -> f64 {
    f1.iter()
        .zip(f2.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// Fingerprint distance on the canonical word set.
pub fn rep_distance(r1: &Representation, r2: &Representation) -> f64 {
    let words = default_word_set(&r1.presentation);
    chars_distance(&fingerprint(r1, &words), &fingerprint(r2, &words))
}

/// Uniform random special-unitary matrix via unit quaternions.
pub fn random_su2<R: Rng>(rng: &mut R) -> GroupElem {
    loop {
        let q: [f64; 4] = [
            2.0 * rng.gen::<f64>() - 1.0,
            2.0 * rng.gen::<f64>() - 1.0,
            2.0 * rng.gen::<f64>() - 1.0,
            2.0 * rng.gen::<f64>() - 1.0,
        ];
        let n2: f64 = q.iter().map(|x| x * x).sum();
        if n2 > 1e-6 && n2 <= 1.0 {
            let n = n2.sqrt();
            return GroupElem::from_quaternion([q[0] / n, q[1] / n, q[2] / n, q[3] / n])
                .expect("unit quaternion");
        }
    }
}

/// Random irreducible special-unitary representation of a d-punctured
/// sphere with non-central peripheral holonomies; rejection-sampled.
pub fn random_unitary_rep<R: Rng>(d: usize, rng: &mut R) -> Result<Representation> {
    let pres = Presentation::punctured_sphere(d)?;
    loop {
        let mats: Vec<GroupElem> = (0..d - 1).map(|_| random_su2(rng)).collect();
        let rep = make_representation(&pres, &mats)?;
        if rep.generators().iter().any(|m| m.central_distance() < 0.05) {
            continue;
        }
        if !is_irreducible(&rep) {
            continue;
        }
        return Ok(rep);
    }
}

/// Random irreducible SU(2) representation whose peripheral and nested
/// standard-curve traces all stay inside (−2+margin, 2−margin); the
/// sampling used by chart-coordinate tests.
pub fn random_chart_rep<R: Rng>(d: usize, margin: f64, rng: &mut R) -> Result<Representation> {
    loop {
        let rep = random_unitary_rep(d, rng)?;
        let ok = (0..d).all(|i| rep.generator(i).trace().re.abs() < 2.0 - margin)
            && (2..d).all(|k| {
                let w = Word::product(&(0..k).collect::<Vec<_>>());
                evaluate(&rep, &w).trace().re.abs() < 2.0 - margin
            });
        if ok {
            return Ok(rep);
        }
    }
}

/// Random genus-2 special-unitary representation: draw (a1, b1), then build
/// the second handle as a centralizer-twisted copy with inverse commutator.
pub fn random_genus2_rep<R: Rng>(rng: &mut R) -> Result<Representation> {
    let pres = Presentation::closed_genus(2)?;
    loop {
        let a1 = random_su2(rng);
        let b1 = random_su2(rng);
        let d = a1.mul(&b1).mul(&a1.inverse()).mul(&b1.inverse());
        if d.central_distance() < 0.05 {
            continue;
        }
        let theta = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
        let f = variation(&d);
        let g = exp_traceless(&f.scale(Complex64::new(theta / f.norm().max(1e-12), 0.0)));
        let a2 = b1.conjugate(&g);
        let b2 = a1.conjugate(&g);
        let rep = make_representation(&pres, &[a1, b1, a2, b2])?;
        if is_irreducible(&rep) {
            return Ok(rep);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Mat2, Vec3};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn evaluate_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rep = random_unitary_rep(4, &mut rng).unwrap();
        assert!(evaluate(&rep, &Word::empty()).dist(&GroupElem::identity()) == 0.0);
        let w = Word::new(vec![(0, 1), (0, -1)]);
        assert!(evaluate(&rep, &w).dist(&GroupElem::identity()) < 1e-12);
        assert!(rep.relation_defect() < 1e-10);
        // evaluate(w1 w2) = evaluate(w1) evaluate(w2)
        let w1 = Word::new(vec![(0, 1), (2, -1)]);
        let w2 = Word::new(vec![(1, 1), (3, 1)]);
        let lhs = evaluate(&rep, &w1.concat(&w2));
        let rhs = evaluate(&rep, &w1).mul(&evaluate(&rep, &w2));
        assert!(lhs.dist(&rhs) < 1e-12);
    }

    #[test]
    fn make_representation_cases() {
        let pres = Presentation::punctured_sphere(3).unwrap();
        let a = GroupElem::elliptic_diag(0.7);
        let b = GroupElem::rotation(Vec3::new(0.0, 1.0, 0.0), 1.1).unwrap();
        let rep = make_representation(&pres, &[a, b]).unwrap();
        // γ3 = (AB)⁻¹
        assert!(rep.generator(2).dist(&a.mul(&b).inverse()) < 1e-12);

        // Genus 2 with matrices violating the relation must fail.
        let pres2 = Presentation::closed_genus(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mats: Vec<GroupElem> = (0..4).map(|_| random_su2(&mut rng)).collect();
        assert!(make_representation(&pres2, &mats).is_err());
        // And the constructed family satisfies it.
        let rep2 = random_genus2_rep(&mut rng).unwrap();
        assert!(rep2.relation_defect() < 1e-10);
    }

    #[test]
    fn irreducibility() {
        // All-diagonal is reducible; diag + half-turn about z is irreducible.
        let pres = Presentation::punctured_sphere(3).unwrap();
        let d1 = GroupElem::elliptic_diag(PI / 4.0);
        let d2 = GroupElem::elliptic_diag(0.9);
        let red = make_representation(&pres, &[d1, d2]).unwrap();
        assert!(!is_irreducible(&red));

        let rot = GroupElem::rotation(Vec3::new(0.0, 0.0, 1.0), PI).unwrap();
        let irr = make_representation(&pres, &[d1, rot]).unwrap();
        assert!(is_irreducible(&irr));

        // Conjugation invariance over random conjugators.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let g = random_su2(&mut rng);
            assert!(!is_irreducible(&red.conjugated(&g)));
            assert!(is_irreducible(&irr.conjugated(&g)));
        }
    }

    #[test]
    fn unitarization() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..20 {
            let rep = random_unitary_rep(4, &mut rng).unwrap();
            // Already unitary: unchanged up to tolerance.
            let u = unitarize(&rep).unwrap();
            assert!(rep_distance(&u, &rep) < 1e-8);

            // Conjugate by a non-unitary g, then recover.
            let g = GroupElem::new(Mat2::new(
                C64::new(1.3, 0.2),
                C64::new(0.4, -0.1),
                C64::new(0.0, 0.3),
                C64::new(0.9, 0.0),
            ))
            .unwrap();
            let twisted = rep.conjugated(&g);
            let u = unitarize(&twisted).unwrap();
            assert!(u.is_special_unitary(1e-8));
            assert!(rep_distance(&u, &rep) < 1e-7, "fingerprint preserved");
        }
        // A hyperbolic generator obstructs unitarization.
        let pres = Presentation::punctured_sphere(3).unwrap();
        let h = GroupElem::hyperbolic_diag(0.8);
        let r = GroupElem::rotation(Vec3::new(0.0, 1.0, 0.0), 0.7).unwrap();
        let rep = make_representation(&pres, &[h, r]).unwrap();
        assert!(matches!(
            unitarize(&rep),
            Err(Error::NotUnitarizable) | Err(Error::Reducible)
        ));
    }

    #[test]
    fn automorphism_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let rep = random_unitary_rep(4, &mut rng).unwrap();
        let pres = rep.presentation.clone();
        let id = Automorphism::identity(&pres);
        assert!(rep_distance(&apply_automorphism(&rep, &id).unwrap(), &rep) < 1e-12);

        // Braid half twist σ2: γ2 ↦ γ2γ3γ2⁻¹, γ3 ↦ γ2; applied twice it is
        // the full twist along γ2γ3 up to inner automorphism.
        let sigma2 = crate::experiments::braid_half_twist(&pres, 1).unwrap();
        let once = apply_automorphism(&rep, &sigma2).unwrap();
        assert!(once.relation_defect() < 1e-10);
        let twice = apply_automorphism(&once, &sigma2).unwrap();
        let curve = crate::pants::CurveClass::standard(&pres, &[1, 2]).unwrap();
        let full = crate::experiments::dehn_twist_full(&pres, &curve).unwrap();
        let full_rep = apply_automorphism(&rep, &full).unwrap();
        assert!(rep_distance(&twice, &full_rep) < 1e-9);
    }

    #[test]
    fn fingerprint_pseudometric() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let words = default_word_set(&Presentation::punctured_sphere(4).unwrap());
        let rep = random_unitary_rep(4, &mut rng).unwrap();
        let g = random_su2(&mut rng);
        let f1 = fingerprint(&rep, &words);
        let f2 = fingerprint(&rep.conjugated(&g), &words);
        assert!(chars_distance(&f1, &f2) < 1e-12);

        // Lift sensitivity: flipping one generator by −I moves the
        // fingerprint by at least 2|tr| on that generator.
        let mut mats = rep.generators()[..3].to_vec();
        mats[0] = GroupElem::new(mats[0].matrix().scale(C64::new(-1.0, 0.0))).unwrap();
        let flipped = make_representation(&rep.presentation, &mats).unwrap();
        let f3 = fingerprint(&flipped, &words);
        let tr0 = rep.generator(0).trace().norm();
        assert!(chars_distance(&f1, &f3) >= 2.0 * tr0 - 1e-9);

        // Pseudometric sanity on random triples.
        for _ in 0..20 {
            let a = fingerprint(&random_unitary_rep(4, &mut rng).unwrap(), &words);
            let b = fingerprint(&random_unitary_rep(4, &mut rng).unwrap(), &words);
            let c = fingerprint(&random_unitary_rep(4, &mut rng).unwrap(), &words);
            let (dab, dbc, dac) = (
                chars_distance(&a, &b),
                chars_distance(&b, &c),
                chars_distance(&a, &c),
            );
            assert!((dab - chars_distance(&b, &a)).abs() < 1e-15);
            assert!(dac <= dab + dbc + 1e-12);
        }
    }

    #[test]
    fn unitarize_fingerprint_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let words = default_word_set(&Presentation::punctured_sphere(5).unwrap());
        for _ in 0..10 {
            let rep = random_unitary_rep(5, &mut rng).unwrap();
            let g = GroupElem::new(Mat2::new(
                C64::new(1.0, 0.1),
                C64::new(0.2, 0.0),
                C64::new(0.0, 0.0),
                C64::new(1.0, -0.1),
            ))
            .unwrap();
            let twisted = rep.conjugated(&g);
            let u = unitarize(&twisted).unwrap();
            assert!(
                chars_distance(&fingerprint(&u, &words), &fingerprint(&twisted, &words)) < 1e-9
            );
        }
    }
}
