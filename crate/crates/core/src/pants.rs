//! Separating curves and pair-of-pants decompositions of punctured spheres.
//!
//! Only standard separating curves are representable: a curve is a cyclic
//! interval of puncture indices, and its word is the product of the interval
//! generators in cyclic boundary order (conjugate, within the side-1
//! subgroup, to the σ-prefix product for the decomposition's puncture
//! ordering). This is exactly the class of curves the inductive
//! admissible-decomposition construction produces and the class the twist
//! flows need.
//!
//! A decomposition is admissible for ρ when every pair of pants carries an
//! irreducible restricted representation, tested through the commutator
//! trace: a boundary pair (A, B) is irreducible iff tr[A,B] ≠ 2.

use serde::{Deserialize, Serialize};

use crate::algebra::GroupElem;
use crate::error::{Error, Result};
use crate::surface::{evaluate, is_irreducible, Presentation, Representation, Word};

/// Commutation threshold: |tr[A,B] − 2| above this declares the pair
/// non-commuting. The quantity is a smooth reducibility defect, zero exactly
/// on commuting pairs.
pub const COMMUTATION_TOL: f64 = 1e-8;

/// A free-homotopy class of a standard separating simple closed curve on a
/// punctured sphere, stored as a cyclic interval of punctures.
///
/// `side1` lists the punctures to the left of the curve in cyclic boundary
/// order; the curve word is the product of their peripheral generators in
/// that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveClass {
    pub word: Word,
    pub side1: Vec<usize>,
    pub side2: Vec<usize>,
}

impl CurveClass {
    /// Standard curve enclosing the punctures `side1` (cyclic order).
    pub fn standard(pres: &Presentation, side1: &[usize]) -> Result<CurveClass> {
        let d = match pres {
            Presentation::PuncturedSphere { d } => *d,
            _ => {
                return Err(Error::InvalidInput(
                    "standard curves live on punctured spheres".into(),
                ))
            }
        };
        if side1.is_empty() || side1.len() >= d {
            return Err(Error::InvalidInput(
                "curve must have punctures on both sides".into(),
            ));
        }
        let mut seen = vec![false; d];
        for &i in side1 {
            if i >= d || seen[i] {
                return Err(Error::InvalidInput(format!("bad puncture index {i}")));
            }
            seen[i] = true;
        }
        // Cyclic-interval check: successive entries step by +1 mod d.
        for w in side1.windows(2) {
            if (w[0] + 1) % d != w[1] {
                return Err(Error::InvalidInput(
                    "side1 must be a cyclic interval of punctures in cyclic order".into(),
                ));
            }
        }
        let side2: Vec<usize> = (0..d)
            .map(|k| (side1[side1.len() - 1] + 1 + k) % d)
            .take(d - side1.len())
            .collect();
        Ok(CurveClass {
            word: Word::product(side1).cyclically_reduced(),
            side1: side1.to_vec(),
            side2,
        })
    }

    /// The same curve with sides exchanged; twisting along it flips z ↦ −z.
    pub fn flipped(&self, pres: &Presentation) -> Result<CurveClass> {
        CurveClass::standard(pres, &self.side2)
    }

    /// Structural disjointness of two standard curves: the side-1 intervals
    /// are nested or disjoint as sets (possibly after flipping sides).
    pub fn disjoint_from(&self, other: &CurveClass) -> bool {
        let a: std::collections::BTreeSet<_> = self.side1.iter().copied().collect();
        for side in [&other.side1, &other.side2] {
            let b: std::collections::BTreeSet<_> = side.iter().copied().collect();
            if a.is_subset(&b) || b.is_subset(&a) || a.is_disjoint(&b) {
                return true;
            }
        }
        false
    }
}

/// A pair of pants: three boundary words with w1·w2·w3 = 1 in the group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PantsPiece {
    pub boundaries: [Word; 3],
}

impl PantsPiece {
    pub fn new(w1: Word, w2: Word) -> PantsPiece {
        let w3 = w1.concat(&w2).inverse();
        PantsPiece {
            boundaries: [w1, w2, w3],
        }
    }

    /// Group-level check of the boundary relation under ρ.
    pub fn relation_defect(&self, rep: &Representation) -> f64 {
        let p = evaluate(rep, &self.boundaries[0])
            .mul(&evaluate(rep, &self.boundaries[1]))
            .mul(&evaluate(rep, &self.boundaries[2]));
        p.dist(&GroupElem::identity())
    }
}

/// A pants decomposition of a d-punctured sphere: a puncture ordering σ and
/// the d−3 nested standard curves it generates; the dual graph of the
/// pieces is a path.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PantsDecomposition {
    /// Puncture ordering: σ[0..k+2] spans the k-th curve's side-1 interval.
    pub ordering: Vec<usize>,
    pub curves: Vec<CurveClass>,
}

impl PantsDecomposition {
    /// Empty decomposition of the 3-punctured sphere.
    pub fn trivial(pres: &Presentation) -> Result<Self> {
        match pres {
            Presentation::PuncturedSphere { d: 3 } => Ok(PantsDecomposition {
                ordering: vec![0, 1, 2],
                curves: Vec::new(),
            }),
            _ => Err(Error::InvalidInput(
                "trivial decomposition exists only for d = 3".into(),
            )),
        }
    }

    pub fn validate(&self, pres: &Presentation) -> Result<()> {
        let d = pres.rank();
        if self.ordering.len() != d || self.curves.len() + 3 != d {
            return Err(Error::InvalidInput(
                "decomposition size does not match presentation".into(),
            ));
        }
        for (k, c) in self.curves.iter().enumerate() {
            if c.side1.len() != k + 2 {
                return Err(Error::InvalidInput(format!(
                    "curve {k} has side of size {}, expected {}",
                    c.side1.len(),
                    k + 2
                )));
            }
            let want: std::collections::BTreeSet<_> =
                self.ordering[..k + 2].iter().copied().collect();
            let got: std::collections::BTreeSet<_> = c.side1.iter().copied().collect();
            if want != got {
                return Err(Error::InvalidInput(format!(
                    "curve {k} does not span the first {} ordered punctures",
                    k + 2
                )));
            }
            for other in &self.curves[..k] {
                if !c.disjoint_from(other) {
                    return Err(Error::InvalidInput(format!(
                        "curves are not structurally disjoint at {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The d−2 pants pieces cut out by the decomposition, root first.
    pub fn pieces(&self) -> Vec<PantsPiece> {
        let d = self.ordering.len();
        if d == 3 {
            return vec![PantsPiece::new(
                Word::single(self.ordering[0]),
                Word::single(self.ordering[1]),
            )];
        }
        let mut out = Vec::with_capacity(d - 2);
        // Root piece: the first two ordered punctures against ν_1⁻¹.
        out.push(PantsPiece::new(
            Word::single(self.ordering[0]),
            Word::single(self.ordering[1]),
        ));
        for k in 1..self.curves.len() {
            let prev = &self.curves[k - 1];
            let new_gen = self.ordering[k + 1];
            // The k-th curve extends the previous interval by one puncture,
            // appended or prepended in cyclic order.
            if self.curves[k].side1.first() == prev.side1.first() {
                out.push(PantsPiece::new(prev.word.clone(), Word::single(new_gen)));
            } else {
                out.push(PantsPiece::new(Word::single(new_gen), prev.word.clone()));
            }
        }
        // Final piece: last curve against the two remaining punctures.
        let last = self.curves.last().expect("d > 3 has curves");
        out.push(PantsPiece::new(
            last.word.clone(),
            Word::single(self.ordering[d - 2]),
        ));
        out
    }
}

/// Irreducibility of the restriction of ρ to a pants piece:
/// tr[A,B] ≠ 2 for the first two boundary holonomies.
pub fn restriction_irreducible(rep: &Representation, piece: &PantsPiece) -> bool {
    let a = evaluate(rep, &piece.boundaries[0]);
    let b = evaluate(rep, &piece.boundaries[1]);
    commutator_trace_defect(&a, &b) > COMMUTATION_TOL
}

/// |tr(ABA⁻¹B⁻¹) − 2|: zero exactly on commuting pairs.
pub fn commutator_trace_defect(a: &GroupElem, b: &GroupElem) -> f64 {
    let c = a.mul(b).mul(&a.inverse()).mul(&b.inverse());
    (c.trace() - num_complex::Complex64::new(2.0, 0.0)).norm()
}

/// A decomposition is ρ-admissible iff every piece restricts irreducibly.
pub fn is_admissible(rep: &Representation, dec: &PantsDecomposition) -> bool {
    dec.validate(&rep.presentation).is_ok()
        && dec.pieces().iter().all(|p| restriction_irreducible(rep, p))
}

/// Find a ρ-admissible pants decomposition of a punctured sphere, by the
/// inductive construction: pick a cyclically-consecutive non-commuting pair
/// of peripherals, cut along their product, then extend the interval one
/// puncture at a time, keeping both the cut-off pants and the complementary
/// sphere irreducible at every step.
///
/// Requires ρ special-unitary (within `tol`), irreducible, with every
/// peripheral holonomy non-central. The search prefers the lexicographically
/// first starting pair and retries all cyclic starts before giving up.
pub fn find_admissible(rep: &Representation, tol: f64) -> Result<PantsDecomposition> {
    let d = match &rep.presentation {
        Presentation::PuncturedSphere { d } => *d,
        _ => {
            return Err(Error::InvalidInput(
                "admissible decompositions are built on punctured spheres".into(),
            ))
        }
    };
    if !rep.is_special_unitary(tol.max(1e-8)) {
        return Err(Error::NotUnitary { tol: tol.max(1e-8) });
    }
    if !is_irreducible(rep) {
        return Err(Error::Reducible);
    }
    for (i, g) in rep.generators().iter().enumerate() {
        if g.is_central(1e-6) {
            return Err(Error::CentralPeripheral { index: i });
        }
    }
    if d == 3 {
        return PantsDecomposition::trivial(&rep.presentation);
    }

    // Greedy chain growth from each cyclic starting pair in turn.
    'starts: for start in 0..d {
        if commutator_trace_defect(rep.generator(start), rep.generator((start + 1) % d))
            <= COMMUTATION_TOL
        {
            continue;
        }
        let interval = |lo: usize, len: usize| -> Vec<usize> {
            (0..len).map(|k| (lo + k) % d).collect()
        };
        let mut lo = start; // interval [lo, lo+len) mod d
        let mut len = 2usize;
        let mut order: Vec<usize> = vec![start, (start + 1) % d];
        let mut curves: Vec<CurveClass> =
            vec![CurveClass::standard(&rep.presentation, &interval(lo, len))?];
        while len < d - 2 {
            let cur = evaluate(rep, &curves.last().unwrap().word);
            let next = (lo + len) % d;
            let prev = (lo + d - 1) % d;
            // Append keeps the new pants (ν_k, γ_next); prepend keeps
            // (γ_prev, ν_k). Either must be irreducible together with the
            // complementary sphere.
            let mut extended = false;
            for (cand_lo, cand_new, a, b) in [
                (lo, next, cur, *rep.generator(next)),
                (prev, prev, *rep.generator(prev), cur),
            ] {
                if commutator_trace_defect(&a, &b) <= COMMUTATION_TOL {
                    continue;
                }
                let cand = interval(cand_lo, len + 1);
                let curve = CurveClass::standard(&rep.presentation, &cand)?;
                if complement_irreducible(rep, &curve) {
                    curves.push(curve);
                    order.push(cand_new);
                    lo = cand_lo;
                    len += 1;
                    extended = true;
                    break;
                }
            }
            if !extended {
                continue 'starts;
            }
        }
        for k in 0..d {
            let idx = (lo + k) % d;
            if !order.contains(&idx) {
                order.push(idx);
            }
        }
        let dec = PantsDecomposition {
            ordering: order,
            curves,
        };
        dec.validate(&rep.presentation)?;
        if is_admissible(rep, &dec) {
            return Ok(dec);
        }
    }
    Err(Error::InvalidInput(
        "no admissible chain decomposition found".into(),
    ))
}

/// Irreducibility of the complement of a standard curve: the boundary value
/// together with the side-2 peripherals must not share an eigenline. For
/// SU(2)-valued input this reduces to some pair failing to commute.
fn complement_irreducible(rep: &Representation, curve: &CurveClass) -> bool {
    let w = evaluate(rep, &curve.word).inverse();
    let mut elems: Vec<GroupElem> = vec![w];
    elems.extend(curve.side2.iter().map(|&i| *rep.generator(i)));
    for i in 0..elems.len() {
        for j in (i + 1)..elems.len() {
            if commutator_trace_defect(&elems[i], &elems[j]) > COMMUTATION_TOL {
                return true;
            }
        }
    }
    false
}
