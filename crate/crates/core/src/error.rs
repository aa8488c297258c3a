use thiserror::Error;

/// Errors reported by the numerical kernel and the geometric layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular (|det| = {det_abs:.3e})")]
    Singular { det_abs: f64 },

    #[error("element is central (within {tol:.1e} of ±identity); operation is degenerate")]
    CentralElement { tol: f64 },

    #[error("trace {trace:.6} is within {tol:.1e} of ±2: parabolic-or-identity ambiguity")]
    BorderlineTrace { trace: f64, tol: f64 },

    #[error("parabolic element has a single fixed point")]
    ParabolicInput,

    #[error("tuples are not conjugate (residual {residual:.3e} > {tol:.1e})")]
    NotConjugate { residual: f64, tol: f64 },

    #[error("conjugation problem has solution space of dimension > 1 (reducible tuple)")]
    ReducibleTuple,

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("invalid word: generator index {index} out of range for {generators} generators")]
    WordIndex { index: usize, generators: usize },

    #[error("relation word does not evaluate to the identity (defect {defect:.3e} > {tol:.1e})")]
    RelationViolated { defect: f64, tol: f64 },

    #[error("representation is reducible")]
    Reducible,

    #[error("representation is not unitarizable (no positive-definite invariant form)")]
    NotUnitarizable,

    #[error("representation is not special-unitary within {tol:.1e}")]
    NotUnitary { tol: f64 },

    #[error("peripheral holonomy of generator {index} is central")]
    CentralPeripheral { index: usize },

    #[error("curve holonomy is central; twist flow is undefined")]
    CentralCurve,

    #[error("curves overlap; twist flows along them do not commute structurally")]
    OverlappingCurves,

    #[error("pants trace triple ({t1:.4}, {t2:.4}, {t3:.4}) is not solvable in SU(2)")]
    UnsolvablePantsTriple { t1: f64, t2: f64, t3: f64 },

    #[error("pants trace triple is degenerate (reducible boundary pair)")]
    DegeneratePantsTriple,

    #[error("character lies outside the chart: {0}")]
    OutsideChart(String),

    #[error("lift sign is ambiguous at cone angle π")]
    AmbiguousLiftSign,

    #[error("lift sign inconsistent: trace {trace:.6} does not match ±2cos({alpha:.6}/2)")]
    InconsistentLiftSign { trace: f64, alpha: f64 },

    #[error("curve holonomy is not elliptic with trace in (-2,2); splitting formula is singular")]
    NonEllipticCurve,

    #[error("splitting direction mismatch: sign·Im τ = {value:.3e} < 0 for curve {index}")]
    WrongSplitDirection { index: usize, value: f64 },

    #[error("split sign for curve {index} is unset but Im τ = {value:.3e} ≠ 0")]
    UnsetSplitSign { index: usize, value: f64 },

    #[error("invalid cone-surface complex: {0}")]
    Complex(String),

    #[error("invalid path: {0}")]
    Path(String),

    #[error("path meets the rotation axis of its holonomy (dθ singular along the curve)")]
    PathMeetsAxis,

    #[error("transversality undetermined: |dθ(tangent)| = {margin:.3e} below margin {required:.1e}")]
    TransversalityMargin { margin: f64, required: f64 },

    #[error("unknown check suite '{0}'")]
    UnknownSuite(String),

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
