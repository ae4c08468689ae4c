use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("characteristic {0} is not a supported prime")]
    BadCharacteristic(u64),

    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),

    #[error("unit is not a two-sided identity (fails against basis element {0})")]
    BadUnit(usize),

    #[error("idempotents are not a complete orthogonal family: {0}")]
    BadIdempotents(String),

    #[error("radical basis does not span a two-sided ideal: {0}")]
    RadicalNotIdeal(String),

    #[error("radical is not nilpotent: J^{0} is still nonzero")]
    RadicalNotNilpotent(usize),

    #[error("relation {0} is not length-homogeneous or mixes endpoints")]
    RelationNotLengthHomogeneous(usize),

    #[error("path basis would exceed the cap of {0} elements")]
    PathExplosion(usize),

    #[error("invalid quiver presentation: {0}")]
    BadQuiver(String),

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("invalid module: {0}")]
    BadModule(String),

    #[error("invalid morphism: {0}")]
    BadMorphism(String),

    #[error("top decomposition failed: {0}")]
    TopDecompositionFailed(String),

    #[error("source is not a recorded projective")]
    SourceNotProjective,

    #[error("resolution cutoff {0} exceeded")]
    CutoffExceeded(usize),

    #[error("module is not certified Gorenstein projective: {0}")]
    NotCertifiedGP(String),

    #[error("membership not certified for {module} in {class}: {detail}")]
    MembershipNotCertified { module: String, class: String, detail: String },

    #[error("oracle {0} has no proper generator sequences")]
    NoGeneratorData(String),

    #[error("oracle {0} has no coproper cogenerator sequences")]
    NoCogeneratorData(String),

    #[error("dimension is not exact: {0}")]
    DimensionNotExact(String),

    #[error("unsupported subcategory kind: {0}")]
    UnsupportedKind(String),

    #[error("invalid exact sequence: {0}")]
    BadSequence(String),

    #[error("unknown property id: {0}")]
    UnknownPropertyId(String),

    #[error("unknown conjecture id: {0}")]
    UnknownConjectureId(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("validation error ({invariant}): {detail}")]
    Validation { invariant: String, detail: String },
}
