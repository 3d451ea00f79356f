use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("orientation error: {0}")]
    OrientationError(String),
    #[error("bad braid word: {0}")]
    BadBraidWord(String),
    #[error("unknown arc {0}")]
    UnknownArc(u32),
    #[error("diagram has no basepoint")]
    NoBasepoint,
    #[error("diagram has no ray counts")]
    NotAnnular,
    #[error("non-planar saddle at crossing {crossing}: circle count unchanged")]
    NonPlanar { crossing: usize },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(u8, u8),
    #[error("d^2 != 0 at degree {degree}")]
    NotAComplex { degree: i32 },
    #[error("homology vanishes at degree {0}")]
    Unbounded(i32),
    #[error("oracle refused: dimension {0} too large")]
    OracleRefused(usize),
    #[error("kernel dimension {0} exceeds exhaustive guard")]
    KernelTooLarge(usize),
    #[error("lemma hypothesis violated")]
    NotApplicable,
    #[error("unknown family {0}")]
    BadFamily(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unsupported foam: {0}")]
    UnsupportedFoam(String),
    #[error("internal mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = core::result::Result<T, Error>;
