use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bound must be a positive integer")]
    ZeroBound,

    #[error("morphism endpoint mismatch: expected language {expected}, found {found}")]
    EndpointMismatch { expected: String, found: String },

    #[error("language mismatch: {left} vs {right}")]
    LanguageMismatch { left: String, right: String },

    #[error("morphism is not total: source symbol `{0}` has no image")]
    NotTotal(String),

    #[error("morphism maps `{symbol}` to `{image}`, which is not in the target language")]
    ImageOutsideTarget { symbol: String, image: String },

    #[error("morphism maps symbol `{symbol}` outside the source language")]
    UnknownSourceSymbol { symbol: String },

    #[error("arity not preserved: `{symbol}`/{source_arity} mapped to `{image}`/{target_arity}")]
    ArityNotPreserved {
        symbol: String,
        source_arity: usize,
        image: String,
        target_arity: usize,
    },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("sentence `{sentence}` is not over language {language}")]
    SentenceNotOverLanguage { sentence: String, language: String },

    #[error("sentence `{0}` is not in the sentence universe of its language")]
    NotInUniverse(String),

    #[error("language has {size} symbols; the cap for {what} is {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("enumeration would produce {required} structures; the cap is {cap}")]
    EnumerationCap { required: u128, cap: u128 },

    #[error("edge `{edge}`: function is not total on `{element}`")]
    EdgeNotTotal { edge: String, element: String },

    #[error("edge `{edge}` refers to unknown node `{node}`")]
    UnknownNode { edge: String, node: String },

    #[error("infomorphism condition fails at instance `{instance}`, type `{ty}`")]
    InfomorphismViolation { instance: String, ty: String },

    #[error("invalid classification: {0}")]
    InvalidClassification(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("not a structure morphism: `{sentence}` holds in the source but its translation fails in the target")]
    NotStructureMorphism { sentence: String },

    #[error("edge `{edge}` is not a specification morphism: `{sentence}` is entailed at the source but its translation is not entailed at the target")]
    NotSpecMorphism { edge: String, sentence: String },

    #[error("logic is not sound: `{0}` is entailed by the theory but fails in the structure")]
    NotSound(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("cannot amalgamate: {0}")]
    Amalgamation(String),

    #[error("arity clash under merging: {0}")]
    ArityClash(String),

    #[error("edge `{edge}`: {inner}")]
    AtEdge { edge: String, inner: Box<Error> },

    #[error("channel does not cover the system at edge `{edge}`")]
    NotCovering { edge: String },

    #[error("no refinement: {0}")]
    NoRefinement(String),

    #[error("refinement is not unique: {0} assignments satisfy the equations")]
    RefinementNotUnique(usize),

    #[error("empty list of specifications")]
    EmptyList,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("arity mismatch: `{symbol}` has arity {expected}, used with {found} arguments")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
