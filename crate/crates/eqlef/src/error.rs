use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group too large: order exceeds the configured bound of {0}")]
    GroupTooLarge(usize),
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),
    #[error("map is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("mark vector is not in the image of ch0: {0}")]
    NotInImage(String),
    #[error("linear map is singular on stratum {0}")]
    SingularOnStratum(String),
    #[error("fixed point datum has singular tangent data: {0}")]
    SingularFixedPoint(String),
    #[error("pi1 model unsupported: {0}")]
    Pi1Unsupported(String),
    #[error("component not preserved by the map: {0}")]
    ComponentNotPreserved(String),
    #[error("missing path data: {0}")]
    MissingPathData(String),
    #[error("induction requires an injective Weyl map: {0}")]
    NonInjectiveWeylMap(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
