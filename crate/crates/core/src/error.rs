use thiserror::Error;

/// Which butterfly axiom a diagram fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// A wing does not connect the expected groups.
    WingEndpoints,
    /// `q∘j = d` on the source complex.
    TriangleQj,
    /// `p∘i = -d` on the target complex.
    TrianglePi,
    /// `p∘j = 0`.
    CompositePj,
    /// `i` is injective.
    ExactAtDstDegM1,
    /// `ker q = im i`.
    ExactAtCarrier,
    /// `q` is surjective.
    ExactAtSrcDeg0,
}

impl Axiom {
    pub fn message(self) -> &'static str {
        match self {
            Axiom::WingEndpoints => "wing maps do not match the complexes and carrier",
            Axiom::TriangleQj => "triangle qj=d violated",
            Axiom::TrianglePi => "triangle pi=-d violated",
            Axiom::CompositePj => "composite pj=0 violated",
            Axiom::ExactAtDstDegM1 => "diagonal not exact at dst.deg-1 (i not injective)",
            Axiom::ExactAtCarrier => "diagonal not exact at carrier",
            Axiom::ExactAtSrcDeg0 => "diagonal not exact at src.deg0 (q not surjective)",
        }
    }
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.message())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("map is not well-defined: {0}")]
    NotWellDefined(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("butterfly axiom violated: {0}")]
    Axiom(Axiom),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("element-level enumeration refused: {0}")]
    Oracle(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
