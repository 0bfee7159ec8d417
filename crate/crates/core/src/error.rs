use thiserror::Error;

/// Errors surfaced by group construction, table computation, and the census.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group spec parse error: {0}")]
    ParseSpec(String),

    #[error("explicit multiplication table limited to order {limit}, got {order}")]
    ExplicitTooLarge { order: u64, limit: u64 },

    #[error("H enumeration exceeded the cap of {cap} matrices")]
    HEnumerationCap { cap: usize },

    #[error("group has even order {0}; only odd-order groups are supported here")]
    EvenOrder(u64),

    #[error("generator matrix is singular over F_{p}")]
    SingularGenerator { p: u32 },

    #[error("the H-module F_p^a is reducible (irreducibility was required)")]
    ReducibleModule,

    #[error("subgroup is not normal in its parent")]
    NotNormal,

    #[error("no modulus prime q ≡ 1 (mod {m}) with q > {min} found below {bound}")]
    ModulusSearch { m: u64, min: u64, bound: u64 },

    #[error("character-table engines disagree on {0}")]
    EngineMismatch(String),

    #[error("character table is inconsistent: {0}")]
    BadTable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}
