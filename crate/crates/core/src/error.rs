//! Error type shared across the crate.

/// Everything that can go wrong when building models, solving for orbits,
/// or reconstructing potentials.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input outside the domain of an operation (bad parameter, r <= 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Bracket expansion found no sign change; no circular orbit exists
    /// for this (potential, n) pair within the search range.
    #[error("no orbit radius bracket for n = {n}: {detail}")]
    Bracket { n: u32, detail: String },

    /// The orbit-radius equation has several candidate roots in the bracket.
    #[error("ambiguous orbit radius for n = {n}: multiple roots in [{lo:.6e}, {hi:.6e}]")]
    Ambiguity { n: u32, lo: f64, hi: f64 },

    /// Closed-form radius radicand is nonpositive: no real circular orbit.
    #[error("no real orbit for n = {n}: closed-form radicand is nonpositive")]
    NoOrbit { n: u32 },

    /// Trajectory radius crossed zero.
    #[error("radial collapse: r <= 0 after step {step}")]
    Collapse { step: usize },

    /// Error raised while advancing a trajectory, tagged with the step index.
    #[error("step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    /// Radius-profile radicand nonpositive at index n.
    #[error("radius profile undefined at n = {n}: radicand is nonpositive")]
    NegativeRadicand { n: f64 },

    /// Query outside the covered radius interval.
    #[error("radius {r:.6e} outside covered range [{lo:.6e}, {hi:.6e}]")]
    Range { r: f64, lo: f64, hi: f64 },

    /// Radius profile is not strictly increasing where it must be.
    #[error("radius profile not strictly increasing near n = {n}")]
    Monotonicity { n: f64 },

    /// A reconstruction failed its internal consistency check.
    #[error("reconstruction self-check failed: {0}")]
    SelfCheck(String),

    /// Malformed input file.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
