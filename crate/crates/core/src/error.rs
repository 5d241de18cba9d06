use thiserror::Error;

/// Failures raised by the constructions in this crate.
///
/// Verdicts such as an undecidable ultrafilter membership are not errors;
/// they are ordinary return values.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate tail: suffix sum r_{index} is zero")]
    DegenerateTail { index: usize },

    #[error("not a linear relation: residual {residual:e} at point {point} exceeds {bound:e}")]
    NotARelation { point: usize, residual: f64, bound: f64 },

    #[error("grid too coarse: shell {shell} contains no samples")]
    GridTooCoarse { shell: usize },

    #[error("invalid weight: w = {value} < 1 at sample {index}")]
    InvalidWeight { index: usize, value: f64 },

    #[error("exponent overflow: mean log-modulus {mean_log:.3} too large, rescale input by {suggested_scale:e}")]
    ScaleOverflow { mean_log: f64, suggested_scale: f64 },

    #[error("not inner: boundary deviation {boundary_dev:e}, interior max {interior_max:.6}")]
    NotInner { boundary_dev: f64, interior_max: f64 },

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn ensure_finite(values: &[num_complex::Complex64], what: &str) -> Result<()> {
    match values.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(i) => Err(Error::InvalidInput(format!("{what}: non-finite entry at index {i}"))),
        None => Ok(()),
    }
}
