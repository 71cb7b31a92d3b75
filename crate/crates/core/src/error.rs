use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{quantity} = {value} is outside the allowed domain ({domain})")]
    Domain {
        quantity: &'static str,
        value: f64,
        domain: String,
    },

    #[error("singular scattering system at k = {k} (omega_c = {omega_c}, Omega = {omega}, g0 = {g0}, g1 = {g1})")]
    SingularSystem {
        k: f64,
        omega_c: f64,
        omega: f64,
        g0: f64,
        g1: f64,
    },

    #[error("bound-state amplitude denominator vanishes at E = {energy} (g0 = {g0}, g1 = {g1}, Omega = {omega})")]
    DegenerateAmplitude {
        energy: f64,
        g0: f64,
        g1: f64,
        omega: f64,
    },

    #[error("root scan and analytic criterion disagree on the upper bound state: numeric = {numeric}, analytic = {analytic}")]
    Inconsistent { numeric: bool, analytic: bool },

    #[error(
        "overlap completeness defect {defect:e} exceeds {limit:e} at nk = {nk}; use a larger grid"
    )]
    GridTooCoarse { nk: usize, defect: f64, limit: f64 },

    #[error(
        "finite lattice of {n_sites} sites is too small; at least {minimal} sites are required"
    )]
    LatticeTooSmall { n_sites: usize, minimal: usize },
}
