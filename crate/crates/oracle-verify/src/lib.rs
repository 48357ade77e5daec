//! Independent verification: graph-enumeration oracles for every identity
//! between the combinatorial, PDE and recurrence descriptions, randomized
//! property suites, and the numeric check of the asymptotic expansion of a
//! one-dimensional Gaussian integral.

pub mod props;
pub mod quad;
pub mod suite;

pub use genus_expansion::CheckReport;
pub use quad::{asymptotic_order_check, gaussian_log_integral, partial_sum, Certified, OrderReport, QuadratureProblem};
pub use suite::{Suite, Weights};

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Series(#[from] series_core::SeriesError),
    #[error(transparent)]
    Graph(#[from] graph_enum::GraphError),
    #[error(transparent)]
    Pde(#[from] pde_solve::PdeError),
    #[error(transparent)]
    Genus(#[from] genus_expansion::GenusError),
    #[error(transparent)]
    Stable(#[from] stable_poly::StableError),
    #[error("quadrature: {0}")]
    Quadrature(String),
    #[error("{0}")]
    Config(String),
}
