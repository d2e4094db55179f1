//! One-dimensional Gaussian measure theory on finite unions of open
//! intervals with extended-real endpoints.

mod cheeger;
mod corpus;
mod indexes;
mod sets;
mod sharpness;

pub use cheeger::{cheeger_1d, pair_ratio, Cheeger1d};
pub use corpus::random_interval_set;
pub use indexes::{
    alpha_gamma, barycenter, beta_gamma, gauss_mass, gauss_mass_width, gauss_measure, gauss_perimeter,
    gauss_report, halfline_with_measure, GaussIndex, GaussReport, Orientation,
};
pub use sets::{Ext, Interval, IntervalSet};
pub use sharpness::{beta_gamma_closed_form, epsilon_t, omega_t, EpsilonRoot};
