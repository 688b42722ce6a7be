//! Seeded Monte Carlo estimators and the closed forms they are checked against.

pub mod mc;
pub mod reference;
pub mod sim;

pub use mc::{
    block_coverage, convergence_rate_mc, digit_freq_mc, lyapunov_mc, switch_hitting_mc, theta_stats_mc, StatReport,
};
pub use reference::{f_a, f_l, f_theta, luroth_series_lyapunov, m_p};
pub use sim::{SimConfig, StartPoint};
