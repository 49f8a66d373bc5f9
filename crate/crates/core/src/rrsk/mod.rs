//! The `(r+1)R(s,k)` matrix series: parameters, convergence classes,
//! evaluation and its named special cases.

mod convergence;
mod params;
mod series;
mod special;

pub use convergence::{classify_convergence, ConvergenceClass, ConvergenceTag, CIRCLE_RTOL};
pub use params::{shift_param, ParamSelector, ParamSet, DEFAULT_LMAX};
pub use series::{
    derivative, eval_hypergeometric_k, eval_series, eval_series_matrix, term_log_norms, theta_apply, theta_power,
    EvalOptions, EvalResult, Series,
};
pub use special::{mittag_leffler, special_case, SpecialCase};
