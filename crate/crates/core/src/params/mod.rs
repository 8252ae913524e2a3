//! Character exponents, eigenvalue sets, and the two constructive searches
//! (the auxiliary integer N and the auxiliary prime l′).

mod elliptic;
mod exponents;
mod lprime;
mod search;

pub use elliptic::{count_points_ap, is_ordinary, EllipticCurveQ};
pub use exponents::{
    build_exponents, check_alpha_stability, closed_form_b_set, derive_b_set, first_balanced_subset, grid_b_set,
    AlphaStability, CharacterExponents, EigenvalueSet, ParityCase,
};
pub use lprime::{find_l_prime, LPrimeCondition, LPrimeReport, Rejection, UNVERIFIED_CONDITIONS};
pub use search::{find_n, find_n_with, FactorStep, FindNOptions, NSearchReport};
