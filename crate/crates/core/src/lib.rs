pub mod error;
pub mod field;
pub mod poly;
pub mod groebner;
pub mod ideal_ops;
pub mod skew_twist;
pub mod clifford_hopf;
pub mod toric;
pub mod estimator;
