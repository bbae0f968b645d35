//! Exact arithmetic: Laurent polynomials in q and t, the field Q(q,t), and
//! sparse polynomials in x variables over it.

pub mod cyclo;
pub mod poly;
pub mod rational;
pub mod xpoly;

pub use poly::QtPoly;
pub use rational::QTRational;
pub use xpoly::{sum_all, Exponents, XPolynomial};
