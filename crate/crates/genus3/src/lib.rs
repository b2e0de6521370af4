//! Search for genus 3 plane quartics with many rational points over odd
//! finite fields.
//!
//! The family under study is C_lambda: x^4 + y^4 + z^4 =
//! (lambda+1)(x^2 y^2 + y^2 z^2 + z^2 x^2). Its jacobian is isogenous to the
//! cube of the twisted Legendre curve (lambda+3) y^2 = x(x-1)(x-lambda), so
//! #C_lambda(F_q) = 3 #E_lambda^(lambda+3)(F_q) - 2q - 2 and finding quartics
//! with many points reduces to sweeping lambda for large elliptic counts.
//!
//! Modules:
//! - [`finite_field`]: exact F_{p^n} arithmetic and the quadratic character;
//! - [`poly_fp`]: polynomials over F_p, the Hasse polynomial, root finding;
//! - [`curves`]: Legendre / twisted / quartic point counts;
//! - [`classify`]: closed-form bounds and achievability predicates;
//! - [`search`]: best-curve search, surveys, target-count search, tables.

pub mod arith;
pub mod classify;
pub mod curves;
pub mod error;
pub mod finite_field;
pub mod poly_fp;
pub mod search;

pub use error::{Error, Result};
