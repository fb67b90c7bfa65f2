//! Exact arithmetic for symmetric random walk polynomial sequences.
//!
//! A random walk polynomial sequence is fixed by coefficients `c_n ∈ (0,1)`,
//! `a_n = 1 - c_n`, through `P_0 = 1`, `P_1 = x` and
//! `x P_n = a_n P_{n+1} + c_n P_{n-1}`. This crate builds such sequences
//! exactly over the rationals and answers questions about them:
//!
//! - [`sequence`]: coefficient sequences, their switched companions, orthonormal
//!   weights, Haar weights and polynomial evaluation.
//! - [`linearization`]: the coefficients `g(m,n;k)` of `P_m P_n = Σ g(m,n;k) P_k`,
//!   computed by recursion and by an independent monomial-basis oracle.
//! - [`criteria`]: the sufficient criterion on an auxiliary sequence `s_n`, its
//!   consequences, tridiagonal positive-definiteness certificates and the
//!   alternation pattern necessary for both a sequence and its switch to
//!   linearize nonnegatively.
//! - [`families`]: every concrete sequence family used in the verification runs.
//! - [`spectrum`]: floating-point diagnostics (truncated Jacobi spectra,
//!   compactness, the quadratic transform, dual membership of zero).
//! - [`document`]: the JSON sequence document format.
//! - [`verify`] and [`cli`]: the reproducible verification run and the command line.

pub mod cli;
pub mod criteria;
pub mod document;
pub mod error;
pub mod families;
pub mod linearization;
pub mod rational;
pub mod sequence;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use rational::{parse_rational, rat, Rational};
pub use sequence::{AlphaSqRule, CoefficientSequence, Family, HaarValues, SRule, SSequence, Variant};
