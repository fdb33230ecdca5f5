//! Exact computer-algebra core for two-degrees-of-freedom controller design.
//!
//! The plant `P = N D^-1` is held as a pair of coprime polynomial matrices
//! over the rationals. On top of that substrate the crate decides which
//! closed-loop responses `T = N X` are attainable under internal stability,
//! builds the controllers that attain them in the general two-degrees-of-freedom
//! configuration and in the restricted ones (feedforward/feedback split,
//! unity feedback, feedback with direct reference), and verifies every design
//! by exact closed-loop algebra plus a step-response simulation.
//!
//! Sign convention: the loop is closed with positive feedback, `u = Cy y + Cr r`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod error;
pub mod factor;
pub mod polyalg;
pub mod roots;
pub mod stability;
pub mod stabilize;
pub mod synthesis;
pub mod verify;

pub use error::{Error, Obstruction};
pub use polyalg::{Poly, PolyMat, QMat, RatFn, RatMat, Rational};
