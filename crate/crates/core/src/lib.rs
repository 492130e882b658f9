//! Exact arithmetic for Salem polynomials and automorphisms of
//! two-dimensional complex tori.
//!
//! The crate is organized bottom-up: [`poly`] provides exact integer
//! polynomials, [`salem`] certifies Salem polynomials and isolates roots,
//! [`wedge`] maps H^1 characteristic polynomials to H^2, [`classify`]
//! decides case, realizability and finiteness, [`torus`] builds explicit
//! models, and [`atlas`] sweeps coefficient boxes.

pub mod atlas;
pub mod classify;
pub mod numeric;
pub mod poly;
pub mod salem;
pub mod torus;
pub mod wedge;
