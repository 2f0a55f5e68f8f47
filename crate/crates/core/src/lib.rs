//! Symbolic calculator for the bounded derived categories of finitely and
//! cofinitely presented representations of `A_L` and `D_L`, where `L` is a
//! locally discrete linear order `T ×→ Z`.
//!
//! The [`model`] layer answers Hom, AR translate, AR triangle, component and
//! cone queries in closed form. The [`oracle`] layer recomputes the same data
//! by exact linear algebra on finite truncations, and [`verify`] sweeps the
//! two against each other.

pub mod config;
pub mod export;
pub mod field;
pub mod literal;
pub mod matrix;
pub mod model;
pub mod objects;
pub mod oracle;
pub mod order;
pub mod probing;
pub mod tilting;
pub mod verify;

pub use config::RunConfig;
pub use field::{Field, FieldChoice, PrimeField, Rationals};
pub use objects::{ComponentId, DObj, IndClass, IndObj, Shape};
pub use order::{DPoint, FinPoset, Kind, LPoint, PosetSpec};
