//! Exact arithmetic in imaginary quadratic fields `Q(√d)`.
//!
//! Class groups come from reduced binary quadratic forms, ideals are kept in
//! Hermite normal form, and the unit group is finite, so principality,
//! associate classes and ray-class congruences are all decided by finite
//! enumeration.

pub mod arith;
pub mod count;
pub mod field;
pub mod form;
pub mod ideal;
pub mod ray;

pub use count::{count_progression_elements, count_progression_ideals, SCAN_LIMIT};
pub use field::{make_field, PrimeIdealRec, PrimeKind, QuadField, DIVISOR_LATTICE_LIMIT};
pub use form::Form;
pub use ideal::{Ideal, QuadElement, Ring};
pub use ray::{ord_p, ray_phi, same_strict_ray_class, RayModulus};
