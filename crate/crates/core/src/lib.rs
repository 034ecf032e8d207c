//! Exact truncated arithmetic over `K_r^perfd`, the completed perfection of
//! generalized power series over `K = F_p((t))^perfd` with free radii.
//!
//! Every element carries a floor: all terms it does not list have norm
//! strictly below the floor. Exponents are `p`-adic rationals with bounded
//! denominators, and norms are compared exactly.
//!
//! - [`valuegroup`]: norm values `|t|^a r^q` and their ordering.
//! - [`series`]: elements of `K_r^perfd`.
//! - [`tatealg`]: perfectoid Tate series and evaluation maps.
//! - [`berkovich`]: disk points, nested prefixes and their types.
//! - [`abhyankar`]: coordinate towers, `d_K` and semi-immediate extensions.
//! - [`gleason`]: Gleason schedules, division by adapted elements and the
//!   standard surjection onto `K_r^perfd`.

pub mod abhyankar;
pub mod adapted;
pub mod berkovich;
pub mod cli;
pub mod error;
pub mod exponent;
pub mod gleason;
pub mod json;
pub mod random;
mod realsign;
pub mod series;
pub mod tatealg;
pub mod valuegroup;

pub use error::{Error, Result};
