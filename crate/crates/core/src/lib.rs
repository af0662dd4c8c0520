//! Exact search, parametrization and elliptic-curve certification for the
//! triangular-number systems
//!
//! ```text
//! t_x + t_y = t_p,   t_y + t_z = t_q,   t_z + t_x = t_r   [, t_x + t_y + t_z = t_s]
//! ```
//!
//! with `t_n = n(n+1)/2`.

pub mod cli;
pub mod curve;
pub mod error;
pub mod exact;
pub mod families;
pub mod linalg;
pub mod multipoly;
pub mod param3;
pub mod search;
pub mod triangular;
pub mod verify;

pub use error::{Error, Result};
