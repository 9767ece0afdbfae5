//! Exact Chow-ring computations for the Lagrangian Grassmannian `Sp_2g/P`
//! and the sub flag variety cut out by a Levi subgroup.
//!
//! ```
//! use flagchow::intersection::verify_theorem;
//! let (push, _) = verify_theorem(3).unwrap();
//! assert!(push.proportional);
//! assert_eq!(push.a.unwrap().to_string(), "-1");
//! ```

pub mod bundles;
pub mod chow;
pub mod error;
pub mod intersection;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod roots;
pub mod weyl;

pub use error::{Error, Result};
