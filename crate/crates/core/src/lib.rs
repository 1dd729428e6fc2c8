//! Enumeration and exact counting of convex domino towers.
//!
//! A tower is a finite set of horizontal dominoes whose lowest level is a
//! contiguous base and in which every other domino rests on one below it.
//! The crate enumerates towers exhaustively, classifies them, counts the
//! convex families by recurrence and by generating function, and computes
//! the constant in their `θ_b 2^n` growth exactly.
//!
//! ```
//! use domino_towers::Counts;
//!
//! let mut counts = Counts::new();
//! assert_eq!(counts.c(4, 10), 531u32.into());
//! ```

pub mod asymptotics;
pub mod config;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod model;
pub mod oeis;
pub mod recurrence;
pub mod render;
pub mod series;
pub mod verify;

pub use config::RunConfig;
pub use enumerate::{
    census, enumerate, BaseSelector, ClassCensus, ClassFilter, EnumerationRequest, GroupBy,
};
pub use error::{Error, Result};
pub use model::{Dissection, Domino, TowerClass, TowerShape};
pub use recurrence::{BlockCounts, CountTable, Counts, Family};
pub use render::Format;
pub use series::{Method, TruncatedSeries};
