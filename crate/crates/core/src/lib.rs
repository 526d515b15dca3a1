pub mod bands;
pub mod bijection;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod invariants;
pub mod overpartition;
pub mod params;
pub mod part;
pub mod partition;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use overpartition::Overpartition;
pub use params::FamilyParams;
pub use part::{ExtPart, Part};
pub use partition::Partition;

/// Series over `i64`, enough for every identity check at the default bounds.
pub type Series = series::TruncatedSeries<i64>;
/// Series over `i128`, for larger truncation bounds.
pub type WideSeries = series::TruncatedSeries<i128>;
