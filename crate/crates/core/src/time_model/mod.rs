//! Canonical temporal values and the interval relations used by every
//! constraint check.

mod interval;
mod value;

pub use interval::{relation_holds, DayInterval, OrderingKey};
pub use value::{normalize_value_text, TimeValue, ValueKind};
