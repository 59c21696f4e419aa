pub mod examples;
pub mod hall;
pub mod pattern;

pub use hall::{free_metabelian_2, free_nilpotent, witt, HallBasis};
pub use pattern::{pattern_algebra, pattern_prediction, Poset};
