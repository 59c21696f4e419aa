pub mod forms;
pub mod predict;
pub mod sweep;

pub use forms::{curve_has_point, represented_by_form};
pub use predict::{predicted_value, Named, Prediction};
pub use sweep::{no_prediction, sweep, vertical_sweep, SweepReport, SweepRow};
