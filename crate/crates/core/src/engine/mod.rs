pub mod minimize;
pub mod oracle;
pub mod partition;
pub mod points;
pub mod signature;
pub mod solve;
pub mod strata;

pub use minimize::{minimize, verify_witness, FaithfulDimResult, MinimizeOptions, Mode, DEFAULT_BUDGET};
pub use oracle::exhaustive_min;
pub use partition::{admissible_from_regular, power_basis, rado_horn_partition};
pub use signature::{decode_signature, RankSignature};
pub use solve::{faithful_dimension, prepare, Reduction};
pub use strata::{rank_strata, StrataIndex};
