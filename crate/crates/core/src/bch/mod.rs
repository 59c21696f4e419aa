pub mod group;
pub mod orbit;
pub mod series;

pub use group::{group_axioms_check, AxiomViolation, BchGroup};
pub use orbit::{
    coadjoint_stabilizer, irrep_dimension, min_faithful_by_central_characters, orbit_census,
    stabilizer_size, Census, CharacterPoint,
};
pub use series::{rational_terms, BchSeries};
