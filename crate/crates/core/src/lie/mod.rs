pub mod algebra;
pub mod bound;
pub mod fq;
pub mod io;
pub mod submodule;

pub use algebra::ZLieAlgebra;
pub use bound::{bad_prime_bound, BadPrimeBound};
pub use fq::{reduce_mod, FqLieAlgebra};
pub use io::{algebra_from_json, algebra_to_json, load_algebra};
pub use submodule::Submodule;
