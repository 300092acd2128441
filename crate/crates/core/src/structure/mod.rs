//! Generalized arithmetic progressions and the base-`H` flattening of `Z^l`.
//! Zonotope rounding lives here too.

mod embed;
mod gap;
mod lattice_solve;
mod zonotope;

pub use embed::{decode_base_h, embed_base_h, faithful_h_threshold};
pub use gap::{iterated_sumset, Gap};
pub use lattice_solve::solve_integer_combination;
pub use zonotope::{
    zonotope_round, RoundingMethod, ZonotopeInstance, ZonotopeRounding, DEFAULT_SEED,
    EXHAUSTIVE_LIMIT,
};
