//! Combinatorics of expanded degenerations of a degenerating family of
//! surfaces `xyz = t`: base tuples over a valuation ring, the tropical
//! triangle of each expanded fibre, point configurations on it, torus
//! stability via Hilbert–Mumford weights, and flat limits.

pub mod base;
pub mod complex;
pub mod configuration;
pub mod enumerate;
pub mod error;
pub mod limits;
pub mod weights;

pub use base::{
    equivalent, make_base_tuple, normal_form, standard_embed, BasePoint, BaseTuple, ClosedEntry,
    ClosedPoint, Height, NormalForm, TauMove, UnitProduct, UnitValue, VanishingPattern,
};
pub use complex::{
    build_fibre, complex_counts, locate, refines, tropicalize_point, DcVertex, DualComplex,
    ExpandedFibre, Location, SurfaceKind, TropPosition, VertexKind,
};
pub use configuration::{
    is_admissible, is_lw_stable, is_sws_stable, is_ws_stable, level_occupied, normalize_pair,
    place, place_on_normal_form, stability_report, stabilizer_rank, unoccupied_levels,
    DriftCoordinate, PointConfiguration, StabilityReport, SupportPoint,
};
pub use error::{Error, Result};
pub use limits::{
    associated_pair, extend_special, flat_limit, unique_stable_subdivision_oracle, LimitReport,
    OracleLimits,
};
pub use weights::{
    admissible_1ps, admissible_sign_vectors, bounded_weight, combinatorial_weight,
    constructive_linearization, default_l, exists_stabilizing_linearization, flow_limit,
    hm_invariant, is_git_stable, level_contributions, weight_table, Family, LevelLift,
    Linearization, LocalMonomialScheme, Monomial, MonomialFactor, OneParamSubgroup, Side,
    WeightRow,
};
