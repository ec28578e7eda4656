pub mod constants;
pub mod engine;
pub mod layering;

pub use constants::{constants_from, ConstantsProfile, Overrides, ProfileMode};
pub use engine::{
    fpt_pair_cut, fpt_powercut, fpt_powercut_with, kway_cut, kway_cut_with, EngineConfig,
    EngineStats, KwayOutcome, Separation,
};
pub use layering::{build_layering, prune_layer, Layering, LayeringOutcome};
