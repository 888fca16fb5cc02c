//! Instance generators from Wang tile problems to realization problems, and
//! witness builders that check the construction on concrete tilings.

pub mod colored;
pub mod stages;
pub mod tiles;

pub use colored::{family_size, DiColored, Group, VertexColored};
pub use stages::{
    build_stage1, build_stage2, build_stage3, realize_stage1, realize_stage2, realize_stage3, tiling_to_realization, translate,
    uncolor, write_family, Freeness, Report, Stage1, Stage1Witness, Stage2, Stage2Witness, Stage3, Stage3Witness,
};
pub use tiles::{parse_tiles, search_periodic_tiling, write_tiles, write_tiling, Patch, PeriodicTiling, WangTile, WangTileSet};
