//! Builders for the family algebras, the three-generator templates and
//! blends of elementary blocks.

mod blend;
mod family;
mod random;
mod three;

pub use blend::{
    blend, check_blocks, count_interleavings, elementary_blocks, enumerate_interleavings, find_blend_plan,
    for_each_interleaving, BlendPlan, BlockInfo, BlockKind, BuildingBlock, Label,
};
pub use family::{build_family, build_family_unchecked, Family, FamilyParams, FamilySpec, SetLayout};
pub(crate) use family::{coupled_components, gap_of};
pub use random::random_spec;
pub use three::{
    build_three, build_three_unchecked, random_three, small_rational, Slot, ThreeParams, ThreeTemplate, ThreeType,
};
