//! Finite groupoids, groupoid presentations and pushouts, fundamental
//! groupoids of 2-complexes, crossed modules, and double groupoids with
//! connections, all checked by exhaustive enumeration at desk scale.

pub mod dblgpd;
pub mod group;
pub mod groupoid;
pub mod guard;
pub mod presentation;
pub mod rewriting;
pub mod vankampen;
pub mod word;
pub mod xmod;

pub use dblgpd::{
    commutative_cube_check, cube_compose_check, eckmann_hilton_check, row_uniqueness, Axis, CommSquare, Cube,
    Direction, DoubleGroupoidXM, EhInstance, LabeledSquare,
};
pub use group::{Elem, FiniteGroup, GroupError};
pub use groupoid::{enumerate_morphisms, Arrow, FiniteGroupoid, GroupoidError, GroupoidMorphism, Obj};
pub use guard::{GuardExceeded, SizeGuard};
pub use presentation::{
    default_battery, enumerate_pres_morphisms, pushout, verify_pushout_universal, vertex_group_presentation,
    words_equal, GroupoidPresentation, PresMorphism, PresentationError, Pushout, WordEquality,
};
pub use rewriting::{CompletionLimits, RewriteSystem};
pub use vankampen::{
    check_cover, fundamental_groupoid, pi1, vkt_square, Complex2, Subcomplex, SubcomplexCover, VanKampenError,
};
pub use word::{Edge, Letter, Quiver, Word, WordError};
pub use xmod::{
    automorphism_xmod, check_axioms, find_isomorphism, free_xmod_presentation, from_normal_subgroup,
    induced_xmod_presentation, kernel_central_check, morphisms_from_free, CrossedModule, XModError, XModMorphism,
};
