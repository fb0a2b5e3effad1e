//! Communication matrices of `f(x ∧ y)` and `f(x ⊕ y)`: exact rank,
//! query-simulation protocols and rectangle covers.

mod cover;
mod exact;
mod matrix;
mod protocol;
mod rank;
mod report;

pub use self::cover::{
    maxterm_decomposition, minterm_cover, rectangle_cover, Cover, CoverCheck, MaxtermBlock,
    MaxtermDecomposition, MintermCover, NodeRecord, Provenance, Rectangle, Subcube,
};
pub use self::exact::{exact_cover_number, maximal_rectangles, min_rectangle_cover};
pub use self::matrix::{build_comm_matrix, CommMatrix, Composition};
pub use self::protocol::{
    check_tree_protocol, simulate_tree_protocol, Message, Party, ProtocolCheck, Transcript,
};
pub use self::rank::{exact_rank, integer_rank};
pub use self::report::{
    lovasz_bound_report, verify_rank_identities, CompositionBounds, LovaszReport, RankIdentities,
};
