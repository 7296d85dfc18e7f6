//! Quiver mutation, framed quivers and reddening sequences, for finite
//! quivers and for towers of embedded finite quivers.

pub mod error;
pub mod families;
pub mod interface;
pub mod framed;
pub mod quiver;
pub mod search;
pub mod sequence;
pub mod tower;
pub mod triangular;
pub mod vertex;

pub use error::QuiverError;
pub use framed::{coframe, frame, vertex_status, FramedQuiver};
pub use quiver::{quivers_equal, Quiver, QuiverBuilder, VertexStatus};
pub use search::{find_reddening, search_reddening, SearchOutcome, SearchReport};
pub use sequence::{
    apply_sequence, check_sequence, check_sequence_traced, compose_triangular,
    sign_coherence_violations, Mode, MutationSequence, SequenceVerdict, VerdictKind,
};
pub use triangular::{classify_triangular, triangular_extend, CutKind, Direction};
pub use vertex::VertexId;
pub use tower::{
    build_scheme, decompose_triangular, mutate_tower, verify_scheme, verify_tower, Depth,
    LevelSource, MutatedTower, ReddeningScheme, SchemeCheck, Tower, TowerCheck, TowerError,
    TriangularDecomposition,
};
