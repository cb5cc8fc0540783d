//! The forcing family `X_k` and adversaries that exploit it.

mod adversary;
mod xk;

pub use adversary::{adversary_force, crown_graph, crown_presentation, crown_shuffled, forest_adversary, ForcedGame};
pub use xk::{build_xk, embed_copies, verify_embedding, xk_size, CopyImage, EmbeddingPlan, RootedBipartiteGraph};
