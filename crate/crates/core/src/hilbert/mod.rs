//! Multipartite registers, their two-copy doubling, and the swap-based
//! projector algebra on subsystem pairs.

mod dims;
pub mod eigen;
mod partial_trace;
mod projector;
mod sign;
mod state;
pub mod tensor;

pub use dims::{SubsystemDims, DEFAULT_TWO_COPY_CAP, DENSE_OPERATOR_CAP};
pub use partial_trace::partial_trace;
pub use projector::{
    apply_global_projector, apply_pair_projector, apply_sign_string_projector,
    dense_product_projector, global_swap_matrix, local_projector, swap_operator, TwoCopyOperator,
};
pub use sign::{Sign, SignString};
pub use state::{purity, DensityMatrix, PureState};
pub use tensor::{kron_matrices, kron_vectors, tensor_product, Factor, Product};
