//! Bounded chain complexes over ℚ and the operations on them.

mod complex;
mod homology;
mod json;
mod limits;
mod ops;

pub use complex::{validate_input_label, ChainComplex, ChainMap, GradedDims, DUAL, SEP};
pub use homology::{
    block_rank, homology, is_acyclic, is_acyclic_fibration, is_cofibration, is_fibration, is_quasi_iso, mapping_cone,
    quasi_iso_report, DegreeHomology, Homology, InducedMap, QuasiIsoReport,
};
pub use json::{labelled_matrix, ComplexJson, MapJson};
pub use limits::{equalizer, pullback, Pullback, SubComplex};
pub use ops::{
    diagonal, direct_sum, direct_sum_many, double_dual_iso, dual, dual_tensor_to_hom, evaluation_pairing, hom_complex,
    hom_element_matrix, hom_post, hom_pre, koszul, kron, kron_power, matrix_to_hom_element, pair_maps,
    summand_inclusion, summand_projection, tensor, tensor_maps, tensor_power, tensor_power_map,
};
