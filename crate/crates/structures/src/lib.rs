//! Quantum and oriented quantum structures on coalgebras and algebras.
//!
//! The central objects are coalgebras carrying a bilinear form `b` together
//! with twist automorphisms (`T_d`, `T_u`) or an antipode-like map `S`, and
//! their algebra-side counterparts carrying an invertible 2-tensor `ρ`.
//! The crate provides:
//!
//! * axiom checkers that report pass/fail per axiom with explicit witnesses;
//! * ready-made structures (the 2×2 and n×n comatrix families, a one
//!   dimensional group-like family) and deliberately broken variants of the
//!   2×2 form for exercising the checkers;
//! * constructions: duals, standardization, doubling on both the coalgebra
//!   and algebra side, tensor products, opposites, and minimal quotients;
//! * a plain-text file format for user-supplied structures.

mod algebra;
mod checks;
mod constructions;
mod files;
mod oqc;
mod presets;
mod report;

pub use algebra::{
    check_oqa, check_qa, double_algebra, from_quantum_algebra, homfly_algebra, is_oqa_morphism,
    is_qa_morphism, jones_algebra, rho_inverse, tens_apply, tens_mul, tens_mul_op, tens_unit,
    Algebra, OrientedQuantumAlgebra, QuantumAlgebra, TensorElem,
};
pub use checks::{check_oqc, check_oqc_raw, check_qc, check_twist};
pub use constructions::{
    automorphism_group_closure_check, double_coalgebra, dual_oqc, from_quantum,
    is_oqc_morphism, is_qc_morphism, minimal_quotient, opposite_variants, standardize,
    tensor_oqc, OppositeVariants,
};
pub use files::{parse_structure_file, LoadedStructure};
pub use oqc::{
    convolution_inverse, form_eval, functional_inverse, OrientedQuantumCoalgebra,
    QuantumCoalgebra, TwistOqc,
};
pub use presets::{
    homfly_structure, homfly_table, jones_mutations, jones_quantum, jones_standard_structure,
    jones_structure, parse_preset, trivial_structure, HomflyTable, JonesMutation,
};
pub use report::{AxiomItem, AxiomReport, Witness, MAX_WITNESSES};

use thiserror::Error;

/// Errors from structure construction, solving and file parsing.
#[derive(Debug, Error)]
pub enum StructError {
    /// The bilinear form has no two-sided convolution inverse.
    #[error("the form has no two-sided convolution inverse")]
    NotConvInvertible,
    /// A functional has no convolution inverse.
    #[error("the functional {0} has no convolution inverse")]
    FunctionalNotInvertible(String),
    /// A construction precondition failed.
    #[error("construction constraint violated: {0}")]
    Constraint(String),
    /// Operand dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A structure file is malformed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// A preset name or argument is not recognized.
    #[error("unknown preset or argument: {0}")]
    Preset(String),
    /// Propagated coalgebra error.
    #[error(transparent)]
    Coalg(#[from] coalg::CoalgError),
    /// Propagated arithmetic error.
    #[error(transparent)]
    Num(#[from] exactnum::NumError),
}
