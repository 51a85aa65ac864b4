//! Regular-isotopy invariants of oriented diagrams, evaluated over an
//! oriented quantum coalgebra.
//!
//! Every crossing of a diagram contributes one bilinear-form factor —
//! `b` or its convolution inverse, decorated with powers of the twist
//! maps determined by the rotation counts of the two strands — and the
//! invariant is the full contraction of those factors over an iterated
//! coproduct of the strand elements.  [`inv_tangle`] evaluates an open
//! 1–1 tangle to a functional on the carrier, [`inv_knot`] and
//! [`inv_link`] close the picture off against a cocommutative element
//! twisted by the distinguished functional, and [`oracle_contract`]
//! recomputes the same value by brute-force slice contraction so the
//! optimized engine has something to disagree with.

mod contract;
mod engine;
mod report;
pub mod rules;

use coalg::Coalgebra;
use diagrams::DiagError;
use exactnum::{NumError, Scalar};
use thiserror::Error;

pub use contract::{contract_tangle, oracle_contract};
pub use engine::{
    cocommutative_fast, crossing_factors, inv_knot, inv_link, inv_link_with_starts, inv_tangle,
    Factor, Slot,
};
pub use report::{diagram_hash, InvariantRecord};
pub use rules::{rule_for, CrossingRule, FormKind, RULES};

/// Errors from invariant evaluation.
#[derive(Debug, Error)]
pub enum InvError {
    #[error(transparent)]
    Diagram(#[from] DiagError),
    #[error(transparent)]
    Num(#[from] NumError),
    /// The structure or element violates a documented precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The evaluator does not cover this structure shape.
    #[error("unsupported structure: {0}")]
    Unsupported(String),
    #[error("expected a 1-1 tangle diagram")]
    NotTangle,
    #[error("expected a link diagram")]
    NotLink,
    /// A knot evaluator was handed a link with several components.
    #[error("diagram has {0} components; expected exactly one")]
    Components(usize),
    #[error("element has {found} coordinates; carrier dimension is {dim}")]
    Dimension { found: usize, dim: usize },
    /// Traversal data was internally inconsistent; indicates a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Side length `n` if the carrier is the standard comatrix coalgebra on
/// `n^2` basis elements: `delta(e[i,j]) = sum_a e[i,a] (x) e[a,j]` with
/// counit `delta[i,j]`, bases listed row-major.
pub fn comatrix_size(c: &Coalgebra) -> Option<usize> {
    let dim = c.dim();
    let n = (1..=dim).find(|k| k * k == dim)?;
    for i in 0..n {
        for j in 0..n {
            let idx = i * n + j;
            let delta = c.delta_of(idx);
            if delta.len() != n {
                return None;
            }
            for (a, &(x, y, ref coeff)) in delta.iter().enumerate() {
                if x != i * n + a || y != a * n + j || !coeff.is_one() {
                    return None;
                }
            }
            let eps = c.counit_of(idx);
            if (i == j && !eps.is_one()) || (i != j && !eps.is_zero()) {
                return None;
            }
        }
    }
    Some(n)
}

/// Canonical trace element of the carrier, when one exists: the sum of
/// the diagonal basis elements for a comatrix coalgebra, or the single
/// group-like of a one-dimensional carrier.
pub fn trace_element(c: &Coalgebra) -> Option<Vec<Scalar>> {
    if c.dim() == 1 {
        return Some(vec![Scalar::one()]);
    }
    let n = comatrix_size(c)?;
    let mut coords = vec![Scalar::zero(); c.dim()];
    for i in 0..n {
        coords[i * n + i] = Scalar::one();
    }
    Some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comatrix_layout_is_recognized() {
        assert_eq!(comatrix_size(&Coalgebra::comatrix(2)), Some(2));
        assert_eq!(comatrix_size(&Coalgebra::comatrix(3)), Some(3));
        assert_eq!(comatrix_size(&Coalgebra::group_like(4)), None);
    }

    #[test]
    fn trace_element_matches_the_diagonal() {
        let c = Coalgebra::comatrix(2);
        let tr = trace_element(&c).unwrap();
        assert_eq!(
            tr,
            vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()]
        );
        assert!(c.is_cocommutative_element(&tr));
        let g = Coalgebra::group_like(1);
        assert_eq!(trace_element(&g).unwrap(), vec![Scalar::one()]);
    }
}
