//! Finite-dimensional coalgebras over ℚ(q).
//!
//! A coalgebra is described by its structure constants: a coproduct
//! `Δ(e_i) = Σ α · e_j ⊗ e_k` stored sparsely per basis element, and a counit
//! `ε(e_i)`.  Elements and functionals are plain coordinate vectors in the
//! chosen basis.
//!
//! Besides the basic calculus (iterated coproducts, convolution products on
//! the dual, left/right hits), the crate provides comatrix and group-like
//! coalgebras, opposite/direct-sum/tensor constructions, quotients by
//! coideals, and the computation of the largest coideal contained in given
//! kernels and stable under given linear maps.

mod coideal;

pub use coideal::{max_stable_coideal, quotient_coalgebra, subspace_rref};

use std::collections::BTreeMap;

use exactnum::{Matrix, Scalar};
use thiserror::Error;

/// Errors arising from malformed coalgebra data.
#[derive(Debug, Error)]
pub enum CoalgError {
    /// The coproduct fails coassociativity on the given basis element.
    #[error("coproduct is not coassociative at basis element {basis}")]
    Coassociativity { basis: usize },
    /// A counit law fails on the given basis element.
    #[error("counit law fails at basis element {basis}")]
    Counit { basis: usize },
    /// Structure constants reference indices outside the carrier.
    #[error("index out of range: {0}")]
    IndexRange(String),
    /// A quotient was requested by a subspace that is not a coideal.
    #[error("subspace is not a coideal: {0}")]
    NotCoideal(String),
    /// Operand dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// A finite-dimensional coalgebra with a distinguished basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    dim: usize,
    /// `delta[i]` lists `(j, k, α)` with `Δ(e_i) = Σ α · e_j ⊗ e_k`.
    delta: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
    labels: Option<Vec<String>>,
}

impl Coalgebra {
    /// Assemble a coalgebra from structure constants, normalizing the sparse
    /// coproduct (merging duplicate leg pairs, dropping zeros).  The
    /// coalgebra laws are *not* checked here; call [`Coalgebra::validate`].
    pub fn new(
        dim: usize,
        delta: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, CoalgError> {
        if delta.len() != dim || counit.len() != dim {
            return Err(CoalgError::Dimension(format!(
                "carrier has dimension {dim} but got {} coproducts and {} counit values",
                delta.len(),
                counit.len()
            )));
        }
        if let Some(l) = &labels {
            if l.len() != dim {
                return Err(CoalgError::Dimension(format!(
                    "carrier has dimension {dim} but got {} labels",
                    l.len()
                )));
            }
        }
        let mut normalized = Vec::with_capacity(dim);
        for (i, terms) in delta.into_iter().enumerate() {
            let mut merged: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (j, k, a) in terms {
                if j >= dim || k >= dim {
                    return Err(CoalgError::IndexRange(format!(
                        "coproduct of basis element {i} references ({j}, {k})"
                    )));
                }
                let slot = merged.entry((j, k)).or_insert_with(Scalar::zero);
                *slot = &*slot + &a;
            }
            normalized.push(
                merged
                    .into_iter()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|((j, k), a)| (j, k, a))
                    .collect(),
            );
        }
        Ok(Coalgebra {
            dim,
            delta: normalized,
            counit,
            labels,
        })
    }

    /// The comatrix coalgebra on basis `e^i_j` (`1 ≤ i, j ≤ n`), with
    /// `Δ(e^i_j) = Σ_ℓ e^i_ℓ ⊗ e^ℓ_j` and `ε(e^i_j) = δ_ij`.  Basis element
    /// `(i, j)` (zero-based) sits at index `i·n + j`.
    pub fn comatrix(n: usize) -> Self {
        let dim = n * n;
        let mut delta = Vec::with_capacity(dim);
        let mut counit = Vec::with_capacity(dim);
        let mut labels = Vec::with_capacity(dim);
        for i in 0..n {
            for j in 0..n {
                delta.push(
                    (0..n)
                        .map(|l| (i * n + l, l * n + j, Scalar::one()))
                        .collect(),
                );
                counit.push(if i == j { Scalar::one() } else { Scalar::zero() });
                labels.push(format!("e^{}_{}", i + 1, j + 1));
            }
        }
        Coalgebra {
            dim,
            delta,
            counit,
            labels: Some(labels),
        }
    }

    /// The coalgebra spanned by `n` group-like elements:
    /// `Δ(g_i) = g_i ⊗ g_i`, `ε(g_i) = 1`.
    pub fn group_like(n: usize) -> Self {
        Coalgebra {
            dim: n,
            delta: (0..n).map(|i| vec![(i, i, Scalar::one())]).collect(),
            counit: vec![Scalar::one(); n],
            labels: Some((1..=n).map(|i| format!("g{}", i)).collect()),
        }
    }

    /// Carrier dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The sparse coproduct of basis element `i`.
    pub fn delta_of(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.delta[i]
    }

    /// The counit of basis element `i`.
    pub fn counit_of(&self, i: usize) -> &Scalar {
        &self.counit[i]
    }

    /// The counit as a functional (coordinate row).
    pub fn counit_functional(&self) -> Vec<Scalar> {
        self.counit.clone()
    }

    /// Display label of basis element `i`.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{}", i + 1),
        }
    }

    /// Look up a basis element by its label.
    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => None,
        }
    }

    /// Check coassociativity and both counit laws, reporting the first
    /// offending basis element.
    pub fn validate(&self) -> Result<(), CoalgError> {
        for i in 0..self.dim {
            // (Δ ⊗ 1)Δ(e_i) versus (1 ⊗ Δ)Δ(e_i).
            let mut left: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut right: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (j, k, a) in &self.delta[i] {
                for (p, r, b) in &self.delta[*j] {
                    let slot = left.entry((*p, *r, *k)).or_insert_with(Scalar::zero);
                    *slot = &*slot + &(a * b);
                }
                for (p, r, b) in &self.delta[*k] {
                    let slot = right.entry((*j, *p, *r)).or_insert_with(Scalar::zero);
                    *slot = &*slot + &(a * b);
                }
            }
            left.retain(|_, v| !v.is_zero());
            right.retain(|_, v| !v.is_zero());
            if left != right {
                return Err(CoalgError::Coassociativity { basis: i });
            }

            // (ε ⊗ 1)Δ(e_i) = e_i = (1 ⊗ ε)Δ(e_i).
            let mut from_left = vec![Scalar::zero(); self.dim];
            let mut from_right = vec![Scalar::zero(); self.dim];
            for (j, k, a) in &self.delta[i] {
                from_left[*k] = &from_left[*k] + &(a * &self.counit[*j]);
                from_right[*j] = &from_right[*j] + &(a * &self.counit[*k]);
            }
            for t in 0..self.dim {
                let expected = if t == i { Scalar::one() } else { Scalar::zero() };
                if from_left[t] != expected || from_right[t] != expected {
                    return Err(CoalgError::Counit { basis: i });
                }
            }
        }
        Ok(())
    }

    /// The coproduct of an arbitrary element, as a sparse 2-tensor.
    pub fn delta_apply(&self, coords: &[Scalar]) -> BTreeMap<(usize, usize), Scalar> {
        let mut out: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, k, a) in &self.delta[i] {
                let slot = out.entry((*j, *k)).or_insert_with(Scalar::zero);
                *slot = &*slot + &(c * a);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Evaluate the counit on an arbitrary element.
    pub fn counit_apply(&self, coords: &[Scalar]) -> Scalar {
        coords
            .iter()
            .zip(&self.counit)
            .map(|(c, e)| c * e)
            .sum()
    }

    /// The `legs`-fold iterated coproduct `Δ^(legs-1)` of an element,
    /// expanded as a sum of basis tensors.  `legs = 1` returns the element
    /// itself.
    pub fn iterated_coproduct(
        &self,
        coords: &[Scalar],
        legs: usize,
    ) -> BTreeMap<Vec<usize>, Scalar> {
        assert!(legs >= 1, "a coproduct expansion needs at least one leg");
        // Expand the rightmost tensorand one step at a time; coassociativity
        // makes the order immaterial.
        let mut states: Vec<(Vec<usize>, usize, Scalar)> = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Vec::new(), i, c.clone()))
            .collect();
        for _ in 0..legs - 1 {
            let mut next = Vec::new();
            for (prefix, tail, w) in states {
                for (j, k, a) in &self.delta[tail] {
                    let mut p = prefix.clone();
                    p.push(*j);
                    next.push((p, *k, &w * a));
                }
            }
            states = next;
        }
        let mut out: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (mut prefix, tail, w) in states {
            prefix.push(tail);
            let slot = out.entry(prefix).or_insert_with(Scalar::zero);
            *slot = &*slot + &w;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Convolution product of two functionals: `(f * g)(c) = Σ f(c₁) g(c₂)`.
    pub fn dual_product(&self, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        (0..self.dim)
            .map(|i| {
                self.delta[i]
                    .iter()
                    .map(|(j, k, a)| &(&f[*j] * &g[*k]) * a)
                    .sum()
            })
            .collect()
    }

    /// Convolution power `f^(*n)` of a functional; `n = 0` gives the counit.
    /// Negative powers require `f_inv`, the convolution inverse of `f`.
    pub fn dual_power(&self, f: &[Scalar], f_inv: Option<&[Scalar]>, n: i64) -> Vec<Scalar> {
        let base: Vec<Scalar> = if n < 0 {
            f_inv
                .expect("negative convolution power needs the inverse functional")
                .to_vec()
        } else {
            f.to_vec()
        };
        let mut acc = self.counit_functional();
        for _ in 0..n.unsigned_abs() {
            acc = self.dual_product(&acc, &base);
        }
        acc
    }

    /// Right hit `c ↼ f = Σ f(c₁) c₂`, a right action of the dual algebra.
    pub fn hit_right(&self, coords: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, k, a) in &self.delta[i] {
                out[*k] = &out[*k] + &(&(c * a) * &f[*j]);
            }
        }
        out
    }

    /// Left hit `f ⇀ c = Σ c₁ f(c₂)`, a left action of the dual algebra.
    pub fn hit_left(&self, f: &[Scalar], coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, k, a) in &self.delta[i] {
                out[*j] = &out[*j] + &(&(c * a) * &f[*k]);
            }
        }
        out
    }

    /// Whether an element has a symmetric coproduct.
    pub fn is_cocommutative_element(&self, coords: &[Scalar]) -> bool {
        let d = self.delta_apply(coords);
        d.iter().all(|((j, k), v)| {
            d.get(&(*k, *j)).map(|w| w == v).unwrap_or(false)
        })
    }

    /// Whether every element has a symmetric coproduct.
    pub fn is_cocommutative(&self) -> bool {
        (0..self.dim).all(|i| {
            let unit: Vec<Scalar> = (0..self.dim)
                .map(|t| if t == i { Scalar::one() } else { Scalar::zero() })
                .collect();
            self.is_cocommutative_element(&unit)
        })
    }

    /// The opposite coalgebra: legs of every coproduct swapped.
    pub fn opposite(&self) -> Coalgebra {
        Coalgebra {
            dim: self.dim,
            delta: self
                .delta
                .iter()
                .map(|terms| {
                    terms
                        .iter()
                        .map(|(j, k, a)| (*k, *j, a.clone()))
                        .collect()
                })
                .collect(),
            counit: self.counit.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Direct sum; the second summand's basis is shifted by `self.dim()`.
    pub fn direct_sum(&self, other: &Coalgebra, second_suffix: &str) -> Coalgebra {
        let dim = self.dim + other.dim;
        let mut delta = self.delta.clone();
        for terms in &other.delta {
            delta.push(
                terms
                    .iter()
                    .map(|(j, k, a)| (j + self.dim, k + self.dim, a.clone()))
                    .collect(),
            );
        }
        let mut counit = self.counit.clone();
        counit.extend(other.counit.iter().cloned());
        let labels = Some(
            (0..self.dim)
                .map(|i| self.label(i))
                .chain((0..other.dim).map(|i| format!("{}{}", other.label(i), second_suffix)))
                .collect(),
        );
        Coalgebra {
            dim,
            delta,
            counit,
            labels,
        }
    }

    /// Tensor product; basis element `(i, j)` sits at `i · other.dim() + j`.
    pub fn tensor(&self, other: &Coalgebra) -> Coalgebra {
        let d2 = other.dim;
        let dim = self.dim * d2;
        let mut delta = Vec::with_capacity(dim);
        let mut counit = Vec::with_capacity(dim);
        let mut labels = Vec::with_capacity(dim);
        for i in 0..self.dim {
            for j in 0..d2 {
                let mut terms = Vec::new();
                for (a1, b1, c1) in &self.delta[i] {
                    for (a2, b2, c2) in &other.delta[j] {
                        terms.push((a1 * d2 + a2, b1 * d2 + b2, c1 * c2));
                    }
                }
                delta.push(terms);
                counit.push(&self.counit[i] * &other.counit[j]);
                labels.push(format!("{}(x){}", self.label(i), other.label(j)));
            }
        }
        Coalgebra {
            dim,
            delta,
            counit,
            labels: Some(labels),
        }
    }

    /// Apply a linear map given as a matrix (columns = images of basis
    /// elements) to an element.
    pub fn apply_map(m: &Matrix, coords: &[Scalar]) -> Vec<Scalar> {
        m.mul_vec(coords)
    }

    /// The coordinate vector of basis element `i`.
    pub fn basis_element(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim)
            .map(|t| if t == i { Scalar::one() } else { Scalar::zero() })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    #[test]
    fn comatrix_is_a_coalgebra() {
        for n in 1..=3 {
            let c = Coalgebra::comatrix(n);
            c.validate().unwrap();
            assert_eq!(c.dim(), n * n);
        }
        let c = Coalgebra::comatrix(2);
        assert_eq!(c.label(1), "e^1_2");
        assert_eq!(c.index_of_label("e^2_1"), Some(2));
        assert!(!c.is_cocommutative());
        assert!(Coalgebra::group_like(3).is_cocommutative());
    }

    #[test]
    fn validation_catches_broken_counit() {
        let c = Coalgebra::new(
            1,
            vec![vec![(0, 0, Scalar::one())]],
            vec![s("q")],
            None,
        )
        .unwrap();
        assert!(matches!(c.validate(), Err(CoalgError::Counit { basis: 0 })));
    }

    #[test]
    fn iterated_coproduct_counts_paths() {
        let c = Coalgebra::comatrix(2);
        // Δ²(e^1_2) has legs (1,ℓ₁)(ℓ₁,ℓ₂)(ℓ₂,2): four paths.
        let e12 = c.basis_element(1);
        let expansion = c.iterated_coproduct(&e12, 3);
        assert_eq!(expansion.len(), 4);
        assert!(expansion.values().all(|v| v.is_one()));
        // One leg: the element itself.
        let single = c.iterated_coproduct(&e12, 1);
        assert_eq!(single.len(), 1);
        assert_eq!(single.get(&vec![1usize]), Some(&Scalar::one()));
    }

    #[test]
    fn dual_algebra_and_hits() {
        let n = 2;
        let c = Coalgebra::comatrix(n);
        // The dual of the comatrix coalgebra is the matrix algebra:
        // e_i^j * e_k^l = δ_jk e_i^l on dual bases.
        let f = c.basis_element(1); // dual basis at e^1_2
        let g = c.basis_element(3); // dual basis at e^2_2
        let fg = c.dual_product(&f, &g);
        assert_eq!(fg, c.basis_element(1));
        let gf = c.dual_product(&g, &f);
        assert!(gf.iter().all(Scalar::is_zero));

        // Counit is the unit of the dual algebra.
        let e = c.counit_functional();
        assert_eq!(c.dual_product(&e, &f), f);
        assert_eq!(c.dual_product(&f, &e), f);

        // Right hit by a diagonal functional scales by the left index.
        let mut diag = vec![Scalar::zero(); 4];
        diag[0] = s("q^-2"); // at e^1_1
        diag[3] = s("q^-6"); // at e^2_2
        let trace = vec![s("1"), s("0"), s("0"), s("1")];
        let hit = c.hit_right(&trace, &diag);
        assert_eq!(hit, vec![s("q^-2"), s("0"), s("0"), s("q^-6")]);

        // ↼ is a right action: (c ↼ f) ↼ g = c ↼ (f * g).
        let two_step = c.hit_right(&c.hit_right(&trace, &f), &g);
        let combined = c.hit_right(&trace, &c.dual_product(&f, &g));
        assert_eq!(two_step, combined);
    }

    #[test]
    fn opposite_and_sums() {
        let c = Coalgebra::comatrix(2);
        let op = c.opposite();
        op.validate().unwrap();
        assert_eq!(op.opposite(), c);

        let d = c.direct_sum(&Coalgebra::group_like(1), "'");
        d.validate().unwrap();
        assert_eq!(d.dim(), 5);
        assert_eq!(d.label(4), "g1'");

        let t = c.tensor(&Coalgebra::group_like(2));
        t.validate().unwrap();
        assert_eq!(t.dim(), 8);
    }
}
