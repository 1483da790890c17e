//! The canonical bilinear form of a Coxeter graph: ⟨α_s, α_t⟩ = −2cos(π/m_{s,t}).

use std::sync::Arc;

use crate::graph::CoxeterGraph;
use crate::scalar::{form_value, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("vector length {got} does not match the {expected} graph vertices")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Gram matrix of the canonical form on the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormMatrix {
    graph: Arc<CoxeterGraph>,
    entries: Vec<Scalar>,
}

impl FormMatrix {
    pub fn new(graph: Arc<CoxeterGraph>) -> Result<FormMatrix, FormError> {
        let n = graph.n();
        let mut entries = vec![Scalar::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Scalar::from_integer(2);
            for j in (i + 1)..n {
                let v = form_value(graph.label(graph.vertex_at(i), graph.vertex_at(j)))?;
                entries[i * n + j] = v.clone();
                entries[j * n + i] = v;
            }
        }
        Ok(FormMatrix { graph, entries })
    }

    pub fn graph(&self) -> &Arc<CoxeterGraph> {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.graph.n() + j]
    }

    /// xᵀ·G·y, exactly.
    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar, FormError> {
        let n = self.graph.n();
        for v in [x, y] {
            if v.len() != n {
                return Err(FormError::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        let mut acc = Scalar::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let g = self.at(i, j);
                if g.is_zero() {
                    continue;
                }
                acc += &(&(&x[i] * g) * &y[j]);
            }
        }
        Ok(acc)
    }

    /// ⟨α_i, x⟩ against the i-th simple root, the inner loop of a reflection.
    pub fn pair_simple(&self, i: usize, x: &[Scalar]) -> Result<Scalar, FormError> {
        let n = self.graph.n();
        if x.len() != n {
            return Err(FormError::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let mut acc = Scalar::zero();
        for j in 0..n {
            if !x[j].is_zero() {
                let g = self.at(i, j);
                if !g.is_zero() {
                    acc += &(g * &x[j]);
                }
            }
        }
        Ok(acc)
    }
}
