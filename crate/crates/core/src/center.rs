//! The center `Z(f) = {X : X^T A^(idx) = A^(idx) X for every slice}` of a form.

use serde_json::{json, Value};
use thiserror::Error;

use crate::exactlinalg::modp::{self, ModpRowSpace};
use crate::exactlinalg::{coordinates_in, vec_perm, ExactMatrix, RowSpace, Vector};
use crate::scalars::{Coeff, FieldElement, FieldRef, NumberField};
use crate::symtensor::{sorted_indices, SymTensor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CenterError {
    #[error("form is degenerate: essential rank {rank} < {n} variables")]
    DegenerateInput { rank: usize, n: usize },
}

/// Matrix algebra `Z(f)` with its radical.
#[derive(Clone, Debug)]
pub struct CenterAlgebra {
    pub n: usize,
    pub field: FieldRef,
    pub basis: Vec<ExactMatrix>,
    pub dim: usize,
    pub radical_basis: Vec<ExactMatrix>,
    pub is_semisimple: bool,
}

impl CenterAlgebra {
    /// Coordinates of `x` in `basis`, if `x` lies in the center.
    pub fn coordinates(&self, x: &ExactMatrix) -> Option<Vector> {
        let cols: Vec<Vector> = self.basis.iter().map(ExactMatrix::vec).collect();
        coordinates_in(&cols, &x.vec())
    }

    pub fn contains(&self, x: &ExactMatrix) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn is_central(&self) -> bool {
        self.dim == 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.dim,
            "basis": self.basis.iter().map(ExactMatrix::to_strings).collect::<Vec<_>>(),
            "semisimple": self.is_semisimple,
            "radical_dimension": self.radical_basis.len(),
        })
    }
}

/// A linearly independent subset of the slices `A^(idx)` spanning all of them,
/// taken greedily in sorted-index order.
pub fn slice_span_basis(a: &SymTensor) -> Vec<ExactMatrix> {
    let n = a.n();
    if a.degree() < 2 {
        return Vec::new();
    }
    let mut span = RowSpace::new(n * n);
    let mut out = Vec::new();
    for idx in sorted_indices(n, a.degree() - 2) {
        let s = a.slice2(&idx).expect("index in range");
        if span.insert(&s.vec()) {
            out.push(s);
        }
    }
    out
}

/// Stacked blocks `I (x) H_k - (H_k (x) I) P_vec`, one per slice-span basis element.
///
/// The kernel is `{vec(X) : H_k X = X^T H_k for all k}`.
pub fn build_center_system(a: &SymTensor) -> ExactMatrix {
    let n = a.n();
    let hs = slice_span_basis(a);
    if hs.is_empty() {
        return ExactMatrix::zeros(n * n, n * n);
    }
    let id = ExactMatrix::identity(n);
    let perm = vec_perm(n);
    let mut rows = Vec::new();
    for h in &hs {
        let block = id.kron(h).sub(&h.kron(&id).mul(&perm));
        for i in 0..block.rows() {
            rows.push(block.row(i));
        }
    }
    ExactMatrix::from_rows(rows)
}

/// Row of the center system for entry `(i, j)` of `H X - X^T H`, in
/// column-major coordinates of `X`.
fn condition_row(h: &ExactMatrix, i: usize, j: usize) -> Vector {
    let n = h.rows();
    let mut row = vec![FieldElement::zero(); n * n];
    for k in 0..n {
        // (H X)_{ij} = sum_k H_ik X_kj
        let a = h.get(i, k);
        if !a.is_zero() {
            row[j * n + k] = row[j * n + k].add(a);
        }
        // (X^T H)_{ij} = sum_k X_ki H_kj
        let b = h.get(k, j);
        if !b.is_zero() {
            row[i * n + k] = row[i * n + k].sub(b);
        }
    }
    row
}

/// Kernel of the center system, computed without materializing it.
///
/// `H X - X^T H` is antisymmetric, so only entries above the diagonal give
/// conditions. The identity always lies in the kernel, so elimination stops
/// once the rank reaches `n^2 - 1`.
fn center_kernel(a: &SymTensor) -> Vec<ExactMatrix> {
    let n = a.n();
    let hs = slice_span_basis(a);
    modular_kernel(n, &hs).unwrap_or_else(|| exact_kernel(n, &hs))
}

fn exact_kernel(n: usize, hs: &[ExactMatrix]) -> Vec<ExactMatrix> {
    let mut rs = RowSpace::new(n * n);
    'outer: for h in hs {
        for i in 0..n {
            for j in i + 1..n {
                rs.insert(&condition_row(h, i, j));
                if rs.rank() + 1 == n * n {
                    break 'outer;
                }
            }
        }
    }
    rs.nullspace().iter().map(|v| ExactMatrix::unvec(n, v)).collect()
}

/// Multi-modular kernel of the rows that are independent modulo a prime.
///
/// Those rows cut out a space containing the center, of dimension at most
/// their nullity modulo the prime. A candidate basis of that size is accepted
/// only if every vector passes the full set of conditions.
fn modular_kernel(n: usize, hs: &[ExactMatrix]) -> Option<Vec<ExactMatrix>> {
    let mut mp = ModpRowSpace::new(modp::P0);
    let mut rows = Vec::new();
    'outer: for h in hs {
        for i in 0..n {
            for j in i + 1..n {
                let row = condition_row(h, i, j);
                if mp.insert(modp::reduce_vector(&row, modp::P0)?) {
                    rows.push(row);
                    if mp.rank() + 1 == n * n {
                        break 'outer;
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        return None;
    }
    let holds = |v: &Vec<FieldElement>| {
        let x = ExactMatrix::unvec(n, v);
        let xt = x.transpose();
        hs.iter().all(|h| xt.mul(h) == h.mul(&x))
    };
    let basis = modp::rational_kernel(&rows, n * n, 400, |b| b.iter().all(holds))?;
    Some(basis.iter().map(|v| ExactMatrix::unvec(n, v)).collect())
}

/// Center of a nondegenerate form given by its tensor.
pub fn center_basis(a: &SymTensor) -> Result<CenterAlgebra, CenterError> {
    let rank = a.essential_rank();
    if rank < a.n() {
        return Err(CenterError::DegenerateInput { rank, n: a.n() });
    }
    let basis = center_kernel(a);
    let field = a
        .entries()
        .values()
        .find_map(|c| c.field().cloned())
        .unwrap_or_else(NumberField::rationals);
    let dim = basis.len();
    let radical_basis = trace_form_radical(&basis);
    Ok(CenterAlgebra {
        n: a.n(),
        field,
        is_semisimple: radical_basis.is_empty(),
        basis,
        dim,
        radical_basis,
    })
}

/// Kernel of the trace form `(X, Y) -> tr(XY)` on the span of `basis`.
///
/// For a commutative matrix algebra in characteristic 0 this is the nilradical.
pub fn trace_form_radical(basis: &[ExactMatrix]) -> Vec<ExactMatrix> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let mut g = ExactMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let t = basis[i].mul(&basis[j]).trace();
            g.set(i, j, t.clone());
            g.set(j, i, t);
        }
    }
    let n = basis[0].rows();
    g.nullspace()
        .into_iter()
        .map(|v| {
            v.iter()
                .zip(basis)
                .fold(ExactMatrix::zeros(n, n), |acc, (c, b)| if c.is_zero() { acc } else { acc.add(&b.scale(c)) })
        })
        .collect()
}

pub fn is_central(a: &SymTensor) -> Result<bool, CenterError> {
    Ok(center_basis(a)?.dim == 1)
}

/// Whether `x` satisfies `x^T A^(idx) = A^(idx) x` for every `(d-2)`-index,
/// returning the first failing index otherwise.
pub fn check_all_slices(a: &SymTensor, x: &ExactMatrix) -> Result<(), Vec<usize>> {
    for idx in sorted_indices(a.n(), a.degree().saturating_sub(2)) {
        let s = a.slice2(&idx).expect("index in range");
        if x.transpose().mul(&s) != s.mul(x) {
            return Err(idx);
        }
    }
    Ok(())
}
