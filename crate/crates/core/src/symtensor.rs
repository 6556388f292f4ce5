//! Symmetric coefficient tensors of forms.
//!
//! Only entries on sorted multi-indices are stored; `f(x) = sum a_{i1..id} x_i1 .. x_id`
//! over all (unsorted) index tuples.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactlinalg::{ExactMatrix, RowSpace, Vector};
use crate::multipoly::Form;
use crate::scalars::{Coeff, FieldElement, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected {expected} slice indices, got {got}")]
    SliceArity { expected: usize, got: usize },
    #[error("the zero form has no nondegenerate reduction")]
    ZeroForm,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymTensor {
    n: usize,
    d: usize,
    entries: BTreeMap<Vec<usize>, FieldElement>,
}

/// Number of distinct orderings of a multiset with the given multiplicities.
fn multinomial(exps: &[u32]) -> Rational {
    let total: u32 = exps.iter().sum();
    let mut acc = factorial(total);
    for &k in exps {
        acc /= factorial(k);
    }
    Rational::from_integer(acc)
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn exponent_of(idx: &[usize], n: usize) -> Vec<u32> {
    let mut e = vec![0u32; n];
    for &i in idx {
        e[i] += 1;
    }
    e
}

/// All sorted multi-indices of length `k` over `0..n`, lexicographic.
pub fn sorted_indices(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in lo..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

impl SymTensor {
    pub fn zero(n: usize, d: usize) -> Self {
        SymTensor { n, d, entries: BTreeMap::new() }
    }

    pub fn from_form(f: &Form) -> Self {
        let n = f.n();
        let mut entries = BTreeMap::new();
        for (e, c) in f.terms() {
            let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize)).collect();
            let m = FieldElement::from_rational(multinomial(e));
            entries.insert(idx, c.div(&m).unwrap());
        }
        SymTensor { n, d: f.degree(), entries }
    }

    pub fn to_form(&self) -> Form {
        Form::from_terms(
            self.n,
            self.d,
            self.entries.iter().map(|(idx, a)| {
                let e = exponent_of(idx, self.n);
                let m = FieldElement::from_rational(multinomial(&e));
                (e, a.mul(&m))
            }),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries on sorted indices (0-based).
    pub fn entries(&self) -> &BTreeMap<Vec<usize>, FieldElement> {
        &self.entries
    }

    /// Entry at any (not necessarily sorted) multi-index.
    pub fn get(&self, idx: &[usize]) -> FieldElement {
        let mut k = idx.to_vec();
        k.sort_unstable();
        self.entries.get(&k).cloned().unwrap_or_else(FieldElement::zero)
    }

    /// The `n x n` matrix `(a_{i j idx})` for a `(d-2)`-index `idx`.
    pub fn slice2(&self, idx: &[usize]) -> Result<ExactMatrix, TensorError> {
        if idx.len() + 2 != self.d {
            return Err(TensorError::SliceArity { expected: self.d.saturating_sub(2), got: idx.len() });
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.n) {
            return Err(TensorError::IndexOutOfRange { index: bad, n: self.n });
        }
        let mut m = ExactMatrix::zeros(self.n, self.n);
        let mut key = Vec::with_capacity(self.d);
        for i in 0..self.n {
            for j in i..self.n {
                key.clear();
                key.extend_from_slice(idx);
                key.push(i);
                key.push(j);
                let v = self.get(&key);
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                    m.set(j, i, v);
                }
            }
        }
        Ok(m)
    }

    /// Row `i` holds the slice `A_i = (a_{i, rest})` over sorted `(d-1)`-indices.
    fn slice_rows(&self) -> Vec<Vector> {
        let rest = sorted_indices(self.n, self.d - 1);
        (0..self.n)
            .map(|i| {
                rest.iter()
                    .map(|r| {
                        let mut k = r.clone();
                        k.push(i);
                        self.get(&k)
                    })
                    .collect()
            })
            .collect()
    }

    /// Rank of the slices `A_1 .. A_n`: the number of essential variables.
    pub fn essential_rank(&self) -> usize {
        if self.d == 0 {
            return 0;
        }
        let rows = self.slice_rows();
        let mut rs = RowSpace::new(rows.first().map_or(0, Vec::len));
        rows.iter().filter(|r| rs.insert(r)).count()
    }

    /// Change of variables `P` and tensor `A'` in `r = essential_rank` variables
    /// with `f(P y) = f'(y_1 .. y_r)`.
    ///
    /// The first `r` columns of `P` are the unit vectors of the lexicographically
    /// first independent slices; the rest span the directions along which `f`
    /// is constant.
    pub fn reduce_nondegenerate(&self) -> Result<(ExactMatrix, SymTensor), TensorError> {
        if self.is_zero() {
            return Err(TensorError::ZeroForm);
        }
        let rows = self.slice_rows();
        let mut rs = RowSpace::new(rows[0].len());
        let chosen: Vec<usize> = (0..self.n).filter(|&i| rs.insert(&rows[i])).collect();
        let r = chosen.len();
        if r == self.n {
            return Ok((ExactMatrix::identity(self.n), self.clone()));
        }
        let stacked = ExactMatrix::from_rows(rows);
        let kernel = stacked.left_nullspace();
        let mut cols: Vec<Vector> = chosen
            .iter()
            .map(|&i| {
                let mut e = vec![FieldElement::zero(); self.n];
                e[i] = FieldElement::one();
                e
            })
            .collect();
        cols.extend(kernel);
        let p = ExactMatrix::from_columns(self.n, &cols);
        let mut entries = BTreeMap::new();
        for idx in sorted_indices(r, self.d) {
            let orig: Vec<usize> = idx.iter().map(|&k| chosen[k]).collect();
            let v = self.get(&orig);
            if !v.is_zero() {
                entries.insert(idx, v);
            }
        }
        Ok((p, SymTensor { n: r, d: self.d, entries }))
    }

    /// Tensor of `f(P y)` by direct index contraction, one mode at a time.
    pub fn d_congruence(&self, p: &ExactMatrix) -> SymTensor {
        assert_eq!(p.rows(), self.n, "congruence matrix must have n rows");
        let m = p.cols();
        let mut dense = self.dense();
        let mut dims = vec![self.n; self.d];
        for mode in 0..self.d {
            dense = contract_mode(&dense, &dims, mode, |i, j| p.get(i, j).clone(), m);
            dims[mode] = m;
        }
        let mut entries = BTreeMap::new();
        for idx in sorted_indices(m, self.d) {
            let v = &dense[flat_index(&idx, &dims)];
            if !v.is_zero() {
                entries.insert(idx, v.clone());
            }
        }
        SymTensor { n: m, d: self.d, entries }
    }

    /// Same result as [`SymTensor::d_congruence`], obtained by substituting into the form.
    pub fn d_congruence_via_form(&self, p: &ExactMatrix) -> SymTensor {
        SymTensor::from_form(&self.to_form().substitute_unchecked(p))
    }

    /// Full multilinear contraction `Theta(v_1, .., v_d)`.
    pub fn theta_eval(&self, vs: &[Vector]) -> FieldElement {
        assert_eq!(vs.len(), self.d, "theta needs d vectors");
        let mut dense = self.dense();
        let mut dims = vec![self.n; self.d];
        for (mode, v) in vs.iter().enumerate() {
            assert_eq!(v.len(), self.n);
            dense = contract_mode(&dense, &dims, mode, |i, _| v[i].clone(), 1);
            dims[mode] = 1;
        }
        dense.into_iter().next().unwrap_or_else(FieldElement::zero)
    }

    fn dense(&self) -> Vec<FieldElement> {
        let dims = vec![self.n; self.d];
        let size = self.n.pow(self.d as u32);
        let mut out = vec![FieldElement::zero(); size];
        for (idx, v) in &self.entries {
            for perm in distinct_permutations(idx) {
                out[flat_index(&perm, &dims)] = v.clone();
            }
        }
        out
    }

    /// JSON list of `{"index": [..], "value": ".."}` with sorted 1-based indices.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|(idx, v)| {
                    json!({
                        "index": idx.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "value": v.to_string(),
                    })
                })
                .collect(),
        )
    }
}

fn flat_index(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

/// Contract axis `mode` of a dense row-major tensor with a matrix `c(i, j)`,
/// replacing that axis's size by `new_dim`.
fn contract_mode(
    t: &[FieldElement],
    dims: &[usize],
    mode: usize,
    c: impl Fn(usize, usize) -> FieldElement,
    new_dim: usize,
) -> Vec<FieldElement> {
    let outer: usize = dims[..mode].iter().product();
    let inner: usize = dims[mode + 1..].iter().product();
    let old = dims[mode];
    let coeffs: Vec<Vec<FieldElement>> = (0..old).map(|i| (0..new_dim).map(|j| c(i, j)).collect()).collect();
    let mut out = vec![FieldElement::zero(); outer * new_dim * inner];
    for o in 0..outer {
        for i in 0..old {
            for k in 0..inner {
                let x = &t[(o * old + i) * inner + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..new_dim {
                    let cij = &coeffs[i][j];
                    if cij.is_zero() {
                        continue;
                    }
                    let slot = &mut out[(o * new_dim + j) * inner + k];
                    *slot = slot.add(&x.mul(cij));
                }
            }
        }
    }
    out
}

fn distinct_permutations(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = sorted.to_vec();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}
