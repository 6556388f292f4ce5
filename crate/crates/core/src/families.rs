//! Structured and random families of forms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactlinalg::ExactMatrix;
use crate::multipoly::{monomials, parse_form, Form};
use crate::scalars::{Coeff, FieldElement};
use crate::symtensor::SymTensor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?} (known: {known})", known = FAMILIES.join(", "))]
    UnknownFamily(String),
    #[error("invalid parameters for {family}: {reason}")]
    BadParameters { family: String, reason: String },
}

pub const FAMILIES: &[&str] = &["cyclic", "keet-saxena", "detlike", "cayley", "random", "lds"];

fn fe(k: i64) -> FieldElement {
    FieldElement::from_int(k)
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let k = rng.gen_range(-bound..=bound);
        if k != 0 {
            return k;
        }
    }
}

/// `x1 x2^(d-1) + x2 x3^(d-1) + .. + xn x1^(d-1)`.
pub fn cyclic(n: usize, d: usize) -> Form {
    let mut f = Form::zero(n, d);
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] += 1;
        e[(i + 1) % n] += d as u32 - 1;
        f.add_term(e, &FieldElement::one());
    }
    f
}

/// `sum_i a_ii X_i^2 + sum_{i<j} 2 a_ij X_i X_j`; variables are the `a_ij`
/// (`i <= j`, lexicographic) followed by `X_1 .. X_n`.
pub fn keet_saxena(n: usize) -> Form {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let total = pairs.len() + n;
    let mut f = Form::zero(total, 3);
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let mut e = vec![0u32; total];
        e[k] = 1;
        e[pairs.len() + i] += 1;
        e[pairs.len() + j] += 1;
        f.add_term(e, &fe(if i == j { 1 } else { 2 }));
    }
    f
}

/// `sum_sigma c_sigma x_{1 sigma(1)} .. x_{n sigma(n)}` with random nonzero
/// integer `c_sigma`; `x_ij` is variable `(i-1) n + j`.
pub fn detlike(n: usize, seed: u64) -> Form {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = Form::zero(n * n, n);
    for perm in permutations(n) {
        let mut e = vec![0u32; n * n];
        for (i, &j) in perm.iter().enumerate() {
            e[i * n + j] = 1;
        }
        f.add_term(e, &fe(nonzero(&mut rng, 9)));
    }
    f
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub const CAYLEY: &str = "x1^2*x8^2 + x2^2*x7^2 + x3^2*x6^2 + x4^2*x5^2 \
    - 2*x1*x2*x7*x8 - 2*x1*x3*x6*x8 - 2*x1*x4*x5*x8 - 2*x2*x3*x6*x7 - 2*x2*x4*x5*x7 - 2*x3*x4*x5*x6 \
    + 4*x1*x4*x6*x7 + 4*x2*x3*x5*x8";

/// Cayley's hyperdeterminant of a `2 x 2 x 2` array.
pub fn cayley() -> Form {
    parse_form(CAYLEY, 8).expect("built-in form parses")
}

/// Sparse form with `terms` random monomials and small nonzero integer coefficients.
pub fn random_sparse(n: usize, d: usize, terms: usize, seed: u64) -> Form {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_sparse_with(&mut rng, n, d, terms)
}

pub fn random_sparse_with(rng: &mut ChaCha8Rng, n: usize, d: usize, terms: usize) -> Form {
    let all = monomials(n, d);
    let picked: Vec<_> = all.choose_multiple(rng, terms.min(all.len())).cloned().collect();
    Form::from_terms(n, d, picked.into_iter().map(|e| (e, fe(nonzero(rng, 5)))))
}

/// Dense random form whose tensor has full essential rank.
pub fn random_nondegenerate(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Form {
    loop {
        let f = random_sparse_with(rng, n, d, monomials(n, d).len());
        if SymTensor::from_form(&f).essential_rank() == n {
            return f;
        }
    }
}

/// Random invertible integer matrix.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> ExactMatrix {
    loop {
        let rows: Vec<Vec<FieldElement>> =
            (0..n).map(|_| (0..n).map(|_| fe(rng.gen_range(-bound..=bound))).collect()).collect();
        let m = ExactMatrix::from_rows(rows);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// `f_1 + f_2 + ..` on consecutive disjoint variable blocks.
pub fn orthogonal_sum(parts: &[Form]) -> Form {
    let total: usize = parts.iter().map(Form::n).sum();
    let d = parts[0].degree();
    let mut out = Form::zero(total, d);
    let mut offset = 0;
    for p in parts {
        let map: Vec<usize> = (offset..offset + p.n()).collect();
        out = out.add(&p.embed(total, &map));
        offset += p.n();
    }
    out
}

/// `sum_{i<=l} x_i dh/dx_{l+i}(x_{l+1..2l}) + g(x_{l+1..n})` for `h` in `l`
/// variables and `g` in `n - l` variables.
pub fn lds_form(h: &Form, g: &Form) -> Form {
    let l = h.n();
    let n = l + g.n();
    assert!(2 * l <= n, "h needs l <= n - l");
    let mut f = g.embed(n, &(l..n).collect::<Vec<_>>());
    let shift: Vec<usize> = (l..2 * l).collect();
    for i in 0..l {
        let dh = h.partial(i).unwrap().embed(n, &shift);
        f = f.add(&Form::variable(n, i).mul(&dh));
    }
    f
}

/// Random nondegenerate LDS form in `n` variables of degree `d`, with `l = 1`
/// or `2` where possible.
pub fn random_lds(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Form {
    loop {
        let l = if n >= 4 && rng.gen_bool(0.5) { 2 } else { 1 };
        let h = random_sparse_with(rng, l, d, 3);
        let g = random_sparse_with(rng, n - l, d, 2 * n);
        if h.is_zero() {
            continue;
        }
        let f = lds_form(&h, &g);
        if SymTensor::from_form(&f).essential_rank() == n {
            return f;
        }
    }
}

/// Generate a family member by name, as the command line exposes it.
pub fn generate(family: &str, n: Option<usize>, d: Option<usize>, seed: u64) -> Result<Form, FamilyError> {
    let bad = |reason: &str| FamilyError::BadParameters { family: family.to_string(), reason: reason.to_string() };
    match family {
        "cyclic" => {
            let (n, d) = (n.ok_or_else(|| bad("--n is required"))?, d.unwrap_or(3));
            if n < 2 || d < 3 {
                return Err(bad("need n >= 2 and d >= 3"));
            }
            Ok(cyclic(n, d))
        }
        "keet-saxena" => {
            let n = n.ok_or_else(|| bad("--n is required"))?;
            if n < 1 {
                return Err(bad("need n >= 1"));
            }
            Ok(keet_saxena(n))
        }
        "detlike" => {
            let n = n.ok_or_else(|| bad("--n is required"))?;
            if n < 3 {
                return Err(bad("need n >= 3"));
            }
            Ok(detlike(n, seed))
        }
        "cayley" => Ok(cayley()),
        "random" => {
            let (n, d) = (n.ok_or_else(|| bad("--n is required"))?, d.unwrap_or(3));
            if n < 1 || d < 3 {
                return Err(bad("need n >= 1 and d >= 3"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(random_nondegenerate(&mut rng, n, d))
        }
        "lds" => {
            let (n, d) = (n.ok_or_else(|| bad("--n is required"))?, d.unwrap_or(3));
            if n < 2 || d < 3 {
                return Err(bad("need n >= 2 and d >= 3"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(random_lds(&mut rng, n, d))
        }
        other => Err(FamilyError::UnknownFamily(other.to_string())),
    }
}
