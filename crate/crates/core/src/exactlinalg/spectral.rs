//! Minimal polynomials, Jordan-Chevalley semisimple parts and splitting of
//! commuting semisimple families into common eigenspaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{ExactMatrix, RowSpace, Vector};
use crate::scalars::{Coeff, FieldElement, FieldRef, NumberField};
use crate::unipoly::{factor_over, FieldPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("family members {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("family member {index} is not semisimple (minimal polynomial {minpoly})")]
    NotSemisimple { index: usize, minpoly: String },
    #[error("family members must be square matrices of one common size")]
    Shape,
}

/// Monic annihilator of least degree, found as the first linear dependency
/// among `vec(I), vec(M), vec(M^2), ...`.
pub fn minimal_polynomial(m: &ExactMatrix) -> FieldPoly {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let n = m.rows();
    // echelon rows (pivot, reduced vector, combination of the powers)
    let mut rows: Vec<(usize, Vector, Vector)> = Vec::new();
    let mut power = ExactMatrix::identity(n);
    for k in 0..=n {
        let mut v = power.vec();
        let mut combo = vec![FieldElement::zero(); k + 1];
        combo[k] = FieldElement::one();
        for (p, row, c) in &rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[j] = v[j].sub(&f.mul(x));
                }
            }
            for (j, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    combo[j] = combo[j].sub(&f.mul(x));
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return FieldPoly::new(combo),
            Some(p) => {
                let inv = v[p].inv().unwrap();
                let v: Vector = v.iter().map(|x| x.mul(&inv)).collect();
                let combo: Vector = combo.iter().map(|x| x.mul(&inv)).collect();
                rows.push((p, v, combo));
            }
        }
        power = power.mul(m);
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

/// Semisimple part `S = s(M)` of the Jordan-Chevalley decomposition.
///
/// Newton's iteration `s <- s - p(s) / p'(s)` in `K[t]/(m)`, where `m` is the
/// minimal polynomial and `p` its squarefree part, converges to a root of `p`
/// congruent to `t` modulo the nilradical.
pub fn semisimple_part(m: &ExactMatrix) -> ExactMatrix {
    let mp = minimal_polynomial(m);
    let p = mp.squarefree_part().expect("minimal polynomial is nonzero");
    if p.degree() == mp.degree() {
        return m.clone();
    }
    let dp = p.derivative();
    let mut s = FieldPoly::monomial(FieldElement::one(), 1);
    loop {
        let ps = p.compose(&s).rem(&mp).unwrap();
        if ps.is_zero() {
            break;
        }
        let dps = dp.compose(&s).rem(&mp).unwrap();
        let (g, inv, _) = dps.ext_gcd(&mp);
        assert_eq!(g.degree(), Some(0), "p'(s) must be a unit modulo the minimal polynomial");
        s = s.sub(&ps.mul(&inv)).rem(&mp).unwrap();
    }
    m.eval_poly(&s)
}

/// Kernel of `M - lambda I`.
pub fn eigenspace(m: &ExactMatrix, lambda: &FieldElement) -> Vec<Vector> {
    m.sub(&ExactMatrix::scalar(m.rows(), lambda)).nullspace()
}

/// Matrix of `M` on the invariant subspace spanned by the columns `basis`.
pub fn restrict(m: &ExactMatrix, basis: &[Vector]) -> ExactMatrix {
    let n = m.rows();
    let b = ExactMatrix::from_columns(n, basis);
    // independent rows of B give an invertible square submatrix
    let (_, _, rows) = b.transpose().rref();
    let all: Vec<usize> = (0..basis.len()).collect();
    let bs_inv = b.submatrix(&rows, &all).inverse().expect("basis vectors are independent");
    let mb = m.mul(&b);
    bs_inv.mul(&mb.submatrix(&rows, &all))
}

/// Result of [`simultaneous_split`].
#[derive(Debug, Clone)]
pub struct Split {
    /// Bases (as column vectors) of the common invariant subspaces.
    pub blocks: Vec<Vec<Vector>>,
    /// `(block index, irreducible polynomial of degree > 1)` for every block
    /// that cannot be split further over the current field.
    pub certificates: Vec<(usize, FieldPoly)>,
}

/// Decompose the ambient space into the finest family-invariant subspaces
/// obtainable over the field of the entries.
pub fn simultaneous_split(family: &[ExactMatrix]) -> Result<Split, SpectralError> {
    let field = family.iter().find_map(ExactMatrix::field).unwrap_or_else(NumberField::rationals);
    simultaneous_split_over(family, &field)
}

/// [`simultaneous_split`] over an explicitly given field containing the entries.
pub fn simultaneous_split_over(family: &[ExactMatrix], field: &FieldRef) -> Result<Split, SpectralError> {
    let Some(first) = family.first() else {
        return Err(SpectralError::Shape);
    };
    let n = first.rows();
    if family.iter().any(|m| !m.is_square() || m.rows() != n) {
        return Err(SpectralError::Shape);
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !family[i].commutes_with(&family[j]) {
                return Err(SpectralError::NotCommuting(i, j));
            }
        }
    }
    for (i, m) in family.iter().enumerate() {
        let mp = minimal_polynomial(m);
        if !mp.is_squarefree().unwrap() {
            return Err(SpectralError::NotSemisimple { index: i, minpoly: mp.to_string() });
        }
    }
    let identity = ExactMatrix::identity(n);
    let mut blocks = vec![identity.columns()];
    for m in family {
        let mut next = Vec::new();
        for w in blocks {
            next.extend(split_by(field, m, &w).unwrap_or_else(|| vec![w]));
        }
        blocks = next;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut done = Vec::new();
    let mut certificates = Vec::new();
    let mut work = blocks;
    work.reverse();
    while let Some(w) = work.pop() {
        let restricted: Vec<ExactMatrix> = family.iter().map(|m| restrict(m, &w)).collect();
        let dim = algebra_dimension(&restricted);
        if dim == 1 {
            done.push(w);
            continue;
        }
        let t = primitive_element(&restricted, dim, &mut rng);
        let mp = minimal_polynomial(&t);
        let factors = factor_over(field, &mp).unwrap();
        if factors.len() == 1 {
            certificates.push((done.len(), mp));
            done.push(w);
            continue;
        }
        let wm = ExactMatrix::from_columns(n, &w);
        let mut pieces = Vec::new();
        for (q, _) in factors {
            let ker = t.eval_poly(&q).nullspace();
            pieces.push(ker.iter().map(|k| wm.mul_vec(k)).collect::<Vec<_>>());
        }
        for p in pieces.into_iter().rev() {
            work.push(p);
        }
    }
    Ok(Split { blocks: done, certificates })
}

/// Split `w` along the irreducible factors of the minimal polynomial of `m|_w`.
fn split_by(field: &FieldRef, m: &ExactMatrix, w: &[Vector]) -> Option<Vec<Vec<Vector>>> {
    let r = restrict(m, w);
    let mp = minimal_polynomial(&r);
    let factors = factor_over(field, &mp).unwrap();
    if factors.len() == 1 {
        return None;
    }
    let wm = ExactMatrix::from_columns(m.rows(), w);
    Some(
        factors
            .iter()
            .map(|(q, _)| r.eval_poly(q).nullspace().iter().map(|k| wm.mul_vec(k)).collect())
            .collect(),
    )
}

/// Dimension of the unital algebra generated by a commuting family.
fn algebra_dimension(gens: &[ExactMatrix]) -> usize {
    let k = gens[0].rows();
    let mut span = RowSpace::new(k * k);
    let id = ExactMatrix::identity(k);
    span.insert(&id.vec());
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.mul(g);
            if span.insert(&y.vec()) {
                queue.push(y);
            }
        }
    }
    span.rank()
}

/// An element generating the whole algebra, i.e. with minimal polynomial of
/// degree `dim`.
fn primitive_element(gens: &[ExactMatrix], dim: usize, rng: &mut ChaCha8Rng) -> ExactMatrix {
    for g in gens {
        if minimal_polynomial(g).degree() == Some(dim) {
            return g.clone();
        }
    }
    for _ in 0..1000 {
        let mut t = ExactMatrix::zeros(gens[0].rows(), gens[0].rows());
        for g in gens {
            let c = FieldElement::from_int(rng.gen_range(-20..=20));
            t = t.add(&g.scale(&c));
        }
        if minimal_polynomial(&t).degree() == Some(dim) {
            return t;
        }
    }
    panic!("no primitive element found among random combinations");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unipoly::UniPoly;

    fn fe(k: i64) -> FieldElement {
        FieldElement::from_int(k)
    }

    #[test]
    fn minimal_polynomial_examples() {
        let t_minus_1 = UniPoly::from_ints(&[-1, 1]).to_field();
        assert_eq!(minimal_polynomial(&ExactMatrix::identity(3)), t_minus_1);
        let j = ExactMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(minimal_polynomial(&j), UniPoly::from_ints(&[0, 0, 1]).to_field());
        let d = ExactMatrix::from_ints(&[&[1, 0], &[0, 2]]);
        assert_eq!(minimal_polynomial(&d), UniPoly::from_ints(&[2, -3, 1]).to_field());
    }

    #[test]
    fn semisimple_part_examples() {
        let u = ExactMatrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(semisimple_part(&u), ExactMatrix::identity(2));
        let s = ExactMatrix::from_ints(&[&[0, 1, 5], &[0, 0, 2], &[0, 0, 0]]);
        assert!(semisimple_part(&s).is_zero());
        let d = ExactMatrix::from_ints(&[&[3, 0], &[0, -1]]);
        assert_eq!(semisimple_part(&d), d);
        // block diag(J_2(2), 5)
        let m = ExactMatrix::from_ints(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 5]]);
        assert_eq!(semisimple_part(&m), ExactMatrix::from_ints(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 5]]));
    }

    #[test]
    fn eigenspace_examples() {
        assert_eq!(eigenspace(&ExactMatrix::identity(2), &fe(1)).len(), 2);
        let d = ExactMatrix::from_ints(&[&[1, 0], &[0, 2]]);
        assert!(eigenspace(&d, &fe(3)).is_empty());
        assert_eq!(eigenspace(&d, &fe(2)), vec![vec![fe(0), fe(1)]]);
    }

    #[test]
    fn split_examples() {
        let s = simultaneous_split(&[ExactMatrix::identity(3)]).unwrap();
        assert_eq!(s.blocks.len(), 1);
        assert!(s.certificates.is_empty());

        let d = ExactMatrix::from_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        let s = simultaneous_split(&[d]).unwrap();
        let mut dims: Vec<_> = s.blocks.iter().map(Vec::len).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);

        let x = ExactMatrix::from_ints(&[&[0, 1], &[-1, -4]]);
        let s = simultaneous_split(&[ExactMatrix::identity(2), x]).unwrap();
        assert_eq!(s.blocks.len(), 1);
        assert_eq!(s.certificates.len(), 1);
        assert_eq!(s.certificates[0].1, UniPoly::from_ints(&[1, 4, 1]).to_field());
    }

    #[test]
    fn split_needs_primitive_element() {
        // two copies of Q(sqrt 2): each generator alone has an irreducible minpoly
        let a = ExactMatrix::from_ints(&[&[0, 2, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 2], &[0, 0, 1, 0]]);
        let b = ExactMatrix::from_ints(&[&[0, 2, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -2], &[0, 0, -1, 0]]);
        let s = simultaneous_split(&[a, b]).unwrap();
        assert_eq!(s.blocks.len(), 2);
        assert_eq!(s.certificates.len(), 2);
    }

    #[test]
    fn split_rejects_bad_families() {
        let a = ExactMatrix::from_ints(&[&[1, 0], &[0, 2]]);
        let b = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(simultaneous_split(&[a, b]).unwrap_err(), SpectralError::NotCommuting(0, 1));
        let j = ExactMatrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert!(matches!(simultaneous_split(&[j]), Err(SpectralError::NotSemisimple { .. })));
    }
}
