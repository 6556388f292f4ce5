//! Factorization of polynomials with coefficients in a simple number field.
//!
//! Trager's reduction: shift `p(t) -> p(t - s a)` until the norm down to Q is
//! squarefree, factor the norm over Q, and pull each rational factor back with a
//! gcd over the field. Norms are evaluated pointwise as determinants of
//! multiplication matrices and interpolated.

use super::{factor_q, FieldPoly, PolyError, UniPoly};
use crate::scalars::{Coeff, FieldElement, FieldRef, NumberField, Rational};

/// Factor into monic irreducibles over `field`, with multiplicities.
pub fn factor_over(field: &FieldRef, p: &FieldPoly) -> Result<Vec<(FieldPoly, usize)>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if field.is_rationals() {
        let q = p.to_rational().expect("rational coefficients over Q");
        return Ok(factor_q(&q)?.into_iter().map(|(f, m)| (f.to_field(), m)).collect());
    }
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition()? {
        for f in split_squarefree(field, &part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|(a, ma), (b, mb)| (a.degree(), a.to_string(), ma).cmp(&(b.degree(), b.to_string(), mb)));
    Ok(out)
}

/// Norm `N_{K/Q}(x)` as the determinant of multiplication by `x`.
pub(crate) fn element_norm(field: &NumberField, x: &FieldElement) -> Rational {
    let d = field.degree();
    let mut m: Vec<Vec<Rational>> = vec![Vec::new(); d];
    let zero = <Rational as Coeff>::zero();
    // columns are x * a^j
    let gen = match x {
        FieldElement::Rational(r) => {
            let mut acc = <Rational as Coeff>::one();
            for _ in 0..d {
                acc = acc.mul(r);
            }
            return acc;
        }
        FieldElement::Algebraic(f, _) => f.generator(),
    };
    let mut cur = x.clone();
    for col in 0..d {
        let coords = field.coordinates(&cur);
        for (row, c) in coords.into_iter().enumerate() {
            if col == 0 {
                m[row] = vec![zero.clone(); d];
            }
            m[row][col] = c;
        }
        cur = cur.mul(&gen);
    }
    rational_det(m)
}

fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = <Rational as Coeff>::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return <Rational as Coeff>::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = det.neg();
        }
        let p = m[col][col].clone();
        det = det.mul(&p);
        let pinv = p.inv().unwrap();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&pinv);
            for c in col..n {
                let v = m[col][c].mul(&f);
                m[r][c] = m[r][c].sub(&v);
            }
        }
    }
    det
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = coef[i].sub(&coef[i - 1]);
            let den = xs[i].sub(&xs[i - j]);
            coef[i] = num.mul(&den.inv().unwrap());
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        acc = acc.mul(&UniPoly::linear_root(&xs[i])).add(&UniPoly::constant(coef[i].clone()));
    }
    acc
}

/// `N(p)(t) = prod over embeddings`, a rational polynomial of degree `D * deg p`.
pub(crate) fn poly_norm(field: &NumberField, p: &FieldPoly) -> UniPoly {
    let deg = field.degree() * p.degree().unwrap_or(0);
    let xs: Vec<Rational> = (0..=deg as i64).map(Rational::from_i64).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| element_norm(field, &p.eval(&FieldElement::Rational(x.clone()))))
        .collect();
    interpolate(&xs, &ys)
}

fn split_squarefree(field: &FieldRef, p: &FieldPoly) -> Vec<FieldPoly> {
    let p = p.monic();
    if p.degree().unwrap_or(0) <= 1 {
        return vec![p];
    }
    let alpha = field.generator();
    for shift in (0i64..).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }) {
        let sa = alpha.mul(&FieldElement::from_int(shift));
        let shifted = p.compose(&FieldPoly::new(vec![sa.neg(), FieldElement::one()]));
        let norm = poly_norm(field, &shifted);
        if !norm.is_squarefree().unwrap_or(false) {
            continue;
        }
        let factors = factor_q(&norm).expect("nonzero norm");
        if factors.len() == 1 {
            return vec![p];
        }
        let back = FieldPoly::new(vec![sa, FieldElement::one()]);
        let mut out = Vec::new();
        for (nf, _) in factors {
            let g = shifted.gcd(&nf.to_field()).expect("nonzero");
            if g.degree().unwrap_or(0) > 0 {
                out.push(g.compose(&back).monic());
            }
        }
        return out;
    }
    unreachable!("some shift gives a squarefree norm")
}
