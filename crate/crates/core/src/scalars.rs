//! Exact scalars: rationals and elements of a simple number field `Q(a) = Q[t]/(m)`.
//!
//! A [`FieldElement`] is either a plain rational or an algebraic element that
//! carries a handle to its [`NumberField`]. Rational values are always stored in
//! the `Rational` variant, so equal elements have identical representations and
//! rationals combine freely with elements of any field.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use once_cell::sync::Lazy;
use thiserror::Error;

use crate::unipoly::{factor_q, UniPoly};

pub type Rational = BigRational;

/// Shared handle to a number field descriptor.
pub type FieldRef = Arc<NumberField>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("minimal polynomial must be monic, got {0}")]
    NotMonic(String),
    #[error("minimal polynomial must have degree >= 1")]
    DegreeTooLow,
    #[error("minimal polynomial {0} is not squarefree")]
    NotSquarefree(String),
    #[error("minimal polynomial {poly} is reducible over Q; nontrivial factor {factor}")]
    NotIrreducible { poly: String, factor: String },
    #[error("invalid rational literal {0:?}")]
    BadLiteral(String),
}

/// Minimal arithmetic interface shared by the coefficient domains.
///
/// Implemented for [`Rational`] and [`FieldElement`]; the polynomial and
/// matrix code is written against it.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(k: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Sign and magnitude for printing inside sums: `(negative, text)`.
    /// Compound values come back parenthesized.
    fn signed_parts(&self) -> (bool, String);
}

impl Coeff for Rational {
    fn zero() -> Self {
        <Rational as num_traits::Zero>::zero()
    }
    fn one() -> Self {
        <Rational as num_traits::One>::one()
    }
    fn from_i64(k: i64) -> Self {
        Rational::from_integer(BigInt::from(k))
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn signed_parts(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}

/// Parse `"p/q"` or `"p"` into a normalized rational.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let t = text.trim();
    let r = Rational::from_str(t).map_err(|_| ScalarError::BadLiteral(t.to_string()))?;
    Ok(r)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Descriptor of `Q[t]/(m)` with `m` monic, squarefree and irreducible.
#[derive(Debug)]
pub struct NumberField {
    minpoly: UniPoly,
    /// Row `k` holds the coordinates of `a^(deg + k)` in the power basis.
    reduction: Vec<Vec<Rational>>,
}

static RATIONALS: Lazy<FieldRef> = Lazy::new(|| {
    Arc::new(NumberField {
        minpoly: UniPoly::new(vec![Rational::zero(), Rational::one()]),
        reduction: Vec::new(),
    })
});

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        (self.degree() == 1 && other.degree() == 1) || self.minpoly == other.minpoly
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// The rational field itself.
    pub fn rationals() -> FieldRef {
        RATIONALS.clone()
    }

    /// Build `Q[t]/(m)`, certifying irreducibility of `m` by factoring over Q.
    pub fn new(minpoly: UniPoly) -> Result<FieldRef, ScalarError> {
        let deg = match minpoly.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(ScalarError::DegreeTooLow),
        };
        if !minpoly.leading().is_one() {
            return Err(ScalarError::NotMonic(minpoly.to_string()));
        }
        if !minpoly.is_squarefree().unwrap_or(false) {
            return Err(ScalarError::NotSquarefree(minpoly.to_string()));
        }
        if deg > 1 {
            let factors = factor_q(&minpoly).expect("nonzero polynomial");
            if factors.len() > 1 {
                return Err(ScalarError::NotIrreducible {
                    poly: minpoly.to_string(),
                    factor: factors[0].0.to_string(),
                });
            }
        }
        Ok(Arc::new(Self::unchecked(minpoly)))
    }

    fn unchecked(minpoly: UniPoly) -> Self {
        let deg = minpoly.degree().unwrap();
        // a^deg = -(m_0 + m_1 a + ... + m_{deg-1} a^{deg-1})
        let mut reduction = Vec::new();
        if deg > 1 {
            let mut cur: Vec<Rational> = (0..deg).map(|i| -minpoly.coeff(i)).collect();
            for _ in 0..deg - 1 {
                reduction.push(cur.clone());
                // multiply by a
                let top = cur[deg - 1].clone();
                let mut next = vec![Rational::zero(); deg];
                for i in 1..deg {
                    next[i] = cur[i - 1].clone();
                }
                if !top.is_zero() {
                    for i in 0..deg {
                        next[i] -= &top * &minpoly.coeff(i);
                    }
                }
                cur = next;
            }
        }
        NumberField { minpoly, reduction }
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(1)
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    /// The class of `t` in `Q[t]/(m)`.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        if self.is_rationals() {
            return FieldElement::Rational(-self.minpoly.coeff(0));
        }
        let mut c = vec![Rational::zero(); self.degree()];
        c[1] = Rational::one();
        FieldElement::Algebraic(self.clone(), c)
    }

    /// Residue class of `c_0 + c_1 t + ...`, reduced modulo the minimal polynomial.
    pub fn element(self: &Arc<Self>, coeffs: Vec<Rational>) -> FieldElement {
        let p = UniPoly::new(coeffs);
        let r = p.rem(&self.minpoly).expect("minpoly nonzero");
        let deg = self.degree();
        let c: Vec<Rational> = (0..deg).map(|i| r.coeff(i)).collect();
        FieldElement::normalize(self, c)
    }

    fn mul_coeffs(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let deg = self.degree();
        let mut prod = vec![Rational::zero(); 2 * deg - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<Rational> = prod[..deg].to_vec();
        for (k, high) in prod[deg..].iter().enumerate() {
            if high.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.reduction[k]) {
                *o += high * r;
            }
        }
        out
    }

    fn inv_coeffs(&self, a: &[Rational]) -> Vec<Rational> {
        let p = UniPoly::new(a.to_vec());
        let (g, s, _) = p.ext_gcd(&self.minpoly);
        debug_assert!(g.degree() == Some(0));
        let s = s.scale(&g.leading().inv().unwrap()).rem(&self.minpoly).unwrap();
        (0..self.degree()).map(|i| s.coeff(i)).collect()
    }

    /// Power-basis coordinates of `x` (length = degree).
    pub fn coordinates(&self, x: &FieldElement) -> Vec<Rational> {
        match x {
            FieldElement::Rational(r) => {
                let mut v = vec![Rational::zero(); self.degree()];
                v[0] = r.clone();
                v
            }
            FieldElement::Algebraic(f, c) => {
                assert!(**f == *self, "element of a different number field");
                c.clone()
            }
        }
    }

    /// Minimal polynomial printed in `t`.
    pub fn describe(&self) -> String {
        self.minpoly.to_string()
    }
}

/// Exact element of Q or of a simple extension `Q(a)`.
#[derive(Clone, Debug)]
pub enum FieldElement {
    Rational(Rational),
    /// Coordinates in the power basis `1, a, ..., a^(D-1)`; never purely rational.
    Algebraic(FieldRef, Vec<Rational>),
}

impl FieldElement {
    pub fn from_rational(r: Rational) -> Self {
        FieldElement::Rational(r)
    }

    pub fn from_int(k: i64) -> Self {
        FieldElement::Rational(int(k))
    }

    fn normalize(field: &FieldRef, coeffs: Vec<Rational>) -> Self {
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            FieldElement::Rational(coeffs.into_iter().next().unwrap_or_else(Rational::zero))
        } else {
            FieldElement::Algebraic(field.clone(), coeffs)
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Algebraic(..) => None,
        }
    }

    pub fn field(&self) -> Option<&FieldRef> {
        match self {
            FieldElement::Rational(_) => None,
            FieldElement::Algebraic(f, _) => Some(f),
        }
    }

    fn binary(&self, other: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        use FieldElement::*;
        match (self, other) {
            (Rational(a), Rational(b)) => Rational(op(a, b)),
            (Algebraic(f, a), Rational(b)) => {
                let mut c = a.clone();
                c[0] = op(&a[0], b);
                for x in c.iter_mut().skip(1) {
                    *x = op(x, &num_traits::Zero::zero());
                }
                Self::normalize(f, c)
            }
            (Rational(a), Algebraic(f, b)) => {
                let zero = <num_rational::BigRational as num_traits::Zero>::zero();
                let c: Vec<_> = b
                    .iter()
                    .enumerate()
                    .map(|(i, y)| if i == 0 { op(a, y) } else { op(&zero, y) })
                    .collect();
                Self::normalize(f, c)
            }
            (Algebraic(f, a), Algebraic(g, b)) => {
                assert!(f == g, "arithmetic across different number fields");
                let c = a.iter().zip(b).map(|(x, y)| op(x, y)).collect();
                Self::normalize(f, c)
            }
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        use FieldElement::*;
        match (self, other) {
            (Rational(a), Rational(b)) => a == b,
            (Algebraic(f, a), Algebraic(g, b)) => f == g && a == b,
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            FieldElement::Rational(r) => r.hash(state),
            FieldElement::Algebraic(_, c) => c.hash(state),
        }
    }
}

impl Coeff for FieldElement {
    fn zero() -> Self {
        FieldElement::Rational(<Rational as num_traits::Zero>::zero())
    }
    fn one() -> Self {
        FieldElement::Rational(<Rational as num_traits::One>::one())
    }
    fn from_i64(k: i64) -> Self {
        FieldElement::from_int(k)
    }
    fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rational(r) if Coeff::is_zero(r))
    }
    fn add(&self, other: &Self) -> Self {
        self.binary(other, |a, b| a + b)
    }
    fn sub(&self, other: &Self) -> Self {
        self.binary(other, |a, b| a - b)
    }
    fn mul(&self, other: &Self) -> Self {
        use FieldElement::*;
        match (self, other) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (Algebraic(f, a), Rational(b)) | (Rational(b), Algebraic(f, a)) => {
                if Coeff::is_zero(b) {
                    return Rational(b.clone());
                }
                Algebraic(f.clone(), a.iter().map(|x| x * b).collect())
            }
            (Algebraic(f, a), Algebraic(g, b)) => {
                assert!(f == g, "arithmetic across different number fields");
                Self::normalize(f, f.mul_coeffs(a, b))
            }
        }
    }
    fn neg(&self) -> Self {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(-r),
            FieldElement::Algebraic(f, c) => FieldElement::Algebraic(f.clone(), c.iter().map(|x| -x).collect()),
        }
    }
    fn inv(&self) -> Option<Self> {
        match self {
            FieldElement::Rational(r) => Coeff::inv(r).map(FieldElement::Rational),
            FieldElement::Algebraic(f, c) => Some(Self::normalize(f, f.inv_coeffs(c))),
        }
    }
    fn signed_parts(&self) -> (bool, String) {
        match self {
            FieldElement::Rational(r) => r.signed_parts(),
            FieldElement::Algebraic(..) => (false, format!("({self})")),
        }
    }
}

impl FieldElement {
    /// `x^{-1}`, failing on zero.
    pub fn try_inv(&self) -> Result<Self, ScalarError> {
        Coeff::inv(self).ok_or(ScalarError::DivisionByZero)
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::Rational(r)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => write!(f, "{r}"),
            FieldElement::Algebraic(_, c) => {
                let mut first = true;
                for (i, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let mag = x.abs();
                    let body = match i {
                        0 => mag.to_string(),
                        _ => {
                            let pow = if i == 1 { "a".to_string() } else { format!("a^{i}") };
                            if mag.is_one() {
                                pow
                            } else {
                                format!("{mag}*{pow}")
                            }
                        }
                    };
                    if first {
                        if x.is_negative() {
                            write!(f, "-")?;
                        }
                        write!(f, "{body}")?;
                        first = false;
                    } else {
                        write!(f, " {} {body}", if x.is_negative() { "-" } else { "+" })?;
                    }
                }
                Ok(())
            }
        }
    }
}
