//! Homogeneous multivariate polynomials (forms) over a number field.
//!
//! Variables are indexed from 0 in the API and printed as `x1 .. xn`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactlinalg::ExactMatrix;
use crate::scalars::{Coeff, FieldElement, FieldRef, Rational};

pub type Exponent = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("form is not homogeneous: {first} and {second} have different degrees")]
    NotHomogeneous { first: String, second: String },
    #[error("unknown variable {name} at position {position} (expected x1..x{n})")]
    UnknownVariable { name: String, position: usize, n: usize },
    #[error("variable index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("substitution matrix is singular")]
    SingularMatrix,
    #[error("matrix is {rows}x{cols}, expected {n}x{n}")]
    ShapeMismatch { rows: usize, cols: usize, n: usize },
}

/// A form of degree `d` in `n` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    n: usize,
    d: usize,
    terms: BTreeMap<Exponent, FieldElement>,
}

impl Form {
    pub fn zero(n: usize, d: usize) -> Self {
        Form { n, d, terms: BTreeMap::new() }
    }

    /// Build from `(exponent, coefficient)` pairs, summing repeats.
    ///
    /// Panics if an exponent has the wrong length or total degree.
    pub fn from_terms(n: usize, d: usize, terms: impl IntoIterator<Item = (Exponent, FieldElement)>) -> Self {
        let mut f = Self::zero(n, d);
        for (e, c) in terms {
            f.add_term(e, &c);
        }
        f
    }

    /// The variable `x_{i+1}` as a linear form.
    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::from_terms(n, 1, [(e, FieldElement::one())])
    }

    /// `sum_i c_i x_i`.
    pub fn linear(coeffs: &[FieldElement]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            1,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    pub fn constant(n: usize, c: FieldElement) -> Self {
        Self::from_terms(n, 0, [(vec![0; n], c)])
    }

    pub fn add_term(&mut self, e: Exponent, c: &FieldElement) {
        assert_eq!(e.len(), self.n, "exponent length");
        assert_eq!(e.iter().map(|&k| k as usize).sum::<usize>(), self.d, "exponent degree");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, FieldElement> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(FieldElement::zero)
    }

    /// Extension field of the coefficients, if any coefficient is irrational.
    pub fn field(&self) -> Option<FieldRef> {
        self.terms.values().find_map(|c| c.field().cloned())
    }

    /// Indices of variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, k: &FieldElement) -> Self {
        if k.is_zero() {
            return Self::zero(self.n, self.d);
        }
        self.map_coeffs(|c| c.mul(k))
    }

    fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), f(c))).filter(|(_, c)| !c.is_zero()).collect();
        Form { n: self.n, d: self.d, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = Self::zero(self.n, self.d + other.d);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, &ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(self.n, FieldElement::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.n, other.n, "variable count mismatch");
        assert!(
            self.d == other.d || self.is_zero() || other.is_zero(),
            "degree mismatch: {} vs {}",
            self.d,
            other.d
        );
    }

    /// Formal partial derivative with respect to `x_{i+1}`.
    pub fn partial(&self, i: usize) -> Result<Form, FormError> {
        if i >= self.n {
            return Err(FormError::IndexOutOfRange { index: i, n: self.n });
        }
        let mut out = Self::zero(self.n, self.d.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, &c.mul(&FieldElement::from_int(e[i] as i64)));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<Form> {
        (0..self.n).map(|i| self.partial(i).unwrap()).collect()
    }

    pub fn hessian(&self) -> PolyMatrix {
        let grad = self.gradient();
        let entries = (0..self.n)
            .map(|i| (0..self.n).map(|j| grad[i].partial(j).unwrap()).collect())
            .collect();
        PolyMatrix { n: self.n, entries }
    }

    /// `g(y) = f(P y)`.
    pub fn substitute_linear(&self, p: &ExactMatrix) -> Result<Form, FormError> {
        if p.rows() != self.n || p.cols() != self.n {
            return Err(FormError::ShapeMismatch { rows: p.rows(), cols: p.cols(), n: self.n });
        }
        if p.det().is_zero() {
            return Err(FormError::SingularMatrix);
        }
        Ok(self.substitute_unchecked(p))
    }

    /// `f(P y)` for any `n x m` matrix, giving a form in `m` variables.
    pub fn substitute_unchecked(&self, p: &ExactMatrix) -> Form {
        assert_eq!(p.rows(), self.n, "substitution needs one row per variable");
        let images: Vec<Vec<(usize, FieldElement)>> = (0..self.n)
            .map(|i| p.row(i).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        horner_substitute(terms, self.d, p.cols(), &images)
    }

    /// Rename variables: `x_i` becomes `x_{map[i]}` in a space of `n_new` variables.
    pub fn embed(&self, n_new: usize, map: &[usize]) -> Form {
        assert_eq!(map.len(), self.n);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e2 = vec![0; n_new];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            (e2, c.clone())
        });
        Form::from_terms(n_new, self.d, terms)
    }

    /// Keep only the variables `vars` (in that order); terms touching any
    /// other variable are dropped.
    pub fn restrict_to(&self, vars: &[usize]) -> Form {
        let terms = self.terms.iter().filter_map(|(e, c)| {
            let inside: u32 = vars.iter().map(|&v| e[v]).sum();
            (inside as usize == self.d).then(|| (vars.iter().map(|&v| e[v]).collect(), c.clone()))
        });
        Form::from_terms(vars.len(), self.d, terms)
    }

    /// `sum_i x_i df/dx_i == d f`.
    pub fn euler_check(&self) -> bool {
        let mut acc = Form::zero(self.n, self.d);
        for i in 0..self.n {
            acc = acc.add(&Form::variable(self.n, i).mul(&self.partial(i).unwrap()));
        }
        acc == self.scale(&FieldElement::from_int(self.d as i64))
    }

    pub fn evaluate(&self, x: &[FieldElement]) -> FieldElement {
        assert_eq!(x.len(), self.n);
        let mut acc = FieldElement::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(xi);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Terms in printing order (graded reverse lexicographic, largest first).
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &FieldElement)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grevlex(b.0, a.0));
        v
    }
}

/// Graded reverse lexicographic comparison.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// All exponent vectors of degree `d` in `n` variables, grevlex descending.
pub fn monomials(n: usize, d: usize) -> Vec<Exponent> {
    fn rec(n: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if cur.len() == n - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d as u32, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| grevlex(b, a));
    out
}

fn monomial_text(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
        .collect();
    parts.join("*")
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let (negative, mag) = c.signed_parts();
            let mono = monomial_text(e);
            let body = match (mag.as_str(), mono.is_empty()) {
                (_, true) => mag.clone(),
                ("1", false) => mono,
                _ => format!("{mag}*{mono}"),
            };
            match (k, negative) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[n={}, d={}]({})", self.n, self.d, self)
    }
}

/// Square matrix of forms, such as a Hessian.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Vec<Form>>,
}

impl PolyMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Form {
        &self.entries[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// `H X` for a constant matrix `X`.
    pub fn mul_constant(&self, x: &ExactMatrix) -> PolyMatrix {
        assert_eq!(x.rows(), self.n);
        let entries = (0..self.n)
            .map(|i| {
                (0..x.cols())
                    .map(|j| {
                        let mut acc = self.entries[i][0].scale(&FieldElement::zero());
                        for k in 0..self.n {
                            acc = acc.add(&self.entries[i][k].scale(x.get(k, j)));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        PolyMatrix { n: self.n, entries }
    }
}

/// Parse a form in `x1..xn`, e.g. `"x1^3 + 3/2*x1*x2^2 - x2^3"`.
///
/// A leading sign is accepted, and so is the literal `0` for the zero form.
pub fn parse_form(text: &str, n: usize) -> Result<Form, FormError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, n };
    let mut terms: Vec<(usize, String, Exponent, Rational)> = Vec::new();
    p.skip_ws();
    let mut sign = Rational::one();
    if p.eat(b'-') {
        sign = sign.neg();
    } else {
        p.eat(b'+');
    }
    loop {
        let start = p.pos;
        let (e, c) = p.term()?;
        let text = String::from_utf8_lossy(&p.src[start..p.pos]).trim().to_string();
        terms.push((start, text, e, sign.mul(&c)));
        p.skip_ws();
        if p.at_end() {
            break;
        }
        sign = if p.eat(b'+') {
            Rational::one()
        } else if p.eat(b'-') {
            Rational::one().neg()
        } else {
            return Err(p.error("expected '+' or '-'"));
        };
    }
    let d = terms[0].2.iter().sum::<u32>() as usize;
    for t in &terms[1..] {
        if t.2.iter().sum::<u32>() as usize != d {
            return Err(FormError::NotHomogeneous { first: terms[0].1.clone(), second: t.1.clone() });
        }
    }
    Ok(Form::from_terms(n, d, terms.into_iter().map(|(_, _, e, c)| (e, FieldElement::from_rational(c)))))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: &str) -> FormError {
        FormError::Syntax { position: self.pos, message: message.to_string() }
    }

    fn integer(&mut self) -> Result<BigInt, FormError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    /// `[coef '*'] factor ('*' factor)*`, or a bare coefficient.
    fn term(&mut self) -> Result<(Exponent, Rational), FormError> {
        self.skip_ws();
        let mut exp = vec![0u32; self.n];
        let mut coef = Rational::one();
        let mut need_factor = true;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.integer()?;
            let mut den = BigInt::from(1);
            if self.eat(b'/') {
                den = self.integer()?;
                if den == BigInt::from(0) {
                    return Err(self.error("zero denominator"));
                }
            }
            coef = Rational::new(num, den);
            if !self.eat(b'*') {
                return Ok((exp, coef));
            }
        }
        while need_factor {
            self.factor(&mut exp)?;
            need_factor = self.eat(b'*');
        }
        Ok((exp, coef))
    }

    fn factor(&mut self, exp: &mut Exponent) -> Result<(), FormError> {
        self.skip_ws();
        let start = self.pos;
        if !self.eat(b'x') {
            return Err(self.error("expected a variable x<k>"));
        }
        let idx = self.integer()?;
        let name = String::from_utf8_lossy(&self.src[start..self.pos]).to_string();
        let i: usize = match usize::try_from(&idx) {
            Ok(i) if i >= 1 && i <= self.n => i,
            _ => return Err(FormError::UnknownVariable { name, position: start, n: self.n }),
        };
        let mut k = 1u32;
        if self.eat(b'^') {
            let e = self.integer()?;
            k = u32::try_from(&e).map_err(|_| self.error("exponent too large"))?;
        }
        exp[i - 1] += k;
        Ok(())
    }
}

/// Writes `f = sum_i x_i f_i` with `f_i` free of `x_1 .. x_{i-1}` and
/// substitutes recursively, so shared factors are expanded once.
fn horner_substitute(terms: Vec<(Exponent, FieldElement)>, d: usize, m: usize, images: &[Vec<(usize, FieldElement)>]) -> Form {
    if d == 0 {
        let c = terms.iter().fold(FieldElement::zero(), |acc, (_, c)| acc.add(c));
        return Form::from_terms(m, 0, [(vec![0; m], c)]);
    }
    let mut groups: BTreeMap<usize, Vec<(Exponent, FieldElement)>> = BTreeMap::new();
    for (mut e, c) in terms {
        let i = e.iter().position(|&k| k > 0).expect("positive degree");
        e[i] -= 1;
        groups.entry(i).or_default().push((e, c));
    }
    let mut out = Form::zero(m, d);
    for (i, group) in groups {
        let inner = horner_substitute(group, d - 1, m, images);
        for (e, c) in &inner.terms {
            for (j, a) in &images[i] {
                let mut e2 = e.clone();
                e2[*j] += 1;
                out.add_term(e2, &c.mul(a));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(k: i64) -> FieldElement {
        FieldElement::from_int(k)
    }

    #[test]
    fn parse_examples() {
        let f = parse_form("x1^3 + 3*x1^2*x2", 2).unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.coeff(&[3, 0]), fe(1));
        assert_eq!(f.coeff(&[2, 1]), fe(3));
        assert_eq!(f.len(), 2);
        assert!(matches!(parse_form("x1^2 + x2^3", 2), Err(FormError::NotHomogeneous { .. })));
        let c = parse_form("x1*x2^4 + x2*x3^4 + x3*x1^4", 3).unwrap();
        assert_eq!((c.degree(), c.len()), (5, 3));
        assert!(matches!(parse_form("x1^3 + x4^3", 3), Err(FormError::UnknownVariable { .. })));
        assert!(matches!(parse_form("x1^3 +", 1), Err(FormError::Syntax { position: 6, .. })));
        assert!(parse_form("  -1/2*x1 * x1*x2 - x2^3 ", 2).is_ok());
        assert!(parse_form("0", 2).unwrap().is_zero());
    }

    #[test]
    fn print_round_trip() {
        let f = parse_form("x2^3 - 1/2*x1*x2^2 + x1^3 - 3*x1^2*x2", 2).unwrap();
        assert_eq!(f.to_string(), "x1^3 - 3*x1^2*x2 - 1/2*x1*x2^2 + x2^3");
        assert_eq!(parse_form(&f.to_string(), 2).unwrap(), f);
    }

    #[test]
    fn partial_examples() {
        let f = parse_form("x1^3", 2).unwrap();
        assert_eq!(f.partial(0).unwrap(), parse_form("3*x1^2", 2).unwrap());
        assert!(f.partial(1).unwrap().is_zero());
        let g = parse_form("6*x1*x2*x3", 3).unwrap();
        assert_eq!(g.partial(1).unwrap(), parse_form("6*x1*x3", 3).unwrap());
        assert!(matches!(g.partial(3), Err(FormError::IndexOutOfRange { .. })));
    }

    #[test]
    fn hessian_examples() {
        let h = parse_form("x1^3", 1).unwrap().hessian();
        assert_eq!(h.get(0, 0), &parse_form("6*x1", 1).unwrap());
        let h = parse_form("x1^3 + x2^3", 2).unwrap().hessian();
        assert_eq!(h.get(1, 1), &parse_form("6*x2", 2).unwrap());
        assert!(h.get(0, 1).is_zero());
        assert!(h.is_symmetric());
    }

    #[test]
    fn substitution_examples() {
        let f = parse_form("x1^3 + 3*x1*x2^2", 2).unwrap();
        assert_eq!(f.substitute_linear(&ExactMatrix::identity(2)).unwrap(), f);
        let g = parse_form("x1^3", 1).unwrap().substitute_linear(&ExactMatrix::from_ints(&[&[2]])).unwrap();
        assert_eq!(g, parse_form("8*x1^3", 1).unwrap());
        let singular = ExactMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(f.substitute_linear(&singular), Err(FormError::SingularMatrix));
    }

    #[test]
    fn euler_examples() {
        assert!(parse_form("x1^3 + x2^3", 2).unwrap().euler_check());
        assert!(parse_form("6*x1*x2*x3", 3).unwrap().euler_check());
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials(3, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], vec![2, 0, 0]);
        assert_eq!(m[5], vec![0, 0, 2]);
    }
}
