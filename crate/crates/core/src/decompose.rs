//! Direct-sum decomposition of forms through primitive idempotents of the
//! center, LDS witnesses for nonsemisimple centers, and classification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde_json::{json, Value};
use thiserror::Error;

use crate::center::{center_basis, CenterAlgebra, CenterError};
use crate::exactlinalg::{
    semisimple_part, simultaneous_split_over, ExactMatrix, RowSpace, SpectralError, Split, Vector,
};
use crate::multipoly::Form;
use crate::scalars::{Coeff, FieldElement, FieldRef, NumberField, Rational};
use crate::symtensor::{SymTensor, TensorError};
use crate::unipoly::{FieldPoly, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExtendPolicy {
    /// Work over the field of the input only.
    #[default]
    Never,
    /// Adjoin one root of a single splitting certificate if that splits everything.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("splitting needs more than one extension; certificates: {}", list(.certificates))]
    TowerRequired { certificates: Vec<UniPoly> },
    #[error("the zero form cannot be decomposed")]
    ZeroForm,
    #[error("forms of degree {0} are not supported (need d >= 3)")]
    DegreeTooLow(usize),
    #[error("idempotents do not form a complete orthogonal system: {0}")]
    NotCompleteSystem(String),
    #[error("center is semisimple, so no LDS witness exists")]
    SemisimpleCenter,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

fn list(ps: &[UniPoly]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl From<CenterError> for DecomposeError {
    fn from(e: CenterError) -> Self {
        DecomposeError::Internal(e.to_string())
    }
}

impl From<SpectralError> for DecomposeError {
    fn from(e: SpectralError) -> Self {
        DecomposeError::Internal(e.to_string())
    }
}

impl From<TensorError> for DecomposeError {
    fn from(e: TensorError) -> Self {
        match e {
            TensorError::ZeroForm => DecomposeError::ZeroForm,
            other => DecomposeError::Internal(other.to_string()),
        }
    }
}

/// Complete system of orthogonal idempotents of a center.
#[derive(Clone, Debug)]
pub struct IdempotentSystem {
    pub idempotents: Vec<ExactMatrix>,
    pub field: FieldRef,
    /// Irreducible polynomials of degree > 1 attached to idempotents that are
    /// primitive over `field` but split over an extension.
    pub certificates: Vec<FieldPoly>,
}

/// Primitive orthogonal idempotents of `z`, over its field or (with
/// [`ExtendPolicy::Auto`]) over a single simple extension.
pub fn primitive_idempotents(z: &CenterAlgebra, extend: ExtendPolicy) -> Result<IdempotentSystem, DecomposeError> {
    let family: Vec<ExactMatrix> = z.basis.iter().map(semisimple_part).collect();
    let split = simultaneous_split_over(&family, &z.field)?;
    if split.certificates.is_empty() || extend == ExtendPolicy::Never {
        return build_idempotents(z, &family, split, z.field.clone());
    }
    let mut candidates: Vec<UniPoly> = Vec::new();
    for (_, c) in &split.certificates {
        let Some(q) = c.to_rational().filter(|_| z.field.is_rationals()) else {
            return Err(DecomposeError::TowerRequired { certificates: rational_certificates(&split) });
        };
        let q = canonical_certificate(&q);
        if !candidates.contains(&q) {
            candidates.push(q);
        }
    }
    for c in &candidates {
        let k = NumberField::new(c.clone()).map_err(|e| DecomposeError::Internal(e.to_string()))?;
        let s = simultaneous_split_over(&family, &k)?;
        if s.certificates.is_empty() {
            return build_idempotents(z, &family, s, k);
        }
    }
    Err(DecomposeError::TowerRequired { certificates: candidates })
}

fn rational_certificates(split: &Split) -> Vec<UniPoly> {
    split.certificates.iter().filter_map(|(_, c)| c.to_rational()).collect()
}

/// Simpler generator of the same field: a quadratic `t^2 + b t + c` becomes
/// `t^2 - D` with `D` the squarefree integer part of its discriminant.
pub fn canonical_certificate(c: &UniPoly) -> UniPoly {
    let c = c.monic();
    if c.degree() != Some(2) {
        return c;
    }
    let (b, k) = (c.coeff(1), c.coeff(0));
    let disc: Rational = b.mul(&b).sub(&k.mul(&Rational::from_i64(4)));
    // disc = p/q and Q(sqrt(p/q)) = Q(sqrt(p q))
    let n = disc.numer() * disc.denom();
    let d = squarefree_integer(&n);
    UniPoly::new(vec![Rational::from_integer(-d), Rational::zero(), Rational::one()])
}

fn squarefree_integer(n: &BigInt) -> BigInt {
    let sign = if n.is_negative() { BigInt::from(-1) } else { BigInt::from(1) };
    let mut m = n.abs();
    let mut out = BigInt::from(1);
    let mut p = 2u64;
    while p < 1_000_000 && BigInt::from(p) * BigInt::from(p) <= m {
        let pb = BigInt::from(p);
        let mut e = 0;
        while m.is_multiple_of(&pb) {
            m /= &pb;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &pb;
        }
        p += 1;
    }
    let r = m.sqrt();
    if &r * &r != m {
        out *= m;
    }
    sign * out
}

fn build_idempotents(
    z: &CenterAlgebra,
    family: &[ExactMatrix],
    split: Split,
    field: FieldRef,
) -> Result<IdempotentSystem, DecomposeError> {
    let n = z.n;
    let cols: Vec<Vector> = split.blocks.iter().flatten().cloned().collect();
    let p = ExactMatrix::from_columns(n, &cols);
    let pinv = p.inverse().ok_or_else(|| DecomposeError::Internal("block bases are dependent".into()))?;
    let mut idempotents = Vec::new();
    let mut start = 0;
    let mut ranges = Vec::new();
    for b in &split.blocks {
        let mut e = ExactMatrix::zeros(n, n);
        for i in start..start + b.len() {
            e.set(i, i, FieldElement::one());
        }
        ranges.push(start..start + b.len());
        idempotents.push(p.mul(&e).mul(&pinv));
        start += b.len();
    }
    check_complete(&idempotents).map_err(DecomposeError::Internal)?;
    if let Some(bad) = idempotents.iter().position(|e| !z.contains(e)) {
        return Err(DecomposeError::Internal(format!("idempotent {bad} is not central")));
    }
    if split.certificates.is_empty() {
        // rows of the RREF of the conjugated diagonals are the block indicators
        let rows: Vec<Vector> = family
            .iter()
            .map(|s| {
                let d = pinv.mul(s).mul(&p);
                (0..n).map(|i| d.get(i, i).clone()).collect()
            })
            .collect();
        let (r, rank, _) = ExactMatrix::from_rows(rows).rref();
        let mut indicators: Vec<Vector> = ranges
            .iter()
            .map(|rg| (0..n).map(|i| FieldElement::from_int(rg.contains(&i) as i64)).collect())
            .collect();
        indicators.sort_by_key(|v| v.iter().position(|x| !x.is_zero()));
        let got: Vec<Vector> = (0..rank).map(|i| r.row(i)).collect();
        if got != indicators {
            return Err(DecomposeError::Internal("echelon idempotents disagree with eigenspaces".into()));
        }
    }
    let certificates = split.certificates.into_iter().map(|(_, c)| c).collect();
    Ok(IdempotentSystem { idempotents, field, certificates })
}

fn check_complete(eps: &[ExactMatrix]) -> Result<(), String> {
    let Some(first) = eps.first() else {
        return Err("empty system".into());
    };
    let n = first.rows();
    let mut sum = ExactMatrix::zeros(n, n);
    for (i, e) in eps.iter().enumerate() {
        if e.mul(e) != *e {
            return Err(format!("element {i} is not idempotent"));
        }
        for (j, f) in eps.iter().enumerate().skip(i + 1) {
            if !e.mul(f).is_zero() || !f.mul(e).is_zero() {
                return Err(format!("elements {i} and {j} are not orthogonal"));
            }
        }
        sum = sum.add(e);
    }
    if !sum.is_identity() {
        return Err("idempotents do not sum to the identity".into());
    }
    Ok(())
}

/// Change of variables whose columns are bases of the images `eps_i(V)`,
/// taken as the pivot columns of each `eps_i`; blocks are the column ranges.
pub fn idempotents_to_change(eps: &[ExactMatrix]) -> Result<(ExactMatrix, Vec<Vec<usize>>), DecomposeError> {
    check_complete(eps).map_err(DecomposeError::NotCompleteSystem)?;
    let n = eps[0].rows();
    let mut cols = Vec::new();
    let mut blocks = Vec::new();
    for e in eps {
        let (_, _, pivots) = e.rref();
        let start = cols.len();
        cols.extend(pivots.iter().map(|&j| e.column(j)));
        blocks.push((start..cols.len()).collect());
    }
    let p = ExactMatrix::from_columns(n, &cols);
    if cols.len() != n || p.det().is_zero() {
        return Err(DecomposeError::NotCompleteSystem("images do not span the space".into()));
    }
    Ok((p, blocks))
}

/// `f(P y) = sum of summands`, each summand in the variables of one block.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub field: FieldRef,
    /// `P` with `f(P y)` split along `blocks`.
    pub matrix: ExactMatrix,
    /// 0-based variable indices of each block, consecutive and sorted by size.
    pub blocks: Vec<Vec<usize>>,
    /// One form per block, in all `n` variables but supported on its block.
    pub summands: Vec<Form>,
    /// Variables that do not occur in `f(P y)` (degenerate input).
    pub eliminated: Vec<usize>,
    /// Splitting certificates of blocks that are indecomposable only over `field`.
    pub certificates: Vec<FieldPoly>,
    pub verified: bool,
}

impl Decomposition {
    /// Summand `k` as a form in its own block's variables.
    pub fn local_summand(&self, k: usize) -> Form {
        self.summands[k].restrict_to(&self.blocks[k])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": field_json(&self.field),
            "matrix": matrix_json(&self.matrix, &self.field),
            "blocks": self.blocks.iter().map(|b| b.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "summands": self.summands.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "eliminated": self.eliminated.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "certificates": self.certificates.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "verified": self.verified,
        })
    }
}

pub fn field_json(k: &NumberField) -> Value {
    json!({ "minpoly": k.minpoly().to_string() })
}

/// A rational string over Q, otherwise the coordinate vector `["c0", "c1", ..]` in `k`.
pub fn element_json(x: &FieldElement, k: &NumberField) -> Value {
    if k.is_rationals() {
        return json!(x.to_string());
    }
    json!(k.coordinates(x).iter().map(ToString::to_string).collect::<Vec<_>>())
}

pub fn matrix_json(m: &ExactMatrix, k: &NumberField) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| element_json(m.get(i, j), k)).collect()))
        .collect();
    Value::Array(rows)
}

fn check_degree(f: &Form) -> Result<(), DecomposeError> {
    if f.is_zero() {
        return Err(DecomposeError::ZeroForm);
    }
    if f.degree() < 3 {
        return Err(DecomposeError::DegreeTooLow(f.degree()));
    }
    Ok(())
}

/// Block-diagonal `diag(a, I)` of total size `n`.
fn pad(a: &ExactMatrix, n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::identity(n);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m.set(i, j, a.get(i, j).clone());
        }
    }
    m
}

/// Full pipeline: reduce, center, idempotents, change of variables, split.
pub fn decompose_form(f: &Form, extend: ExtendPolicy) -> Result<Decomposition, DecomposeError> {
    check_degree(f)?;
    let n = f.n();
    let a = SymTensor::from_form(f);
    let (p0, ar) = a.reduce_nondegenerate()?;
    let r = ar.n();
    let z = center_basis(&ar)?;
    let sys = primitive_idempotents(&z, extend)?;
    let (p1, blocks) = idempotents_to_change(&sys.idempotents)?;

    // order blocks by (size, printed local summand)
    let g1 = ar.to_form().substitute_unchecked(&p1);
    let mut order: Vec<(usize, String, Vec<usize>)> =
        blocks.iter().map(|b| (b.len(), g1.restrict_to(b).to_string(), b.clone())).collect();
    order.sort();
    let perm: Vec<usize> = order.iter().flat_map(|(_, _, b)| b.iter().copied()).collect();
    let p1 = p1.submatrix(&(0..r).collect::<Vec<_>>(), &perm);
    let mut blocks = Vec::new();
    let mut start = 0;
    for (len, _, _) in &order {
        blocks.push((start..start + len).collect::<Vec<_>>());
        start += len;
    }

    let matrix = p0.mul(&pad(&p1, n));
    let g = f.substitute_linear(&matrix).map_err(|e| DecomposeError::Internal(e.to_string()))?;
    let summands: Vec<Form> = blocks.iter().map(|b| g.restrict_to(b).embed(n, b)).collect();
    let total = summands.iter().fold(Form::zero(n, f.degree()), |acc, s| acc.add(s));
    let verified = total == g && summands.iter().all(|s| !s.is_zero());
    if !verified {
        return Err(DecomposeError::Internal("decomposition identity does not hold".into()));
    }
    Ok(Decomposition {
        field: sys.field,
        matrix,
        blocks,
        summands,
        eliminated: (r..n).collect(),
        certificates: sys.certificates,
        verified,
    })
}

/// `f(P y) = sum_{i<=l} y_i dh/dy_{l+i}(y_{l+1..2l}) + g(y_{l+1..n})`.
#[derive(Clone, Debug)]
pub struct LdsWitness {
    pub l: usize,
    pub matrix: ExactMatrix,
    /// Form in `l` variables.
    pub h: Form,
    /// Form in `n - l` variables (standing for `y_{l+1} .. y_n`).
    pub g: Form,
    pub verified: bool,
}

impl LdsWitness {
    /// Right-hand side of the witness identity as a form in `n` variables.
    pub fn reconstruct(&self) -> Form {
        let n = self.matrix.rows();
        let l = self.l;
        let mut out = self.g.embed(n, &(l..n).collect::<Vec<_>>());
        let shift: Vec<usize> = (l..2 * l).collect();
        for i in 0..l {
            let dh = self.h.partial(i).unwrap().embed(n, &shift);
            out = out.add(&Form::variable(n, i).mul(&dh));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "matrix": self.matrix.to_strings(),
            "h": self.h.to_string(),
            "g": self.g.to_string(),
            "verified": self.verified,
        })
    }
}

/// Witness built from a square-zero element of the radical.
pub fn lds_witness(f: &Form) -> Result<LdsWitness, DecomposeError> {
    check_degree(f)?;
    let n = f.n();
    let d = f.degree();
    let a = SymTensor::from_form(f);
    let (p0, ar) = a.reduce_nondegenerate()?;
    let r = ar.n();
    let z = center_basis(&ar)?;
    let Some(rho) = z.radical_basis.first() else {
        return Err(DecomposeError::SemisimpleCenter);
    };
    let mut phi = rho.clone();
    loop {
        let next = phi.mul(rho);
        if next.is_zero() {
            break;
        }
        phi = next;
    }
    let (_, l, pivots) = phi.rref();
    let mut cols: Vec<Vector> = pivots.iter().map(|&c| phi.column(c)).collect();
    cols.extend(pivots.iter().map(|&c| unit(r, c)));
    let mut span = RowSpace::new(r);
    for c in &cols {
        span.insert(c);
    }
    for k in phi.nullspace() {
        if cols.len() == r {
            break;
        }
        if span.insert(&k) {
            cols.push(k);
        }
    }
    if cols.len() != r {
        return Err(DecomposeError::Internal("kernel of phi does not complete the basis".into()));
    }
    let q = ExactMatrix::from_columns(r, &cols);
    let matrix = p0.mul(&pad(&q, n));
    let gf = f.substitute_linear(&matrix).map_err(|e| DecomposeError::Internal(e.to_string()))?;

    // h = (1/d) sum_i y_{l+i} h_i with h_i = dg/dy_i restricted to y_{l+1..2l}
    let hvars: Vec<usize> = (l..2 * l).collect();
    let mut h = Form::zero(l, d);
    for i in 0..l {
        let hi = gf.partial(i).unwrap().restrict_to(&hvars);
        h = h.add(&Form::variable(l, i).mul(&hi));
    }
    let h = h.scale(&FieldElement::from_rational(Rational::new(1.into(), (d as i64).into())));
    let mut rest = gf.clone();
    for i in 0..l {
        let dh = h.partial(i).unwrap().embed(n, &hvars);
        rest = rest.sub(&Form::variable(n, i).mul(&dh));
    }
    let g_vars: Vec<usize> = (l..n).collect();
    let g = rest.restrict_to(&g_vars);
    let mut w = LdsWitness { l, matrix, h, g, verified: false };
    w.verified = w.reconstruct() == gf;
    if !w.verified {
        return Err(DecomposeError::Internal("LDS witness identity does not hold".into()));
    }
    Ok(w)
}

fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![FieldElement::zero(); n];
    v[i] = FieldElement::one();
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassTag {
    Degenerate { essential_rank: usize },
    Central,
    DecomposableSemisimple { summands: usize },
    IndecomposableOverQNeedsExtension { certificate: UniPoly },
    LdsIndecomposable,
    LdsAndDecomposable { summands: usize },
}

impl ClassTag {
    pub fn name(&self) -> &'static str {
        match self {
            ClassTag::Degenerate { .. } => "degenerate",
            ClassTag::Central => "central",
            ClassTag::DecomposableSemisimple { .. } => "decomposable-semisimple",
            ClassTag::IndecomposableOverQNeedsExtension { .. } => "indecomposable-needs-extension",
            ClassTag::LdsIndecomposable => "lds-indecomposable",
            ClassTag::LdsAndDecomposable { .. } => "lds-and-decomposable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub tag: ClassTag,
    /// Dimension of the center of the (reduced) form.
    pub center_dim: usize,
    pub semisimple: bool,
    /// Number of summands over the field of the input.
    pub summands_base: usize,
    /// Number of summands over a single splitting extension, when one exists.
    pub summands_split: Option<usize>,
    /// Classification of the nondegenerate reduction, for degenerate input.
    pub reduced: Option<Box<Classification>>,
}

impl Classification {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "tag": self.tag.name(),
            "center_dim": self.center_dim,
            "semisimple": self.semisimple,
            "summands_q": self.summands_base,
            "summands_split": self.summands_split,
        });
        match &self.tag {
            ClassTag::Degenerate { essential_rank } => v["essential_rank"] = json!(essential_rank),
            ClassTag::IndecomposableOverQNeedsExtension { certificate } => {
                v["certificate"] = json!(certificate.to_string())
            }
            _ => {}
        }
        if let Some(r) = &self.reduced {
            v["reduced"] = r.to_json();
        }
        v
    }

    /// Tag of the nondegenerate part (the reduction for degenerate input).
    pub fn essential_tag(&self) -> &ClassTag {
        match &self.reduced {
            Some(r) => r.essential_tag(),
            None => &self.tag,
        }
    }
}

pub fn classify(f: &Form) -> Result<Classification, DecomposeError> {
    check_degree(f)?;
    let a = SymTensor::from_form(f);
    let (_, ar) = a.reduce_nondegenerate()?;
    let inner = classify_nondegenerate(&ar)?;
    if ar.n() < f.n() {
        return Ok(Classification {
            tag: ClassTag::Degenerate { essential_rank: ar.n() },
            center_dim: inner.center_dim,
            semisimple: inner.semisimple,
            summands_base: inner.summands_base,
            summands_split: inner.summands_split,
            reduced: Some(Box::new(inner)),
        });
    }
    Ok(inner)
}

fn classify_nondegenerate(a: &SymTensor) -> Result<Classification, DecomposeError> {
    let z = center_basis(a)?;
    let base = primitive_idempotents(&z, ExtendPolicy::Never)?;
    let split = match primitive_idempotents(&z, ExtendPolicy::Auto) {
        Ok(s) => Some(s.idempotents.len()),
        Err(DecomposeError::TowerRequired { .. }) => None,
        Err(e) => return Err(e),
    };
    let t = base.idempotents.len();
    let tag = if z.dim == 1 {
        ClassTag::Central
    } else if z.is_semisimple {
        if t >= 2 {
            ClassTag::DecomposableSemisimple { summands: t }
        } else {
            let c = base.certificates.first().and_then(FieldPoly::to_rational);
            let c = c.ok_or_else(|| DecomposeError::Internal("field-like center without certificate".into()))?;
            ClassTag::IndecomposableOverQNeedsExtension { certificate: canonical_certificate(&c) }
        }
    } else if t >= 2 {
        ClassTag::LdsAndDecomposable { summands: t }
    } else {
        ClassTag::LdsIndecomposable
    };
    Ok(Classification {
        tag,
        center_dim: z.dim,
        semisimple: z.is_semisimple,
        summands_base: t,
        summands_split: split,
        reduced: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_form;

    fn form(s: &str, n: usize) -> Form {
        parse_form(s, n).unwrap()
    }

    #[test]
    fn canonical_quadratic() {
        // t^2 + 4t + 1 has discriminant 12 = 4 * 3
        let c = canonical_certificate(&UniPoly::from_ints(&[1, 4, 1]));
        assert_eq!(c, UniPoly::from_ints(&[-3, 0, 1]));
        let c = canonical_certificate(&UniPoly::new(vec![Rational::new(1.into(), 2.into()), Rational::zero(), Rational::one()]));
        assert_eq!(c, UniPoly::from_ints(&[2, 0, 1]));
    }

    #[test]
    fn change_of_variables_examples() {
        let (p, blocks) = idempotents_to_change(&[ExactMatrix::identity(2)]).unwrap();
        assert_eq!((p, blocks), (ExactMatrix::identity(2), vec![vec![0, 1]]));
        let e1 = ExactMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        let e2 = ExactMatrix::from_ints(&[&[0, 0], &[0, 1]]);
        let (p, blocks) = idempotents_to_change(&[e1.clone(), e2]).unwrap();
        assert_eq!((p, blocks), (ExactMatrix::identity(2), vec![vec![0], vec![1]]));
        assert!(matches!(idempotents_to_change(&[e1]), Err(DecomposeError::NotCompleteSystem(_))));
    }

    #[test]
    fn diagonal_cubic_splits() {
        let d = decompose_form(&form("x1^3 + x2^3", 2), ExtendPolicy::Never).unwrap();
        assert!(d.verified);
        assert_eq!(d.blocks, vec![vec![0], vec![1]]);
        assert_eq!(d.local_summand(0), form("x1^3", 1));
        assert_eq!(d.local_summand(1), form("x1^3", 1));
    }

    #[test]
    fn lds_examples() {
        let w = lds_witness(&form("3*x1*x2^2 + x3^3", 3)).unwrap();
        assert_eq!(w.l, 1);
        assert!(w.verified);
        assert!(matches!(lds_witness(&form("x1^3 + x2^3", 2)), Err(DecomposeError::SemisimpleCenter)));
    }

    #[test]
    fn classification_tags() {
        assert_eq!(classify(&form("x1^3 + x2^3", 2)).unwrap().tag, ClassTag::DecomposableSemisimple { summands: 2 });
        assert_eq!(classify(&form("3*x1*x2^2 + x3^3", 3)).unwrap().tag, ClassTag::LdsAndDecomposable { summands: 2 });
        let c = classify(&form("x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3", 2)).unwrap();
        assert_eq!(c.tag, ClassTag::Degenerate { essential_rank: 1 });
        assert_eq!(c.essential_tag(), &ClassTag::Central);
        assert!(matches!(classify(&Form::zero(2, 3)), Err(DecomposeError::ZeroForm)));
    }
}
