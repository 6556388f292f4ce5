//! Gradient lifting and reconstructibility of a form from its Jacobian ideal.

use serde_json::{json, Value};
use thiserror::Error;

use crate::center::{center_basis, check_all_slices};
use crate::decompose::{primitive_idempotents, ExtendPolicy};
use crate::exactlinalg::{ExactMatrix, RowSpace, Vector};
use crate::multipoly::{monomials, Form};
use crate::scalars::{Coeff, FieldElement, Rational};
use crate::symtensor::SymTensor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobianError {
    #[error("matrix is not in the center: slice condition fails at index {}", one_based(.index))]
    NotInCenter { index: Vec<usize> },
    #[error("forms differ in shape: (n, d) = ({0}, {1}) vs ({2}, {3})")]
    DegreeMismatch(usize, usize, usize, usize),
    #[error("form is degenerate: essential rank {rank} < {n} variables")]
    DegenerateInput { rank: usize, n: usize },
    #[error("matrix must be {n}x{n}")]
    Shape { n: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

fn one_based(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

/// `g` with `grad g = (grad f) A`, i.e. `dg/dx_i = sum_j df/dx_j A_ji`.
pub fn lift_gradient(f: &Form, a: &ExactMatrix) -> Result<Form, JacobianError> {
    let n = f.n();
    if a.rows() != n || a.cols() != n {
        return Err(JacobianError::Shape { n });
    }
    let t = SymTensor::from_form(f);
    check_all_slices(&t, a).map_err(|index| JacobianError::NotInCenter { index })?;
    let grad = f.gradient();
    let d = f.degree();
    let targets: Vec<Form> = (0..n)
        .map(|i| {
            (0..n).fold(Form::zero(n, d.saturating_sub(1)), |acc, j| {
                let c = a.get(j, i);
                if c.is_zero() {
                    acc
                } else {
                    acc.add(&grad[j].scale(c))
                }
            })
        })
        .collect();
    // Euler: g = (1/d) sum_i x_i g_i
    let mut g = Form::zero(n, d);
    for (i, gi) in targets.iter().enumerate() {
        g = g.add(&Form::variable(n, i).mul(gi));
    }
    let g = g.scale(&FieldElement::from_rational(Rational::new(1.into(), (d as i64).into())));
    if g.gradient() != targets {
        return Err(JacobianError::Internal("lifted form has the wrong gradient".into()));
    }
    Ok(g)
}

/// Span `E(f)` of the first partials, as an RREF basis over the degree `d-1`
/// monomials in printing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradientSpace {
    pub monomials: Vec<Vec<u32>>,
    pub basis: Vec<Vector>,
}

impl GradientSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn coefficient_vector(f: &Form, monos: &[Vec<u32>]) -> Vector {
    monos.iter().map(|m| f.coeff(m)).collect()
}

pub fn gradient_space(f: &Form) -> GradientSpace {
    let monos = monomials(f.n(), f.degree().saturating_sub(1));
    let mut rs = RowSpace::new(monos.len());
    for p in f.gradient() {
        rs.insert(&coefficient_vector(&p, &monos));
    }
    GradientSpace { monomials: monos, basis: rs.basis() }
}

fn same_shape(f: &Form, g: &Form) -> Result<(), JacobianError> {
    if f.n() != g.n() || f.degree() != g.degree() {
        return Err(JacobianError::DegreeMismatch(f.n(), f.degree(), g.n(), g.degree()));
    }
    Ok(())
}

pub fn gradient_space_equal(f: &Form, g: &Form) -> Result<bool, JacobianError> {
    same_shape(f, g)?;
    Ok(gradient_space(f) == gradient_space(g))
}

/// Whether `g = c f` for some scalar `c` (zero counts as proportional).
pub fn proportional(f: &Form, g: &Form) -> Result<bool, JacobianError> {
    same_shape(f, g)?;
    let monos = monomials(f.n(), f.degree());
    let rows = vec![coefficient_vector(f, &monos), coefficient_vector(g, &monos)];
    Ok(ExactMatrix::from_rows(rows).rank() <= 1)
}

/// Verdict on whether `J(f)` determines `f` up to a scalar.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub reconstructible: bool,
    /// A form with the same gradient span that is not proportional to `f`.
    pub counterexample: Option<Form>,
    /// Invertible non-scalar center element the counterexample was lifted from.
    pub witness: Option<ExactMatrix>,
    pub verified: bool,
}

impl Reconstruction {
    pub fn to_json(&self) -> Value {
        json!({
            "reconstructible": self.reconstructible,
            "counterexample": self.counterexample.as_ref().map(ToString::to_string),
            "witness": self.witness.as_ref().map(ExactMatrix::to_strings),
            "verified": self.verified,
        })
    }
}

pub fn is_reconstructible(f: &Form) -> Result<Reconstruction, JacobianError> {
    let t = SymTensor::from_form(f);
    let rank = t.essential_rank();
    if rank < f.n() {
        return Err(JacobianError::DegenerateInput { rank, n: f.n() });
    }
    let z = center_basis(&t).map_err(|e| JacobianError::Internal(e.to_string()))?;
    if z.dim == 1 {
        return Ok(Reconstruction { reconstructible: true, counterexample: None, witness: None, verified: true });
    }
    let id = ExactMatrix::identity(f.n());
    let a = if let Some(rho) = z.radical_basis.first() {
        id.add(rho)
    } else {
        let sys = primitive_idempotents(&z, ExtendPolicy::Never).map_err(|e| JacobianError::Internal(e.to_string()))?;
        if sys.idempotents.len() >= 2 {
            id.add(&sys.idempotents[0])
        } else {
            // the center is a field, so every nonzero element is invertible
            z.basis
                .iter()
                .find(|x| !x.is_scalar())
                .cloned()
                .ok_or_else(|| JacobianError::Internal("no non-scalar center element".into()))?
        }
    };
    if a.det().is_zero() {
        return Err(JacobianError::Internal("chosen center element is singular".into()));
    }
    let g = lift_gradient(f, &a)?;
    let verified = gradient_space_equal(f, &g)? && !proportional(f, &g)?;
    if !verified {
        return Err(JacobianError::Internal("counterexample does not verify".into()));
    }
    Ok(Reconstruction { reconstructible: false, counterexample: Some(g), witness: Some(a), verified })
}
