//! Generators, independent oracles and the seeded property suite shared by
//! the integration tests and the acceptance runner.
#![allow(dead_code)]

use harrison::center::{build_center_system, center_basis, check_all_slices, CenterAlgebra};
use harrison::decompose::{decompose_form, lds_witness, primitive_idempotents, DecomposeError, ExtendPolicy};
use harrison::exactlinalg::{
    minimal_polynomial, same_span, semisimple_part, simultaneous_split_over, ExactMatrix, RowSpace, Vector,
};
use harrison::families::{orthogonal_sum, random_invertible, random_lds, random_nondegenerate, random_sparse_with};
use harrison::jacobian::{gradient_space_equal, is_reconstructible, lift_gradient, proportional};
use harrison::multipoly::{monomials, parse_form, Form};
use harrison::scalars::{rat, Coeff, FieldElement, FieldRef, NumberField, Rational};
use harrison::symtensor::SymTensor;
use harrison::unipoly::{factor_q, UniPoly};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type PropResult = Result<(), TestCaseError>;

/// A named property checked on `cases` seeded random instances.
pub struct Property {
    pub name: &'static str,
    pub cases: u32,
    pub check: fn(&mut ChaCha8Rng) -> PropResult,
}

/// Run `p` through a proptest runner with a fixed seed; returns the case count.
pub fn run_property(p: &Property, seed: u8) -> Result<u32, String> {
    let config = Config { cases: p.cases, failure_persistence: None, ..Config::default() };
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    let mut runner = TestRunner::new_with_rng(config, rng);
    let check = p.check;
    runner
        .run(&any::<u64>(), |s| check(&mut ChaCha8Rng::seed_from_u64(s)))
        .map(|_| p.cases)
        .map_err(|e| format!("{}: {e}", p.name))
}

// ---------------------------------------------------------------------------
// generators

pub fn fe(k: i64) -> FieldElement {
    FieldElement::from_int(k)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn test_fields() -> Vec<FieldRef> {
    vec![
        NumberField::rationals(),
        NumberField::new(UniPoly::from_ints(&[-3, 0, 1])).unwrap(),
        NumberField::new(UniPoly::from_ints(&[-2, 0, 0, 1])).unwrap(),
    ]
}

pub fn random_element(rng: &mut ChaCha8Rng, k: &FieldRef) -> FieldElement {
    k.element((0..k.degree()).map(|_| small_rational(rng)).collect())
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> ExactMatrix {
    ExactMatrix::from_rows((0..n).map(|_| (0..n).map(|_| fe(rng.gen_range(-bound..=bound))).collect()).collect())
}

/// Random matrix with prescribed Jordan-like structure, conjugated by a random
/// invertible matrix so minimal polynomials are nontrivial.
pub fn random_structured_matrix(rng: &mut ChaCha8Rng, n: usize) -> ExactMatrix {
    let mut j = ExactMatrix::zeros(n, n);
    let mut i = 0;
    while i < n {
        let lambda = fe(rng.gen_range(-2..=2));
        j.set(i, i, lambda.clone());
        if i + 1 < n && rng.gen_bool(0.4) {
            j.set(i + 1, i + 1, lambda);
            j.set(i, i + 1, fe(1));
            i += 2;
        } else if i + 1 < n && rng.gen_bool(0.3) {
            // companion block of t^2 - 2
            j.set(i, i, fe(0));
            j.set(i, i + 1, fe(2));
            j.set(i + 1, i, fe(1));
            i += 2;
        } else {
            i += 1;
        }
    }
    let p = random_invertible(rng, n, 2);
    p.mul(&j).mul(&p.inverse().unwrap())
}

pub fn random_form(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Form {
    let terms = rng.gen_range(1..=monomials(n, d).len().min(8));
    let f = random_sparse_with(rng, n, d, terms);
    let c = FieldElement::from_rational(small_rational(rng));
    if c.is_zero() {
        f
    } else {
        f.scale(&c)
    }
}

fn diagonal_form(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Form {
    let mut f = Form::zero(n, d);
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = d as u32;
        let c = loop {
            let c = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        f.add_term(e, &fe(c));
    }
    f
}

/// Nondegenerate form with a center that is often larger than the scalars:
/// dense random, orthogonal sums, LDS forms or diagonal forms, optionally
/// disguised by a random change of variables.
pub fn interesting_form(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Form {
    let f = match rng.gen_range(0..4) {
        0 => random_nondegenerate(rng, n, d),
        1 if n >= 2 => {
            let k = rng.gen_range(1..n);
            orthogonal_sum(&[random_nondegenerate(rng, k, d), random_nondegenerate(rng, n - k, d)])
        }
        2 if n >= 2 => random_lds(rng, n, d),
        _ => diagonal_form(rng, n, d),
    };
    if rng.gen_bool(0.5) {
        f.substitute_linear(&random_invertible(rng, n, 2)).unwrap()
    } else {
        f
    }
}

pub fn random_unipoly_factor(rng: &mut ChaCha8Rng) -> UniPoly {
    if rng.gen_bool(0.5) {
        UniPoly::linear_root(&small_rational(rng))
    } else {
        UniPoly::from_ints(&[rng.gen_range(-5..=5), rng.gen_range(-3..=3), 1])
    }
}

fn vecs(ms: &[ExactMatrix]) -> Vec<Vector> {
    ms.iter().map(ExactMatrix::vec).collect()
}

fn combo(basis: &[ExactMatrix], coeffs: &[FieldElement]) -> ExactMatrix {
    let n = basis[0].rows();
    basis.iter().zip(coeffs).fold(ExactMatrix::zeros(n, n), |acc, (b, c)| acc.add(&b.scale(c)))
}

fn check_err<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

// ---------------------------------------------------------------------------
// oracles

/// Center from `H X` symmetric, solved coefficient-wise in the entries of the
/// Hessian; independent of the tensor slices and the Kronecker system.
pub fn hessian_oracle_center(f: &Form) -> Vec<ExactMatrix> {
    let n = f.n();
    if n == 1 {
        return vec![ExactMatrix::identity(1)];
    }
    let h = f.hessian();
    let monos = monomials(n, f.degree() - 2);
    let mut rows: Vec<Vector> = Vec::new();
    // (H X)_{ij} = sum_k H_ik X_kj; unknown X_kj sits at column k * n + j
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for m in &monos {
                let mut row = vec![fe(0); n * n];
                for k in 0..n {
                    let a = h.get(i, k).coeff(m);
                    row[k * n + j] = row[k * n + j].add(&a);
                    let b = h.get(j, k).coeff(m);
                    row[k * n + i] = row[k * n + i].sub(&b);
                }
                rows.push(row);
            }
        }
    }
    let sol = ExactMatrix::from_rows(rows).nullspace();
    sol.iter()
        .map(|v| {
            let mut x = ExactMatrix::zeros(n, n);
            for k in 0..n {
                for j in 0..n {
                    x.set(k, j, v[k * n + j].clone());
                }
            }
            x
        })
        .collect()
}

/// Nilpotent elements among small integer combinations of `basis`.
pub fn brute_force_nilpotents(basis: &[ExactMatrix]) -> Vec<ExactMatrix> {
    let k = basis.len();
    let n = basis[0].rows();
    let mut out = Vec::new();
    let mut c = vec![-2i64; k];
    loop {
        if c.iter().any(|&x| x != 0) {
            let coeffs: Vec<FieldElement> = c.iter().map(|&x| fe(x)).collect();
            let x = combo(basis, &coeffs);
            if x.pow(n as u32).is_zero() {
                out.push(x);
            }
        }
        let mut i = 0;
        while i < k && c[i] == 2 {
            c[i] = -2;
            i += 1;
        }
        if i == k {
            break;
        }
        c[i] += 1;
    }
    out
}

/// Independent Krylov test: `I, M, .., M^(k-1)` are linearly independent.
pub fn powers_independent(m: &ExactMatrix, k: usize) -> bool {
    let n = m.rows();
    let mut rs = RowSpace::new(n * n);
    let mut p = ExactMatrix::identity(n);
    for _ in 0..k {
        if !rs.insert(&p.vec()) {
            return false;
        }
        p = p.mul(m);
    }
    true
}

// ---------------------------------------------------------------------------
// scalars

fn p_field_axioms(rng: &mut ChaCha8Rng) -> PropResult {
    let fields = test_fields();
    let k = &fields[rng.gen_range(0..fields.len())];
    let (x, y, z) = (random_element(rng, k), random_element(rng, k), random_element(rng, k));
    prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
    prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
    prop_assert_eq!(x.mul(&y), y.mul(&x));
    if !x.is_zero() {
        prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        prop_assert_eq!(x.mul(&y).div(&x).unwrap(), y.clone());
    }
    prop_assert_eq!(&k.element(k.coordinates(&x)), &x);
    Ok(())
}

fn p_rational_embedding(rng: &mut ChaCha8Rng) -> PropResult {
    let fields = test_fields();
    let k = &fields[1 + rng.gen_range(0..2)];
    let (a, b) = (small_rational(rng), small_rational(rng));
    let ea = |r: &Rational| {
        let mut c = vec![Rational::zero(); k.degree()];
        c[0] = r.clone();
        k.element(c)
    };
    prop_assert_eq!(ea(&(&a + &b)), ea(&a).add(&ea(&b)));
    prop_assert_eq!(ea(&(&a * &b)), ea(&a).mul(&ea(&b)));
    let alpha = k.generator();
    prop_assert_eq!(ea(&a).add(&alpha).sub(&alpha), FieldElement::from_rational(a.clone()));
    Ok(())
}

// ---------------------------------------------------------------------------
// unipoly

fn p_factor_round_trip(rng: &mut ChaCha8Rng) -> PropResult {
    let mut p = UniPoly::constant(rat(rng.gen_range(1..=5), 1));
    while p.degree().unwrap_or(0) < rng.gen_range(1..=10) {
        let f = random_unipoly_factor(rng);
        if p.degree().unwrap_or(0) + f.degree().unwrap() > 10 {
            break;
        }
        p = p.mul(&f);
    }
    if p.degree() == Some(0) {
        p = p.mul(&random_unipoly_factor(rng));
    }
    let factors = check_err(factor_q(&p))?;
    let mut prod = UniPoly::one();
    for (f, m) in &factors {
        prop_assert!(f.leading().is_one());
        prod = prod.mul(&f.pow(*m as u32));
    }
    prop_assert_eq!(prod, p.monic());
    let sf = check_err(p.is_squarefree())?;
    prop_assert_eq!(sf, factors.iter().all(|(_, m)| *m == 1));
    Ok(())
}

fn p_gcd(rng: &mut ChaCha8Rng) -> PropResult {
    let c = random_unipoly_factor(rng);
    let u = random_unipoly_factor(rng).mul(&random_unipoly_factor(rng));
    let v = random_unipoly_factor(rng);
    let (a, b) = (c.mul(&u), c.mul(&v));
    let g = check_err(a.gcd(&b))?;
    prop_assert!(check_err(a.rem(&g))?.is_zero());
    prop_assert!(check_err(b.rem(&g))?.is_zero());
    prop_assert!(check_err(g.rem(&c))?.is_zero());
    let (g2, s, t) = a.ext_gcd(&b);
    prop_assert_eq!(s.mul(&a).add(&t.mul(&b)), g2);
    Ok(())
}

// ---------------------------------------------------------------------------
// multipoly

fn p_substitution_functorial(rng: &mut ChaCha8Rng) -> PropResult {
    let n = rng.gen_range(1..=3);
    let d = rng.gen_range(3..=4);
    let f = random_form(rng, n, d);
    let p = random_invertible(rng, n, 2);
    let q = random_invertible(rng, n, 2);
    let lhs = check_err(check_err(f.substitute_linear(&p))?.substitute_linear(&q))?;
    prop_assert_eq!(lhs, check_err(f.substitute_linear(&p.mul(&q)))?);
    prop_assert_eq!(check_err(f.substitute_linear(&ExactMatrix::identity(n)))?, f);
    Ok(())
}

fn p_print_parse(rng: &mut ChaCha8Rng) -> PropResult {
    let n = rng.gen_range(1..=4);
    let d = rng.gen_range(3..=5);
    let f = random_form(rng, n, d);
    prop_assert_eq!(check_err(parse_form(&f.to_string(), n))?, f);
    Ok(())
}

fn p_hessian_euler(rng: &mut ChaCha8Rng) -> PropResult {
    let n = rng.gen_range(1..=4);
    let d = rng.gen_range(3..=5);
    let f = random_form(rng, n, d);
    prop_assert!(f.hessian().is_symmetric());
    prop_assert!(f.euler_check());
    Ok(())
}

// ---------------------------------------------------------------------------
// symtensor

fn p_tensor_round_trip(rng: &mut ChaCha8Rng) -> PropResult {
    let n = rng.gen_range(1..=4);
    let d = rng.gen_range(3..=5);
    let f = random_form(rng, n, d);
    prop_assert_eq!(SymTensor::from_form(&f).to_form(), f);
    Ok(())
}

fn p_congruence(rng: &mut ChaCha8Rng) -> PropResult {
    let n = rng.gen_range(1..=3);
    let d = rng.gen_range(3..=4);
    let f = random_form(rng, n, d);
    let a = SymTensor::from_form(&f);
    let p = random_matrix(rng, n, 2);
    let q = random_matrix(rng, n, 2);
    prop_assert_eq!(a.d_congruence(&p).d_congruence(&q), a.d_congruence(&p.mul(&q)));
    prop_assert_eq!(a.d_congruence(&p), a.d_congruence_via_form(&p));
    let inv = random_invertible(rng, n, 2);
    prop_assert_eq!(a.d_congruence(&inv).essential_rank(), a.essential_rank());
    Ok(())
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    (0..n).map(|_| FieldElement::from_rational(small_rational(rng))).collect()
}

fn p_theta(rng: &mut ChaCha8Rng) -> PropResult {
    let n = rng.gen_range(1..=3);
    let d = rng.gen_range(3..=4);
    let f = random_form(rng, n, d);
    let a = SymTensor::from_form(&f);
    let mut vs: Vec<Vector> = (0..d).map(|_| random_vector(rng, n)).collect();
    let t = a.theta_eval(&vs);
    vs.swap(0, d - 1);
    vs.rotate_left(1);
    prop_assert_eq!(a.theta_eval(&vs), t);
    let x = random_vector(rng, n);
    prop_assert_eq!(a.theta_eval(&vec![x.clone(); d]), f.evaluate(&x));
    // theta(u, x, .., x) = (1/d) sum_i u_i df/dx_i (x)
    let u = random_vector(rng, n);
    let mut args = vec![x.clone(); d];
    args[0] = u.clone();
    let grad = f.gradient();
    let rhs = (0..n)
        .fold(fe(0), |acc, i| acc.add(&u[i].mul(&grad[i].evaluate(&x))))
        .div(&fe(d as i64))
        .unwrap();
    prop_assert_eq!(a.theta_eval(&args), rhs);
    Ok(())
}

// ---------------------------------------------------------------------------
// exactlinalg

fn p_minpoly(rng: &mut ChaCha8Rng) -> PropResult {
    let n = rng.gen_range(1..=4);
    let m = if rng.gen_bool(0.5) { random_structured_matrix(rng, n) } else { random_matrix(rng, n, 3) };
    let p = minimal_polynomial(&m);
    prop_assert!(p.leading().is_one());
    prop_assert!(m.eval_poly(&p).is_zero());
    prop_assert!(powers_independent(&m, p.degree().unwrap()));
    Ok(())
}

fn p_semisimple_part(rng: &mut ChaCha8Rng) -> PropResult {
    let n = rng.gen_range(1..=4);
    let m = random_structured_matrix(rng, n);
    let s = semisimple_part(&m);
    prop_assert!(s.commutes_with(&m));
    prop_assert!(check_err(minimal_polynomial(&s).is_squarefree())?);
    prop_assert!(m.sub(&s).pow(n as u32).is_zero());
    let powers: Vec<Vector> = (0..n as u32).map(|k| m.pow(k).vec()).collect();
    let mut rs = RowSpace::new(n * n);
    for p in &powers {
        rs.insert(p);
    }
    prop_assert!(rs.contains(&s.vec()));
    Ok(())
}

fn p_rref(rng: &mut ChaCha8Rng) -> PropResult {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=5);
    let mut m = ExactMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(0.6) {
                m.set(i, j, FieldElement::from_rational(small_rational(rng)));
            }
        }
    }
    let (r, rank, _) = m.rref();
    prop_assert_eq!(r.rref().0, r.clone());
    let ns = m.nullspace();
    prop_assert_eq!(ns.len(), cols - rank);
    for v in &ns {
        prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
    }
    Ok(())
}

fn p_split(rng: &mut ChaCha8Rng) -> PropResult {
    let sizes: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..=2)).collect();
    let n: usize = sizes.iter().sum();
    let p = random_invertible(rng, n, 2);
    let pinv = p.inverse().unwrap();
    let family: Vec<ExactMatrix> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut m = ExactMatrix::zeros(n, n);
            let mut at = 0;
            for &s in &sizes {
                let a = fe(rng.gen_range(-2..=2));
                if s == 1 {
                    m.set(at, at, a);
                } else {
                    let b = fe(rng.gen_range(-1..=1));
                    m.set(at, at, a.clone());
                    m.set(at + 1, at + 1, a);
                    m.set(at, at + 1, b.mul(&fe(2)));
                    m.set(at + 1, at, b);
                }
                at += s;
            }
            p.mul(&m).mul(&pinv)
        })
        .collect();
    let split = check_err(simultaneous_split_over(&family, &NumberField::rationals()))?;
    let all: Vec<Vector> = split.blocks.iter().flatten().cloned().collect();
    prop_assert_eq!(all.len(), n);
    prop_assert_eq!(ExactMatrix::from_columns(n, &all).rank(), n);
    for block in &split.blocks {
        for m in &family {
            for v in block {
                prop_assert!(same_span(block, &[block.clone(), vec![m.mul_vec(v)]].concat()));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// center

fn random_center(rng: &mut ChaCha8Rng) -> Result<(Form, CenterAlgebra), TestCaseError> {
    let n = rng.gen_range(1..=4);
    let d = if n <= 3 { rng.gen_range(3..=4) } else { 3 };
    let f = interesting_form(rng, n, d);
    let z = check_err(center_basis(&SymTensor::from_form(&f)))?;
    Ok((f, z))
}

fn p_center_membership(rng: &mut ChaCha8Rng) -> PropResult {
    let (f, z) = random_center(rng)?;
    let a = SymTensor::from_form(&f);
    let h = f.hessian();
    for x in &z.basis {
        prop_assert!(check_all_slices(&a, x).is_ok());
        prop_assert!(h.mul_constant(x).is_symmetric());
    }
    Ok(())
}

fn p_center_algebra(rng: &mut ChaCha8Rng) -> PropResult {
    let (f, z) = random_center(rng)?;
    let n = f.n();
    prop_assert!(z.contains(&ExactMatrix::identity(n)));
    for x in &z.basis {
        for y in &z.basis {
            prop_assert!(x.commutes_with(y));
            prop_assert!(z.contains(&x.mul(y)));
        }
    }
    let b = build_center_system(&SymTensor::from_form(&f));
    prop_assert_eq!(z.dim + b.rank(), n * n);
    prop_assert!(z.radical_basis.iter().all(|r| z.contains(r)));
    Ok(())
}

fn p_center_covariance(rng: &mut ChaCha8Rng) -> PropResult {
    let (f, z) = random_center(rng)?;
    let p = random_invertible(rng, f.n(), 2);
    let pinv = p.inverse().unwrap();
    let g = check_err(f.substitute_linear(&p))?;
    let zg = check_err(center_basis(&SymTensor::from_form(&g)))?;
    let moved: Vec<ExactMatrix> = z.basis.iter().map(|x| pinv.mul(x).mul(&p)).collect();
    prop_assert!(same_span(&vecs(&zg.basis), &vecs(&moved)));
    Ok(())
}

fn p_center_base_change(rng: &mut ChaCha8Rng) -> PropResult {
    let n = rng.gen_range(1..=3);
    let f = interesting_form(rng, n, 3);
    let z = check_err(center_basis(&SymTensor::from_form(&f)))?;
    let k = NumberField::new(UniPoly::from_ints(&[-2, 0, 1])).unwrap();
    let alpha = k.generator();
    // alpha * f(P y) with P = I + alpha N for a random integer N, kept invertible
    let mut p;
    loop {
        p = ExactMatrix::identity(n).add(&random_matrix(rng, n, 1).scale(&alpha));
        if !p.det().is_zero() {
            break;
        }
    }
    let g = check_err(f.substitute_linear(&p))?.scale(&alpha);
    let zg = check_err(center_basis(&SymTensor::from_form(&g)))?;
    prop_assert!(!zg.field.is_rationals());
    prop_assert_eq!(zg.dim, z.dim);
    Ok(())
}

fn p_orthogonal_sum_bound(rng: &mut ChaCha8Rng) -> PropResult {
    let d = rng.gen_range(3..=4);
    let (n1, n2) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
    let f1 = interesting_form(rng, n1, d);
    let f2 = interesting_form(rng, n2, d);
    let dim = |f: &Form| center_basis(&SymTensor::from_form(f)).map(|z| z.dim);
    let s = orthogonal_sum(&[f1.clone(), f2.clone()]);
    prop_assert!(check_err(dim(&s))? >= check_err(dim(&f1))? + check_err(dim(&f2))?);
    Ok(())
}

fn p_trace_form_vs_nilpotents(rng: &mut ChaCha8Rng) -> PropResult {
    let (_, z) = random_center(rng)?;
    if z.dim > 4 {
        return Ok(());
    }
    let n = z.n;
    for r in &z.radical_basis {
        prop_assert!(r.pow(n as u32).is_zero());
    }
    let rad: Vec<Vector> = vecs(&z.radical_basis);
    for x in brute_force_nilpotents(&z.basis) {
        prop_assert!(!rad.is_empty());
        prop_assert!(same_span(&rad, &[rad.clone(), vec![x.vec()]].concat()));
    }
    prop_assert_eq!(z.is_semisimple, z.radical_basis.is_empty());
    Ok(())
}

// ---------------------------------------------------------------------------
// decompose

fn p_idempotents(rng: &mut ChaCha8Rng) -> PropResult {
    let (f, z) = random_center(rng)?;
    let n = f.n();
    let sys = check_err(primitive_idempotents(&z, ExtendPolicy::Never))?;
    let mut sum = ExactMatrix::zeros(n, n);
    for (i, e) in sys.idempotents.iter().enumerate() {
        prop_assert_eq!(e.mul(e), e.clone());
        prop_assert!(z.contains(e));
        for (j, g) in sys.idempotents.iter().enumerate() {
            if i != j {
                prop_assert!(e.mul(g).is_zero());
            }
        }
        sum = sum.add(e);
        // primitive: the semisimple family restricted to the image splits no further
        let image: Vec<Vector> = {
            let (_, _, piv) = e.rref();
            piv.iter().map(|&c| e.column(c)).collect()
        };
        let family: Vec<ExactMatrix> =
            z.basis.iter().map(|b| harrison::exactlinalg::restrict(&semisimple_part(b), &image)).collect();
        let s = check_err(simultaneous_split_over(&family, &sys.field))?;
        prop_assert_eq!(s.blocks.len(), 1);
    }
    prop_assert!(sum.is_identity());
    Ok(())
}

fn p_summands(rng: &mut ChaCha8Rng) -> PropResult {
    let (f, _) = random_center(rng)?;
    let d = check_err(decompose_form(&f, ExtendPolicy::Never))?;
    prop_assert!(d.verified);
    for k in 0..d.summands.len() {
        let s = d.local_summand(k);
        prop_assert_eq!(SymTensor::from_form(&s).essential_rank(), s.n());
    }
    match decompose_form(&f, ExtendPolicy::Auto) {
        Ok(split) => {
            for k in 0..split.summands.len() {
                let s = split.local_summand(k);
                let z = check_err(center_basis(&SymTensor::from_form(&s)))?;
                if z.is_semisimple {
                    prop_assert_eq!(check_err(decompose_form(&s, ExtendPolicy::Never))?.summands.len(), 1);
                    prop_assert_eq!(z.dim, 1);
                }
            }
        }
        Err(DecomposeError::TowerRequired { .. }) => {}
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    }
    Ok(())
}

/// Central part of dimension `k` and degree `d`, found by resampling.
pub fn random_central(rng: &mut ChaCha8Rng, k: usize, d: usize) -> Form {
    for _ in 0..100 {
        let f = if k == 1 { diagonal_form(rng, 1, d) } else { random_nondegenerate(rng, k, d) };
        if center_basis(&SymTensor::from_form(&f)).unwrap().dim == 1 {
            return f;
        }
    }
    panic!("no central form found for k = {k}, d = {d}");
}

fn p_uniqueness(rng: &mut ChaCha8Rng) -> PropResult {
    let d = rng.gen_range(3..=4);
    let sizes: Vec<usize> = (0..rng.gen_range(2..=3)).map(|_| if rng.gen_bool(0.5) { 1 } else { 3 }).collect();
    let parts: Vec<Form> = sizes.iter().map(|&k| random_central(rng, k, d)).collect();
    let f = orthogonal_sum(&parts);
    let f = check_err(f.substitute_linear(&random_invertible(rng, f.n(), 1)))?;
    let dec = check_err(decompose_form(&f, ExtendPolicy::Never))?;
    let mut got: Vec<usize> = dec.blocks.iter().map(Vec::len).collect();
    let mut want = sizes.clone();
    got.sort();
    want.sort();
    prop_assert_eq!(got, want);
    Ok(())
}

fn p_lds_round_trip(rng: &mut ChaCha8Rng) -> PropResult {
    let n = rng.gen_range(2..=4);
    let d = rng.gen_range(3..=4);
    let f = random_lds(rng, n, d);
    let f = check_err(f.substitute_linear(&random_invertible(rng, n, 1)))?;
    let w = check_err(lds_witness(&f))?;
    prop_assert!(w.verified);
    prop_assert!(2 * w.l <= n);
    prop_assert_eq!(w.reconstruct(), check_err(f.substitute_linear(&w.matrix))?);
    Ok(())
}

// ---------------------------------------------------------------------------
// jacobian

fn p_lift_linear(rng: &mut ChaCha8Rng) -> PropResult {
    let (f, z) = random_center(rng)?;
    let n = f.n();
    let pick = |rng: &mut ChaCha8Rng| {
        let c: Vec<FieldElement> = (0..z.dim).map(|_| fe(rng.gen_range(-2..=2))).collect();
        combo(&z.basis, &c)
    };
    let (a, b) = (pick(rng), pick(rng));
    let la = check_err(lift_gradient(&f, &a))?;
    let lb = check_err(lift_gradient(&f, &b))?;
    prop_assert_eq!(check_err(lift_gradient(&f, &a.add(&b)))?, la.add(&lb));
    let grad = f.gradient();
    for (i, gi) in la.gradient().iter().enumerate() {
        let want = (0..n).fold(Form::zero(n, f.degree() - 1), |acc, j| acc.add(&grad[j].scale(a.get(j, i))));
        prop_assert_eq!(gi, &want);
    }
    Ok(())
}

fn p_reconstruction(rng: &mut ChaCha8Rng) -> PropResult {
    let (f, z) = random_center(rng)?;
    let r = check_err(is_reconstructible(&f))?;
    prop_assert_eq!(r.reconstructible, z.dim == 1);
    if let Some(g) = &r.counterexample {
        prop_assert!(check_err(gradient_space_equal(&f, g))?);
        prop_assert!(!check_err(proportional(&f, g))?);
    }
    Ok(())
}

pub const PROPERTIES: &[Property] = &[
    Property { name: "scalars: field axioms and canonical form", cases: 120, check: p_field_axioms },
    Property { name: "scalars: Q embeds homomorphically", cases: 60, check: p_rational_embedding },
    Property { name: "unipoly: factor product round trip and squarefree test", cases: 80, check: p_factor_round_trip },
    Property { name: "unipoly: gcd divisibility and Bezout", cases: 60, check: p_gcd },
    Property { name: "multipoly: substitution functoriality", cases: 60, check: p_substitution_functorial },
    Property { name: "multipoly: print/parse round trip", cases: 100, check: p_print_parse },
    Property { name: "multipoly: Hessian symmetry and Euler identity", cases: 60, check: p_hessian_euler },
    Property { name: "symtensor: form round trip", cases: 60, check: p_tensor_round_trip },
    Property { name: "symtensor: congruence functoriality and rank invariance", cases: 50, check: p_congruence },
    Property { name: "symtensor: theta symmetry, recovery and gradient identity", cases: 50, check: p_theta },
    Property { name: "exactlinalg: minimal polynomial", cases: 60, check: p_minpoly },
    Property { name: "exactlinalg: semisimple part", cases: 60, check: p_semisimple_part },
    Property { name: "exactlinalg: rref idempotence and nullspace", cases: 60, check: p_rref },
    Property { name: "exactlinalg: simultaneous split blocks", cases: 40, check: p_split },
    Property { name: "center: slice and Hessian membership", cases: 40, check: p_center_membership },
    Property { name: "center: unital commutative algebra, dim + rank = n^2", cases: 40, check: p_center_algebra },
    Property { name: "center: conjugation covariance", cases: 30, check: p_center_covariance },
    Property { name: "center: dimension stable under base change", cases: 15, check: p_center_base_change },
    Property { name: "center: orthogonal sum lower bound", cases: 30, check: p_orthogonal_sum_bound },
    Property { name: "center: trace form vs brute-force nilpotents", cases: 40, check: p_trace_form_vs_nilpotents },
    Property { name: "decompose: idempotent laws and primitivity", cases: 30, check: p_idempotents },
    Property { name: "decompose: summands nondegenerate and indecomposable", cases: 30, check: p_summands },
    Property { name: "decompose: block sizes unique up to order", cases: 25, check: p_uniqueness },
    Property { name: "decompose: LDS witness round trip", cases: 30, check: p_lds_round_trip },
    Property { name: "jacobian: lift linearity and gradient", cases: 30, check: p_lift_linear },
    Property { name: "jacobian: reconstructible iff central", cases: 30, check: p_reconstruction },
];
