//! Linear algebra modulo word-sized primes and a multi-modular kernel over Q.
//!
//! The kernel routine only proposes candidates; callers check them exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalars::{Coeff, FieldElement, Rational};

/// Largest prime below `2^31`; products of residues fit in a `u64`.
pub const P0: u64 = 2_147_483_647;

fn mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut out = 1;
    while e > 0 {
        if e & 1 == 1 {
            out = mul(out, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    out
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn residue(k: &BigInt, p: u64) -> u64 {
    k.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

/// Primes below `2^31`, descending from [`P0`].
pub fn primes() -> impl Iterator<Item = u64> {
    (3..=P0).rev().filter(|&m| m % 2 == 1 && is_prime(m))
}

/// Image of a rational vector, or `None` for irrational entries and
/// denominators divisible by `p`.
pub fn reduce_vector(v: &[FieldElement], p: u64) -> Option<Vec<u64>> {
    v.iter()
        .map(|x| {
            let r = x.as_rational()?;
            let den = residue(r.denom(), p);
            (den != 0).then(|| mul(residue(r.numer(), p), inv(den, p), p))
        })
        .collect()
}

/// Row echelon basis over `F_p`, rows normalized at their pivots.
pub struct ModpRowSpace {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModpRowSpace {
    pub fn new(p: u64) -> Self {
        ModpRowSpace { p, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (c, row) in &self.rows {
            let f = v[*c];
            if f == 0 {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if *r != 0 {
                    *x = sub(*x, mul(f, *r, p), p);
                }
            }
        }
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let i = inv(v[c], p);
        for x in v.iter_mut() {
            *x = mul(*x, i, p);
        }
        self.rows.push((c, v));
        true
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let i = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul(*x, i, p);
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            let f = row[c];
            if k == r || f == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot) {
                if *y != 0 {
                    *x = sub(*x, mul(f, *y, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// `a / b` with `|a|, b <= sqrt(m / 2)` and `a = b x mod m`, if one exists.
fn rational_reconstruction(x: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Kernel basis of a rational matrix normalized by the reduced echelon form:
/// each vector is 1 at one free column and 0 at the others.
///
/// Candidates are reconstructed from images modulo successive primes and
/// returned as soon as `accept` approves them. The nullity modulo a prime is
/// at least the nullity over Q, so an accepted set with that many vectors
/// spans any subspace of the kernel that contains it. Returns `None` if the
/// rows are not rational or no candidate is accepted within `max_primes`.
pub fn rational_kernel(
    rows: &[Vec<FieldElement>],
    cols: usize,
    max_primes: usize,
    accept: impl Fn(&[Vec<FieldElement>]) -> bool,
) -> Option<Vec<Vec<FieldElement>>> {
    let mut reference: Option<Vec<usize>> = None;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut next_try = 1;
    for (used, p) in primes().take(max_primes).enumerate() {
        let Some(mut m) = rows.iter().map(|r| reduce_vector(r, p)).collect::<Option<Vec<_>>>() else {
            if rows.iter().any(|r| r.iter().any(|x| x.as_rational().is_none())) {
                return None;
            }
            continue;
        };
        let pivots = rref(&mut m, p);
        match &reference {
            Some(r) if *r != pivots => continue,
            Some(_) => {}
            None => reference = Some(pivots.clone()),
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let image: Vec<u64> = free
            .iter()
            .flat_map(|&f| (0..pivots.len()).map(move |i| (i, f)))
            .map(|(i, f)| sub(0, m[i][f], p))
            .collect();
        if residues.is_empty() {
            residues = image.iter().map(|&x| BigInt::from(x)).collect();
            modulus = BigInt::from(p);
        } else {
            // CRT: x = r + M * ((a - r) M^-1 mod p)
            let bp = BigInt::from(p);
            let minv = inv(residue(&modulus, p), p);
            for (r, &a) in residues.iter_mut().zip(&image) {
                let t = mul(sub(a, residue(r, p), p), minv, p);
                *r += &modulus * BigInt::from(t);
            }
            modulus *= bp;
        }
        if used + 1 < next_try {
            continue;
        }
        next_try = (used + 1) * 3 / 2 + 1;
        let Some(values) = residues.iter().map(|x| rational_reconstruction(x, &modulus)).collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let r = pivots.len();
        let basis: Vec<Vec<FieldElement>> = free
            .iter()
            .enumerate()
            .map(|(k, &f)| {
                let mut v = vec![FieldElement::zero(); cols];
                v[f] = FieldElement::one();
                for (i, &c) in pivots.iter().enumerate() {
                    v[c] = FieldElement::from_rational(values[k * r + i].clone());
                }
                v
            })
            .collect();
        if accept(&basis) {
            return Some(basis);
        }
    }
    None
}
