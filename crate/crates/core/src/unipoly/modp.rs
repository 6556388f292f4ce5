//! Polynomials over a small prime field, used only inside factorization.
//!
//! Coefficients are `u64` residues, lowest degree first, trimmed.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub(crate) type Pp = Vec<u64>;

fn trim(mut a: Pp) -> Pp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn add(a: &Pp, b: &Pp, p: u64) -> Pp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub(crate) fn sub(a: &Pp, b: &Pp, p: u64) -> Pp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub(crate) fn mul(a: &Pp, b: &Pp, p: u64) -> Pp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &Pp, c: u64, p: u64) -> Pp {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub(crate) fn divrem(a: &Pp, d: &Pp, p: u64) -> (Pp, Pp) {
    assert!(!d.is_empty(), "division by zero polynomial mod p");
    let dd = d.len() - 1;
    if a.len() <= dd {
        return (Vec::new(), a.clone());
    }
    let li = inv_mod(d[dd], p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd] * li % p;
        if c == 0 {
            continue;
        }
        for (j, &dj) in d.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * dj % p) % p;
        }
        q[k] = c;
    }
    r.truncate(dd);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &Pp, d: &Pp, p: u64) -> Pp {
    divrem(a, d, p).1
}

pub(crate) fn monic(a: &Pp, p: u64) -> Pp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

pub(crate) fn gcd(a: &Pp, b: &Pp, p: u64) -> Pp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s a + t b = g` monic.
pub(crate) fn ext_gcd(a: &Pp, b: &Pp, p: u64) -> (Pp, Pp, Pp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let li = inv_mod(*r0.last().expect("not both zero"), p);
    (scale(&r0, li, p), scale(&s0, li, p), scale(&t0, li, p))
}

pub(crate) fn derivative(a: &Pp, p: u64) -> Pp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

pub(crate) fn is_squarefree(a: &Pp, p: u64) -> bool {
    let g = gcd(a, &derivative(a, p), p);
    g.len() == 1
}

fn powmod_big(base: &Pp, e: &BigUint, f: &Pp, p: u64) -> Pp {
    let mut acc: Pp = vec![1];
    let b = rem(base, f, p);
    for i in (0..e.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), f, p);
        if e.bit(i) {
            acc = rem(&mul(&acc, &b, p), f, p);
        }
    }
    acc
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &Pp, p: u64) -> Vec<(Pp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Pp = vec![0, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut i = 0;
    while f.len() > 1 {
        i += 1;
        if 2 * i > f.len() - 1 {
            out.push((f.clone(), f.len() - 1));
            break;
        }
        h = powmod_big(&h, &pb, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            out.push((g.clone(), i));
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
    }
    out
}

/// Cantor-Zassenhaus split of a product of distinct irreducibles of degree `d`.
fn equal_degree(f: &Pp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Pp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Pp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let g = gcd(&a, f, p);
        let split = if g.len() > 1 && g.len() < f.len() {
            g
        } else {
            let b = sub(&powmod_big(&a, &e, f, p), &vec![1], p);
            let g = gcd(&b, f, p);
            if g.len() <= 1 || g.len() == f.len() {
                continue;
            }
            g
        };
        let other = divrem(f, &split, p).0;
        let mut out = equal_degree(&split, d, p, rng);
        out.extend(equal_degree(&monic(&other, p), d, p, rng));
        return out;
    }
}

/// Monic irreducible factors of a monic squarefree polynomial over `F_p`, `p` odd.
pub(crate) fn factor_squarefree(f: &Pp, p: u64, rng: &mut ChaCha8Rng) -> Vec<Pp> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_multiply_back() {
        let p = 7;
        // (t+1)(t+2)(t^2+1)  over F_7; t^2+1 irreducible since -1 is not a square mod 7
        let f = mul(&mul(&vec![1, 1], &vec![2, 1], p), &vec![1, 0, 1], p);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = factor_squarefree(&f, p, &mut rng);
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(vec![1u64], |acc, g| mul(&acc, g, p));
        assert_eq!(prod, f);
    }

    #[test]
    fn bezout_mod_p() {
        let p = 11;
        let a = vec![3, 0, 1];
        let b = vec![5, 1];
        let (g, s, t) = ext_gcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), vec![1]);
    }
}
