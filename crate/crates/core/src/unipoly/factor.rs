//! Factorization over Q: squarefree decomposition, rational-root stripping,
//! then modular factorization, Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, Pp};
use super::{PolyError, UniPoly};

type Zp = Vec<BigInt>;

/// Factor into monic irreducibles over Q with multiplicities.
///
/// The product of `f^m` over the output equals `p` up to its leading coefficient.
/// Constants factor as the empty list.
pub fn factor_q(p: &UniPoly) -> Result<Vec<(UniPoly, usize)>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition()? {
        for f in factor_squarefree(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|(a, ma), (b, mb)| {
        (a.degree(), a.coeffs(), ma).cmp(&(b.degree(), b.coeffs(), mb))
    });
    Ok(out)
}

fn eval_int(f: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    // den^deg * f(num/den)
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    for c in f.iter().rev() {
        acc = acc * num + c * &den_pow;
        den_pow *= den;
    }
    acc
}

fn small_divisors(k: &BigInt, limit: u64) -> Option<Vec<BigInt>> {
    let v = k.abs().to_u64()?;
    if v > limit {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= v {
        if v % i == 0 {
            out.push(BigInt::from(i));
            if i * i != v {
                out.push(BigInt::from(v / i));
            }
        }
        i += 1;
    }
    Some(out)
}

fn int_divides(f: &Zp, g: &Zp) -> Option<Zp> {
    // exact division over Z, g with nonzero leading coefficient
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let lg = g.last().unwrap();
    let mut r = f.clone();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for k in (0..q.len()).rev() {
        let (c, m) = r[k + dg].div_rem(lg);
        if !m.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, gj) in g.iter().enumerate() {
            r[k + j] -= &c * gj;
        }
        q[k] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn primitive(mut f: Zp) -> Zp {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    let mut g = BigInt::zero();
    for c in &f {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return f;
    }
    if f.last().unwrap().is_negative() {
        g = -g;
    }
    f.into_iter().map(|c| c / &g).collect()
}

fn to_monic_q(f: &Zp) -> UniPoly {
    UniPoly::from_bigints(f).monic()
}

/// Irreducible monic factors of a monic squarefree rational polynomial.
fn factor_squarefree(p: &UniPoly) -> Vec<UniPoly> {
    let mut f = p.primitive_integer();
    let mut out = Vec::new();
    if f.len() <= 2 {
        return vec![p.monic()];
    }
    if f[0].is_zero() {
        out.push(UniPoly::from_ints(&[0, 1]));
        f.remove(0);
    }
    strip_rational_roots(&mut f, &mut out);
    match f.len() {
        0 | 1 => {}
        2 => out.push(to_monic_q(&f)),
        _ => {
            for g in zassenhaus(&f) {
                out.push(to_monic_q(&g));
            }
        }
    }
    out
}

const ROOT_SEARCH_LIMIT: u64 = 1_000_000;

fn strip_rational_roots(f: &mut Zp, out: &mut Vec<UniPoly>) {
    let (Some(nums), Some(dens)) = (
        small_divisors(&f[0], ROOT_SEARCH_LIMIT),
        small_divisors(f.last().unwrap(), ROOT_SEARCH_LIMIT),
    ) else {
        return;
    };
    for den in &dens {
        for num in &nums {
            for sign in [1i32, -1] {
                if f.len() <= 2 {
                    return;
                }
                let num = num * BigInt::from(sign);
                if !num.gcd(den).is_one() {
                    continue;
                }
                if eval_int(f, &num, den).is_zero() {
                    let lin = vec![-num.clone(), den.clone()];
                    if let Some(q) = int_divides(f, &lin) {
                        out.push(to_monic_q(&lin));
                        *f = q;
                    }
                }
            }
        }
    }
}

fn primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
}

fn mod_p(f: &Zp, p: u64) -> Pp {
    let pb = BigInt::from(p);
    let mut v: Pp = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn mul_z(a: &Zp, b: &Zp) -> Zp {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn lift_pp(a: &Pp) -> Zp {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift `f ≡ g0 h0 (mod p)` with `f`, `g0`, `h0` monic to a factorization modulo `p^k`.
fn lift_two(f: &Zp, g0: &Pp, h0: &Pp, p: u64, k: u32) -> (Zp, Zp) {
    let (one, s, t) = modp::ext_gcd(g0, h0, p);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let mut g = lift_pp(g0);
    let mut h = lift_pp(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let gh = mul_z(&g, &h);
        let n = f.len().max(gh.len());
        let e: Pp = {
            let mut v: Pp = (0..n)
                .map(|i| {
                    let d = f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default();
                    let (q, r) = d.div_rem(&pj);
                    debug_assert!(r.is_zero());
                    q.mod_floor(&pb).to_u64().unwrap()
                })
                .collect();
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        if !e.is_empty() {
            let (q, r) = modp::divrem(&modp::mul(&s, &e, p), h0, p);
            let dg = modp::add(&modp::mul(&t, &e, p), &modp::mul(&q, g0, p), p);
            for (i, c) in dg.iter().enumerate() {
                g[i] += &pj * BigInt::from(*c);
            }
            for (i, c) in r.iter().enumerate() {
                h[i] += &pj * BigInt::from(*c);
            }
        }
        pj *= &pb;
    }
    (g, h)
}

fn hensel_lift(f: &Zp, factors: &[Pp], p: u64, k: u32) -> Vec<Zp> {
    let modulus = BigInt::from(p).pow(k);
    let lc = f.last().unwrap().mod_floor(&modulus);
    let lc_inv = lc.modinv(&modulus).expect("p does not divide the leading coefficient");
    let mut cur: Zp = f.iter().map(|c| (c * &lc_inv).mod_floor(&modulus)).collect();
    let mut out = Vec::new();
    for i in 0..factors.len() - 1 {
        let rest = factors[i + 1..].iter().fold(vec![1u64], |acc, g| modp::mul(&acc, g, p));
        let (g, h) = lift_two(&cur, &factors[i], &rest, p, k);
        out.push(g.into_iter().map(|c| c.mod_floor(&modulus)).collect());
        cur = h.into_iter().map(|c| c.mod_floor(&modulus)).collect();
    }
    out.push(cur);
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible primitive factors over Z of a primitive squarefree polynomial of degree >= 2.
fn zassenhaus(f: &Zp) -> Vec<Zp> {
    let n = f.len() - 1;
    let lc = f.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // Try a handful of good primes and keep the one with the fewest modular factors.
    let mut best: Option<(u64, Vec<Pp>)> = None;
    let mut tried = 0;
    for p in primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = mod_p(f, p);
        if fp.len() != f.len() || !modp::is_squarefree(&fp, p) {
            continue;
        }
        let fs = modp::factor_squarefree(&modp::monic(&fp, p), p, &mut rng);
        let better = best.as_ref().is_none_or(|(_, b)| fs.len() < b.len());
        if better {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, modular) = best.expect("some prime keeps the polynomial squarefree");
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    let max_coeff = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * BigInt::from(n + 1) * max_coeff;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let mut lifted = hensel_lift(f, &modular, p, k);

    let mut out = Vec::new();
    let mut cur = f.clone();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let lc_cur = cur.last().unwrap().clone();
        for subset in combinations(lifted.len(), size) {
            let mut cand: Zp = vec![lc_cur.clone()];
            for &i in &subset {
                cand = mul_z(&cand, &lifted[i]).iter().map(|c| c.mod_floor(&pk)).collect();
            }
            let cand = primitive(cand.iter().map(|c| sym_mod(c, &pk)).collect());
            if let Some(q) = int_divides(&cur, &cand) {
                out.push(cand);
                cur = primitive(q);
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    if cur.len() > 1 {
        out.push(cur);
    }
    out
}
