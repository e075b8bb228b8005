//! Factorization of squarefree primitive integer polynomials.
//!
//! A small odd prime with a squarefree reduction is chosen, the reduction is
//! split by distinct-degree and Cantor-Zassenhaus factorization, the factors
//! are Hensel lifted past a coefficient bound and then recombined by subsets.
//! Polynomials are coefficient vectors in ascending order without trailing
//! zeros.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Number of admissible primes compared before picking the one with the
/// fewest modular factors.
const PRIMES_TRIED: usize = 6;

type ZPoly = Vec<BigInt>;
type MPoly = Vec<u64>;

/// Irreducible factors of a squarefree primitive polynomial of positive
/// degree, each primitive with positive leading coefficient.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let mut f = f.to_vec();
    ztrim(&mut f);
    if f.last().is_some_and(|c| c.is_negative()) {
        f.iter_mut().for_each(|c| *c = -c.clone());
    }
    let n = f.len().saturating_sub(1);
    if n <= 1 {
        return vec![f];
    }
    let mut x_power = 0;
    while f[x_power].is_zero() {
        x_power += 1;
    }
    if x_power > 0 {
        // squarefree, so x divides f at most once
        let rest: ZPoly = f[x_power..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree(&rest));
        return out;
    }
    let (p, count) = match choose_prime(&f) {
        Some(v) => v,
        None => return vec![f],
    };
    if count == 1 {
        return vec![f];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let fp = reduce(&f, p);
    let mut modular = Vec::new();
    for (d, g) in distinct_degree(&monic(&fp, p), p) {
        equal_degree(&g, d, p, &mut rng, &mut modular);
    }
    let bound = coefficient_bound(&f);
    let mut k: u32 = 1;
    let mut m = BigInt::from(p);
    while m <= bound {
        m = &m * &m;
        k *= 2;
    }
    let lifted = hensel_tree(&f, &modular, p, k);
    recombine(f, lifted, &m)
}

fn ztrim(f: &mut ZPoly) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

fn mtrim(f: &mut MPoly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn reduce(f: &[BigInt], p: u64) -> MPoly {
    let pb = BigInt::from(p);
    let mut out: MPoly = f.iter().map(|c| c.mod_floor(&pb).to_u64().expect("small")).collect();
    mtrim(&mut out);
    out
}

/// First admissible primes; returns the one with the fewest factors and
/// that count.
fn choose_prime(f: &ZPoly) -> Option<(u64, usize)> {
    let n = f.len() - 1;
    let mut best: Option<(u64, usize)> = None;
    let mut found = 0;
    for p in (3u64..).step_by(2).filter(|&p| is_prime(p)).take(2000) {
        let fp = reduce(f, p);
        if fp.len() != n + 1 {
            continue;
        }
        let fp = monic(&fp, p);
        if mgcd(&fp, &deriv(&fp, p), p).len() != 1 {
            continue;
        }
        let count: usize = distinct_degree(&fp, p).iter().map(|(d, g)| (g.len() - 1) / d).sum();
        if best.is_none_or(|(_, c)| count < c) {
            best = Some((p, count));
        }
        found += 1;
        if count == 1 || found == PRIMES_TRIED {
            break;
        }
    }
    best
}

// Arithmetic in F_p[x]; p < 2^31 so products fit in u64.

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn monic(f: &MPoly, p: u64) -> MPoly {
    let inv = inv_mod(*f.last().expect("nonzero"), p);
    f.iter().map(|c| c * inv % p).collect()
}

fn deriv(f: &MPoly, p: u64) -> MPoly {
    let mut out: MPoly = f.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % p) * c % p).collect();
    mtrim(&mut out);
    out
}

fn msub(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = *c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = (out[i] + p - c) % p;
    }
    mtrim(&mut out);
    out
}

fn mmul(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    mtrim(&mut out);
    out
}

fn mdivrem(a: &MPoly, b: &MPoly, p: u64) -> (MPoly, MPoly) {
    let mut r = a.clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let inv = inv_mod(*b.last().expect("nonzero divisor"), p);
    let mut q = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * inv % p;
        q[shift] = c;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * y % p) % p;
        }
        mtrim(&mut r);
    }
    mtrim(&mut q);
    (q, r)
}

fn mrem(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    mdivrem(a, b, p).1
}

/// Monic gcd.
fn mgcd(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = mrem(&a, &b, p);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(&a, p)
    }
}

/// `(g, s, t)` with `s a + t b = g` and `g` monic.
fn mxgcd(a: &MPoly, b: &MPoly, p: u64) -> (MPoly, MPoly, MPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = mdivrem(&r0, &r1, p);
        let s2 = msub(&s0, &mmul(&q, &s1, p), p);
        let t2 = msub(&t0, &mmul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_mod(*r0.last().expect("nonzero"), p);
    let sc = |v: &MPoly| v.iter().map(|c| c * inv % p).collect::<MPoly>();
    (sc(&r0), sc(&s0), sc(&t0))
}

fn powmod_poly(base: &MPoly, e: &BigUint, f: &MPoly, p: u64) -> MPoly {
    let mut r: MPoly = vec![1];
    let b = mrem(base, f, p);
    for i in (0..e.bits()).rev() {
        r = mrem(&mmul(&r, &r, p), f, p);
        if e.bit(i) {
            r = mrem(&mmul(&r, &b, p), f, p);
        }
    }
    r
}

/// Pairs `(d, g)` where `g` is the product of the monic irreducible factors
/// of degree `d` of the monic squarefree `f`.
fn distinct_degree(f: &MPoly, p: u64) -> Vec<(usize, MPoly)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: MPoly = vec![0, 1];
    let pe = BigUint::from(p);
    let mut h = x.clone();
    let mut d = 0;
    while f.len() > 2 * (d + 1) {
        d += 1;
        h = powmod_poly(&h, &pe, &f, p);
        let g = mgcd(&msub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = mdivrem(&f, &g, p).0;
            h = mrem(&h, &f, p);
            out.push((d, g));
        }
    }
    if f.len() > 1 {
        out.push((f.len() - 1, f));
    }
    out
}

/// Splits a product of distinct monic irreducibles of degree `d`.
fn equal_degree(g: &MPoly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<MPoly>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.clone());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let mut a: MPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
        mtrim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let b = msub(&powmod_poly(&a, &e, g, p), &vec![1], p);
        let c = mgcd(&b, g, p);
        if c.len() > 1 && c.len() < g.len() {
            let rest = mdivrem(g, &c, p).0;
            equal_degree(&c, d, p, rng, out);
            equal_degree(&rest, d, p, rng, out);
            return;
        }
    }
}

/// Bound exceeding twice the coefficients of `lc(f) g / lc(g)` for every
/// factor `g` of `f`.
fn coefficient_bound(f: &ZPoly) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    let lc = f.last().unwrap().abs();
    (norm * lc) << (n + 1)
}

// Arithmetic modulo m = p^k with representatives in [0, m).

fn zm(f: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = f.iter().map(|c| c.mod_floor(m)).collect();
    ztrim(&mut out);
    out
}

fn zm_add(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    zm(&out, m)
}

fn zm_sub(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    zm(&out, m)
}

fn zm_mul(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm(&out, m)
}

/// Division by a monic polynomial modulo m.
fn zm_divrem(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = zm(a, m);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap().clone();
        for (i, y) in b.iter().enumerate() {
            r[shift + i] = (&r[shift + i] - &c * y).mod_floor(m);
        }
        q[shift] = c;
        ztrim(&mut r);
    }
    ztrim(&mut q);
    (q, r)
}

fn lift_ints(f: &MPoly) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f = g h (mod p)`, `h` monic, to modulus `p^k` (`k` a power of two).
fn hensel_pair(f: &ZPoly, g: &MPoly, h: &MPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (one, s, t) = mxgcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (lift_ints(g), lift_ints(h), lift_ints(&s), lift_ints(&t));
    let mut m = BigInt::from(p);
    let mut e = 1;
    while e < k {
        m = &m * &m;
        e *= 2;
        let err = zm_sub(&zm(f, &m), &zm_mul(&g, &h, &m), &m);
        let (q, r) = zm_divrem(&zm_mul(&s, &err, &m), &h, &m);
        let g2 = zm_add(&zm_add(&g, &zm_mul(&t, &err, &m), &m), &zm_mul(&q, &g, &m), &m);
        let h2 = zm_add(&h, &r, &m);
        let b = zm_sub(&zm_add(&zm_mul(&s, &g2, &m), &zm_mul(&t, &h2, &m), &m), &vec![BigInt::one()], &m);
        let (c, d) = zm_divrem(&zm_mul(&s, &b, &m), &h2, &m);
        s = zm_sub(&s, &d, &m);
        t = zm_sub(&zm_sub(&t, &zm_mul(&t, &b, &m), &m), &zm_mul(&c, &g2, &m), &m);
        g = g2;
        h = h2;
    }
    (g, h)
}

/// Lifts the monic modular factors of `f` to monic factors modulo `p^k`.
fn hensel_tree(f: &ZPoly, factors: &[MPoly], p: u64, k: u32) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let m = BigInt::from(p).pow(k);
        let lc = f.last().unwrap();
        let inv = lc.modinv(&m).expect("leading coefficient is a unit");
        return vec![zm(&f.iter().map(|c| c * &inv).collect::<ZPoly>(), &m)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc = reduce(&[f.last().unwrap().clone()], p)[0];
    let mut g: MPoly = vec![lc];
    for q in left {
        g = mmul(&g, q, p);
    }
    let mut h: MPoly = vec![1];
    for q in right {
        h = mmul(&h, q, p);
    }
    let (gl, hl) = hensel_pair(f, &g, &h, p, k);
    let mut out = hensel_tree(&gl, left, p, k);
    out.extend(hensel_tree(&hl, right, p, k));
    out
}

fn symmetric(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut out: ZPoly = f.iter().map(|c| if c > &half { c - m } else { c.clone() }).collect();
    ztrim(&mut out);
    out
}

fn primitive(f: ZPoly) -> ZPoly {
    let g = f.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if f.last().is_some_and(|c| c.sign() == Sign::Minus) { -1 } else { 1 };
    f.into_iter().map(|c| c / &g * sign).collect()
}

/// Exact quotient over Z, if `b` divides `a`.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let mut r = a.clone();
    if r.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let (c, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        ztrim(&mut r);
    }
    if r.is_empty() {
        ztrim(&mut q);
        Some(q)
    } else {
        None
    }
}

fn recombine(mut f: ZPoly, mut lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut size = 1;
    'sizes: while 2 * size <= lifted.len() {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let lc = f.last().unwrap().clone();
            let mut cand: ZPoly = vec![lc.clone()];
            for &i in &subset {
                cand = zm_mul(&cand, &lifted[i], m);
            }
            let cand = symmetric(&cand, m);
            // the constant term of the candidate divides lc(f) f(0)
            let plausible = match (cand.first(), f.first()) {
                (Some(c0), Some(f0)) if !c0.is_zero() => (&lc * f0).is_multiple_of(c0),
                _ => true,
            };
            if plausible {
                let g = primitive(cand);
                if let Some(q) = zdiv_exact(&f, &g) {
                    out.push(g);
                    f = primitive(q);
                    for &i in subset.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'sizes;
                }
            }
            if !next_subset(&mut subset, lifted.len()) {
                break;
            }
        }
        size += 1;
    }
    if f.len() > 1 {
        out.push(f);
    }
    out
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order.
fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn sorted(mut v: Vec<ZPoly>) -> Vec<ZPoly> {
        v.sort();
        v
    }

    #[test]
    fn swinnerton_dyer_style_product() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        let f = z(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree(&f), vec![f.clone()]);
        let g = z(&[-7, 3, 0, 2]);
        let prod = zmul(&f, &g);
        assert_eq!(sorted(factor_squarefree(&prod)), sorted(vec![f, g]));
    }

    #[test]
    fn non_monic_factors() {
        let a = z(&[3, -5, 6]);
        let b = z(&[-1, 0, 0, 4]);
        let c = z(&[2, 7]);
        let prod = zmul(&zmul(&a, &b), &c);
        assert_eq!(sorted(factor_squarefree(&prod)), sorted(vec![a, b, c]));
    }

    #[test]
    fn cyclotomic_split() {
        // x^12 - 1 = product of cyclotomic polynomials
        let f = z(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let degrees: Vec<usize> = {
            let mut d: Vec<usize> = factor_squarefree(&f).iter().map(|g| g.len() - 1).collect();
            d.sort();
            d
        };
        assert_eq!(degrees, vec![1, 1, 2, 2, 2, 4]);
    }
}
