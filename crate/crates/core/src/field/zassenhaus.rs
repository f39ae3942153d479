//! Factorisation of squarefree polynomials over the integers.
//!
//! Classical Zassenhaus: factor modulo a small prime with Cantor-Zassenhaus,
//! Hensel-lift the factorisation past a Mignotte bound and recombine.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type ZPoly = Vec<BigInt>;
type PPoly = Vec<u64>;

// ---- arithmetic modulo a word-sized prime ------------------------------------

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn ptrim(a: &mut PPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn padd(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    let n = a.len().max(b.len());
    let mut r: PPoly = (0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect();
    ptrim(&mut r);
    r
}

fn psub(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    let n = a.len().max(b.len());
    let mut r: PPoly =
        (0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect();
    ptrim(&mut r);
    r
}

fn pmul(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + mulmod(x, y, p)) % p;
        }
    }
    ptrim(&mut r);
    r
}

fn pdivrem(a: &PPoly, b: &PPoly, p: u64) -> (PPoly, PPoly) {
    assert!(!b.is_empty());
    let mut r = a.clone();
    ptrim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = invmod(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulmod(r[k + db], inv, p);
        if c == 0 {
            continue;
        }
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + p - mulmod(c, bi, p)) % p;
        }
        q[k] = c;
    }
    r.truncate(db);
    ptrim(&mut r);
    ptrim(&mut q);
    (q, r)
}

fn pmonic(a: &PPoly, p: u64) -> PPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = invmod(lc, p);
            a.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

fn pgcd(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    ptrim(&mut a);
    ptrim(&mut b);
    while !b.is_empty() {
        let r = pdivrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    pmonic(&a, p)
}

/// Returns `(s, t)` with `s*a + t*b = 1 (mod p)`; requires coprime inputs.
fn pxgcd(a: &PPoly, b: &PPoly, p: u64) -> (PPoly, PPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (PPoly, PPoly) = (vec![1], vec![]);
    let (mut t0, mut t1): (PPoly, PPoly) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    assert_eq!(r0.len(), 1, "inputs not coprime mod p");
    let inv = invmod(r0[0], p);
    let sc = |v: &PPoly| -> PPoly { v.iter().map(|&c| mulmod(c, inv, p)).collect() };
    (sc(&s0), sc(&t0))
}

fn ppowmod(base: &PPoly, e: &BigUint, m: &PPoly, p: u64) -> PPoly {
    let mut result: PPoly = vec![1];
    let b = pdivrem(base, m, p).1;
    let bits = e.bits();
    for i in (0..bits).rev() {
        result = pdivrem(&pmul(&result, &result, p), m, p).1;
        if e.bit(i) {
            result = pdivrem(&pmul(&result, &b, p), m, p).1;
        }
    }
    result
}

fn pderiv(a: &PPoly, p: u64) -> PPoly {
    let mut r: PPoly = a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect();
    ptrim(&mut r);
    r
}

/// Distinct-degree factorisation of a monic squarefree polynomial.
fn ddf(f: &PPoly, p: u64) -> Vec<(PPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: PPoly = vec![0, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            out.push((f.clone(), f.len() - 1));
            break;
        }
        h = ppowmod(&h, &pe, &f, p);
        let g = pgcd(&f, &psub(&h, &x, p), p);
        if g.len() > 1 {
            out.push((g.clone(), d));
            f = pdivrem(&f, &g, p).0;
            h = pdivrem(&h, &f, p).1;
        }
    }
    out
}

/// Equal-degree splitting (Cantor-Zassenhaus, odd p).
fn edf(f: &PPoly, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<PPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a: PPoly = {
            let mut v: PPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
            ptrim(&mut v);
            v
        };
        if a.len() < 2 {
            continue;
        }
        let g = pgcd(&a, f, p);
        let g = if g.len() > 1 {
            g
        } else {
            let b = ppowmod(&a, &e, f, p);
            pgcd(&psub(&b, &vec![1], p), f, p)
        };
        if g.len() > 1 && g.len() < f.len() {
            let h = pdivrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&pmonic(&h, p), d, p, rng));
            return out;
        }
    }
}

fn factor_mod_p(f: &PPoly, p: u64, rng: &mut ChaCha8Rng) -> Vec<PPoly> {
    let f = pmonic(f, p);
    let mut out = Vec::new();
    for (g, d) in ddf(&f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out
}

// ---- integer polynomials ----------------------------------------------------

fn ztrim(a: &mut ZPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn to_ppoly(a: &ZPoly, p: u64) -> PPoly {
    let pb = BigInt::from(p);
    let mut r: PPoly = a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    ptrim(&mut r);
    r
}

fn from_ppoly(a: &PPoly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    ztrim(&mut r);
    r
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut r: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    ztrim(&mut r);
    r
}

fn zsymmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half: BigInt = m >> 1;
    let mut r: ZPoly = a
        .iter()
        .map(|c| {
            let v = c.mod_floor(m);
            if v > half {
                v - m
            } else {
                v
            }
        })
        .collect();
    ztrim(&mut r);
    r
}

fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &ZPoly) -> ZPoly {
    let c = content(a);
    if c.is_zero() {
        return a.clone();
    }
    let sign = if a.last().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
    a.iter().map(|x| x / &c * &sign).collect()
}

/// Exact division over Z; `None` if `b` does not divide `a`.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let mut r = a.clone();
    ztrim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let lc = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    ztrim(&mut q);
    Some(q)
}

/// Lifts `f = g*h (mod p)` (g monic, lc(h) = lc(f)) to modulus `p^k`.
fn hensel_pair(f: &ZPoly, g: &PPoly, h: &PPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (s, t) = pxgcd(g, h, p);
    let pb = BigInt::from(p);
    let lc = f.last().unwrap().clone();
    let mut gz = from_ppoly(g);
    let mut hz = from_ppoly(h);
    let mut modulus = pb.clone();
    for _ in 1..k {
        let next = &modulus * &pb;
        // keep h's leading coefficient exactly lc(f) modulo next
        let hl = hz.len() - 1;
        hz[hl] = lc.mod_floor(&next);
        let prod = zmul(&gz, &hz);
        let n = f.len().max(prod.len());
        let mut diff: ZPoly =
            (0..n).map(|i| f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default()).collect();
        ztrim(&mut diff);
        let e: ZPoly = diff.iter().map(|c| c.mod_floor(&next) / &modulus).collect();
        let e = to_ppoly(&e, p);
        let te = pmul(&t, &e, p);
        let (q, gcorr) = pdivrem(&te, g, p);
        let hcorr = padd(&pmul(&s, &e, p), &pmul(&q, h, p), p);
        for (i, c) in gcorr.iter().enumerate() {
            gz[i] = (&gz[i] + &modulus * BigInt::from(*c)).mod_floor(&next);
        }
        let mut hcorr_full = hcorr;
        hcorr_full.resize(hz.len(), 0);
        for (i, c) in hcorr_full.iter().enumerate() {
            hz[i] = (&hz[i] + &modulus * BigInt::from(*c)).mod_floor(&next);
        }
        modulus = next;
    }
    (zmod(&gz, &modulus), zmod(&hz, &modulus))
}

fn hensel_lift(f: &ZPoly, factors: &[PPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let pk = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let lc_inv = f.last().unwrap().modinv(&pk).expect("leading coefficient invertible mod p");
        return vec![zmod(&f.iter().map(|c| c * &lc_inv).collect(), &pk)];
    }
    let g = &factors[0];
    let lcp = to_ppoly(&vec![f.last().unwrap().clone()], p);
    let mut h: PPoly = lcp;
    for fct in &factors[1..] {
        h = pmul(&h, fct, p);
    }
    let (gz, hz) = hensel_pair(f, g, &h, p, k);
    let mut out = vec![gz];
    out.extend(hensel_lift(&hz, &factors[1..], p, k));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

const PRIMES: [u64; 24] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

/// Irreducible factors over Z of a squarefree, primitive integer polynomial
/// of positive degree (constant term first). Factors are primitive with
/// positive leading coefficient.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut f: ZPoly = f.to_vec();
    ztrim(&mut f);
    let f = primitive(&f);
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // pick the prime with the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<PPoly>)> = None;
    let mut tried = 0;
    let mut extra_primes = (101u64..).step_by(2).filter(|&q| is_prime(q));
    let mut prime_iter = PRIMES.iter().copied().chain(std::iter::from_fn(move || extra_primes.next()));
    while tried < 6 {
        let p = prime_iter.next().unwrap();
        let fp = to_ppoly(&f, p);
        if fp.len() != f.len() {
            continue;
        }
        let g = pgcd(&fp, &pderiv(&fp, p), p);
        if g.len() > 1 {
            continue;
        }
        tried += 1;
        let facs = factor_mod_p(&fp, p, &mut rng);
        if facs.len() == 1 {
            return vec![f];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, modular) = best.unwrap();

    // Mignotte-style bound on coefficients of lc(f) * (any factor)
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    let bound = f.last().unwrap().abs() * (BigInt::one() << n) * norm;
    let target = bound * 2 + BigInt::one();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= target {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(&f, &modular, p, k);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut current = f.clone();
    let mut result = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = false;
        for combo in combinations(remaining.len(), s) {
            let lc = current.last().unwrap().clone();
            let mut cand: ZPoly = vec![lc.clone()];
            // cheap constant-term test first
            let mut c0 = lc.clone();
            for &i in &combo {
                c0 = (c0 * &remaining[i][0]).mod_floor(&pk);
            }
            let half: BigInt = &pk >> 1;
            let c0 = if c0 > half { c0 - &pk } else { c0 };
            if !c0.is_zero() && !(&lc * &current[0]).is_multiple_of(&c0) {
                continue;
            }
            for &i in &combo {
                cand = zmod(&zmul(&cand, &remaining[i]), &pk);
            }
            let cand = primitive(&zsymmetric(&cand, &pk));
            if let Some(q) = zdiv_exact(&current, &cand) {
                result.push(cand);
                current = q;
                let keep: Vec<ZPoly> =
                    remaining.iter().enumerate().filter(|(i, _)| !combo.contains(i)).map(|(_, v)| v.clone()).collect();
                remaining = keep;
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if current.len() > 1 {
        result.push(primitive(&current));
    }
    result
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn product(fs: &[ZPoly]) -> ZPoly {
        fs.iter().fold(vec![BigInt::one()], |acc, f| zmul(&acc, f))
    }

    #[test]
    fn irreducible_stays_whole() {
        let f = zp(&[1, 1, 1]);
        assert_eq!(factor_squarefree(&f), vec![f]);
        let f = zp(&[-2, 0, 0, 0, 1]);
        assert_eq!(factor_squarefree(&f).len(), 1);
    }

    #[test]
    fn swinnerton_dyer_like_splitting() {
        // x^4 + 1 is irreducible over Z but splits modulo every prime
        let f = zp(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_squarefree(&f).len(), 1);
        // (x^2 - 2)(x^2 - 3)(x + 5)(3x - 1)
        let parts = vec![zp(&[-2, 0, 1]), zp(&[-3, 0, 1]), zp(&[5, 1]), zp(&[-1, 3])];
        let f = product(&parts);
        let mut got = factor_squarefree(&f);
        got.sort();
        let mut want: Vec<ZPoly> = parts.iter().map(primitive).collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn cyclotomic_product() {
        // x^12 - 1 = prod of cyclotomic polynomials of orders 1,2,3,4,6,12
        let mut f = vec![BigInt::zero(); 13];
        f[0] = BigInt::from(-1);
        f[12] = BigInt::one();
        let got = factor_squarefree(&f);
        assert_eq!(got.len(), 6);
        assert_eq!(product(&got), f);
    }

    #[test]
    fn large_coefficients() {
        let parts = vec![zp(&[123456789, 0, 1]), zp(&[-987654321, 17, 0, 1])];
        let f = product(&parts);
        assert_eq!(factor_squarefree(&f).len(), 2);
    }
}
