//! Dense univariate polynomials over F_p (coefficients low degree first) and
//! root extraction by `gcd(f, y^p - y)` followed by equal-degree splitting.

use crate::field::{Fp, PrimeFieldConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Poly = Vec<Fp>;

pub fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &[Fp]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn eval(field: &PrimeFieldConfig, f: &[Fp], x: Fp) -> Fp {
    f.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}

pub fn mul(field: &PrimeFieldConfig, a: &[Fp], b: &[Fp]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(out)
}

pub fn sub(field: &PrimeFieldConfig, a: &[Fp], b: &[Fp]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| field.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(out)
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem(field: &PrimeFieldConfig, a: &[Fp], m: &[Fp]) -> Poly {
    divrem(field, a, m).1
}

pub fn divrem(field: &PrimeFieldConfig, a: &[Fp], m: &[Fp]) -> (Poly, Poly) {
    let dm = degree(m).expect("division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let lead_inv = field.inv(m[dm]);
    let mut q = vec![0; r.len() - dm];
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = field.mul(r[dr], lead_inv);
        q[dr - dm] = c;
        for (i, &mi) in m[..=dm].iter().enumerate() {
            let k = dr - dm + i;
            r[k] = field.sub(r[k], field.mul(c, mi));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(field: &PrimeFieldConfig, f: &[Fp]) -> Poly {
    let f = trim(f.to_vec());
    match f.last() {
        None => f,
        Some(&lc) => {
            let inv = field.inv(lc);
            f.into_iter().map(|c| field.mul(c, inv)).collect()
        }
    }
}

pub fn gcd(field: &PrimeFieldConfig, a: &[Fp], b: &[Fp]) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    monic(field, &a)
}

/// `base^e mod m`.
pub fn powmod(field: &PrimeFieldConfig, base: &[Fp], mut e: u64, m: &[Fp]) -> Poly {
    let mut acc: Poly = rem(field, &[1], m);
    let mut b = rem(field, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(field, &mul(field, &acc, &b), m);
        }
        b = rem(field, &mul(field, &b, &b), m);
        e >>= 1;
    }
    acc
}

/// Distinct roots of `f` in F_p, sorted ascending. `f` must be nonzero.
pub fn roots(field: &PrimeFieldConfig, f: &[Fp]) -> Vec<Fp> {
    let f = monic(field, f);
    let Some(df) = degree(&f) else {
        panic!("roots of the zero polynomial");
    };
    if df == 0 {
        return Vec::new();
    }
    let p = field.prime();
    if p < 64 {
        return (0..p).filter(|&x| eval(field, &f, x) == 0).collect();
    }
    let xp = powmod(field, &[0, 1], p as u64, &f);
    let split = gcd(field, &f, &sub(field, &xp, &[0, 1]));
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    split_linear(field, split, &mut rng, &mut out);
    out.sort_unstable();
    out
}

/// Roots of a monic product of distinct linear factors.
fn split_linear(field: &PrimeFieldConfig, h: Poly, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    match degree(&h) {
        None | Some(0) => {}
        Some(1) => out.push(field.neg(h[0])),
        Some(_) => {
            let p = field.prime();
            loop {
                let a = rng.gen_range(0..p);
                let w = powmod(field, &[a, 1], (p as u64 - 1) / 2, &h);
                let g = gcd(field, &h, &sub(field, &w, &[1]));
                let dg = degree(&g).unwrap_or(0);
                if dg > 0 && dg < degree(&h).unwrap() {
                    let (cofactor, _) = divrem(field, &h, &g);
                    split_linear(field, g, rng, out);
                    split_linear(field, monic(field, &cofactor), rng, out);
                    return;
                }
            }
        }
    }
}
