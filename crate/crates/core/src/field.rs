//! Prime field arithmetic and the field configuration shared by every computation.

use serde::Serialize;
use thiserror::Error;

/// Elements of F_p are stored as reduced `u32` values.
pub type Fp = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} must be below 2^31")]
    TooLarge { p: u64 },
    #[error("p = {p} is not congruent to 1 mod {order}; no primitive {order}-th root of unity")]
    NoRootOfUnity { p: u32, order: u32 },
    #[error("required root order must be at least 1")]
    ZeroOrder,
}

/// The prime modulus together with a fixed primitive `root_order`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeFieldConfig {
    p: u32,
    root_order: u32,
    zeta: u32,
}

/// Smallest prime used when no prime is requested explicitly.
pub const DEFAULT_PRIME_FLOOR: u32 = 1_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PrimeFieldConfig {
    pub fn new(p: u32, root_order: u32) -> Result<Self, FieldError> {
        if root_order == 0 {
            return Err(FieldError::ZeroOrder);
        }
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if p >= 1 << 31 {
            return Err(FieldError::TooLarge { p: p as u64 });
        }
        if root_order > 1 && (p - 1) % root_order != 0 {
            return Err(FieldError::NoRootOfUnity { p, order: root_order });
        }
        let mut cfg = PrimeFieldConfig { p, root_order, zeta: 1 };
        if root_order > 1 {
            let g = cfg.primitive_root();
            cfg.zeta = cfg.pow(g, ((p - 1) / root_order) as u64);
        }
        Ok(cfg)
    }

    /// Smallest prime `p >= 10^6` with `p = 1 mod level`.
    pub fn default_for_level(level: u32) -> Self {
        let level = level.max(1);
        let mut p = DEFAULT_PRIME_FLOOR;
        loop {
            if is_prime(p as u64) && (p - 1) % level == 0 {
                return Self::new(p, level).expect("search only yields valid primes");
            }
            p += 1;
        }
    }

    #[inline]
    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    /// The fixed primitive root of unity of order `root_order` (1 when the order is 1).
    pub fn zeta(&self) -> Fp {
        self.zeta
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> Fp {
        (a % self.p as u64) as Fp
    }

    #[inline]
    pub fn from_i64(&self, a: i64) -> Fp {
        a.rem_euclid(self.p as i64) as Fp
    }

    #[inline]
    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as Fp
        } else {
            s as Fp
        }
    }

    #[inline]
    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Fp) -> Fp {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        ((a as u64 * b as u64) % self.p as u64) as Fp
    }

    pub fn pow(&self, a: Fp, mut e: u64) -> Fp {
        let mut base = a as u64 % self.p as u64;
        let mut acc = 1u64;
        let p = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as Fp
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Fp) -> Fp {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i64) as Fp
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> Fp {
        if self.p == 2 {
            return 1;
        }
        let factors = prime_factors(self.p as u64 - 1);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (self.p as u64 - 1) / q) != 1))
            .expect("every prime field has a primitive root")
    }

    pub fn multiplicative_order(&self, a: Fp) -> u64 {
        assert!(a != 0, "zero has no multiplicative order");
        let mut order = self.p as u64 - 1;
        for q in prime_factors(order) {
            while order % q == 0 && self.pow(a, order / q) == 1 {
                order /= q;
            }
        }
        order
    }

    /// All `root_order`-th roots of unity, as powers `zeta^k` for `k = 0..root_order`.
    pub fn roots_of_unity(&self) -> Vec<Fp> {
        let mut out = Vec::with_capacity(self.root_order as usize);
        let mut z = 1;
        for _ in 0..self.root_order {
            out.push(z);
            z = self.mul(z, self.zeta);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_is_smallest_above_floor() {
        let f = PrimeFieldConfig::default_for_level(1);
        assert_eq!(f.prime(), 1_000_003);
        assert!((1_000_000..1_000_003).all(|n| !is_prime(n)));
    }

    #[test]
    fn default_prime_respects_level() {
        for level in 1..=7 {
            let f = PrimeFieldConfig::default_for_level(level);
            assert_eq!((f.prime() - 1) % level, 0);
            assert_eq!(f.pow(f.zeta(), level as u64), 1);
            assert_eq!(f.multiplicative_order(f.zeta()), level as u64);
        }
    }

    #[test]
    fn zeta_is_primitive() {
        let f = PrimeFieldConfig::new(13, 4).unwrap();
        let z = f.zeta();
        assert_eq!(f.pow(z, 4), 1);
        assert!((1..4).all(|k| f.pow(z, k) != 1));
        assert_eq!(f.roots_of_unity().len(), 4);
    }

    #[test]
    fn rejects_bad_configs() {
        assert_eq!(PrimeFieldConfig::new(15, 1), Err(FieldError::NotPrime(15)));
        assert!(matches!(
            PrimeFieldConfig::new(13, 5),
            Err(FieldError::NoRootOfUnity { .. })
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeFieldConfig::new(1_000_003, 1).unwrap();
        for a in [1u32, 2, 3, 999_999, 123_456] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }
}
