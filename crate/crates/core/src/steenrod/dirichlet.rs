use thiserror::Error;

/// `(modulus, residue)` pairs every chosen prime must satisfy.
pub const BASE_CONGRUENCES: [(u64, u64); 4] = [(16, 7), (3, 2), (5, 3), (7, 3)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirichletError {
    #[error("extra modulus {0} is not a prime greater than 7")]
    BadExtraPrime(u64),
    #[error("extra prime {0} listed twice")]
    DuplicateExtraPrime(u64),
    #[error("combined modulus overflows 64 bits")]
    Overflow,
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Inverse of `a` modulo `m` for coprime `a`, `m`.
fn inverse(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (a as i128 % m as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(m as i128) as u64
}

/// Combines pairwise coprime congruences into `(modulus, residue)`.
fn crt(congruences: &[(u64, u64)]) -> Result<(u64, u64), DirichletError> {
    let mut modulus = 1u64;
    let mut residue = 0u64;
    for &(m, r) in congruences {
        let next = modulus.checked_mul(m).ok_or(DirichletError::Overflow)?;
        // residue + modulus·t ≡ r (mod m)
        let diff = (r % m + m - residue % m) % m;
        let t = mul_mod(diff, inverse(modulus % m, m), m);
        residue = (residue as u128 + modulus as u128 * t as u128) as u64;
        modulus = next;
    }
    Ok((modulus, residue % modulus))
}

/// The smallest prime `p > bound` with `p ≡ 7 (16)`, `2 (3)`, `3 (5)`,
/// `3 (7)` and `p ≡ 2` modulo each extra prime.
pub fn dirichlet_prime(extra_primes: &[u64], bound: u64) -> Result<u64, DirichletError> {
    let mut congruences = BASE_CONGRUENCES.to_vec();
    for (i, &p) in extra_primes.iter().enumerate() {
        if p <= 7 || !is_prime(p) {
            return Err(DirichletError::BadExtraPrime(p));
        }
        if extra_primes[..i].contains(&p) {
            return Err(DirichletError::DuplicateExtraPrime(p));
        }
        congruences.push((p, 2));
    }
    let (modulus, residue) = crt(&congruences)?;
    let mut candidate = if residue > bound {
        residue
    } else {
        let steps = (bound - residue) / modulus + 1;
        steps
            .checked_mul(modulus)
            .and_then(|x| x.checked_add(residue))
            .ok_or(DirichletError::Overflow)?
    };
    while !is_prime(candidate) {
        candidate = candidate
            .checked_add(modulus)
            .ok_or(DirichletError::Overflow)?;
    }
    Ok(candidate)
}
