//! Small finite fields realized as polynomial arithmetic over a prime field.

use super::GroupError;

/// A finite field `F_q`, `q = p^k`, with precomputed addition and
/// multiplication tables.
///
/// Element `e` encodes the polynomial whose base-`p` digits (least
/// significant first) are its coefficients, so `0` and `1` are the field
/// zero and one and the prime subfield is `0..p`.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: usize,
    k: usize,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// Built-in irreducible polynomials, coefficients low degree first, monic.
fn irreducible(p: usize, k: usize) -> Option<&'static [usize]> {
    match (p, k) {
        (_, 1) => Some(&[0, 1]),
        // x^2 + x + 1
        (2, 2) => Some(&[1, 1, 1]),
        // x^3 + x + 1
        (2, 3) => Some(&[1, 1, 0, 1]),
        // x^4 + x + 1
        (2, 4) => Some(&[1, 1, 0, 0, 1]),
        // x^2 + 1
        (3, 2) => Some(&[1, 0, 1]),
        // x^2 + 2
        (5, 2) => Some(&[2, 0, 1]),
        _ => None,
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Returns `(p, k)` with `n = p^k`, or `None` when `n` is not a prime power.
pub fn prime_power(n: usize) -> Option<(usize, usize)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

impl FiniteField {
    pub fn new(q: usize) -> Result<Self, GroupError> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| GroupError::Unsupported(format!("{q} is not a prime power")))?;
        let modulus = irreducible(p, k).ok_or_else(|| {
            GroupError::Unsupported(format!("no built-in irreducible polynomial for F_{q}"))
        })?;

        let digits = |e: usize| -> Vec<usize> {
            let mut v = vec![0; k];
            let mut e = e;
            for d in v.iter_mut() {
                *d = e % p;
                e /= p;
            }
            v
        };
        let encode = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum) as u16;

                let mut prod = vec![0usize; 2 * k];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce modulo the monic irreducible
                for deg in (k..2 * k).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    for (i, m) in modulus.iter().enumerate().take(k) {
                        let idx = deg - k + i;
                        prod[idx] = (prod[idx] + p * p - (c * m) % p) % p;
                    }
                    prod[deg] = 0;
                }
                mul[a * q + b] = encode(&prod[..k]) as u16;
            }
        }

        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16;
            if a != 0 {
                inv[a] = (1..q)
                    .find(|&b| mul[a * q + b] == 1)
                    .ok_or_else(|| GroupError::Unsupported(format!("F_{q} polynomial is reducible")))?
                    as u16;
            }
        }
        Ok(FiniteField { p, k, q, add, mul, neg, inv })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `inv(0)` is `0`.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold_for_builtin_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FiniteField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity in F_{q}"
                        );
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(1).is_err());
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(12), None);
    }
}
