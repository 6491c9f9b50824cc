use super::field::{is_prime, FiniteField};
use super::{check_cap, GroupError, GroupTable};

/// Elementary abelian group of order `p^k`; ids are base-`p` digit vectors.
pub fn elementary_abelian(p: usize, k: usize) -> Result<GroupTable, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if k == 0 {
        return Err(GroupError::Unsupported("rank must be positive".into()));
    }
    let order = p
        .checked_pow(k as u32)
        .ok_or(GroupError::SizeCap { order: usize::MAX, cap: super::size_cap() })?;
    check_cap(order)?;
    GroupTable::from_fn(format!("E({p}^{k})"), order, |a, b| {
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    })
}

/// Heisenberg group of upper unitriangular 3x3 matrices over `F_q`.
///
/// `(a,b,c)` has id `a + q*b + q^2*c` and
/// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')`.
pub fn heisenberg(q: usize, dim: usize) -> Result<GroupTable, GroupError> {
    if dim != 3 {
        return Err(GroupError::Unsupported(format!(
            "Heisenberg groups of dimension {dim} are not supported (only 3)"
        )));
    }
    if q > 9 {
        return Err(GroupError::Unsupported(format!("q = {q} exceeds the desk-scale bound 9")));
    }
    let f = FiniteField::new(q)?;
    check_cap(q * q * q)?;
    let split = |e: usize| (e % q, (e / q) % q, e / (q * q));
    GroupTable::from_fn(format!("Heis({q})"), q * q * q, |x, y| {
        let (a, b, c) = split(x);
        let (a2, b2, c2) = split(y);
        let na = f.add(a, a2);
        let nb = f.add(b, b2);
        let nc = f.add(f.add(c, c2), f.mul(a, b2));
        na + q * nb + q * q * nc
    })
}

pub fn cyclic(n: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::Unsupported("cyclic group of order 0".into()));
    }
    check_cap(n)?;
    GroupTable::from_fn(format!("C{n}"), n, |a, b| (a + b) % n)
}

/// Dihedral group of order `order = 2n`: ids `0..n` are rotations `r^i`,
/// ids `n..2n` are reflections `s r^i`.
pub fn dihedral(order: usize) -> Result<GroupTable, GroupError> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(GroupError::Unsupported(format!(
            "dihedral groups need an even order >= 4, got {order}"
        )));
    }
    check_cap(order)?;
    let n = order / 2;
    // s^e r^i * s^f r^j = s^(e+f) r^((-1)^f i + j)
    GroupTable::from_fn(format!("D{order}"), order, |x, y| {
        let (e, i) = (x / n, x % n);
        let (f, j) = (y / n, y % n);
        let rot = if f == 0 { (i + j) % n } else { (n - i + j) % n };
        ((e + f) % 2) * n + rot
    })
}

/// Quaternion group: ids `1,-1,i,-i,j,-j,k,-k` in that order.
pub fn quaternion8() -> Result<GroupTable, GroupError> {
    // basis index 0..4 = 1,i,j,k; unit product table (sign, index)
    const UNIT: [[(i8, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    GroupTable::from_fn("Q8", 8, |x, y| {
        let (bx, sx) = (x / 2, if x % 2 == 0 { 1 } else { -1 });
        let (by, sy) = (y / 2, if y % 2 == 0 { 1 } else { -1 });
        let (s, b) = UNIT[bx][by];
        let sign = s * sx * sy;
        2 * b + usize::from(sign < 0)
    })
}

/// `G1 x G2` with `(a,b)` encoded as `a + |G1| * b`.
pub fn direct_product(g1: &GroupTable, g2: &GroupTable) -> Result<GroupTable, GroupError> {
    let (n1, n2) = (g1.order(), g2.order());
    let order = n1 * n2;
    check_cap(order)?;
    GroupTable::from_fn(format!("{} x {}", g1.name(), g2.name()), order, |x, y| {
        g1.mul(x % n1, y % n1) + n1 * g2.mul(x / n1, y / n1)
    })
}

/// `C_n x| C_m` with `b a b^-1 = a^r`; `(i, j)` ~ `a^i b^j` has id `i + n*j`.
pub fn semidirect_cyclic(n: usize, m: usize, r: usize) -> Result<GroupTable, GroupError> {
    // r^m must be 1 mod n for the action to be a homomorphism
    let rm = (0..m).fold(1usize, |acc, _| acc * r % n);
    if n == 0 || m == 0 || rm != 1 % n {
        return Err(GroupError::Unsupported(format!(
            "{r} does not define an action of C{m} on C{n}"
        )));
    }
    check_cap(n * m)?;
    let rpow: Vec<usize> = (0..m).scan(1usize, |acc, _| {
        let v = *acc;
        *acc = *acc * r % n;
        Some(v)
    })
    .collect();
    // a^i b^j a^k b^l = a^(i + k r^j) b^(j+l)
    GroupTable::from_fn(format!("C{n}:C{m}({r})"), n * m, |x, y| {
        let (i, j) = (x % n, x / n);
        let (k, l) = (y % n, y / n);
        (i + k * rpow[j]) % n + n * ((j + l) % m)
    })
}

/// Named constructors accepted by the CLI and catalog files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    ElementaryAbelian { p: usize, k: usize },
    Heisenberg { q: usize },
    Cyclic { n: usize },
    Dihedral { order: usize },
    Quaternion8,
    Semidirect { n: usize, m: usize, r: usize },
    Product(Vec<GroupKind>),
}

impl GroupKind {
    pub fn build(&self) -> Result<GroupTable, GroupError> {
        match self {
            GroupKind::ElementaryAbelian { p, k } => elementary_abelian(*p, *k),
            GroupKind::Heisenberg { q } => heisenberg(*q, 3),
            GroupKind::Cyclic { n } => cyclic(*n),
            GroupKind::Dihedral { order } => dihedral(*order),
            GroupKind::Quaternion8 => quaternion8(),
            GroupKind::Semidirect { n, m, r } => semidirect_cyclic(*n, *m, *r),
            GroupKind::Product(parts) => {
                let mut it = parts.iter();
                let first = it
                    .next()
                    .ok_or_else(|| GroupError::Unsupported("empty product".into()))?
                    .build()?;
                it.try_fold(first, |acc, k| direct_product(&acc, &k.build()?))
            }
        }
    }

    /// Parses the compact factor syntax used on the command line:
    /// `E2^3`, `Heis3`, `C4`, `D8`, `Q8`, `C9:C3(4)`, and `x`-joined products.
    pub fn parse(s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::Unsupported(format!("cannot parse group spec {s:?}"));
        let parts: Vec<&str> = s.split('x').map(str::trim).collect();
        if parts.len() > 1 {
            return parts
                .iter()
                .map(|p| GroupKind::parse(p))
                .collect::<Result<Vec<_>, _>>()
                .map(GroupKind::Product);
        }
        let s = s.trim();
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("Heis") {
            Ok(GroupKind::Heisenberg { q: num(rest)? })
        } else if let Some(rest) = s.strip_prefix('E') {
            let (p, k) = rest.split_once('^').ok_or_else(bad)?;
            Ok(GroupKind::ElementaryAbelian { p: num(p)?, k: num(k)? })
        } else if s == "Q8" {
            Ok(GroupKind::Quaternion8)
        } else if let Some(rest) = s.strip_prefix('D') {
            Ok(GroupKind::Dihedral { order: num(rest)? })
        } else if let Some(rest) = s.strip_prefix('C') {
            if let Some((n, tail)) = rest.split_once(":C") {
                let (m, r) = tail.split_once('(').ok_or_else(bad)?;
                let r = r.strip_suffix(')').ok_or_else(bad)?;
                Ok(GroupKind::Semidirect { n: num(n)?, m: num(m)?, r: num(r)? })
            } else {
                Ok(GroupKind::Cyclic { n: num(rest)? })
            }
        } else {
            Err(bad())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::groups_isomorphic;

    fn brute_exponent(g: &GroupTable) -> usize {
        let orders: Vec<usize> = (0..g.order()).map(|a| g.element_order(a)).collect();
        let gcd = |mut a: usize, mut b: usize| {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        orders.into_iter().fold(1, |l, o| l / gcd(l, o) * o)
    }

    #[test]
    fn elementary_abelian_examples() {
        let g = elementary_abelian(2, 3).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
        assert_eq!(brute_exponent(&g), 2);
        assert_eq!(g.center().order(), 8);

        assert_eq!(elementary_abelian(2, 1).unwrap().order(), 2);

        let g = elementary_abelian(3, 3).unwrap();
        assert_eq!(g.order(), 27);
        assert!((1..27).all(|a| g.element_order(a) == 3));
    }

    #[test]
    fn elementary_abelian_errors() {
        assert_eq!(elementary_abelian(4, 2), Err(GroupError::NotPrime(4)));
        assert!(matches!(elementary_abelian(2, 13), Err(GroupError::SizeCap { .. })));
    }

    #[test]
    fn heisenberg_examples() {
        let h3 = heisenberg(3, 3).unwrap();
        assert_eq!(h3.order(), 27);
        assert_eq!(h3.center().order(), 3);
        assert_eq!(brute_exponent(&h3), 3);
        assert!(!h3.is_abelian());

        let h2 = heisenberg(2, 3).unwrap();
        assert_eq!(h2.order(), 8);
        assert_eq!(h2.center().order(), 2);
        assert!(groups_isomorphic(&h2, &dihedral(8).unwrap()).unwrap());
        assert!(!groups_isomorphic(&h2, &quaternion8().unwrap()).unwrap());

        let h4 = heisenberg(4, 3).unwrap();
        assert_eq!(h4.order(), 64);
        let z = h4.center();
        assert_eq!(z.order(), 4);
        // every square lands in the centre: the quotient by Z has exponent 2
        assert!((0..64).all(|a| z.contains(h4.mul(a, a))));
        assert!((0..64).any(|a| h4.mul(a, a) != 0));
    }

    #[test]
    fn heisenberg_errors() {
        assert!(heisenberg(6, 3).is_err());
        assert!(heisenberg(11, 3).is_err());
        assert!(heisenberg(3, 5).is_err());
    }

    #[test]
    fn small_catalog_groups() {
        let k4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(k4.order(), 4);
        assert_eq!(brute_exponent(&k4), 2);

        let q8 = quaternion8().unwrap();
        assert_eq!((1..8).filter(|&a| q8.element_order(a) == 2).count(), 1);
        assert!(!q8.is_abelian());

        let d8c2 = direct_product(&dihedral(8).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(d8c2.order(), 16);
        assert!(!d8c2.is_abelian());

        let m27 = semidirect_cyclic(9, 3, 4).unwrap();
        assert_eq!(m27.order(), 27);
        assert!(!m27.is_abelian());
        assert_eq!(brute_exponent(&m27), 9);
        assert!(semidirect_cyclic(9, 3, 2).is_err());
    }

    #[test]
    fn parse_specs() {
        assert_eq!(
            GroupKind::parse("C4 x D8").unwrap(),
            GroupKind::Product(vec![GroupKind::Cyclic { n: 4 }, GroupKind::Dihedral { order: 8 }])
        );
        assert_eq!(
            GroupKind::parse("C9:C3(4)").unwrap().build().unwrap().order(),
            27
        );
        assert_eq!(GroupKind::parse("E2^6").unwrap().build().unwrap().order(), 64);
        assert!(GroupKind::parse("Z5").is_err());
    }
}
