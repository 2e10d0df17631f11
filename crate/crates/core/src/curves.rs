//! Index, cusp count and genus of `X_1(N)`, and covering degrees between
//! prime-power levels.

use serde::Serialize;

use crate::arith::{divisors, euler_phi, factorize, is_prime};
use crate::error::{Error, Result};
use crate::gl2::Modulus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub level: u32,
    /// Degree of `X_1(N) -> X(1)` after identifying `±1`.
    pub index: u64,
    pub cusps: u64,
    pub genus: u64,
}

/// For `N >= 5` there are no elliptic points and `-I ∉ Γ_1(N)`, so
/// `g = 1 + index/12 - cusps/2`.
pub fn invariants_x1(n: Modulus) -> Result<CurveInvariants> {
    let level = n.value() as u64;
    if level < 5 {
        return Err(Error::SmallLevel(n.value()));
    }
    let primes: Vec<u64> = factorize(level).into_iter().map(|(p, _)| p).collect();
    let mut twice_index = level * level;
    for &p in &primes {
        assert_eq!(twice_index % (p * p), 0);
        twice_index = twice_index / (p * p) * (p * p - 1);
    }
    assert_eq!(twice_index % 2, 0);
    let index = twice_index / 2;

    let twice_cusps: u64 = divisors(level)
        .into_iter()
        .map(|d| euler_phi(d) * euler_phi(level / d))
        .sum();
    assert_eq!(twice_cusps % 2, 0);
    let cusps = twice_cusps / 2;

    // 12 g = 12 + index - 6 cusps
    let twelve_g = 12 + index as i64 - 6 * cusps as i64;
    assert!(twelve_g >= 0 && twelve_g % 12 == 0, "non-integral genus at N = {level}");
    Ok(CurveInvariants {
        level: n.value(),
        index,
        cusps,
        genus: (twelve_g / 12) as u64,
    })
}

/// `deg(X_1(ell^n) -> X_1(ell^m)) = ell^(2(n - m))`.
pub fn covering_degree(ell: u64, n: u32, m: u32) -> Result<u128> {
    if n < m {
        return Err(Error::InvalidParameter(format!(
            "covering X_1({ell}^{n}) -> X_1({ell}^{m}) needs n >= m"
        )));
    }
    (ell as u128)
        .checked_pow(2 * (n - m))
        .ok_or_else(|| Error::InvalidParameter("covering degree overflows".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenusBound {
    pub ell: u32,
    pub genus: u64,
    /// `(ell^2 - 1)/24`, an integer for primes `ell >= 5`.
    pub bound: u64,
    pub margin: i64,
    pub holds: bool,
}

/// Checks `genus(X_1(ell)) < (ell^2 - 1)/24`.
pub fn genus_bound_ok(ell: u32) -> Result<GenusBound> {
    if ell < 5 || !is_prime(ell as u64) {
        return Err(Error::InvalidParameter(format!(
            "genus bound needs a prime >= 5, got {ell}"
        )));
    }
    let l = ell as u64;
    assert_eq!((l * l - 1) % 24, 0);
    let bound = (l * l - 1) / 24;
    let genus = invariants_x1(Modulus::new(l)?)?.genus;
    let margin = bound as i64 - genus as i64;
    Ok(GenusBound {
        ell,
        genus,
        bound,
        margin,
        holds: margin > 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn genus(n: u64) -> u64 {
        invariants_x1(Modulus::new(n).unwrap()).unwrap().genus
    }

    /// Index and cusps recounted directly: `±`-classes of exact-order-`N`
    /// vectors, and `±`-classes of pairs `(c mod N, a mod gcd(c, N))` with
    /// `a` a unit.
    fn brute_force(n: u64) -> (u64, u64) {
        let gcd = crate::arith::gcd;
        let mut vectors = 0;
        for x in 0..n {
            for y in 0..n {
                if gcd(gcd(x, y), n) == 1 {
                    vectors += 1;
                }
            }
        }
        let mut pairs = 0;
        for c in 0..n {
            let g = gcd(c, n);
            pairs += (0..g).filter(|&a| gcd(a, g) == 1).count() as u64;
        }
        (vectors / 2, pairs / 2)
    }

    #[test]
    fn stated_genera() {
        assert_eq!(genus(11), 1);
        assert_eq!(genus(13), 2);
        assert_eq!(genus(17), 5);
        assert_eq!(genus(37), 40);
    }

    #[test]
    fn brute_force_oracle_agrees() {
        for n in [5u64, 7, 11, 13, 17, 25, 27, 37, 49, 121] {
            let inv = invariants_x1(Modulus::new(n).unwrap()).unwrap();
            assert_eq!((inv.index, inv.cusps), brute_force(n), "N = {n}");
        }
    }

    #[test]
    fn small_levels_rejected() {
        assert_eq!(
            invariants_x1(Modulus::new(4).unwrap()),
            Err(Error::SmallLevel(4))
        );
    }

    #[test]
    fn covering_degrees() {
        assert_eq!(covering_degree(5, 2, 1).unwrap(), 25);
        assert_eq!(covering_degree(37, 3, 1).unwrap(), 37u128.pow(4));
        assert_eq!(covering_degree(13, 4, 4).unwrap(), 1);
        assert!(covering_degree(5, 1, 2).is_err());
    }

    #[test]
    fn bound_examples() {
        let b = genus_bound_ok(11).unwrap();
        assert_eq!((b.bound, b.genus, b.margin, b.holds), (5, 1, 4, true));
        let b = genus_bound_ok(13).unwrap();
        assert_eq!((b.bound, b.genus, b.margin), (7, 2, 5));
        let b = genus_bound_ok(37).unwrap();
        assert_eq!((b.bound, b.genus, b.margin), (57, 40, 17));
    }

    #[test]
    fn towers_increase() {
        for ell in [5u64, 7, 11, 13] {
            assert!(genus(ell * ell) > genus(ell));
        }
    }

    #[test]
    fn integral_on_prime_powers() {
        for n in 5..=1369u64 {
            if crate::arith::prime_power(n).is_some() {
                invariants_x1(Modulus::new(n).unwrap()).unwrap();
            }
        }
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn covering_degree_multiplies(ell in prop::sample::select(vec![5u64, 7, 11, 13, 37]),
                                      k in 1u32..4, dm in 0u32..3, dn in 0u32..3) {
            let m = k + dm;
            let n = m + dn;
            prop_assert_eq!(
                covering_degree(ell, n, m).unwrap() * covering_degree(ell, m, k).unwrap(),
                covering_degree(ell, n, k).unwrap()
            );
        }
    }
}
