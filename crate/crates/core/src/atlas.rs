//! Named subgroups of `GL_2(F_ell)` and structured subgroup enumeration.
//!
//! Conventions:
//! - `epsilon` defaults to the least quadratic non-residue mod `ell`.
//! - The nonsplit Cartan is `{[[a, eps*b], [b, a]]}` and its normalizer is
//!   `C ∪ wC` with `w = diag(1, -1)`, which acts on `C ≅ F_{ell^2}^*` as the
//!   Frobenius `x ↦ x^ell`.
//! - The Borel is upper triangular; `D = {diag(a, 1)}` and `D^f` is its
//!   subgroup of `f`-th powers.
//! - A named subgroup at level `ell^n` is the full preimage of the
//!   level-`ell` group.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{self, divisors, is_prime, mult_order, pow_mod};
use crate::error::{Error, Result};
use crate::gl2::{closure, default_closure_cap, Mat2, Modulus, Subgroup};

pub const DEFAULT_CNS_PLUS_BOUND: u32 = 41;
pub const DEFAULT_BOREL_BOUND: u32 = 17;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NamedSubgroupKind {
    Borel,
    SplitCartan,
    SplitCartanNormalizer,
    NonsplitCartan,
    NonsplitCartanNormalizer,
    SemiCartan,
    SemiCartanPower(u32),
    FullGL2,
}

/// A named subgroup of `GL_2(F_ell)` together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NamedSubgroup {
    pub kind: NamedSubgroupKind,
    pub ell: u32,
    pub epsilon: Option<u32>,
}

/// Least positive quadratic non-residue mod an odd prime.
pub fn nonresidue(ell: u32) -> Result<u32> {
    nonresidues(ell).map(|v| v[0])
}

/// All quadratic non-residues in `[1, ell)`, increasing.
pub fn nonresidues(ell: u32) -> Result<Vec<u32>> {
    if ell == 2 || !is_prime(ell as u64) {
        return Err(Error::InvalidParameter(format!(
            "non-residues need an odd prime, got {ell}"
        )));
    }
    let p = ell as u64;
    Ok((1..p)
        .filter(|&x| pow_mod(x, (p - 1) / 2, p) == p - 1)
        .map(|x| x as u32)
        .collect())
}

/// Least primitive root mod a prime.
pub fn primitive_root(ell: u32) -> u32 {
    let p = ell as u64;
    (1..p.max(2))
        .find(|&r| mult_order(r, p) == Some(p - 1))
        .unwrap_or(1) as u32
}

fn check_prime(ell: u32) -> Result<()> {
    if ell < 3 || !is_prime(ell as u64) {
        return Err(Error::InvalidParameter(format!("{ell} is not an odd prime")));
    }
    Ok(())
}

impl NamedSubgroup {
    pub fn new(kind: NamedSubgroupKind, ell: u32) -> Self {
        NamedSubgroup {
            kind,
            ell,
            epsilon: None,
        }
    }

    pub fn with_epsilon(mut self, epsilon: u32) -> Self {
        self.epsilon = Some(epsilon);
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_prime(self.ell)?;
        if let Some(eps) = self.epsilon {
            if !nonresidues(self.ell)?.contains(&(eps % self.ell)) {
                return Err(Error::InvalidParameter(format!(
                    "{eps} is not a non-residue mod {}",
                    self.ell
                )));
            }
        }
        if let NamedSubgroupKind::SemiCartanPower(f) = self.kind {
            if f == 0 || (self.ell - 1) % f != 0 {
                return Err(Error::InvalidParameter(format!(
                    "f = {f} does not divide {} - 1",
                    self.ell
                )));
            }
        }
        Ok(())
    }

    fn eps(&self) -> Result<u32> {
        match self.epsilon {
            Some(e) => Ok(e % self.ell),
            None => nonresidue(self.ell),
        }
    }

    /// The level-`ell` subgroup, with its element set enumerated from the
    /// defining formula.
    pub fn build(&self) -> Result<Subgroup> {
        self.validate()?;
        let ell = self.ell;
        let n = Modulus::new(ell as u64)?;
        let r = primitive_root(ell);
        let units = 1..ell;
        let mut elements: Vec<Mat2> = Vec::new();
        let gens: Vec<Mat2>;
        match self.kind {
            NamedSubgroupKind::FullGL2 => {
                for a in 0..ell {
                    for b in 0..ell {
                        for c in 0..ell {
                            for d in 0..ell {
                                let m = Mat2 { a, b, c, d };
                                if m.det(n) != 0 {
                                    elements.push(m);
                                }
                            }
                        }
                    }
                }
                gens = vec![Mat2::diag(r, 1), Mat2::new(-1, 1, -1, 0, n)];
            }
            NamedSubgroupKind::Borel => {
                for a in units.clone() {
                    for b in 0..ell {
                        for d in units.clone() {
                            elements.push(Mat2 { a, b, c: 0, d });
                        }
                    }
                }
                gens = vec![Mat2::diag(r, 1), Mat2::diag(1, r), Mat2::new(1, 1, 0, 1, n)];
            }
            NamedSubgroupKind::SplitCartan | NamedSubgroupKind::SplitCartanNormalizer => {
                for a in units.clone() {
                    for d in units.clone() {
                        elements.push(Mat2::diag(a, d));
                        if self.kind == NamedSubgroupKind::SplitCartanNormalizer {
                            elements.push(Mat2 { a: 0, b: a, c: d, d: 0 });
                        }
                    }
                }
                let mut g = vec![Mat2::diag(r, 1), Mat2::diag(1, r)];
                if self.kind == NamedSubgroupKind::SplitCartanNormalizer {
                    g.push(Mat2 { a: 0, b: 1, c: 1, d: 0 });
                }
                gens = g;
            }
            NamedSubgroupKind::NonsplitCartan | NamedSubgroupKind::NonsplitCartanNormalizer => {
                let eps = self.eps()?;
                for a in 0..ell {
                    for b in 0..ell {
                        if (a, b) == (0, 0) {
                            continue;
                        }
                        let m = Mat2 { a, b: n.mul(eps, b), c: b, d: a };
                        elements.push(m);
                        if self.kind == NamedSubgroupKind::NonsplitCartanNormalizer {
                            elements.push(m.mul(&canonical_involution(n), n));
                        }
                    }
                }
                let mut g = vec![cns_generator(ell, eps)?];
                if self.kind == NamedSubgroupKind::NonsplitCartanNormalizer {
                    g.push(canonical_involution(n));
                }
                gens = g;
            }
            NamedSubgroupKind::SemiCartan | NamedSubgroupKind::SemiCartanPower(_) => {
                let f = match self.kind {
                    NamedSubgroupKind::SemiCartanPower(f) => f,
                    _ => 1,
                };
                for a in units.clone() {
                    elements.push(Mat2::diag(pow_mod(a as u64, f as u64, ell as u64) as u32, 1));
                }
                gens = vec![Mat2::diag(pow_mod(r as u64, f as u64, ell as u64) as u32, 1)];
            }
        }
        let mut keys: Vec<u64> = elements.iter().map(|m| m.pack()).collect();
        keys.sort_unstable();
        keys.dedup();
        Ok(Subgroup::from_sorted_keys(n, gens, keys).with_label(self.to_string()))
    }

    /// The full preimage of [`build`](Self::build) at level `ell^n`.
    pub fn build_at(&self, level: Modulus) -> Result<Subgroup> {
        let base = self.build()?;
        match level.factorization() {
            Some((p, 1)) if p == self.ell => Ok(base),
            Some((p, _)) if p == self.ell => base.full_preimage(level, default_closure_cap()),
            _ => Err(Error::InvalidParameter(format!(
                "level {level} is not a power of {}",
                self.ell
            ))),
        }
    }
}

impl fmt::Display for NamedSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.kind {
            NamedSubgroupKind::Borel => "borel".to_string(),
            NamedSubgroupKind::SplitCartan => "cs".to_string(),
            NamedSubgroupKind::SplitCartanNormalizer => "cs+".to_string(),
            NamedSubgroupKind::NonsplitCartan => "cns".to_string(),
            NamedSubgroupKind::NonsplitCartanNormalizer => "cns+".to_string(),
            NamedSubgroupKind::SemiCartan => "semicartan".to_string(),
            NamedSubgroupKind::SemiCartanPower(k) => format!("semicartan^{k}"),
            NamedSubgroupKind::FullGL2 => "gl2".to_string(),
        };
        write!(f, "{head}@{}", self.ell)?;
        if let Some(e) = self.epsilon {
            write!(f, "~eps={e}")?;
        }
        Ok(())
    }
}

/// Parses identifiers such as `borel@17`, `cns+@37`, `semicartan^6@13`,
/// `gl2@13`, optionally suffixed with `~eps=E`.
impl FromStr for NamedSubgroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownSubgroup(s.to_string());
        let (body, eps) = match s.split_once("~eps=") {
            Some((b, e)) => (b, Some(e.parse::<u32>().map_err(|_| bad())?)),
            None => (s, None),
        };
        let (head, ell) = body.split_once('@').ok_or_else(bad)?;
        let ell: u32 = ell.parse().map_err(|_| bad())?;
        let kind = match head {
            "borel" => NamedSubgroupKind::Borel,
            "cs" => NamedSubgroupKind::SplitCartan,
            "cs+" => NamedSubgroupKind::SplitCartanNormalizer,
            "cns" => NamedSubgroupKind::NonsplitCartan,
            "cns+" => NamedSubgroupKind::NonsplitCartanNormalizer,
            "semicartan" => NamedSubgroupKind::SemiCartan,
            "gl2" => NamedSubgroupKind::FullGL2,
            h => match h.strip_prefix("semicartan^") {
                Some(f) => NamedSubgroupKind::SemiCartanPower(f.parse().map_err(|_| bad())?),
                None => return Err(bad()),
            },
        };
        let named = NamedSubgroup {
            kind,
            ell,
            epsilon: eps,
        };
        named.validate()?;
        Ok(named)
    }
}

pub fn canonical_involution(n: Modulus) -> Mat2 {
    Mat2::new(1, 0, 0, -1, n)
}

/// A generator of the cyclic group `C_ns(ell)` for the given `epsilon`:
/// the first `[[a, eps*b], [b, a]]` (lexicographic in `(b, a)`, `b >= 1`) of
/// order `ell^2 - 1`.
pub fn cns_generator(ell: u32, eps: u32) -> Result<Mat2> {
    let n = Modulus::new(ell as u64)?;
    let order = (ell as u64).pow(2) - 1;
    let primes: Vec<u64> = arith::factorize(order).into_iter().map(|(p, _)| p).collect();
    for b in 1..ell {
        for a in 0..ell {
            let m = Mat2 { a, b: n.mul(eps, b), c: b, d: a };
            if primes.iter().all(|p| !m.pow(order / p, n).is_identity()) {
                return Ok(m);
            }
        }
    }
    Err(Error::InvalidParameter(format!(
        "no generator of C_ns({ell}) for eps = {eps}"
    )))
}

/// Image of `[[a, eps*b], [b, a]]` in `F_{ell^2} = F_ell[t]/(t^2 - eps)`,
/// as the coefficient pair `(a, b)` of `a + b t`.
pub fn cns_to_field(m: &Mat2) -> (u32, u32) {
    (m.a, m.c)
}

/// Flags that any mod-`ell` image of an elliptic curve over `Q` satisfies.
///
/// `supersingular_inertia` records whether the group contains an element of
/// order `(ell^2 - 1)/e`, `e ∈ {1, 2, 3, 4, 6}`, with irreducible
/// characteristic polynomial: the shape of the inertia image at `ell` for
/// potentially supersingular reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisAdmissibility {
    pub det_surjective: bool,
    pub has_complex_conjugation: bool,
    pub contains_minus_identity: bool,
    pub supersingular_inertia: bool,
}

impl GaloisAdmissibility {
    /// Determinant surjectivity and complex conjugation.
    pub fn is_rational_image_shape(&self) -> bool {
        self.det_surjective && self.has_complex_conjugation
    }

    /// The filter applied to candidate images inside `C_ns^+(ell)`.
    pub fn admits_nonsplit_image(&self) -> bool {
        self.is_rational_image_shape() && self.supersingular_inertia
    }
}

pub fn admissibility(g: &Subgroup) -> Result<GaloisAdmissibility> {
    let n = g.modulus();
    if !n.is_prime() {
        return Err(Error::InvalidParameter(format!(
            "admissibility needs a prime level, got {n}"
        )));
    }
    let ell = n.value() as u64;
    let minus_one = n.value() - 1;
    let det_surjective = g.det_image().len() as u64 == ell - 1;
    let has_complex_conjugation = g.has_element_with_charpoly(0, minus_one, Some(2));
    let inertia_orders: Vec<u64> = [1u64, 2, 3, 4, 6]
        .iter()
        .filter(|&&e| (ell * ell - 1) % e == 0)
        .map(|&e| (ell * ell - 1) / e)
        .collect();
    let group_order = g.order() as u64;
    let supersingular_inertia = g.elements().any(|m| {
        let cp = m.char_poly(n);
        irreducible_quadratic(cp.trace, cp.det, ell as u32)
            && inertia_orders.contains(&m.order_dividing(group_order, n))
    });
    Ok(GaloisAdmissibility {
        det_surjective,
        has_complex_conjugation,
        contains_minus_identity: g.contains_minus_identity(),
        supersingular_inertia,
    })
}

/// Whether `x^2 - t x + d` has no root in `F_ell`.
pub fn irreducible_quadratic(t: u32, d: u32, ell: u32) -> bool {
    let p = ell as u64;
    (0..p).all(|x| (x * x + p * p - t as u64 * x + d as u64) % p != 0)
}

/// A subgroup of `C_ns^+(ell)` given by its structural parameters:
/// `H ∩ C_ns = <gamma^index>` and, when `outer` is `Some(e)`, the extra
/// coset generated by `gamma^e * w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CnsPlusSubgroupSpec {
    pub ell: u32,
    pub index: u64,
    pub outer: Option<u64>,
}

impl fmt::Display for CnsPlusSubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cns+@{}[k={}", self.ell, self.index)?;
        if let Some(e) = self.outer {
            write!(f, ",e={e}")?;
        }
        write!(f, "]")
    }
}

/// Conjugacy-class representatives of subgroups of `C_ns^+(ell)` under
/// conjugation by `C_ns^+(ell)`, as structural specs.
///
/// `C_ns = <gamma>` is cyclic of order `M = ell^2 - 1`, so each subgroup
/// meets it in `<gamma^k>` for a unique `k | M`. A subgroup leaving `C_ns`
/// is `<gamma^k> ∪ gamma^e w <gamma^k>` where `(gamma^e w)^2 = gamma^(e(ell+1))`
/// must lie in `<gamma^k>`. Conjugation by `gamma^t` sends `e ↦ e + t(1-ell)`
/// and conjugation by `w` sends `e ↦ e*ell`, both mod `k`.
pub fn cns_plus_subgroup_specs(ell: u32) -> Vec<CnsPlusSubgroupSpec> {
    let p = ell as u64;
    let m = p * p - 1;
    let mut out = Vec::new();
    for k in divisors(m) {
        out.push(CnsPlusSubgroupSpec {
            ell,
            index: k,
            outer: None,
        });
        let valid: Vec<u64> = (0..k).filter(|e| (e * (p + 1)) % k == 0).collect();
        let mut seen = vec![false; k as usize];
        for &e in &valid {
            if seen[e as usize] {
                continue;
            }
            let mut stack = vec![e];
            seen[e as usize] = true;
            while let Some(x) = stack.pop() {
                for y in [(x + (p - 1)) % k, (x * p) % k] {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        stack.push(y);
                    }
                }
            }
            out.push(CnsPlusSubgroupSpec {
                ell,
                index: k,
                outer: Some(e),
            });
        }
    }
    out
}

impl CnsPlusSubgroupSpec {
    pub fn order(&self) -> u64 {
        let m = (self.ell as u64).pow(2) - 1;
        m / self.index * if self.outer.is_some() { 2 } else { 1 }
    }

    pub fn build(&self, eps: u32) -> Result<Subgroup> {
        let n = Modulus::new(self.ell as u64)?;
        let gamma = cns_generator(self.ell, eps)?;
        let w = canonical_involution(n);
        let mut gens = vec![gamma.pow(self.index, n)];
        if let Some(e) = self.outer {
            gens.push(gamma.pow(e, n).mul(&w, n));
        }
        Ok(closure(&gens, n)?.with_label(self.to_string()))
    }
}

fn check_bound(ell: u32, bound: u32, what: &str) -> Result<()> {
    check_prime(ell)?;
    if ell > bound {
        return Err(Error::EnumerationTooLarge(format!(
            "{what} at ell = {ell} exceeds the bound {bound}"
        )));
    }
    Ok(())
}

/// Subgroups of `C_ns^+(ell)` up to conjugacy in `C_ns^+(ell)`.
pub fn enumerate_subgroups_cns_plus(ell: u32) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_cns_plus_bounded(ell, DEFAULT_CNS_PLUS_BOUND, None)
}

pub fn enumerate_subgroups_cns_plus_bounded(
    ell: u32,
    bound: u32,
    epsilon: Option<u32>,
) -> Result<Vec<Subgroup>> {
    check_bound(ell, bound, "C_ns^+ enumeration")?;
    let eps = match epsilon {
        Some(e) => e,
        None => nonresidue(ell)?,
    };
    cns_plus_subgroup_specs(ell)
        .par_iter()
        .map(|s| s.build(eps))
        .collect()
}

/// All subgroups of `(Z/m)^2` as generator pairs, via Hermite normal forms
/// of the lattices between `m Z^2` and `Z^2`.
pub fn subgroups_of_square(m: u64) -> Vec<[(u64, u64); 2]> {
    let mut out = Vec::new();
    for a in divisors(m) {
        for d in divisors(m) {
            for b in 0..d {
                if ((m / a) * b) % d == 0 {
                    out.push([(a % m, b % m), (0, d % m)]);
                }
            }
        }
    }
    out
}

/// Subgroups of the upper-triangular Borel up to Borel conjugacy.
///
/// A subgroup either contains the unipotent radical `U` (order `ell`) or
/// meets it trivially; in the second case it is conjugate to a subgroup of
/// the diagonal torus (coprime orders). The image in the torus is a
/// conjugacy invariant, so the classes are exactly `T'` and `U·T'` for
/// subgroups `T'` of the torus `(F_ell^*)^2 ≅ (Z/(ell-1))^2`.
pub fn enumerate_subgroups_borel(ell: u32) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_borel_bounded(ell, DEFAULT_BOREL_BOUND)
}

pub fn enumerate_subgroups_borel_bounded(ell: u32, bound: u32) -> Result<Vec<Subgroup>> {
    check_bound(ell, bound, "Borel enumeration")?;
    let n = Modulus::new(ell as u64)?;
    let r = primitive_root(ell) as u64;
    let p = ell as u64;
    let m = p - 1;
    let unipotent = Mat2::new(1, 1, 0, 1, n);
    let torus = subgroups_of_square(m);
    let specs: Vec<(usize, bool)> = (0..torus.len())
        .flat_map(|i| [(i, false), (i, true)])
        .collect();
    specs
        .par_iter()
        .map(|&(i, with_u)| {
            let [(x1, y1), (x2, y2)] = torus[i];
            let mut gens: Vec<Mat2> = [(x1, y1), (x2, y2)]
                .iter()
                .filter(|&&(x, y)| x % m != 0 || y % m != 0)
                .map(|&(x, y)| Mat2::diag(pow_mod(r, x, p) as u32, pow_mod(r, y, p) as u32))
                .collect();
            if with_u {
                gens.push(unipotent);
            }
            let label = format!(
                "borel@{ell}[T=<({x1},{y1}),({x2},{y2})>{}]",
                if with_u { ",U" } else { "" }
            );
            Ok(closure(&gens, n)?.with_label(label))
        })
        .collect()
}

/// Exponent pairs `(x, y)` with `diag(r^x, r^y)` in the diagonal part of `g`.
pub fn torus_exponents(g: &Subgroup) -> Vec<(u64, u64)> {
    let n = g.modulus();
    let p = n.value() as u64;
    let r = primitive_root(n.value()) as u64;
    let log: Vec<u64> = {
        let mut t = vec![0u64; p as usize];
        let mut x = 1u64;
        for e in 0..p - 1 {
            t[x as usize] = e;
            x = x * r % p;
        }
        t
    };
    let mut out: Vec<(u64, u64)> = g
        .elements()
        .filter(|m| m.b == 0 && m.c == 0)
        .map(|m| (log[m.a as usize], log[m.d as usize]))
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2::closure;

    #[test]
    fn least_nonresidues() {
        assert_eq!(nonresidue(3).unwrap(), 2);
        assert_eq!(nonresidue(7).unwrap(), 3);
        assert_eq!(nonresidue(37).unwrap(), 2);
        assert!(nonresidue(2).is_err());
    }

    #[test]
    fn named_orders() {
        let ord = |kind, ell| NamedSubgroup::new(kind, ell).build().unwrap().order();
        assert_eq!(ord(NamedSubgroupKind::NonsplitCartan, 11), 120);
        assert_eq!(ord(NamedSubgroupKind::NonsplitCartanNormalizer, 11), 240);
        assert_eq!(ord(NamedSubgroupKind::SemiCartanPower(6), 13), 2);
        assert_eq!(ord(NamedSubgroupKind::Borel, 5), 80);
        assert_eq!(ord(NamedSubgroupKind::SplitCartanNormalizer, 7), 72);
        assert_eq!(ord(NamedSubgroupKind::FullGL2, 5), 480);
    }

    #[test]
    fn named_generators_reproduce_formula_sets() {
        for kind in [
            NamedSubgroupKind::Borel,
            NamedSubgroupKind::SplitCartan,
            NamedSubgroupKind::SplitCartanNormalizer,
            NamedSubgroupKind::NonsplitCartan,
            NamedSubgroupKind::NonsplitCartanNormalizer,
            NamedSubgroupKind::SemiCartan,
            NamedSubgroupKind::SemiCartanPower(2),
            NamedSubgroupKind::FullGL2,
        ] {
            for ell in [5, 7] {
                let g = NamedSubgroup::new(kind, ell).build().unwrap();
                let c = closure(g.generators(), g.modulus()).unwrap();
                assert_eq!(c.keys(), g.keys(), "{kind:?} at {ell}");
            }
        }
    }

    #[test]
    fn invalid_semicartan_power() {
        let err = NamedSubgroup::new(NamedSubgroupKind::SemiCartanPower(5), 13)
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        assert!(NamedSubgroup::new(NamedSubgroupKind::Borel, 13)
            .with_epsilon(4)
            .build()
            .is_err());
    }

    #[test]
    fn identifiers_round_trip() {
        for s in ["borel@17", "cns+@37", "semicartan^6@13", "gl2@13", "cs+@11", "cns@7~eps=5"] {
            let named: NamedSubgroup = s.parse().unwrap();
            assert_eq!(named.to_string(), s);
        }
        assert!("cartan@7".parse::<NamedSubgroup>().is_err());
        assert!("borel@12".parse::<NamedSubgroup>().is_err());
    }

    #[test]
    fn cns_plus_5_contains_whole_group_and_trivial() {
        let subs = enumerate_subgroups_cns_plus(5).unwrap();
        let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        assert!(orders.contains(&48));
        assert!(orders.contains(&1));
        let inner = cns_plus_subgroup_specs(5)
            .iter()
            .filter(|s| s.outer.is_none())
            .count();
        assert_eq!(inner, 8);
    }

    #[test]
    fn cns_plus_11_orders_divide_240() {
        let subs = enumerate_subgroups_cns_plus(11).unwrap();
        let parent = NamedSubgroup::new(NamedSubgroupKind::NonsplitCartanNormalizer, 11)
            .build()
            .unwrap();
        for s in &subs {
            assert_eq!(240 % s.order(), 0);
            assert!(s.is_subgroup_of(&parent));
        }
    }

    #[test]
    fn spec_orders_match_built_groups() {
        let eps = nonresidue(7).unwrap();
        for s in cns_plus_subgroup_specs(7) {
            assert_eq!(s.build(eps).unwrap().order() as u64, s.order());
        }
    }

    #[test]
    fn enumeration_bound() {
        assert!(matches!(
            enumerate_subgroups_cns_plus(43),
            Err(Error::EnumerationTooLarge(_))
        ));
        assert!(matches!(
            enumerate_subgroups_borel(19),
            Err(Error::EnumerationTooLarge(_))
        ));
    }

    #[test]
    fn square_subgroup_counts_match_brute_force() {
        for m in [2u64, 4, 6, 9] {
            let mut brute = std::collections::BTreeSet::new();
            for x1 in 0..m {
                for y1 in 0..m {
                    for x2 in 0..m {
                        for y2 in 0..m {
                            let mut set = std::collections::BTreeSet::new();
                            for i in 0..m {
                                for j in 0..m {
                                    set.insert(((i * x1 + j * x2) % m, (i * y1 + j * y2) % m));
                                }
                            }
                            brute.insert(set);
                        }
                    }
                }
            }
            assert_eq!(subgroups_of_square(m).len(), brute.len(), "m = {m}");
        }
    }

    #[test]
    fn borel_5_contents() {
        let subs = enumerate_subgroups_borel(5).unwrap();
        assert!(subs.iter().any(|s| s.order() == 80));
        let n = Modulus::new(5).unwrap();
        let unipotent = closure(&[Mat2::new(1, 1, 0, 1, n)], n).unwrap();
        assert_eq!(unipotent.order(), 5);
        assert!(subs.iter().any(|s| s.keys() == unipotent.keys()));
    }

    #[test]
    fn admissibility_examples() {
        let full = NamedSubgroup::new(NamedSubgroupKind::FullGL2, 7).build().unwrap();
        let a = admissibility(&full).unwrap();
        assert!(a.det_surjective && a.has_complex_conjugation && a.contains_minus_identity);

        for ell in [5, 7, 11, 13] {
            let cns = NamedSubgroup::new(NamedSubgroupKind::NonsplitCartan, ell)
                .build()
                .unwrap();
            assert!(!admissibility(&cns).unwrap().has_complex_conjugation);
        }

        let d = NamedSubgroup::new(NamedSubgroupKind::SemiCartan, 7).build().unwrap();
        let a = admissibility(&d).unwrap();
        assert!(a.det_surjective);
        assert!(!a.contains_minus_identity);
    }
}
