//! Matrix arithmetic over `Z/NZ`, group closure and orbits.
//!
//! Matrices are stored with canonical residues in `[0, N)`. Because the
//! supported moduli are below `2^16`, every matrix packs into a single `u64`
//! whose numeric order is the lexicographic order on `(a, b, c, d)`; subgroup
//! element sets are kept as sorted vectors of these keys.

mod group;

pub use group::{closure, closure_with_cap, default_closure_cap, orbit, Subgroup, SubgroupData};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_CAP: usize = 1 << 24;

/// The level `N` of the ring `Z/NZ`, with its prime-power view when present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus {
    value: u32,
    prime_power: Option<(u32, u32)>,
}

impl Modulus {
    pub fn new(value: u64) -> Result<Self> {
        if !(2..(1 << 16)).contains(&value) {
            return Err(Error::InvalidModulus(value));
        }
        let prime_power = arith::prime_power(value).map(|(p, k)| (p as u32, k));
        Ok(Modulus {
            value: value as u32,
            prime_power,
        })
    }

    /// `ell^n`, failing unless `ell` is prime.
    pub fn prime_power(ell: u64, n: u32) -> Result<Self> {
        if !arith::is_prime(ell) || n == 0 {
            return Err(Error::InvalidParameter(format!(
                "{ell}^{n} is not a prime power level"
            )));
        }
        let value = ell
            .checked_pow(n)
            .ok_or(Error::InvalidModulus(u64::MAX))?;
        Self::new(value)
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    /// `(ell, n)` with `ell^n = N`, if `N` is a prime power.
    pub fn factorization(&self) -> Option<(u32, u32)> {
        self.prime_power
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.prime_power, Some((_, 1)))
    }

    pub(crate) fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.value as i64) as u32
    }

    pub(crate) fn mul(&self, x: u32, y: u32) -> u32 {
        ((x as u64 * y as u64) % self.value as u64) as u32
    }

    pub(crate) fn add(&self, x: u32, y: u32) -> u32 {
        ((x as u64 + y as u64) % self.value as u64) as u32
    }

    pub(crate) fn sub(&self, x: u32, y: u32) -> u32 {
        ((x as u64 + self.value as u64 - y as u64) % self.value as u64) as u32
    }

    pub(crate) fn neg(&self, x: u32) -> u32 {
        (self.value - x) % self.value
    }

    /// Inverse of a residue, `None` when it is not a unit.
    pub fn inverse(&self, x: u32) -> Option<u32> {
        let (mut r0, mut r1) = (self.value as i64, x as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        (r0 == 1).then(|| self.reduce(t0))
    }

    pub fn is_unit(&self, x: u32) -> bool {
        arith::gcd(x as u64, self.value as u64) == 1
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;
    fn try_from(v: u64) -> Result<Self> {
        Modulus::new(v)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.value as u64
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A 2x2 matrix `[[a, b], [c, d]]` with residues reduced modulo some `N`.
///
/// The modulus is not stored; every operation takes it explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

/// Trace and determinant, encoding `x^2 - trace*x + det`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharPoly {
    pub trace: u32,
    pub det: u32,
}

impl Mat2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64, n: Modulus) -> Self {
        Mat2 {
            a: n.reduce(a),
            b: n.reduce(b),
            c: n.reduce(c),
            d: n.reduce(d),
        }
    }

    pub fn identity() -> Self {
        Mat2 { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn scalar(s: u32) -> Self {
        Mat2 { a: s, b: 0, c: 0, d: s }
    }

    pub fn diag(x: u32, y: u32) -> Self {
        Mat2 { a: x, b: 0, c: 0, d: y }
    }

    pub fn from_row(row: [i64; 4], n: Modulus) -> Self {
        Mat2::new(row[0], row[1], row[2], row[3], n)
    }

    pub fn to_row(self) -> [i64; 4] {
        [self.a as i64, self.b as i64, self.c as i64, self.d as i64]
    }

    pub fn pack(self) -> u64 {
        (self.a as u64) << 48 | (self.b as u64) << 32 | (self.c as u64) << 16 | self.d as u64
    }

    pub fn unpack(key: u64) -> Self {
        Mat2 {
            a: (key >> 48) as u32 & 0xffff,
            b: (key >> 32) as u32 & 0xffff,
            c: (key >> 16) as u32 & 0xffff,
            d: key as u32 & 0xffff,
        }
    }

    pub fn mul(&self, o: &Mat2, n: Modulus) -> Mat2 {
        let m = n.value as u64;
        let (a, b, c, d) = (self.a as u64, self.b as u64, self.c as u64, self.d as u64);
        let (e, f, g, h) = (o.a as u64, o.b as u64, o.c as u64, o.d as u64);
        Mat2 {
            a: ((a * e + b * g) % m) as u32,
            b: ((a * f + b * h) % m) as u32,
            c: ((c * e + d * g) % m) as u32,
            d: ((c * f + d * h) % m) as u32,
        }
    }

    pub fn det(&self, n: Modulus) -> u32 {
        n.sub(n.mul(self.a, self.d), n.mul(self.b, self.c))
    }

    pub fn trace(&self, n: Modulus) -> u32 {
        n.add(self.a, self.d)
    }

    pub fn char_poly(&self, n: Modulus) -> CharPoly {
        CharPoly {
            trace: self.trace(n),
            det: self.det(n),
        }
    }

    pub fn is_invertible(&self, n: Modulus) -> bool {
        n.is_unit(self.det(n))
    }

    pub fn inverse(&self, n: Modulus) -> Result<Mat2> {
        let det = self.det(n);
        let inv = n.inverse(det).ok_or(Error::SingularElement {
            det,
            modulus: n.value,
        })?;
        Ok(Mat2 {
            a: n.mul(self.d, inv),
            b: n.mul(n.neg(self.b), inv),
            c: n.mul(n.neg(self.c), inv),
            d: n.mul(self.a, inv),
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    pub fn is_scalar(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == self.d
    }

    /// Multiplicative order in `GL_2(Z/NZ)`. The matrix must be invertible.
    pub fn order(&self, n: Modulus) -> u64 {
        let mut k = 1;
        let mut p = *self;
        while !p.is_identity() {
            p = p.mul(self, n);
            k += 1;
        }
        k
    }

    /// Multiplicative order, given any multiple of it (such as the order of
    /// a group containing the matrix).
    pub fn order_dividing(&self, multiple: u64, n: Modulus) -> u64 {
        debug_assert!(self.pow(multiple, n).is_identity());
        let mut order = multiple;
        for (p, _) in arith::factorize(multiple) {
            while order % p == 0 && self.pow(order / p, n).is_identity() {
                order /= p;
            }
        }
        order
    }

    pub fn pow(&self, mut e: u64, n: Modulus) -> Mat2 {
        let mut result = Mat2::identity();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, n);
            }
            base = base.mul(&base, n);
            e >>= 1;
        }
        result
    }

    /// Left action on column vectors.
    pub fn apply(&self, v: &Vec2, n: Modulus) -> Vec2 {
        let x = n.add(n.mul(self.a, v.x), n.mul(self.b, v.y));
        let y = n.add(n.mul(self.c, v.x), n.mul(self.d, v.y));
        Vec2 {
            x,
            y,
            exact_order: v.exact_order,
        }
    }

    /// Entries reduced to a smaller level dividing the current one.
    pub fn reduce_to(&self, target: Modulus) -> Mat2 {
        let m = target.value;
        Mat2 {
            a: self.a % m,
            b: self.b % m,
            c: self.c % m,
            d: self.d % m,
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Coordinates of a torsion point in a fixed basis of `E[N]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vec2 {
    pub x: u32,
    pub y: u32,
    pub exact_order: u32,
}

impl Vec2 {
    pub fn new(x: i64, y: i64, n: Modulus) -> Self {
        let (x, y) = (n.reduce(x), n.reduce(y));
        let g = arith::gcd(arith::gcd(x as u64, y as u64), n.value as u64);
        Vec2 {
            x,
            y,
            exact_order: (n.value as u64 / g) as u32,
        }
    }

    pub fn neg(&self, n: Modulus) -> Vec2 {
        Vec2 {
            x: n.neg(self.x),
            y: n.neg(self.y),
            exact_order: self.exact_order,
        }
    }

    pub(crate) fn index(&self, n: Modulus) -> usize {
        self.x as usize * n.value as usize + self.y as usize
    }

    /// Every vector of exact order `N`, in lexicographic order.
    pub fn all_of_exact_order(n: Modulus) -> Vec<Vec2> {
        let m = n.value as i64;
        (0..m)
            .flat_map(|x| (0..m).map(move |y| (x, y)))
            .map(|(x, y)| Vec2::new(x, y, n))
            .filter(|v| v.exact_order == n.value)
            .collect()
    }
}
