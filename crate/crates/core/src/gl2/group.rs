use std::collections::VecDeque;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::{Mat2, Modulus, Vec2, DEFAULT_CLOSURE_CAP};
use crate::error::{Error, Result};

/// A finite subgroup of `GL_2(Z/NZ)` with its full, canonically sorted
/// element set.
///
/// Values of this type are always closed: they are produced either by
/// [`closure`] or by constructions that enumerate a known group exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    modulus: Modulus,
    generators: Vec<Mat2>,
    elements: Vec<u64>,
    label: Option<String>,
}

/// Reads `ISOPOINT_CLOSURE_CAP`, falling back to `2^24`.
pub fn default_closure_cap() -> usize {
    std::env::var("ISOPOINT_CLOSURE_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CLOSURE_CAP)
}

pub fn closure(gens: &[Mat2], n: Modulus) -> Result<Subgroup> {
    closure_with_cap(gens, n, default_closure_cap())
}

/// Breadth-first product saturation starting from the identity.
pub fn closure_with_cap(gens: &[Mat2], n: Modulus, cap: usize) -> Result<Subgroup> {
    for g in gens {
        if !g.is_invertible(n) {
            return Err(Error::SingularElement {
                det: g.det(n),
                modulus: n.value(),
            });
        }
    }
    let mut useful: Vec<Mat2> = Vec::new();
    for g in gens {
        if !g.is_identity() && !useful.contains(g) {
            useful.push(*g);
        }
    }

    let id = Mat2::identity();
    let mut seen = FxHashSet::default();
    seen.insert(id.pack());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &useful {
                let y = x.mul(s, n);
                if seen.insert(y.pack()) {
                    if seen.len() > cap {
                        return Err(Error::ClosureTooLarge { cap });
                    }
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut elements: Vec<u64> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(Subgroup {
        modulus: n,
        generators: gens.to_vec(),
        elements,
        label: None,
    })
}

/// The orbit of `v` under left multiplication, sorted.
///
/// Only the generators are applied: in a finite group the monoid they
/// generate is the whole group.
pub fn orbit(g: &Subgroup, v: &Vec2) -> Vec<Vec2> {
    let n = g.modulus;
    let size = n.value() as usize * n.value() as usize;
    let mut seen = vec![false; size];
    seen[v.index(n)] = true;
    let mut out = vec![*v];
    let mut queue = VecDeque::from([*v]);
    while let Some(w) = queue.pop_front() {
        for s in &g.generators {
            let u = s.apply(&w, n);
            let i = u.index(n);
            if !seen[i] {
                seen[i] = true;
                out.push(u);
                queue.push_back(u);
            }
        }
    }
    out.sort_unstable();
    out
}

impl Subgroup {
    pub fn trivial(n: Modulus) -> Subgroup {
        Subgroup {
            modulus: n,
            generators: Vec::new(),
            elements: vec![Mat2::identity().pack()],
            label: None,
        }
    }

    /// Builds a subgroup from a known-closed sorted key set.
    pub(crate) fn from_sorted_keys(
        n: Modulus,
        generators: Vec<Mat2>,
        elements: Vec<u64>,
    ) -> Subgroup {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup {
            modulus: n,
            generators,
            elements,
            label: None,
        }
    }

    /// Accepts an explicit element set, checking that it is a group.
    pub fn from_elements(n: Modulus, elements: &[Mat2]) -> Result<Subgroup> {
        let mut keys: Vec<u64> = elements.iter().map(|m| m.pack()).collect();
        keys.sort_unstable();
        keys.dedup();
        let set: FxHashSet<u64> = keys.iter().copied().collect();
        if !set.contains(&Mat2::identity().pack()) {
            return Err(Error::NotClosed);
        }
        for &x in &keys {
            let x = Mat2::unpack(x);
            if !x.is_invertible(n) {
                return Err(Error::SingularElement {
                    det: x.det(n),
                    modulus: n.value(),
                });
            }
            for &y in &keys {
                if !set.contains(&x.mul(&Mat2::unpack(y), n).pack()) {
                    return Err(Error::NotClosed);
                }
            }
        }
        let generators = keys.iter().map(|&k| Mat2::unpack(k)).collect();
        Ok(Subgroup::from_sorted_keys(n, generators, keys))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn display_label(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("<{} elements mod {}>", self.order(), self.modulus))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = Mat2> + '_ {
        self.elements.iter().map(|&k| Mat2::unpack(k))
    }

    pub(crate) fn keys(&self) -> &[u64] {
        &self.elements
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.elements.binary_search(&m.pack()).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.modulus == other.modulus && self.elements().all(|m| other.contains(&m))
    }

    /// The same group with a smaller generating set, if `gens` generate it.
    pub fn regenerate(&self, gens: Vec<Mat2>) -> Result<Subgroup> {
        let check = closure_with_cap(&gens, self.modulus, self.order())?;
        if check.elements != self.elements {
            return Err(Error::InvalidParameter(
                "generators do not generate the group".into(),
            ));
        }
        Ok(Subgroup {
            generators: gens,
            ..self.clone()
        })
    }

    pub fn det_image(&self) -> Vec<u32> {
        let n = self.modulus;
        let mut dets: Vec<u32> = self.elements().map(|m| m.det(n)).collect();
        dets.sort_unstable();
        dets.dedup();
        dets
    }

    pub fn contains_minus_identity(&self) -> bool {
        self.contains(&Mat2::scalar(self.modulus.value() - 1))
    }

    /// First element (in canonical order) with the given trace and
    /// determinant and, if requested, the given multiplicative order.
    pub fn find_element_with_charpoly(
        &self,
        trace: u32,
        det: u32,
        order_req: Option<u64>,
    ) -> Option<Mat2> {
        let n = self.modulus;
        self.elements().find(|m| {
            m.trace(n) == trace
                && m.det(n) == det
                && order_req.map_or(true, |k| m.order(n) == k)
        })
    }

    pub fn has_element_with_charpoly(&self, trace: u32, det: u32, order_req: Option<u64>) -> bool {
        self.find_element_with_charpoly(trace, det, order_req).is_some()
    }

    /// Image under reduction to a level dividing the current one.
    pub fn reduce_to(&self, target: Modulus) -> Result<Subgroup> {
        if self.modulus.value() % target.value() != 0 {
            return Err(Error::ModulusMismatch {
                expected: self.modulus.value(),
                found: target.value(),
            });
        }
        let mut keys: Vec<u64> = self.elements().map(|m| m.reduce_to(target).pack()).collect();
        keys.sort_unstable();
        keys.dedup();
        let gens = self.generators.iter().map(|g| g.reduce_to(target)).collect();
        Ok(Subgroup {
            modulus: target,
            generators: gens,
            elements: keys,
            label: self.label.clone(),
        })
    }

    /// Full preimage under `GL_2(Z/MZ) -> GL_2(Z/NZ)` for `M = N * ell^k`
    /// with the same prime `ell`, enumerated directly (no closure search).
    pub fn full_preimage(&self, target: Modulus, cap: usize) -> Result<Subgroup> {
        let n = self.modulus;
        let same_prime = match (n.factorization(), target.factorization()) {
            (Some((p, _)), Some((q, _))) => p == q,
            _ => false,
        };
        if !same_prime || target.value() % n.value() != 0 {
            return Err(Error::InvalidParameter(format!(
                "cannot lift from level {} to level {}",
                n, target
            )));
        }
        let step = n.value();
        let k = (target.value() / step) as usize;
        let total = self.order().saturating_mul(k.pow(4));
        if total > cap {
            return Err(Error::ClosureTooLarge { cap });
        }
        let mut keys = Vec::with_capacity(total);
        for g in self.elements() {
            for i in 0..k as u32 {
                let a = g.a + i * step;
                for j in 0..k as u32 {
                    let b = g.b + j * step;
                    for s in 0..k as u32 {
                        let c = g.c + s * step;
                        for t in 0..k as u32 {
                            keys.push(Mat2 { a, b, c, d: g.d + t * step }.pack());
                        }
                    }
                }
            }
        }
        keys.sort_unstable();
        let mut gens = self.generators.clone();
        if k > 1 {
            let m = step;
            gens.extend([
                Mat2 { a: 1 + m, b: 0, c: 0, d: 1 },
                Mat2 { a: 1, b: m, c: 0, d: 1 },
                Mat2 { a: 1, b: 0, c: m, d: 1 },
                Mat2 { a: 1, b: 0, c: 0, d: 1 + m },
            ]);
        }
        Ok(Subgroup {
            modulus: target,
            generators: gens,
            elements: keys,
            label: self.label.clone(),
        })
    }

    pub fn to_data(&self) -> SubgroupData {
        SubgroupData {
            modulus: self.modulus.value() as u64,
            generators: self.generators.iter().map(|g| g.to_row()).collect(),
            label: self.label.clone(),
        }
    }
}

/// JSON form of a subgroup: modulus, generator rows `[a, b, c, d]`, label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupData {
    pub modulus: u64,
    pub generators: Vec<[i64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl SubgroupData {
    pub fn realize(&self, cap: usize) -> Result<Subgroup> {
        let n = Modulus::new(self.modulus)?;
        let gens: Vec<Mat2> = self.generators.iter().map(|r| Mat2::from_row(*r, n)).collect();
        let mut g = closure_with_cap(&gens, n, cap)?;
        g.label = self.label.clone();
        Ok(g)
    }
}
