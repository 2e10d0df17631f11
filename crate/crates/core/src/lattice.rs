//! Generic brute-force subgroup lattice for small matrix groups.
//!
//! This is deliberately structure-blind: it only uses a multiplication
//! table. It serves as an independent check on the structured enumerations
//! in [`crate::atlas`] and for exhaustive sweeps over all subgroups of
//! small groups such as `GL_2(F_5)`.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::gl2::{Mat2, Subgroup};

/// Largest ambient group this module will tabulate.
pub const MAX_AMBIENT_ORDER: usize = 4096;

struct Table {
    elems: Vec<Mat2>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    identity: u16,
}

impl Table {
    fn new(g: &Subgroup) -> Result<Table> {
        let size = g.order();
        if size > MAX_AMBIENT_ORDER {
            return Err(Error::EnumerationTooLarge(format!(
                "lattice of a group of order {size}"
            )));
        }
        let n = g.modulus();
        let elems: Vec<Mat2> = g.elements().collect();
        let index: FxHashMap<u64, u16> = elems
            .iter()
            .enumerate()
            .map(|(i, m)| (m.pack(), i as u16))
            .collect();
        let mut mul = vec![0u16; size * size];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                mul[i * size + j] = index[&x.mul(y, n).pack()];
            }
        }
        let identity = index[&Mat2::identity().pack()];
        let inv = (0..size)
            .map(|i| {
                (0..size)
                    .find(|&j| mul[i * size + j] == identity)
                    .expect("group element without inverse") as u16
            })
            .collect();
        Ok(Table {
            elems,
            mul,
            inv,
            identity,
        })
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    fn prod(&self, i: u16, j: u16) -> u16 {
        self.mul[i as usize * self.len() + j as usize]
    }

    fn words(&self) -> usize {
        self.len().div_ceil(64)
    }

    /// Closure of `gens` as a bitset.
    fn generate(&self, gens: &[u16]) -> Vec<u64> {
        let mut bits = vec![0u64; self.words()];
        let set = |bits: &mut Vec<u64>, i: u16| {
            let (w, b) = (i as usize / 64, i as usize % 64);
            let fresh = bits[w] & (1 << b) == 0;
            bits[w] |= 1 << b;
            fresh
        };
        set(&mut bits, self.identity);
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.prod(x, s);
                if set(&mut bits, y) {
                    stack.push(y);
                }
            }
        }
        bits
    }

    fn members(&self, bits: &[u64]) -> Vec<u16> {
        (0..self.len() as u16)
            .filter(|&i| bits[i as usize / 64] >> (i % 64) & 1 == 1)
            .collect()
    }

    fn conjugate(&self, bits: &[u64], by: u16) -> Vec<u64> {
        let mut out = vec![0u64; self.words()];
        let by_inv = self.inv[by as usize];
        for h in self.members(bits) {
            let c = self.prod(self.prod(by, h), by_inv);
            out[c as usize / 64] |= 1 << (c % 64);
        }
        out
    }

    fn to_subgroup(&self, g: &Subgroup, bits: &[u64], gens: &[u16]) -> Subgroup {
        let mut keys: Vec<u64> = self
            .members(bits)
            .into_iter()
            .map(|i| self.elems[i as usize].pack())
            .collect();
        keys.sort_unstable();
        let gens = gens.iter().map(|&i| self.elems[i as usize]).collect();
        Subgroup::from_sorted_keys(g.modulus(), gens, keys)
    }
}

/// Every subgroup of `g`, ordered by (order, element keys).
///
/// Each subgroup is reached by adjoining one cyclic subgroup at a time,
/// starting from the trivial group.
pub fn all_subgroups(g: &Subgroup) -> Result<Vec<Subgroup>> {
    let t = Table::new(g)?;
    let mut cyclic: Vec<(u16, Vec<u64>)> = Vec::new();
    let mut seen_cyclic = FxHashSet::default();
    for i in 0..t.len() as u16 {
        let bits = t.generate(&[i]);
        if seen_cyclic.insert(bits.clone()) {
            cyclic.push((i, bits));
        }
    }

    let trivial = t.generate(&[]);
    let mut found: FxHashMap<Vec<u64>, Vec<u16>> = FxHashMap::default();
    found.insert(trivial.clone(), Vec::new());
    let mut queue = vec![trivial];
    while let Some(h) = queue.pop() {
        let gens = found[&h].clone();
        for (g_idx, c_bits) in &cyclic {
            let inside = h.iter().zip(c_bits).all(|(a, b)| b & !a == 0);
            if inside {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(*g_idx);
            let j = t.generate(&new_gens);
            if !found.contains_key(&j) {
                found.insert(j.clone(), new_gens);
                queue.push(j);
            }
        }
    }

    let mut out: Vec<Subgroup> = found
        .iter()
        .map(|(bits, gens)| t.to_subgroup(g, bits, gens))
        .collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.keys().cmp(b.keys())));
    Ok(out)
}

/// Partition of `subs` into conjugacy classes under `g`. Each class is a
/// list of indices into `subs`; classes are ordered by first index.
pub fn conjugacy_classes(g: &Subgroup, subs: &[Subgroup]) -> Result<Vec<Vec<usize>>> {
    let t = Table::new(g)?;
    let index: FxHashMap<u64, u16> = t
        .elems
        .iter()
        .enumerate()
        .map(|(i, m)| (m.pack(), i as u16))
        .collect();
    let to_bits = |s: &Subgroup| -> Result<Vec<u64>> {
        let mut bits = vec![0u64; t.words()];
        for m in s.elements() {
            let i = *index.get(&m.pack()).ok_or_else(|| {
                Error::InvalidParameter("subgroup is not contained in the ambient group".into())
            })?;
            bits[i as usize / 64] |= 1 << (i % 64);
        }
        Ok(bits)
    };
    let mut canon: Vec<Vec<u64>> = Vec::with_capacity(subs.len());
    for s in subs {
        let bits = to_bits(s)?;
        let min = (0..t.len() as u16)
            .map(|x| t.conjugate(&bits, x))
            .min()
            .expect("nonempty group");
        canon.push(min);
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut by_canon: FxHashMap<&Vec<u64>, usize> = FxHashMap::default();
    for (i, c) in canon.iter().enumerate() {
        match by_canon.get(c) {
            Some(&k) => classes[k].push(i),
            None => {
                by_canon.insert(c, classes.len());
                classes.push(vec![i]);
            }
        }
    }
    Ok(classes)
}
