//! Degrees of closed points of `X_1(N)` above a fixed j-invariant.
//!
//! A closed point is a `G`-orbit of `±`-classes of vectors of exact order
//! `N`, where `G` is the Galois image. For an orbit `O` of a vector `v`,
//! `[k(P):k] = |O|` and the degree is `|O|/2` when `-v ∈ O`, else `|O|`.
//! The condition `2P ≠ O` always holds here since only odd `N` is accepted.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::atlas::{admissibility, GaloisAdmissibility};
use crate::error::{Error, Result};
use crate::gl2::{Modulus, Subgroup, Vec2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cx {
    Half,
    One,
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cx::Half => "1/2",
            Cx::One => "1",
        })
    }
}

impl Serialize for Cx {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One closed point: a `G`-orbit of vectors, merged with its negative when
/// the two are distinct orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedPoint {
    pub representative: Vec2,
    pub orbit: Vec<Vec2>,
    pub cx: Cx,
    pub degree: u64,
}

impl ClosedPoint {
    pub fn orbit_field_degree(&self) -> u64 {
        self.orbit.len() as u64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DegreeEntry {
    pub degree: u64,
    pub orbit_field_degree: u64,
    pub cx: Cx,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub level: u32,
    pub group_label: String,
    pub entries: Vec<DegreeEntry>,
    pub min_degree: u64,
}

impl DegreeProfile {
    /// `Σ degree · count`; equals half the number of exact-order-`N` vectors.
    pub fn degree_sum(&self) -> u64 {
        self.entries.iter().map(|e| e.degree * e.count).sum()
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = self.entries.iter().map(|e| e.degree).collect();
        d.dedup();
        d
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,orbit_field_degree,cx,count\n");
        for e in &self.entries {
            out.push_str(&format!("{},{},{},{}\n", e.degree, e.orbit_field_degree, e.cx, e.count));
        }
        out
    }
}

fn check_level(g: &Subgroup, n: Modulus) -> Result<()> {
    if g.modulus() != n {
        return Err(Error::ModulusMismatch {
            expected: n.value(),
            found: g.modulus().value(),
        });
    }
    if n.value() % 2 == 0 {
        return Err(Error::OutOfScope(format!(
            "even level {n}: only odd levels are handled"
        )));
    }
    Ok(())
}

/// All closed points above the j-invariant, ordered by representative.
pub fn closed_points(g: &Subgroup, n: Modulus) -> Result<Vec<ClosedPoint>> {
    check_level(g, n)?;
    let size = n.value() as usize * n.value() as usize;
    let mut visited = vec![false; size];
    let mut points = Vec::new();
    for v in Vec2::all_of_exact_order(n) {
        if visited[v.index(n)] {
            continue;
        }
        let orbit = crate::gl2::orbit(g, &v);
        for w in &orbit {
            visited[w.index(n)] = true;
        }
        let neg = v.neg(n);
        debug_assert_ne!(neg, v);
        let symmetric = orbit.binary_search(&neg).is_ok();
        let (cx, degree) = if symmetric {
            (Cx::Half, orbit.len() as u64 / 2)
        } else {
            for w in &orbit {
                visited[w.neg(n).index(n)] = true;
            }
            (Cx::One, orbit.len() as u64)
        };
        points.push(ClosedPoint {
            representative: v,
            orbit,
            cx,
            degree,
        });
    }
    Ok(points)
}

pub fn degree_profile(g: &Subgroup, n: Modulus) -> Result<DegreeProfile> {
    let points = closed_points(g, n)?;
    let mut entries: Vec<DegreeEntry> = Vec::new();
    for p in &points {
        let key = (p.degree, p.orbit_field_degree(), p.cx);
        match entries
            .iter_mut()
            .find(|e| (e.degree, e.orbit_field_degree, e.cx) == key)
        {
            Some(e) => e.count += 1,
            None => entries.push(DegreeEntry {
                degree: key.0,
                orbit_field_degree: key.1,
                cx: key.2,
                count: 1,
            }),
        }
    }
    entries.sort();
    let min_degree = entries.first().map(|e| e.degree).unwrap_or(0);
    Ok(DegreeProfile {
        level: n.value(),
        group_label: g.display_label(),
        entries,
        min_degree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub group_label: String,
    pub order: usize,
    pub min_degree: u64,
    pub admissibility: Option<GaloisAdmissibility>,
    /// Set when a filter was given and the group fails it.
    pub excluded: bool,
}

/// Minimum closed-point degree for each group. With a filter, groups that
/// fail it are still reported, flagged `excluded`. Admissibility is read at
/// the prime level below `N`.
pub fn min_degree_scan(
    groups: &[Subgroup],
    n: Modulus,
    filter: Option<&(dyn Fn(&GaloisAdmissibility) -> bool + Sync)>,
) -> Result<Vec<ScanRow>> {
    if groups.is_empty() {
        return Err(Error::InvalidParameter("empty group list".into()));
    }
    groups
        .par_iter()
        .map(|g| {
            let profile = degree_profile(g, n)?;
            let (adm, excluded) = match filter {
                Some(f) => {
                    let prime = match n.factorization() {
                        Some((p, _)) => Modulus::new(p as u64)?,
                        None => {
                            return Err(Error::OutOfScope(format!(
                                "admissibility at non-prime-power level {n}"
                            )))
                        }
                    };
                    let a = admissibility(&g.reduce_to(prime)?)?;
                    (Some(a), !f(&a))
                }
                None => (None, false),
            };
            Ok(ScanRow {
                group_label: g.display_label(),
                order: g.order(),
                min_degree: profile.min_degree,
                admissibility: adm,
                excluded,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{NamedSubgroup, NamedSubgroupKind};

    fn named(kind: NamedSubgroupKind, ell: u32) -> Subgroup {
        NamedSubgroup::new(kind, ell).build().unwrap()
    }

    #[test]
    fn full_gl2_mod_5() {
        let g = named(NamedSubgroupKind::FullGL2, 5);
        let p = degree_profile(&g, g.modulus()).unwrap();
        assert_eq!(
            p.entries,
            vec![DegreeEntry {
                degree: 12,
                orbit_field_degree: 24,
                cx: Cx::Half,
                count: 1
            }]
        );
        assert_eq!(p.min_degree, 12);
    }

    #[test]
    fn cns_plus_11_single_point() {
        let g = named(NamedSubgroupKind::NonsplitCartanNormalizer, 11);
        let p = degree_profile(&g, g.modulus()).unwrap();
        assert_eq!(p.entries.len(), 1);
        assert_eq!(p.min_degree, 60);
        assert_eq!(p.entries[0].count, 1);
    }

    #[test]
    fn borel_37_line_point() {
        let g = named(NamedSubgroupKind::Borel, 37);
        let p = degree_profile(&g, g.modulus()).unwrap();
        assert_eq!(p.min_degree, 18);
        let e = p.entries[0];
        assert_eq!((e.orbit_field_degree, e.cx), (36, Cx::Half));
    }

    #[test]
    fn trivial_group_has_degree_one_points() {
        let n = Modulus::new(5).unwrap();
        let p = degree_profile(&Subgroup::trivial(n), n).unwrap();
        assert_eq!(p.min_degree, 1);
        assert_eq!(p.entries, vec![DegreeEntry { degree: 1, orbit_field_degree: 1, cx: Cx::One, count: 12 }]);
    }

    #[test]
    fn even_level_is_out_of_scope() {
        let n = Modulus::new(8).unwrap();
        assert!(matches!(
            degree_profile(&Subgroup::trivial(n), n),
            Err(Error::OutOfScope(_))
        ));
    }

    #[test]
    fn level_mismatch() {
        let g = named(NamedSubgroupKind::Borel, 7);
        assert!(matches!(
            degree_profile(&g, Modulus::new(11).unwrap()),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn scan_flags_and_errors() {
        let n = Modulus::new(11).unwrap();
        assert!(min_degree_scan(&[], n, None).is_err());
        let g = named(NamedSubgroupKind::NonsplitCartanNormalizer, 11);
        let filter = |a: &GaloisAdmissibility| a.admits_nonsplit_image();
        let rows = min_degree_scan(&[g], n, Some(&filter)).unwrap();
        assert_eq!(rows[0].min_degree, 60);
        assert!(!rows[0].excluded);
        assert!(rows[0].min_degree >= 10);
    }

    #[test]
    fn csv_rows() {
        let g = named(NamedSubgroupKind::FullGL2, 5);
        let p = degree_profile(&g, g.modulus()).unwrap();
        assert_eq!(p.to_csv(), "degree,orbit_field_degree,cx,count\n12,24,1/2,1\n");
    }
}
