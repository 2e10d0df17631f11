//! Cited results from the literature, recorded as data.
//!
//! Nothing here is verified by computation. Each entry carries the citation
//! it rests on so that reports can separate computed facts from cited ones.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

pub const FACT_TABLE_VERSION: &str = "1";

pub const CITE_MAZUR_ISOGENY: &str =
    "Mazur, Rational isogenies of prime degree (1978): a rational l-isogeny forces l in {2,3,5,7,11,13,17,19,37,43,67,163}; non-CM and l prime > 7 leaves {11,17,37}";
pub const CITE_MAZUR_TORSION: &str =
    "Mazur, Modular curves and the Eisenstein ideal (1977): X_1(l) has no non-cuspidal rational points for primes l >= 11";
pub const CITE_ZYWINA: &str =
    "Zywina, On the possible images of the mod l representations associated to elliptic curves over Q";
pub const CITE_SPLIT_CARTAN: &str =
    "Bilu-Parent (2011), Bilu-Parent-Rebolledo (2013): split Cartan normalizer images only for l <= 7 or l = 13; Balakrishnan-Dogra-Muller-Tuitman-Vonk (2019): l = 13 does not occur";
pub const CITE_SERRE_EXCEPTIONAL: &str =
    "Serre (1972): exceptional images only for l <= 13; Zywina: none at l = 11";
pub const CITE_BDMTV_NONSPLIT_13: &str =
    "Balakrishnan-Dogra-Muller-Tuitman-Vonk (2019): no non-CM elliptic curve over Q has mod-13 image in the normalizer of a nonsplit Cartan";
pub const CITE_SERRE_INERTIA: &str =
    "Serre (1972), inertia at l: potentially ordinary or multiplicative reduction forces a conjugate of D^f, f = gcd(l-1, e), in the mod-l image";
pub const CITE_LEVEL_LOWERING: &str =
    "Bourdon et al., level of modular curves giving isolated j-invariants (2019), Thm 4.3 with Cor 5.3: if G_{E,l^n} is the full preimage of G_{E,l}, isolated points push forward to isolated points on X_1(l)";
pub const CITE_GREENBERG: &str =
    "Greenberg (2012), Greenberg-Rubin-Silverberg-Stoll: for l > 5 and E/Q non-CM with an l-isogeny, the l-adic image contains a Sylow pro-l subgroup of GL_2(Z_l)";
pub const CITE_LOZANO_SUPERSINGULAR: &str =
    "Lozano-Robledo, Thm 1.2(2): for potentially supersingular reduction, [Q(R):Q(lR)] is divisible by l^2; with the degree formula this gives deg(x) = deg(pi(x)) deg(pi)";
pub const CITE_RSZB: &str =
    "Rouse-Sutherland-Zureick-Brown, l-adic images of Galois for elliptic curves over Q: in the exceptional l = 13 case the l-adic image is the full preimage of the mod-l image";
pub const CITE_NONSPLIT_BOUND: &str =
    "Lozano-Robledo, field of definition of l-torsion, Thm 7.3: image in a nonsplit Cartan normalizer gives closed-point degree >= (l^2-1)/12";
pub const CITE_DKM: &str =
    "Derickx-Kamienny-Mazur, Prop. 6: X_1(17) has no P^1-isolated points of degree 4; J_1(17)(Q) is finite, so there are no isolated degree-4 points";
pub const CITE_RIEMANN_ROCH: &str =
    "Riemann-Roch: an isolated point of degree d on a curve of genus g > 0 has d <= g";
pub const CITE_ISOLATED_37: &str =
    "Bourdon et al. (2019), Prop. 8.4: the 37-isogeny j-invariant 7*11^3 gives an isolated point on X_1(37)";
pub const CITE_OPEN_37: &str =
    "isolation of the second 37-isogeny j-invariant on X_1(37) is not known";
pub const CITE_EXCEPTIONAL_13: &str =
    "Banwait-Cremona (2014), Zywina: exactly three rational j-invariants have mod-13 image with projective image S_4";

/// A rational j-invariant with its factored rendering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JInvariant {
    pub value: BigRational,
    pub factored: String,
}

impl JInvariant {
    /// `sign * Π p^k / Π q^m`.
    pub fn from_factors(negative: bool, num: &[(u64, u32)], den: &[(u64, u32)]) -> JInvariant {
        let prod = |fs: &[(u64, u32)]| -> BigInt {
            fs.iter()
                .fold(BigInt::one(), |acc, &(p, k)| acc * BigInt::from(p).pow(k))
        };
        let render = |fs: &[(u64, u32)]| -> String {
            fs.iter()
                .map(|&(p, k)| if k == 1 { p.to_string() } else { format!("{p}^{k}") })
                .collect::<Vec<_>>()
                .join("*")
        };
        let mut n = prod(num);
        if negative {
            n = -n;
        }
        let mut factored = format!("{}{}", if negative { "-" } else { "" }, render(num));
        if !den.is_empty() {
            let d = render(den);
            if den.len() > 1 {
                factored.push_str(&format!("/({d})"));
            } else {
                factored.push_str(&format!("/{d}"));
            }
        }
        JInvariant {
            value: BigRational::new(n, prod(den)),
            factored,
        }
    }

    pub fn from_value(value: BigRational) -> JInvariant {
        let factored = value.to_string();
        JInvariant { value, factored }
    }

    /// Exact decimal rendering `p` or `p/q`.
    pub fn expanded(&self) -> String {
        self.value.to_string()
    }

    pub fn negated(&self) -> JInvariant {
        let factored = match self.factored.strip_prefix('-') {
            Some(rest) => rest.to_string(),
            None => format!("-{}", self.factored),
        };
        JInvariant {
            value: -self.value.clone(),
            factored,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }
}

impl fmt::Display for JInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.factored, self.expanded())
    }
}

impl Serialize for JInvariant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("JInvariant", 2)?;
        st.serialize_field("factored", &self.factored)?;
        st.serialize_field("value", &self.expanded())?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsolationStatus {
    /// Isolation established in the literature.
    Known,
    Open,
}

/// A Borel j-invariant from the isogeny classification, as listed by level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BorelJInvariant {
    pub ell: u32,
    pub j: JInvariant,
    /// Another rendering found in the literature, with a note.
    pub alternate: Option<(JInvariant, &'static str)>,
    pub isolation: Option<(IsolationStatus, &'static str)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub id: &'static str,
    pub statement: String,
    pub citation: &'static str,
}

/// Immutable, versioned table of the cited inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactTable {
    pub version: &'static str,
    pub mazur_borel_primes: Vec<u32>,
    pub borel_j_invariants: Vec<BorelJInvariant>,
    /// `(ell^2 - 1)/12` lower bound for nonsplit normalizer images.
    pub nonsplit_degree_bound_divisor: u64,
    /// No isolated points of this degree on `X_1(17)`.
    pub dkm_excluded_degree_17: u64,
    /// Number of rational j-invariants with exceptional mod-13 image.
    pub exceptional_13_count: usize,
}

const SIGN_NOTE_37: &str =
    "sign differs between sources: the isogeny table lists -7*11^3, the classification statement writes 7*11^3";

impl FactTable {
    pub fn standard() -> FactTable {
        let j17a = JInvariant::from_factors(true, &[(17, 1), (373, 3)], &[(2, 17)]);
        let j17b = JInvariant::from_factors(true, &[(17, 2), (101, 3)], &[(2, 1)]);
        let j37a = JInvariant::from_factors(false, &[(7, 1), (11, 3)], &[]);
        let j37b = JInvariant::from_factors(true, &[(7, 1), (137, 3), (2083, 3)], &[]);
        let alt37 = j37a.negated();
        FactTable {
            version: FACT_TABLE_VERSION,
            mazur_borel_primes: vec![2, 3, 5, 7, 11, 17, 37],
            borel_j_invariants: vec![
                BorelJInvariant { ell: 17, j: j17a, alternate: None, isolation: None },
                BorelJInvariant { ell: 17, j: j17b, alternate: None, isolation: None },
                BorelJInvariant {
                    ell: 37,
                    j: j37a,
                    alternate: Some((alt37, SIGN_NOTE_37)),
                    isolation: Some((IsolationStatus::Known, CITE_ISOLATED_37)),
                },
                BorelJInvariant {
                    ell: 37,
                    j: j37b,
                    alternate: None,
                    isolation: Some((IsolationStatus::Open, CITE_OPEN_37)),
                },
            ],
            nonsplit_degree_bound_divisor: 12,
            dkm_excluded_degree_17: 4,
            exceptional_13_count: 3,
        }
    }

    pub fn borel_j_at(&self, ell: u32) -> Vec<&BorelJInvariant> {
        self.borel_j_invariants.iter().filter(|b| b.ell == ell).collect()
    }

    /// Looks up a Borel j-invariant, accepting the alternate rendering.
    pub fn find_borel_j(&self, ell: u32, value: &BigRational) -> Option<&BorelJInvariant> {
        self.borel_j_at(ell).into_iter().find(|b| {
            &b.j.value == value || b.alternate.as_ref().is_some_and(|(a, _)| &a.value == value)
        })
    }

    pub fn nonsplit_degree_bound(&self, ell: u32) -> u64 {
        let l = ell as u64;
        (l * l - 1) / self.nonsplit_degree_bound_divisor
    }

    /// Flat listing for display.
    pub fn entries(&self) -> Vec<Fact> {
        let mut out = vec![
            Fact {
                id: "mazur-borel-primes",
                statement: format!(
                    "a non-CM E/Q with mod-l image in a Borel has l in {:?}",
                    self.mazur_borel_primes
                ),
                citation: CITE_MAZUR_ISOGENY,
            },
            Fact {
                id: "mazur-torsion",
                statement: "X_1(l)(Q) consists of cusps for primes l >= 11, so non-cuspidal points have degree >= 2".into(),
                citation: CITE_MAZUR_TORSION,
            },
        ];
        for b in &self.borel_j_invariants {
            out.push(Fact {
                id: "borel-j-invariant",
                statement: format!("l = {}: j = {}", b.ell, b.j),
                citation: CITE_ZYWINA,
            });
            if let Some((alt, note)) = &b.alternate {
                out.push(Fact {
                    id: "borel-j-invariant-alternate",
                    statement: format!("l = {}: alternate rendering {} ({note})", b.ell, alt),
                    citation: CITE_ZYWINA,
                });
            }
            if let Some((status, cite)) = &b.isolation {
                out.push(Fact {
                    id: "isolation-status",
                    statement: format!("j = {}: {:?}", b.j.factored, status),
                    citation: cite,
                });
            }
        }
        out.extend([
            Fact {
                id: "split-cartan-excluded",
                statement: "no split Cartan normalizer images for l > 7 (l = 13 excluded)".into(),
                citation: CITE_SPLIT_CARTAN,
            },
            Fact {
                id: "exceptional-excluded-above-13",
                statement: "exceptional images only for l <= 13, and among l > 7 only l = 13".into(),
                citation: CITE_SERRE_EXCEPTIONAL,
            },
            Fact {
                id: "exceptional-13-count",
                statement: format!(
                    "{} rational j-invariants have exceptional mod-13 image",
                    self.exceptional_13_count
                ),
                citation: CITE_EXCEPTIONAL_13,
            },
            Fact {
                id: "nonsplit-13-empty",
                statement: "no non-CM E/Q has mod-13 image in C_ns^+(13)".into(),
                citation: CITE_BDMTV_NONSPLIT_13,
            },
            Fact {
                id: "nonsplit-degree-bound",
                statement: format!(
                    "closed points above a nonsplit normalizer image have degree >= (l^2-1)/{}",
                    self.nonsplit_degree_bound_divisor
                ),
                citation: CITE_NONSPLIT_BOUND,
            },
            Fact {
                id: "dkm-x1-17",
                statement: format!(
                    "no isolated points of degree {} on X_1(17)",
                    self.dkm_excluded_degree_17
                ),
                citation: CITE_DKM,
            },
            Fact {
                id: "serre-semicartan",
                statement: "potentially ordinary/multiplicative reduction at l gives a conjugate of D^f in G_{E,l}".into(),
                citation: CITE_SERRE_INERTIA,
            },
            Fact {
                id: "level-lowering",
                statement: "full-preimage l-adic image lets isolated points descend to X_1(l); holds for surjective mod-l image with l > 3".into(),
                citation: CITE_LEVEL_LOWERING,
            },
            Fact {
                id: "greenberg",
                statement: "Borel images with l > 5 have l-adic image as large as the mod-l image allows".into(),
                citation: CITE_GREENBERG,
            },
            Fact {
                id: "supersingular-tower",
                statement: "nonsplit normalizer images with l > 7: degrees multiply along X_1(l^n) -> X_1(l)".into(),
                citation: CITE_LOZANO_SUPERSINGULAR,
            },
            Fact {
                id: "exceptional-l-adic",
                statement: "exceptional mod-13 images have full-preimage 13-adic image".into(),
                citation: CITE_RSZB,
            },
        ]);
        out
    }
}
