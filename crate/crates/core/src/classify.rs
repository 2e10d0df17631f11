//! Case analysis over the possible mod-`ell` images for primes `ell > 7`,
//! ingestion of literature-sourced image generators, and reports.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::arith::{is_prime, prime_power};
use crate::atlas::{NamedSubgroup, NamedSubgroupKind};
use crate::criteria::{level_lowering_ok, riemann_roch_eliminates, Justification, Outcome, RuleVerdict};
use crate::curves::invariants_x1;
use crate::degrees::{closed_points, degree_profile};
use crate::error::{Error, Result};
use crate::facts::*;
use crate::gl2::{closure, Mat2, Modulus, Subgroup};

pub const REPORT_SCHEMA: &str = "isopoint.report/1";
pub const DEFAULT_RANGE_END: u32 = 37;

const BUNDLED_TABLE: &str = include_str!("../data/images.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImageClass {
    Surjective,
    Borel,
    SplitCartanNormalizer,
    NonsplitCartanNormalizer,
    Exceptional,
}

impl ImageClass {
    pub const ALL: [ImageClass; 5] = [
        ImageClass::Surjective,
        ImageClass::Borel,
        ImageClass::SplitCartanNormalizer,
        ImageClass::NonsplitCartanNormalizer,
        ImageClass::Exceptional,
    ];

    /// Whether a non-CM curve over `Q` can have image of this class at the
    /// prime `ell > 7`, with the citation deciding it.
    pub fn admissible_at(self, ell: u32, facts: &FactTable) -> (bool, &'static str) {
        match self {
            ImageClass::Surjective => (true, CITE_ZYWINA),
            ImageClass::Borel => (facts.mazur_borel_primes.contains(&ell), CITE_MAZUR_ISOGENY),
            ImageClass::SplitCartanNormalizer => (ell <= 7, CITE_SPLIT_CARTAN),
            ImageClass::NonsplitCartanNormalizer => (true, CITE_ZYWINA),
            ImageClass::Exceptional => (ell <= 7 || ell == 13, CITE_SERRE_EXCEPTIONAL),
        }
    }

    /// The maximal subgroup of `GL_2(F_ell)` for the class, when there is one.
    pub fn ambient_kind(self) -> Option<NamedSubgroupKind> {
        match self {
            ImageClass::Surjective => Some(NamedSubgroupKind::FullGL2),
            ImageClass::Borel => Some(NamedSubgroupKind::Borel),
            ImageClass::SplitCartanNormalizer => Some(NamedSubgroupKind::SplitCartanNormalizer),
            ImageClass::NonsplitCartanNormalizer => Some(NamedSubgroupKind::NonsplitCartanNormalizer),
            ImageClass::Exceptional => None,
        }
    }
}

impl fmt::Display for ImageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImageClass::Surjective => "surjective",
            ImageClass::Borel => "borel",
            ImageClass::SplitCartanNormalizer => "split_cartan_normalizer",
            ImageClass::NonsplitCartanNormalizer => "nonsplit_cartan_normalizer",
            ImageClass::Exceptional => "exceptional",
        })
    }
}

impl FromStr for ImageClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ImageClass::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown image class `{s}`")))
    }
}

/// On-disk form of one image record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageRecordData {
    pub label: String,
    pub class: ImageClass,
    pub ell: u32,
    pub level: u32,
    /// `"p"` or `"p/q"`.
    pub j_invariant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_factored: Option<String>,
    /// Rows `[a, b, c, d]` of `[[a, b], [c, d]]`.
    pub generators: Vec<[i64; 4]>,
    pub source: String,
}

/// A validated image record with its realized group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalImageRecord {
    pub data: ImageRecordData,
    pub j: JInvariant,
    pub group: Subgroup,
}

impl ExternalImageRecord {
    pub fn label(&self) -> &str {
        &self.data.label
    }

    pub fn class(&self) -> ImageClass {
        self.data.class
    }

    pub fn ell(&self) -> u32 {
        self.data.ell
    }

    /// The image reduced to level `ell`.
    pub fn mod_ell(&self) -> Result<Subgroup> {
        self.group.reduce_to(Modulus::new(self.data.ell as u64)?)
    }

    pub fn from_data(data: ImageRecordData) -> Result<Self> {
        let bad = |m: String| Error::Data(format!("record `{}`: {m}", data.label));
        if data.ell < 3 || !is_prime(data.ell as u64) {
            return Err(bad(format!("ell = {} is not an odd prime", data.ell)));
        }
        match prime_power(data.level as u64) {
            Some((p, _)) if p == data.ell as u64 => {}
            _ => return Err(bad(format!("level {} is not a power of {}", data.level, data.ell))),
        }
        let value = BigRational::from_str(data.j_invariant.trim())
            .map_err(|e| bad(format!("j-invariant `{}`: {e}", data.j_invariant)))?;
        let j = JInvariant {
            factored: data.j_factored.clone().unwrap_or_else(|| value.to_string()),
            value,
        };
        if data.generators.is_empty() {
            return Err(bad("no generators".into()));
        }
        let n = Modulus::new(data.level as u64)?;
        let gens: Vec<Mat2> = data.generators.iter().map(|&r| Mat2::from_row(r, n)).collect();
        for (i, g) in gens.iter().enumerate() {
            if !g.is_invertible(n) {
                return Err(bad(format!(
                    "singular element: generator {i} {:?} has determinant {} mod {n}",
                    data.generators[i],
                    g.det(n)
                )));
            }
        }
        let group = closure(&gens, n)?.with_label(data.label.clone());
        let p = Modulus::new(data.ell as u64)?;
        let reduced = group.reduce_to(p)?;
        if reduced.det_image().len() as u32 != data.ell - 1 {
            return Err(bad("determinant is not surjective mod ell".into()));
        }
        match data.class.ambient_kind() {
            Some(kind) => {
                let ambient = NamedSubgroup::new(kind, data.ell).build()?;
                if !reduced.is_subgroup_of(&ambient) {
                    return Err(bad(format!(
                        "containment failure: generators do not lie in {}",
                        NamedSubgroup::new(kind, data.ell)
                    )));
                }
            }
            None => {
                let scalars = reduced.elements().filter(|m| m.is_scalar()).count();
                let projective = reduced.order() / scalars;
                if ![12, 24, 60].contains(&projective) {
                    return Err(bad(format!(
                        "containment failure: projective image has order {projective}, not A_4, S_4 or A_5"
                    )));
                }
            }
        }
        Ok(ExternalImageRecord { data, j, group })
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Parses and validates a JSON array of image records. Errors name the
/// line on which the offending record starts.
pub fn parse_image_table(text: &str) -> Result<Vec<ExternalImageRecord>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let raws: Vec<&RawValue> = serde_json::from_str(text).map_err(|e| Error::Table {
        line: e.line(),
        message: format!("schema violation: {e}"),
    })?;
    let base = text.as_ptr() as usize;
    raws.into_iter()
        .map(|raw| {
            let line = line_of(text, raw.get().as_ptr() as usize - base);
            let data: ImageRecordData = serde_json::from_str(raw.get()).map_err(|e| Error::Table {
                line: line + e.line() - 1,
                message: format!("schema violation: {e}"),
            })?;
            ExternalImageRecord::from_data(data).map_err(|e| match e {
                Error::Data(message) => Error::Table { line, message },
                other => Error::Table {
                    line,
                    message: other.to_string(),
                },
            })
        })
        .collect()
}

pub fn load_image_table(path: impl AsRef<Path>) -> Result<Vec<ExternalImageRecord>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
    parse_image_table(&text)
}

/// The image records shipped with the crate.
pub fn bundled_image_table() -> Result<Vec<ExternalImageRecord>> {
    parse_image_table(BUNDLED_TABLE)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Survivor {
    pub ell: u32,
    pub j_invariant: JInvariant,
    pub alternate: Option<SurvivorAlternate>,
    /// `"candidate: isolation known"` or `"candidate: open"`.
    pub status: String,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurvivorAlternate {
    pub j_invariant: JInvariant,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub schema: &'static str,
    pub fact_table_version: &'static str,
    pub ell: u32,
    pub n: u32,
    pub genus: Option<u64>,
    /// Concluding verdict for each class, or for each j-invariant of a class.
    pub per_class_verdicts: Vec<RuleVerdict>,
    pub surviving_j_invariants: Vec<Survivor>,
    /// Every rule applied, in order.
    pub trace: Vec<RuleVerdict>,
}

impl ClassificationReport {
    pub fn empty(ell: u32, n: u32) -> Self {
        ClassificationReport {
            schema: REPORT_SCHEMA,
            fact_table_version: FACT_TABLE_VERSION,
            ell,
            n,
            genus: None,
            per_class_verdicts: Vec::new(),
            surviving_j_invariants: Vec::new(),
            trace: Vec::new(),
        }
    }

    pub fn has_survivors(&self) -> bool {
        !self.surviving_j_invariants.is_empty()
    }

    /// Concluding verdicts with the given outcome.
    pub fn concluding(&self, outcome: Outcome) -> impl Iterator<Item = &RuleVerdict> {
        self.per_class_verdicts.iter().filter(move |v| v.outcome == outcome)
    }
}

struct Ctx<'a> {
    ell: u32,
    genus: u64,
    facts: &'a FactTable,
    table: &'a [ExternalImageRecord],
    trace: Vec<RuleVerdict>,
    verdicts: Vec<RuleVerdict>,
    survivors: Vec<Survivor>,
}

impl Ctx<'_> {
    fn push(&mut self, v: RuleVerdict) {
        self.trace.push(v);
    }

    fn conclude(&mut self, v: RuleVerdict) {
        self.trace.push(v.clone());
        self.verdicts.push(v);
    }

    fn records(&self, class: ImageClass) -> Vec<&ExternalImageRecord> {
        self.table
            .iter()
            .filter(|r| r.class() == class && r.ell() == self.ell)
            .collect()
    }
}

/// Decides, class by class, whether an isolated point on `X_1(ell^n)` with
/// rational non-CM j-invariant can survive the implemented criteria.
pub fn classify(ell: u32, n: u32, table: &[ExternalImageRecord]) -> Result<ClassificationReport> {
    if ell <= 7 || !is_prime(ell as u64) {
        return Err(Error::OutOfScope(format!("classification needs a prime > 7, got {ell}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let facts = FactTable::standard();
    let genus = invariants_x1(Modulus::new(ell as u64)?)?.genus;
    let mut ctx = Ctx {
        ell,
        genus,
        facts: &facts,
        table,
        trace: Vec::new(),
        verdicts: Vec::new(),
        survivors: Vec::new(),
    };
    for class in ImageClass::ALL {
        let (ok, cite) = class.admissible_at(ell, &facts);
        if !ok {
            let why = match class {
                ImageClass::Borel => "class inadmissible (Mazur)".to_string(),
                _ => format!("class inadmissible at ell = {ell}"),
            };
            ctx.conclude(RuleVerdict::new(
                "class-inadmissible",
                Some(class),
                Outcome::Eliminates,
                Justification::new(why).cite(cite),
            ));
            continue;
        }
        let lowering = level_lowering_ok(class, ell)?;
        let lowered = lowering.outcome == Outcome::Applies;
        ctx.push(lowering.about(format!("X_1({ell}^{n}) -> X_1({ell})")));
        if !lowered {
            ctx.conclude(RuleVerdict::new(
                "level-lowering",
                Some(class),
                Outcome::InsufficientData,
                Justification::new("cannot descend to level ell").cite(CITE_LEVEL_LOWERING),
            ));
            continue;
        }
        match class {
            ImageClass::Surjective => surjective(&mut ctx),
            ImageClass::Borel => borel(&mut ctx)?,
            ImageClass::NonsplitCartanNormalizer => nonsplit(&mut ctx),
            ImageClass::Exceptional => exceptional(&mut ctx)?,
            ImageClass::SplitCartanNormalizer => unreachable!("no split Cartan images above 7"),
        }
    }
    Ok(ClassificationReport {
        schema: REPORT_SCHEMA,
        fact_table_version: FACT_TABLE_VERSION,
        ell,
        n,
        genus: Some(genus),
        per_class_verdicts: ctx.verdicts,
        surviving_j_invariants: ctx.survivors,
        trace: ctx.trace,
    })
}

fn surjective(ctx: &mut Ctx) {
    // GL_2 is transitive on nonzero vectors and contains -I.
    let l = ctx.ell as u64;
    let degree = (l * l - 1) / 2;
    let out = if riemann_roch_eliminates(degree, ctx.genus) {
        Outcome::Eliminates
    } else {
        Outcome::Survives
    };
    ctx.conclude(RuleVerdict::new(
        "riemann-roch",
        Some(ImageClass::Surjective),
        out,
        Justification::new(format!(
            "GL_2(F_{l}) acts transitively on the {} nonzero vectors and contains -I, so the single point has degree {degree}; genus is {}",
            l * l - 1,
            ctx.genus
        ))
        .cite(CITE_RIEMANN_ROCH)
        .witness("degree", degree)
        .witness("genus", ctx.genus),
    ));
}

fn nonsplit(ctx: &mut Ctx) {
    let bound = ctx.facts.nonsplit_degree_bound(ctx.ell);
    let out = if riemann_roch_eliminates(bound, ctx.genus) {
        Outcome::Eliminates
    } else {
        Outcome::InsufficientData
    };
    ctx.conclude(RuleVerdict::new(
        "nonsplit-degree-bound",
        Some(ImageClass::NonsplitCartanNormalizer),
        out,
        Justification::new(format!(
            "every non-cuspidal point has degree >= (l^2 - 1)/12 = {bound}, which exceeds the genus {}",
            ctx.genus
        ))
        .cite(CITE_NONSPLIT_BOUND)
        .cite(CITE_RIEMANN_ROCH)
        .witness("degree_lower_bound", bound)
        .witness("genus", ctx.genus)
        .witness("margin", bound as i64 - ctx.genus as i64),
    ));
}

/// Eliminates every closed point of `g` above one j-invariant, or reports
/// the first point that no rule removes.
fn eliminate_points(ctx: &mut Ctx, class: ImageClass, subject: &str, g: &Subgroup) -> Result<bool> {
    let p = Modulus::new(ctx.ell as u64)?;
    let profile = degree_profile(g, p)?;
    let mut all = true;
    for d in profile.degrees() {
        let verdict = if ctx.ell == 17 && d == ctx.facts.dkm_excluded_degree_17 {
            RuleVerdict::new(
                "dkm-degree-4",
                Some(class),
                Outcome::Eliminates,
                Justification::new("X_1(17) has no isolated points of degree 4")
                    .cite(CITE_DKM)
                    .witness("degree", d),
            )
        } else if ctx.ell == 13 && class == ImageClass::Exceptional {
            let out = if d > 3 && riemann_roch_eliminates(d, ctx.genus) {
                Outcome::Eliminates
            } else {
                Outcome::Survives
            };
            RuleVerdict::new(
                "exceptional-13-degree",
                Some(class),
                out,
                Justification::new(format!(
                    "degree {d} is greater than 3 and exceeds the genus {} of X_1(13)",
                    ctx.genus
                ))
                .cite(CITE_RIEMANN_ROCH)
                .witness("degree", d)
                .witness("genus", ctx.genus),
            )
        } else {
            let out = if riemann_roch_eliminates(d, ctx.genus) {
                Outcome::Eliminates
            } else {
                Outcome::Survives
            };
            RuleVerdict::new(
                "riemann-roch",
                Some(class),
                out,
                Justification::new(format!("degree {d} against genus {}", ctx.genus))
                    .cite(CITE_RIEMANN_ROCH)
                    .witness("degree", d)
                    .witness("genus", ctx.genus),
            )
        };
        all &= verdict.outcome == Outcome::Eliminates;
        ctx.push(verdict.about(format!("{subject} [{}]", g.display_label())));
    }
    Ok(all)
}

fn add_survivor(ctx: &mut Ctx, b: &BorelJInvariant) {
    let (status, citation) = match b.isolation {
        Some((IsolationStatus::Known, c)) => ("candidate: isolation known", c),
        Some((IsolationStatus::Open, c)) => ("candidate: open", c),
        None => ("candidate: open", CITE_OPEN_37),
    };
    ctx.survivors.push(Survivor {
        ell: b.ell,
        j_invariant: b.j.clone(),
        alternate: b.alternate.as_ref().map(|(j, note)| SurvivorAlternate {
            j_invariant: j.clone(),
            note: note.to_string(),
        }),
        status: status.to_string(),
        citation: citation.to_string(),
    });
}

fn borel(ctx: &mut Ctx) -> Result<()> {
    let class = ImageClass::Borel;
    let js: Vec<BorelJInvariant> = ctx.facts.borel_j_at(ctx.ell).into_iter().cloned().collect();
    if js.is_empty() {
        // No non-CM entry in the isogeny list needs its own analysis; torsion
        // alone rules out degree-1 points.
        let out = if riemann_roch_eliminates(2, ctx.genus) {
            Outcome::Eliminates
        } else {
            Outcome::InsufficientData
        };
        ctx.conclude(RuleVerdict::new(
            "mazur-torsion-riemann-roch",
            Some(class),
            out,
            Justification::new(format!(
                "X_1({}) has genus {} and no non-cuspidal rational points, so every point has degree >= 2 > genus",
                ctx.ell, ctx.genus
            ))
            .cite(CITE_MAZUR_TORSION)
            .cite(CITE_RIEMANN_ROCH)
            .witness("degree_lower_bound", 2)
            .witness("genus", ctx.genus),
        ));
        return Ok(());
    }
    for b in js {
        let subject = format!("j = {}", b.j);
        let records: Vec<ExternalImageRecord> = ctx
            .records(class)
            .into_iter()
            .filter(|r| {
                r.j.value == b.j.value || b.alternate.as_ref().is_some_and(|(a, _)| a.value == r.j.value)
            })
            .cloned()
            .collect();
        if !records.is_empty() {
            let mut all = true;
            for r in &records {
                let g = r.mod_ell()?.with_label(r.label().to_string());
                all &= eliminate_points(ctx, class, &subject, &g)?;
            }
            let labels: Vec<&str> = records.iter().map(|r| r.label()).collect();
            if all {
                ctx.conclude(
                    RuleVerdict::new(
                        "all-points-eliminated",
                        Some(class),
                        Outcome::Eliminates,
                        Justification::new("every closed point above this j-invariant is eliminated")
                            .cite(CITE_ZYWINA)
                            .witness("records", &labels),
                    )
                    .about(subject),
                );
            } else {
                ctx.conclude(
                    RuleVerdict::new(
                        "riemann-roch",
                        Some(class),
                        Outcome::Survives,
                        Justification::new("a closed point above this j-invariant is not eliminated")
                            .cite(CITE_RIEMANN_ROCH)
                            .witness("records", &labels),
                    )
                    .about(subject),
                );
                add_survivor(ctx, &b);
            }
            continue;
        }
        // Without the exact image, the point on the isogeny line still has
        // degree at most its orbit size under the full Borel, ell - 1.
        let p = Modulus::new(ctx.ell as u64)?;
        let borel = NamedSubgroup::new(NamedSubgroupKind::Borel, ctx.ell).build()?;
        let line = closed_points(&borel, p)?
            .into_iter()
            .find(|pt| pt.representative.y == 0)
            .expect("the isogeny line has points");
        let upper = line.orbit_field_degree();
        if riemann_roch_eliminates(upper, ctx.genus) {
            ctx.conclude(
                RuleVerdict::new(
                    "missing-image-record",
                    Some(class),
                    Outcome::InsufficientData,
                    Justification::new(format!(
                        "no image record for this j-invariant; the isogeny-line point has degree <= {upper}, which does not settle the comparison with genus {}",
                        ctx.genus
                    ))
                    .cite(CITE_ZYWINA)
                    .witness("degree_upper_bound", upper)
                    .witness("genus", ctx.genus),
                )
                .about(subject),
            );
        } else {
            ctx.conclude(
                RuleVerdict::new(
                    "riemann-roch",
                    Some(class),
                    Outcome::Survives,
                    Justification::new(format!(
                        "the point on the isogeny line has degree <= {upper} <= genus {}, so no rule eliminates it",
                        ctx.genus
                    ))
                    .cite(CITE_RIEMANN_ROCH)
                    .cite(CITE_MAZUR_ISOGENY)
                    .witness("degree_upper_bound", upper)
                    .witness("genus", ctx.genus),
                )
                .about(subject),
            );
            add_survivor(ctx, &b);
        }
    }
    Ok(())
}

fn exceptional(ctx: &mut Ctx) -> Result<()> {
    let class = ImageClass::Exceptional;
    let records: Vec<ExternalImageRecord> = ctx.records(class).into_iter().cloned().collect();
    let mut js: Vec<&JInvariant> = Vec::new();
    for r in &records {
        if !js.iter().any(|j| j.value == r.j.value) {
            js.push(&r.j);
        }
    }
    let needed = ctx.facts.exceptional_13_count;
    if js.len() < needed {
        ctx.conclude(RuleVerdict::new(
            "missing-image-record",
            Some(class),
            Outcome::InsufficientData,
            Justification::new(format!(
                "{} of the {needed} exceptional j-invariants have image records",
                js.len()
            ))
            .cite(CITE_EXCEPTIONAL_13)
            .witness("records_found", js.len()),
        ));
        return Ok(());
    }
    let mut all = true;
    for r in &records {
        let g = r.mod_ell()?.with_label(r.label().to_string());
        all &= eliminate_points(ctx, class, &format!("j = {}", r.j), &g)?;
    }
    let labels: Vec<&str> = records.iter().map(|r| r.label()).collect();
    ctx.conclude(RuleVerdict::new(
        "exceptional-13-degree",
        Some(class),
        if all { Outcome::Eliminates } else { Outcome::Survives },
        Justification::new(format!(
            "closed points above the {needed} exceptional j-invariants all have degree > 3, against genus {}",
            ctx.genus
        ))
        .cite(CITE_EXCEPTIONAL_13)
        .cite(CITE_RIEMANN_ROCH)
        .witness("records", &labels),
    ));
    Ok(())
}

/// Classifies each prime, concurrently, returning reports sorted by `ell`.
pub fn classify_range(ells: &[u32], n: u32, table: &[ExternalImageRecord]) -> Result<Vec<ClassificationReport>> {
    let mut ells = ells.to_vec();
    ells.sort_unstable();
    ells.dedup();
    ells.par_iter().map(|&ell| classify(ell, n, table)).collect()
}

/// Primes `7 < ell <= end`.
pub fn default_range(end: u32) -> Vec<u32> {
    (8..=end).filter(|&l| is_prime(l as u64)).collect()
}

/// `(ell, j)` for every survivor across the reports.
pub fn survivor_summary(reports: &[ClassificationReport]) -> Vec<(u32, JInvariant)> {
    reports
        .iter()
        .flat_map(|r| r.surviving_j_invariants.iter().map(|s| (s.ell, s.j_invariant.clone())))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::InvalidParameter(format!("unknown report format `{other}`"))),
        }
    }
}

pub fn emit_report(report: &ClassificationReport, format: &str) -> Result<String> {
    match format.parse()? {
        ReportFormat::Json => {
            serde_json::to_string_pretty(report).map_err(|e| Error::Data(e.to_string()))
        }
        ReportFormat::Text => Ok(render_text(report)),
    }
}

fn render_text(r: &ClassificationReport) -> String {
    let mut out = format!("Classification for ell = {}, n = {}", r.ell, r.n);
    if let Some(g) = r.genus {
        out.push_str(&format!(" (genus of X_1({}) is {g})", r.ell));
    }
    out.push('\n');
    for (i, v) in r.trace.iter().enumerate() {
        let class = v.class.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
        out.push_str(&format!("{:>3}. [{class}] {}: {}", i + 1, v.rule_id, v.outcome));
        if let Some(s) = &v.subject {
            out.push_str(&format!(" ({s})"));
        }
        out.push('\n');
        out.push_str(&format!("     {}\n", v.justification.summary));
        for c in &v.justification.citations {
            out.push_str(&format!("     cites: {c}\n"));
        }
        if !v.justification.witnesses.is_empty() {
            let w: Vec<String> = v
                .justification
                .witnesses
                .iter()
                .map(|(k, x)| format!("{k}={x}"))
                .collect();
            out.push_str(&format!("     witnesses: {}\n", w.join(", ")));
        }
    }
    if r.surviving_j_invariants.is_empty() {
        out.push_str("No surviving j-invariants.\n");
    } else {
        out.push_str("Surviving j-invariants:\n");
        for s in &r.surviving_j_invariants {
            out.push_str(&format!("  - {} [{}]\n", s.j_invariant, s.status));
            out.push_str(&format!("    cites: {}\n", s.citation));
            if let Some(a) = &s.alternate {
                out.push_str(&format!("    alternate: {} ({})\n", a.j_invariant, a.note));
            }
        }
    }
    out
}
