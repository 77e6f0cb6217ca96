//! Batch verification runs and their reports.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cochain::PairingMatrix;
use crate::cotrunc::truncated_duality;
use crate::duality::{
    boundary_vanishing_trials, ladder_check, lefschetz_pairing, main_pairing, stokes_trials,
    well_definedness_probe,
};
use crate::linalg::{format_rational, ComplementStrategy};
use crate::model::{build_model, model_betti, model_les, IntersectionModel, ModelSequence, Perversity};
use crate::oracle::{chain_truncate, compare, mapping_cone, OracleComparison};
use crate::pair::ManifoldPair;
use crate::simplicial::{decompose, parse_complex, InputDocument};
use crate::{fixtures, Error, Result};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Model,
    Duality,
    Ladder,
    Lefschetz,
    TruncatedDuality,
    Oracle,
    Properties,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Model,
        Check::Duality,
        Check::Ladder,
        Check::Lefschetz,
        Check::TruncatedDuality,
        Check::Oracle,
        Check::Properties,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Check::Model => "model",
            Check::Duality => "duality",
            Check::Ladder => "ladder",
            Check::Lefschetz => "lefschetz",
            Check::TruncatedDuality => "truncated-duality",
            Check::Oracle => "oracle",
            Check::Properties => "properties",
        }
    }

    /// Comma-separated list; `all` selects every check.
    pub fn parse_list(list: &str) -> Result<Vec<Check>> {
        let mut checks = Vec::new();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "all" {
                checks.extend(Check::ALL);
            } else {
                checks.push(item.parse()?);
            }
        }
        checks.sort();
        checks.dedup();
        if checks.is_empty() {
            return Err(Error::Config("no checks selected".into()));
        }
        Ok(checks)
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown check `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// File path, or the name of a bundled example.
    pub input: String,
    pub perversity: String,
    /// Perversity of the right-hand model; complementary to `perversity` when absent.
    pub dual_perversity: Option<String>,
    pub strategy: ComplementStrategy,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub probe_trials: usize,
    pub stokes_trials: usize,
}

impl RunConfig {
    pub fn new(input: impl Into<String>, perversity: impl Into<String>) -> Self {
        RunConfig {
            input: input.into(),
            perversity: perversity.into(),
            dual_perversity: None,
            strategy: ComplementStrategy::Lex,
            checks: Check::ALL.to_vec(),
            seed: 0,
            probe_trials: 100,
            stokes_trials: 1000,
        }
    }
}

pub fn load_input(input: &str) -> Result<InputDocument> {
    let path = std::path::Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{input}: {e}")))?;
        return Ok(InputDocument::from_json(&text)?);
    }
    fixtures::document_by_name(input)
        .ok_or_else(|| Error::Io(format!("`{input}` is neither a file nor a bundled example")))
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingRecord {
    pub degree: usize,
    pub right_degree: usize,
    pub left_dim: usize,
    pub right_dim: usize,
    pub rank: usize,
    pub nondegenerate: bool,
    /// Row-major, rationals as `"p/q"`.
    pub entries: Vec<Vec<String>>,
}

impl PairingRecord {
    fn new(p: &PairingMatrix, total: usize) -> Self {
        PairingRecord {
            degree: p.degree,
            right_degree: total - p.degree,
            left_dim: p.left_dim,
            right_dim: p.right_dim,
            rank: p.rank,
            nondegenerate: p.nondegenerate(),
            entries: p
                .entries
                .to_dense()
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingSection {
    pub pairings: Vec<PairingRecord>,
    pub pass: bool,
}

fn pairing_section(pairings: &[PairingMatrix], total: usize) -> PairingSection {
    PairingSection {
        pairings: pairings.iter().map(|p| PairingRecord::new(p, total)).collect(),
        pass: pairings.iter().all(PairingMatrix::nondegenerate),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputSummary {
    pub name: String,
    pub n: usize,
    pub facets: usize,
    pub singular_vertex: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub perversity: Perversity,
    pub dual_perversity: Perversity,
    pub strategy: ComplementStrategy,
    pub checks: Vec<Check>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BettiTables {
    pub exterior: Vec<usize>,
    pub link: Vec<usize>,
    pub relative: Vec<usize>,
    pub model: Vec<usize>,
    pub dual_model: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelSection {
    pub k: usize,
    pub l: usize,
    /// Ranks of the connecting maps of the two sequences of each model.
    pub connecting_ranks: Vec<Vec<usize>>,
    pub reduced: bool,
    pub symmetric: bool,
    pub choice_independent: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderEntry {
    pub degree: usize,
    pub top: bool,
    pub middle: bool,
    pub bottom: bool,
    pub bottom_sign: i8,
    pub five_lemma: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderSection {
    pub degrees: Vec<LadderEntry>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TruncatedEntry {
    pub k: usize,
    pub l: usize,
    pub section: PairingSection,
}

#[derive(Debug, Clone, Serialize)]
pub struct TruncatedSection {
    pub windows: Vec<TruncatedEntry>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSection {
    pub model: OracleComparison,
    pub dual_model: OracleComparison,
    pub les_consistent: bool,
    /// Integral torsion of the link at a cutoff, where the rational oracle is not conclusive integrally.
    pub torsion_flagged: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertiesSection {
    pub probe_trials: usize,
    pub probe_unstable: usize,
    pub stokes_trials: usize,
    pub stokes_failures: usize,
    pub boundary_vanishing_trials: usize,
    pub boundary_vanishing_failures: usize,
    pub orientation_covariant: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub check: Check,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub input: InputSummary,
    pub config: ConfigEcho,
    pub betti: BettiTables,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality: Option<PairingSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ladder: Option<LadderSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lefschetz: Option<PairingSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated_duality: Option<TruncatedSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properties: Option<PropertiesSection>,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.pass { 0 } else { 1 }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    fn pairing_sections(&self) -> Vec<(&'static str, &PairingSection)> {
        let mut out = Vec::new();
        if let Some(s) = &self.duality {
            out.push(("duality", s));
        }
        if let Some(s) = &self.lefschetz {
            out.push(("lefschetz", s));
        }
        if let Some(t) = &self.truncated_duality {
            for w in &t.windows {
                out.push(("truncated-duality", &w.section));
            }
        }
        out
    }

    fn to_csv(&self) -> String {
        let mut s = String::from("section,item,degree,value\n");
        let betti = [
            ("exterior", &self.betti.exterior),
            ("link", &self.betti.link),
            ("relative", &self.betti.relative),
            ("model", &self.betti.model),
            ("dual-model", &self.betti.dual_model),
        ];
        for (name, values) in betti {
            for (r, b) in values.iter().enumerate() {
                let _ = writeln!(s, "betti,{name},{r},{b}");
            }
        }
        for (name, section) in self.pairing_sections() {
            for p in &section.pairings {
                let _ = writeln!(s, "{name},dims,{},{}x{}", p.degree, p.left_dim, p.right_dim);
                let _ = writeln!(s, "{name},rank,{},{}", p.degree, p.rank);
            }
        }
        if let Some(l) = &self.ladder {
            for e in &l.degrees {
                let _ = writeln!(s, "ladder,squares,{},{}", e.degree, e.top && e.middle && e.bottom);
                let _ = writeln!(s, "ladder,bottom-sign,{},{}", e.degree, e.bottom_sign);
            }
        }
        for v in &self.verdicts {
            let _ = writeln!(s, "verdict,{},,{}", v.check.as_str(), v.pass);
        }
        let _ = writeln!(s, "verdict,overall,,{}", self.pass);
        s
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} (n = {}, {} facets)", self.input.name, self.input.n, self.input.facets);
        let _ = writeln!(
            s,
            "perversity {} / {}, strategy {}",
            self.config.perversity,
            self.config.dual_perversity,
            self.config.strategy.as_str()
        );
        let _ = writeln!(s, "betti: model {:?}, dual model {:?}", self.betti.model, self.betti.dual_model);
        for (name, section) in self.pairing_sections() {
            let dims: Vec<String> = section
                .pairings
                .iter()
                .map(|p| format!("{}x{}/{}", p.left_dim, p.right_dim, p.rank))
                .collect();
            let _ = writeln!(s, "{name}: {}", dims.join(" "));
        }
        for v in &self.verdicts {
            let _ = writeln!(s, "{:<18} {}", v.check.as_str(), if v.pass { "pass" } else { "FAIL" });
        }
        let _ = writeln!(s, "overall            {}", if self.pass { "pass" } else { "FAIL" });
        s
    }
}

fn model_section(
    pair: &Arc<ManifoldPair>,
    mp: &IntersectionModel,
    mq: &IntersectionModel,
    config: &RunConfig,
) -> Result<ModelSection> {
    let n = pair.n;
    let mut connecting_ranks = Vec::new();
    for m in [mp, mq] {
        for which in [ModelSequence::EtaRho, ModelSequence::IotaKappa] {
            connecting_ranks.push(model_les(m, which)?.connecting_ranks);
        }
    }
    let (bp, bq) = (model_betti(mp), model_betti(mq));
    let other = match config.strategy {
        ComplementStrategy::Lex => ComplementStrategy::ReverseLex,
        ComplementStrategy::ReverseLex => ComplementStrategy::Lex,
    };
    let choice_independent = model_betti(&build_model(pair.clone(), &mp.perversity, other)?) == bp
        && model_betti(&build_model(pair.clone(), &mq.perversity, other)?) == bq;
    let reduced = bp[0] == 0 && bq[0] == 0;
    let symmetric = (0..=n).all(|r| bp[r] == bq[n - r]);
    Ok(ModelSection {
        k: mp.k,
        l: mq.k,
        connecting_ranks,
        reduced,
        symmetric,
        choice_independent,
        pass: reduced && symmetric && choice_independent,
    })
}

pub fn run(config: &RunConfig) -> Result<Report> {
    if config.checks.is_empty() {
        return Err(Error::Config("no checks selected".into()));
    }
    let document = load_input(&config.input)?;
    let x = parse_complex(&document)?;
    let decomposition = decompose(&x, document.singular_vertex)?;
    let n = decomposition.n;
    let p = Perversity::parse(&config.perversity, n).map_err(crate::model::ModelError::from)?;
    let q = match &config.dual_perversity {
        Some(spec) => Perversity::parse(spec, n).map_err(crate::model::ModelError::from)?,
        None => p.complementary(),
    };
    let pair = Arc::new(ManifoldPair::from_decomposition(&decomposition)?);
    let mp = build_model(pair.clone(), &p, config.strategy)?;
    let mq = build_model(pair.clone(), &q, config.strategy)?;
    let mu = &pair.mu;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let has = |c: Check| config.checks.contains(&c);
    let duality = if has(Check::Duality) || has(Check::Ladder) || has(Check::Properties) {
        Some(main_pairing(&mp, &mq, mu)?)
    } else {
        None
    };

    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        input: InputSummary {
            name: document.name.clone(),
            n,
            facets: document.facets.len(),
            singular_vertex: document.singular_vertex,
        },
        config: ConfigEcho {
            perversity: p.clone(),
            dual_perversity: q.clone(),
            strategy: config.strategy,
            checks: config.checks.clone(),
            seed: config.seed,
        },
        betti: BettiTables {
            exterior: pair.manifold.betti(),
            link: pair.boundary.betti(),
            relative: pair.relative_cohomology.iter().map(|h| h.dimension()).collect(),
            model: model_betti(&mp),
            dual_model: model_betti(&mq),
        },
        model: None,
        duality: None,
        ladder: None,
        lefschetz: None,
        truncated_duality: None,
        oracle: None,
        properties: None,
        verdicts: Vec::new(),
        pass: false,
    };

    for &check in &config.checks {
        let pass = match check {
            Check::Model => {
                let section = model_section(&pair, &mp, &mq, config)?;
                let pass = section.pass;
                report.model = Some(section);
                pass
            }
            Check::Duality => {
                let section = pairing_section(&duality.as_ref().expect("computed").pairings, n);
                let pass = section.pass;
                report.duality = Some(section);
                pass
            }
            Check::Ladder => {
                let mut degrees = Vec::with_capacity(n + 1);
                for r in 0..=n {
                    let rec = ladder_check(&mp, &mq, mu, r)?;
                    degrees.push(LadderEntry {
                        degree: r,
                        top: rec.top.commutes,
                        middle: rec.middle.commutes,
                        bottom: rec.bottom.commutes,
                        bottom_sign: rec.bottom.sign,
                        five_lemma: rec.five_lemma_consistent(),
                    });
                }
                let pass = degrees.iter().all(|e| e.top && e.middle && e.bottom && e.five_lemma);
                report.ladder = Some(LadderSection { degrees, pass });
                pass
            }
            Check::Lefschetz => {
                let section = pairing_section(&lefschetz_pairing(&pair, mu)?.pairings, n);
                let pass = section.pass;
                report.lefschetz = Some(section);
                pass
            }
            Check::TruncatedDuality => {
                let c = n - 1;
                let mut windows = Vec::new();
                for k in 1..=c {
                    let l = c + 1 - k;
                    let td = truncated_duality(&pair.boundary, k, l, &pair.lambda, config.strategy)?;
                    windows.push(TruncatedEntry { k, l, section: pairing_section(&td.pairings, c) });
                }
                let pass = windows.iter().all(|w| w.section.pass);
                report.truncated_duality = Some(TruncatedSection { windows, pass });
                pass
            }
            Check::Oracle => {
                let les = |m: &IntersectionModel| -> Result<(OracleComparison, bool, bool)> {
                    let t = chain_truncate(&pair.boundary.simplicial, m.k).map_err(|e| Error::Config(e.to_string()))?;
                    let cone = mapping_cone(&t, &pair).map_err(|e| Error::Config(e.to_string()))?;
                    Ok((compare(m, &cone), cone.les_consistent(), cone.torsion_flagged()))
                };
                let (model, les_p, torsion_p) = les(&mp)?;
                let (dual_model, les_q, torsion_q) = les(&mq)?;
                let les_consistent = les_p && les_q;
                let pass = model.matches && dual_model.matches && les_consistent;
                report.oracle = Some(OracleSection {
                    model,
                    dual_model,
                    les_consistent,
                    torsion_flagged: torsion_p || torsion_q,
                    pass,
                });
                pass
            }
            Check::Properties => {
                let probe = well_definedness_probe(&mp, &mq, mu, config.probe_trials, &mut rng)?;
                let stokes_failures = stokes_trials(&pair.manifold, config.stokes_trials, &mut rng);
                let vanishing = config.probe_trials;
                let vanishing_failures = boundary_vanishing_trials(&mp, &mq, mu, vanishing, &mut rng);
                let reference = duality.as_ref().expect("computed");
                let negated = main_pairing(&mp, &mq, &mu.neg())?;
                let orientation_covariant = reference
                    .pairings
                    .iter()
                    .zip(&negated.pairings)
                    .all(|(a, b)| a.entries.neg() == b.entries && a.nondegenerate() == b.nondegenerate());
                let pass = probe.stable() && stokes_failures == 0 && vanishing_failures == 0 && orientation_covariant;
                report.properties = Some(PropertiesSection {
                    probe_trials: probe.trials,
                    probe_unstable: probe.unstable_trials,
                    stokes_trials: config.stokes_trials,
                    stokes_failures,
                    boundary_vanishing_trials: vanishing,
                    boundary_vanishing_failures: vanishing_failures,
                    orientation_covariant,
                    pass,
                });
                pass
            }
        };
        report.verdicts.push(Verdict { check, pass });
    }
    report.pass = report.verdicts.iter().all(|v| v.pass);
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub schema_version: &'static str,
    pub error: ErrorBody,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody {
    pub code: &'static str,
    pub message: String,
}

impl ErrorReport {
    pub fn new(e: &Error) -> Self {
        ErrorReport {
            schema_version: SCHEMA_VERSION,
            error: ErrorBody { code: e.code().as_str(), message: e.to_string() },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("error report serializes")
    }
}
