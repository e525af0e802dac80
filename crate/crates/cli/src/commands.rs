use std::path::Path;
use std::time::Instant;

use aimage::build::{
    acovered_surface, certify_surjection, curve_through_points, ga_word_map, sl_factorize, word_matrix, SurjectionVerdict,
};
use aimage::constructible::{
    image_of_map, oracle_disagreements, random_rational_points, ConstructibleSet, ImageConfig, PolynomialMap,
};
use aimage::toric::{cox_presentation, format_point, quotient_surjectivity_check, CoxData, Fan, QuotientVerdict, ToricError};
use aimage::{GroebnerConfig, Rational};
use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::formats::{
    load, read_job, ElementaryWordFile, FanFile, GaWordFile, MapFile, MatrixFile, PolynomialsFile, SetFile, TargetFile,
};

/// Success, or a certified claim.
pub const EXIT_OK: i32 = 0;
/// The check ran and the claim is false.
pub const EXIT_FALSE: i32 = 1;
/// Bad input or an exhausted resource limit.
pub const EXIT_ERROR: i32 = 2;

/// Engine settings shared by all subcommands.
#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub max_pairs: Option<usize>,
    pub max_retries: usize,
    pub samples: usize,
    /// Re-check every Gröbner basis with all S-pair reductions.
    pub verify: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, max_pairs: None, max_retries: 8, samples: 100, verify: false }
    }
}

impl Options {
    pub fn image_config(&self) -> ImageConfig {
        let mut groebner = GroebnerConfig::default();
        if let Some(p) = self.max_pairs {
            groebner.max_pairs = p;
        }
        groebner.verify = self.verify;
        ImageConfig { seed: self.seed, max_retries: self.max_retries, groebner }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct Report {
    pub command: String,
    pub verdict: String,
    pub exit_code: i32,
    pub seed: u64,
    pub elapsed_ms: u128,
    pub lines: Vec<String>,
    pub data: Value,
}

impl Report {
    fn new(command: &str, opts: &Options) -> Self {
        Report {
            command: command.into(),
            verdict: "ok".into(),
            exit_code: EXIT_OK,
            seed: opts.seed,
            elapsed_ms: 0,
            lines: Vec::new(),
            data: json!({}),
        }
    }

    fn verdict(mut self, verdict: &str, code: i32) -> Self {
        self.verdict = verdict.into();
        self.exit_code = code;
        self
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.verdict);
        for l in &self.lines {
            out.push_str("  ");
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}

fn timed(start: Instant, mut r: Report) -> Report {
    r.elapsed_ms = start.elapsed().as_millis();
    r
}

fn points_json(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(|x| Value::String(x.to_string())).collect())
}

/// Compares the image with the fiber oracle on `opts.samples` seeded points.
fn oracle_check(phi: &PolynomialMap, image: &ConstructibleSet, opts: &Options, r: &mut Report) -> Result<bool> {
    if opts.samples == 0 {
        return Ok(true);
    }
    let pts = random_rational_points(phi.target_dim(), opts.samples, opts.seed);
    let bad = oracle_disagreements(phi, image, &pts, &opts.image_config().groebner)?;
    r.line(format!("fiber oracle agrees on {}/{} sampled points", pts.len() - bad.len(), pts.len()));
    if let Some(q) = bad.first() {
        r.line(format!("first disagreement at {}", format_point(q)));
    }
    r.data["oracle"] = json!({ "samples": pts.len(), "disagreements": bad.iter().map(|q| points_json(q)).collect::<Vec<_>>() });
    Ok(bad.is_empty())
}

pub fn gb(path: &Path, opts: &Options) -> Result<Report> {
    let start = Instant::now();
    let file: PolynomialsFile = read_job(path)?;
    let (ideal, order) = file.to_ideal()?;
    let basis = ideal.groebner_basis(order, &opts.image_config().groebner)?;
    let mut r = Report::new("gb", opts);
    for g in basis.elements() {
        r.line(g.to_string());
    }
    r.data = serde_json::to_value(PolynomialsFile::from_polynomials(ideal.ring(), basis.elements(), order))?;
    Ok(timed(start, r))
}

pub fn image(path: &Path, opts: &Options) -> Result<Report> {
    let start = Instant::now();
    let phi = load(path, MapFile::to_map)?;
    let img = image_of_map(&phi, &opts.image_config())?;
    let mut r = Report::new("image", opts);
    r.line(format!("map {phi}"));
    if img.pieces().is_empty() {
        r.line("image is empty");
    }
    for p in img.pieces() {
        r.line(format!("piece {p}"));
    }
    r.data = json!({ "image": SetFile::from_set(&img) });
    let agrees = oracle_check(&phi, &img, opts, &mut r)?;
    let r = if agrees { r } else { r.verdict("oracle-mismatch", EXIT_FALSE) };
    Ok(timed(start, r))
}

pub fn certify(map_path: &Path, target_path: &Path, opts: &Options) -> Result<Report> {
    match read_job::<TargetFile>(target_path)? {
        TargetFile::Fan(fan) => toric_check(&fan.to_fan()?, map_path, opts, "certify"),
        TargetFile::Set(set) => {
            let start = Instant::now();
            let phi = load(map_path, MapFile::to_map)?;
            let target = set.to_set()?;
            let verdict = certify_surjection(&phi, &target, &opts.image_config())?;
            let mut r = Report::new("certify", opts);
            r.line(format!("map {phi}"));
            r.line(format!("target {target}"));
            let (name, code, extra) = match &verdict {
                SurjectionVerdict::Surjective => ("surjective", EXIT_OK, None),
                SurjectionVerdict::NotIntoTarget { witness, piece } => ("not-into-target", EXIT_FALSE, Some((witness, piece))),
                SurjectionVerdict::NotSurjective { witness, piece } => ("not-surjective", EXIT_FALSE, Some((witness, piece))),
            };
            if let Some((witness, piece)) = extra {
                r.line(format!("offending piece {piece}"));
                match witness {
                    Some(w) => r.line(format!("witness {}", format_point(w))),
                    None => r.line("no small rational witness found"),
                }
                r.data = json!({
                    "piece": SetFile::from_set(&ConstructibleSet::new(piece.ring(), vec![piece.clone()])?),
                    "witness": witness.as_ref().map(|w| points_json(w)),
                });
            }
            Ok(timed(start, r.verdict(name, code)))
        }
    }
}

fn describe_cox(cox: &CoxData, r: &mut Report) {
    let torsion: Vec<String> = cox.torsion_orders().iter().map(|d| format!("Z/{d}")).collect();
    let mut group = vec![format!("Z^{}", cox.free_rank())];
    group.extend(torsion);
    r.line(format!("class group {}", group.join(" ⊕ ")));
    for (v, d) in cox.ring().vars().iter().zip(cox.degrees()) {
        if d.torsion.is_empty() {
            r.line(format!("deg {v} = {:?}", d.free));
        } else {
            r.line(format!("deg {v} = {:?} + {:?}", d.free, d.torsion));
        }
    }
    r.line(format!("irrelevant ideal {}", cox.irrelevant_ideal()));
    let comps: Vec<String> = cox
        .z_components()
        .iter()
        .map(|c| format!("V({})", c.iter().map(|&i| cox.ring().vars()[i].clone()).collect::<Vec<_>>().join(", ")))
        .collect();
    r.line(format!("Z = {} (codimension {})", comps.join(" ∪ "), cox.codim_z()));
    r.data = json!({
        "vars": cox.ring().vars(),
        "free_rank": cox.free_rank(),
        "torsion": cox.torsion_orders(),
        "degrees": cox.degrees().iter().map(|d| json!({ "free": d.free, "torsion": d.torsion })).collect::<Vec<_>>(),
        "irrelevant_ideal": cox.irrelevant_ideal().gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "z_components": cox.z_components(),
        "codim_z": cox.codim_z(),
    });
}

/// Fan validation and Cox data; `Err` carries a finished report for
/// refusals that are verdicts rather than errors.
fn cox_or_report(fan: &Fan, command: &str, opts: &Options) -> Result<std::result::Result<CoxData, Report>> {
    match cox_presentation(fan) {
        Ok(c) => Ok(Ok(c)),
        Err(ToricError::Degenerate { rank, ray_rank }) => {
            let mut r = Report::new(command, opts);
            r.line(format!("rays span rank {ray_rank} < {rank}: the variety has a torus factor"));
            r.data = json!({ "rank": rank, "ray_rank": ray_rank });
            Ok(Err(r.verdict("degenerate", EXIT_FALSE)))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn toric_cox(path: &Path, opts: &Options) -> Result<Report> {
    let start = Instant::now();
    let fan = load(path, FanFile::to_fan)?;
    let cox = match cox_or_report(&fan, "toric cox", opts)? {
        Ok(c) => c,
        Err(r) => return Ok(timed(start, r)),
    };
    let mut r = Report::new("toric cox", opts);
    describe_cox(&cox, &mut r);
    Ok(timed(start, r.verdict("non-degenerate", EXIT_OK)))
}

pub fn toric_check_files(fan_path: &Path, map_path: &Path, opts: &Options) -> Result<Report> {
    toric_check(&load(fan_path, FanFile::to_fan)?, map_path, opts, "toric check")
}

fn toric_check(fan: &Fan, map_path: &Path, opts: &Options, command: &str) -> Result<Report> {
    let start = Instant::now();
    let phi = load(map_path, MapFile::to_map)?;
    let cox = match cox_or_report(fan, command, opts)? {
        Ok(c) => c,
        Err(r) => return Ok(timed(start, r)),
    };
    let mut r = Report::new(command, opts);
    r.line(format!("map {phi}"));
    let r = match quotient_surjectivity_check(&phi, &cox, &opts.image_config()) {
        Ok(QuotientVerdict::Certified { via_saturation }) => {
            r.line(if via_saturation {
                "image avoids Z and its orbit saturation covers the complement of Z"
            } else {
                "image avoids Z and contains the complement of Z"
            });
            r.data = json!({ "via_saturation": via_saturation });
            r.verdict("surjective", EXIT_OK)
        }
        Ok(QuotientVerdict::NotSurjective { witness }) => {
            r.line(format!("the orbit of {} misses the image", format_point(&witness)));
            r.data = json!({ "witness": points_json(&witness) });
            r.verdict("not-surjective", EXIT_FALSE)
        }
        Ok(QuotientVerdict::Inconclusive { uncovered }) => {
            r.line(format!("uncovered orbits without a small rational point: {uncovered}"));
            r.data = json!({ "uncovered": SetFile::from_set(&uncovered) });
            r.verdict("inconclusive", EXIT_FALSE)
        }
        Err(ToricError::ImageMeetsIrrelevantLocus { witness }) => {
            if let Some(w) = &witness {
                r.line(format!("image point {} lies in Z", format_point(w)));
            }
            r.data = json!({ "witness": witness.as_ref().map(|w| points_json(w)) });
            r.verdict("image-meets-irrelevant-locus", EXIT_FALSE)
        }
        Err(e) => return Err(e.into()),
    };
    Ok(timed(start, r))
}

pub fn slfactor(path: &Path, opts: &Options) -> Result<Report> {
    let start = Instant::now();
    let m = load(path, MatrixFile::to_matrix)?;
    let (word, params) = sl_factorize(&m)?;
    if word_matrix(&word, &params)? != m {
        bail!("internal error: factorization does not multiply back to the input");
    }
    let mut r = Report::new("slfactor", opts);
    let letters: Vec<String> = word.letters.iter().zip(&params).map(|(&(i, j), t)| format!("E{i}{j}({t})")).collect();
    r.line(if letters.is_empty() { "identity (empty word)".to_string() } else { letters.join(" · ") });
    r.line(format!("{} letters, product verified exactly", word.len()));
    r.data = serde_json::to_value(ElementaryWordFile::from_word(&word, Some(&params)))?;
    Ok(timed(start, r))
}

pub fn gaword(path: &Path, target: Option<&Path>, opts: &Options) -> Result<Report> {
    let start = Instant::now();
    let word = load(path, GaWordFile::to_word)?;
    let phi = ga_word_map(&word)?;
    let mut r = Report::new("gaword", opts);
    r.line(format!("map {phi}"));
    let cfg = opts.image_config();
    let img = image_of_map(&phi, &cfg)?;
    for p in img.pieces() {
        r.line(format!("image piece {p}"));
    }
    r.data = json!({ "map": MapFile::from_map(&phi), "image": SetFile::from_set(&img) });
    let mut r = if oracle_check(&phi, &img, opts, &mut r)? { r } else { r.verdict("oracle-mismatch", EXIT_FALSE) };
    if let Some(t) = target {
        let target = load(t, SetFile::to_set)?;
        let verdict = certify_surjection(&phi, &target, &cfg)?;
        r.line(format!("target {target}"));
        r = match verdict {
            SurjectionVerdict::Surjective => {
                let code = r.exit_code;
                r.verdict("surjective", code)
            }
            SurjectionVerdict::NotIntoTarget { .. } => r.verdict("not-into-target", EXIT_FALSE),
            SurjectionVerdict::NotSurjective { .. } => r.verdict("not-surjective", EXIT_FALSE),
        };
    }
    Ok(timed(start, r))
}

pub fn surface(k: i64, opts: &Options) -> Result<Report> {
    let start = Instant::now();
    let s = acovered_surface(k)?;
    let cfg = opts.image_config();
    let gb = &cfg.groebner;
    let f = &s.surface.gens()[0];
    let mut r = Report::new("surface", opts);
    r.line(format!("surface V({f})"));
    let mut ok = true;
    let x = ConstructibleSet::closed(s.surface.clone());
    let mut images = Vec::new();
    for (name, chart, divisor) in [("ψ+", &s.chart_plus, &s.divisor_plus), ("ψ-", &s.chart_minus, &s.divisor_minus)] {
        let identity = f.compose(chart.components())?.is_zero();
        let img = image_of_map(chart, &cfg)?;
        let expected = x.difference(&ConstructibleSet::closed(divisor.clone()), gb)?;
        let exact = img.same_set(&expected, gb)?;
        r.line(format!("{name} = {chart}"));
        r.line(format!("{name}: surface identity {}, image = X ∖ V{divisor} {}", yes(identity), yes(exact)));
        ok &= identity && exact;
        images.push(img);
    }
    let covered = images[0].union(&images[1])?.same_set(&x, gb)?;
    let disjoint = s.divisor_plus.sum(&s.divisor_minus)?.is_unit(gb)?;
    r.line(format!("charts cover X {}, D+ ∩ D- = ∅ {}", yes(covered), yes(disjoint)));
    ok &= covered && disjoint;
    r.data = json!({
        "k": k,
        "chart_plus": MapFile::from_map(&s.chart_plus),
        "chart_minus": MapFile::from_map(&s.chart_minus),
        "covered": covered,
    });
    let r = if ok { r.verdict("verified", EXIT_OK) } else { r.verdict("failed", EXIT_FALSE) };
    Ok(timed(start, r))
}

fn yes(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "FAILS"
    }
}

pub fn curve(path: &Path, opts: &Options) -> Result<Report> {
    let start = Instant::now();
    let pts = load(path, MatrixFile::to_matrix)?;
    let phi = curve_through_points(&pts)?;
    let mut r = Report::new("curve", opts);
    r.line(format!("map {phi}"));
    r.data = serde_json::to_value(MapFile::from_map(&phi))?;
    Ok(timed(start, r))
}
