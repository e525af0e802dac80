//! JSON job files. Polynomials are strings in the usual infix grammar,
//! rationals are integers or strings such as `"-3/4"`.

use std::fmt;
use std::path::Path;

use aimage::build::{ElementaryWord, GaWord, Lnd, RationalMatrix, DEFAULT_NILPOTENCY_CAP};
use aimage::constructible::{ConstructibleSet, Piece, PolynomialMap};
use aimage::scalar::parse_rational;
use aimage::toric::Fan;
use aimage::{parse_polynomial, Ideal, MonomialOrder, Poly, Rational, Ring, RingRef};
use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Reads and deserializes a job file, naming the file in every error.
pub fn read_job<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{}: malformed job file", path.display()))
}

/// Reads a job file and converts it, naming the file in every error.
pub fn load<T: DeserializeOwned, U>(path: &Path, convert: impl FnOnce(&T) -> Result<U>) -> Result<U> {
    let job: T = read_job(path)?;
    convert(&job).with_context(|| path.display().to_string())
}

fn check_kind(kind: &Option<String>, expected: &str) -> Result<()> {
    match kind {
        Some(k) if k != expected => bail!("kind: expected \"{expected}\", found \"{k}\""),
        _ => Ok(()),
    }
}

fn poly(text: &str, ring: &RingRef, at: impl fmt::Display) -> Result<Poly> {
    parse_polynomial(text, ring).map_err(|e| anyhow!("{at}: {e}"))
}

fn ring(vars: &[String], at: &str) -> Result<RingRef> {
    Ring::new(vars).map_err(|e| anyhow!("{at}: {e}"))
}

/// A rational given as a JSON integer or string.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    pub fn value(&self, at: impl fmt::Display) -> Result<Rational> {
        match self {
            Number::Int(n) => Ok(Rational::from_integer((*n).into())),
            Number::Text(s) => parse_rational(s.trim()).ok_or_else(|| anyhow!("{at}: '{s}' is not a rational number")),
        }
    }

    pub fn from_value(q: &Rational) -> Self {
        Number::Text(q.to_string())
    }
}

fn numbers(v: &[Number], at: &str) -> Result<Vec<Rational>> {
    v.iter().enumerate().map(|(i, n)| n.value(format_args!("{at}[{i}]"))).collect()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PolynomialsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub vars: Vec<String>,
    pub polynomials: Vec<String>,
    /// `grevlex` (default) or `lex`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

impl PolynomialsFile {
    pub fn to_ideal(&self) -> Result<(Ideal<Rational>, MonomialOrder)> {
        check_kind(&self.kind, "polynomials")?;
        let r = ring(&self.vars, "vars")?;
        let gens = self
            .polynomials
            .iter()
            .enumerate()
            .map(|(i, s)| poly(s, &r, format_args!("polynomials[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let order = match self.order.as_deref() {
            None | Some("grevlex") => MonomialOrder::GrevLex,
            Some("lex") => MonomialOrder::Lex,
            Some(o) => bail!("order: unknown monomial order '{o}'"),
        };
        Ok((Ideal::new(&r, gens)?, order))
    }

    pub fn from_polynomials(ring: &RingRef, polys: &[Poly], order: MonomialOrder) -> Self {
        PolynomialsFile {
            kind: Some("polynomials".into()),
            vars: ring.vars().to_vec(),
            polynomials: polys.iter().map(|p| p.to_string()).collect(),
            order: Some(if order == MonomialOrder::Lex { "lex" } else { "grevlex" }.into()),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PieceFile {
    #[serde(default)]
    pub equations: Vec<String>,
    #[serde(default = "one")]
    pub inequation: String,
}

fn one() -> String {
    "1".into()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub vars: Vec<String>,
    pub pieces: Vec<PieceFile>,
}

impl SetFile {
    pub fn to_set(&self) -> Result<ConstructibleSet> {
        check_kind(&self.kind, "set")?;
        let r = ring(&self.vars, "vars")?;
        self.pieces_in(&r, "pieces")
    }

    fn pieces_in(&self, r: &RingRef, at: &str) -> Result<ConstructibleSet> {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for (i, p) in self.pieces.iter().enumerate() {
            let eqs = p
                .equations
                .iter()
                .enumerate()
                .map(|(j, s)| poly(s, r, format_args!("{at}[{i}].equations[{j}]")))
                .collect::<Result<Vec<_>>>()?;
            let g = poly(&p.inequation, r, format_args!("{at}[{i}].inequation"))?;
            pieces.push(Piece::new(Ideal::new(r, eqs)?, g).map_err(|e| anyhow!("{at}[{i}]: {e}"))?);
        }
        Ok(ConstructibleSet::new(r, pieces)?)
    }

    pub fn from_set(set: &ConstructibleSet) -> Self {
        SetFile {
            kind: Some("set".into()),
            vars: set.ring().vars().to_vec(),
            pieces: set
                .pieces()
                .iter()
                .map(|p| PieceFile {
                    equations: p.equations().gens().iter().map(|g| g.to_string()).collect(),
                    inequation: p.inequation().to_string(),
                })
                .collect(),
        }
    }
}

/// Domain pieces reuse the set layout; their variables must be the source
/// variables and may be omitted.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DomainFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    pub pieces: Vec<PieceFile>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub source_vars: Vec<String>,
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainFile>,
}

impl MapFile {
    pub fn to_map(&self) -> Result<PolynomialMap> {
        check_kind(&self.kind, "map")?;
        let src = ring(&self.source_vars, "source_vars")?;
        let comps = self
            .components
            .iter()
            .enumerate()
            .map(|(i, s)| poly(s, &src, format_args!("components[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let mut phi = match &self.target_vars {
            Some(t) => PolynomialMap::with_target(&src, comps, &ring(t, "target_vars")?),
            None => PolynomialMap::new(&src, comps),
        }
        .context("components")?;
        if let Some(d) = &self.domain {
            if d.vars.as_ref().is_some_and(|v| v != &self.source_vars) {
                bail!("domain.vars: must equal source_vars");
            }
            let set = SetFile { kind: None, vars: self.source_vars.clone(), pieces: d.pieces.clone() };
            phi = phi.with_domain(set.pieces_in(&src, "domain.pieces")?)?;
        }
        Ok(phi)
    }

    pub fn from_map(phi: &PolynomialMap) -> Self {
        MapFile {
            kind: Some("map".into()),
            source_vars: phi.source().vars().to_vec(),
            components: phi.components().iter().map(|c| c.to_string()).collect(),
            target_vars: Some(phi.target().vars().to_vec()),
            domain: (!phi.is_total()).then(|| DomainFile { vars: None, pieces: SetFile::from_set(phi.domain()).pieces }),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl FanFile {
    pub fn to_fan(&self) -> Result<Fan> {
        check_kind(&self.kind, "fan")?;
        Ok(Fan::new(self.rank, self.rays.clone(), self.max_cones.clone()))
    }

    pub fn from_fan(fan: &Fan) -> Self {
        FanFile {
            kind: Some("fan".into()),
            rank: fan.rank(),
            rays: fan.rays().to_vec(),
            max_cones: fan.max_cones().to_vec(),
        }
    }
}

/// A word of derivations: each entry lists `D(x_i)` for every variable.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GaWordFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub vars: Vec<String>,
    pub derivations: Vec<Vec<String>>,
    pub base_point: Vec<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotency_cap: Option<usize>,
}

impl GaWordFile {
    pub fn to_word(&self) -> Result<GaWord> {
        check_kind(&self.kind, "word")?;
        let r = ring(&self.vars, "vars")?;
        let cap = self.nilpotency_cap.unwrap_or(DEFAULT_NILPOTENCY_CAP);
        let mut derivations = Vec::with_capacity(self.derivations.len());
        for (k, d) in self.derivations.iter().enumerate() {
            let images = d
                .iter()
                .enumerate()
                .map(|(i, s)| poly(s, &r, format_args!("derivations[{k}][{i}]")))
                .collect::<Result<Vec<_>>>()?;
            derivations.push(Lnd::new(&r, images, cap).map_err(|e| anyhow!("derivations[{k}]: {e}"))?);
        }
        Ok(GaWord { derivations, base_point: numbers(&self.base_point, "base_point")? })
    }

    pub fn from_word(word: &GaWord) -> Self {
        GaWordFile {
            kind: Some("word".into()),
            vars: word.derivations.first().map(|d| d.ring().vars().to_vec()).unwrap_or_default(),
            derivations: word.derivations.iter().map(|d| d.images().iter().map(|p| p.to_string()).collect()).collect(),
            base_point: word.base_point.iter().map(Number::from_value).collect(),
            nilpotency_cap: None,
        }
    }
}

/// A transvection word, letters 1-based, with optional parameters.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ElementaryWordFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub n: usize,
    pub letters: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<Number>>,
}

impl ElementaryWordFile {
    pub fn to_word(&self) -> Result<(ElementaryWord, Option<Vec<Rational>>)> {
        check_kind(&self.kind, "word")?;
        let w = ElementaryWord::new(self.n, self.letters.clone()).context("letters")?;
        let params = self.params.as_deref().map(|p| numbers(p, "params")).transpose()?;
        Ok((w, params))
    }

    pub fn from_word(word: &ElementaryWord, params: Option<&[Rational]>) -> Self {
        ElementaryWordFile {
            kind: Some("word".into()),
            n: word.n,
            letters: word.letters.clone(),
            params: params.map(|p| p.iter().map(Number::from_value).collect()),
        }
    }
}

/// A rational matrix, or a list of points for `curve`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub rows: Vec<Vec<Number>>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<RationalMatrix> {
        check_kind(&self.kind, "matrix")?;
        self.rows.iter().enumerate().map(|(i, r)| numbers(r, &format!("rows[{i}]"))).collect()
    }

    pub fn from_matrix(m: &RationalMatrix) -> Self {
        MatrixFile { kind: Some("matrix".into()), rows: m.iter().map(|r| r.iter().map(Number::from_value).collect()).collect() }
    }
}

/// Target of `certify`: a constructible set, or a fan whose Cox quotient
/// is the target.
#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum TargetFile {
    Fan(FanFile),
    Set(SetFile),
}
