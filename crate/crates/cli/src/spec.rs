//! Spec files: `[section]` headers, `key = value` lines, `#` comments.
//!
//! ```text
//! [construction]
//! kind = RA
//! n = 16
//! A = [0, 1]
//!
//! [ideals]
//! P = [4]
//! I = [2]
//!
//! [queries]
//! isPrime P
//! isIPrime P I
//! isNAbsorbingIPrime P I n=2 witness=[2, 2, 2]
//!
//! [suites]
//! T4 family=default
//! T6,T9a family=this
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use hyperring_core::construct::{build_ra, product_hyperring, quotient_hyperring, RaSpec};
use hyperring_core::harness::{Family, RingRecipe, Suite};
use hyperring_core::ring::validate_hyperring;
use hyperring_core::{Error, FiniteHyperring, Hyperideal, Predicate, PredicateQuery, RingTables, ValidationReport};

/// 1-based position in the spec text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpecError {
    Io(String),
    Parse { at: Location, message: String },
    UnknownConstruction { at: Location, name: String },
    BadGenerator { at: Location, generator: usize, size: usize },
    /// A construction or query rejected by the engine.
    Invalid { at: Location, error: Error },
}

impl SpecError {
    pub fn location(&self) -> Option<Location> {
        match self {
            SpecError::Io(_) => None,
            SpecError::Parse { at, .. }
            | SpecError::UnknownConstruction { at, .. }
            | SpecError::BadGenerator { at, .. }
            | SpecError::Invalid { at, .. } => Some(*at),
        }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Io(e) => write!(f, "cannot read spec: {e}"),
            SpecError::Parse { at, message } => write!(f, "{at}: {message}"),
            SpecError::UnknownConstruction { at, name } => {
                write!(f, "{at}: unknown construction '{name}' (expected RA, product, quotient or tables)")
            }
            SpecError::BadGenerator { at, generator, size } => {
                write!(f, "{at}: generator {generator} outside carrier of size {size}")
            }
            SpecError::Invalid { at, error } => write!(f, "{at}: {error}"),
        }
    }
}

impl std::error::Error for SpecError {}

fn parse_err(at: Location, message: impl Into<String>) -> SpecError {
    SpecError::Parse { at, message: message.into() }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Construction {
    Ra(RaSpec),
    Product(Vec<RaSpec>),
    /// `RA(n;A)` modulo the ideal generated by `by`.
    Quotient { base: RaSpec, by: Vec<usize> },
    Tables(RingTables),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionDecl {
    pub body: Construction,
    /// Location of each key, for error reporting.
    pub keys: BTreeMap<String, Location>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdealDecl {
    pub name: String,
    pub generators: Vec<usize>,
    pub at: Location,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryDecl {
    pub predicate: Predicate,
    pub p: String,
    pub i: Option<String>,
    pub n: Option<usize>,
    /// A tuple to re-check against the predicate.
    pub witness: Option<Vec<usize>>,
    pub at: Location,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyDecl {
    /// Just the ring built by the construction section.
    This,
    Named(Family),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteDecl {
    pub suites: Vec<Suite>,
    pub family: FamilyDecl,
    pub at: Location,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpecFile {
    pub construction: Option<ConstructionDecl>,
    pub ideals: Vec<IdealDecl>,
    pub queries: Vec<QueryDecl>,
    pub suites: Vec<SuiteDecl>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Construction,
    Ideals,
    Queries,
    Suites,
}

/// Whitespace-separated tokens with their columns; brackets keep spaces inside a token.
fn tokens(content: &str, line: usize) -> Vec<(String, Location)> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start: Option<usize> = None;
    for (k, ch) in content.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            if let Some(s) = start.take() {
                out.push((content[s..k].to_string(), Location { line, column: s + 1 }));
            }
        } else if start.is_none() {
            start = Some(k);
        }
    }
    if let Some(s) = start {
        out.push((content[s..].to_string(), Location { line, column: s + 1 }));
    }
    out
}

fn parse_usize(value: &str, at: Location) -> Result<usize, SpecError> {
    value.trim().parse().map_err(|_| parse_err(at, format!("expected a non-negative integer, found '{value}'")))
}

fn parse_json<T: serde::de::DeserializeOwned>(value: &str, at: Location, what: &str) -> Result<T, SpecError> {
    serde_json::from_str(value).map_err(|e| {
        let column = if e.line() <= 1 { at.column + e.column().saturating_sub(1) } else { at.column };
        parse_err(Location { line: at.line, column }, format!("expected {what}: {e}"))
    })
}

fn parse_list(value: &str, at: Location) -> Result<Vec<usize>, SpecError> {
    parse_json(value, at, "an integer list like [0, 1]")
}

/// Accepts `isPrime`, `prime`, `IPrime`, `isNAbsorbingIPrime`, … case-insensitively.
pub fn predicate_from_name(name: &str) -> Option<Predicate> {
    let stripped = match name.strip_prefix("is") {
        Some(rest) if rest.starts_with(|c: char| c.is_ascii_uppercase()) => rest,
        _ => name,
    };
    Predicate::ALL.into_iter().find(|p| p.name().eq_ignore_ascii_case(stripped))
}

/// Family from a name and `key=value` parameters, e.g. `product-sweep arity=2 max-carrier=36`.
pub fn family_from_parts(name: &str, params: &BTreeMap<String, usize>) -> Result<FamilyDecl, String> {
    let allowed: &[&str] = match name {
        "this" | "empty" | "default" | "fixtures" => &[],
        "ra-sweep" | "quotient-sweep" => &["nmax", "amax"],
        "product-sweep" | "hyperfield-products" => &["arity", "max-carrier", "nmax", "amax"],
        _ => {
            return Err(format!(
                "unknown family '{name}' (expected this, empty, default, fixtures, ra-sweep, quotient-sweep, product-sweep or hyperfield-products)"
            ))
        }
    };
    if let Some(bad) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(format!("family '{name}' takes no parameter '{bad}'"));
    }
    let get = |k: &str, d: usize| params.get(k).copied().unwrap_or(d);
    let arity = get("arity", 2);
    let max_carrier = get("max-carrier", if name == "hyperfield-products" { 64 } else { 36 });
    // Products default to every factor that can fit next to copies of the smallest ring.
    let widest = if matches!(name, "product-sweep" | "hyperfield-products") {
        max_carrier >> arity.saturating_sub(1).min(usize::BITS as usize - 1)
    } else {
        8
    };
    let (nmax, amax) = (get("nmax", widest), get("amax", 2));
    Ok(match name {
        "this" => FamilyDecl::This,
        "empty" => FamilyDecl::Named(Family::Empty),
        "default" => FamilyDecl::Named(Family::Default),
        "fixtures" => FamilyDecl::Named(Family::Fixtures),
        "ra-sweep" => FamilyDecl::Named(Family::RaSweep { nmax, amax }),
        "quotient-sweep" => FamilyDecl::Named(Family::QuotientSweep { nmax, amax }),
        "product-sweep" => FamilyDecl::Named(Family::ProductSweep { arity, max_carrier, nmax, amax }),
        _ => FamilyDecl::Named(Family::HyperfieldProducts { arity, max_carrier, nmax, amax }),
    })
}

/// Parses `NAME [key=value ...]` family descriptions, as given on the command line.
pub fn parse_family(text: &str) -> Result<FamilyDecl, String> {
    let mut parts = text.split_whitespace();
    let name = parts.next().ok_or("empty family description")?;
    let mut params = BTreeMap::new();
    for part in parts {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("expected key=value, found '{part}'"))?;
        let v: usize = v.parse().map_err(|_| format!("parameter '{k}' needs an integer"))?;
        params.insert(k.to_string(), v);
    }
    family_from_parts(name, &params)
}

/// Suite names, comma separated, or `all`.
pub fn parse_suites(text: &str) -> Result<Vec<Suite>, String> {
    if text.eq_ignore_ascii_case("all") {
        return Ok(Suite::ALL.to_vec());
    }
    text.split(',').map(|s| Suite::parse(s).ok_or_else(|| format!("unknown suite '{s}'"))).collect()
}

struct Parser {
    file: SpecFile,
    construction: BTreeMap<String, (String, Location)>,
    factors: Vec<(String, Location)>,
    construction_at: Option<Location>,
}

impl Parser {
    fn key_value(content: &str, line: usize) -> Result<(String, String, Location, Location), SpecError> {
        let eq = content.find('=').ok_or_else(|| {
            let column = content.len() - content.trim_start().len() + 1;
            parse_err(Location { line, column }, "expected 'key = value'")
        })?;
        let key = content[..eq].trim();
        let key_col = content.len() - content.trim_start().len() + 1;
        let rest = &content[eq + 1..];
        let value = rest.trim();
        let value_col = eq + 2 + (rest.len() - rest.trim_start().len());
        if key.is_empty() {
            return Err(parse_err(Location { line, column: key_col }, "missing key before '='"));
        }
        if value.is_empty() {
            return Err(parse_err(Location { line, column: eq + 1 }, format!("missing value for '{key}'")));
        }
        Ok((key.to_string(), value.to_string(), Location { line, column: key_col }, Location { line, column: value_col }))
    }

    fn construction_line(&mut self, content: &str, line: usize) -> Result<(), SpecError> {
        let (key, value, key_at, value_at) = Self::key_value(content, line)?;
        const KEYS: [&str; 10] = ["kind", "n", "A", "factor", "by", "zero", "labels", "add", "neg", "hmul"];
        if !KEYS.contains(&key.as_str()) {
            return Err(parse_err(key_at, format!("unknown construction key '{key}'")));
        }
        if key == "factor" {
            self.factors.push((value, value_at));
            return Ok(());
        }
        if self.construction.insert(key.clone(), (value, value_at)).is_some() {
            return Err(parse_err(key_at, format!("duplicate key '{key}'")));
        }
        Ok(())
    }

    fn ideal_line(&mut self, content: &str, line: usize) -> Result<(), SpecError> {
        let (name, value, key_at, value_at) = Self::key_value(content, line)?;
        if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(parse_err(key_at, format!("ideal name '{name}' must be alphanumeric")));
        }
        if self.file.ideals.iter().any(|d| d.name == name) {
            return Err(parse_err(key_at, format!("ideal '{name}' declared twice")));
        }
        let generators = parse_list(&value, value_at)?;
        self.file.ideals.push(IdealDecl { name, generators, at: value_at });
        Ok(())
    }

    fn query_line(&mut self, content: &str, line: usize) -> Result<(), SpecError> {
        let toks = tokens(content, line);
        let (name, at) = &toks[0];
        let predicate =
            predicate_from_name(name).ok_or_else(|| parse_err(*at, format!("unknown predicate '{name}'")))?;
        let mut names = Vec::new();
        let (mut n, mut witness) = (None, None);
        for (tok, tok_at) in &toks[1..] {
            if let Some(v) = tok.strip_prefix("n=") {
                n = Some(parse_usize(v, Location { column: tok_at.column + 2, ..*tok_at })?);
            } else if let Some(v) = tok.strip_prefix("witness=") {
                witness = Some(parse_list(v, Location { column: tok_at.column + 8, ..*tok_at })?);
            } else if tok.contains('=') {
                return Err(parse_err(*tok_at, format!("unknown query option '{tok}'")));
            } else {
                names.push((tok.clone(), *tok_at));
            }
        }
        let expected = if predicate.needs_i() { 2 } else { 1 };
        if names.len() != expected {
            return Err(parse_err(
                *at,
                format!("predicate '{}' takes {expected} ideal name(s), found {}", predicate.name(), names.len()),
            ));
        }
        let mut names = names.into_iter().map(|(s, _)| s);
        self.file.queries.push(QueryDecl {
            predicate,
            p: names.next().expect("counted"),
            i: names.next(),
            n,
            witness,
            at: *at,
        });
        Ok(())
    }

    fn suite_line(&mut self, content: &str, line: usize) -> Result<(), SpecError> {
        let toks = tokens(content, line);
        let (names, at) = &toks[0];
        let suites = parse_suites(names).map_err(|m| parse_err(*at, m))?;
        let mut family = String::from("default");
        let mut params = BTreeMap::new();
        for (tok, tok_at) in &toks[1..] {
            let (k, v) = tok.split_once('=').ok_or_else(|| parse_err(*tok_at, format!("expected key=value, found '{tok}'")))?;
            if k == "family" {
                family = v.to_string();
            } else {
                let value = parse_usize(v, Location { column: tok_at.column + k.len() + 1, ..*tok_at })?;
                params.insert(k.to_string(), value);
            }
        }
        let family = family_from_parts(&family, &params).map_err(|m| parse_err(*at, m))?;
        self.file.suites.push(SuiteDecl { suites, family, at: *at });
        Ok(())
    }

    fn take(&mut self, key: &str) -> Option<(String, Location)> {
        self.construction.remove(key)
    }

    fn require(&mut self, key: &str, kind: &str) -> Result<(String, Location), SpecError> {
        let at = self.construction_at.unwrap_or_default();
        self.take(key).ok_or_else(|| parse_err(at, format!("construction '{kind}' needs key '{key}'")))
    }

    fn ra_spec(&mut self, kind: &str) -> Result<RaSpec, SpecError> {
        let (n, n_at) = self.require("n", kind)?;
        let (a, a_at) = self.require("A", kind)?;
        let spec = RaSpec::new(parse_usize(&n, n_at)?, parse_list(&a, a_at)?);
        spec.validate().map_err(|error| {
            let at = if matches!(error, Error::InvalidModulus(_)) { n_at } else { a_at };
            SpecError::Invalid { at, error }
        })?;
        Ok(spec)
    }

    fn finish_construction(&mut self) -> Result<(), SpecError> {
        if self.construction.is_empty() && self.factors.is_empty() {
            return Ok(());
        }
        let mut keys: BTreeMap<String, Location> =
            self.construction.iter().map(|(k, (_, at))| (k.clone(), *at)).collect();
        if let Some((_, at)) = self.factors.first() {
            keys.insert("factor".into(), *at);
        }
        let (kind, kind_at) = self.require("kind", "any")?;
        self.construction_at = Some(kind_at);
        let body = match kind.to_ascii_lowercase().as_str() {
            "ra" => Construction::Ra(self.ra_spec("RA")?),
            "quotient" => {
                let base = self.ra_spec("quotient")?;
                let (by, by_at) = self.require("by", "quotient")?;
                let by = parse_list(&by, by_at)?;
                if let Some(&g) = by.iter().find(|&&g| g >= base.n) {
                    return Err(SpecError::BadGenerator { at: by_at, generator: g, size: base.n });
                }
                Construction::Quotient { base, by }
            }
            "product" => {
                if self.factors.len() < 2 {
                    return Err(parse_err(kind_at, "construction 'product' needs at least two 'factor' lines"));
                }
                let mut specs = Vec::new();
                for (text, at) in std::mem::take(&mut self.factors) {
                    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
                    let spec = match RingRecipe::parse(&compact) {
                        Some(RingRecipe::Ra(spec)) => spec,
                        _ => return Err(parse_err(at, format!("expected a factor like RA(4;0,1), found '{text}'"))),
                    };
                    spec.validate().map_err(|error| SpecError::Invalid { at, error })?;
                    specs.push(spec);
                }
                Construction::Product(specs)
            }
            "tables" => {
                let (add, add_at) = self.require("add", "tables")?;
                let (hmul, hmul_at) = self.require("hmul", "tables")?;
                let add: Vec<Vec<usize>> = parse_json(&add, add_at, "a square integer table")?;
                let hmul: Vec<Vec<Vec<usize>>> = parse_json(&hmul, hmul_at, "a table of integer lists")?;
                let m = add.len();
                let zero = match self.take("zero") {
                    Some((z, at)) => parse_usize(&z, at)?,
                    None => 0,
                };
                let neg = match self.take("neg") {
                    Some((v, at)) => parse_list(&v, at)?,
                    None => (0..m)
                        .map(|a| add.get(a).and_then(|row| row.iter().position(|&s| s == zero)).unwrap_or(zero))
                        .collect(),
                };
                let labels = match self.take("labels") {
                    Some((v, at)) => parse_json(&v, at, "a list of strings")?,
                    None => RingTables::numeric_labels(m),
                };
                Construction::Tables(RingTables { labels, zero, add, neg, hmul })
            }
            _ => return Err(SpecError::UnknownConstruction { at: kind_at, name: kind }),
        };
        if let Some((key, (_, at))) = self.construction.iter().next() {
            return Err(parse_err(*at, format!("key '{key}' is not used by construction '{kind}'")));
        }
        if let Some((_, at)) = self.factors.first() {
            return Err(parse_err(*at, format!("key 'factor' is not used by construction '{kind}'")));
        }
        self.file.construction = Some(ConstructionDecl { body, keys });
        Ok(())
    }
}

/// Parses spec text; syntax and construction parameters are checked, the ring is not built.
pub fn parse_text(text: &str) -> Result<SpecFile, SpecError> {
    let mut parser =
        Parser { file: SpecFile::default(), construction: BTreeMap::new(), factors: Vec::new(), construction_at: None };
    let mut section = None;
    let mut seen = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let at = Location { line, column: indent + 1 };
        if let Some(header) = trimmed.strip_prefix('[') {
            let name = header.strip_suffix(']').ok_or_else(|| parse_err(at, "unterminated section header"))?.trim();
            let next = match name {
                "construction" => Section::Construction,
                "ideals" => Section::Ideals,
                "queries" => Section::Queries,
                "suites" => Section::Suites,
                _ => return Err(parse_err(at, format!("unknown section '{name}'"))),
            };
            if seen.contains(&next) {
                return Err(parse_err(at, format!("section '{name}' appears twice")));
            }
            seen.push(next);
            section = Some(next);
            continue;
        }
        match section {
            None => return Err(parse_err(at, "content before the first [section] header")),
            Some(Section::Construction) => parser.construction_line(content, line)?,
            Some(Section::Ideals) => parser.ideal_line(content, line)?,
            Some(Section::Queries) => parser.query_line(content, line)?,
            Some(Section::Suites) => parser.suite_line(content, line)?,
        }
    }
    parser.finish_construction()?;
    Ok(parser.file)
}

/// A spec with its ring built and names resolved.
#[derive(Debug, Clone)]
pub struct LoadedSpec {
    pub file: SpecFile,
    /// `None` for tables that fail validation; `validation` then explains why.
    pub ring: Option<Arc<FiniteHyperring>>,
    pub validation: ValidationReport,
    /// How to rebuild the ring inside a theorem family.
    pub recipe: Option<RingRecipe>,
    pub ideals: Vec<(String, Hyperideal)>,
    pub queries: Vec<(QueryDecl, PredicateQuery)>,
}

type Built = (Option<Arc<FiniteHyperring>>, ValidationReport, Option<RingRecipe>);

fn build(decl: &ConstructionDecl, size_cap: usize) -> Result<Built, SpecError> {
    let key_at = |k: &str| decl.keys.get(k).copied().unwrap_or_default();
    let invalid = |k: &str| {
        let at = key_at(k);
        move |error| SpecError::Invalid { at, error }
    };
    let (ring, recipe) = match &decl.body {
        Construction::Ra(spec) => (Arc::new(build_ra(spec).map_err(invalid("A"))?), RingRecipe::Ra(spec.clone())),
        Construction::Product(specs) => {
            let factors =
                specs.iter().map(|s| build_ra(s).map(Arc::new)).collect::<Result<Vec<_>, _>>().map_err(invalid("factor"))?;
            let product = product_hyperring(&factors, size_cap).map_err(invalid("kind"))?;
            (product.ring, RingRecipe::Product(specs.clone()))
        }
        Construction::Quotient { base, by } => {
            let ring = Arc::new(build_ra(base).map_err(invalid("A"))?);
            let j = Hyperideal::from_generators(&ring, by).map_err(invalid("by"))?;
            let q = quotient_hyperring(&j).map_err(invalid("by"))?;
            (q.ring, RingRecipe::Quotient { base: base.clone(), ideal: j.set().to_vec() })
        }
        Construction::Tables(tables) => {
            let report = validate_hyperring(tables).map_err(invalid("add"))?;
            if !report.ok() {
                return Ok((None, report, None));
            }
            let ring = FiniteHyperring::from_tables(tables).map_err(invalid("add"))?;
            return Ok((Some(Arc::new(ring)), report, None));
        }
    };
    if ring.size() > size_cap {
        return Err(SpecError::Invalid { at: key_at("kind"), error: Error::TooLarge { size: ring.size(), cap: size_cap } });
    }
    let report = ValidationReport { failures: Vec::new(), distributivity: Some(ring.distributivity()) };
    Ok((Some(ring), report, Some(recipe)))
}

/// Parses, builds the ring, and resolves ideal names and queries.
pub fn load_text(text: &str, size_cap: usize) -> Result<LoadedSpec, SpecError> {
    let file = parse_text(text)?;
    let Some(decl) = &file.construction else {
        let empty = ValidationReport { failures: Vec::new(), distributivity: None };
        if let Some(d) = file.ideals.first() {
            return Err(parse_err(d.at, "ideals need a [construction] section"));
        }
        if let Some(q) = file.queries.first() {
            return Err(parse_err(q.at, "queries need a [construction] section"));
        }
        return Ok(LoadedSpec { file, ring: None, validation: empty, recipe: None, ideals: Vec::new(), queries: Vec::new() });
    };
    let (ring, validation, recipe) = build(decl, size_cap)?;
    let mut ideals = Vec::new();
    let mut queries = Vec::new();
    if let Some(ring) = &ring {
        for d in &file.ideals {
            if let Some(&g) = d.generators.iter().find(|&&g| g >= ring.size()) {
                return Err(SpecError::BadGenerator { at: d.at, generator: g, size: ring.size() });
            }
            let ideal = Hyperideal::from_generators(ring, &d.generators).map_err(|error| SpecError::Invalid { at: d.at, error })?;
            ideals.push((d.name.clone(), ideal));
        }
        let lookup = |name: &str, at: Location| {
            ideals
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, i)| i.clone())
                .ok_or_else(|| parse_err(at, format!("undeclared ideal '{name}'")))
        };
        for q in &file.queries {
            let p = lookup(&q.p, q.at)?;
            let i = q.i.as_deref().map(|name| lookup(name, q.at)).transpose()?;
            let query = PredicateQuery::new(q.predicate, p, i, q.n).map_err(|error| SpecError::Invalid { at: q.at, error })?;
            queries.push((q.clone(), query));
        }
    }
    Ok(LoadedSpec { file, ring, validation, recipe, ideals, queries })
}

/// Reads and loads a spec file.
pub fn parse_spec(path: &Path, size_cap: usize) -> Result<LoadedSpec, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|e| SpecError::Io(format!("{}: {e}", path.display())))?;
    load_text(&text, size_cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 4096;

    #[test]
    fn minimal_ra_spec_parses() {
        let spec = load_text("[construction]\nkind = RA\nn = 6\nA = [0, 1]\n", CAP).unwrap();
        assert_eq!(spec.ring.unwrap().size(), 6);
        assert_eq!(spec.recipe, Some(RingRecipe::Ra(RaSpec::new(6, [0, 1]))));
    }

    #[test]
    fn empty_a_is_located() {
        let err = load_text("[construction]\nkind = RA\nn = 6\nA = []\n", CAP).unwrap_err();
        assert_eq!(err, SpecError::Invalid { at: Location { line: 4, column: 5 }, error: Error::EmptyA });
    }

    #[test]
    fn out_of_range_generator_is_rejected() {
        let text = "[construction]\nkind = RA\nn = 6\nA = [0, 1]\n[ideals]\nP = [9]\n";
        let err = load_text(text, CAP).unwrap_err();
        assert_eq!(err, SpecError::BadGenerator { at: Location { line: 6, column: 5 }, generator: 9, size: 6 });
    }

    #[test]
    fn unknown_keys_sections_and_kinds_are_rejected() {
        let err = parse_text("[construction]\nkind = RA\nm = 6\n").unwrap_err();
        assert!(matches!(err, SpecError::Parse { at: Location { line: 3, column: 1 }, .. }), "{err}");
        let err = parse_text("[stuff]\n").unwrap_err();
        assert!(matches!(err, SpecError::Parse { at: Location { line: 1, .. }, .. }));
        let err = parse_text("[construction]\nkind = matrix\n").unwrap_err();
        assert_eq!(err, SpecError::UnknownConstruction { at: Location { line: 2, column: 8 }, name: "matrix".into() });
        let err = parse_text("[construction]\nkind = RA\nn = 6\nA = [1]\nby = [2]\n").unwrap_err();
        assert!(matches!(err, SpecError::Parse { at: Location { line: 5, .. }, .. }), "{err}");
    }

    #[test]
    fn json_errors_point_into_the_value() {
        let err = parse_text("[construction]\nkind = RA\nn = 6\nA = [0, x]\n").unwrap_err();
        let SpecError::Parse { at, .. } = err else { panic!("{err:?}") };
        assert_eq!(at.line, 4);
        assert!(at.column >= 9, "{at}");
    }

    #[test]
    fn queries_and_suites() {
        let text = "\
[construction]
kind = RA
n = 16
A = [0, 1]
[ideals]
P = [4]
I = [2]
[queries]
isPrime P witness=[2, 2]
isNAbsorbingIPrime P I n=2
[suites]
T4,T6 family=this
T8 family=product-sweep arity=2 max-carrier=12
";
        let spec = load_text(text, CAP).unwrap();
        assert_eq!(spec.queries.len(), 2);
        assert_eq!(spec.file.queries[0].witness, Some(vec![2, 2]));
        assert_eq!(spec.file.queries[1].n, Some(2));
        assert_eq!(spec.file.suites[0].suites, vec![Suite::T4, Suite::T6]);
        assert_eq!(spec.file.suites[0].family, FamilyDecl::This);
        assert_eq!(
            spec.file.suites[1].family,
            FamilyDecl::Named(Family::ProductSweep { arity: 2, max_carrier: 12, nmax: 6, amax: 2 })
        );
        let err = load_text("[construction]\nkind = RA\nn = 4\nA = [1]\n[ideals]\nP = [2]\n[queries]\nIPrime P\n", CAP)
            .unwrap_err();
        assert!(matches!(err, SpecError::Parse { at: Location { line: 8, column: 1 }, .. }), "{err}");
    }

    #[test]
    fn product_quotient_and_tables() {
        let p = load_text("[construction]\nkind = product\nfactor = RA(4; 0, 1)\nfactor = RA(2;1)\n", CAP).unwrap();
        assert_eq!(p.ring.unwrap().size(), 8);
        let q = load_text("[construction]\nkind = quotient\nn = 8\nA = [0, 1]\nby = [4]\n", CAP).unwrap();
        assert_eq!(q.ring.unwrap().size(), 4);
        let err = load_text("[construction]\nkind = quotient\nn = 8\nA = [1]\nby = [8]\n", CAP).unwrap_err();
        assert!(matches!(err, SpecError::BadGenerator { generator: 8, .. }));
        let t = load_text("[construction]\nkind = tables\nadd = [[0,1],[1,0]]\nhmul = [[[0],[0]],[[0],[1]]]\n", CAP).unwrap();
        assert!(t.validation.ok());
        let bad = load_text("[construction]\nkind = tables\nadd = [[0,1],[1,1]]\nhmul = [[[0],[0]],[[0],[1]]]\n", CAP).unwrap();
        assert!(bad.ring.is_none());
        assert!(!bad.validation.ok());
    }
}
