//! Named singularity types with normal forms and verified invariants.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::germ::{Analyzer, GermError, GermPoly};

const BUILTIN: &str = include_str!("../data/catalog.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Analytic,
    Topological,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Analytic => "analytic",
            Flavor::Topological => "topological",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown singularity label '{0}'")]
    UnknownLabel(String),
    #[error("catalog line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("catalog line {line}: normal form: {source}")]
    Germ { line: usize, source: GermError },
    #[error("catalog entry {label}: stored {field} = {stored}, recomputed {computed}")]
    Inconsistent { label: String, field: &'static str, stored: i64, computed: i64 },
    #[error("catalog entry {label}: k_used = {k_used} outside certified window ({low}, {high})")]
    OutsideWindow { label: String, k_used: u32, low: u32, high: u32 },
    #[error("duplicate catalog label '{0}'")]
    Duplicate(String),
}

/// One named singularity type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityType {
    pub label: String,
    pub flavor: Flavor,
    #[serde(serialize_with = "crate::series::serialize_display")]
    pub normal_form: GermPoly,
    pub k_used: u32,
    /// Length of `C{x,y}/<f, m^(k_used+1)>`.
    pub n: u32,
    pub codim: u32,
    pub dim_es: u32,
    pub milnor: u32,
    pub tjurina: u32,
    pub determinacy_window: (u32, u32),
}

/// Sums and symmetry factor of a multiset of singularity types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CollectionStats {
    pub n: u32,
    pub codim: u32,
    pub length: usize,
    /// Product of factorials of label multiplicities.
    pub aut: u64,
}

/// Immutable table of singularity types, validated against the germ
/// computations when loaded.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<SingularityType>,
    index: HashMap<String, usize>,
}

struct Row {
    line: usize,
    label: String,
    flavor: Flavor,
    k_used: u32,
    dim_es: u32,
    mu: u32,
    tau: u32,
    n: u32,
    codim: u32,
    form: GermPoly,
}

fn parse_row(line: usize, text: &str) -> Result<Row, CatalogError> {
    let malformed = |message: String| CatalogError::Malformed { line, message };
    let mut fields = text.split_whitespace();
    let mut next = |name: &str| fields.next().ok_or_else(|| malformed(format!("missing {name}")));
    let label = next("label")?.to_string();
    let flavor = match next("flavor")? {
        "analytic" => Flavor::Analytic,
        "topological" => Flavor::Topological,
        other => return Err(malformed(format!("unknown flavor '{other}'"))),
    };
    let mut num = |name: &str| -> Result<u32, CatalogError> {
        let raw = next(name)?;
        raw.parse().map_err(|_| malformed(format!("{name} '{raw}' is not a nonnegative integer")))
    };
    let k_used = num("k_used")?;
    let dim_es = num("dim_es")?;
    let mu = num("mu")?;
    let tau = num("tau")?;
    let n = num("N")?;
    let codim = num("codim")?;
    let rest: Vec<&str> = fields.collect();
    if rest.is_empty() {
        return Err(malformed("missing normal form".into()));
    }
    let form = rest.join(" ").parse().map_err(|source| CatalogError::Germ { line, source })?;
    Ok(Row { line, label, flavor, k_used, dim_es, mu, tau, n, codim, form })
}

fn check(label: &str, field: &'static str, stored: u32, computed: u32) -> Result<(), CatalogError> {
    if stored == computed {
        Ok(())
    } else {
        Err(CatalogError::Inconsistent {
            label: label.to_string(),
            field,
            stored: stored.into(),
            computed: computed.into(),
        })
    }
}

fn verify(row: Row, lab: &Analyzer) -> Result<SingularityType, CatalogError> {
    let germ_err = |source| CatalogError::Germ { line: row.line, source };
    let milnor = lab.milnor_number(&row.form).map_err(germ_err)?;
    let tjurina = lab.tjurina_number(&row.form).map_err(germ_err)?;
    let window = lab.determinacy_window(&row.form).map_err(germ_err)?;
    if row.k_used < window.0.max(1) || row.k_used > window.1 {
        return Err(CatalogError::OutsideWindow {
            label: row.label,
            k_used: row.k_used,
            low: window.0,
            high: window.1,
        });
    }
    if row.flavor == Flavor::Analytic && row.dim_es != 0 {
        return Err(CatalogError::Malformed { line: row.line, message: "analytic types have dim_es = 0".into() });
    }
    if row.dim_es > tjurina {
        return Err(CatalogError::Malformed { line: row.line, message: "dim_es exceeds tau".into() });
    }
    let n = lab.scheme_length(&row.form, row.k_used);
    let codim = tjurina - row.dim_es;
    check(&row.label, "mu", row.mu, milnor)?;
    check(&row.label, "tau", row.tau, tjurina)?;
    check(&row.label, "N", row.n, n)?;
    check(&row.label, "codim", row.codim, codim)?;
    Ok(SingularityType {
        label: row.label,
        flavor: row.flavor,
        normal_form: row.form,
        k_used: row.k_used,
        n,
        codim,
        dim_es: row.dim_es,
        milnor,
        tjurina,
        determinacy_window: window,
    })
}

fn alias(label: &str) -> &str {
    match label {
        "node" => "A1",
        "cusp" => "A2",
        other => other,
    }
}

impl Catalog {
    /// Parses and validates a catalog text. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let lab = Analyzer::default();
        let mut entries = Vec::new();
        let mut index = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let entry = verify(parse_row(i + 1, body)?, &lab)?;
            if index.insert(entry.label.clone(), entries.len()).is_some() {
                return Err(CatalogError::Duplicate(entry.label));
            }
            entries.push(entry);
        }
        Ok(Self { entries, index })
    }

    /// The catalog shipped with the crate, validated once per process.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::parse(BUILTIN).expect("shipped catalog is consistent"))
    }

    pub fn source_text() -> &'static str {
        BUILTIN
    }

    pub fn entries(&self) -> &[SingularityType] {
        &self.entries
    }

    /// Looks up a label; `node` and `cusp` are accepted for `A1` and `A2`.
    pub fn lookup(&self, label: &str) -> Result<&SingularityType, CatalogError> {
        self.index
            .get(alias(label.trim()))
            .map(|&i| &self.entries[i])
            .ok_or_else(|| CatalogError::UnknownLabel(label.to_string()))
    }

    pub fn collection_stats<S: AsRef<str>>(&self, parts: &[S]) -> Result<CollectionStats, CatalogError> {
        let mut multiplicity: BTreeMap<&str, u64> = BTreeMap::new();
        let mut stats = CollectionStats { n: 0, codim: 0, length: 0, aut: 1 };
        for part in parts {
            let entry = self.lookup(part.as_ref())?;
            stats.n += entry.n;
            stats.codim += entry.codim;
            stats.length += 1;
            let m = multiplicity.entry(entry.label.as_str()).or_insert(0);
            *m += 1;
            stats.aut *= *m;
        }
        Ok(stats)
    }

    /// Codimension weights for every label, as used by series truncation.
    pub fn codim_weights(&self) -> BTreeMap<String, u32> {
        self.entries.iter().map(|e| (e.label.clone(), e.codim)).collect()
    }
}
