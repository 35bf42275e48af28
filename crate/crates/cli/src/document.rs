//! The JSON document format for filtered complexes and their perversities.

use std::collections::BTreeMap;
use std::fmt;

use ihsimp::chains::{Perversity, PerversityKind};
use ihsimp::complex::{FilteredComplex, Simplex};
use ihsimp::extint::ExtInt;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// An extended integer as written in a document: a JSON integer, or one of
/// the strings `"inf"` and `"-inf"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Text(String),
}

impl Value {
    fn parse(&self, field: &str) -> Result<ExtInt, CliError> {
        match self {
            Value::Int(v) => Ok(ExtInt::Finite(*v)),
            Value::Text(t) => t.parse().map_err(|_| CliError::Schema(format!("{field}: {t:?} is not an extended integer"))),
        }
    }

    fn from_ext(v: ExtInt) -> Value {
        match v {
            ExtInt::Finite(x) => Value::Int(x),
            other => Value::Text(other.to_string()),
        }
    }
}

/// One table entry: the value on the stratum `(level, index)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub level: usize,
    pub index: usize,
    pub value: Value,
}

/// Either one value per codimension `1..=n`, or a table over strata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "values", rename_all = "lowercase")]
pub enum PerversityValues {
    Codim(Vec<Value>),
    Table(Vec<TableEntry>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerversityEntry {
    pub name: String,
    #[serde(flatten)]
    pub values: PerversityValues,
}

/// A filtered complex as stored on disk. The filtration maps a level to
/// simplices generating `K_level`; simplices outside every listed level
/// sit at level `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub name: String,
    pub n: usize,
    pub facets: Vec<Vec<u32>>,
    #[serde(default)]
    pub filtration: BTreeMap<usize, Vec<Vec<u32>>>,
    #[serde(default)]
    pub perversities: Vec<PerversityEntry>,
}

/// A validated document.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: String,
    pub complex: FilteredComplex,
    pub perversities: Vec<Perversity>,
}

impl Loaded {
    /// A declared perversity by name, else a preset.
    pub fn perversity(&self, name: &str) -> Result<Perversity, CliError> {
        self.perversities
            .iter()
            .find(|p| p.name == name)
            .cloned()
            .or_else(|| Perversity::preset(name, self.complex.n()))
            .ok_or_else(|| CliError::UnknownPerversity(name.to_string()))
    }

    /// The declared perversities, or `zero` and `top` when none are declared.
    pub fn suite_perversities(&self) -> Vec<Perversity> {
        if self.perversities.is_empty() {
            let n = self.complex.n();
            vec![Perversity::zero(n), Perversity::top(n)]
        } else {
            self.perversities.clone()
        }
    }
}

fn simplex(ids: &[u32], field: &str) -> Result<Simplex, CliError> {
    Simplex::from_ids(ids).map_err(|e| CliError::Schema(format!("{field}: {e}")))
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<ComplexDocument, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// Builds and validates the filtered complex and its perversities.
    pub fn load(&self) -> Result<Loaded, CliError> {
        if self.facets.is_empty() {
            return Err(CliError::Schema("facets: the complex is empty".into()));
        }
        let facets = self
            .facets
            .iter()
            .enumerate()
            .map(|(i, f)| simplex(f, &format!("facets[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let mut gens = BTreeMap::new();
        for (&level, list) in &self.filtration {
            let g = list
                .iter()
                .enumerate()
                .map(|(i, s)| simplex(s, &format!("filtration.{level}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            gens.insert(level, g);
        }
        let complex = FilteredComplex::from_generators(self.n, &facets, &gens)
            .map_err(|e| CliError::Schema(format!("filtration: {e}")))?;
        let mut perversities = Vec::with_capacity(self.perversities.len());
        for (i, entry) in self.perversities.iter().enumerate() {
            let field = format!("perversities[{i}] ({})", entry.name);
            let p = match &entry.values {
                PerversityValues::Codim(vs) => {
                    if vs.len() != self.n {
                        return Err(CliError::Schema(format!(
                            "{field}: expected {} codimension values, found {}",
                            self.n,
                            vs.len()
                        )));
                    }
                    Perversity::codim(&entry.name, vs.iter().map(|v| v.parse(&field)).collect::<Result<_, _>>()?)
                }
                PerversityValues::Table(entries) => {
                    let mut t = BTreeMap::new();
                    for e in entries {
                        if t.insert((e.level, e.index), e.value.parse(&field)?).is_some() {
                            return Err(CliError::Schema(format!("{field}: stratum ({}, {}) listed twice", e.level, e.index)));
                        }
                    }
                    Perversity::table(&entry.name, t)
                }
            };
            p.validate_on(&complex).map_err(|e| CliError::Schema(format!("{field}: {e}")))?;
            perversities.push(p);
        }
        Ok(Loaded { name: self.name.clone(), complex, perversities })
    }

    /// The document of `k`: maximal simplices as facets, and the maximal
    /// simplices of each `K_l`, `l < n`, as generators.
    pub fn from_complex(name: &str, k: &FilteredComplex, perversities: &[Perversity]) -> ComplexDocument {
        let ids = |s: &Simplex| s.vertices().iter().map(|v| v.0).collect::<Vec<u32>>();
        let mut facets: Vec<Vec<u32>> = k.maximal_simplices().into_iter().map(|i| ids(k.simplex(i))).collect();
        facets.sort();
        let mut filtration = BTreeMap::new();
        for level in 0..k.n() {
            let sub = k.skeleton_level(level);
            if sub.is_empty() {
                continue;
            }
            let mut g: Vec<Vec<u32>> = sub.maximal_simplices().into_iter().map(|i| ids(sub.simplex(i))).collect();
            g.sort();
            filtration.insert(level, g);
        }
        let perversities = perversities
            .iter()
            .map(|p| PerversityEntry {
                name: p.name.clone(),
                values: match &p.kind {
                    PerversityKind::Codim(v) => PerversityValues::Codim(v.iter().map(|&x| Value::from_ext(x)).collect()),
                    PerversityKind::Table(t) => PerversityValues::Table(
                        t.iter()
                            .map(|(&(level, index), &x)| TableEntry { level, index, value: Value::from_ext(x) })
                            .collect(),
                    ),
                },
            })
            .collect();
        ComplexDocument { name: name.to_string(), n: k.n(), facets, filtration, perversities }
    }
}

impl fmt::Display for ComplexDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ihsimp::corpus;

    #[test]
    fn round_trip_on_corpus() {
        for e in corpus::all() {
            let doc = ComplexDocument::from_complex(e.name, &e.complex, &[Perversity::zero(e.complex.n())]);
            let back = ComplexDocument::parse(&doc.to_json()).unwrap().load().unwrap();
            assert_eq!(back.complex, e.complex, "{}", e.name);
            assert_eq!(back.perversities, vec![Perversity::zero(e.complex.n())]);
        }
    }

    #[test]
    fn empty_facets_are_rejected() {
        let doc = ComplexDocument::parse(r#"{"name":"e","n":1,"facets":[]}"#).unwrap();
        assert!(matches!(doc.load(), Err(CliError::Schema(_))));
    }

    #[test]
    fn duplicate_facets_are_idempotent() {
        let a = ComplexDocument::parse(r#"{"name":"a","n":1,"facets":[[0,1],[0,1]]}"#).unwrap().load().unwrap();
        let b = ComplexDocument::parse(r#"{"name":"b","n":1,"facets":[[0,1]]}"#).unwrap().load().unwrap();
        assert_eq!(a.complex, b.complex);
    }

    #[test]
    fn table_values_and_infinities() {
        let text = r#"{"name":"c","n":2,"facets":[[0,1,3],[1,2,3],[0,2,3]],"filtration":{"0":[[3]]},
            "perversities":[{"name":"p","kind":"table","values":[{"level":0,"index":0,"value":"inf"}]},
                            {"name":"q","kind":"codim","values":[0,"-inf"]}]}"#;
        let l = ComplexDocument::parse(text).unwrap().load().unwrap();
        assert_eq!(l.complex, corpus::cone());
        assert_eq!(l.perversity("p").unwrap().values_on(&l.complex).unwrap()[0], ExtInt::PosInf);
        assert_eq!(l.perversity("q").unwrap().kind, PerversityKind::Codim(vec![ExtInt::ZERO, ExtInt::NegInf]));
    }

    #[test]
    fn schema_errors_name_the_field() {
        let unknown = r#"{"name":"c","n":2,"facets":[[0,1,3],[1,2,3],[0,2,3]],"filtration":{"0":[[3]]},
            "perversities":[{"name":"p","kind":"table","values":[{"level":1,"index":0,"value":0}]}]}"#;
        let err = ComplexDocument::parse(unknown).unwrap().load().unwrap_err().to_string();
        assert!(err.contains("perversities[0]") && err.contains("unknown stratum"), "{err}");
        let not_face = r#"{"name":"c","n":2,"facets":[[0,1]],"filtration":{"0":[[0,2]]}}"#;
        assert!(ComplexDocument::parse(not_face).unwrap().load().unwrap_err().to_string().contains("filtration"));
        let bad = ComplexDocument::parse("{\"name\":\"c\",\n\"n\":\"two\"}").unwrap_err().to_string();
        assert!(bad.contains("line 2"), "{bad}");
        let short = r#"{"name":"c","n":2,"facets":[[0,1]],"perversities":[{"name":"p","kind":"codim","values":[0]}]}"#;
        assert!(ComplexDocument::parse(short).unwrap().load().unwrap_err().to_string().contains("codimension values"));
    }

    #[test]
    fn unknown_perversity() {
        let l = ComplexDocument::from_complex("s", &corpus::sphere(), &[]).load().unwrap();
        assert!(l.perversity("zero").is_ok());
        assert!(matches!(l.perversity("nope"), Err(CliError::UnknownPerversity(_))));
    }
}
