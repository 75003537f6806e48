//! Reading and writing datasets.
//!
//! JSON:
//! `{"chain": n | {"labels": [..]}, "range": [c, d], "functions": [[..], ..]}`
//! with optional `"metric": {"dist": [[..]]}` or `"poset": {"size": n,
//! "relation": [[i, j], ..]}` (functions then list target indices) and an
//! optional `"topology": {"opens": [[..]]}` or `{"subbase": [[..]]}`.
//!
//! CSV: a header line `# range c d chain n`, then one function per row.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use ordnung::bv::{FunctionFamily, MetricChainFunction};
use ordnung::order::{Chain, FiniteMetricSpace, FinitePoset, FiniteTopology, PointSet};
use ordnung::selection::PosetValuedMap;
use serde::{Deserialize, Serialize};

use crate::decimal::{decs, parse, Dec};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IngestError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

type Result<T> = std::result::Result<T, IngestError>;

fn schema(message: impl Into<String>) -> IngestError {
    IngestError::Schema(message.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// `csv` for a `.csv` extension, JSON otherwise.
    pub fn infer(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Dataset {
    Real(FunctionFamily<f64>),
    Metric { space: Arc<FiniteMetricSpace<f64>>, members: Vec<MetricChainFunction<f64>> },
    Poset { poset: Arc<FinitePoset>, members: Vec<PosetValuedMap> },
}

impl Dataset {
    pub fn chain(&self) -> Arc<Chain> {
        match self {
            Dataset::Real(f) => f.chain().clone(),
            Dataset::Metric { members, .. } => members[0].chain().clone(),
            Dataset::Poset { members, .. } => members[0].chain().clone(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Dataset::Real(_) => "real",
            Dataset::Metric { .. } => "metric",
            Dataset::Poset { .. } => "poset",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Input {
    pub dataset: Dataset,
    pub topology: Option<FiniteTopology>,
}

impl Input {
    pub fn family(family: FunctionFamily<f64>) -> Self {
        Input { dataset: Dataset::Real(family), topology: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawChain {
    Size(usize),
    Labels { labels: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Index(u64),
    Real(Dec),
}

impl Entry {
    fn real(&self) -> f64 {
        match self {
            Entry::Index(i) => *i as f64,
            Entry::Real(d) => d.0,
        }
    }

    fn index(&self) -> Option<usize> {
        match *self {
            Entry::Index(i) => usize::try_from(i).ok(),
            Entry::Real(Dec(x)) if x >= 0.0 && x.fract() == 0.0 && x < 1e15 => Some(x as usize),
            Entry::Real(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetric {
    dist: Vec<Vec<Dec>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoset {
    size: usize,
    relation: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTopology {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    opens: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    subbase: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    chain: RawChain,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    range: Option<[Dec; 2]>,
    functions: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metric: Option<RawMetric>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    poset: Option<RawPoset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    topology: Option<RawTopology>,
}

fn core_schema(context: &str) -> impl Fn(ordnung::Error) -> IngestError + '_ {
    move |e| schema(format!("{context}: {e}"))
}

fn indices(row: &[Entry], member: usize) -> Result<Vec<usize>> {
    row.iter()
        .enumerate()
        .map(|(p, e)| {
            e.index().ok_or_else(|| schema(format!("function {member}, point {p}: expected a target index")))
        })
        .collect()
}

fn point_set(points: &[usize], n: usize) -> Result<PointSet> {
    if let Some(&p) = points.iter().find(|&&p| p >= n) {
        return Err(schema(format!("topology mentions point {p} outside a chain of {n}")));
    }
    Ok(PointSet::from_points(points.iter().copied()))
}

impl RawInput {
    fn build(self) -> Result<Input> {
        let chain = Arc::new(match self.chain {
            RawChain::Size(n) => Chain::new(n),
            RawChain::Labels { labels } => Chain::with_labels(labels),
        }
        .map_err(core_schema("chain"))?);
        let n = chain.size();
        let dataset = match (self.metric, self.poset) {
            (Some(_), Some(_)) => return Err(schema("\"metric\" and \"poset\" are exclusive")),
            (Some(m), None) => {
                let dist = m.dist.into_iter().map(|r| r.into_iter().map(|d| d.0).collect()).collect();
                let space = Arc::new(FiniteMetricSpace::new(dist).map_err(core_schema("metric"))?);
                if self.functions.is_empty() {
                    return Err(schema("metric input needs at least one function"));
                }
                let members = self
                    .functions
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        MetricChainFunction::new(chain.clone(), space.clone(), indices(row, i)?)
                            .map_err(|e| schema(format!("function {i}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Dataset::Metric { space, members }
            }
            (None, Some(p)) => {
                let relation: Vec<(usize, usize)> = p.relation.iter().map(|[i, j]| (*i, *j)).collect();
                let poset = Arc::new(FinitePoset::from_covers(p.size, &relation).map_err(core_schema("poset"))?);
                if self.functions.is_empty() {
                    return Err(schema("poset input needs at least one function"));
                }
                let members = self
                    .functions
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        PosetValuedMap::new(chain.clone(), poset.clone(), indices(row, i)?)
                            .map_err(|e| schema(format!("function {i}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Dataset::Poset { poset, members }
            }
            (None, None) => {
                let [c, d] = self.range.ok_or_else(|| schema("missing \"range\""))?;
                Dataset::Real(family(chain.clone(), (c.0, d.0), self.functions.iter().map(|r| r.iter().map(Entry::real).collect()).collect())?)
            }
        };
        let topology = match self.topology {
            None => None,
            Some(RawTopology { opens: Some(opens), subbase: None }) => {
                let sets = opens.iter().map(|o| point_set(o, n)).collect::<Result<BTreeSet<_>>>()?;
                Some(FiniteTopology::new(n, sets).map_err(core_schema("topology"))?)
            }
            Some(RawTopology { opens: None, subbase: Some(sub) }) => {
                let sets = sub.iter().map(|o| point_set(o, n)).collect::<Result<Vec<_>>>()?;
                Some(FiniteTopology::generated_by(n, sets).map_err(core_schema("topology"))?)
            }
            Some(_) => return Err(schema("topology needs exactly one of \"opens\" and \"subbase\"")),
        };
        Ok(Input { dataset, topology })
    }
}

fn family(chain: Arc<Chain>, range: (f64, f64), rows: Vec<Vec<f64>>) -> Result<FunctionFamily<f64>> {
    if range.0 > range.1 {
        return Err(schema(format!("range [{}, {}] is empty", range.0, range.1)));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != chain.size() {
            return Err(schema(format!("function {i} has {} values for a chain of {}", row.len(), chain.size())));
        }
        if let Some((p, v)) = row.iter().enumerate().find(|(_, v)| **v < range.0 || **v > range.1) {
            return Err(schema(format!(
                "function {i}, point {p}: value {v} outside the declared range [{}, {}]",
                range.0, range.1
            )));
        }
    }
    FunctionFamily::new(chain, range, rows).map_err(core_schema("family"))
}

pub fn from_json(text: &str) -> Result<Input> {
    let raw: RawInput = serde_json::from_str(text).map_err(|e| {
        let (line, column) = (e.line(), e.column());
        match e.classify() {
            serde_json::error::Category::Data => schema(format!("line {line}, column {column}: {e}")),
            _ => IngestError::Parse { line, column, message: e.to_string() },
        }
    })?;
    raw.build()
}

pub fn from_csv(text: &str) -> Result<Input> {
    let mut lines = text.lines().enumerate().skip_while(|(_, l)| l.trim().is_empty());
    let (header_line, header) =
        lines.next().ok_or(IngestError::Parse { line: 1, column: 1, message: "empty input".into() })?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || IngestError::Parse {
        line: header_line + 1,
        column: 1,
        message: "expected header `# range c d chain n`".into(),
    };
    let (c, d, n) = match tokens.as_slice() {
        ["#", "range", c, d, "chain", n] => (
            parse(c).ok_or_else(bad_header)?,
            parse(d).ok_or_else(bad_header)?,
            n.parse::<usize>().map_err(|_| bad_header())?,
        ),
        _ => return Err(bad_header()),
    };
    let body: String = text.split_inclusive('\n').skip(header_line + 1).collect();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(body.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            IngestError::Parse { line: header_line + 1 + line, column: 1, message: e.to_string() }
        })?;
        let line = header_line + 1 + record.position().map_or(0, |p| p.line() as usize);
        let mut column = 1;
        let mut row = Vec::with_capacity(record.len());
        for field in record.iter() {
            let v = parse(field).ok_or_else(|| IngestError::Parse {
                line,
                column,
                message: format!("`{field}` is not a finite number"),
            })?;
            row.push(v);
            column += field.len() + 1;
        }
        rows.push(row);
    }
    let chain = Arc::new(Chain::new(n).map_err(core_schema("chain"))?);
    Ok(Input::family(family(chain, (c, d), rows)?))
}

pub fn read(path: &Path, format: Option<Format>) -> Result<(Input, Vec<u8>)> {
    let bytes = std::fs::read(path)
        .map_err(|e| IngestError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let text = std::str::from_utf8(&bytes).map_err(|e| schema(format!("input is not UTF-8: {e}")))?;
    let input = match format.unwrap_or_else(|| Format::infer(path)) {
        Format::Json => from_json(text)?,
        Format::Csv => from_csv(text)?,
    };
    Ok((input, bytes))
}

fn raw_chain(chain: &Chain) -> RawChain {
    match chain.labels() {
        Some(labels) => RawChain::Labels { labels: labels.to_vec() },
        None => RawChain::Size(chain.size()),
    }
}

fn index_rows<'a>(rows: impl Iterator<Item = &'a [usize]>) -> Vec<Vec<Entry>> {
    rows.map(|r| r.iter().map(|&i| Entry::Index(i as u64)).collect()).collect()
}

fn to_raw(input: &Input) -> RawInput {
    let topology = input.topology.as_ref().map(|t| RawTopology {
        opens: Some(t.opens().iter().map(|o| o.iter().collect()).collect()),
        subbase: None,
    });
    let chain = raw_chain(&input.dataset.chain());
    match &input.dataset {
        Dataset::Real(f) => RawInput {
            chain,
            range: Some([Dec(f.range().0), Dec(f.range().1)]),
            functions: f.rows().iter().map(|r| decs(r).into_iter().map(Entry::Real).collect()).collect(),
            metric: None,
            poset: None,
            topology,
        },
        Dataset::Metric { space, members } => RawInput {
            chain,
            range: None,
            functions: index_rows(members.iter().map(|m| m.values())),
            metric: Some(RawMetric { dist: space.rows().iter().map(|r| decs(r)).collect() }),
            poset: None,
            topology,
        },
        Dataset::Poset { poset, members } => RawInput {
            chain,
            range: None,
            functions: index_rows(members.iter().map(|m| m.values())),
            metric: None,
            poset: Some(RawPoset {
                size: poset.size(),
                relation: poset.relation().into_iter().map(|(i, j)| [i, j]).collect(),
            }),
            topology,
        },
    }
}

pub fn to_json_value(input: &Input) -> serde_json::Value {
    serde_json::to_value(to_raw(input)).expect("datasets serialize")
}

pub fn to_json(input: &Input) -> String {
    serde_json::to_string_pretty(&to_raw(input)).expect("datasets serialize") + "\n"
}

/// CSV carries only unlabelled real-valued families without a topology.
pub fn to_csv(input: &Input) -> Result<String> {
    let Dataset::Real(f) = &input.dataset else {
        return Err(schema("only real-valued families can be written as CSV"));
    };
    if f.chain().labels().is_some() || input.topology.is_some() {
        return Err(schema("chain labels and topologies need JSON"));
    }
    let mut out = format!(
        "# range {} {} chain {}\n",
        crate::decimal::format(f.range().0),
        crate::decimal::format(f.range().1),
        f.chain().size()
    );
    for row in f.rows() {
        let fields: Vec<String> = row.iter().map(|v| crate::decimal::format(*v)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn serialize(input: &Input, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(to_json(input)),
        Format::Csv => to_csv(input),
    }
}

pub fn deserialize(text: &str, format: Format) -> Result<Input> {
    match format {
        Format::Json => from_json(text),
        Format::Csv => from_csv(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_json() {
        let input = from_json(r#"{"chain":3,"range":[0,1],"functions":[[0,0.5,1]]}"#).unwrap();
        let Dataset::Real(f) = &input.dataset else { panic!() };
        assert_eq!(f.len(), 1);
        assert_eq!(f.member(0).values(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn csv_matches_json() {
        let csv = "# range 0 1 chain 3\n0,0.5,1\n0.25, 0.25 ,0.75\n";
        let json = r#"{"chain":3,"range":["0","1"],"functions":[[0,"0.5",1],[0.25,0.25,0.75]]}"#;
        assert_eq!(from_csv(csv).unwrap(), from_json(json).unwrap());
    }

    #[test]
    fn out_of_range_is_a_schema_error() {
        let err = from_json(r#"{"chain":3,"range":[0,1],"functions":[[0,1.5,1]]}"#).unwrap_err();
        assert!(matches!(err, IngestError::Schema(ref m) if m.contains("outside")), "{err}");
        let err = from_csv("# range 0 1 chain 2\n0,1.5\n").unwrap_err();
        assert!(matches!(err, IngestError::Schema(_)));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = from_json("{\"chain\":3,\n\"range\":[0,1],,}").unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 2, .. }), "{err}");
        let err = from_csv("# range 0 1 chain 2\n0,0.5\n0,x\n").unwrap_err();
        assert_eq!(err, IngestError::Parse { line: 3, column: 3, message: "`x` is not a finite number".into() });
        assert!(matches!(from_csv("range 0 1\n"), Err(IngestError::Parse { line: 1, .. })));
    }

    #[test]
    fn metric_and_poset_inputs_round_trip() {
        let metric = r#"{"chain":3,"functions":[[0,1,1],[1,1,0]],"metric":{"dist":[[0,1],[1,0]]}}"#;
        let poset = r#"{"chain":2,"functions":[[0,1]],"poset":{"size":2,"relation":[[0,1]]},
                        "topology":{"subbase":[[0]]}}"#;
        for text in [metric, poset] {
            let input = from_json(text).unwrap();
            assert_eq!(from_json(&to_json(&input)).unwrap(), input);
        }
    }

    #[test]
    fn labelled_chain_round_trips_through_json_only() {
        let input = from_json(r#"{"chain":{"labels":["a","b"]},"range":[0,1],"functions":[[0.1,0.2]]}"#).unwrap();
        assert_eq!(from_json(&to_json(&input)).unwrap(), input);
        assert!(to_csv(&input).is_err());
    }
}
