//! Deterministic text formats: circle catalogs, count tables, and shard
//! checkpoints.
//!
//! All three formats are plain line-oriented text. Writers sort before
//! emitting, so identical content produces byte-identical files no matter
//! how it was computed; readers are strict and re-derive every checkable
//! fact (circle validity, standard form, removable counts, totals).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::canonical::is_standard;
use crate::circle::{validate_circle, CircleLabeling};
use crate::enumeration::{ClassifiedCounts, ShardSpec};
use crate::removable::removable_count_weight;
use crate::text::{format_symbol_list, parse_symbol_list};

/// First line of every catalog file.
pub const CATALOG_HEADER: &str = "# skolem-circles v1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },
}

/// One catalog entry: a standard-form circle and its removable-edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogRecord {
    pub removable: u32,
    pub circle: CircleLabeling,
}

/// The complete set of standard-form circles of one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    order: usize,
    records: Vec<CatalogRecord>,
}

impl Catalog {
    /// Sorts the records by their symbol lists, which is the order the
    /// file format requires.
    pub fn new(order: usize, mut records: Vec<CatalogRecord>) -> Self {
        records.sort_by(|a, b| a.circle.symbols().cmp(b.circle.symbols()));
        debug_assert!(
            records.windows(2).all(|w| w[0].circle != w[1].circle),
            "duplicate circle in catalog"
        );
        debug_assert!(records.iter().all(|r| {
            r.circle.order() == order
                && validate_circle(&r.circle).valid()
                && is_standard(&r.circle)
                && removable_count_weight(&r.circle) == r.removable as usize
        }));
        Catalog { order, records }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[CatalogRecord] {
        &self.records
    }

    pub fn circles(&self) -> impl Iterator<Item = &CircleLabeling> {
        self.records.iter().map(|r| &r.circle)
    }

    /// Aggregates the records into per-`j` counts.
    pub fn classified(&self) -> ClassifiedCounts {
        let mut counts = ClassifiedCounts::new(self.order);
        for record in &self.records {
            counts.add(record.removable, 1);
        }
        counts
    }

    /// Renders the catalog file: the format header, the order, then one
    /// `<j>\t<symbols>` line per circle, sorted by symbols.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(CATALOG_HEADER);
        out.push('\n');
        out.push_str(&format!("# m={}\n", self.order));
        for record in &self.records {
            out.push_str(&format!(
                "{}\t{}\n",
                record.removable,
                format_symbol_list(record.circle.symbols())
            ));
        }
        out
    }

    /// Parses and fully re-validates a catalog file: every record must be
    /// a valid standard-form circle of the declared order with the claimed
    /// removable count, and the records must be strictly ascending.
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let format = |line: usize, message: String| CatalogError::Format { line, message };
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| format(1, "empty file".into()))?;
        if header != CATALOG_HEADER {
            return Err(format(1, format!("expected header {CATALOG_HEADER:?}")));
        }
        let (_, order_line) = lines
            .next()
            .ok_or_else(|| format(2, "missing order line `# m=<m>`".into()))?;
        let order: usize = order_line
            .strip_prefix("# m=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format(2, "malformed order line, expected `# m=<m>`".into()))?;
        let mut records = Vec::new();
        for (idx, raw) in lines {
            let line = idx + 1;
            let (j_text, symbols_text) = raw
                .split_once('\t')
                .ok_or_else(|| format(line, "expected `<j>\\t<symbols>`".into()))?;
            let removable: u32 = j_text
                .parse()
                .map_err(|_| format(line, format!("bad removable count {j_text:?}")))?;
            let symbols =
                parse_symbol_list(symbols_text).map_err(|e| format(line, e.to_string()))?;
            if symbols.len() != 2 * order {
                return Err(format(
                    line,
                    format!("expected {} symbols, found {}", 2 * order, symbols.len()),
                ));
            }
            let circle = CircleLabeling::new(symbols).map_err(|e| format(line, e.to_string()))?;
            let validation = validate_circle(&circle);
            if !validation.valid() {
                return Err(CatalogError::Validation {
                    line,
                    message: format!("not a valid circle: {validation}"),
                });
            }
            if !is_standard(&circle) {
                return Err(CatalogError::Validation {
                    line,
                    message: "circle is not in standard form".into(),
                });
            }
            let actual = removable_count_weight(&circle);
            if actual != removable as usize {
                return Err(CatalogError::Validation {
                    line,
                    message: format!("removable count is {actual}, file claims {removable}"),
                });
            }
            if let Some(last) = records.last() {
                let last: &CatalogRecord = last;
                if last.circle.symbols() >= circle.symbols() {
                    return Err(CatalogError::Format {
                        line,
                        message: "records are not strictly ascending".into(),
                    });
                }
            }
            records.push(CatalogRecord { removable, circle });
        }
        Ok(Catalog { order, records })
    }
}

/// What a counts row is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CountKey {
    /// Circles with exactly this many removable edges.
    Removable(u32),
    /// All circles of the order.
    Total,
    /// Linear sequences of the order, counted independently.
    Sequences,
}

impl fmt::Display for CountKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountKey::Removable(j) => write!(f, "j={j}"),
            CountKey::Total => f.write_str("total"),
            CountKey::Sequences => f.write_str("sequences"),
        }
    }
}

/// One `m,<key>,<count>[,scale=full]` row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountsRow {
    pub order: u32,
    pub key: CountKey,
    pub count: u64,
    /// Marks counts obtained from a full-scale run rather than the desk-
    /// scale enumeration this crate performs on demand.
    pub full_scale: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountsError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("duplicate row for m={order}, {key}")]
    Duplicate { order: u32, key: CountKey },
}

/// A set of count rows covering any number of orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountsTable {
    rows: Vec<CountsRow>,
}

impl CountsTable {
    /// Sorts rows by `(order, key)` and rejects duplicates.
    pub fn new(mut rows: Vec<CountsRow>) -> Result<Self, CountsError> {
        rows.sort_by_key(|r| (r.order, r.key));
        for w in rows.windows(2) {
            if w[0].order == w[1].order && w[0].key == w[1].key {
                return Err(CountsError::Duplicate {
                    order: w[1].order,
                    key: w[1].key,
                });
            }
        }
        Ok(CountsTable { rows })
    }

    /// The rows a classification run produces: one per observed `j`, plus
    /// the total.
    pub fn from_classified(counts: &ClassifiedCounts) -> Self {
        let order = counts.order() as u32;
        let mut rows: Vec<CountsRow> = counts
            .by_removable()
            .iter()
            .map(|(&j, &n)| CountsRow {
                order,
                key: CountKey::Removable(j),
                count: n,
                full_scale: false,
            })
            .collect();
        rows.push(CountsRow {
            order,
            key: CountKey::Total,
            count: counts.total(),
            full_scale: false,
        });
        CountsTable::new(rows).expect("classified counts have unique keys")
    }

    pub fn rows(&self) -> &[CountsRow] {
        &self.rows
    }

    pub fn lookup(&self, order: u32, key: CountKey) -> Option<u64> {
        self.rows
            .iter()
            .find(|r| r.order == order && r.key == key)
            .map(|r| r.count)
    }

    pub fn orders(&self) -> BTreeSet<u32> {
        self.rows.iter().map(|r| r.order).collect()
    }

    /// The `j` values recorded for one order.
    pub fn removable_keys(&self, order: u32) -> BTreeSet<u32> {
        self.rows
            .iter()
            .filter(|r| r.order == order)
            .filter_map(|r| match r.key {
                CountKey::Removable(j) => Some(j),
                _ => None,
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let key = match row.key {
                CountKey::Removable(j) => j.to_string(),
                CountKey::Total => "total".to_string(),
                CountKey::Sequences => "sequences".to_string(),
            };
            out.push_str(&format!("{},{},{}", row.order, key, row.count));
            if row.full_scale {
                out.push_str(",scale=full");
            }
            out.push('\n');
        }
        out
    }

    /// Parses `m,<j|total|sequences>,<count>[,scale=full]` rows. Blank
    /// lines and `#` comments are allowed and ignored.
    pub fn parse(text: &str) -> Result<Self, CountsError> {
        let format = |line: usize, message: String| CountsError::Format { line, message };
        let mut rows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split(',').collect();
            if fields.len() != 3 && fields.len() != 4 {
                return Err(format(
                    line,
                    "expected `m,<key>,<count>[,scale=full]`".into(),
                ));
            }
            let order: u32 = fields[0]
                .parse()
                .map_err(|_| format(line, format!("bad order {:?}", fields[0])))?;
            let key = match fields[1] {
                "total" => CountKey::Total,
                "sequences" => CountKey::Sequences,
                j => CountKey::Removable(
                    j.parse()
                        .map_err(|_| format(line, format!("bad key {j:?}")))?,
                ),
            };
            let count: u64 = fields[2]
                .parse()
                .map_err(|_| format(line, format!("bad count {:?}", fields[2])))?;
            let full_scale = match fields.get(3) {
                None => false,
                Some(&"scale=full") => true,
                Some(other) => {
                    return Err(format(line, format!("unknown annotation {other:?}")));
                }
            };
            rows.push(CountsRow {
                order,
                key,
                count,
                full_scale,
            });
        }
        CountsTable::new(rows)
    }
}

/// One disagreement between two count tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountsMismatch {
    pub order: u32,
    pub key: CountKey,
    pub left: u64,
    pub right: u64,
}

/// Compares two tables on the orders they share.
///
/// Removable keys are unioned per shared order, with a missing row read as
/// zero; `total` and `sequences` are compared only when both sides record
/// them. An empty result means agreement.
pub fn diff_counts(left: &CountsTable, right: &CountsTable) -> Vec<CountsMismatch> {
    let mut out = Vec::new();
    let shared: Vec<u32> = left
        .orders()
        .intersection(&right.orders())
        .copied()
        .collect();
    for order in shared {
        let mut keys: Vec<CountKey> = left
            .removable_keys(order)
            .union(&right.removable_keys(order))
            .map(|&j| CountKey::Removable(j))
            .collect();
        keys.sort();
        keys.push(CountKey::Total);
        keys.push(CountKey::Sequences);
        for key in keys {
            let (l, r) = match key {
                CountKey::Removable(_) => (
                    left.lookup(order, key).unwrap_or(0),
                    right.lookup(order, key).unwrap_or(0),
                ),
                _ => match (left.lookup(order, key), right.lookup(order, key)) {
                    (Some(l), Some(r)) => (l, r),
                    _ => continue,
                },
            };
            if l != r {
                out.push(CountsMismatch {
                    order,
                    key,
                    left: l,
                    right: r,
                });
            }
        }
    }
    out
}

/// The bundled reference counts for the orders whose censuses are known,
/// including the two full-scale orders (16 and 17) that are out of reach
/// of the on-demand enumerator at desk scale.
pub fn reference_counts() -> &'static CountsTable {
    static TABLE: OnceLock<CountsTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        CountsTable::parse(include_str!("../data/reference_counts.csv"))
            .expect("bundled reference counts parse")
    })
}

fn format_prefix(prefix: &[(u32, usize)]) -> String {
    if prefix.is_empty() {
        return "-".to_string();
    }
    prefix
        .iter()
        .map(|(symbol, anchor)| format!("{symbol}@{anchor}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_prefix(text: &str) -> Option<Vec<(u32, usize)>> {
    if text == "-" {
        return Some(Vec::new());
    }
    text.split(',')
        .map(|part| {
            let (symbol, anchor) = part.split_once('@')?;
            Some((symbol.parse().ok()?, anchor.parse().ok()?))
        })
        .collect()
}

/// Renders a per-shard checkpoint: a header identifying the shard, then
/// the shard's counts as CSV rows.
pub fn shard_checkpoint_to_text(spec: &ShardSpec, counts: &ClassifiedCounts) -> String {
    assert_eq!(spec.order, counts.order(), "checkpoint order mismatch");
    let mut out = format!(
        "# skolem-shard m={} shard={}/{} prefix={}\n",
        spec.order,
        spec.shard,
        spec.of,
        format_prefix(&spec.prefix)
    );
    out.push_str(&CountsTable::from_classified(counts).to_text());
    out
}

/// Parses a checkpoint and re-derives its consistency: the body rows must
/// all belong to the header's order and sum to the recorded total.
pub fn parse_shard_checkpoint(text: &str) -> Result<(ShardSpec, ClassifiedCounts), CatalogError> {
    let format = |line: usize, message: String| CatalogError::Format { line, message };
    let mut lines = text.splitn(2, '\n');
    let header = lines.next().unwrap_or_default();
    let body = lines.next().unwrap_or_default();
    let fields: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || {
        format(
            1,
            "expected `# skolem-shard m=<m> shard=<i>/<n> prefix=<p>`".into(),
        )
    };
    if fields.len() != 5 || fields[0] != "#" || fields[1] != "skolem-shard" {
        return Err(bad_header());
    }
    let order: usize = fields[2]
        .strip_prefix("m=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(bad_header)?;
    let (shard, of) = fields[3]
        .strip_prefix("shard=")
        .and_then(|s| s.split_once('/'))
        .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
        .ok_or_else(bad_header)?;
    let prefix = fields[4]
        .strip_prefix("prefix=")
        .and_then(parse_prefix)
        .ok_or_else(bad_header)?;
    let table = CountsTable::parse(body).map_err(|e| match e {
        CountsError::Format { line, message } => format(line + 1, message),
        CountsError::Duplicate { order, key } => {
            format(1, format!("duplicate row for m={order}, {key}"))
        }
    })?;
    let mut counts = ClassifiedCounts::new(order);
    let mut recorded_total = None;
    for row in table.rows() {
        if row.order as usize != order {
            return Err(format(
                1,
                format!(
                    "body row for m={} inside a checkpoint for m={order}",
                    row.order
                ),
            ));
        }
        match row.key {
            CountKey::Removable(j) => counts.add(j, row.count),
            CountKey::Total => recorded_total = Some(row.count),
            CountKey::Sequences => {
                return Err(format(
                    1,
                    "sequence rows do not belong in checkpoints".into(),
                ))
            }
        }
    }
    match recorded_total {
        Some(total) if total == counts.total() => {}
        Some(total) => {
            return Err(CatalogError::Validation {
                line: 1,
                message: format!(
                    "checkpoint total {} does not match the sum of its rows {}",
                    total,
                    counts.total()
                ),
            });
        }
        None => return Err(format(1, "checkpoint is missing its total row".into())),
    }
    Ok((
        ShardSpec {
            order,
            prefix,
            shard,
            of,
        },
        counts,
    ))
}
