//! CSV ingestion of constituency returns and corpus writing.
//!
//! Input schema: a header row with the six required columns
//! `region, constituency_id, registered_voters, ballots_cast,
//! votes_against_all, invalid_ballots`; every additional column is treated
//! as a per-candidate vote count keyed by the column name. UTF-8,
//! comma-separated.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pipeline::ConstituencyRecord;

pub const REQUIRED_COLUMNS: [&str; 6] = [
    "region",
    "constituency_id",
    "registered_voters",
    "ballots_cast",
    "votes_against_all",
    "invalid_ballots",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    /// Row accepted; something worth knowing about it.
    Warning,
    /// Row dropped (only under skip-bad mode).
    SkippedRow,
}

/// A per-row note: warnings on accepted rows, or the reason a row was
/// skipped when skipping is enabled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowDiagnostic {
    pub line: u64,
    pub severity: Severity,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IngestOutcome {
    pub records: Vec<ConstituencyRecord>,
    pub diagnostics: Vec<RowDiagnostic>,
}

/// Read a returns CSV. Malformed rows are fatal unless `skip_bad` is set,
/// in which case they are skipped and reported with their line numbers.
/// Rows with turnout above 100% are accepted and flagged, never rejected.
pub fn ingest(path: &Path, skip_bad: bool) -> Result<IngestOutcome> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;

    let headers = reader
        .headers()
        .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?
        .clone();
    let mut column_index = BTreeMap::new();
    for (i, name) in headers.iter().enumerate() {
        column_index.insert(name.to_string(), i);
    }
    for required in REQUIRED_COLUMNS {
        if !column_index.contains_key(required) {
            return Err(Error::Data(format!(
                "{}: missing required column '{required}'",
                path.display()
            )));
        }
    }
    let candidate_columns: Vec<(String, usize)> = headers
        .iter()
        .enumerate()
        .filter(|(_, name)| !REQUIRED_COLUMNS.contains(name))
        .map(|(i, name)| (name.to_string(), i))
        .collect();

    let mut records = Vec::new();
    let mut diagnostics = Vec::new();

    for row in reader.records() {
        let (line, parsed) = match row {
            Ok(record) => {
                let line = record.position().map_or(0, |p| p.line());
                (line, parse_row(&record, &column_index, &candidate_columns))
            }
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                (line, Err(e.to_string()))
            }
        };
        match parsed {
            Ok((record, warnings)) => {
                for message in warnings {
                    diagnostics.push(RowDiagnostic {
                        line,
                        severity: Severity::Warning,
                        message,
                    });
                }
                records.push(record);
            }
            Err(message) if skip_bad => diagnostics.push(RowDiagnostic {
                line,
                severity: Severity::SkippedRow,
                message,
            }),
            Err(message) => {
                return Err(Error::Data(format!(
                    "{}: line {line}: {message} (use skip-bad mode to drop such rows)",
                    path.display()
                )))
            }
        }
    }

    Ok(IngestOutcome {
        records,
        diagnostics,
    })
}

type RowResult = std::result::Result<(ConstituencyRecord, Vec<String>), String>;

fn parse_row(
    row: &csv::StringRecord,
    column_index: &BTreeMap<String, usize>,
    candidate_columns: &[(String, usize)],
) -> RowResult {
    let field = |name: &str| -> std::result::Result<&str, String> {
        row.get(column_index[name])
            .ok_or_else(|| format!("column '{name}': missing field"))
    };
    let mut warnings = Vec::new();
    let mut count = |name: &str| -> std::result::Result<u64, String> {
        let raw = field(name)?;
        let (value, normalized) = parse_count(raw, name)?;
        if normalized {
            warnings.push(format!(
                "column '{name}': decimal-comma numeral '{raw}' normalized to {value}"
            ));
        }
        Ok(value)
    };

    let registered_voters = count("registered_voters")?;
    let ballots_cast = count("ballots_cast")?;
    let votes_against_all = count("votes_against_all")?;
    let invalid_ballots = count("invalid_ballots")?;

    let mut candidate_votes = BTreeMap::new();
    for (name, idx) in candidate_columns {
        let raw = row.get(*idx).unwrap_or("");
        if raw.trim().is_empty() {
            continue;
        }
        let (value, normalized) = parse_count(raw, name)?;
        if normalized {
            warnings.push(format!(
                "column '{name}': decimal-comma numeral '{raw}' normalized to {value}"
            ));
        }
        if value > 0 {
            candidate_votes.insert(name.clone(), value);
        }
    }

    let record = ConstituencyRecord {
        region: field("region")?.to_string(),
        constituency_id: field("constituency_id")?.to_string(),
        registered_voters,
        ballots_cast,
        votes_against_all,
        invalid_ballots,
        candidate_votes,
    };
    record.validate().map_err(|e| e.to_string())?;
    if record.turnout_over_100() {
        warnings.push(format!(
            "{}: turnout {:.3}% exceeds 100%",
            record.label(),
            record.turnout_pct()
        ));
    }
    Ok((record, warnings))
}

/// Parse a non-negative integer count, tolerating locale decimal commas
/// when the value is integral (e.g. "1234,0").
fn parse_count(raw: &str, column: &str) -> std::result::Result<(u64, bool), String> {
    let s = raw.trim();
    if s.is_empty() {
        return Err(format!(
            "column '{column}': empty value, expected a non-negative integer"
        ));
    }
    if let Ok(v) = s.parse::<u64>() {
        return Ok((v, false));
    }
    let normalized = s.replace(',', ".");
    if let Ok(f) = normalized.parse::<f64>() {
        if f.is_finite() && f >= 0.0 && f.fract() == 0.0 && f < u64::MAX as f64 {
            return Ok((f as u64, true));
        }
    }
    Err(format!(
        "column '{column}': expected a non-negative integer, got '{raw}'"
    ))
}

/// Write records in the standard input schema. Candidate columns are the
/// sorted union of all candidate labels; absent candidates are written as 0.
pub fn write_corpus_csv<W: Write>(records: &[ConstituencyRecord], out: W) -> Result<()> {
    let candidates: BTreeSet<&str> = records
        .iter()
        .flat_map(|r| r.candidate_votes.keys())
        .map(|s| s.as_str())
        .collect();
    let mut writer = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = REQUIRED_COLUMNS.to_vec();
    header.extend(candidates.iter());
    writer.write_record(&header)?;
    for r in records {
        let mut row = vec![
            r.region.clone(),
            r.constituency_id.clone(),
            r.registered_voters.to_string(),
            r.ballots_cast.to_string(),
            r.votes_against_all.to_string(),
            r.invalid_ballots.to_string(),
        ];
        for candidate in &candidates {
            row.push(
                r.candidate_votes
                    .get(*candidate)
                    .copied()
                    .unwrap_or(0)
                    .to_string(),
            );
        }
        writer.write_record(&row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn corpus_to_csv_string(records: &[ConstituencyRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_corpus_csv(records, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Data(format!("corpus is not UTF-8: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(name: &str, content: &str) -> std::path::PathBuf {
        let path =
            std::env::temp_dir().join(format!("voteratio_test_{name}_{}.csv", std::process::id()));
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        path
    }

    const CLEAN: &str = "\
region,constituency_id,registered_voters,ballots_cast,votes_against_all,invalid_ballots
north,n1,100000,75000,1500,400
north,n2,90000,63000,1200,300
south,s1,80000,60000,1600,200
";

    #[test]
    fn clean_fixture_ingests_without_diagnostics() {
        let path = write_temp("clean", CLEAN);
        let outcome = ingest(&path, false).unwrap();
        assert_eq!(outcome.records.len(), 3);
        assert!(outcome.diagnostics.is_empty());
        assert_eq!(outcome.records[0].region, "north");
        assert_eq!(outcome.records[2].ballots_cast, 60000);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn missing_column_is_schema_error() {
        let path = write_temp(
            "missing",
            "region,constituency_id,registered_voters,ballots_cast,votes_against_all\na,b,10,5,1\n",
        );
        let err = ingest(&path, false).unwrap_err();
        assert!(err.to_string().contains("invalid_ballots"), "{err}");
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn turnout_over_100_is_accepted_with_warning() {
        let data = "\
region,constituency_id,registered_voters,ballots_cast,votes_against_all,invalid_ballots
east,e1,1000,1007,10,2
";
        let path = write_temp("over", data);
        let outcome = ingest(&path, false).unwrap();
        assert_eq!(outcome.records.len(), 1);
        assert_eq!(outcome.diagnostics.len(), 1);
        assert_eq!(outcome.diagnostics[0].severity, Severity::Warning);
        assert!(
            outcome.diagnostics[0].message.contains("100"),
            "{:?}",
            outcome.diagnostics
        );
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn invariant_violation_is_row_error() {
        let data = "\
region,constituency_id,registered_voters,ballots_cast,votes_against_all,invalid_ballots
east,e1,1000,500,600,0
";
        let path = write_temp("invariant", data);
        let err = ingest(&path, false).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");

        let outcome = ingest(&path, true).unwrap();
        assert!(outcome.records.is_empty());
        assert_eq!(outcome.diagnostics.len(), 1);
        assert_eq!(outcome.diagnostics[0].severity, Severity::SkippedRow);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn non_integer_count_is_row_error() {
        let data = "\
region,constituency_id,registered_voters,ballots_cast,votes_against_all,invalid_ballots
east,e1,1000,abc,10,2
east,e2,1000,700,10,2
";
        let path = write_temp("badint", data);
        assert!(ingest(&path, false).is_err());
        let outcome = ingest(&path, true).unwrap();
        assert_eq!(outcome.records.len(), 1);
        assert_eq!(outcome.records[0].constituency_id, "e2");
        assert_eq!(outcome.diagnostics.len(), 1);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn decimal_comma_count_is_normalized() {
        let data = "\
region,constituency_id,registered_voters,ballots_cast,votes_against_all,invalid_ballots
east,e1,1000,\"700,0\",10,2
";
        let path = write_temp("comma", data);
        let outcome = ingest(&path, false).unwrap();
        assert_eq!(outcome.records[0].ballots_cast, 700);
        assert_eq!(outcome.diagnostics.len(), 1);
        assert!(
            outcome.diagnostics[0].message.contains("normalized"),
            "{:?}",
            outcome.diagnostics
        );
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn candidate_columns_are_collected() {
        let data = "\
region,constituency_id,registered_voters,ballots_cast,votes_against_all,invalid_ballots,alpha,beta
east,e1,1000,700,10,2,400,0
";
        let path = write_temp("cand", data);
        let outcome = ingest(&path, false).unwrap();
        let record = &outcome.records[0];
        assert_eq!(record.candidate_votes.len(), 1);
        assert_eq!(record.candidate_votes["alpha"], 400);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn corpus_round_trips() {
        let path = write_temp("roundtrip_src", CLEAN);
        let outcome = ingest(&path, false).unwrap();
        let text = corpus_to_csv_string(&outcome.records).unwrap();
        let path2 = write_temp("roundtrip_dst", &text);
        let again = ingest(&path2, false).unwrap();
        assert_eq!(outcome.records, again.records);
        std::fs::remove_file(path).ok();
        std::fs::remove_file(path2).ok();
    }

    #[test]
    fn missing_file_is_data_error() {
        let err = ingest(Path::new("/nonexistent/returns.csv"), false).unwrap_err();
        assert!(matches!(err, Error::Data(_)), "{err}");
    }
}
