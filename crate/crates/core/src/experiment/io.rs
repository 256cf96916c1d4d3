use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ExperimentReport;
use crate::error::{Error, Result};

/// One CSV line: `trial,seed,n,param,property,value,micros`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub trial: u64,
    pub seed: u64,
    pub n: usize,
    pub param: f64,
    pub property: String,
    pub value: String,
    pub micros: u64,
}

pub fn record_rows(report: &ExperimentReport) -> Vec<CsvRow> {
    let property = report.config.property.to_string();
    report
        .records
        .iter()
        .map(|r| CsvRow {
            trial: r.trial,
            seed: r.seed,
            n: r.n,
            param: r.param,
            property: property.clone(),
            value: r.value.to_string(),
            micros: r.micros,
        })
        .collect()
}

pub fn write_records_csv<W: Write>(report: &ExperimentReport, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in record_rows(report) {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Hex SHA-256 of the report's JSON with an empty checksum field.
pub fn report_checksum(report: &ExperimentReport) -> Result<String> {
    let body = ExperimentReport {
        checksum: String::new(),
        ..report.clone()
    };
    let bytes = serde_json::to_vec(&body)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SavedPaths {
    pub report: PathBuf,
    pub records: PathBuf,
}

/// Writes `report.json` and `records.csv` into `dir`, creating it if needed.
pub fn save_report(report: &ExperimentReport, dir: &Path) -> Result<SavedPaths> {
    fs::create_dir_all(dir)?;
    let paths = SavedPaths {
        report: dir.join("report.json"),
        records: dir.join("records.csv"),
    };
    let mut stamped = report.clone();
    stamped.checksum = report_checksum(report)?;
    fs::write(&paths.report, serde_json::to_string_pretty(&stamped)?)?;
    write_records_csv(report, fs::File::create(&paths.records)?)?;
    Ok(paths)
}

/// Reads a report and verifies its checksum.
pub fn load_report(path: &Path) -> Result<ExperimentReport> {
    let report: ExperimentReport = serde_json::from_str(&fs::read_to_string(path)?)?;
    let computed = report_checksum(&report)?;
    if computed != report.checksum {
        return Err(Error::ChecksumMismatch {
            stored: report.checksum,
            computed,
        });
    }
    Ok(report)
}
