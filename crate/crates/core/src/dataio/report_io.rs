//! Training report files.
//!
//! `csv` writes the per-epoch trace with header `epoch,mse,e_sum,grad_norm`.
//! `json` writes the whole report. Floats use shortest round-trip decimal
//! forms in both, so reading a file back yields identical values.

use std::io::{Read, Write};
use std::path::Path;

use crate::learn::{EpochRecord, TrainingReport};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

pub const EPOCH_CSV_HEADER: [&str; 4] = ["epoch", "mse", "e_sum", "grad_norm"];

pub fn write_epoch_csv<W: Write>(records: &[EpochRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(EPOCH_CSV_HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io("<csv writer>", e))?;
    Ok(())
}

pub fn read_epoch_csv<R: Read>(input: R) -> Result<Vec<EpochRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != EPOCH_CSV_HEADER {
        return Err(Error::parse("line 1", format!("unexpected header {header:?}")));
    }
    r.deserialize().map(|rec| rec.map_err(Error::from)).collect()
}

pub fn write_report(report: &TrainingReport, path: &Path, format: ReportFormat) -> Result<()> {
    let mut buf = Vec::new();
    match format {
        ReportFormat::Csv => write_epoch_csv(&report.epochs, &mut buf)?,
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut buf, report)?;
            buf.push(b'\n');
        }
    }
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

/// Reads a report written as `json`, or rebuilds one from a `csv` trace on
/// top of `template` (which supplies topology, hyperparameters and seed).
pub fn read_report(path: &Path, format: ReportFormat, template: Option<&TrainingReport>) -> Result<TrainingReport> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    match format {
        ReportFormat::Json => Ok(serde_json::from_reader(std::io::BufReader::new(file))?),
        ReportFormat::Csv => {
            let template =
                template.ok_or_else(|| Error::Config("rebuilding a report from csv needs a template".into()))?;
            let mut report = TrainingReport::new(template.topology.clone(), template.hyperparams);
            report.seed = template.seed;
            report.init = template.init;
            for rec in read_epoch_csv(file)? {
                report.push(rec);
            }
            Ok(report)
        }
    }
}
