//! CSV writers. Floats are written with 17 significant digits.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

use super::cost::CostReport;
use super::norms::{ErrorReport, SpectrumReport};

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |e| match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => Error::Parse {
            path: path.to_path_buf(),
            message: format!("{other:?}"),
        },
    }
}

fn write_rows(
    path: &Path,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file);
    w.write_record(header).map_err(csv_err(path))?;
    for row in rows {
        w.write_record(&row).map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

/// `dt,scheme,var,linf,l2,wallclock_s`, one row per report and variable.
pub fn write_error_csv(reports: &[ErrorReport], path: &Path) -> Result<()> {
    let rows = reports.iter().flat_map(|r| {
        r.vars.iter().map(move |v| {
            vec![
                fmt(r.dt),
                r.scheme.clone(),
                v.var.clone(),
                fmt(v.linf),
                fmt(v.l2),
                fmt(r.wallclock_s),
            ]
        })
    });
    write_rows(
        path,
        &["dt", "scheme", "var", "linf", "l2", "wallclock_s"],
        rows,
    )
}

/// `n0,max_abs`, one row per total wavenumber.
pub fn write_spectrum_csv(report: &SpectrumReport, path: &Path) -> Result<()> {
    let rows = report
        .values
        .iter()
        .enumerate()
        .map(|(n0, v)| vec![n0.to_string(), fmt(*v)]);
    write_rows(path, &["n0", "max_abs"], rows)
}

/// `field,value`, one row per cost field.
pub fn write_cost_csv(report: &CostReport, path: &Path) -> Result<()> {
    let rows = report
        .fields()
        .into_iter()
        .map(|(k, v)| vec![k.to_string(), v]);
    write_rows(path, &["field", "value"], rows)
}

pub fn parse_cost_csv(text: &str, path: &Path) -> Result<CostReport> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().map_err(csv_err(path))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["field", "value"] {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            message: "expected header 'field,value'".into(),
        });
    }
    let records = r
        .records()
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(csv_err(path))?;
    CostReport::from_fields(
        records
            .iter()
            .map(|rec| (rec.get(0).unwrap_or(""), rec.get(1).unwrap_or(""))),
    )
    .map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn read_cost_csv(path: &Path) -> Result<CostReport> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    parse_cost_csv(&text, path)
}

/// `key = value` lines recording how a run was configured. The format is
/// the one `--config` reads, so a metadata file reproduces its run.
pub fn write_metadata(path: &Path, entries: &[(&str, String)]) -> Result<()> {
    let mut f = File::create(path).map_err(io_err(path))?;
    for (k, v) in entries {
        writeln!(f, "{k} = {v}").map_err(io_err(path))?;
    }
    Ok(())
}
