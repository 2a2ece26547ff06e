//! CSV and JSON writers for sweep tables and validation reports.

use std::io::Write;

use serde::Serialize;

use crate::Result;

/// Header row followed by one record per item; `None` becomes an empty cell.
pub fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, rows: &[T]) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)?;
    Ok(())
}

pub fn to_csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SweepRow;

    #[test]
    fn csv_header_and_empty_cells() {
        let rows = [SweepRow {
            param: 5.0,
            scheme: "static_0.5".into(),
            analytic: None,
            mc: 0.25,
            mc_stderr: 0.01,
            capacity: Some(0.5),
            rel_err: None,
        }];
        let s = to_csv_string(&rows).unwrap();
        assert_eq!(
            s,
            "param,scheme,analytic,mc,mc_stderr,capacity,rel_err\n5.0,static_0.5,,0.25,0.01,0.5,\n"
        );
    }

    #[test]
    fn json_uses_null() {
        let rows = [SweepRow {
            param: 1.0,
            scheme: "improved".into(),
            analytic: Some(0.1),
            mc: 0.1,
            mc_stderr: 0.0,
            capacity: None,
            rel_err: None,
        }];
        let mut buf = Vec::new();
        write_json(&mut buf, &rows).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(v[0]["capacity"].is_null());
    }
}
