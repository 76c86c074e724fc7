//! CSV interfaces: trajectories in, matrices in and out, sweep and run
//! logs out.

use std::collections::HashMap;
use std::fmt;
use std::io::{Read, Write};

use jamteams_core::matrix::PayoffMatrix;
use jamteams_core::power::Distances;
use jamteams_core::sim::{FrameGeometry, StepRecord, SweepRow, TrajectoryFrame};

use crate::number::fmt_num;

pub const POSITION_COLUMNS: [&str; 9] = ["t", "x1a", "y1a", "x2a", "y2a", "x1b", "y1b", "x2b", "y2b"];
pub const DISTANCE_COLUMNS: [&str; 7] = ["t", "d11", "d12", "d21", "d22", "dA", "dB"];
pub const SWEEP_HEADER: [&str; 6] = ["snr_db", "Ma", "Mb", "value", "kind", "certified"];
pub const RUN_HEADER: [&str; 6] = ["t", "Ma", "Mb", "L", "pi_cum", "certified"];
/// Corner cell of a matrix CSV: row labels are Team A sizes, column labels Team B sizes.
pub const MATRIX_CORNER: &str = "Ma/Mb";

/// A malformed CSV input, with the 1-based line it was found on.
#[derive(Debug, Clone, PartialEq)]
pub struct TableError {
    pub line: u64,
    pub message: String,
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for TableError {}

fn csv_error(e: csv::Error) -> TableError {
    let line = e.position().map_or(0, |p| p.line());
    TableError { line, message: e.to_string() }
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn number(record: &csv::StringRecord, index: usize, column: &str) -> Result<f64, TableError> {
    let raw = record.get(index).unwrap_or("");
    raw.parse()
        .map_err(|_| TableError { line: line_of(record), message: format!("column {column}: {raw:?} is not a number") })
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(input)
}

/// Read a trajectory. The header names the layout: positions
/// (`t,x1a,y1a,...`) or distances (`t,d11,...,dA,dB`). When both sets of
/// columns are present the distances are used.
pub fn read_trajectory<R: Read>(input: R) -> Result<Vec<TrajectoryFrame>, TableError> {
    let mut rdr = reader(input);
    let header = rdr.headers().map_err(csv_error)?.clone();
    let index: HashMap<&str, usize> = header.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let find = |cols: &[&'static str]| cols.iter().map(|c| index.get(c).copied()).collect::<Option<Vec<usize>>>();
    let (columns, use_distances): (&[&str], bool) = if find(&DISTANCE_COLUMNS).is_some() {
        (&DISTANCE_COLUMNS, true)
    } else if find(&POSITION_COLUMNS).is_some() {
        (&POSITION_COLUMNS, false)
    } else {
        return Err(TableError {
            line: 1,
            message: format!(
                "header must contain {} or {}",
                POSITION_COLUMNS.join(","),
                DISTANCE_COLUMNS.join(",")
            ),
        });
    };
    let at = find(columns).expect("columns checked above");

    let mut frames = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let v = at
            .iter()
            .zip(columns)
            .map(|(&i, c)| number(&record, i, c))
            .collect::<Result<Vec<f64>, _>>()?;
        let geometry = if use_distances {
            FrameGeometry::Distances(Distances::new(v[1], v[2], v[3], v[4], v[5], v[6]))
        } else {
            FrameGeometry::Positions([[v[1], v[2]], [v[3], v[4]], [v[5], v[6]], [v[7], v[8]]])
        };
        frames.push(TrajectoryFrame { t: v[0], geometry });
    }
    Ok(frames)
}

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().from_writer(out)
}

fn finish<W: Write>(w: csv::Writer<W>) -> std::io::Result<()> {
    w.into_inner().map_err(|e| e.into_error())?.flush()
}

fn io(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

/// Matrix with Team A sizes down the first column and Team B sizes across
/// the header.
pub fn write_matrix<W: Write>(out: W, a: &PayoffMatrix) -> std::io::Result<()> {
    let mut w = writer(out);
    let mut header = vec![MATRIX_CORNER.to_owned()];
    header.extend(a.col_labels().iter().map(u32::to_string));
    w.write_record(&header).map_err(io)?;
    for i in 0..a.n_rows() {
        let mut row = vec![a.row_labels()[i].to_string()];
        row.extend(a.row(i).iter().map(|&v| fmt_num(v)));
        w.write_record(&row).map_err(io)?;
    }
    finish(w)
}

/// Inverse of [`write_matrix`]. Imported entries count as converged.
pub fn read_matrix<R: Read>(input: R) -> Result<PayoffMatrix, TableError> {
    let mut rdr = reader(input);
    let header = rdr.headers().map_err(csv_error)?.clone();
    let label = |raw: &str, line: u64| {
        raw.parse::<u32>()
            .map_err(|_| TableError { line, message: format!("{raw:?} is not a constellation size") })
    };
    let cols = header.iter().skip(1).map(|h| label(h, 1)).collect::<Result<Vec<u32>, _>>()?;
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = line_of(&record);
        if record.len() != cols.len() + 1 {
            return Err(TableError { line, message: format!("expected {} fields", cols.len() + 1) });
        }
        rows.push(label(&record[0], line)?);
        for (k, c) in cols.iter().enumerate() {
            values.push(number(&record, k + 1, &c.to_string())?);
        }
    }
    PayoffMatrix::new(rows, cols, values).map_err(|e| TableError { line: 1, message: e.to_string() })
}

pub fn write_sweep<W: Write>(out: W, rows: &[SweepRow]) -> std::io::Result<()> {
    let mut w = writer(out);
    w.write_record(SWEEP_HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            fmt_num(r.snr_db),
            r.size_a.to_string(),
            r.size_b.to_string(),
            fmt_num(r.value),
            r.kind.as_str().to_owned(),
            r.certified.to_string(),
        ])
        .map_err(io)?;
    }
    finish(w)
}

pub fn write_run<W: Write>(out: W, steps: &[StepRecord]) -> std::io::Result<()> {
    let mut w = writer(out);
    w.write_record(RUN_HEADER).map_err(io)?;
    for s in steps {
        w.write_record([
            fmt_num(s.t),
            s.size_a.to_string(),
            s.size_b.to_string(),
            fmt_num(s.value),
            fmt_num(s.pi_cum),
            s.certified.to_string(),
        ])
        .map_err(io)?;
    }
    finish(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let a = PayoffMatrix::new(vec![16, 64], vec![16, 64, 256], vec![0.1, -0.2, 1.0 / 3.0, 4.0, 5e-7, 0.0]).unwrap();
        let mut buf = Vec::new();
        write_matrix(&mut buf, &a).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("Ma/Mb,16,64,256\n16,0.1,-0.2,0.3333333333\n"));
        let back = read_matrix(text.as_bytes()).unwrap();
        assert_eq!(back.row_labels(), a.row_labels());
        assert_eq!(back.value(1, 1), 5e-7);
    }

    #[test]
    fn trajectory_layouts() {
        let pos = "t,x1a,y1a,x2a,y2a,x1b,y1b,x2b,y2b\n0,0,0,1,0,0,1,1,1\n";
        let frames = read_trajectory(pos.as_bytes()).unwrap();
        assert!(matches!(frames[0].geometry, FrameGeometry::Positions(_)));

        let both = "t,x1a,y1a,x2a,y2a,x1b,y1b,x2b,y2b,d11,d12,d21,d22,dA,dB\n0,0,0,1,0,0,1,1,1,5,5,5,5,5,5\n";
        let frames = read_trajectory(both.as_bytes()).unwrap();
        match frames[0].geometry {
            FrameGeometry::Distances(d) => assert_eq!(d.team_a, 5.0),
            _ => panic!("distances should win"),
        }
    }

    #[test]
    fn trajectory_errors_carry_lines() {
        let bad = "t,d11,d12,d21,d22,dA,dB\n0,1,1,1,1,1,1\n1,1,x,1,1,1,1\n";
        let e = read_trajectory(bad.as_bytes()).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(read_trajectory("t,a,b\n".as_bytes()).is_err());
    }
}
