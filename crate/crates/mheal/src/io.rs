//! File ingestion (csv, libsvm, idx) and artifact writers. All float output
//! uses `{:?}` formatting, which for f64 is the shortest string that parses
//! back to the identical bits.

use crate::error::Error;
use crate::points::PointSet;
use crate::versionspace::SummaryRow;
use serde::Serialize;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    Csv,
    Libsvm,
    Idx,
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "csv" => Ok(InputFormat::Csv),
            "libsvm" => Ok(InputFormat::Libsvm),
            "idx" => Ok(InputFormat::Idx),
            other => Err(Error::invalid("format", format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Ingested {
    pub points: PointSet,
    pub labels: Option<Vec<i8>>,
}

pub fn ingest(
    path: &Path,
    format: InputFormat,
    has_header: bool,
    label_last: bool,
) -> Result<Ingested, Error> {
    match format {
        InputFormat::Csv => read_csv(path, has_header, label_last),
        InputFormat::Libsvm => read_libsvm(path),
        InputFormat::Idx => read_idx(path),
    }
}

fn parse_label(raw: f64, row: usize) -> Result<i8, Error> {
    if raw == 1.0 {
        Ok(1)
    } else if raw == -1.0 {
        Ok(-1)
    } else {
        Err(Error::BadLabel { row, value: raw })
    }
}

/// Comma-separated reals, one row per line. Empty lines are skipped. With
/// `label_last`, the final column must be +/-1 and is split off as labels.
/// Line numbers in errors are 1-based and count the header.
pub fn read_csv(path: &Path, has_header: bool, label_last: bool) -> Result<Ingested, Error> {
    let text = fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<i8> = Vec::new();
    let mut expected: Option<usize> = None;
    let skip = usize::from(has_header);
    for (idx, line) in text.lines().enumerate().skip(skip) {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let mut values = Vec::new();
        for field in line.split(',') {
            let v: f64 = field.trim().parse().map_err(|_| Error::Parse {
                line: lineno,
                reason: format!("invalid float {:?}", field.trim()),
            })?;
            values.push(v);
        }
        match expected {
            None => expected = Some(values.len()),
            Some(e) if e != values.len() => {
                return Err(Error::InconsistentDimension {
                    line: lineno,
                    expected: e,
                    got: values.len(),
                })
            }
            _ => {}
        }
        if label_last {
            if values.len() < 2 {
                return Err(Error::Parse {
                    line: lineno,
                    reason: "need at least one feature before the label column".into(),
                });
            }
            let raw = values.pop().unwrap();
            labels.push(parse_label(raw, rows.len())?);
        }
        rows.push(values);
    }
    let points = PointSet::from_rows(&rows)?;
    Ok(Ingested {
        points,
        labels: label_last.then_some(labels),
    })
}

/// Sparse "label idx:val ..." lines with 1-based indices, densified to the
/// maximum index seen anywhere in the file.
pub fn read_libsvm(path: &Path) -> Result<Ingested, Error> {
    let text = fs::read_to_string(path)?;
    let mut parsed: Vec<(i8, Vec<(usize, f64)>)> = Vec::new();
    let mut max_index = 0usize;
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let mut fields = line.split_whitespace();
        let label_tok = fields.next().ok_or_else(|| Error::Parse {
            line: lineno,
            reason: "missing label".into(),
        })?;
        let raw: f64 = label_tok.parse().map_err(|_| Error::Parse {
            line: lineno,
            reason: format!("invalid label {label_tok:?}"),
        })?;
        let label = parse_label(raw, parsed.len())?;
        let mut entries = Vec::new();
        for tok in fields {
            let (i_str, v_str) = tok.split_once(':').ok_or_else(|| Error::Parse {
                line: lineno,
                reason: format!("expected idx:val, got {tok:?}"),
            })?;
            let i: usize = i_str.parse().map_err(|_| Error::Parse {
                line: lineno,
                reason: format!("invalid feature index {i_str:?}"),
            })?;
            if i == 0 {
                return Err(Error::Parse {
                    line: lineno,
                    reason: "feature indices are 1-based".into(),
                });
            }
            let v: f64 = v_str.parse().map_err(|_| Error::Parse {
                line: lineno,
                reason: format!("invalid feature value {v_str:?}"),
            })?;
            max_index = max_index.max(i);
            entries.push((i, v));
        }
        parsed.push((label, entries));
    }
    let mut rows = Vec::with_capacity(parsed.len());
    let mut labels = Vec::with_capacity(parsed.len());
    for (label, entries) in parsed {
        let mut row = vec![0.0; max_index];
        for (i, v) in entries {
            row[i - 1] = v;
        }
        rows.push(row);
        labels.push(label);
    }
    let points = PointSet::from_rows(&rows)?;
    Ok(Ingested {
        points,
        labels: Some(labels),
    })
}

/// Big-endian idx format: two zero bytes, a dtype byte (only 0x08, unsigned
/// byte, is supported), a dimension-count byte, that many u32 sizes, then the
/// payload row-major. The first dimension is the row count, the rest are
/// flattened into features, and every value is scaled by 1/255. Parse errors
/// report line 0 (binary offset context instead).
pub fn read_idx(path: &Path) -> Result<Ingested, Error> {
    let bytes = fs::read(path)?;
    let fail = |reason: String| Error::Parse { line: 0, reason };
    if bytes.len() < 4 {
        return Err(fail("file shorter than the 4-byte magic".into()));
    }
    if bytes[0] != 0 || bytes[1] != 0 {
        return Err(fail(format!(
            "bad magic prefix 0x{:02x}{:02x}, expected 0x0000",
            bytes[0], bytes[1]
        )));
    }
    if bytes[2] != 0x08 {
        return Err(fail(format!(
            "unsupported idx dtype 0x{:02x}, only unsigned byte (0x08) is supported",
            bytes[2]
        )));
    }
    let ndims = bytes[3] as usize;
    if ndims == 0 {
        return Err(fail("dimension count is zero".into()));
    }
    let header = 4 + 4 * ndims;
    if bytes.len() < header {
        return Err(fail(format!(
            "truncated header: need {header} bytes, file has {}",
            bytes.len()
        )));
    }
    let mut dims = Vec::with_capacity(ndims);
    for k in 0..ndims {
        let off = 4 + 4 * k;
        let dim = u32::from_be_bytes(bytes[off..off + 4].try_into().unwrap()) as usize;
        dims.push(dim);
    }
    let rows = dims[0];
    let features: usize = dims[1..].iter().product::<usize>().max(1);
    let expected = header + rows * features;
    if bytes.len() != expected {
        return Err(fail(format!(
            "payload length mismatch: dims {dims:?} need {expected} bytes, file has {}",
            bytes.len()
        )));
    }
    let data: Vec<f64> = bytes[header..].iter().map(|&b| b as f64 / 255.0).collect();
    let points = PointSet::new(data, rows, features)?;
    Ok(Ingested {
        points,
        labels: None,
    })
}

/// One index per line, no header.
pub fn write_indices_csv(path: &Path, indices: &[usize]) -> Result<(), Error> {
    let mut out = String::new();
    for &i in indices {
        out.push_str(&format!("{i}\n"));
    }
    fs::write(path, out)?;
    Ok(())
}

/// One comma-separated row per line, no header, round-trip float formatting.
pub fn write_points_csv(path: &Path, points: &PointSet) -> Result<(), Error> {
    let mut out = String::new();
    for row in points.iter_rows() {
        let fields: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Header `budget,kl,mmd,mmd_mu`, one row per budget.
pub fn write_match_csv(path: &Path, rows: &[(usize, f64, f64, f64)]) -> Result<(), Error> {
    let mut out = String::from("budget,kl,mmd,mmd_mu\n");
    for &(budget, kl, mmd, mmd_mu) in rows {
        out.push_str(&format!("{budget},{kl:?},{mmd:?},{mmd_mu:?}\n"));
    }
    fs::write(path, out)?;
    Ok(())
}

/// Header `t,iwal_mean,iwal_std,mheal_mean,mheal_std`, one row per round.
pub fn write_study_csv(path: &Path, rows: &[SummaryRow]) -> Result<(), Error> {
    let mut out = String::from("t,iwal_mean,iwal_std,mheal_mean,mheal_std\n");
    for r in rows {
        out.push_str(&format!(
            "{},{:?},{:?},{:?},{:?}\n",
            r.t, r.iwal_mean, r.iwal_std, r.mheal_mean, r.mheal_std
        ));
    }
    fs::write(path, out)?;
    Ok(())
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), Error> {
    let mut file = fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut file, value)
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
    file.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temp_with(content: &[u8]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content).unwrap();
        f
    }

    #[test]
    fn csv_basic_row() {
        let f = temp_with(b"1.0,2.0,0.5\n");
        let got = read_csv(f.path(), false, false).unwrap();
        assert_eq!(got.points.row(0), &[1.0, 2.0, 0.5]);
        assert!(got.labels.is_none());
    }

    #[test]
    fn csv_labels_and_header() {
        let f = temp_with(b"x,y,label\n0.5,2.0,1\n-0.25,1.0,-1\n");
        let got = read_csv(f.path(), true, true).unwrap();
        assert_eq!(got.points.rows(), 2);
        assert_eq!(got.points.row(1), &[-0.25, 1.0]);
        assert_eq!(got.labels, Some(vec![1, -1]));
    }

    #[test]
    fn csv_error_lines_are_one_based_counting_header() {
        let f = temp_with(b"h1,h2\n1.0,2.0\n1.0,oops\n");
        match read_csv(f.path(), true, false) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        let f = temp_with(b"1.0,2.0\n1.0,2.0,3.0\n");
        match read_csv(f.path(), false, false) {
            Err(Error::InconsistentDimension { line, expected, got }) => {
                assert_eq!((line, expected, got), (2, 2, 3));
            }
            other => panic!("expected dimension error, got {other:?}"),
        }
    }

    #[test]
    fn csv_rejects_non_sign_labels() {
        let f = temp_with(b"1.0,2.0\n");
        assert!(matches!(
            read_csv(f.path(), false, true),
            Err(Error::BadLabel { row: 0, .. })
        ));
    }

    #[test]
    fn libsvm_densifies_to_max_index() {
        let f = temp_with(b"+1 1:0.5 3:0.25\n-1 2:1\n");
        let got = read_libsvm(f.path()).unwrap();
        assert_eq!(got.points.row(0), &[0.5, 0.0, 0.25]);
        assert_eq!(got.points.row(1), &[0.0, 1.0, 0.0]);
        assert_eq!(got.labels, Some(vec![1, -1]));
    }

    #[test]
    fn libsvm_rejects_malformed_tokens() {
        let f = temp_with(b"+1 1:0.5 nonsense\n");
        assert!(matches!(read_libsvm(f.path()), Err(Error::Parse { line: 1, .. })));
        let f = temp_with(b"+1 0:0.5\n");
        assert!(matches!(read_libsvm(f.path()), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn idx_parses_hand_built_bytes() {
        // magic 0x00000803, dims 2 x 2 x 2, payload 0,51,102,153,204,255,0,255
        let mut bytes = vec![0, 0, 0x08, 3];
        for dim in [2u32, 2, 2] {
            bytes.extend_from_slice(&dim.to_be_bytes());
        }
        bytes.extend_from_slice(&[0, 51, 102, 153, 204, 255, 0, 255]);
        let f = temp_with(&bytes);
        let got = read_idx(f.path()).unwrap();
        assert_eq!(got.points.rows(), 2);
        assert_eq!(got.points.dim(), 4);
        assert_eq!(got.points.row(0), &[0.0, 0.2, 0.4, 0.6]);
        assert_eq!(got.points.row(1), &[0.8, 1.0, 0.0, 1.0]);
        assert!(got.labels.is_none());
    }

    #[test]
    fn idx_rejects_bad_magic_and_truncation() {
        let f = temp_with(&[1, 0, 0x08, 1]);
        assert!(matches!(read_idx(f.path()), Err(Error::Parse { .. })));
        let f = temp_with(&[0, 0, 0x0d, 1]);
        assert!(matches!(read_idx(f.path()), Err(Error::Parse { .. })));
        let mut bytes = vec![0, 0, 0x08, 1];
        bytes.extend_from_slice(&3u32.to_be_bytes());
        bytes.extend_from_slice(&[7, 7]); // one byte short
        let f = temp_with(&bytes);
        assert!(matches!(read_idx(f.path()), Err(Error::Parse { .. })));
    }

    #[test]
    fn points_csv_round_trips_bit_exactly() {
        let original = PointSet::from_rows(&[
            vec![0.1 + 0.2, 1e-17, -0.0],
            vec![std::f64::consts::PI, -1.0 / 3.0, 255.0 / 7.0],
        ])
        .unwrap();
        let f = tempfile::NamedTempFile::new().unwrap();
        write_points_csv(f.path(), &original).unwrap();
        let back = read_csv(f.path(), false, false).unwrap();
        assert_eq!(original.as_slice(), back.points.as_slice());
    }

    #[test]
    fn indices_csv_has_one_line_per_index() {
        let f = tempfile::NamedTempFile::new().unwrap();
        write_indices_csv(f.path(), &[3, 1, 4, 1]).unwrap();
        let text = fs::read_to_string(f.path()).unwrap();
        assert_eq!(text, "3\n1\n4\n1\n");
    }
}
