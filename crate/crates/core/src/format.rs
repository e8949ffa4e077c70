//! Text formats: locale-independent numbers and the CSV files exchanged by the CLI.
//!
//! * function CSV: `subset,value` with `subset` dash-joined and 1-based;
//!   unlisted subsets are zero, repeated subsets are rejected.
//! * coefficient CSV: `rowseq,a,value` in canonical Gelfand-Tsetlin order.
//! * weights CSV: `a,weight`.

use std::io::{Read, Write};

use crate::dims::ProblemDims;
use crate::error::{Error, Result};
use crate::planner::FactorPlan;
use crate::tableau::Tableau;
use crate::transform::{FunctionVector, GtVector};
use crate::word::{enumerate_points, format_subset, parse_subset, subset_of_word, word_of_subset, word_rank};

/// Decimal rendering with 17 significant digits, trailing zeros trimmed.
///
/// Always positional (no exponent) and round-trips every finite `f64`.
pub fn format_f64(x: f64) -> String {
    assert!(x.is_finite(), "cannot format non-finite value {x}");
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let (int_part, frac_part) = if exp >= 0 {
        let split = exp as usize + 1;
        if split >= digits.len() {
            (format!("{digits}{}", "0".repeat(split - digits.len())), String::new())
        } else {
            (digits[..split].to_string(), digits[split..].to_string())
        }
    } else {
        ("0".to_string(), format!("{}{digits}", "0".repeat((-exp - 1) as usize)))
    };
    let frac = frac_part.trim_end_matches('0');
    let frac = if frac.is_empty() { "0" } else { frac };
    format!("{sign}{int_part}.{frac}")
}

fn parse_value(field: &str, line: u64) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| Error::Format(format!("line {line}: invalid number {field:?}")))?;
    if !v.is_finite() {
        return Err(Error::Format(format!("line {line}: non-finite value {field:?}")));
    }
    Ok(v)
}

fn records<R: Read>(reader: R, fields: usize) -> Result<Vec<(u64, csv::StringRecord)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Format(e.to_string()))?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != fields {
            return Err(Error::Format(format!("line {line}: expected {fields} fields, found {}", rec.len())));
        }
        out.push((line, rec));
    }
    Ok(out)
}

pub fn read_function_csv<R: Read>(reader: R, dims: ProblemDims) -> Result<FunctionVector> {
    let mut values = vec![0.0; dims.dim()];
    let mut seen = vec![false; dims.dim()];
    for (line, rec) in records(reader, 2)? {
        let subset = parse_subset(&rec[0]).map_err(|e| Error::Format(format!("line {line}: {e}")))?;
        let word = word_of_subset(&subset, dims).map_err(|e| Error::Format(format!("line {line}: {e}")))?;
        let idx = word_rank(&word);
        if std::mem::replace(&mut seen[idx], true) {
            return Err(Error::Format(format!("line {line}: duplicate subset {}", &rec[0])));
        }
        values[idx] = parse_value(&rec[1], line)?;
    }
    FunctionVector::new(dims, values)
}

pub fn write_function_csv<W: Write>(mut out: W, f: &FunctionVector) -> Result<()> {
    for (x, v) in enumerate_points(f.dims()).iter().zip(f.values()) {
        writeln!(out, "{},{}", format_subset(&subset_of_word(x)), format_f64(*v))?;
    }
    Ok(())
}

pub fn read_gt_csv<R: Read>(reader: R, plan: &FactorPlan) -> Result<GtVector> {
    let dims = plan.dims();
    let mut values = vec![0.0; dims.dim()];
    let mut seen = vec![false; dims.dim()];
    for (line, rec) in records(reader, 3)? {
        let tab: Tableau = rec[0].parse().map_err(|e| Error::Format(format!("line {line}: {e}")))?;
        let idx = plan
            .gt_position(&tab)
            .ok_or_else(|| Error::Format(format!("line {line}: {tab} is not a coordinate label of {dims}")))?;
        let a: usize = rec[1].parse().map_err(|_| Error::Format(format!("line {line}: invalid a {:?}", &rec[1])))?;
        if a != tab.shape().q {
            return Err(Error::Format(format!("line {line}: tableau {tab} has a = {}, not {a}", tab.shape().q)));
        }
        if std::mem::replace(&mut seen[idx], true) {
            return Err(Error::Format(format!("line {line}: duplicate tableau {tab}")));
        }
        values[idx] = parse_value(&rec[2], line)?;
    }
    GtVector::new(dims, values)
}

pub fn write_gt_csv<W: Write>(mut out: W, g: &GtVector, plan: &FactorPlan) -> Result<()> {
    for (tab, v) in plan.gt_labels().iter().zip(g.values()) {
        writeln!(out, "{},{},{}", tab, tab.shape().q, format_f64(*v))?;
    }
    Ok(())
}

pub fn write_weights_csv<W: Write>(mut out: W, weights: &[f64]) -> Result<()> {
    for (a, w) in weights.iter().enumerate() {
        writeln!(out, "{a},{}", format_f64(*w))?;
    }
    Ok(())
}
