//! Plan files: a JSON object
//! `{"version":1,"n":..,"k":..,"levels":[{"i":..,"blocks":[..]}],"checksum":".."}`.
//!
//! The writer is canonical (fixed key order, one block per line, numbers via
//! [`format_f64`]) so equal plans serialize to equal bytes. The checksum is the
//! SHA-256 of that canonical body without the checksum field; it is optional on
//! load and verified when present.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::dims::ProblemDims;
use crate::error::{Error, Result};
use crate::format::format_f64;
use crate::label::Frame;
use crate::planner::{Block, FactorPlan, PlanLevel, PlannerConfig, Rotation, PLAN_FORMAT_VERSION};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanFile {
    version: u32,
    n: usize,
    k: usize,
    levels: Vec<LevelFile>,
    #[serde(default)]
    checksum: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LevelFile {
    i: usize,
    blocks: Vec<BlockFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockFile {
    frame: FrameFile,
    srcs: Vec<usize>,
    dsts: Vec<usize>,
    #[serde(default)]
    coeffs: Option<Rotation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameFile {
    tab: String,
    tail: String,
}

fn join_indices(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn canonical_body(plan: &FactorPlan) -> String {
    let dims = plan.dims();
    let mut s = String::new();
    write!(s, "{{\"version\":{PLAN_FORMAT_VERSION},\"n\":{},\"k\":{},\"levels\":[", dims.n(), dims.k()).unwrap();
    for (li, level) in plan.levels().iter().enumerate() {
        if li > 0 {
            s.push(',');
        }
        write!(s, "\n{{\"i\":{},\"blocks\":[", level.level).unwrap();
        for (bi, b) in level.blocks.iter().enumerate() {
            if bi > 0 {
                s.push(',');
            }
            write!(
                s,
                "\n{{\"frame\":{{\"tab\":\"{}\",\"tail\":\"{}\"}},\"srcs\":[{}],\"dsts\":[{}]",
                b.frame.tab,
                b.frame.tail,
                join_indices(&b.srcs),
                join_indices(&b.dsts)
            )
            .unwrap();
            if let Some(r) = &b.coeffs {
                write!(
                    s,
                    ",\"coeffs\":[[{},{}],[{},{}]]",
                    format_f64(r[0][0]),
                    format_f64(r[0][1]),
                    format_f64(r[1][0]),
                    format_f64(r[1][1])
                )
                .unwrap();
            }
            s.push('}');
        }
        s.push_str("]}");
    }
    s.push_str("]}");
    s
}

fn checksum_of(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

/// Canonical serialization including the checksum field.
pub fn plan_to_json(plan: &FactorPlan) -> String {
    let body = canonical_body(plan);
    let sum = checksum_of(&body);
    let mut out = body[..body.len() - 1].to_string();
    write!(out, ",\n\"checksum\":\"{sum}\"}}\n").unwrap();
    out
}

pub fn plan_from_json(text: &str) -> Result<FactorPlan> {
    plan_from_json_with(text, &PlannerConfig::default())
}

pub fn plan_from_json_with(text: &str, cfg: &PlannerConfig) -> Result<FactorPlan> {
    let file: PlanFile = serde_json::from_str(text).map_err(|e| Error::Format(format!("plan JSON: {e}")))?;
    if file.version != PLAN_FORMAT_VERSION {
        return Err(Error::Format(format!(
            "plan format version {} is not supported (expected {PLAN_FORMAT_VERSION})",
            file.version
        )));
    }
    let dims = ProblemDims::new(file.n, file.k).map_err(|e| Error::Format(format!("plan dimensions: {e}")))?;
    let levels = file
        .levels
        .into_iter()
        .map(|l| {
            let level = l.i;
            let blocks = l
                .blocks
                .into_iter()
                .map(|b| {
                    Ok(Block {
                        level,
                        frame: Frame {
                            tab: b.frame.tab.parse().map_err(|e| Error::Format(format!("frame tableau: {e}")))?,
                            tail: b.frame.tail.parse().map_err(|e| Error::Format(format!("frame tail: {e}")))?,
                        },
                        srcs: b.srcs,
                        dsts: b.dsts,
                        coeffs: b.coeffs,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(PlanLevel { level, blocks })
        })
        .collect::<Result<Vec<_>>>()?;
    let plan = FactorPlan::from_levels(dims, levels, cfg)?;
    if let Some(sum) = file.checksum {
        let actual = checksum_of(&canonical_body(&plan));
        if !sum.eq_ignore_ascii_case(&actual) {
            return Err(Error::Verification(format!("checksum mismatch: file says {sum}, contents hash to {actual}")));
        }
    }
    Ok(plan)
}

pub fn save_plan(plan: &FactorPlan, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, plan_to_json(plan))?;
    Ok(())
}

pub fn load_plan(path: impl AsRef<Path>) -> Result<FactorPlan> {
    plan_from_json(&std::fs::read_to_string(path)?)
}
