//! CSV readers and writers for parameters, trajectories and control output.
//!
//! Headers:
//! - params: `node,mu,beta,r`
//! - trajectory: `t,node,p` (long format)
//! - summary: `verdict,steps,sigma`
//! - selection: `node,degree,mu,beta,r,margin,flagged`
//! - plan: `node,beta_old,beta_new`

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::control::{ControlPlan, SelectionReport};
use crate::epidemic::{EpidemicState, NodeParams, Trajectory, Verdict};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Deserialize, Serialize)]
struct ParamRow {
    node: usize,
    mu: f64,
    beta: f64,
    r: f64,
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(input)
}

/// Reads a params table; rows may come in any order but each node
/// `0..n-1` must appear exactly once.
pub fn read_params<R: Read>(input: R) -> Result<NodeParams> {
    let mut rows: Vec<Option<ParamRow>> = Vec::new();
    for (k, rec) in reader(input).deserialize::<ParamRow>().enumerate() {
        let row = rec.map_err(|e| Error::Parse {
            line: e.position().map(|p| p.line() as usize).unwrap_or(k + 2),
            message: e.to_string(),
        })?;
        if row.node >= rows.len() {
            rows.resize_with(row.node + 1, || None);
        }
        if rows[row.node].is_some() {
            return Err(Error::InvalidParams(format!(
                "node {} listed twice",
                row.node
            )));
        }
        let node = row.node;
        rows[node] = Some(row);
    }
    if let Some(missing) = rows.iter().position(Option::is_none) {
        return Err(Error::InvalidParams(format!("node {missing} missing")));
    }
    let rows: Vec<ParamRow> = rows.into_iter().flatten().collect();
    NodeParams::new(
        rows.iter().map(|r| r.mu).collect(),
        rows.iter().map(|r| r.beta).collect(),
        rows.iter().map(|r| r.r).collect(),
    )
}

pub fn write_params<W: Write>(out: W, params: &NodeParams) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for i in 0..params.len() {
        w.serialize(ParamRow {
            node: i,
            mu: params.mu()[i],
            beta: params.beta()[i],
            r: params.r()[i],
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Initial state table with header `node,p`, same row rules as params.
pub fn read_state<R: Read>(input: R, n: usize) -> Result<EpidemicState> {
    #[derive(Deserialize)]
    struct Row {
        node: usize,
        p: f64,
    }
    let mut p = vec![None; n];
    for rec in reader(input).deserialize::<Row>() {
        let row = rec?;
        let slot = p.get_mut(row.node).ok_or(Error::VertexOutOfRange {
            vertex: row.node,
            n,
        })?;
        if slot.replace(row.p).is_some() {
            return Err(Error::InvalidArgument(format!(
                "node {} listed twice",
                row.node
            )));
        }
    }
    let p: Option<Vec<f64>> = p.into_iter().collect();
    EpidemicState::new(
        p.ok_or_else(|| Error::InvalidArgument("initial state misses nodes".into()))?,
    )
}

pub fn write_trajectory<W: Write>(out: W, traj: &Trajectory) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "node", "p"])?;
    for (t, s) in traj.states.iter().enumerate() {
        for (node, p) in s.as_slice().iter().enumerate() {
            w.write_record([t.to_string(), node.to_string(), p.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary<W: Write>(out: W, verdict: Verdict, steps: usize, sigma: f64) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["verdict", "steps", "sigma"])?;
    w.write_record([verdict.to_string(), steps.to_string(), sigma.to_string()])?;
    w.flush()?;
    Ok(())
}

pub fn write_selection<W: Write>(
    out: W,
    g: &Graph,
    params: &NodeParams,
    report: &SelectionReport,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node", "degree", "mu", "beta", "r", "margin", "flagged"])?;
    for i in 0..g.order() {
        w.write_record([
            i.to_string(),
            g.neighbors(i).len().to_string(),
            params.mu()[i].to_string(),
            params.beta()[i].to_string(),
            params.r()[i].to_string(),
            report.margins[i].to_string(),
            report.is_flagged(i).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_plan<W: Write>(out: W, plan: &ControlPlan) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node", "beta_old", "beta_new"])?;
    for a in plan.adjustments.values() {
        w.write_record([
            a.node.to_string(),
            a.beta_old.to_string(),
            a.beta_new.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
