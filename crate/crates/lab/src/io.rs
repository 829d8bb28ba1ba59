//! Permutation input and trace output files.

use std::fs;
use std::path::Path;

use sortlab_core::networks::{NetworkTrace, Op};
use sortlab_core::shellsort::PassTrace;
use sortlab_core::Permutation;

use crate::error::Result;

/// Reads a permutation written as whitespace- or comma-separated integers.
/// Lines starting with `#` are ignored.
pub fn read_permutation(path: &Path) -> Result<Permutation> {
    parse_permutation(&fs::read_to_string(path)?)
}

/// Parses the text form accepted by [`read_permutation`].
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let body: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .map(|l| l.replace(',', " "))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(body.parse()?)
}

/// `element,pass,m` rows, element-major.
pub fn pass_trace_csv(trace: &PassTrace) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["element", "pass", "m"])?;
    for (element, pass, m) in trace.iter() {
        w.serialize((element, pass, m))?;
    }
    finish(w)
}

/// `step,op,device` rows with `op` one of `push` or `pop`; steps count from 0.
pub fn network_trace_csv(trace: &NetworkTrace) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["step", "op", "device"])?;
    for (step, op) in trace.ops.iter().enumerate() {
        let (name, device) = match *op {
            Op::Push(d) => ("push", d),
            Op::Pop(d) => ("pop", d),
        };
        w.serialize((step, name, device))?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV fields are UTF-8"))
}
