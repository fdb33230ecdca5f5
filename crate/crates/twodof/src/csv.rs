//! CSV output for step-response traces: header `t,y1,...,yp`, one row per
//! sample, decimal notation with 12 significant digits.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use twodof_core::verify::SimulationTrace;

const SIGNIFICANT: i32 = 12;

/// Formats `x` in plain decimal notation rounded to 12 significant digits,
/// without trailing zeros.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = SIGNIFICANT - 1 - exp;
    let mut s = if decimals >= 0 {
        format!("{:.*}", decimals as usize, x)
    } else {
        let scale = 10f64.powi(-decimals);
        format!("{:.0}", (x / scale).round() * scale)
    };
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn write_trace<W: Write>(mut w: W, trace: &SimulationTrace) -> io::Result<()> {
    let header: Vec<String> =
        std::iter::once("t".to_string()).chain((1..=trace.outputs.len()).map(|i| format!("y{i}"))).collect();
    writeln!(w, "{}", header.join(","))?;
    for (k, t) in trace.time.iter().enumerate() {
        let row: Vec<String> =
            std::iter::once(format_sig(*t)).chain(trace.outputs.iter().map(|o| format_sig(o[k]))).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Output path for input channel `j` (1-based) out of `inputs`: the path
/// itself for one input, otherwise `stem_r{j}.ext`.
pub fn channel_path(base: &Path, j: usize, inputs: usize) -> PathBuf {
    if inputs <= 1 {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_r{j}.{}", ext.to_string_lossy()),
        None => format!("{stem}_r{j}"),
    };
    base.with_file_name(name)
}

/// Writes one file per trace and returns the paths written.
pub fn write_traces(base: &Path, traces: &[SimulationTrace]) -> io::Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for (j, trace) in traces.iter().enumerate() {
        let path = channel_path(base, j + 1, traces.len());
        let file = std::fs::File::create(&path)?;
        let mut w = io::BufWriter::new(file);
        write_trace(&mut w, trace)?;
        w.flush()?;
        paths.push(path);
    }
    Ok(paths)
}
