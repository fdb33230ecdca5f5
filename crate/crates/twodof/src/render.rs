//! Text rendering with factored polynomials. Every rendered expression is
//! valid input for [`crate::parse_rational`].

use std::fmt::Write;

use twodof_core::factor::{Direction, RootItem, ZeroReport};
use twodof_core::polyalg::{fmt_signed, PolyMat, QMat, RatFn, RatMat};
use twodof_core::stability::StabilityVerdict;
use twodof_core::stabilize::InternalStability;
use twodof_core::verify::Certificate;
use twodof_core::Poly;

pub fn poly(p: &Poly) -> String {
    p.factored()
}

pub fn ratfn(r: &RatFn) -> String {
    if r.den().is_one() {
        return poly(r.num());
    }
    let den = poly(r.den());
    if is_wrapped(&den) {
        format!("{}/{den}", poly(r.num()))
    } else {
        format!("{}/({den})", poly(r.num()))
    }
}

/// True when the whole string is one parenthesized group.
fn is_wrapped(s: &str) -> bool {
    if !s.starts_with('(') {
        return false;
    }
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i == s.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

pub fn ratmat(m: &RatMat) -> String {
    grid(m.rows(), m.cols(), |i, j| ratfn(m.get(i, j)))
}

pub fn polymat(m: &PolyMat) -> String {
    grid(m.rows(), m.cols(), |i, j| poly(m.get(i, j)))
}

pub fn qmat(m: &QMat) -> String {
    grid(m.rows(), m.cols(), |i, j| m.get(i, j).to_string())
}

fn grid(rows: usize, cols: usize, f: impl Fn(usize, usize) -> String) -> String {
    if rows == 1 && cols == 1 {
        return f(0, 0);
    }
    let body: Vec<String> =
        (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", body.join("; "))
}

pub fn verdict(v: &StabilityVerdict) -> String {
    if v.is_stable() {
        return "stable".into();
    }
    let parts: Vec<String> = v
        .offending_factors()
        .iter()
        .map(|o| {
            let base = format!("({})", o.factor);
            let f = if o.multiplicity > 1 { format!("{base}^{}", o.multiplicity) } else { base };
            format!("{f} [{}]", o.reason)
        })
        .collect();
    format!("unstable: {}", parts.join(", "))
}

pub fn internal_stability(out: &mut String, s: &InternalStability) {
    for m in &s.maps {
        let proper = if m.proper { "proper" } else { "improper" };
        let _ = writeln!(out, "  {:<22} {proper}, {}", m.name, verdict(&m.verdict));
    }
    let _ = writeln!(out, "  internally stable: {}", if s.stabilizing() { "yes" } else { "no" });
}

pub fn certificates(out: &mut String, certs: &[Certificate]) {
    for c in certs {
        let mark = if c.holds { "ok" } else { "FAIL" };
        match &c.verdict {
            Some(v) => {
                let _ = writeln!(out, "  [{mark}] {}: {}", c.condition, verdict(v));
            }
            None => {
                let _ = writeln!(out, "  [{mark}] {}", c.condition);
            }
        }
    }
}

fn root_item(out: &mut String, r: &RootItem) {
    let loc = match &r.exact {
        Some(x) => fmt_signed(x),
        None if r.location.im == 0.0 => format!("{:.6}", r.location.re),
        None => format!("{:.6} {} {:.6}i", r.location.re, if r.location.im < 0.0 { "-" } else { "+" }, r.location.im.abs()),
    };
    let tag = if r.unstable { "unstable" } else { "stable" };
    let _ = write!(out, "  {loc}  factor ({}) multiplicity {} {tag}", r.factor, r.multiplicity);
    match &r.direction {
        Some(Direction::Exact(v)) => {
            let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            let _ = write!(out, "  direction [{}]", v.join(", "));
        }
        Some(Direction::Numeric(v)) => {
            let v: Vec<String> = v.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
            let _ = write!(out, "  direction [{}]", v.join(", "));
        }
        None => {}
    }
    out.push('\n');
}

pub fn zero_report(out: &mut String, z: &ZeroReport) {
    let _ = writeln!(out, "zero polynomial: {}", poly(&z.zero_polynomial));
    if z.zeros.is_empty() {
        let _ = writeln!(out, "  (no finite zeros)");
    }
    for r in &z.zeros {
        root_item(out, r);
    }
    let _ = writeln!(out, "pole polynomial: {}", poly(&z.pole_polynomial));
    if z.poles.is_empty() {
        let _ = writeln!(out, "  (no finite poles)");
    }
    for r in &z.poles {
        root_item(out, r);
    }
}
