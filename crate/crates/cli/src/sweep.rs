//! Parameter sweeps: `family:param=values[:param=values...]`, several
//! families separated by `;`. Values are comma lists whose items are single
//! integers or inclusive ranges `a..b`.
//!
//! `simplex:q=2:k=2..5; hamming:q=2,3:r=2..3; golay3`

use crate::source::{CodeSpec, Family, Param, Params};

/// Upper bound on the number of codes one sweep may expand to.
pub const MAX_SWEEP_CELLS: usize = 10_000;

fn parse_values(text: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        let number = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| format!("expected a nonnegative integer, got {s:?}"))
        };
        match item.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (number(lo)?, number(hi)?);
                if lo > hi {
                    return Err(format!("empty range {item:?}"));
                }
                if hi - lo >= MAX_SWEEP_CELLS as u64 {
                    return Err(format!("range {item:?} is too long"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(number(item)?),
        }
    }
    Ok(out)
}

fn parse_family(text: &str) -> Result<Vec<CodeSpec>, String> {
    let mut parts = text.split(':');
    let family: Family = parts.next().unwrap_or_default().trim().parse()?;
    if family == Family::File {
        return Err("sweeps take named families only".into());
    }
    let mut axes: Vec<(Param, Vec<u64>)> = Vec::new();
    for part in parts {
        let (name, values) = part
            .split_once('=')
            .ok_or_else(|| format!("expected param=values, got {part:?}"))?;
        let param: Param = name.trim().parse()?;
        if axes.iter().any(|(p, _)| *p == param) {
            return Err(format!("parameter {} given twice", param.name()));
        }
        axes.push((param, parse_values(values)?));
    }

    let mut grid = vec![Params::default()];
    for (param, values) in &axes {
        if grid.len() * values.len() > MAX_SWEEP_CELLS {
            return Err(format!(
                "sweep expands to more than {MAX_SWEEP_CELLS} codes"
            ));
        }
        grid = grid
            .iter()
            .flat_map(|base| {
                values.iter().map(move |&v| {
                    let mut p = base.clone();
                    p.set(*param, v);
                    p
                })
            })
            .collect();
    }
    grid.into_iter()
        .map(|p| CodeSpec::new(family, p, None))
        .collect()
}

/// Expands a sweep. Blank input is the empty sweep.
pub fn parse_sweep(text: &str) -> Result<Vec<CodeSpec>, String> {
    let mut out = Vec::new();
    for chunk in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        out.extend(parse_family(chunk).map_err(|e| format!("sweep {chunk:?}: {e}"))?);
        if out.len() > MAX_SWEEP_CELLS {
            return Err(format!(
                "sweep expands to more than {MAX_SWEEP_CELLS} codes"
            ));
        }
    }
    Ok(out)
}
