//! CSV layouts of the zero catalogs and readers that load them back.

use std::io::Read;
use std::str::FromStr;

use zetaphase::{CriticalZero, EtaPoint, ZeroKind, ZetaPrimeZero};

use crate::output::{Field, Table};
use crate::{CliError, CliResult};

pub const XI_HEADER: [&str; 5] = ["index", "ordinate", "multiplicity", "kappa_residual", "z_residual"];
pub const ETA_HEADER: [&str; 5] = ["index", "ordinate", "half_value", "zprime_residual", "kappa_residual"];
pub const COMPLEX_HEADER: [&str; 4] = ["index", "beta", "gamma", "residual"];
pub const TRIVIAL_HEADER: [&str; 5] = ["index", "a", "bracket_lo", "bracket_hi", "residual"];

pub fn xi_table(zeros: &[CriticalZero]) -> Table {
    let mut t = Table::new(XI_HEADER);
    for z in zeros {
        t.push(vec![
            Field::Int(z.index as i64),
            Field::Real(z.ordinate),
            Field::Int(z.multiplicity as i64),
            Field::Real(z.kappa_residual),
            Field::Real(z.z_residual),
        ]);
    }
    t
}

pub fn eta_table(points: &[EtaPoint]) -> Table {
    let mut t = Table::new(ETA_HEADER);
    for p in points {
        t.push(vec![
            Field::Int(p.index),
            Field::Real(p.ordinate),
            Field::Real(p.half_value),
            Field::Real(p.zprime_residual),
            Field::Real(p.kappa_residual),
        ]);
    }
    t
}

pub fn complex_table(zeros: &[ZetaPrimeZero]) -> Table {
    let mut t = Table::new(COMPLEX_HEADER);
    for z in zeros {
        t.push(vec![
            Field::Int(z.index as i64),
            Field::Real(z.beta),
            Field::Real(z.gamma),
            Field::Real(z.residual),
        ]);
    }
    t
}

/// aₙ lies in (−2n − 2, −2n).
pub fn trivial_table(zeros: &[ZetaPrimeZero]) -> Table {
    let mut t = Table::new(TRIVIAL_HEADER);
    for z in zeros {
        let n = z.index as i64;
        t.push(vec![
            Field::Int(n),
            Field::Real(z.beta),
            Field::Int(-2 * n - 2),
            Field::Int(-2 * n),
            Field::Real(z.residual),
        ]);
    }
    t
}

fn records<R: Read>(input: R, header: &[&str]) -> CliResult<Vec<csv::StringRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let got = r.headers()?.clone();
    if got.iter().ne(header.iter().copied()) {
        return Err(CliError::Usage(format!(
            "catalog header {:?} does not match {:?}",
            got.iter().collect::<Vec<_>>(),
            header
        )));
    }
    Ok(r.records().collect::<Result<_, _>>()?)
}

fn cell<T: FromStr>(rec: &csv::StringRecord, i: usize, name: &str) -> CliResult<T> {
    let s = rec.get(i).unwrap_or("");
    s.parse()
        .map_err(|_| CliError::Usage(format!("bad {name} value {s:?} in catalog row {:?}", rec.position().map(|p| p.line()))))
}

pub fn read_xi<R: Read>(input: R) -> CliResult<Vec<CriticalZero>> {
    records(input, &XI_HEADER)?
        .iter()
        .map(|r| {
            Ok(CriticalZero {
                index: cell(r, 0, "index")?,
                ordinate: cell(r, 1, "ordinate")?,
                multiplicity: cell(r, 2, "multiplicity")?,
                kappa_residual: cell(r, 3, "kappa_residual")?,
                z_residual: cell(r, 4, "z_residual")?,
            })
        })
        .collect()
}

pub fn read_eta<R: Read>(input: R) -> CliResult<Vec<EtaPoint>> {
    records(input, &ETA_HEADER)?
        .iter()
        .map(|r| {
            Ok(EtaPoint {
                index: cell(r, 0, "index")?,
                ordinate: cell(r, 1, "ordinate")?,
                half_value: cell(r, 2, "half_value")?,
                zprime_residual: cell(r, 3, "zprime_residual")?,
                kappa_residual: cell(r, 4, "kappa_residual")?,
            })
        })
        .collect()
}

pub fn read_complex<R: Read>(input: R) -> CliResult<Vec<ZetaPrimeZero>> {
    records(input, &COMPLEX_HEADER)?
        .iter()
        .map(|r| {
            Ok(ZetaPrimeZero {
                kind: ZeroKind::Complex,
                index: cell(r, 0, "index")?,
                beta: cell(r, 1, "beta")?,
                gamma: cell(r, 2, "gamma")?,
                residual: cell(r, 3, "residual")?,
            })
        })
        .collect()
}

pub fn read_trivial<R: Read>(input: R) -> CliResult<Vec<ZetaPrimeZero>> {
    records(input, &TRIVIAL_HEADER)?
        .iter()
        .map(|r| {
            Ok(ZetaPrimeZero {
                kind: ZeroKind::Trivial,
                index: cell(r, 0, "index")?,
                beta: cell(r, 1, "a")?,
                gamma: 0.0,
                residual: cell(r, 4, "residual")?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_mismatch_is_rejected() {
        let data = "index,ordinate\n1,14.1\n";
        assert!(read_xi(data.as_bytes()).is_err());
        let data = "index,beta,gamma,residual\n1,2.46,x,0\n";
        assert!(read_complex(data.as_bytes()).is_err());
    }
}
