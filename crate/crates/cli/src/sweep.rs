use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use krein_csym::extensions::{classify_with_tol, k_eigenvalues_with_tol, ExtParams};
use krein_csym::model::closed_form_eigenvalues_with_tol;
use rayon::prelude::*;

use crate::output::fmt_sig;

pub const HEADER: &str = "zeta,phi,xi,omega,stable,upsilon,self_adjoint,chi,abs_k_plus,abs_k_minus,eig1,eig2";

/// `a:b:n` (n points, endpoints included) or a single value.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis(pub Vec<f64>);

impl Axis {
    pub fn parse(s: &str) -> Result<Axis, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number '{t}' in grid '{s}'"));
        match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                if !v.is_finite() {
                    return Err(format!("grid value '{s}' is not finite"));
                }
                Ok(Axis(vec![v]))
            }
            [a, b, n] => {
                let (a, b) = (num(a)?, num(b)?);
                let n: usize = n.trim().parse().map_err(|_| format!("bad point count in grid '{s}'"))?;
                if n == 0 || !a.is_finite() || !b.is_finite() {
                    return Err(format!("grid '{s}' needs finite ends and at least one point"));
                }
                if n == 1 {
                    return Ok(Axis(vec![a]));
                }
                Ok(Axis((0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()))
            }
            _ => Err(format!("grid '{s}' is neither a value nor a:b:n")),
        }
    }

    pub fn scaled(self, factor: f64) -> Axis {
        Axis(self.0.into_iter().map(|v| v * factor).collect())
    }
}

pub struct Grid {
    pub zeta: Axis,
    pub phi: Axis,
    pub xi: Axis,
    pub omega: Axis,
}

impl Grid {
    pub fn len(&self) -> usize {
        self.zeta.0.len() * self.phi.0.len() * self.xi.0.len() * self.omega.0.len()
    }

    /// Row-major in (ζ, φ, ξ, ω), ω fastest.
    fn point(&self, idx: usize) -> (f64, f64, f64, f64) {
        let (no, nx, np) = (self.omega.0.len(), self.xi.0.len(), self.phi.0.len());
        let o = idx % no;
        let x = (idx / no) % nx;
        let p = (idx / (no * nx)) % np;
        let z = idx / (no * nx * np);
        (self.zeta.0[z], self.phi.0[p], self.xi.0[x], self.omega.0[o])
    }
}

pub fn row(zeta: f64, phi: f64, xi: f64, omega: f64, tol: f64) -> String {
    let p = ExtParams::new(zeta, phi, xi, omega).expect("grid values are finite");
    let class = classify_with_tol(&p, tol);
    let k = k_eigenvalues_with_tol(&p, tol);
    let mut eig: Vec<f64> = Vec::new();
    if class.is_stable {
        if let Ok(rep) = closed_form_eigenvalues_with_tol(&p, tol) {
            eig = rep.values_with_multiplicity();
        }
    }
    let cell = |k: usize| eig.get(k).map(|&r| fmt_sig(r)).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        fmt_sig(p.zeta),
        fmt_sig(p.phi),
        fmt_sig(p.xi),
        fmt_sig(p.omega),
        class.is_stable,
        class.in_upsilon,
        class.is_self_adjoint,
        class.chi.map(fmt_sig).unwrap_or_default(),
        fmt_sig(k.k_plus.norm()),
        fmt_sig(k.k_minus.norm()),
        cell(0),
        cell(1),
    )
}

pub struct SweepSummary {
    pub rows: usize,
    pub stable: usize,
}

/// Evaluate the grid with `workers` threads and write the CSV atomically:
/// rows go to a sibling temporary file that is renamed on success and
/// removed on failure.
pub fn run(grid: &Grid, out: &Path, workers: usize, tol: f64) -> Result<SweepSummary, String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| format!("thread pool: {e}"))?;
    let rows: Vec<String> = pool.install(|| {
        (0..grid.len())
            .into_par_iter()
            .map(|idx| {
                let (z, p, x, o) = grid.point(idx);
                row(z, p, x, o, tol)
            })
            .collect()
    });
    let stable = rows.iter().filter(|r| r.split(',').nth(4) == Some("true")).count();

    let tmp = temp_path(out);
    let written = (|| -> std::io::Result<()> {
        let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
        writeln!(f, "{HEADER}")?;
        for r in &rows {
            writeln!(f, "{r}")?;
        }
        f.into_inner().map_err(|e| e.into_error())?.sync_all()?;
        fs::rename(&tmp, out)
    })();
    if let Err(e) = written {
        let _ = fs::remove_file(&tmp);
        return Err(format!("writing {}: {e}", out.display()));
    }
    Ok(SweepSummary { rows: rows.len(), stable })
}

fn temp_path(out: &Path) -> PathBuf {
    let name = out.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| "sweep".into());
    out.with_file_name(format!(".{name}.partial"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parsing() {
        assert_eq!(Axis::parse("0").unwrap().0, vec![0.0]);
        assert_eq!(Axis::parse("-1:1:3").unwrap().0, vec![-1.0, 0.0, 1.0]);
        assert_eq!(Axis::parse("2:5:1").unwrap().0, vec![2.0]);
        for bad in ["", "a", "1:2", "1:2:0", "1:2:x", "1:2:3:4", "inf"] {
            assert!(Axis::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_order_is_omega_fastest() {
        let g = Grid {
            zeta: Axis(vec![0.0, 1.0]),
            phi: Axis(vec![0.5]),
            xi: Axis(vec![0.0]),
            omega: Axis(vec![0.1, 0.2]),
        };
        assert_eq!(g.len(), 4);
        assert_eq!(g.point(1), (0.0, 0.5, 0.0, 0.2));
        assert_eq!(g.point(2), (1.0, 0.5, 0.0, 0.1));
    }

    #[test]
    #[allow(clippy::approx_constant)] // π/3 as typed on a command line
    fn row_columns() {
        let r = row(0.0, std::f64::consts::FRAC_PI_4, 0.0, 0.0, 1e-9);
        let cells: Vec<&str> = r.split(',').collect();
        assert_eq!(cells.len(), HEADER.split(',').count());
        assert_eq!(cells[4], "true");
        assert_eq!(cells[7], "0.0");
        assert_eq!(cells[10], "-1.45710678119");
        assert_eq!(cells[11], "-0.0428932188135");

        let r = row(1.0, 1.0471975512, 0.0, 0.0, 1e-9);
        let cells: Vec<&str> = r.split(',').collect();
        assert_eq!(cells[4], "false");
        assert_eq!(&cells[10..], ["", ""]);
    }
}
