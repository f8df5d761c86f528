//! The `E₂` page `E₂^{p,q} = H^p_S(L, H^q(S,U))`, its anti-diagonal sums and
//! the degeneration verdict for three lines.

mod outer;
mod xcomplex;

pub use outer::{independent_mod_inner, outer_derivation, outer_derivation_check, Derivation, OuterDerivationReport};
pub use xcomplex::{hh3_lower_bound, Hh3Report, XCochain, XComplex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hochschild::Koszul;
use crate::lr_ce::lr_row;
use crate::par::Exec;
use crate::pbw::{Algebra, ArrangementSpec};
use crate::ratmat::format_rational;
use crate::slices::{StabilizationCertificate, Truncation};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct E2Table {
    pub l: u32,
    pub slopes: Vec<String>,
    /// `grid[q][p]`.
    pub grid: [[usize; 3]; 3],
    /// One certificate per row; it covers the row's three cells.
    pub certificates: Vec<StabilizationCertificate>,
}

impl E2Table {
    pub fn cell(&self, p: usize, q: usize) -> usize {
        self.grid[q][p]
    }

    /// `Σ_{p+q=n} E₂^{p,q}` for `n = 0..=4`.
    pub fn antidiagonals(&self) -> [usize; 5] {
        let mut s = [0; 5];
        for (q, row) in self.grid.iter().enumerate() {
            for (p, d) in row.iter().enumerate() {
                s[p + q] += d;
            }
        }
        s
    }
}

/// Rows computed as independent jobs.
pub fn e2_table(spec: &ArrangementSpec, trunc: Truncation, exec: Exec) -> Result<E2Table> {
    let k = Koszul::new(Algebra::lines(spec.clone()));
    let rows = exec.try_map(&[0u32, 1, 2], |&q| lr_row(&k, q, trunc, exec))?;
    let mut grid = [[0; 3]; 3];
    let mut certificates = Vec::new();
    for (q, (r, c)) in rows.into_iter().enumerate() {
        grid[q] = r.dims;
        certificates.push(c);
    }
    Ok(E2Table {
        l: spec.line_count(),
        slopes: spec.slopes().iter().map(format_rational).collect(),
        grid,
        certificates,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Degeneration {
    /// Ruled out by `hh3 = Σ_{p+q=3} E₂^{p,q}`.
    Proved,
    /// `hh3` is below the `E₂` bound: `d₂^{0,2}` is nonzero.
    NotDegenerate,
    /// No `HH³` information; series reported under the hypothesis.
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub coefficients: Vec<usize>,
    pub degeneration: Degeneration,
}

impl HilbertSeries {
    pub fn degenerate(&self) -> bool {
        self.degeneration != Degeneration::NotDegenerate
    }
}

/// Dimensions of `HH^n(U)` for `n = 0..=3`. The only differential that can be
/// nonzero in a grid with `E₂^{0,1} = 0` is `d₂^{0,2} : E₂^{0,2} → E₂^{2,1}`;
/// its rank is `Σ_{p+q=3} E₂ − hh3`, and it lowers both the degree-2 and the
/// degree-3 totals.
pub fn hilbert_series(table: &E2Table, hh3: Option<usize>) -> Result<HilbertSeries> {
    let sums = table.antidiagonals();
    let mut coefficients = sums[..4].to_vec();
    let degeneration = match hh3 {
        None => Degeneration::Assumed,
        Some(h) if h > sums[3] => return Err(Error::InconsistentHh3 { hh3: h, bound: sums[3] }),
        Some(h) if h == sums[3] => Degeneration::Proved,
        Some(h) => {
            let r = sums[3] - h;
            if r > table.cell(0, 2).min(table.cell(2, 1)) || table.cell(0, 1) != 0 {
                return Err(Error::InconsistentHh3 { hh3: h, bound: sums[3] });
            }
            coefficients[2] -= r;
            coefficients[3] -= r;
            Degeneration::NotDegenerate
        }
    };
    Ok(HilbertSeries {
        coefficients,
        degeneration,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuterSummary {
    pub count: usize,
    pub abelian: bool,
}

/// The machine-readable summary of one arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub l: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<String>,
    pub slopes: Vec<String>,
    #[serde(rename = "E2")]
    pub e2: [[usize; 3]; 3],
    pub hilbert: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hh3_lower_bound: Option<usize>,
    pub degenerate: bool,
    pub degeneration: Degeneration,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub outer_derivations: Option<OuterSummary>,
    pub truncation: Truncation,
}

/// Everything for three lines: table, `HH³` bound, series and outer derivations.
#[derive(Clone, Debug)]
pub struct ThreeLinesRun {
    pub table: E2Table,
    pub hh3: Hh3Report,
    pub hilbert: HilbertSeries,
    pub outer: OuterDerivationReport,
    pub report: SpectralReport,
}

pub fn three_lines(spec: &ArrangementSpec, trunc: Truncation, exec: Exec) -> Result<ThreeLinesRun> {
    if spec.line_count() != 3 {
        return Err(Error::InvalidSpec("three_lines needs exactly three lines".into()));
    }
    let alg = Algebra::lines(spec.clone());
    let (table, hh3) = exec.join(|| e2_table(spec, trunc, exec), || hh3_lower_bound(&alg, trunc, exec));
    let (table, hh3) = (table?, hh3?);
    let hilbert = hilbert_series(&table, Some(hh3.lower_bound))?;
    let outer = outer_derivation_check(&alg, trunc.e_start)?;
    let report = SpectralReport {
        l: 3,
        t: Some(format_rational(&spec.slopes()[1])),
        slopes: table.slopes.clone(),
        e2: table.grid,
        hilbert: hilbert.coefficients.clone(),
        hh3_lower_bound: Some(hh3.lower_bound),
        degenerate: hilbert.degenerate(),
        degeneration: hilbert.degeneration,
        outer_derivations: Some(OuterSummary {
            count: outer.count,
            abelian: outer.abelian,
        }),
        truncation: trunc,
    };
    Ok(ThreeLinesRun {
        table,
        hh3,
        hilbert,
        outer,
        report,
    })
}

/// Table and series for any arrangement, under the degeneration hypothesis.
pub fn lines(spec: &ArrangementSpec, trunc: Truncation, exec: Exec) -> Result<(E2Table, SpectralReport)> {
    let table = e2_table(spec, trunc, exec)?;
    let hilbert = hilbert_series(&table, None)?;
    let report = SpectralReport {
        l: spec.line_count(),
        t: None,
        slopes: table.slopes.clone(),
        e2: table.grid,
        hilbert: hilbert.coefficients,
        hh3_lower_bound: None,
        degenerate: true,
        degeneration: Degeneration::Assumed,
        outer_derivations: None,
        truncation: trunc,
    };
    Ok((table, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(grid: [[usize; 3]; 3]) -> E2Table {
        E2Table {
            l: 3,
            slopes: vec![],
            grid,
            certificates: vec![],
        }
    }

    const THREE: [[usize; 3]; 3] = [[1, 3, 2], [0, 3, 3], [1, 1, 0]];

    #[test]
    fn series_from_the_three_line_table() {
        let t = table(THREE);
        let s = hilbert_series(&t, Some(4)).unwrap();
        assert_eq!(s.coefficients, vec![1, 3, 6, 4]);
        assert_eq!(s.degeneration, Degeneration::Proved);
        let s = hilbert_series(&t, Some(3)).unwrap();
        assert_eq!(s.coefficients, vec![1, 3, 5, 3]);
        assert!(!s.degenerate());
        assert!(matches!(hilbert_series(&t, Some(5)), Err(Error::InconsistentHh3 { .. })));
        assert!(hilbert_series(&t, Some(1)).is_err());
    }

    #[test]
    fn zero_table() {
        let s = hilbert_series(&table([[0; 3]; 3]), Some(0)).unwrap();
        assert_eq!(s.coefficients, vec![0, 0, 0, 0]);
    }

    #[test]
    fn report_serializes_with_expected_keys() {
        let r = SpectralReport {
            l: 3,
            t: Some("1".into()),
            slopes: vec!["0".into(), "1".into()],
            e2: THREE,
            hilbert: vec![1, 3, 6, 4],
            hh3_lower_bound: Some(4),
            degenerate: true,
            degeneration: Degeneration::Proved,
            outer_derivations: Some(OuterSummary { count: 3, abelian: true }),
            truncation: Truncation::default(),
        };
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["E2"], serde_json::json!([[1, 3, 2], [0, 3, 3], [1, 1, 0]]));
        assert_eq!(v["outer_derivations"]["count"], 3);
        assert_eq!(serde_json::from_value::<SpectralReport>(v).unwrap(), r);
    }
}
