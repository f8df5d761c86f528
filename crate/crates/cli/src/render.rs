//! Human-readable and CSV renderings of the reports.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use lrh_core::ah::AhReport;
use lrh_core::hochschild::CohomologyDoc;
use lrh_core::selftest::SelftestReport;
use lrh_core::slices::Truncation;
use lrh_core::spectral::{Degeneration, SpectralReport};

pub trait Render {
    fn text(&self) -> String;
    fn csv(&self) -> String;
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CohomologyOutput {
    pub l: u32,
    pub slopes: Vec<String>,
    #[serde(flatten)]
    pub cohomology: CohomologyDoc,
    pub truncation: Truncation,
}

fn truncation_line(t: &Truncation) -> String {
    format!("truncation: N0 = {}, slack = {}, sweep up to N = {}\n", t.e_start, t.slack, t.e_max)
}

fn series(c: &[usize]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(n, v)| match n {
            0 => v.to_string(),
            1 => format!("{v}t"),
            _ => format!("{v}t^{n}"),
        })
        .collect();
    terms.join(" + ")
}

impl Render for SpectralReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "arrangement: {} lines, slopes {} (and x = 0)", self.l, self.slopes.join(", "));
        if let Some(t) = &self.t {
            let _ = writeln!(s, "t = {t}");
        }
        let _ = writeln!(s, "E2^(p,q)      p=0 p=1 p=2");
        for q in (0..3).rev() {
            let row = &self.e2[q];
            let _ = writeln!(s, "  q={q}        {:>3} {:>3} {:>3}", row[0], row[1], row[2]);
        }
        if let Some(b) = self.hh3_lower_bound {
            let _ = writeln!(s, "dim HH^3 >= {b}");
        }
        let how = match self.degeneration {
            Degeneration::Proved => "degenerates at E2, proved",
            Degeneration::NotDegenerate => "does not degenerate at E2",
            Degeneration::Assumed => "degeneration at E2 assumed",
        };
        let _ = writeln!(s, "Hilbert series: {} ({how})", series(&self.hilbert));
        if let Some(o) = &self.outer_derivations {
            let _ = writeln!(
                s,
                "outer derivations: {} ({})",
                o.count,
                if o.abelian { "abelian" } else { "non-abelian" }
            );
        }
        s + &truncation_line(&self.truncation)
    }

    fn csv(&self) -> String {
        let mut s = String::from("p,q,dim\n");
        for (q, row) in self.e2.iter().enumerate() {
            for (p, d) in row.iter().enumerate() {
                let _ = writeln!(s, "{p},{q},{d}");
            }
        }
        s
    }
}

impl Render for AhReport {
    fn text(&self) -> String {
        let w = &self.window;
        let mut s = String::new();
        let _ = writeln!(s, "A_h with h = {}", self.h);
        let _ = writeln!(s, "window: x <= {}, y <= {} (x-slack {})", w.x_max, w.y_max, w.x_slack);
        let _ = writeln!(s, "H^0(S,A_h) = {}, H^1(S,A_h) = {}", self.hochschild[0], self.hochschild[1]);
        let _ = writeln!(s, "nabla^0 ker/coker = {:?}, nabla^1 ker/coker = {:?}", self.nabla0, self.nabla1);
        let _ = writeln!(s, "HH^0, HH^1, HH^2 = {}, {}, {}", self.hh[0], self.hh[1], self.hh[2]);
        let _ = writeln!(
            s,
            "closed form (d = {}): {:?} — {}",
            self.closed_form.d,
            self.predicted,
            if self.matches { "match" } else { "MISMATCH" }
        );
        let _ = writeln!(s, "lifting and closed-form nabla agree: {}", self.nabla_agree);
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from("n,dim,predicted\n");
        for n in 0..3 {
            let _ = writeln!(s, "{n},{},{}", self.hh[n], self.predicted[n]);
        }
        s
    }
}

impl Render for SelftestReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(s, "{} {} — {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        let n = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(s, "{n}/{} checks passed", self.checks.len());
        s + &truncation_line(&self.truncation)
    }

    fn csv(&self) -> String {
        let mut s = String::from("check,passed\n");
        for c in &self.checks {
            let _ = writeln!(s, "{},{}", c.name, c.passed);
        }
        s
    }
}

impl Render for CohomologyOutput {
    fn text(&self) -> String {
        let c = &self.cohomology;
        let mut s = String::new();
        let _ = writeln!(s, "arrangement: {} lines, slopes {} (and x = 0)", self.l, self.slopes.join(", "));
        let _ = writeln!(s, "dim H^{}(S,U)_{} = {}", c.q, c.i, c.dim);
        for r in &c.representatives {
            let _ = writeln!(s, "  {r}");
        }
        s + &truncation_line(&self.truncation)
    }

    fn csv(&self) -> String {
        format!("q,i,dim\n{},{},{}\n", self.cohomology.q, self.cohomology.i, self.cohomology.dim)
    }
}
