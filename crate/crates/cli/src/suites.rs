//! Registry of verification suites and the `verify` driver.

use std::fmt;
use std::str::FromStr;
use std::thread;

use e3core::check::CheckResult;
use e3core::fixtures::Fixtures;
use e3core::heisenberg::{self, HesseData};
use e3core::{coverops, exactfield, intersection_ring, planecurves, torsion3fold};

use crate::error::{CliError, Result};
use crate::report::{CheckRecord, Report};

pub const DEFAULT_TORSION_LEVEL: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Field,
    Curves,
    Heisenberg,
    Torsion,
    Ring,
    Lattice,
    Cover,
    Exclusion,
}

impl Suite {
    /// Canonical run order.
    pub const ALL: [Suite; 8] = [
        Suite::Field,
        Suite::Curves,
        Suite::Heisenberg,
        Suite::Torsion,
        Suite::Ring,
        Suite::Lattice,
        Suite::Cover,
        Suite::Exclusion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Field => "field",
            Suite::Curves => "curves",
            Suite::Heisenberg => "heisenberg",
            Suite::Torsion => "torsion",
            Suite::Ring => "ring",
            Suite::Lattice => "lattice",
            Suite::Cover => "cover",
            Suite::Exclusion => "exclusion",
        }
    }

    pub fn run(self, fx: &Fixtures, torsion_level: u32) -> Result<Vec<CheckResult>> {
        Ok(match self {
            Suite::Field => exactfield::verify_field(),
            Suite::Curves => planecurves::verify_curves(),
            Suite::Heisenberg => {
                let d = HesseData::from_table(&fx.hesse)?;
                let mut v = heisenberg::verify_decomposition(&d);
                v.extend(heisenberg::verify_cubic_triangle_contacts(&d));
                v.extend(heisenberg::verify_cubic_pair_intersections(&d));
                v
            }
            Suite::Torsion => torsion3fold::verify_torsion(&fx.bielliptic, torsion_level),
            Suite::Ring => intersection_ring::verify_ring(&fx.e2_classes),
            Suite::Lattice => intersection_ring::verify_lattice(&fx.gram),
            Suite::Cover => coverops::verify_cover(),
            Suite::Exclusion => coverops::verify_exclusion(),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| CliError::Usage(format!("unknown suite {s:?}")))
    }
}

/// Resolves suite names, expanding `all`; the result is deduplicated and in
/// canonical order. No names means every suite.
pub fn select_suites<S: AsRef<str>>(names: &[S]) -> Result<Vec<Suite>> {
    let mut out = Vec::new();
    for n in names {
        if n.as_ref().trim() == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(n.as_ref().parse()?);
        }
    }
    if names.is_empty() {
        out.extend(Suite::ALL);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn check_torsion_level(level: u32) -> Result<()> {
    if level < 6 || level % 6 != 0 {
        return Err(CliError::Usage(format!("--torsion-level must be a positive multiple of 6, got {level}")));
    }
    Ok(())
}

/// Runs the suites on separate threads and merges their results in
/// canonical suite order, so only `millis` varies between runs.
pub fn run_verify(suites: &[Suite], torsion_level: u32, fx: &Fixtures) -> Result<Report> {
    check_torsion_level(torsion_level)?;
    let batches: Vec<Result<Vec<CheckResult>>> = thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|&suite| s.spawn(move || suite.run(fx, torsion_level))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut results = Vec::new();
    for b in batches {
        results.extend(b?.into_iter().map(CheckRecord::from));
    }
    Ok(Report::new(torsion_level, results))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_selection() {
        assert_eq!(select_suites(&["all"]).unwrap(), Suite::ALL.to_vec());
        assert_eq!(select_suites::<&str>(&[]).unwrap(), Suite::ALL.to_vec());
        assert_eq!(select_suites(&["ring", "field", "ring"]).unwrap(), vec![Suite::Field, Suite::Ring]);
        assert!(matches!(select_suites(&["nope"]), Err(CliError::Usage(_))));
    }

    #[test]
    fn torsion_level_precondition() {
        assert!(check_torsion_level(6).is_ok());
        assert!(check_torsion_level(24).is_ok());
        for bad in [0, 3, 8, 25] {
            assert!(check_torsion_level(bad).is_err());
        }
    }

    #[test]
    fn small_suites_pass() {
        let fx = Fixtures::embedded();
        let r = run_verify(&[Suite::Field, Suite::Curves, Suite::Exclusion], 24, &fx).unwrap();
        assert_eq!(r.summary.fail, 0);
        assert!(r.summary.pass > 20);
        assert_eq!(r.results.first().unwrap().suite, "field");
    }
}
