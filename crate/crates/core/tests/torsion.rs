use std::collections::BTreeSet;

use e3core::check::Status;
use e3core::fixtures::Fixtures;
use e3core::torsion3fold::*;

#[test]
fn full_suite_passes_at_search_level() {
    let fx = Fixtures::embedded();
    let rs = verify_torsion(&fx.bielliptic, SEARCH_LEVEL);
    let failed: Vec<_> = rs.iter().filter(|r| r.status != Status::Pass).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert!(rs.len() > 90);
}

#[test]
fn low_level_skips_enumeration() {
    let fx = Fixtures::embedded();
    let rs = verify_torsion(&fx.bielliptic, 12);
    assert!(rs.iter().all(|r| r.status != Status::Fail));
    let skipped: Vec<_> = rs.iter().filter(|r| r.status == Status::Skip).collect();
    assert!(!skipped.is_empty());
    assert!(skipped.iter().all(|r| r.actual.starts_with("INSUFFICIENT_LEVEL")));
    assert!(rs.iter().any(|r| r.check_id.starts_with("bielliptic/") && r.status == Status::Pass));
}

#[test]
fn erratum_cell_is_flagged_and_confirmed() {
    let fx = Fixtures::embedded();
    let cells = read_bielliptic_table(&fx.bielliptic).unwrap();
    assert_eq!(cells.len(), 56);
    let fixed: Vec<_> = cells.iter().filter(|c| c.erratum.is_some()).collect();
    assert_eq!(fixed.len(), 1);
    let c = fixed[0];
    assert_eq!((c.row, c.col), (5, 1));
    assert_ne!(c.printed, bielliptic_rule(5, 1));
    assert_eq!(c.erratum.as_ref(), Some(&bielliptic_rule(5, 1)));
}

#[test]
fn base_locus_terms() {
    let terms = expand_base_locus(SEARCH_LEVEL).unwrap();
    assert_eq!(terms.len(), 256);
    let nonempty: Vec<_> = terms.iter().filter(|t| !t.points.is_empty()).collect();
    // only terms with six surfaces and two divisors D_u contribute
    assert!(nonempty.iter().all(|t| t.surfaces.len() == 6));
    let from_six: BTreeSet<Triple> = nonempty.iter().flat_map(|t| t.points.iter().copied()).collect();
    assert_eq!(from_six, expected_base_points());
    assert!(terms.iter().filter(|t| t.surfaces.len() == 5).all(|t| t.points.is_empty()));
}
