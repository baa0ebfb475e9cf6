use std::time::Instant;

use e3core::check::Status;
use e3core::fixtures::Fixtures;
use e3core::heisenberg::{verify_cubic_pair_intersections, verify_cubic_triangle_contacts, HesseData};

fn data() -> HesseData {
    HesseData::from_table(&Fixtures::embedded().hesse).unwrap()
}

#[test]
fn all_32_contact_checks_pass_quickly() {
    let t = Instant::now();
    let r = verify_cubic_triangle_contacts(&data());
    assert!(t.elapsed().as_secs() < 10);
    assert_eq!(r.len(), 32);
    for c in &r {
        assert_eq!(c.status, Status::Pass, "{}: expected {} got {}", c.check_id, c.expected, c.actual);
    }
    assert_eq!(r.iter().filter(|c| c.expected.starts_with("contains")).count(), 24);
}

#[test]
fn all_28_pair_checks_pass() {
    let r = verify_cubic_pair_intersections(&data());
    assert_eq!(r.len(), 28);
    for c in &r {
        assert_eq!(c.status, Status::Pass, "{}: expected {} got {}", c.check_id, c.expected, c.actual);
    }
}

#[test]
fn opposite_pair_profile() {
    let r = verify_cubic_pair_intersections(&data());
    let c = r.iter().find(|c| c.check_id == "cubic-pair/C(0,1)xC(0,2)").unwrap();
    assert_eq!(c.actual, "T(1,0):1,1,1 T(1,2):1,1,1 T(0,1):0,0,0 T(1,1):1,1,1; total 9");
}
