use fliftlab::catalog::make_rdp;
use fliftlab::criteria::{classify_hypersurface, ClassifyOptions, Status};
use fliftlab::fp_poly::{parse_poly, Ring};

#[test]
fn e8_1_p5_fpure_not_liftable() {
    let r = Ring::new(&["x", "y", "z"], 5).unwrap();
    let f = parse_poly("z^2 + x^3 + y^5 + x*y^4", &r).unwrap();
    assert_eq!(make_rdp("E_8^1", 5, &[]).unwrap(), f);
    let rep = classify_hypersurface(&f, &ClassifyOptions::default()).unwrap();
    assert_eq!(rep.status, Status::Classified);
    assert!(rep.f_pure());
    assert!(!rep.f_liftable());
    assert!(rep.conclusive());
    assert!(!rep.certificate.localized);
}

#[test]
fn e8_0_p5_is_neither() {
    let f = make_rdp("E_8^0", 5, &[]).unwrap();
    let rep = classify_hypersurface(&f, &ClassifyOptions::default()).unwrap();
    assert!(!rep.f_pure() && !rep.f_liftable());
}

#[test]
fn e8_at_p7_is_liftable() {
    let f = make_rdp("E_8", 7, &[]).unwrap();
    let rep = classify_hypersurface(&f, &ClassifyOptions::default()).unwrap();
    assert!(rep.f_pure() && rep.f_liftable());
}

#[test]
fn exception_carries_a_nonzero_remainder() {
    let f = make_rdp("E_8^1", 5, &[]).unwrap();
    let opts = ClassifyOptions {
        certificates: true,
        ..Default::default()
    };
    let rep = classify_hypersurface(&f, &opts).unwrap();
    let json = rep.to_json(false);
    let c = &json.certificate;
    assert!(c.fedder_survivor.is_some());
    assert!(c.cofactors.is_none());
    assert!(c.remainder.iter().any(|r| r != "0"));
    assert!(json.recheck_hypersurface().is_err());
}
