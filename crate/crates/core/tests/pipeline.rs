use endoclass::arith::rational::int;
use endoclass::brauer::{compute_endomorphism_class, compute_endomorphism_class_with, hilbert_symbol_global, PipelineOptions, Stage};
use endoclass::ingest::{synth_packet, FixtureSpec};
use endoclass::twists::NewformPacket;

fn fixture(base: &[i64], twists: &[&[i64]], radicands: Option<Vec<i64>>, seed: u64) -> NewformPacket {
    let ts = twists.iter().map(|t| t.iter().map(|&c| int(c)).collect()).collect();
    let mut spec = FixtureSpec::new(base, ts, 40, seed);
    spec.radicands = radicands;
    synth_packet(&spec).unwrap().to_packet().unwrap()
}

#[test]
fn quer_endpoint_cases() {
    let p = fixture(&[0, 1], &[&[-1]], Some(vec![2]), 1);
    let r = compute_endomorphism_class(&p).unwrap();
    assert_eq!(r.m(), 1);
    assert!(r.class.is_trivial());
    let p = fixture(&[0, 1], &[&[-1]], Some(vec![3]), 1);
    let r = compute_endomorphism_class(&p).unwrap();
    assert_eq!(r.class.labels(), vec!["2.0", "3.0"]);
    let direct = hilbert_symbol_global(&r.discriminants[0], &r.symbols[0].ap_squared).unwrap();
    assert_eq!(direct, r.class);
}

#[test]
fn m0_is_trivial() {
    let p = fixture(&[0, 1], &[], None, 5);
    let r = compute_endomorphism_class(&p).unwrap();
    assert_eq!(r.m(), 0);
    assert!(r.class.is_trivial());
}

#[test]
fn cubic_base_field() {
    let p = fixture(&[1, -2, -1, 1], &[&[0, 1, 0], &[-1, 0, 0]], None, 11);
    let r = compute_endomorphism_class(&p).unwrap();
    assert_eq!(r.m(), 2);
    assert_eq!(r.tower.relative_degree(), 3);
    assert_eq!(r.class.labels().len() % 2, 0);
}

#[test]
fn bad_override_names_stage() {
    let p = fixture(&[0, 1], &[&[-1]], None, 1);
    let opts = PipelineOptions { frobenius_override: Some(vec!["5.0".into()]), ..Default::default() };
    let err = compute_endomorphism_class_with(&p, &opts).unwrap_err();
    assert_eq!(err.stage, Stage::FrobeniusPrimes);
}
