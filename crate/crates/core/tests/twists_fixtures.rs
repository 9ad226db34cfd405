use endoclass::arith::rational::int;
use endoclass::ingest::{synth_packet, FixtureSpec, IngestError};
use endoclass::numfield::nfpoly::sqrt_in_field;
use endoclass::numfield::NFElement;
use endoclass::twists::{
    compute_center_field, detect_inner_twists, find_frobenius_primes, recover_twist_discriminants, NewformPacket,
    TwistError, TwistOptions,
};

fn packet(base: &[i64], twists: &[&[i64]], primes: usize, seed: u64) -> NewformPacket {
    let ts = twists.iter().map(|t| t.iter().map(|&c| int(c)).collect()).collect();
    synth_packet(&FixtureSpec::new(base, ts, primes, seed)).unwrap().to_packet().unwrap()
}

fn same_square_class(a: &NFElement, b: &NFElement) -> bool {
    sqrt_in_field(&(a * b)).unwrap().is_some()
}

#[test]
fn rational_minus_one() {
    let p = packet(&[0, 1], &[&[-1]], 40, 1);
    let center = compute_center_field(&p, 5).unwrap();
    assert!(center.0.is_rationals());
    let tw = detect_inner_twists(&p, &center, &TwistOptions::default()).unwrap();
    assert_eq!(tw.order(), 2);
    let d = recover_twist_discriminants(&p, &tw).unwrap();
    assert_eq!(d.m(), 1);
    assert!(same_square_class(&d.discriminants[0], &p.base_field().elem(&[-1])));
    // χ(p) = +1 iff p ≡ 1 mod 4
    let s = d.dual_basis[0];
    for (i, t) in p.table().iter().enumerate() {
        if tw.chars[s][i] != 0 {
            assert_eq!(tw.chars[s][i] == 1, t.prime.p() % 4 == 1, "{}", t.prime);
        }
    }
    let fr = find_frobenius_primes(&p, &d).unwrap();
    let least = p.table().iter().find(|t| t.prime.p() % 4 == 3 && !t.ap.is_zero()).unwrap();
    assert_eq!(p.table()[fr[0]].prime, least.prime);
}

#[test]
fn cubic_theta_and_pairs() {
    let cubic = [1, -2, -1, 1];
    let p = packet(&cubic, &[&[0, 1, 0]], 40, 3);
    let center = compute_center_field(&p, 5).unwrap();
    let tw = detect_inner_twists(&p, &center, &TwistOptions::default()).unwrap();
    let d = recover_twist_discriminants(&p, &tw).unwrap();
    assert_eq!(d.m(), 1);
    assert!(same_square_class(&d.discriminants[0], &p.base_field().generator()));

    let p = packet(&[0, 1], &[&[-1], &[3]], 40, 7);
    let center = compute_center_field(&p, 5).unwrap();
    let tw = detect_inner_twists(&p, &center, &TwistOptions::default()).unwrap();
    assert_eq!(tw.order(), 4);
    let d = recover_twist_discriminants(&p, &tw).unwrap();
    assert_eq!(d.m(), 2);
    assert_eq!(find_frobenius_primes(&p, &d).unwrap().len(), 2);
}

#[test]
fn trivial_and_degenerate_cases() {
    let p = packet(&[0, 1], &[], 30, 2);
    let center = compute_center_field(&p, 5).unwrap();
    let tw = detect_inner_twists(&p, &center, &TwistOptions::default()).unwrap();
    assert_eq!(tw.order(), 1);
    assert_eq!(recover_twist_discriminants(&p, &tw).unwrap().m(), 0);
    let err = synth_packet(&FixtureSpec::new(&[0, 1], vec![vec![int(4)]], 30, 1)).unwrap_err();
    assert!(matches!(err, IngestError::SquareDiscriminant(_)));
    let p = packet(&[0, 1], &[&[-1]], 30, 2);
    let center = compute_center_field(&p, 5).unwrap();
    let opts = TwistOptions { min_primes: 10_000, ..Default::default() };
    assert!(matches!(detect_inner_twists(&p, &center, &opts), Err(TwistError::TooFewPrimes { .. })));
}
