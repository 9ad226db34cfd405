//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails at the end if any criterion failed.

use std::time::{Duration, Instant};

use endoclass::arith::factor::factor_rational_poly;
use endoclass::arith::fp::factor_poly_mod_p;
use endoclass::arith::rational::int;
use endoclass::arith::{PrimeFieldPoly, Rational, RationalPoly};
use endoclass::brauer::{
    class_product, compute_endomorphism_class, compute_endomorphism_class_with, conic_solvable_oracle, hensel_threshold,
    hilbert_symbol_global, local_invariant, BrauerClass, EndomorphismReport, Invariant, PipelineOptions, Place,
};
use endoclass::ideals::{split_prime, valuation};
use endoclass::ingest::{synth_packet, FixtureSpec};
use endoclass::numfield::nfpoly::sqrt_in_field;
use endoclass::numfield::{factor_over_numberfield, NFElement, NfPoly, NumberField};
use endoclass::twists::{frobenius_candidates, NewformPacket};
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(no: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let res = f();
    let took = start.elapsed();
    let res = match (res, limit) {
        (Ok(_), Some(l)) if took > l => Err(format!("took {took:.1?}, limit {l:?}")),
        (r, _) => r,
    };
    let (tag, detail) = match &res {
        Ok(d) => ("PASS", d.clone()),
        Err(d) => ("FAIL", d.clone()),
    };
    println!("[{tag}] criterion {no} {name}: {detail} ({took:.1?})");
    res.is_ok()
}

fn rationals() -> NumberField {
    NumberField::rationals()
}

fn cubic() -> NumberField {
    NumberField::from_i64(&[1, -2, -1, 1]).unwrap()
}

fn q(n: i64) -> NFElement {
    NFElement::from_int(&rationals(), n)
}

fn rand_elem(rng: &mut ChaCha8Rng, k: &NumberField, bound: i64) -> NFElement {
    loop {
        let coords: Vec<Rational> = (0..k.degree()).map(|_| int(rng.gen_range(-bound..=bound))).collect();
        let a = k.element(coords);
        if !a.is_zero() {
            return a;
        }
    }
}

fn is_square(a: &NFElement) -> bool {
    sqrt_in_field(a).unwrap().is_some()
}

/// Every nonempty subset product of `ts` is a nonsquare.
fn independent(ts: &[NFElement]) -> bool {
    (1..1usize << ts.len()).all(|mask| {
        let k = ts[0].field();
        let prod = ts.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).fold(k.one(), |acc, (_, t)| &acc * t);
        !is_square(&prod)
    })
}

// ---------------------------------------------------------------- criterion 1

fn oracle_equivalence() -> Outcome {
    let vals = [1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -10];
    let k = rationals();
    let mut places: Vec<Place> = (2..=50u64)
        .filter(|&p| endoclass::arith::rational::is_prime_u64(p))
        .map(|p| Place::Finite(split_prime(&k, p).unwrap().remove(0)))
        .collect();
    places.push(Place::Real(0));
    let mut checked = 0;
    for &a in &vals {
        for &b in &vals {
            let (ea, eb) = (q(a), q(b));
            for v in &places {
                let prec = match v {
                    Place::Finite(p) => hensel_threshold(&ea, &eb, p).map_err(|e| e.to_string())?,
                    Place::Real(_) => 0,
                };
                let inv = local_invariant(&ea, &eb, v).map_err(|e| e.to_string())?;
                let solvable = conic_solvable_oracle(&ea, &eb, v, prec).map_err(|e| e.to_string())?;
                ensure(solvable == (inv == Invariant::Zero), || format!("({a}, {b}) at {}", v.label()))?;
                checked += 1;
            }
            let class = hilbert_symbol_global(&ea, &eb).map_err(|e| e.to_string())?;
            ensure(class.ramified_places().count() % 2 == 0, || format!("odd support for ({a}, {b})"))?;
        }
    }
    Ok(format!("{checked} local checks, {} global symbols", vals.len() * vals.len()))
}

// ---------------------------------------------------------------- criterion 2

fn symbol(a: &NFElement, b: &NFElement) -> Result<BrauerClass, String> {
    hilbert_symbol_global(a, b).map_err(|e| e.to_string())
}

fn symbol_algebra() -> Outcome {
    let fields = [
        ("Q", rationals()),
        ("Q(sqrt2)", NumberField::from_i64(&[-2, 0, 1]).unwrap()),
        ("Q(sqrt5)", NumberField::from_i64(&[-1, -1, 1]).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    for (name, k) in &fields {
        for case in 0..200 {
            let a = rand_elem(&mut rng, k, 6);
            let a2 = rand_elem(&mut rng, k, 6);
            let b = rand_elem(&mut rng, k, 6);
            let c = rand_elem(&mut rng, k, 3);
            let ctx = || format!("{name} case {case}: a={a} a'={a2} b={b} c={c}");
            let ab = symbol(&a, &b)?;
            ensure(ab == symbol(&b, &a)?, || format!("symmetry, {}", ctx()))?;
            let lhs = symbol(&(&a * &a2), &b)?;
            let rhs = class_product(&ab, &symbol(&a2, &b)?).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("bimultiplicativity, {}", ctx()))?;
            ensure(symbol(&a, &-&a)?.is_trivial(), || format!("(a,-a), {}", ctx()))?;
            if !a.is_one() {
                ensure(symbol(&a, &(&k.one() - &a))?.is_trivial(), || format!("(a,1-a), {}", ctx()))?;
            }
            ensure(symbol(&(&a * &c.square()), &b)? == ab, || format!("square class, {}", ctx()))?;
        }
    }
    Ok("600 cases over Q, Q(sqrt2), Q(sqrt5)".into())
}

// ---------------------------------------------------------------- criterion 3

struct Fixture {
    packet: NewformPacket,
    planted: Vec<NFElement>,
    report: EndomorphismReport,
}

fn plant(rng: &mut ChaCha8Rng, k: &NumberField, m: usize) -> Vec<NFElement> {
    if k.is_rationals() {
        let pool = [-1, 2, -2, 3, -3, 5, -5, 6, 7, -7, 10, 11, -11, 13, 15];
        return pool.choose_multiple(rng, m).map(|&d| q(d)).collect();
    }
    loop {
        let ts: Vec<NFElement> = (0..m).map(|_| rand_elem(rng, k, 2)).collect();
        if ts.is_empty() || independent(&ts) {
            return ts;
        }
    }
}

/// `a` and `b` generate the same subgroup of K*/K*².
fn same_square_classes(a: &[NFElement], b: &[NFElement]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    a.iter().all(|t| {
        (0..1usize << b.len()).any(|mask| {
            let prod = b.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).fold(t.clone(), |acc, (_, s)| &acc * s);
            is_square(&prod)
        })
    })
}

fn build_fixtures(base: &[i64], count: usize, seed: u64) -> Result<Vec<Fixture>, String> {
    let k = NumberField::from_i64(base).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..count {
        let m = i % 3;
        let planted = plant(&mut rng, &k, m);
        let twists = planted.iter().map(|t| t.coords().to_vec()).collect();
        let spec = FixtureSpec::new(base, twists, 40, seed * 1000 + i as u64);
        let doc = synth_packet(&spec).map_err(|e| format!("fixture {i}: synth: {e}"))?;
        let packet = doc.to_packet().map_err(|e| format!("fixture {i}: {e}"))?;
        let report = compute_endomorphism_class(&packet).map_err(|e| format!("fixture {i} (m={m}): {e}"))?;
        out.push(Fixture { packet, planted, report });
    }
    Ok(out)
}

fn planted_recovery(fixtures: &mut Vec<Fixture>) -> Outcome {
    let q_fix = build_fixtures(&[0, 1], 50, 3)?;
    let c_fix = build_fixtures(&[1, -2, -1, 1], 25, 7)?;
    fixtures.extend(q_fix);
    fixtures.extend(c_fix);
    for (i, f) in fixtures.iter().enumerate() {
        let r = &f.report;
        let m = f.planted.len();
        ensure(r.m() == m, || format!("fixture {i}: planted m={m}, recovered {}", r.m()))?;
        ensure(r.analysis.twists.order() == 1 << m, || format!("fixture {i}: |Γ| = {}", r.analysis.twists.order()))?;
        ensure(same_square_classes(&f.planted, &r.discriminants), || format!("fixture {i}: square classes differ"))?;
    }
    Ok(format!("{} fixtures (50 over Q, 25 over the cubic)", fixtures.len()))
}

// ---------------------------------------------------------------- criterion 4

fn tuples(cands: &[Vec<usize>], limit: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for c in cands {
        out = out
            .into_iter()
            .flat_map(|t| c.iter().map(move |&x| [t.clone(), vec![x]].concat()))
            .take(limit)
            .collect();
    }
    out
}

fn well_definedness(fixtures: &[Fixture]) -> Outcome {
    let mut tested = 0;
    let mut runs = 0;
    for (i, f) in fixtures.iter().enumerate() {
        let m = f.report.m();
        if m == 0 {
            continue;
        }
        let cands = frobenius_candidates(&f.packet, &f.report.analysis.discriminants).map_err(|e| e.to_string())?;
        let total: usize = cands.iter().map(|c| c.len()).product();
        if total < 3 {
            continue;
        }
        let k = f.packet.base_field();
        let scale_sets = [vec![k.one(); m], (0..m).map(|j| NFElement::from_int(k, 3 + 2 * j as i64)).collect(), vec![
            &k.generator() + &NFElement::from_int(k, 2);
            m
        ]];
        for tuple in tuples(&cands, 4) {
            let labels: Vec<String> = tuple.iter().map(|&idx| f.packet.table()[idx].prime.label()).collect();
            for scales in &scale_sets {
                if scales.iter().any(|s| s.is_zero()) {
                    continue;
                }
                let opts = PipelineOptions {
                    frobenius_override: Some(labels.clone()),
                    discriminant_scales: Some(scales.clone()),
                    ..Default::default()
                };
                let r = compute_endomorphism_class_with(&f.packet, &opts).map_err(|e| format!("fixture {i}: {e}"))?;
                ensure(r.class == f.report.class, || {
                    format!("fixture {i}: {labels:?} gives {} instead of {}", r.class, f.report.class)
                })?;
                runs += 1;
            }
        }
        tested += 1;
    }
    ensure(tested >= 5, || format!("only {tested} fixtures have at least 3 Frobenius tuples"))?;
    Ok(format!("{tested} fixtures, {runs} alternative runs"))
}

// ---------------------------------------------------------------- criterion 5

fn rational_fixture(radicand: i64) -> Result<EndomorphismReport, String> {
    let mut spec = FixtureSpec::new(&[0, 1], vec![vec![int(-1)]], 40, 1);
    spec.radicands = Some(vec![radicand]);
    let packet = synth_packet(&spec).and_then(|d| Ok(d.to_packet()?)).map_err(|e| e.to_string())?;
    compute_endomorphism_class(&packet).map_err(|e| e.to_string())
}

fn direct_product(r: &EndomorphismReport) -> Result<BrauerClass, String> {
    let f = &r.analysis.center;
    let mut class = BrauerClass::trivial(f);
    for (t, sym) in r.discriminants.iter().zip(&r.symbols) {
        let t_f = NFElement::from_rational(f, t.as_rational().ok_or("t is not rational")?);
        class = class_product(&class, &symbol(&t_f, &sym.ap_squared)?).map_err(|e| e.to_string())?;
    }
    Ok(class)
}

fn quer_specialization(fixtures: &[Fixture]) -> Outcome {
    let mut n = 0;
    for (i, f) in fixtures.iter().filter(|f| f.packet.base_field().is_rationals()).enumerate() {
        let direct = direct_product(&f.report)?;
        ensure(direct == f.report.class, || format!("fixture {i}: direct {direct} vs pipeline {}", f.report.class))?;
        n += 1;
    }
    let r = rational_fixture(2)?;
    ensure(r.class.is_trivial(), || format!("(-1, 2) gave {}", r.class))?;
    ensure(direct_product(&r)? == r.class, || "(-1, 2) direct product differs".into())?;
    let r = rational_fixture(3)?;
    ensure(r.class.labels() == ["2.0", "3.0"], || format!("(-1, 3) gave {}", r.class))?;
    ensure(direct_product(&r)? == r.class, || "(-1, 3) direct product differs".into())?;
    Ok(format!("{n} fixtures over Q plus both endpoint cases"))
}

// ---------------------------------------------------------------- criterion 6

fn structural(fixtures: &[Fixture]) -> Outcome {
    for (i, f) in fixtures.iter().enumerate() {
        let r = &f.report;
        ensure(r.class.ramified_places().count() % 2 == 0, || format!("fixture {i}: odd support"))?;
        for s in &r.symbols {
            ensure(s.class.ramified_places().count() % 2 == 0, || format!("fixture {i}: odd symbol support"))?;
        }
        let emb = &r.analysis.center_embedding;
        let tw = &r.analysis.twists;
        for (idx, e) in f.packet.table().iter().enumerate() {
            let sq = e.ap.square();
            let pulled = emb.preimage(&sq).ok_or_else(|| format!("fixture {i}: a_p^2 outside F at {}", e.prime))?;
            ensure(emb.apply(&pulled) == sq, || format!("fixture {i}: a_p^2 round trip at {}", e.prime))?;
            if e.ap.is_zero() {
                continue;
            }
            let trivial = tw.chars.iter().all(|row| row[idx] == 1);
            ensure(emb.contains(&e.ap) == trivial, || format!("fixture {i}: a_p in F vs characters at {}", e.prime))?;
        }
    }
    Ok(format!("{} runs", fixtures.len()))
}

// ---------------------------------------------------------------- criterion 7

fn rand_poly(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> RationalPoly {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    c.push(rng.gen_range(1..=3));
    RationalPoly::from_i64(&c)
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| endoclass::arith::rational::is_prime_u64(p)).collect()
}

/// Discriminant of x³ + b x² + c x + d.
fn cubic_disc(b: i64, c: i64, d: i64) -> i64 {
    b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d
}

fn real_roots_oracle(coeffs: &[i64]) -> usize {
    let n = coeffs.len() - 1;
    let sparse = coeffs[1..n].iter().all(|&c| c == 0);
    match n {
        2 => {
            if coeffs[1] * coeffs[1] - 4 * coeffs[0] > 0 {
                2
            } else {
                0
            }
        }
        3 => {
            if cubic_disc(coeffs[2], coeffs[1], coeffs[0]) > 0 {
                3
            } else {
                1
            }
        }
        _ if sparse => match (n % 2, coeffs[0] < 0) {
            (1, _) => 1,
            (0, true) => 2,
            _ => 0,
        },
        4 if coeffs[1] == 0 && coeffs[3] == 0 => {
            // y² + a y + b with y = x²
            let (a, b) = (coeffs[2], coeffs[0]);
            if a * a - 4 * b < 0 {
                0
            } else if b < 0 {
                2
            } else if a < 0 {
                4
            } else {
                0
            }
        }
        _ => unreachable!("no oracle for {coeffs:?}"),
    }
}

fn substrate() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    for case in 0..100 {
        let f = (0..rng.gen_range(1..=3)).fold(RationalPoly::one(), |acc, _| {
            let d = rng.gen_range(1..=3);
            &acc * &rand_poly(&mut rng, d, 5)
        });
        let fac = factor_rational_poly(&f).map_err(|e| e.to_string())?;
        ensure(fac.expand() == f, || format!("Q factorization {case} does not reconstruct {f}"))?;
        for (g, _) in &fac.factors {
            let again = factor_rational_poly(g).map_err(|e| e.to_string())?;
            ensure(again.factors.len() == 1 && again.factors[0].1 == 1, || format!("factor {g} is reducible"))?;
        }
    }

    for case in 0..100 {
        let p = *[2u64, 3, 5, 7, 11, 101, 65537].choose(&mut rng).unwrap();
        let deg = rng.gen_range(1..=8);
        let mut c: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
        c.push(1);
        let f = PrimeFieldPoly::new(p, c);
        let fac = factor_poly_mod_p(&f).map_err(|e| e.to_string())?;
        let prod = fac.iter().fold(PrimeFieldPoly::one(p), |acc, (g, e)| (0..*e).fold(acc, |a, _| a.mul(g)));
        ensure(prod == f, || format!("mod {p} factorization {case} does not reconstruct"))?;
        ensure(fac.iter().all(|(g, _)| g.is_irreducible()), || format!("mod {p} case {case}: reducible factor"))?;
    }

    let nf = [
        NumberField::from_i64(&[-2, 0, 1]).unwrap(),
        NumberField::from_i64(&[1, 0, 1]).unwrap(),
        cubic(),
    ];
    for case in 0..60 {
        let k = &nf[case % nf.len()];
        let f = loop {
            let d = rng.gen_range(2..=4);
            let g = rand_poly(&mut rng, d, 4).monic();
            if g.is_squarefree() {
                break g;
            }
        };
        let fs = factor_over_numberfield(&f, k).map_err(|e| e.to_string())?;
        let prod = fs.iter().fold(NfPoly::constant(k.one()), |acc, h| acc.mul(h));
        ensure(prod == NfPoly::from_rational_poly(k, &f), || format!("factorization of {f} over K{case} fails"))?;
        let over_q = factor_rational_poly(&f).map_err(|e| e.to_string())?.factors.len();
        ensure(fs.len() >= over_q, || format!("{f} has fewer factors over K than over Q"))?;
    }

    let split_fields: Vec<NumberField> =
        [&[-2, 0, 1][..], &[1, 0, 1], &[-1, -1, 1], &[1, -2, -1, 1], &[-2, 0, 0, 1]]
            .iter()
            .map(|c| NumberField::from_i64(c).unwrap())
            .collect();
    let ps = primes_up_to(547);
    let mut pairs = 0;
    for k in &split_fields {
        for &p in ps.iter().take(100) {
            let primes = split_prime(k, p).map_err(|e| format!("split {p}: {e}"))?;
            let sum: u32 = primes.iter().map(|pr| pr.e() * pr.f()).sum();
            ensure(sum as usize == k.degree(), || format!("sum ef = {sum} for {p} in degree {}", k.degree()))?;
            let pe = NFElement::from_int(k, p as i64);
            for pr in &primes {
                let v = valuation(&pe, pr).map_err(|e| e.to_string())?;
                ensure(v == pr.e() as i64, || format!("v_P({p}) = {v} but e = {}", pr.e()))?;
            }
            pairs += 1;
        }
    }
    ensure(pairs >= 500, || format!("only {pairs} splitting pairs"))?;

    let norm_fields = [cubic(), NumberField::from_i64(&[-2, 0, 1]).unwrap(), NumberField::from_i64(&[1, 0, -10, 0, 1]).unwrap()];
    for case in 0..200 {
        let k = &norm_fields[case % norm_fields.len()];
        let a = rand_elem(&mut rng, k, 7);
        let b = rand_elem(&mut rng, k, 7);
        ensure((&a * &b).norm() == a.norm() * b.norm(), || format!("N(ab) != N(a)N(b) for {a}, {b}"))?;
        let res = k.poly().resultant(&a.to_poly()).map_err(|e| e.to_string())?;
        ensure(res == a.norm(), || format!("N({a}) disagrees with the resultant"))?;
    }

    let sturm_cases: [&[i64]; 20] = [
        &[-2, 0, 1],
        &[1, 0, 1],
        &[-1, -1, 1],
        &[1, 1, 1],
        &[-3, 0, 1],
        &[1, -2, -1, 1],
        &[-2, 0, 0, 1],
        &[-1, -3, 0, 1],
        &[-1, -1, 0, 1],
        &[1, 1, 0, 1],
        &[-2, 0, 0, 0, 1],
        &[-3, 0, 0, 0, 0, 1],
        &[2, 0, 0, 0, 1],
        &[-5, 0, 0, 0, 0, 0, 1],
        &[2, 0, 0, 0, 0, 1],
        &[1, 0, -10, 0, 1],
        &[1, 0, 0, 0, 1],
        &[-1, 0, -1, 0, 1],
        &[2, 0, 4, 0, 1],
        &[2, 0, -4, 0, 1],
    ];
    for c in sturm_cases {
        let k = NumberField::from_i64(c).map_err(|e| format!("{c:?}: {e}"))?;
        let expected = real_roots_oracle(c);
        ensure(k.real_place_count() == expected, || {
            format!("{c:?}: Sturm gives {} real places, oracle {expected}", k.real_place_count())
        })?;
        let disc = k.poly_discriminant().clone();
        // sign of the discriminant is (-1)^(complex pairs)
        let pairs = (c.len() - 1 - expected) / 2;
        ensure(disc.is_negative() == (pairs % 2 == 1), || format!("{c:?}: discriminant sign"))?;
    }

    Ok(format!("300 factorizations (Q, F_p, number fields), {pairs} splittings, 200 norm pairs, 20 Sturm fields"))
}

#[test]
fn acceptance() {
    let mut fixtures = Vec::new();
    let results = [
        run(1, "oracle equivalence", Some(Duration::from_secs(60)), oracle_equivalence),
        run(2, "symbol algebra", None, symbol_algebra),
        run(3, "planted-twist recovery", Some(Duration::from_secs(300)), || planted_recovery(&mut fixtures)),
        run(4, "well-definedness", None, || well_definedness(&fixtures)),
        run(5, "K = Q specialization", None, || quer_specialization(&fixtures)),
        run(6, "structural guarantees", None, || structural(&fixtures)),
        run(7, "substrate exactness", Some(Duration::from_secs(120)), substrate),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    assert!(results.iter().all(|&ok| ok));
}
