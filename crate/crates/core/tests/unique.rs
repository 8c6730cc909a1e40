use bernlab::algebraics::{named_parameter, AlgebraicNumber, IntPolynomial, NamedKind, NumberTag};
use bernlab::curves::ParamRange;
use bernlab::orbits::{finite_orbit, Bernoulli, OrbitLimits};
use bernlab::unique::*;
use bernlab::words::BitSeq;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn t_n(kind: NamedKind, n: usize) -> AlgebraicNumber {
    named_parameter(kind, n).unwrap().reciprocal().unwrap()
}

/// Direct enumeration: w is a hole word iff J_w is not inside J_v for a proper prefix v (v = ε gives J).
fn brute_counts(b: &BitSeq, depth: usize) -> Vec<BigInt> {
    let bv = b.value();
    let (p, q): (i128, i128) = (bv.numer().try_into().unwrap(), bv.denom().try_into().unwrap());
    (1..=depth)
        .map(|m| {
            let n = (0i128..1 << m)
                .filter(|&w| {
                    let (l, r) = (q * w + p, q * w + q - p);
                    (0..m).all(|k| {
                        let v = w >> (m - k);
                        !(((q * v + p) << (m - k)) <= l && r <= ((q * v + q - p) << (m - k)))
                    })
                })
                .count();
            BigInt::from(n)
        })
        .collect()
}

#[test]
fn hole_counts_match_enumeration() {
    for b in ["1/3", "3/7", "7/15"] {
        let b = BitSeq::parse(b).unwrap();
        assert_eq!(hole_counts(&b, 16).unwrap(), brute_counts(&b, 16), "{b}");
    }
    let g = hole_growth(&BitSeq::parse("3/7").unwrap()).unwrap();
    assert!((g.value() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-10);
}

#[test]
fn sidorov_parameter() {
    let range = ParamRange::new(t_n(NamedKind::Doubling, 2), t_n(NamedKind::Multinacci, 2));
    let reports = two_address_scan(&range, &third_catalog(6)).unwrap();
    let two: Vec<_> = reports.iter().filter(|r| r.count == AddressCount::Two).collect();
    let last = two.last().unwrap();
    assert!((last.t.to_f64() - 0.5846).abs() < 1e-3);
    assert!(last.verified);
    for r in &reports {
        assert!(r.number_class.flags.algebraic_integer);
    }
}

#[test]
fn central_point() {
    let range = ParamRange::rational(&rat(1, 2), &rat(29, 50));
    let reports = central_point_params(&range, &central_catalog(6)).unwrap();
    let garsia = reports.iter().find(|r| (r.t.to_f64() - 0.5652).abs() < 1e-4).unwrap();
    assert_eq!(garsia.t.minpoly(), &IntPolynomial::parse("2*x^3+2*x^2-1").unwrap());
    assert_eq!(garsia.beta.minpoly(), &IntPolynomial::parse("x^3-2*x-2").unwrap());
    assert_eq!(garsia.number_class.tag, NumberTag::Garsia);
    let top = reports.last().unwrap();
    assert!((top.t.to_f64() - 0.5674).abs() < 1e-3);
    assert!(reports.iter().all(|r| r.y.to_f64() == 0.5 && r.verified));
    let upper = ParamRange::new(AlgebraicNumber::from_rational(&rat(29, 50)), t_n(NamedKind::Multinacci, 2));
    assert!(central_point_params(&upper, &central_catalog(6)).unwrap().is_empty());
}

#[test]
fn countable_meeting() {
    let cat = [BitSeq::parse("5/12").unwrap(), BitSeq::parse("8/15").unwrap()];
    let reports = two_address_scan(&ParamRange::default(), &cat).unwrap();
    let r = reports.iter().find(|r| r.count == AddressCount::Countable).unwrap();
    assert!((r.t.to_f64() - 0.5951).abs() < 1e-4);
    assert!((r.y.to_f64() - 0.463).abs() < 1e-3);
}

/// Full orbits that close give weak Perron parameters.
#[test]
fn closed_orbits_are_weak_perron() {
    let range = ParamRange::new(t_n(NamedKind::Doubling, 2), t_n(NamedKind::Multinacci, 2));
    let mut reports = two_address_scan(&range, &third_catalog(4)).unwrap();
    reports.extend(central_point_params(&ParamRange::rational(&rat(1, 2), &rat(29, 50)), &central_catalog(3)).unwrap());
    let mut closed = 0;
    for r in &reports {
        let sys = Bernoulli::new(&r.beta).unwrap();
        let g = finite_orbit(&sys, &r.y, &OrbitLimits::with_max_vertices(2000));
        if let Ok(g) = g {
            if g.closed {
                closed += 1;
                assert!(r.number_class.flags.weak_perron, "t = {}", r.t.to_f64());
            }
        }
    }
    assert!(closed > 0);
}

fn kneading_below_half() -> impl Strategy<Value = BitSeq> {
    proptest::collection::vec(0u8..2, 2..9).prop_filter_map("kneading below 1/2", |per| {
        let b = BitSeq::periodic(per).ok()?;
        (b.is_kneading() && b.value() < rat(1, 2)).then_some(b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn s_b_increases(b1 in kneading_below_half(), b2 in kneading_below_half(), pre in proptest::collection::vec(0u8..2, 0..6), per in proptest::collection::vec(0u8..2, 2..7)) {
        let (lo, hi) = if b1 < b2 { (b1, b2) } else { (b2, b1) };
        if let Ok(c) = BitSeq::new(pre, per) {
            if in_s_b(&c, &lo) {
                prop_assert!(in_s_b(&c, &hi));
            }
        }
    }

    #[test]
    fn three_way_complement(b in kneading_below_half(), pre in proptest::collection::vec(0u8..2, 0..5), per in proptest::collection::vec(0u8..2, 2..6)) {
        let h = holes(&b, 12).unwrap();
        if let Ok(c) = BitSeq::new(pre, per) {
            let v = c.value();
            let in_j = v > b.value() && v < BigRational::from_integer(1.into()) - b.value();
            prop_assert_eq!(in_s_b(&c, &b), !in_j && h.containing(&c).is_none());
        }
    }
}
