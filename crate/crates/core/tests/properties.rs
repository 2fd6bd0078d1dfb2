use erdos_straus_core::{
    build_witness, compare_series, discriminant, enumerate_triples, find_first_witness, isqrt,
    isqrt_u128, perfect_square_root, rat_add, scan_range, t_min, tail_bound, verify_witness,
    x_lower_bound, zeta_partial, BigRat, Instance, SearchConfig, Strategy as SearchStrategy,
    Triple,
};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn seed() -> u64 {
    std::env::var("ERDOS_STRAUS_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(seed()),
        ..ProptestConfig::default()
    }
}

fn nat(v: u64) -> BigUint {
    BigUint::from(v)
}

fn big_nat() -> impl Strategy<Value = BigUint> {
    prop::collection::vec(any::<u8>(), 0..=32).prop_map(|bytes| BigUint::from_bytes_le(&bytes))
}

fn rat() -> impl Strategy<Value = BigRat> {
    (any::<i64>(), 1..u64::MAX)
        .prop_map(|(n, d)| BigRat::new(BigInt::from(n), BigInt::from(d)).unwrap())
}

proptest! {
    #![proptest_config(config(2_000))]

    #[test]
    fn isqrt_brackets(m in big_nat()) {
        let r = isqrt(&m);
        prop_assert!(&r * &r <= m);
        let r1 = &r + 1u32;
        prop_assert!(&r1 * &r1 > m);
    }

    #[test]
    fn isqrt_u128_brackets(m in any::<u128>()) {
        let r = isqrt_u128(m);
        prop_assert!(r * r <= m);
        prop_assert!((r + 1).checked_mul(r + 1).is_none_or(|sq| sq > m));
    }

    #[test]
    fn perfect_squares_recognised(k in big_nat()) {
        let sq = &k * &k;
        prop_assert_eq!(perfect_square_root(&sq), Some(k.clone()));
        if k > nat(0) {
            prop_assert_eq!(perfect_square_root(&(sq + 1u32)), None);
        }
    }

    #[test]
    fn rat_add_associative_commutative(a in rat(), b in rat(), c in rat()) {
        let left = rat_add(&rat_add(&a, &b), &c);
        let right = rat_add(&a, &rat_add(&b, &c));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(rat_add(&a, &b), rat_add(&b, &a));
        prop_assert!(left.is_canonical());
    }
}

proptest! {
    #![proptest_config(config(4_000))]

    /// Everything `build_witness` hands out satisfies every relation.
    #[test]
    fn built_witnesses_verify(n in 2u64..5_000, dx in 0u64..200, dt in 0u64..600) {
        let big_n = nat(n);
        let x = x_lower_bound(&big_n) + dx;
        let t = t_min(&big_n, &x) + dt;
        let delta = discriminant(&big_n, &x, &t);
        let built = build_witness(&big_n, &x, &t);

        let square = delta.to_biguint().and_then(|d| perfect_square_root(&d));
        prop_assert_eq!(built.is_some(), square.is_some());
        let Some(w) = built else { return Ok(()) };
        prop_assert_eq!(Some(w.q.clone()), square);
        prop_assert!(verify_witness(&big_n, &w));

        let four_over_n = BigRat::new(4.into(), n.into()).unwrap();
        // 1/x < 4/N
        prop_assert!(BigRat::unit(&w.x) < four_over_n);
        // 1/y + 1/z < 8/N
        let yz = BigRat::unit(&w.y) + BigRat::unit(&w.z);
        prop_assert!(yz < BigRat::new(8.into(), n.into()).unwrap());
        // 1/y + 1/z = (4x − N)/(N·x)
        let gap = BigInt::from(4u32) * BigInt::from(w.x.clone()) - BigInt::from(n);
        let conj = BigRat::new(gap, BigInt::from(&big_n * &w.x)).unwrap();
        prop_assert_eq!(yz, conj);
    }

    #[test]
    fn tampered_witnesses_fail(n in 2u64..2_000, field in 0usize..5, bump in 1u64..5) {
        let inst = Instance::new(n, 1).unwrap();
        // a few n (1201 is the first) have no witness within the default bounds
        let found = find_first_witness(&inst, &SearchConfig::default());
        prop_assume!(found.is_some());
        let mut w = found.unwrap();
        match field {
            0 => w.x += bump,
            1 => w.t += bump,
            2 => w.q += bump,
            3 => w.y += bump,
            _ => w.z += bump,
        }
        prop_assert!(!verify_witness(&nat(n), &w));
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn shrinking_bounds_never_creates_witnesses(
        n in 2u64..400,
        s in 1u32..3,
        m in 1u64..4,
        w in 1u64..30,
        dm in 0u64..4,
        dw in 0u64..30,
    ) {
        let inst = Instance::new(n, s).unwrap();
        let small = SearchConfig { x_multiplier: m, t_window: w, ..SearchConfig::default() };
        let large = SearchConfig { x_multiplier: m + dm, t_window: w + dw, ..SearchConfig::default() };
        if find_first_witness(&inst, &large).is_none() {
            prop_assert!(find_first_witness(&inst, &small).is_none());
        }
    }
}

#[test]
fn smallest_x_agrees_with_first_found_on_x() {
    let first = SearchConfig::default();
    let smallest = SearchConfig {
        strategy: SearchStrategy::SmallestX,
        ..first
    };
    for n in 2..=100 {
        let inst = Instance::new(n, 1).unwrap();
        let a = find_first_witness(&inst, &first).unwrap();
        let b = find_first_witness(&inst, &smallest).unwrap();
        assert_eq!(a.x, b.x, "n = {n}");
        assert!(b.z <= a.z);
        assert!(verify_witness(inst.denominator(), &b));
    }
}

#[test]
fn search_is_deterministic() {
    let cfg = SearchConfig::default();
    let a = scan_range(2, 60, 2, &cfg).unwrap();
    let b = scan_range(2, 60, 2, &cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn scan_report_accounting() {
    let cfg = SearchConfig {
        x_multiplier: 1,
        t_window: 2,
        ..SearchConfig::default()
    };
    let r = scan_range(2, 80, 1, &cfg).unwrap();
    assert_eq!(r.captured + r.failed_n.len() as u64, r.total());
    assert_eq!(r.success_rate, 100.0 * r.captured as f64 / r.total() as f64);
    assert!(!r.failed_n.is_empty(), "tight bounds should miss some n");
    for o in &r.outcomes {
        if let Some(w) = &o.witness {
            assert!(verify_witness(&nat(o.n), w));
        }
    }
}

#[test]
fn zeta_partial_monotone() {
    for s in 2..6 {
        for n_max in 2..40 {
            assert!(zeta_partial(s, n_max + 1) > zeta_partial(s, n_max));
            assert!(zeta_partial(s + 1, n_max) < zeta_partial(s, n_max));
        }
    }
}

/// 1.2020569031595942853997381615114 (Apéry's constant) minus one, 31 digits.
fn zeta3_minus_one_interval() -> (BigRat, BigRat) {
    let digits: BigInt = "2020569031595942853997381615114".parse().unwrap();
    let scale = BigInt::from(10u32).pow(31);
    let lo = BigRat::new(digits.clone(), scale.clone()).unwrap();
    let hi = BigRat::new(digits + 1, scale).unwrap();
    (lo, hi)
}

#[test]
fn zeta3_partial_sums_bracket_reference() {
    let (lo, hi) = zeta3_minus_one_interval();
    for n_max in [2u64, 10, 150, 1_000] {
        let partial = zeta_partial(3, n_max);
        assert!(partial < lo);
        assert!(&partial + &tail_bound(3, n_max).unwrap() > hi);
    }
}

#[test]
fn identity_holds_for_many_exponents() {
    for s in 2..=4 {
        let report = compare_series(s, 40, &SearchConfig::default()).unwrap();
        assert!(report.identity_holds(), "s = {s}");
    }
}

#[test]
fn oracle_output_is_order_independent() {
    // Loops swapped: y outer, x inner, with the same acceptance test.
    for n in 2..=30u128 {
        let cap = 2_000u128;
        let mut swapped = Vec::new();
        for y in 1..=cap {
            for x in 1..=y {
                if 4 * x * y <= n * (x + y) {
                    continue;
                }
                let num = 4 * x * y - n * (x + y);
                let den = n * x * y;
                if den % num == 0 {
                    let z = den / num;
                    if z >= y && z <= cap {
                        swapped.push(Triple { x, y, z });
                    }
                }
            }
        }
        swapped.sort();
        let direct = enumerate_triples(&BigUint::from(n), &BigUint::from(cap)).unwrap();
        assert_eq!(direct, swapped, "N = {n}");
    }
}
