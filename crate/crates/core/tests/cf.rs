use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sadic::cf::{
    accelerate, cf_expand, directive_from_expansion, parse_rational, run_lengths, ArnouxRauzyMap,
    CfExpansion, CfMap, JacobiPerronMap, PartitionMap, SeedPolicy, Step, SturmianMap,
};
use sadic::sadic::{generalized_eigenvector, limit_word_stream, LimitOptions};
use sadic::substitution::builtin;
use sadic::{Error, IntMatrix};

fn q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

fn qu(v: &[u64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

#[test]
fn sturmian_examples() {
    let e = cf_expand(&SturmianMap::new(), &q(&[2, 1]), 10).unwrap();
    assert_eq!(e.symbols, vec!["a"]);
    assert_eq!(e.remainders[0], q(&[1, 1]));
    assert!(e.halt.is_some());
    let e = cf_expand(&SturmianMap::new(), &q(&[1, 1]), 10).unwrap();
    assert!(e.is_empty() && e.halt.is_some());
}

#[test]
fn arnoux_rauzy_examples() {
    let ar = ArnouxRauzyMap::new(3).unwrap();
    let e = cf_expand(&ar, &q(&[5, 2, 1]), 1).unwrap();
    assert_eq!(e.symbols, vec!["1"]);
    assert_eq!(e.remainders[0], q(&[2, 2, 1]));
    assert!(e.reconstruction_holds());
    assert!(cf_expand(&ar, &q(&[1, 1, 1]), 5).unwrap().is_empty());
    let e = cf_expand(&ar, &q(&[3, 0, 1]), 5).unwrap();
    assert!(e.is_empty() && e.halt.is_some());
}

#[test]
fn jacobi_perron_examples() {
    let e = cf_expand(&JacobiPerronMap, &q(&[1, 3, 7]), 5).unwrap();
    assert_eq!(e.symbols, vec!["(3,7)"]);
    assert_eq!(e.remainders[0], q(&[0, 0, 1]));
    assert!(e.halt.is_some());
    let e = cf_expand(&JacobiPerronMap, &q(&[3, 5, 7]), 20).unwrap();
    assert_eq!(e.symbols[0], "(1,2)");
    assert!(e.reconstruction_holds());
    assert_eq!(
        builtin("jp-1-2").unwrap().incidence(),
        IntMatrix::from_rows(&[[0, 0, 1], [1, 0, 1], [0, 1, 2]])
    );
    assert!(matches!(
        cf_expand(&JacobiPerronMap, &q(&[7, 1, 3]), 5),
        Err(Error::OutsideCone { .. })
    ));
}

#[test]
fn rational_tokens() {
    assert_eq!(parse_rational("3/6"), Some(BigRational::new(1.into(), 2.into())));
    assert_eq!(parse_rational("0.25"), Some(BigRational::new(1.into(), 4.into())));
    assert_eq!(parse_rational("x"), None);
}

/// Regular continued fraction of `p/q`.
fn euclid(mut p: u64, mut q: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while q != 0 {
        out.push(p / q);
        (p, q) = (q, p % q);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Expected runs of the additive map on `(x_a, x_b)`: the partial quotients
/// of `x_a / x_b`, the last one cut by the final tie.
fn oracle_runs(xa: u64, xb: u64) -> Vec<usize> {
    let mut cf = euclid(xa, xb);
    *cf.last_mut().unwrap() -= 1;
    cf.into_iter().filter(|&k| k > 0).map(|k| k as usize).collect()
}

#[test]
fn sturmian_runs_match_euclid() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 200 {
        let (a, b) = (rng.gen_range(1..100_000u64), rng.gen_range(1..100_000u64));
        if gcd(a, b) != 1 {
            continue;
        }
        let e = cf_expand(&SturmianMap::new(), &qu(&[a, b]), 1_000_000).unwrap();
        let runs: Vec<usize> = run_lengths(&e).into_iter().map(|(_, k)| k).collect();
        assert_eq!(runs, oracle_runs(a, b), "({a}, {b})");
        let total: u64 = euclid(a, b).iter().sum();
        assert_eq!(e.len() as u64, total - 1);
        assert_eq!(e.remainders.last().cloned(), (!e.is_empty()).then(|| qu(&[1, 1])));
        checked += 1;
    }
}

#[test]
fn golden_slope_alternates() {
    // Consecutive Fibonacci numbers: all partial quotients are 1.
    let e = cf_expand(&SturmianMap::new(), &qu(&[832_040, 514_229]), 100).unwrap();
    assert!(run_lengths(&e).iter().rev().skip(1).all(|(_, k)| *k == 1));
    assert!(e.symbols.windows(2).take(20).all(|w| w[0] != w[1]));
}

#[test]
fn acceleration_groups_runs() {
    let e = cf_expand(&SturmianMap::new(), &qu(&[17, 5]), 100).unwrap();
    let acc = accelerate(&e).unwrap();
    assert_eq!(acc.symbols, vec!["a^3", "b^2", "a"]);
    assert_eq!(acc.product(acc.len()), e.product(e.len()));
    assert!(acc.reconstruction_holds());
}

fn rand_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(rng.gen_range(1..1_000_000i64).into(), rng.gen_range(1..1000i64).into())
}

fn check_soundness<M: CfMap<BigRational>>(map: &M, x: &[BigRational], n: usize) -> CfExpansion<BigRational> {
    let e = cf_expand(map, x, n).unwrap();
    for k in 0..e.len() {
        assert!(e.remainders[k].iter().all(|v| *v >= BigRational::from_integer(0.into())));
    }
    assert!(e.reconstruction_holds(), "{:?}", e.input);
    e
}

#[test]
fn jacobi_perron_exact_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let c = rand_rational(&mut rng) + BigRational::from_integer(1_000_000.into());
        let a = rand_rational(&mut rng);
        let b = rand_rational(&mut rng);
        check_soundness(&JacobiPerronMap, &[a, b, c], 20);
    }
}

#[test]
fn selector_soundness_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let ar3 = ArnouxRauzyMap::new(3).unwrap();
    let ar4 = ArnouxRauzyMap::new(4).unwrap();
    let part = PartitionMap::new(
        "sturmian-partition",
        vec![("a".into(), builtin("tau-a").unwrap()), ("b".into(), builtin("tau-b").unwrap())],
    )
    .unwrap();
    for _ in 0..100 {
        let v: Vec<BigRational> = (0..4).map(|_| rand_rational(&mut rng)).collect();
        let s = check_soundness(&SturmianMap::new(), &v[..2], 60);
        let p = check_soundness(&part, &v[..2], 60);
        assert_eq!(s.symbols, p.symbols);
        check_soundness(&ar3, &v[..3], 30);
        check_soundness(&ar4, &v, 30);
    }
}

#[test]
fn partition_map_halts_on_boundaries_and_gaps() {
    let part = PartitionMap::new(
        "p",
        vec![("a".into(), builtin("tau-a").unwrap()), ("b".into(), builtin("tau-b").unwrap())],
    )
    .unwrap();
    assert!(matches!(CfMap::<BigRational>::step(&part, &q(&[1, 1])).unwrap(), Step::Halt(_)));
    let only_a = PartitionMap::new("only-a", vec![("a".into(), builtin("tau-a").unwrap())]).unwrap();
    assert!(matches!(CfMap::<BigRational>::step(&only_a, &q(&[1, 2])).unwrap(), Step::Halt(_)));
    assert!(PartitionMap::new("bad", vec![("x".into(), builtin("proj-ab").unwrap())]).is_err());
}

fn normalized_columns(m: &IntMatrix) -> Vec<Vec<f64>> {
    let f = m.to_f64();
    (0..m.cols())
        .map(|j| {
            let s: f64 = (0..m.rows()).map(|i| f[i][j]).sum();
            (0..m.rows()).map(|i| f[i][j] / s).collect()
        })
        .collect()
}

#[test]
fn weak_convergence_along_expansions() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let a = rng.gen_range(1u64 << 40..1u64 << 60);
        let b = rng.gen_range(1u64 << 40..1u64 << 60);
        let e = cf_expand(&SturmianMap::new(), &qu(&[a, b]), 50).unwrap();
        let s = (a + b) as f64;
        let x = [a as f64 / s, b as f64 / s];
        let dist: Vec<f64> = (0..=e.len())
            .map(|k| {
                normalized_columns(&e.product(k))
                    .iter()
                    .map(|c| (c[0] - x[0]).abs() + (c[1] - x[1]).abs())
                    .fold(0.0, f64::max)
            })
            .collect();
        assert!(dist.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        if e.len() == 50 {
            assert!(dist[50] < dist[2]);
        }
    }
}

#[test]
fn arnoux_rauzy_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mu: Vec<_> = (1..=3).map(|i| builtin(&format!("ar3-{i}")).unwrap()).collect();
    for _ in 0..20 {
        // Every letter appears in every block of ten, so the product is positive.
        let mut word: Vec<usize> = Vec::new();
        while word.len() < 60 {
            let mut block: Vec<usize> = (0..10).map(|_| rng.gen_range(0..3)).collect();
            block[..3].copy_from_slice(&[0, 1, 2]);
            word.extend(block);
        }
        let a = word.iter().fold(IntMatrix::identity(3), |a, &i| a.mul(&mu[i].incidence()).unwrap());
        let x: Vec<BigInt> = a.mul_vec(&[3.into(), 1.into(), 1.into()]);
        let xr: Vec<BigRational> = x.iter().map(|v| BigRational::from_integer(v.clone())).collect();
        let e = cf_expand(&ArnouxRauzyMap::new(3).unwrap(), &xr, 1000).unwrap();
        let expect: Vec<String> = word.iter().map(|i| (i + 1).to_string()).collect();
        assert_eq!(e.symbols[..60], expect[..]);
        let ds = directive_from_expansion(&e, SeedPolicy::LanguageOnly).unwrap();
        let f = generalized_eigenvector(&ds, 1e-10, 10_000).unwrap();
        let total: f64 = x.iter().map(|v| v.to_string().parse::<f64>().unwrap()).sum();
        for (fi, xi) in f.f.iter().zip(&x) {
            let xi = xi.to_string().parse::<f64>().unwrap() / total;
            assert!((fi - xi).abs() < f.diameter.max(1e-10) + 1e-9, "{fi} vs {xi}");
        }
    }
}

#[test]
fn sturmian_directive_frequencies() {
    // Pell numbers: P_{k}/P_{k+1} tends to √2 - 1.
    let (mut p0, mut p1) = (BigInt::from(0), BigInt::from(1));
    for _ in 0..40 {
        (p0, p1) = (p1.clone(), 2 * &p1 + &p0);
    }
    let x = vec![BigRational::from_integer(p1.clone()), BigRational::from_integer(p0.clone())];
    let e = cf_expand(&SturmianMap::new(), &x, 10_000).unwrap();
    let ds = directive_from_expansion(&e, SeedPolicy::default()).unwrap();
    let n = 100_000;
    let w = limit_word_stream(&ds, LimitOptions::default()).unwrap().prefix(n).unwrap();
    let alpha = 2f64.sqrt() - 1.0;
    let fb = alpha / (1.0 + alpha);
    let emp = w.count(1) as f64 / n as f64;
    assert!((emp - fb).abs() < 1e-4, "{emp} vs {fb}");
}

#[test]
fn directive_policies() {
    let e = cf_expand(&SturmianMap::new(), &qu(&[17, 5]), 100).unwrap();
    let ds = directive_from_expansion(&e, SeedPolicy::LanguageOnly).unwrap();
    assert_eq!(ds.len(), Some(e.len()));
    assert!(!ds.has_seeds());
    let empty = cf_expand(&SturmianMap::new(), &qu(&[1, 1]), 5).unwrap();
    assert!(directive_from_expansion(&empty, SeedPolicy::default()).is_err());
}

#[test]
fn float_mode_reconstructs_within_precision() {
    let x = [2f64.sqrt(), 1.0];
    let e = cf_expand(&SturmianMap::new(), &x, 30).unwrap();
    assert_eq!(e.len(), 30);
    assert!(e.reconstruction_holds());
    let runs: Vec<usize> = run_lengths(&e).into_iter().map(|(_, k)| k).collect();
    assert_eq!(runs[..5], [1, 2, 2, 2, 2]);
}

proptest! {
    #[test]
    fn exact_reconstruction(a in 1u64..1_000_000_000, b in 1u64..1_000_000_000, c in 1u64..1_000_000_000) {
        let e = cf_expand(&ArnouxRauzyMap::new(3).unwrap(), &qu(&[a, b, c]), 100).unwrap();
        prop_assert!(e.reconstruction_holds());
        let e = cf_expand(&SturmianMap::new(), &qu(&[a, b]), 200).unwrap();
        prop_assert!(e.reconstruction_holds());
        let top = a.max(b).max(c) + 1;
        // Digits above the materialization cap are refused, not truncated.
        match cf_expand(&JacobiPerronMap, &qu(&[a.min(b), a.max(b), top]), 30) {
            Ok(e) => prop_assert!(e.reconstruction_holds()),
            Err(err) => prop_assert!(matches!(err, Error::TooLarge(_))),
        }
    }
}
