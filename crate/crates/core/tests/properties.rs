use luroth::expansion::{expand, psi_prefix};
use luroth::maps::{self, critical_points, Region};
use luroth::markov::{self, markov_points, transfer_matrix, DEFAULT_POINT_CAP};
use luroth::orbits::{build_orbit_graph, enumerate_expansions, DEFAULT_NODE_CAP};
use luroth::rational::{int, ratio};
use luroth::stats::mc::{digit_freq_mc, kolmogorov_distance, lyapunov_mc, simulate, theta_stats_mc};
use luroth::stats::reference::m_p;
use luroth::stats::sim::{Lattice, SimConfig};
use luroth::{BigRational, OmegaSource, Params};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn c_strategy() -> impl Strategy<Value = BigRational> {
    prop_oneof![
        Just(int(0)),
        (2i64..=40).prop_flat_map(|b| (1..=b / 2).prop_map(move |a| ratio(a, b))),
    ]
}

/// A nonzero rational in `[c, 1]` with denominator at most 10^4.
fn cx_strategy() -> impl Strategy<Value = (BigRational, BigRational)> {
    cx_bounded(10_000)
}

fn cx_bounded(max_den: i64) -> impl Strategy<Value = (BigRational, BigRational)> {
    (c_strategy(), 1i64..=max_den, any::<u64>()).prop_map(|(c, den, r)| {
        let lo = (&c * BigRational::from_integer(den.into())).ceil().to_integer().to_string().parse::<i64>().unwrap().max(1);
        let num = lo + (r % (den - lo + 1) as u64) as i64;
        (c, ratio(num, den))
    })
}

fn bits_strategy(n: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..=1, n)
}

proptest! {
    #[test]
    fn conjugacy(num in 0i64..=1000, den in 1i64..=1000) {
        prop_assume!(num <= den);
        let x = ratio(num, den);
        prop_assert_eq!(maps::alt_map(&x).unwrap() + maps::luroth_map(&x).unwrap(), int(1));
    }

    #[test]
    fn branches_stay_in_range_and_agree_off_switch((c, x) in cx_strategy()) {
        let a = maps::branch_map(0, &c, &x).unwrap();
        let b = maps::branch_map(1, &c, &x).unwrap();
        for y in [&a, &b] {
            prop_assert!(*y >= c && *y <= int(1) && !y.is_zero());
        }
        if !maps::switch_contains(&c, &x).unwrap() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn admissibility((c, x) in cx_strategy(), j in 0u8..=1) {
        let sd = maps::sign_digit(j, &c, &x).unwrap();
        let (z, plus, _) = critical_points(&c, sd.d).unwrap();
        let (z_prev, _, minus_prev) = critical_points(&c, sd.d - 1).unwrap();
        if sd.s == 0 {
            prop_assert!(plus.unwrap() <= x && x <= z_prev);
        } else {
            prop_assert!(z <= x && x <= minus_prev);
        }
    }

    #[test]
    fn expansion_identity((c, x) in cx_strategy(), bits in bits_strategy(40)) {
        let rec = expand(&OmegaSource::Word(bits), &x, &c, 40).unwrap();
        let mut prod = BigInt::one();
        for n in 1..=40 {
            prod *= BigInt::from(rec.digits[n - 1].slope());
            let (p, q) = &rec.convergents[n - 1];
            let conv = BigRational::new(p.clone(), q.clone());
            prop_assert_eq!(&psi_prefix(&rec.digits[..n]), &conv);
            prop_assert_eq!((&x - &conv).abs(), &rec.orbit[n] / BigRational::from_integer(prod.clone()));
            let th = &rec.thetas[n - 1];
            prop_assert!(!th.is_negative() && *th <= int(1));
        }
    }

    #[test]
    fn sandwich((c, x) in cx_strategy(), bits in bits_strategy(31)) {
        let rec = expand(&OmegaSource::Word(bits), &x, &c, 31).unwrap();
        let mut prod = BigInt::one();
        for n in 1..=30 {
            prod *= BigInt::from(rec.digits[n - 1].slope());
            let (p, q) = &rec.convergents[n - 1];
            let err = (&x - BigRational::new(p.clone(), q.clone())).abs();
            let next = &prod * BigInt::from(rec.digits[n].slope());
            prop_assert!(BigRational::new(BigInt::one(), next) <= err);
            prop_assert!(err <= BigRational::new(BigInt::one(), prod.clone()));
        }
    }

    #[test]
    fn c_zero_signs_follow_omega_off_reciprocals(den in 2i64..=5000, r in any::<u64>(), bits in bits_strategy(30)) {
        let x = ratio(1 + (r % den as u64) as i64, den);
        let rec = expand(&OmegaSource::Word(bits), &x, &int(0), 30).unwrap();
        for (i, sd) in rec.digits.iter().enumerate() {
            let y = &rec.orbit[i];
            let reciprocal = y.numer().is_one();
            if !reciprocal {
                prop_assert_eq!(sd.s, rec.omega_used[i]);
            }
        }
    }

    #[test]
    fn graph_labels_and_size((c, x) in cx_strategy()) {
        let g = build_orbit_graph(&x, &c, DEFAULT_NODE_CAP).unwrap();
        prop_assert!(g.len() as u64 <= x.denom().to_string().parse::<u64>().unwrap() + 1);
        for (u, es) in g.edges.iter().enumerate() {
            for e in es {
                for j in 0..2u8 {
                    if e.bits & (1 << j) != 0 {
                        prop_assert_eq!(e.label, maps::sign_digit(j, &c, &g.nodes[u]).unwrap());
                        prop_assert_eq!(&g.nodes[e.target], &maps::branch_map(j, &c, &g.nodes[u]).unwrap());
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enumerated_expansions_close_to_x((c, x) in cx_bounded(60)) {
        for e in enumerate_expansions(&x, &c, 6, 12).unwrap() {
            prop_assert_eq!(e.value().unwrap(), x.clone());
        }
    }

    #[test]
    fn transfer_preserves_mass(b in 3i64..=12, a_seed in any::<u64>(), pn in 1i64..=9) {
        let a = 1 + (a_seed % (b / 2) as u64) as i64;
        let c = ratio(a, b);
        let part = markov_points(&c, DEFAULT_POINT_CAP).unwrap();
        let m = transfer_matrix(&part, &ratio(pn, 10)).unwrap();
        for i in 0..part.n_cells() {
            let col: BigRational = (0..part.n_cells()).map(|j| &m.entries[j][i] * part.cell_len(j)).sum();
            prop_assert_eq!(col, part.cell_len(i));
        }
    }

    #[test]
    fn densities_positive_for_unit_fractions(l in 2i64..=12, pn in 1i64..=9) {
        let params = Params::new(ratio(1, l), ratio(pn, 10)).unwrap();
        let d = markov::stationary_density(&params).unwrap();
        prop_assert!(markov::all_positive(&d.values));
        prop_assert_eq!(d.total_mass(), int(1));
        prop_assert!(markov::is_exact_zero(&markov::stationarity_residual(&d, &params.c, &params.p).unwrap()));
    }

    #[test]
    fn m_p_is_affine(p in 0.0f64..=1.0) {
        let (a, l) = (m_p(0.0).unwrap(), m_p(1.0).unwrap());
        prop_assert!((m_p(p).unwrap() - (a + p * (l - a))).abs() < 1e-15);
        prop_assert!(a <= m_p(p).unwrap() && m_p(p).unwrap() <= l);
    }

    #[test]
    fn simulated_thetas_in_unit_interval(c in c_strategy(), p in 0.0f64..=1.0, seed in any::<u64>()) {
        let cfg = SimConfig::new(c, p, 2000, 1, seed);
        let lat = Lattice::new(&cfg.c).unwrap();
        let mut o = cfg.orbit(&lat, 0);
        for _ in 0..cfg.n_steps {
            let s = o.step();
            prop_assert!((0.0..=1.0).contains(&s.theta()));
            prop_assert!(s.x() >= luroth::rational::to_f64(&cfg.c) - 1e-18);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn reports_independent_of_thread_count(c in c_strategy(), p in 0.0f64..=1.0, seed in any::<u64>()) {
        let cfg = SimConfig::new(c, p, 500, 6, seed);
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| (lyapunov_mc(&cfg).unwrap(), simulate(&cfg).unwrap(), theta_stats_mc(&cfg, &[0.25, 0.5]).unwrap().cdf))
        };
        prop_assert_eq!(run(1), run(3));
    }
}

#[test]
fn c_zero_orbit_points_are_uniform() {
    let cfg = SimConfig::new(int(0), 0.3, 200, 500, 5);
    let mut xs: Vec<f64> = simulate_points(&cfg);
    xs.sort_by(f64::total_cmp);
    let ks = kolmogorov_distance(&xs, Ok).unwrap();
    assert!(ks < 0.01, "{ks}");
}

fn simulate_points(cfg: &SimConfig) -> Vec<f64> {
    let lat = Lattice::new(&cfg.c).unwrap();
    (0..cfg.n_trajectories)
        .flat_map(|t| {
            let mut o = cfg.orbit(&lat, t);
            (0..cfg.n_steps).map(move |_| o.step().x()).collect::<Vec<_>>()
        })
        .collect()
}

#[test]
fn monte_carlo_frequencies_match_exact() {
    let c = ratio(2, 7);
    let exact = markov::digit_frequencies(&Params::new(c.clone(), ratio(3, 10)).unwrap()).unwrap();
    let mc = digit_freq_mc(&SimConfig::new(c, 0.3, 20_000, 50, 17), None).unwrap();
    for (d, v) in &exact.digits {
        let r = mc.digit(*d).unwrap();
        let want = luroth::rational::to_f64(v);
        assert!((r.estimate - want).abs() < 4.0 * r.std_error, "d={d}: {} vs {want}", r.estimate);
        assert!((r.reference.unwrap() - want).abs() < 1e-12);
    }
}

#[test]
fn one_is_never_reached_from_uniform_starts() {
    let cfg = SimConfig::new(ratio(1, 4), 0.5, 10_000, 4, 2);
    let lat = Lattice::new(&cfg.c).unwrap();
    for t in 0..cfg.n_trajectories {
        let mut o = cfg.orbit(&lat, t);
        for _ in 0..cfg.n_steps {
            assert_ne!(o.step().region, Region::Fixed);
        }
    }
}
