use flatwitness::hardy::{analytic_project, GridFunction};
use flatwitness::seq::{olympiad_weighted_sum, tail_profile, verify_olympiad_bound};
use flatwitness::ultralimit::ideal_membership_nonprincipal;
use flatwitness::{
    mobius, mobius_inv, principal_generator, synthesize_witness, verify_generator, verify_witness,
    BoundedSequence, Complex64, Membership, PointwiseRelation, SampledFunction, SynthesisOptions,
};
use proptest::prelude::*;

fn complex(scale: f64) -> impl Strategy<Value = Complex64> {
    (-scale..scale, -scale..scale).prop_map(|(a, b)| Complex64::new(a, b))
}

fn grid(log2: u32) -> impl Strategy<Value = GridFunction> {
    prop::collection::vec(complex(1.0), 1usize << log2).prop_map(|v| GridFunction::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn suffix_sums_telescope(a in prop::collection::vec(complex(10.0), 1..400)) {
        let p = tail_profile(&a).unwrap();
        prop_assert!(p.telescoping_defect() <= 1e-13 * (1.0 + p.total()));
        for n in 1..=p.len() {
            prop_assert!(p.r(n) <= p.r(n - 1));
        }
    }

    #[test]
    fn weighted_bound_on_every_window(
        a in prop::collection::vec(complex(1.0).prop_filter("nonzero", |z| z.norm() > 1e-6), 2..200),
        i in 0usize..200,
        j in 0usize..200,
    ) {
        let p = tail_profile(&a).unwrap();
        let len = p.len();
        let m = 1 + i % (len - 1);
        let n = m + 1 + j % (len - m);
        let rep = verify_olympiad_bound(&p, m, n, None).unwrap();
        prop_assert!(rep.holds, "{rep:?}");
    }

    #[test]
    fn weighted_sum_is_additive(a in prop::collection::vec(complex(1.0).prop_filter("nonzero", |z| z.norm() > 1e-3), 4..100)) {
        let p = tail_profile(&a).unwrap();
        let n = p.len();
        let mid = n / 2;
        let whole = olympiad_weighted_sum(&p, 1, n).unwrap();
        let split = olympiad_weighted_sum(&p, 1, mid).unwrap() + olympiad_weighted_sum(&p, mid, n).unwrap();
        prop_assert!((whole - split).abs() <= 1e-12 * (1.0 + whole));
    }

    #[test]
    fn analytic_projection_is_idempotent(f in grid(6)) {
        let p = analytic_project(&f);
        prop_assert!(analytic_project(&p).max_abs_diff(&p) <= 1e-13);
        prop_assert!(p.norm_sq() <= f.norm_sq() * (1.0 + 1e-12) + 1e-15);
    }

    #[test]
    fn parseval(f in grid(7)) {
        prop_assert!(f.parseval_defect() <= 1e-12 * (1.0 + f.norm_sq()));
    }

    #[test]
    fn witness_is_deterministic_and_valid(seed in any::<u64>(), n in 1usize..6, p in 1usize..40) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let rel: PointwiseRelation = flatwitness::suite::random_relation(&mut rng, n, p);
        let a = synthesize_witness(&rel, SynthesisOptions::default()).unwrap();
        let b = synthesize_witness(&rel, SynthesisOptions::default()).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(verify_witness(&rel, &a, 1e-10).unwrap().passes);
    }

    #[test]
    fn bezout_identities(
        f in prop::collection::vec(complex(1e3), 1..64),
        g in prop::collection::vec(complex(1e3), 1..64),
    ) {
        let n = f.len().min(g.len());
        let fs = SampledFunction::new(f[..n].to_vec(), vec![1.0; n]).unwrap();
        let gs = fs.with_values(g[..n].to_vec());
        let gen = principal_generator(&fs, &gs).unwrap();
        prop_assert!(verify_generator(&fs, &gs, &gen).passes(2.0));
    }

    #[test]
    fn membership_is_monotone_in_tol(
        vals in prop::collection::vec(-1.0f64..1.0, 8..64),
        decay in 0.0f64..3.0,
        t in 1e-6f64..0.5,
    ) {
        let a = BoundedSequence::from_real(vals.iter().enumerate().map(|(k, v)| v * (-(decay * k as f64)).exp())).unwrap();
        if ideal_membership_nonprincipal(&a, t).unwrap() == Membership::Yes {
            prop_assert_eq!(ideal_membership_nonprincipal(&a, 2.0 * t).unwrap(), Membership::Yes);
        }
    }

    #[test]
    fn mobius_round_trip(re in 1e-3f64..50.0, im in -50.0f64..50.0) {
        let s = Complex64::new(re, im);
        let z = mobius(s).unwrap();
        prop_assert!(z.norm() < 1.0);
        prop_assert!((mobius_inv(z).unwrap() - s).norm() <= 1e-12 * (1.0 + s.norm() * s.norm()));
    }
}
