use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sparsepoly::arith::{add, divides, divmod_heap, mul_heap, mul_kronecker, mul_naive, pow, sub};
use sparsepoly::factor::{gap_split, linear_rational_factors};
use sparsepoly::interp::{interpolate, InterpConfig, ProbeCountingOracle};
use sparsepoly::poly::{eval, kronecker_pack, kronecker_unpack};
use sparsepoly::{Exponent, Monomial, Ring, SparsePoly, Term};

fn poly_from(pairs: Vec<(i64, u64)>) -> SparsePoly {
    SparsePoly::univariate(Ring::Integers, pairs)
}

fn uni(max_terms: usize, exp_bits: u32) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((-1000i64..1000, 0..(1u64 << exp_bits)), 0..max_terms).prop_map(poly_from)
}

fn bi(max_terms: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((-50i64..50, 0u64..1 << 12, 0u64..1 << 12), 0..max_terms).prop_map(|v| {
        let terms = v
            .into_iter()
            .map(|(c, a, b)| Term::new(c, Monomial::new([Exponent::from(a), Exponent::from(b)])))
            .collect();
        SparsePoly::canonicalize(terms, 2, Ring::Integers).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn results_are_canonical(f in uni(30, 62), g in uni(30, 62)) {
        for h in [add(&f, &g).unwrap(), sub(&f, &g).unwrap(), mul_heap(&f, &g).unwrap().0] {
            prop_assert!(h.is_canonical());
        }
    }

    #[test]
    fn ring_laws(f in uni(12, 40), g in uni(12, 40), h in uni(12, 40)) {
        let m = |a: &SparsePoly, b: &SparsePoly| mul_heap(a, b).unwrap().0;
        prop_assert_eq!(m(&f, &g), m(&g, &f));
        prop_assert_eq!(m(&m(&f, &g), &h), m(&f, &m(&g, &h)));
        prop_assert_eq!(m(&f, &add(&g, &h).unwrap()), add(&m(&f, &g), &m(&f, &h)).unwrap());
        prop_assert!(sub(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn multiplication_algorithms_agree(f in uni(40, 62), g in uni(40, 62)) {
        let (h, st) = mul_heap(&f, &g).unwrap();
        prop_assert_eq!(&h, &mul_naive(&f, &g).unwrap().0);
        prop_assert!(st.peak_heap <= f.len().min(g.len()));
        let mut acc: BTreeMap<u128, BigInt> = BTreeMap::new();
        for a in f.terms() {
            for b in g.terms() {
                let e = u128::from(a.exps[0].to_u64().unwrap()) + u128::from(b.exps[0].to_u64().unwrap());
                *acc.entry(e).or_default() += &a.coeff * &b.coeff;
            }
        }
        acc.retain(|_, c| *c != BigInt::from(0));
        let got: BTreeMap<u128, BigInt> =
            h.terms().iter().map(|t| (u128::from(t.exps[0].to_u64().unwrap()), t.coeff.clone())).collect();
        prop_assert_eq!(got, acc);
    }

    #[test]
    fn bivariate_kronecker(f in bi(20), g in bi(20)) {
        prop_assert_eq!(mul_kronecker(&f, &g).unwrap().0, mul_heap(&f, &g).unwrap().0);
        let d = Exponent::pow2(12);
        prop_assert_eq!(kronecker_unpack(&kronecker_pack(&f, &d).unwrap(), &d, 2).unwrap(), f);
    }

    #[test]
    fn division_identity(q in uni(20, 50), g in uni(8, 50), r_seed in any::<u64>()) {
        prop_assume!(!g.is_zero());
        let mut terms = g.into_terms();
        terms.last_mut().unwrap().coeff = BigInt::from(if r_seed % 2 == 0 { 1 } else { -1 });
        let g = SparsePoly::canonicalize(terms, 1, Ring::Integers).unwrap();
        let dg = g.degree().finite().unwrap().to_u64().unwrap();
        let rem = if dg == 0 { SparsePoly::zero(Ring::Integers, 1) } else { poly_from(vec![(7, r_seed % dg)]) };
        let f = add(&mul_heap(&q, &g).unwrap().0, &rem).unwrap();
        let (q2, r2, _) = divmod_heap(&f, &g).unwrap();
        prop_assert_eq!(&q2, &q);
        prop_assert_eq!(&r2, &rem);
        prop_assert_eq!(divides(&f, &g).unwrap(), rem.is_zero());
    }

    #[test]
    fn interpolation_round_trip(f in uni(20, 62), seed in any::<u64>()) {
        prop_assume!(!f.is_zero());
        let bb = ProbeCountingOracle::from_poly(f.clone());
        let mut cfg = InterpConfig::new(Some(20), Exponent::pow2(62));
        cfg.seed = seed;
        prop_assert_eq!(interpolate(&bb, &Ring::Integers, &cfg).unwrap(), f);
        prop_assert_eq!(bb.probes(), 40);
    }

    #[test]
    fn gap_split_reassembles(f in uni(20, 30), gamma in 1u64..1 << 20) {
        let split = gap_split(&f, &Exponent::from(gamma)).unwrap();
        prop_assert_eq!(split.reassemble(&Ring::Integers), f);
    }

    #[test]
    fn planted_linear_factor_is_found(s in uni(6, 40), a in 1i64..30, b in 1i64..30, seed in any::<u64>()) {
        prop_assume!(!s.is_zero());
        let g = num_integer::Integer::gcd(&a, &b);
        let (a, b) = (a / g, b / g);
        let f = mul_heap(&poly_from(vec![(b, 1), (-a, 0)]), &s).unwrap().0;
        let roots = linear_rational_factors(&f, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(roots.contains(&(BigInt::from(a), BigInt::from(b))));
    }

    #[test]
    fn power_evaluates_consistently(f in uni(4, 8), k in 1u64..6, x in -3i64..4) {
        let fk = pow(&f, k).unwrap();
        let x = [BigInt::from(x)];
        prop_assert_eq!(eval(&fk, &x).unwrap(), num_traits::pow(eval(&f, &x).unwrap(), k as usize));
    }
}
