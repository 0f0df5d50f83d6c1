use kuniform::enumerators::{
    macwilliams_transform, shadow_transform, validate_state_constraints, WeightEnumerator,
};
use kuniform::exact::{rat, GaussRat};
use kuniform::hetero::{ame_purities, DimensionProfile};
use kuniform::oracle::corpus::{ame_4_3, ghz, ring_graph_state};
use kuniform::oracle::{
    direct_enumerator, direct_shadow, is_k_uniform, purities, shadow_from_purities, OracleConfig,
    PureState,
};
use kuniform::Rat;
use num_traits::Signed;
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x, 1)).collect()
}

#[test]
fn frozen_enumerators() {
    let cfg = OracleConfig::default();
    // GHZ_4: purity 1/2 on every proper nonempty subset, so the subset sum
    // gives s = (1, 0, 6, 0, 9) by hand
    let g = ghz(4, 2);
    assert_eq!(
        direct_enumerator(&g, &cfg).unwrap().coeffs(),
        ints(&[1, 0, 6, 0, 9])
    );
    assert_eq!(
        direct_shadow(&g, &cfg).unwrap().coeffs(),
        ints(&[1, 0, 6, 0, 9])
    );
    for state in [ring_graph_state(5), ame_4_3()] {
        let a = direct_enumerator(&state, &cfg).unwrap();
        assert_eq!(macwilliams_transform(&a), a);
        // maximally mixed marginals: the state's shadow must equal the one built
        // from the ideal purity profile
        let ideal = ame_purities(state.profile()).unwrap();
        let s = shadow_from_purities(state.n_parties(), &ideal).unwrap();
        assert_eq!(direct_shadow(&state, &cfg).unwrap().coeffs(), s);
    }
    assert_eq!(
        direct_enumerator(&ring_graph_state(5), &cfg)
            .unwrap()
            .coeffs(),
        ints(&[1, 0, 0, 10, 15, 6])
    );
    // A'_k = C(4,k) 3^k / 3^min(k,4-k), then inclusion-exclusion
    assert_eq!(
        direct_enumerator(&ame_4_3(), &cfg).unwrap().coeffs(),
        ints(&[1, 0, 0, 32, 48])
    );
}

#[test]
fn enumerator_record_wire_format() {
    let a = WeightEnumerator::new(2, 2, ints(&[1, 0, 3])).unwrap();
    let text = serde_json::to_string(&a).unwrap();
    assert_eq!(text, r#"{"n":2,"d":2,"coeffs":["1/1","0/1","3/1"]}"#);
    let back: WeightEnumerator = serde_json::from_str(&text).unwrap();
    assert_eq!(back, a);
    assert!(serde_json::from_str::<WeightEnumerator>(r#"{"n":2,"d":2,"coeffs":["1"]}"#).is_err());
}

fn random_state() -> impl Strategy<Value = PureState> {
    (2usize..=4, 2u32..=3).prop_flat_map(|(n, d)| {
        let size = (d as usize).pow(n as u32);
        prop::collection::vec((-3i64..=3, -3i64..=3), size).prop_filter_map(
            "nonzero state",
            move |amps| {
                let profile = DimensionProfile::homogeneous(n, d).ok()?;
                let kets = amps.into_iter().enumerate().map(|(idx, (re, im))| {
                    let mut ket = vec![0u32; n];
                    let mut x = idx;
                    for slot in ket.iter_mut().rev() {
                        *slot = (x % d as usize) as u32;
                        x /= d as usize;
                    }
                    (ket, GaussRat::new(rat(re, 1), rat(im, 2)))
                });
                PureState::new(profile, kets.collect()).ok()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_states_satisfy_every_constraint(state in random_state()) {
        let cfg = OracleConfig::default();
        let a = direct_enumerator(&state, &cfg).unwrap();
        prop_assert_eq!(shadow_transform(&a), direct_shadow(&state, &cfg).unwrap());
        prop_assert!(validate_state_constraints(&a, None).all_passed());
        prop_assert_eq!(a.coeffs()[0].clone(), rat(1, 1));
        for k in 1..=state.n_parties() / 2 {
            let zeros = a.coeffs()[1..=k].iter().all(|v| *v == rat(0, 1));
            prop_assert_eq!(is_k_uniform(&state, k, &cfg).unwrap(), zeros);
        }
    }

    #[test]
    fn complementary_purities_agree(state in random_state()) {
        let p = purities(&state, &OracleConfig::default()).unwrap();
        let full = p.values.len() - 1;
        for (mask, v) in p.values.iter().enumerate() {
            prop_assert_eq!(v, &p.values[full ^ mask]);
            prop_assert!(v.is_positive() && *v <= rat(1, 1));
        }
    }
}
