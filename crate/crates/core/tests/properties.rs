use graphsep::classifier::{theorem3_check, verify_verdict};
use graphsep::oracle::{named_witnesses, transfer_invariants_hold};
use graphsep::rational::{self, Rational};
use graphsep::{
    classify, dense, is_ppt_mixture, json, Bipartition, Graph, GraphDiagonalState, TransferMatrix,
    Verdict,
};
use num_traits::Signed;
use proptest::prelude::*;

fn state_from(g: &Graph, raw: &[u8]) -> GraphDiagonalState {
    let mut w: Vec<i64> = raw.iter().map(|&x| i64::from(x)).collect();
    if w.iter().all(|&x| x == 0) {
        w[0] = 1;
    }
    let total: i64 = w.iter().sum();
    let weights: Vec<Rational> = w.iter().map(|&x| rational::rat(x, total)).collect();
    GraphDiagonalState::new(g.clone(), weights).unwrap()
}

/// Sparse small weights with one heavy label, so both verdicts are common.
fn weights(dim: usize) -> impl Strategy<Value = Vec<u8>> {
    (
        proptest::collection::vec(prop_oneof![2 => Just(0u8), 3 => 0u8..10], dim),
        0..dim,
        0u8..60,
    )
        .prop_map(|(mut w, i, boost)| {
            w[i] = w[i].saturating_add(boost);
            w
        })
}

fn graph(n: usize) -> impl Strategy<Value = Graph> {
    proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
        let mut edges = Vec::new();
        let mut it = bits.into_iter();
        for a in 0..n {
            for b in a + 1..n {
                if it.next().unwrap() {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    })
}

fn c4() -> Graph {
    Graph::builtin("C4").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transfer_matrices_are_symmetric_involutions(g in (2usize..=5).prop_flat_map(graph), side in any::<u32>()) {
        let n = g.n();
        let mask = (side % ((1 << n) - 1)) + 1;
        prop_assume!(mask != (1 << n) - 1);
        let m = Bipartition::new(n, mask).unwrap();
        prop_assert!(transfer_invariants_hold(&TransferMatrix::new(&g, &m).unwrap()));
    }

    #[test]
    fn cut_rank_matches_schmidt_rank(g in (2usize..=4).prop_flat_map(graph), side in any::<u32>()) {
        let n = g.n();
        let mask = (side % ((1 << n) - 2)) + 1;
        let m = Bipartition::new(n, mask).unwrap();
        let r = g.cut_rank(&m).unwrap();
        prop_assert_eq!(1usize << r, dense::schmidt_rank(&g, &m).unwrap());
    }

    #[test]
    fn exact_ppt_matches_dense(raw in weights(16), idx in 0usize..7) {
        let s = state_from(&c4(), &raw);
        let m = Bipartition::all(4)[idx];
        let exact = TransferMatrix::new(s.graph(), &m).unwrap().is_ppt(s.weights()).unwrap();
        let pt = dense::partial_transpose(&dense::state_to_dense(&s).unwrap(), &m).unwrap();
        let eig = dense::min_eigenvalue(&pt).unwrap();
        if exact {
            prop_assert!(eig > -1e-10, "{eig}");
        } else {
            prop_assert!(eig < 1e-10, "{eig}");
        }
    }

    #[test]
    fn local_sign_flips_preserve_verdicts(raw in weights(16), mask in 0u32..16) {
        let s = state_from(&c4(), &raw);
        let a = theorem3_check(&s).unwrap();
        let b = theorem3_check(&s.flip_signs(mask)).unwrap();
        prop_assert_eq!(a.label(), b.label());
    }

    #[test]
    fn local_complementation_preserves_verdicts(raw in weights(16), vertex in 0usize..4) {
        let s = state_from(&c4(), &raw);
        let t = s.relabel_lc(vertex).unwrap();
        prop_assert_eq!(classify(&s).unwrap().label(), classify(&t).unwrap().label());
    }

    #[test]
    fn c4_criterion_matches_lp(raw in weights(16)) {
        let s = state_from(&c4(), &raw);
        let v = theorem3_check(&s).unwrap();
        prop_assert_eq!(v.is_gme(), !is_ppt_mixture(&s, None).unwrap().is_feasible());
    }

    #[test]
    fn y5_cut_rank_one_mixtures_suffice(raw in weights(32)) {
        let g = Graph::builtin("Y5").unwrap();
        let s = state_from(&g, &raw);
        let one_bp = g.one_bp_partitions();
        prop_assert_eq!(
            is_ppt_mixture(&s, Some(&one_bp)).unwrap().is_feasible(),
            is_ppt_mixture(&s, None).unwrap().is_feasible()
        );
    }

    #[test]
    fn verdicts_carry_sound_certificates(name in prop::sample::select(vec!["C4", "GHZ3", "GHZ4", "K4", "Y5", "C5", "R5"]), seed in any::<u64>()) {
        let g = Graph::builtin(name).unwrap();
        let raw: Vec<u8> = (0..g.dim()).map(|k| ((seed >> (k % 60)) as u8 ^ k as u8) % 13).collect();
        let s = state_from(&g, &raw);
        let v = classify(&s).unwrap();
        prop_assert!(verify_verdict(&v, &s).is_ok(), "{name}: {:?}", verify_verdict(&v, &s));
    }

    #[test]
    fn witnesses_are_nonnegative_on_decomposition_terms(raw in weights(16)) {
        let s = state_from(&c4(), &raw);
        if let Verdict::Biseparable { decomposition } = theorem3_check(&s).unwrap() {
            for w in named_witnesses(s.graph()).unwrap() {
                for t in &decomposition.terms {
                    prop_assert!(!w.evaluate(&t.component).unwrap().is_negative(), "{}", w.name());
                }
            }
        }
    }

    #[test]
    fn state_json_round_trips(raw in weights(32)) {
        let s = state_from(&Graph::builtin("R5").unwrap(), &raw);
        let text = json::state_to_json(&s).to_string();
        prop_assert_eq!(json::state_from_json(&json::parse(&text).unwrap()).unwrap(), s);
    }
}
