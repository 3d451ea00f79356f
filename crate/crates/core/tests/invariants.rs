use khoco_core::distance::{brute_oracle, min_weight_nontrivial, verify_witness, Sequential};
use khoco_core::khovanov::{build_complex, mirror_matches_dual};
use khoco_core::{LinkDiagram, Method, Unlimited};
use proptest::prelude::*;

fn braid() -> impl Strategy<Value = LinkDiagram> {
    (2usize..=3, prop::collection::vec((1usize..=2, any::<bool>()), 1..=4)).prop_map(|(strands, gens)| {
        let word: Vec<String> = gens
            .iter()
            .map(|&(g, inv)| {
                let g = g.min(strands - 1);
                if inv { format!("s{g}^-1") } else { format!("s{g}") }
            })
            .collect();
        LinkDiagram::from_braid(&word.join(" "), strands).unwrap().with_basepoint(0).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mirror_is_an_involution(d in braid()) {
        prop_assert_eq!(d.mirror().mirror().crossings, d.crossings);
    }

    #[test]
    fn mirror_complex_is_the_dual(d in braid()) {
        prop_assert!(mirror_matches_dual(&d).unwrap());
    }

    #[test]
    fn mirror_negates_homology(d in braid(), reduced in any::<bool>()) {
        let h = build_complex(&d, reduced).unwrap().homology_dims();
        let hm = build_complex(&d.mirror(), reduced).unwrap().homology_dims();
        for (i, k) in h {
            prop_assert_eq!(hm.get(&-i).copied().unwrap_or(0), k);
        }
    }

    #[test]
    fn unreduced_doubles_reduced(d in braid()) {
        let total = |r| build_complex(&d, r).unwrap().homology_dims().values().sum::<usize>();
        prop_assert_eq!(total(false), 2 * total(true));
    }

    #[test]
    fn methods_agree_with_brute_oracle(d in braid(), reduced in any::<bool>()) {
        let c = build_complex(&d, reduced).unwrap();
        for (i, k) in c.homology_dims() {
            if k == 0 || c.dim(i) > 16 {
                continue;
            }
            let (w, x) = brute_oracle(&c, i).unwrap();
            prop_assert!(verify_witness(&c.diff(i), &c.diff(i - 1), &x));
            for m in [Method::Auto, Method::ExhaustiveKernel, Method::SupportGrowth, Method::InformationSet] {
                let o = min_weight_nontrivial(&c, i, m, &Unlimited, &Sequential).unwrap();
                prop_assert_eq!(o.weight, w, "{:?} at degree {}", m, i);
                prop_assert!(o.exact);
            }
        }
    }
}
