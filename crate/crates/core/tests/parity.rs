use std::sync::Arc;

use gkm_core::parity::{euler_class, invert_upper_triangular, torsion_scan};
use gkm_core::*;
use proptest::prelude::*;

fn word(ty: CartanType, n: usize, letters: Vec<usize>) -> Word {
    Word::new(Arc::new(RootDatum::simple_type(ty, n).unwrap()), letters).unwrap()
}

#[test]
fn triangular_inverse_examples() {
    let w = word(CartanType::A, 1, vec![1]);
    let id = Matrix::from_fn(3, 3, |i, j| if i == j { Poly::one(1) } else { Poly::zero(1) });
    let inv = invert_upper_triangular(&id, &w).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(inv.get(i, j), &RatFn::from_poly(id.get(i, j).clone()));
        }
    }
    let h = Matrix::from_fn(2, 2, |i, j| Poly::parse(["1", "1", "0", "a1"][2 * i + j], 1).unwrap());
    let inv = invert_upper_triangular(&h, &w).unwrap();
    let shown: Vec<String> = (0..4).map(|k| inv.get(k / 2, k % 2).to_string()).collect();
    assert_eq!(shown, ["1", "-1/(a1)", "0", "1/(a1)"]);
}

#[test]
fn euler_classes() {
    let w = word(CartanType::A, 1, vec![1]);
    let d = w.datum();
    assert!(euler_class(&w, &d.identity()).is_one());
    assert_eq!(euler_class(&w, &d.simple_reflection(1).unwrap()).to_string(), "a1");
}

#[test]
fn torsion_scan_a1() {
    let w = word(CartanType::A, 1, vec![1, 1]);
    let pl = FiberPipeline::new(&w, &w.datum().simple_reflection(1).unwrap()).unwrap();
    let t = torsion_scan(&pl, &[2, 3]).unwrap();
    assert!(t.torsion_primes.is_empty());
    assert_eq!(t.rational.defect.to_string(), "1+v^-2");
}

#[test]
fn empty_word() {
    let w = word(CartanType::A, 2, vec![]);
    let pl = FiberPipeline::new(&w, &w.datum().identity()).unwrap();
    assert_eq!(pl.size(), 1);
    let rep = pl.defect(FieldSpec::rationals()).unwrap();
    assert_eq!(rep.defect.to_string(), "1");
    assert_eq!(rep.multiplicities.get(&0), Some(&1));
    let s1 = w.datum().simple_reflection(1).unwrap();
    assert!(matches!(FiberPipeline::new(&w, &s1), Err(Error::EmptyFiber(_))));
}

#[test]
fn report_json_shape() {
    let w = word(CartanType::A, 1, vec![1, 1]);
    let pl = FiberPipeline::new(&w, &w.datum().simple_reflection(1).unwrap()).unwrap();
    let rep = pl.defect(FieldSpec::new(3).unwrap()).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    assert_eq!(v["defect"], serde_json::json!([[-2, 1], [0, 1]]));
    assert_eq!(v["multiplicities"], serde_json::json!({"-1": 1, "1": 1}));
    assert_eq!(v["blocks"][0]["rank"], 1);
    assert_eq!(v["field"]["characteristic"], 3);
}

fn small_case() -> impl Strategy<Value = (Word, usize)> {
    prop_oneof![Just((CartanType::A, 2)), Just((CartanType::B, 2)), Just((CartanType::G, 2)), Just((CartanType::A, 3))]
        .prop_flat_map(|(ty, n)| (Just((ty, n)), prop::collection::vec(1..=n, 0..6), any::<usize>()))
        .prop_map(|((ty, n), letters, k)| (word(ty, n, letters), k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The back-substituted transition matrix agrees with the direct
    /// product of fractions.
    #[test]
    fn transition_matches_fraction_oracle((w, k) in small_case()) {
        let ends = w.endpoints();
        let x = &ends[k % ends.len()];
        let pl = FiberPipeline::new(&w, x).unwrap();
        let n = w.datum().rank();
        let m = pl.size();
        let xinv = pl.h_inverse();
        for i in 0..m {
            for j in 0..m {
                let mut s = RatFn::zero(n);
                for l in 0..m {
                    let t = &(xinv.get(l, i) * xinv.get(l, j));
                    s = &s + &t.scalar_mul_poly(&pl.p_diagonal()[l]);
                }
                prop_assert_eq!(&s, &RatFn::from_poly(pl.transition().get(i, j).clone()));
            }
        }
        prop_assert!(pl.check_inverse().is_ok());
        prop_assert!(pl.check_symmetric().is_ok());
        prop_assert!(pl.check_degrees().is_ok());
        prop_assert_eq!(pl.euler().homogeneous_degree().unwrap() as usize, pl.length());
        for p in pl.p_diagonal() {
            prop_assert_eq!(p.homogeneous_degree().unwrap() as usize, w.len());
            prop_assert!(p.exact_divide(pl.euler()).is_ok());
        }
        let q = pl.defect(FieldSpec::rationals()).unwrap();
        prop_assert!(q.check_bookkeeping().is_ok());
        for b in &q.blocks {
            for p in [2u64, 3, 5] {
                if p == 2 && w.datum().has_c_component() { continue; }
                prop_assert!(gkm_core::parity::rank_over(&b.entries, FieldSpec::new(p).unwrap()) <= b.rank);
            }
        }
    }
}
