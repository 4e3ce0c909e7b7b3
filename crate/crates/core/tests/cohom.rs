use std::sync::Arc;

use gkm_core::cohom::{check_in_x, check_in_fiber, check_in_complement};
use gkm_core::*;

fn a1_word(r: usize) -> Word {
    Word::new(Arc::new(RootDatum::simple_type(CartanType::A, 1).unwrap()), vec![1; r]).unwrap()
}

fn vals(f: &PointClass) -> Vec<String> {
    f.values().iter().map(|v| v.to_string()).collect()
}

#[test]
fn operator_examples() {
    let t1 = Tower::new(&a1_word(1)).unwrap();
    let one = PointClass::one(t1.level(0));
    assert_eq!(vals(&t1.nabla(false, &one).unwrap()), ["-a1", "0"]);
    assert_eq!(vals(&t1.delta(&one).unwrap()), ["1", "1"]);

    let t2 = Tower::new(&a1_word(2)).unwrap();
    let one = PointClass::one(t2.level(0));
    let ne = t2.nabla(false, &one).unwrap();
    // Binary order: ee, se, es, ss.
    assert_eq!(vals(&t2.delta(&ne).unwrap()), ["-a1", "0", "-a1", "0"]);
    let d = t2.delta(&one).unwrap();
    assert_eq!(vals(&t2.nabla_tilde(true, &d).unwrap()), ["0", "0", "-a1", "a1"]);
    assert_eq!(t2.nabla_tilde(false, &d).unwrap(), t2.nabla(false, &d).unwrap());
    assert_eq!(t2.nabla_tilde(true, &d).unwrap(), t2.nabla(true, &d).unwrap().neg());
    assert_eq!(t2.delta(&one).unwrap().degree().unwrap(), Some(0));
    assert_eq!(t2.nabla(true, &d).unwrap().degree().unwrap(), Some(1));
}

#[test]
fn basis_examples() {
    let t0 = Tower::new(&a1_word(0)).unwrap();
    let b = t0.basis_b_tree(&TreeIndex::Leaf).unwrap();
    assert_eq!(b.len(), 1);
    let t1 = Tower::new(&a1_word(1)).unwrap();
    let b = t1.basis_b_tree(&TreeIndex::constant(1, false)).unwrap();
    assert_eq!(b.elements.iter().map(vals).collect::<Vec<_>>(), [vec!["1", "1"], vec!["-a1", "0"]]);

    let w = a1_word(1);
    let e = w.datum().identity();
    let c = t1.basis_c_cofiber(&e).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(vals(&c.elements[0]), ["1"]);

    let w2 = a1_word(2);
    let t2 = Tower::new(&w2).unwrap();
    let fiber = Support::fiber(&w2, &e).unwrap();
    let b = t2.basis_b_fiber(&e).unwrap().restrict(&fiber).unwrap();
    assert_eq!(vals(&b.elements[0]), ["1", "1"]);
    assert_eq!(vals(&b.elements[1]), ["0", "a1"]);
}

#[test]
fn criteria_examples() {
    let w = a1_word(2);
    let t = Tower::new(&w).unwrap();
    let n = 1;
    let top = t.top();
    assert!(check_in_x(&PointClass::one(top)).is_ok());
    let ind = PointClass::from_fn(top, |g, _| if g.to_string() == "ss" { Poly::one(n) } else { Poly::zero(n) });
    assert!(check_in_x(&ind).is_err());

    let e = w.datum().identity();
    let fiber = Support::fiber(&w, &e).unwrap();
    assert!(check_in_fiber(&PointClass::one(&fiber)).is_ok());
    let ind = PointClass::from_fn(&fiber, |_, gw| if gw.d_mask() != 0 { Poly::one(n) } else { Poly::zero(n) });
    assert!(check_in_fiber(&ind).is_err());

    let cof = Support::cofiber(&w, &e);
    assert!(check_in_complement(&PointClass::one(&cof)).is_ok());
}

#[test]
fn decomposition_examples() {
    let w = a1_word(2);
    let t = Tower::new(&w).unwrap();
    let rho = TreeIndex::constant(2, true);
    let a = Poly::var(1, 1);
    let f = PointClass::constant(t.top(), &a);
    let c = t.decompose_in_b(&f, &rho).unwrap();
    assert_eq!(c[0], a);
    assert!(c[1..].iter().all(Poly::is_zero));
    let ind = PointClass::from_fn(t.top(), |g, _| if g.to_string() == "ss" { Poly::one(1) } else { Poly::zero(1) });
    assert!(matches!(t.decompose_in_b(&ind, &rho), Err(Error::NotInImage(_))));
}

#[test]
fn p_q_base_case() {
    // In A2 with word (1), α = α2 is never a wall, so M_α = ∅.
    let w = Word::new(Arc::new(RootDatum::simple_type(CartanType::A, 2).unwrap()), vec![1]).unwrap();
    let t = Tower::new(&w).unwrap();
    let alpha = Root::simple(2, 2);
    for g in w.galleries() {
        let (p, q) = t.p_q_classes(g, &alpha).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.values().iter().filter(|v| !v.is_zero()).count(), 1);
    }
}
