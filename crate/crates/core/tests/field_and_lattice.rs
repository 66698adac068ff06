mod common;

use common::*;
use proptest::prelude::*;
use qtransversal::subspace::{basis_count, canonicalize, enumerate_bases, enumerate_subspaces, gaussian_binomial};
use qtransversal::{Caps, FieldSpec};

fn field_axioms(q: u64) {
    let f = FieldSpec::of_order(q).unwrap();
    let els: Vec<u32> = (0..q as u32).collect();
    for &a in &els {
        assert_eq!(f.add(a, 0), a);
        assert_eq!(f.mul(a, 1), a);
        assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        for &b in &els {
            assert_eq!(f.add(a, b), f.add(b, a));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            if a != 0 && b != 0 {
                assert_ne!(f.mul(a, b), 0, "zero divisor in GF({q})");
            }
            for &c in &els {
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
}

#[test]
fn field_axioms_small_fields() {
    for q in [2, 3, 4, 8] {
        field_axioms(q);
    }
}

#[test]
fn fermat_little_theorem() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let f = FieldSpec::of_order(q).unwrap();
        for a in 0..q as u32 {
            assert_eq!(f.pow(a, q), a, "a^q = a in GF({q})");
        }
    }
}

#[test]
fn multiplicative_group_is_cyclic_of_order_q_minus_1() {
    for q in [4u64, 8, 9, 16, 25, 27] {
        let f = FieldSpec::of_order(q).unwrap();
        let has_generator = (1..q as u32).any(|g| (1..q - 1).all(|k| f.pow(g, k) != 1));
        assert!(has_generator, "GF({q})");
    }
}

/// Product formula for the number of k-subspaces, computed independently.
fn gaussian_oracle(n: u32, k: u32, q: u128) -> u128 {
    let num: u128 = (0..k).map(|i| q.pow(n - i) - 1).product();
    let den: u128 = (0..k).map(|i| q.pow(k - i) - 1).product();
    num / den
}

#[test]
fn enumeration_matches_counts() {
    for (q, max_n) in [(2u64, 4usize), (3, 3)] {
        for n in 1..=max_n {
            let v = space(q, n);
            let all: Vec<_> = enumerate_subspaces(&v, None, None, &Caps::default()).unwrap().collect();
            if q.pow(n as u32) <= 81 {
                let brute = all_subspaces(&v);
                assert_eq!(all.iter().cloned().collect::<std::collections::BTreeSet<_>>(), brute);
            }
            for k in 0..=n {
                let count = all.iter().filter(|s| s.dim() == k).count() as u128;
                assert_eq!(count, gaussian_oracle(n as u32, k as u32, q as u128));
                assert_eq!(count, gaussian_binomial(n as u32, k as u32, q).unwrap());
            }
        }
    }
}

#[test]
fn bases_are_counted_and_span() {
    let v = space(2, 3);
    for t in enumerate_subspaces(&v, None, None, &Caps::default()).unwrap() {
        let bases: Vec<_> = enumerate_bases(&t, &Caps::default()).unwrap().collect();
        assert_eq!(bases.len() as u128, basis_count(t.dim() as u32, 2).unwrap());
        assert_eq!(bases.len(), unordered_bases(&t).len());
        for b in bases {
            assert_eq!(canonicalize(&v, &b).unwrap(), t);
        }
    }
}

#[test]
fn lattice_laws_gf2_cubed() {
    let l = lattice(2, 3);
    let subs = l.subspaces();
    for (i, a) in subs.iter().enumerate() {
        for (j, b) in subs.iter().enumerate() {
            let m = a.meet(b).unwrap();
            let jn = a.join(b).unwrap();
            assert_eq!(m, meet(a, b));
            assert_eq!(jn, join(a, b));
            assert_eq!(&m, l.get(l.meet(i, j)));
            assert_eq!(&jn, l.get(l.join(i, j)));
            assert_eq!(a.leq(b).unwrap(), leq(a, b));
            assert_eq!(a.leq(b).unwrap(), l.leq(i, j));
            assert_eq!(m.dim() + jn.dim(), a.dim() + b.dim());
            // absorption
            assert_eq!(&a.join(&m).unwrap(), a);
            assert_eq!(&a.meet(&jn).unwrap(), a);
        }
    }
}

fn vectors_gf3(n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..3, n), 0..5)
}

proptest! {
    #[test]
    fn gf256_arithmetic(a in 0u32..256, b in 0u32..256, c in 0u32..256) {
        let f = FieldSpec::of_order(256).unwrap();
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        if b != 0 {
            prop_assert_eq!(f.mul(f.mul(a, f.inv(b).unwrap()), b), a);
        }
    }

    #[test]
    fn canonicalize_is_idempotent(rows in vectors_gf3(4)) {
        let v = space(3, 4);
        let vs: Vec<_> = rows.iter().map(|r| v.vector(r.clone()).unwrap()).collect();
        let s = canonicalize(&v, &vs).unwrap();
        prop_assert_eq!(canonicalize(&v, &s.basis()).unwrap(), s.clone());
        for x in &vs {
            prop_assert!(s.contains(x).unwrap());
        }
        // order of the spanning vectors does not matter
        let mut rev = vs.clone();
        rev.reverse();
        prop_assert_eq!(canonicalize(&v, &rev).unwrap(), s);
    }

    #[test]
    fn digit_strings_round_trip(code in 0u32..81) {
        let f = FieldSpec::of_order(81).unwrap();
        let s = f.code_to_digits(code);
        prop_assert_eq!(s.len(), 4);
        prop_assert_eq!(f.code_from_digits(&s).unwrap(), code);
    }
}
