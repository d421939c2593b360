//! Randomized invariants across the modules.

use graphcx::complexes::{conv_bracket, conv_diff, fgc_diff, ConvElem, ConvKind, Left};
use graphcx::ger::{basis as ger_basis, insert_ger, GerVec, Grading};
use graphcx::gra::{self, av, BiVec, FgcVec, GraVec};
use graphcx::graphs::canon::{canon, canon_reference};
use graphcx::graphs::{class_info, sort_parity_odd, LabeledGraph, Permutation};
use graphcx::qlinalg::{kernel_basis, rank, Rational, SparseMat};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).expect("shuffle"))
}

/// A graph on `1..=nv` with up to `emax` edges, loops allowed.
fn graph(nv: std::ops::RangeInclusive<usize>, emax: usize, r: Option<usize>) -> impl Strategy<Value = LabeledGraph> {
    nv.prop_flat_map(move |n| {
        let edge = (1..=n, 1..=n).prop_map(|(a, b)| (a.min(b), a.max(b)));
        (Just(n), proptest::collection::vec(edge, 0..=emax))
    })
    .prop_map(move |(n, edges)| {
        let r = r.unwrap_or(n).min(n);
        LabeledGraph::new(r, n - r, edges).expect("valid graph")
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p, q))
}

fn ger_vec(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = GerVec> {
    n.prop_flat_map(|n| {
        let b = ger_basis(n, Grading::Ger);
        (proptest::sample::select(b), 1i64..=3)
    })
    .prop_map(|(m, c)| GerVec::basis_element(m, Grading::Ger).scaled(&Rational::from_int(c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) * &b.recip(), a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn rank_nullity(entries in proptest::collection::vec(-2i64..=2, 12), cols in 1usize..=4) {
        let rows = 12 / cols;
        let dense: Vec<Vec<Rational>> =
            (0..rows).map(|i| (0..cols).map(|j| Rational::from_int(entries[i * cols + j])).collect()).collect();
        let m = SparseMat::from_dense(&dense);
        let ker = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + ker.len(), cols);
        for v in &ker {
            for row in &dense {
                let s = row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| &acc + &(x * y));
                prop_assert!(s.is_zero());
            }
        }
        prop_assert_eq!(rank(&m.transpose()), rank(&m));
    }

    #[test]
    fn canonical_form_is_a_class_invariant(g in graph(1..=6, 7, None), seed in any::<u64>()) {
        let n = g.num_vertices();
        let e = g.num_edges();
        let mut rng = seed;
        let mut next = |k: usize| { rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); ((rng >> 33) as usize) % k };
        let mut images: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() { images.swap(i, next(i + 1)); }
        let mut order: Vec<usize> = (0..e).collect();
        for i in (1..e).rev() { order.swap(i, next(i + 1)); }
        let sigma = Permutation::from_images(images).unwrap();
        let h = g.relabel_all(&sigma).reorder_edges(&order);
        let (a, b) = (class_info(&g), class_info(&h));
        prop_assert_eq!(a.multi_edge, b.multi_edge);
        // A repeated edge vanishes before any canonical form is computed.
        prop_assume!(!a.multi_edge);
        prop_assert_eq!(&a.graph, &b.graph);
        prop_assert_eq!(a.odd, b.odd);
        prop_assert_eq!(a.aut, b.aut);
        if !a.odd {
            prop_assert_eq!(b.sign_odd, a.sign_odd ^ sort_parity_odd(&order));
        }
        let zero: Vec<(u8, u8)> = h.edges().iter().map(|&(x, y)| (x - 1, y - 1)).collect();
        prop_assert_eq!(canon(n, n, &[&zero]), canon_reference(n, n, &[&zero]));
    }

    #[test]
    fn gra_insertion_equivariance(a in graph(1..=3, 3, Some(0)), b in graph(1..=3, 3, Some(0)), i in 1usize..=3, p in perm(3)) {
        let i = 1 + (i - 1) % a.n_op();
        let (x, y) = (GraVec::orbit(&a), GraVec::orbit(&b));
        let n = a.n_op();
        let sigma = Permutation::from_images((1..=n).map(|k| if n == 3 { p.apply(k) } else { k }).collect()).unwrap();
        let lhs = gra::insert(&gra::sym_act(&sigma, &x).unwrap(), sigma.apply(i), &y).unwrap();
        let m = b.n_op();
        let pos = |at: usize, k: usize| if k < at { k } else { k + m - 1 };
        let si = sigma.apply(i);
        let mut images = vec![0; n + m - 1];
        for k in (1..=n).filter(|&k| k != i) { images[pos(i, k) - 1] = pos(si, sigma.apply(k)); }
        for t in 1..=m { images[i + t - 2] = si + t - 1; }
        let tau = Permutation::from_images(images).unwrap();
        let rhs = gra::sym_act(&tau, &gra::insert(&x, i, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ger_sequential_associativity(a in ger_vec(1..=3), b in ger_vec(1..=3), c in ger_vec(1..=2), i in 1usize..=3, j in 1usize..=3) {
        let i = 1 + (i - 1) % a.arity();
        let j = 1 + (j - 1) % b.arity();
        let lhs = insert_ger(&insert_ger(&a, i, &b).unwrap(), i + j - 1, &c).unwrap();
        let rhs = insert_ger(&a, i, &insert_ger(&b, j, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fgc_differential_preserves_euler_characteristic(g in graph(1..=4, 5, None)) {
        let x = FgcVec::orbit(&g);
        let chi = g.num_vertices() as i64 - g.num_edges() as i64;
        let d = fgc_diff(&x);
        prop_assert_eq!(d.degree(), x.degree() + 1);
        for k in d.terms().keys() {
            prop_assert_eq!(k.num_vertices() as i64 - k.num_edges() as i64, chi);
        }
    }

    #[test]
    fn vector_round_trips(g in graph(1..=4, 4, None), t in graph(1..=3, 3, Some(1)), c in small_rational()) {
        let x = av(&g).scaled(&c);
        prop_assert_eq!(x.to_string().parse::<FgcVec>().unwrap(), x.clone());
        let y = GraVec::orbit(&t).scaled(&c);
        prop_assert_eq!(y.to_string().parse::<GraVec>().unwrap(), y);
        let b = graphcx::complexes::fgc_to_bivec(&x);
        prop_assert_eq!(b.to_string().parse::<BiVec>().unwrap(), b);
    }

    #[test]
    fn ger_round_trip(v in ger_vec(1..=4)) {
        prop_assert_eq!(v.to_string().parse::<GerVec>().unwrap(), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn conv_differential_is_a_derivation(n1 in 1usize..=2, n2 in 1usize..=2, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let elem = |n: usize, ix: &prop::sample::Index, jx: &prop::sample::Index| {
            let l = ger_basis(n, Grading::Ger);
            let r = ger_basis(n, Grading::Lambda2Ger);
            ConvElem::symmetrized(Left::Mono(ix.get(&l).clone()), jx.get(&r).clone()).unwrap()
        };
        let (x, y) = (elem(n1, &i, &j), elem(n2, &j, &i));
        prop_assert_eq!(x.kind(), ConvKind::Ger);
        let lhs = conv_diff(&conv_bracket(&x, &y));
        let mut rhs = conv_bracket(&conv_diff(&x), &y);
        rhs.add_scaled(&conv_bracket(&x, &conv_diff(&y)), &Rational::sign(x.degree().rem_euclid(2) == 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conv_round_trip(n in 1usize..=3, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let l = ger_basis(n, Grading::Ger);
        let r = ger_basis(n, Grading::Lambda2Ger);
        let x = ConvElem::symmetrized(Left::Mono(i.get(&l).clone()), j.get(&r).clone()).unwrap();
        prop_assert_eq!(x.to_string().parse::<ConvElem>().unwrap(), x);
    }
}
