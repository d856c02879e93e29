use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use linfield::dickson::{self, DicksonMatrix};
use linfield::field::{Field, FieldTower, FqnElement};
use linfield::moore::{self, TraceForm};
use linfield::serial::{self, FieldDoc};
use linfield::skew::{self, SkewPoly};
use linfield::subfield::{is_block_circulant, SubfieldContext};
use linfield::{LinPoly, Matrix};

fn fields() -> &'static [Arc<FieldTower>] {
    static FIELDS: OnceLock<Vec<Arc<FieldTower>>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (2, 1, 4), (3, 1, 3), (5, 1, 2)]
            .into_iter()
            .map(|(p, e, n)| Arc::new(FieldTower::with_degrees(p, e, n).unwrap()))
            .collect()
    })
}

/// A field together with `k` elements of it, drawn by index.
fn field_with(k: usize) -> impl Strategy<Value = (Arc<FieldTower>, Vec<FqnElement>)> {
    (0..fields().len(), prop::collection::vec(any::<u64>(), k)).prop_map(|(i, raw)| {
        let t = Arc::clone(&fields()[i]);
        let elems = raw.iter().map(|r| t.from_index(u128::from(*r) % t.order())).collect();
        (t, elems)
    })
}

fn poly(t: &Arc<FieldTower>, coeffs: &[FqnElement]) -> LinPoly {
    LinPoly::reduced(t, coeffs).unwrap()
}

fn some_basis(t: &FieldTower, cands: &[FqnElement]) -> Vec<FqnElement> {
    if t.base_rank(cands) == t.n() {
        cands.to_vec()
    } else {
        t.monomial_basis()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frobenius_is_an_automorphism_of_order_n((t, e) in field_with(2)) {
        let (a, b) = (&e[0], &e[1]);
        prop_assert_eq!(t.frobenius(a, t.n()), a.clone());
        prop_assert_eq!(t.frobenius(&t.add(a, b), 1), t.add(&t.frobenius(a, 1), &t.frobenius(b, 1)));
        prop_assert_eq!(t.frobenius(&t.mul(a, b), 1), t.mul(&t.frobenius(a, 1), &t.frobenius(b, 1)));
    }

    #[test]
    fn trace_is_base_linear((t, e) in field_with(3)) {
        let (a, b) = (&e[0], &e[1]);
        let c = t.trace(&e[2]);
        prop_assert_eq!(t.frobenius(&t.trace(a), 1), t.trace(a));
        let lhs = t.trace(&t.add(&t.mul(&c, a), b));
        prop_assert_eq!(lhs, t.add(&t.mul(&c, &t.trace(a)), &t.trace(b)));
    }

    #[test]
    fn inverses((t, e) in field_with(1)) {
        let a = &e[0];
        if !a.is_zero() {
            prop_assert_eq!(t.mul(a, &t.inv(a).unwrap()), t.one());
        }
    }

    #[test]
    fn evaluation_is_base_linear((t, e) in field_with(10)) {
        let n = t.n();
        let l = poly(&t, &e[..n]);
        let (x, y) = (&e[n], &e[n + 1]);
        let c = t.trace(&e[n + 2]);
        let lhs = l.evaluate(&t.add(&t.mul(&c, x), y));
        prop_assert_eq!(lhs, t.add(&t.mul(&c, &l.evaluate(x)), &l.evaluate(y)));
    }

    #[test]
    fn composition_laws((t, e) in field_with(13)) {
        let n = t.n();
        let (a, b, c) = (poly(&t, &e[..n]), poly(&t, &e[n..2 * n]), poly(&t, &e[2 * n..3 * n]));
        let x = &e[3 * n];
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.evaluate(x), a.evaluate(&b.evaluate(x)));
        prop_assert_eq!(ab.compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
        let bc = b.add(&c).unwrap();
        prop_assert_eq!(a.compose(&bc).unwrap(), ab.add(&a.compose(&c).unwrap()).unwrap());
        prop_assert_eq!(bc.compose(&a).unwrap(), b.compose(&a).unwrap().add(&c.compose(&a).unwrap()).unwrap());
        prop_assert!(ab.rank_bruteforce() <= a.rank_bruteforce().min(b.rank_bruteforce()));
        prop_assert_eq!(a.rank_bruteforce() + a.kernel_basis().len(), n);
    }

    #[test]
    fn dickson_homomorphism((t, e) in field_with(8)) {
        let n = t.n();
        let (a, b) = (poly(&t, &e[..n]), poly(&t, &e[n..2 * n]));
        let d = DicksonMatrix::from_poly(&a).mul(&DicksonMatrix::from_poly(&b)).unwrap();
        prop_assert_eq!(DicksonMatrix::from_poly(&a.compose(&b).unwrap()), d);
    }

    #[test]
    fn dickson_rank_and_adjugate((t, e) in field_with(3)) {
        let l = poly(&t, &e);
        let d = DicksonMatrix::from_poly(&l);
        let det = d.determinant();
        prop_assert_eq!(d.rank(), l.rank_bruteforce());
        prop_assert_eq!(skew::rank_via_gcd(&l), l.rank_bruteforce());
        prop_assert_eq!(t.frobenius(&det, 1), det.clone());
        let adj = d.adjugate().unwrap();
        let scaled = Matrix::identity(&*t, t.n()).scale(&*t, &det);
        prop_assert_eq!(d.to_matrix().mul(&*t, &adj.to_matrix()), scaled);
        let det_x = LinPoly::monomial(&t, det, 0);
        prop_assert_eq!(l.compose(&adj.to_poly()).unwrap(), det_x);
    }

    #[test]
    fn conjugation_matches_coordinates((t, e) in field_with(8)) {
        let n = t.n();
        let l = poly(&t, &e[..n]);
        let basis = some_basis(&t, &e[n..2 * n]);
        let m = dickson::matrix_rep(&l, &basis).unwrap();
        prop_assert_eq!(dickson::matrix_rep_direct(&l, &basis).unwrap(), m);
    }

    #[test]
    fn right_division((t, e) in field_with(7)) {
        let f = SkewPoly::new(&t, e[..4].to_vec()).unwrap();
        let g = SkewPoly::new(&t, e[4..].to_vec()).unwrap();
        if !g.is_zero() {
            let (quo, rem) = f.right_divide(&g).unwrap();
            prop_assert_eq!(quo.mul(&g).unwrap().add(&rem).unwrap(), f.clone());
            prop_assert!(rem.degree().is_none_or(|d| Some(d) < g.degree()));
        }
        if !f.is_zero() && !g.is_zero() {
            prop_assert!(!f.mul(&g).unwrap().is_zero());
            let h = f.rgcd(&g).unwrap();
            prop_assert_eq!(h.leading_coeff(), Some(&t.one()));
            prop_assert!(f.right_divide(&h).unwrap().1.is_zero());
            prop_assert!(g.right_divide(&h).unwrap().1.is_zero());
        }
    }

    #[test]
    fn factor_chains((t, e) in field_with(3)) {
        let l = poly(&t, &e);
        if l.rank_bruteforce() + 1 == t.n() {
            let chain = skew::factor_chain(&l).unwrap();
            prop_assert_eq!(chain.recompose(), l);
            prop_assert!(chain.side_conditions_hold());
        }
    }

    #[test]
    fn dual_bases((t, e) in field_with(3)) {
        let n = t.n();
        let basis = some_basis(&t, &e[..n.min(e.len())]);
        let dual = moore::dual_basis(&t, &basis).unwrap();
        for (i, b) in basis.iter().enumerate() {
            for (j, d) in dual.iter().enumerate() {
                let expected = if i == j { t.one() } else { t.zero() };
                prop_assert_eq!(t.trace(&t.mul(b, d)), expected);
            }
        }
        prop_assert_eq!(moore::dual_basis(&t, &dual).unwrap(), basis.clone());
        let id = TraceForm::new(&t, basis.into_iter().zip(dual).collect()).unwrap();
        prop_assert_eq!(id.to_poly(), LinPoly::identity(&t));
    }

    #[test]
    fn trace_form_round_trips((t, e) in field_with(8)) {
        let n = t.n();
        let l = poly(&t, &e[..n]);
        let basis = some_basis(&t, &e[n..2 * n]);
        let full = moore::to_trace_form_full(&l, &basis).unwrap();
        let side = moore::to_trace_form_dualside(&l, &basis).unwrap();
        let compact = moore::compact_form(&l);
        prop_assert_eq!(full.to_poly(), l.clone());
        prop_assert_eq!(side.to_poly(), l.clone());
        prop_assert_eq!(compact.to_poly(), l.clone());
        prop_assert_eq!(compact.len(), l.rank_bruteforce());
        prop_assert_eq!(t.base_rank(&full.thetas()), l.rank_bruteforce());
        prop_assert_eq!(moore::moore_rank(&t, &e).unwrap(), t.base_rank(&e));
    }

    #[test]
    fn serialization_round_trips((t, e) in field_with(3)) {
        let l = poly(&t, &e);
        let doc = FieldDoc::from_tower(&t);
        prop_assert_eq!(doc.parse_poly(&serial::poly_to_json(&l)).unwrap(), l.clone());
        prop_assert_eq!(doc.parse_elements(&serial::elements_to_json(&t, &e)).unwrap(), e.clone());
        let tf = moore::compact_form(&l);
        prop_assert_eq!(doc.parse_trace_form(&serial::trace_form_to_json(&tf)).unwrap(), tf);
        let s = SkewPoly::phi_inv(&l);
        prop_assert_eq!(doc.parse_skew(&serial::skew_to_json(&s)).unwrap(), s);
        let reparsed = FieldDoc::parse(&serial::field_to_json(&t)).unwrap();
        prop_assert_eq!(&*reparsed.tower, &*t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn subfield_polys_are_block_circulant(raw in prop::collection::vec(any::<u64>(), 8), m in prop::sample::select(vec![1usize, 2, 3])) {
        static GF64: OnceLock<Arc<FieldTower>> = OnceLock::new();
        let t = GF64.get_or_init(|| Arc::new(FieldTower::with_degrees(2, 1, 6).unwrap()));
        let coeffs: Vec<FqnElement> = raw
            .iter()
            .take(t.n())
            .map(|r| t.rel_trace(&t.from_index(u128::from(*r) % t.order()), m).unwrap())
            .collect();
        let l = poly(t, &coeffs);
        let ctx = SubfieldContext::new(t, m).unwrap();
        prop_assert!(ctx.alpha_pattern_holds(&l));
        prop_assert!(is_block_circulant(&ctx.b_matrix(&l), m));
    }
}

#[test]
fn enumeration_is_complete_and_cyclic() {
    for t in fields() {
        let all: Vec<FqnElement> = t.elements().unwrap().collect();
        let mut idx: Vec<u128> = all.iter().map(|a| t.index_of(a)).collect();
        idx.sort_unstable();
        idx.dedup();
        assert_eq!(idx.len() as u128, t.order());
        let group = t.order() - 1;
        let primitive = all.iter().filter(|a| !a.is_zero()).any(|a| {
            let mut x = a.clone();
            (1..group).all(|_| {
                let one = x == t.one();
                x = t.mul(&x, a);
                !one
            })
        });
        assert!(primitive, "no generator in {t:?}");
    }
}
