use std::sync::Arc;

use proptest::prelude::*;

use orbjac_core::invpoly::InvertiblePolynomial;
use orbjac_core::json::{cycnum_from_json, cycnum_to_json};
use orbjac_core::milnor::{monomials_of_degree, Sectors};
use orbjac_core::poly::{difference_derivative, LinearImage, Monomial, Poly, VarSet};
use orbjac_core::scalar::{frac, rat, root_of_unity, CycField, CycNum, Rational};
use orbjac_core::symmetry::{check_fixed_locus, maximal_group};
use orbjac_core::verify::half_angle_product;

const CONDUCTORS: &[u32] = &[4, 12, 20, 24, 36];

fn cyc(field: &Arc<CycField>, coeffs: &[(i64, i64, i64)]) -> CycNum {
    let terms: Vec<(i64, Rational)> = coeffs.iter().map(|&(k, p, q)| (k, rat(p, q))).collect();
    CycNum::from_power_coeffs(field, &terms)
}

fn coeff_list() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((0i64..36, -6i64..=6, 1i64..=4), 0..5)
}

fn poly_from(n: usize, terms: &[(Vec<u32>, i64)]) -> Poly {
    let field = CycField::get(1);
    let mut p = Poly::zero(VarSet::single(n), &field);
    for (exps, c) in terms {
        p.add_term(
            Monomial::from_exponents(exps.clone()),
            CycNum::from_int(&field, *c),
        );
    }
    p
}

fn poly_in(n: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, n), -5i64..=5), 0..6)
        .prop_map(move |terms| poly_from(n, &terms))
}

/// Random polynomial in `n ≤ 4` variables, each exponent at most 2.
fn small_poly() -> impl Strategy<Value = Poly> {
    (1usize..=4).prop_flat_map(poly_in)
}

/// Text of a random sum of one or two chains/loops, monomials shuffled.
fn invertible_text() -> impl Strategy<Value = String> {
    let atom = (any::<bool>(), prop::collection::vec(2u32..=3, 1..=2));
    (prop::collection::vec(atom, 1..=2), any::<u64>()).prop_map(|(atoms, shuffle)| {
        let mut monomials = Vec::new();
        let mut start = 1;
        for (is_loop, exps) in atoms {
            let m = exps.len();
            for (k, a) in exps.iter().enumerate() {
                let v = start + k;
                let next = if k + 1 < m {
                    Some(v + 1)
                } else if is_loop && m > 1 {
                    Some(start)
                } else {
                    None
                };
                monomials.push(match next {
                    Some(w) => format!("x{v}^{a}*x{w}"),
                    None => format!("x{v}^{a}"),
                });
            }
            start += m;
        }
        let len = monomials.len();
        for i in (1..len).rev() {
            monomials.swap(i, (shuffle as usize >> (i * 3)) % (i + 1));
        }
        monomials.join(" + ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_arithmetic(m in prop::sample::select(CONDUCTORS), a in coeff_list(), b in coeff_list()) {
        let field = CycField::get(m);
        let (a, b) = (cyc(&field, &a), cyc(&field, &b));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a + &(-&a), CycNum::zero(&field));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) * &b.inv().unwrap(), a.clone());
        }
        let wide = CycField::get(2 * m);
        prop_assert_eq!((&a * &b).embed(&wide).unwrap(), &a.embed(&wide).unwrap() * &b.embed(&wide).unwrap());
    }

    #[test]
    fn roots_of_unity(m in prop::sample::select(CONDUCTORS), j in 0i64..36, k in 0i64..36) {
        let field = CycField::get(m);
        let (a, b) = (rat(j, m as i64), rat(k, m as i64));
        let prod = &root_of_unity(&a, &field).unwrap() * &root_of_unity(&b, &field).unwrap();
        prop_assert_eq!(prod, root_of_unity(&frac(&(&a + &b)), &field).unwrap());
        prop_assert!(root_of_unity(&a, &field).unwrap().pow(m as i64).unwrap().is_one());
    }

    #[test]
    fn half_angle_differences_are_invertible(n in 1i64..=9, k in 1i64..9) {
        prop_assume!(k < n);
        let field = CycField::get(4 * n as u32);
        let a = rat(k, n);
        let d = &root_of_unity(&(&a * rat(1, 2)), &field).unwrap() - &root_of_unity(&(-&a * rat(1, 2)), &field).unwrap();
        prop_assert!(!d.is_zero());
    }

    #[test]
    fn scalar_json_round_trip(m in prop::sample::select(CONDUCTORS), a in coeff_list()) {
        let a = cyc(&CycField::get(m), &a);
        prop_assert_eq!(cycnum_from_json(&cycnum_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn difference_derivatives_telescope(p in small_poly()) {
        let n = p.vars().base_len();
        let two = p.vars().extended();
        let field = p.field().clone();
        let mut lhs = Poly::zero(two, &field);
        for i in 0..n {
            let diff = &Poly::var(two, &field, two.index(0, i)) - &Poly::var(two, &field, two.index(1, i));
            lhs = &lhs + &(&diff * &difference_derivative(&p, i).unwrap());
        }
        let images: Vec<LinearImage> = (0..n).map(|i| LinearImage::Var(two.index(1, i))).collect();
        let rhs = &p.widen(two).unwrap() - &p.substitute_linear(two, &images).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn difference_derivatives_keep_weighted_degree(
        weights in prop::collection::vec(1i64..=3, 1..=3),
        degree in 2i64..=7,
        pick in prop::collection::vec(any::<bool>(), 12),
    ) {
        let n = weights.len();
        let vars: Vec<usize> = (0..n).collect();
        let field = CycField::get(1);
        let mut p = Poly::zero(VarSet::single(n), &field);
        for (m, keep) in monomials_of_degree(n, &vars, &weights, degree).into_iter().zip(pick.iter().cycle()) {
            if *keep {
                p.add_term(m, CycNum::one(&field));
            }
        }
        let doubled: Vec<i64> = weights.iter().chain(&weights).copied().collect();
        for i in 0..n {
            let d = difference_derivative(&p, i).unwrap();
            if !d.is_zero() {
                prop_assert_eq!(d.homogeneous_degree(&doubled), Some(degree - weights[i]));
            }
        }
    }

    #[test]
    fn substitution_is_multiplicative(
        (p, q, images) in (1usize..=3, 1usize..=3)
            .prop_flat_map(|(n, m)| (poly_in(n), poly_in(n), prop::collection::vec(poly_in(m), n)))
    ) {
        let target = *images[0].vars();
        let images = &images[..];
        let lhs = (&p * &q).substitute(target, images).unwrap();
        let rhs = &p.substitute(target, images).unwrap() * &q.substitute(target, images).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn classification_invariants(text in invertible_text()) {
        let f = InvertiblePolynomial::parse(&text).unwrap();
        // weights do not depend on the monomial order
        let mut parts: Vec<&str> = text.split(" + ").collect();
        parts.reverse();
        let g = InvertiblePolynomial::parse(&parts.join(" + ")).unwrap();
        prop_assert_eq!(f.weights(), g.weights());
        prop_assert_eq!(f.degree(), g.degree());
        // the atoms reassemble to f and their determinants multiply
        let mut sum = Poly::zero(*f.poly().vars(), f.poly().field());
        let mut det = 1;
        for (k, atom) in f.atoms().iter().enumerate() {
            let local = f.atom_polynomial(k);
            let images: Vec<LinearImage> = atom.vars.iter().map(|&v| LinearImage::Var(v)).collect();
            sum = &sum + &local.poly().substitute_linear(*f.poly().vars(), &images).unwrap();
            det *= atom.abs_determinant();
        }
        prop_assert_eq!(&sum, f.poly());
        prop_assert_eq!(f.exponents().determinant().abs(), det);
        // text output parses back to the same exponent matrix
        let back = InvertiblePolynomial::parse(&f.to_string()).unwrap();
        prop_assert_eq!(back.exponents(), f.exponents());
    }

    #[test]
    fn symmetry_group_invariants(text in invertible_text()) {
        let f = InvertiblePolynomial::parse(&text).unwrap();
        let group = maximal_group(&f).unwrap();
        prop_assert_eq!(group.order() as i64, f.exponents().determinant().abs());
        let field = CycField::get(4 * group.exponent());
        for g in group.elements() {
            prop_assert!(group.contains(&g.inverse()));
            prop_assert!(check_fixed_locus(&f, g).is_ok());
            if !g.is_identity() {
                let total = g.age() + g.inverse().age();
                prop_assert_eq!(total, Rational::from_integer((g.codim() as i64).into()));
            }
            prop_assert_eq!(half_angle_product(g, &field).unwrap(), half_angle_product(&g.inverse(), &field).unwrap());
            for h in group.elements() {
                prop_assert!(group.contains(&g.mul(h)));
            }
        }
    }

    #[test]
    fn milnor_numbers_and_normal_forms(text in invertible_text(), shifts in prop::collection::vec(small_poly(), 3), r in small_poly()) {
        let f = InvertiblePolynomial::parse(&text).unwrap();
        let n = f.n();
        let group = maximal_group(&f).unwrap();
        let field = CycField::get(4 * group.exponent());
        let sectors = Sectors::new(&f, &field);
        for g in group.elements() {
            let s = sectors.of(g).unwrap();
            let expect: Rational = g
                .fixed()
                .iter()
                .map(|&i| rat(f.degree() - f.weights()[i], f.weights()[i]))
                .product();
            prop_assert_eq!(Rational::from_integer((s.milnor_number() as i64).into()), expect);
        }
        // representative independence in Jac(f)
        let jac = sectors.identity().unwrap();
        let fp = f.poly_in(&field);
        let widen = |p: &Poly| -> Option<Poly> {
            (p.vars().base_len() <= n).then(|| {
                let images: Vec<LinearImage> = (0..p.vars().base_len()).map(LinearImage::Var).collect();
                p.substitute_linear(VarSet::single(n), &images).unwrap().embed(&field).unwrap()
            })
        };
        prop_assume!(shifts.iter().chain([&r]).all(|p| p.vars().base_len() <= n));
        let r = widen(&r).unwrap();
        let p = widen(&shifts[0]).unwrap();
        let mut q = p.clone();
        for (i, s) in shifts.iter().enumerate().skip(1) {
            let i = (i - 1) % n;
            q = &q + &(&widen(s).unwrap() * &fp.partial_derivative(i).unwrap());
        }
        prop_assert_eq!(jac.normal_form(&q), jac.normal_form(&p));
        prop_assert_eq!(jac.normal_form(&(&q * &r)), jac.normal_form(&(&p * &r)));
        let sum = jac.normal_form(&p).add(&jac.normal_form(&r)).unwrap();
        prop_assert_eq!(jac.normal_form(&(&p + &r)), sum);
    }
}
