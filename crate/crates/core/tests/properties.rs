use jetinv::exactalg::{ExactMatrix, QuadExt, Rational};
use jetinv::formsalg::{sylvester_resultant, Form};
use jetinv::jets::{act_on_jet, JetContext, JetPoint};
use jetinv::polyalg::{parse_expression, parse_polynomial, MultiPoly, RatFunc, TableRef, VarTable};
use jetinv::sl2inv::{delta2, j21, theta_coefficient};
use proptest::prelude::*;

fn table() -> TableRef {
    VarTable::new(&["x", "y", "z"]).unwrap()
}

/// Polynomial with up to four terms of degree at most 3 in x, y, z.
fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-6i64..=6, 0u32..=3, 0u32..=2, 0u32..=2), 0..5).prop_map(|terms| {
        let text: Vec<String> = terms
            .iter()
            .map(|(c, a, b, d)| format!("({c})*x^{a}*y^{b}*z^{d}"))
            .collect();
        let text = if text.is_empty() { "0".to_string() } else { text.join(" + ") };
        parse_polynomial(&text, &table()).unwrap()
    })
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rational::new(n, d))
}

fn unimodular() -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(-3i64..=3, 4).prop_map(|ks| {
        ks.iter().enumerate().fold(ExactMatrix::identity(2), |m, (i, &k)| {
            let e = if i % 2 == 0 {
                ExactMatrix::from_i64_rows(&[&[1, k], &[0, 1]])
            } else {
                ExactMatrix::from_i64_rows(&[&[1, 0], &[k, 1]])
            };
            m.mul(&e)
        })
    })
}

fn binary(n: usize) -> impl Strategy<Value = Form> {
    prop::collection::vec(-5i64..=5, n + 1).prop_map(move |cs| {
        let terms: Vec<String> = cs
            .iter()
            .enumerate()
            .map(|(i, c)| format!("({c})*x^{}*y^{}", n - i, i))
            .collect();
        Form::from_text(&terms.join(" + "), 2, Some(n)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_parses_back(a in poly()) {
        let back = parse_polynomial(&a.to_string(), &table()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn exact_division(a in nonzero_poly(), b in nonzero_poly()) {
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn rational_functions_cancel(a in poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let f = RatFunc::new(a.clone(), b.clone()).unwrap();
        let g = RatFunc::new(c.clone(), b).unwrap();
        let q = f.checked_div(&g).unwrap();
        prop_assert!((&q * &g).equals(&f));
        let text = f.to_string();
        prop_assert!(parse_expression(&text, &table()).unwrap().equals(&f));
    }

    #[test]
    fn nullspace_is_kernel(rows in 1usize..5, cols in 1usize..6, seed in prop::collection::vec(-4i64..=4, 30)) {
        let entries: Vec<Rational> = seed.iter().take(rows * cols).map(|&v| Rational::from_int(v)).collect();
        prop_assume!(entries.len() == rows * cols);
        let m = ExactMatrix::from_entries(rows, cols, entries);
        let ns = m.nullspace();
        prop_assert_eq!(m.rank() + ns.len(), cols);
        for v in &ns {
            prop_assert!(m.mul_vec(v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn quadratic_extension_field(a in rational(), b in rational(), c in rational(), d in rational(), r in 2i64..12) {
        let t = table();
        let k = |q: &Rational| RatFunc::constant(&t, q.clone());
        let rad = k(&Rational::from_int(r));
        let x = QuadExt::new(k(&a), k(&b), rad.clone());
        let y = QuadExt::new(k(&c), k(&d), rad.clone());
        let z = QuadExt::new(k(&b), k(&c), rad);
        prop_assert!((&(&x * &y) * &z).equals(&(&x * &(&y * &z))));
        prop_assert!((&x * &(&y + &z)).equals(&(&(&x * &y) + &(&x * &z))));
        if !x.is_zero() {
            let one = &x * &x.recip().unwrap();
            prop_assert!(one.as_rational().is_some_and(RatFunc::is_one));
        }
    }

    #[test]
    fn invariants_are_constant_on_orbits(a in unimodular(), cs in prop::collection::vec(-4i64..=4, 10), px in -3i64..=3, py in -3i64..=3) {
        let t = VarTable::new(&["x", "y"]).unwrap();
        let monos = ["1", "x", "y", "x^2", "x*y", "y^2", "x^3", "x^2*y", "x*y^2", "y^3"];
        let text: Vec<String> = cs.iter().zip(monos).map(|(c, m)| format!("({c})*{m}")).collect();
        let f = parse_polynomial(&text.join(" + "), &t).unwrap();
        let ctx = JetContext::new(2, 3).unwrap();
        let p = JetPoint::of_polynomial(ctx, &f, &[Rational::from_int(px), Rational::from_int(py)]).unwrap();
        let q = act_on_jet(&a, &p).unwrap();
        for inv in [delta2(), j21()] {
            prop_assert_eq!(p.eval(&inv).unwrap(), q.eval(&inv).unwrap());
        }
        let i30 = theta_coefficient(3, 0).unwrap();
        if let (Ok(u), Ok(v)) = (p.eval(&i30), q.eval(&i30)) {
            prop_assert_eq!(u, v);
        }
    }

    #[test]
    fn resultant_is_invariant(phi in binary(3), psi in binary(2), a in unimodular()) {
        prop_assume!(!phi.is_zero() && !psi.is_zero());
        let r0 = sylvester_resultant(&phi, &psi).unwrap();
        let r1 = sylvester_resultant(&phi.transform(&a).unwrap(), &psi.transform(&a).unwrap()).unwrap();
        prop_assert!(r0.equals(&r1));
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }
}
