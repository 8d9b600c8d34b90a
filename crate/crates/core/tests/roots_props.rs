use juliahull::roots::{all_roots, preimages};
use juliahull::{Complex64, Poly};
use proptest::prelude::*;

fn complex_in(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(re, im)| Complex64::new(re, im))
}

fn poly(min_degree: usize, max_degree: usize) -> impl Strategy<Value = Poly> {
    (min_degree..=max_degree)
        .prop_flat_map(|d| (prop::collection::vec(complex_in(1.0), d), complex_in(1.0)))
        .prop_filter_map("leading coefficient too small", |(mut c, lead)| {
            if lead.norm() < 0.1 {
                return None;
            }
            c.push(lead);
            Poly::new(c).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn roots_rebuild_coefficients(p in poly(1, 8)) {
        let roots = all_roots(&p, 1e-10).unwrap();
        prop_assert_eq!(roots.len(), p.degree());
        let mut prod = Poly::new(vec![p.leading()]).unwrap();
        for &r in &roots.roots {
            prod = prod.mul(&Poly::new(vec![-r, Complex64::new(1.0, 0.0)]).unwrap()).unwrap();
        }
        let err = prod.max_coeff_diff(&p);
        prop_assert!(err <= 1e-6 * p.scale(), "{err:e}");
    }

    #[test]
    fn preimages_recover_the_source(p in poly(2, 6), u in complex_in(1.0)) {
        let z0 = u * p.escape_radius();
        prop_assume!(u.norm() <= 1.0);
        let fiber = preimages(&p, p.eval(z0), 1e-10).unwrap();
        let best = fiber.roots.iter().map(|z| (z - z0).norm()).fold(f64::INFINITY, f64::min);
        prop_assert!(best <= 1e-7, "{best:e}");
    }
}
