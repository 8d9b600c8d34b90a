use juliahull::check::*;
use juliahull::hull::{convex_hull, HalfPlane};
use juliahull::julia::{boundary_cloud, escape_grid, sample_julia};
use juliahull::poly::AffineMap;
use juliahull::roots::{all_roots, critical_points, preimages};
use juliahull::{Complex64, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn quad(re: f64, im: f64) -> Poly {
    Poly::new(vec![c(re, im), c(0.0, 0.0), c(1.0, 0.0)]).unwrap()
}

fn cfg() -> CheckConfig {
    CheckConfig::default()
}

#[test]
fn segment_and_circle_pass_backward_inclusion() {
    let alpha = Complex64::from_polar(1.0, 2.0);
    for p in [Poly::chebyshev(2).unwrap(), Poly::monomial(alpha, 2).unwrap(), Poly::monomial(alpha, 4).unwrap()] {
        let r = check_backward_inclusion(&p, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{p}");
        assert!(r.worst_violation <= r.threshold);
    }
}

#[test]
fn basilica_backward_inclusion_against_grid_hull() {
    let p = quad(-1.0, 0.0);
    let r = check_backward_inclusion(&p, &cfg()).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);

    // oracle: hull of the escape-grid boundary; preimages of its boundary
    // stay inside it up to the raster scale
    let grid = escape_grid(&p, 2048, 200).unwrap();
    let h = convex_hull(&boundary_cloud(&p, &grid).unwrap().points).unwrap();
    let worst = h
        .boundary_samples(512)
        .iter()
        .flat_map(|&w| preimages(&p, w, 1e-10).unwrap().roots)
        .map(|z| h.signed_distance(z))
        .fold(f64::NEG_INFINITY, f64::max);
    assert!(worst <= 2.0 * grid.cell_diagonal(), "{worst:e}");

    // strictness shows up in the classifier gap
    let cl = classify_equality(&p, &cfg()).unwrap();
    assert_eq!(cl.kind, EqualityKind::StrictInclusion);
    assert!(cl.hausdorff_gap >= 10.0 * cl.threshold);
}

#[test]
fn random_bounded_cubic_keeps_critical_points_in_hull() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tested = 0;
    while tested < 3 {
        let p = Poly::new(vec![
            c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
            c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
            c(0.0, 0.0),
            c(1.0, 0.0),
        ])
        .unwrap();
        let crit = critical_points(&p, 1e-10).unwrap().roots;
        let r = p.escape_radius();
        let bounded = crit.iter().all(|&z0| {
            let mut z = z0;
            (0..500).all(|_| {
                z = p.eval(z);
                z.norm() <= r
            })
        });
        if !bounded {
            continue;
        }
        tested += 1;
        let report = check_critical_in_hull(&p, &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{p}");

        // oracle: no half-plane bounded by a line through a critical point
        // misses the Julia sample
        let cloud = sample_julia(&p, 100_000, 9).unwrap();
        for &z in &crit {
            for k in 0..360 {
                let e = HalfPlane::through(z, Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / 360.0));
                assert!(cloud.points.iter().any(|&w| e.contains(w)), "{p}: crit {z}");
            }
        }
    }
}

#[test]
fn basilica_filled_set_against_direct_scan() {
    let p = quad(-1.0, 0.0);
    let r = check_filled_in_hull(&p, &cfg()).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);

    let ctx = JuliaHull::build(&p, &cfg()).unwrap();
    let grid = escape_grid(&p, 1024, 200).unwrap();
    let allowance = ctx.threshold(&cfg()) + grid.cell_diagonal();
    for z in grid.true_centers() {
        assert!(ctx.hull.signed_distance(z) <= allowance, "{z}");
    }
}

#[test]
fn chebyshev_filled_set_is_the_segment() {
    let r = check_filled_in_hull(&Poly::chebyshev(2).unwrap(), &cfg()).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(r.worst_violation <= r.threshold);
}

#[test]
fn admissible_set_of_the_square_is_the_disk() {
    let p = quad(0.0, 0.0);
    let ctx = JuliaHull::build(&p, &cfg()).unwrap();
    let tol = ctx.threshold(&cfg());
    for &(w, inside) in &[(c(0.5, 0.5), true), (c(0.0, -0.99), true), (c(1.1, 0.0), false), (c(-0.8, 0.8), false)] {
        let fiber = preimages(&p, w, 1e-10).unwrap().roots;
        assert_eq!(ctx.max_excess(&fiber) <= tol, inside, "{w}");
    }
    for p in [p, Poly::chebyshev(3).unwrap()] {
        assert_eq!(check_cb_convexity(&p, &cfg()).unwrap().verdict, Verdict::Pass);
    }
}

#[test]
fn basilica_cb_convexity_against_explicit_roots() {
    let p = quad(-1.0, 0.0);
    let ctx = JuliaHull::build(&p, &cfg()).unwrap();
    let report = check_cb_convexity_with(&ctx, &cfg());
    assert_eq!(report.verdict, Verdict::Pass);

    // oracle: both preimages ±sqrt(w + 1), rejection-sampled on a 512² grid
    let tol = ctx.threshold(&cfg());
    let admissible = |w: Complex64| {
        let s = (w + 1.0).sqrt();
        ctx.hull.excess(s) <= tol && ctx.hull.excess(-s) <= tol
    };
    let half = 2.0;
    let mut pool = Vec::new();
    for i in 0..512 {
        for j in 0..512 {
            let w = c(-half + (i as f64 + 0.5) * 2.0 * half / 512.0, -half + (j as f64 + 0.5) * 2.0 * half / 512.0);
            if admissible(w) {
                pool.push(w);
            }
        }
    }
    assert!(pool.len() > 1000);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let (a, b) = (pool[rng.gen_range(0..pool.len())], pool[rng.gen_range(0..pool.len())]);
        for k in 1..=9 {
            let t = k as f64 / 10.0;
            assert!(admissible(a * t + b * (1.0 - t)), "{a} {b} {t}");
        }
    }
}

#[test]
fn half_planes_through_the_critical_point_of_the_square() {
    let p = quad(0.0, 0.0);
    let e = HalfPlane::through(c(0.0, 0.0), c(1.0, 0.0));
    let fiber = preimages(&p, c(-1.0, 0.0), 1e-10).unwrap().roots;
    assert!(fiber.iter().any(|&z| e.eval(z).abs() <= 1e-12 && (z.im.abs() - 1.0).abs() <= 1e-12));
    let fiber = preimages(&p, c(4.0, 0.0), 1e-10).unwrap().roots;
    assert!(fiber.iter().any(|&z| e.contains(z) && (z - 2.0).norm() <= 1e-12));
}

#[test]
fn cubic_surjectivity_against_all_roots() {
    let p = Poly::from_real(&[0.0, -3.0, 0.0, 1.0]).unwrap();
    let report = check_thurston_surjectivity(&p, &cfg()).unwrap();
    assert_eq!(report.verdict, Verdict::Pass);

    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let r = p.escape_radius();
    for _ in 0..20 {
        let anchor = c(rng.gen_range(-1.0..1.0), 0.0);
        let e = HalfPlane::through(anchor, Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)));
        for _ in 0..50 {
            let y = Complex64::from_polar(2.0 * r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU));
            let roots = all_roots(&p.shifted(y), 1e-10).unwrap().roots;
            assert!(roots.iter().any(|&z| e.eval(z) >= -1e-9), "{y}");
        }
    }
}

#[test]
fn quarter_i_is_strict_against_grid_hull() {
    let p = quad(0.0, 0.25);
    let cl = classify_equality(&p, &cfg()).unwrap();
    assert_eq!(cl.kind, EqualityKind::StrictInclusion);

    // oracle: forward gap measured on the escape-grid hull
    let grid = escape_grid(&p, 1024, 200).unwrap();
    let h = convex_hull(&boundary_cloud(&p, &grid).unwrap().points).unwrap();
    let gap = h
        .boundary_samples(512)
        .iter()
        .chain(h.vertices())
        .map(|&z| h.excess(p.eval(z)))
        .fold(0.0, f64::max);
    assert!(gap > 10.0 * cfg().tol_rel * h.diameter(), "{gap:e}");
}

#[test]
fn normal_forms_reproduce_the_polynomial() {
    let g = AffineMap::new(c(0.8, -0.9), c(1.5, 0.25)).unwrap();
    let cases = [
        Poly::chebyshev(4).unwrap(),
        Poly::chebyshev(3).unwrap().neg(),
        Poly::chebyshev(5).unwrap().conjugate(&g),
        Poly::monomial(Complex64::from_polar(1.0, 0.7), 3).unwrap().conjugate(&g),
    ];
    for p in cases {
        let cl = classify_equality(&p, &cfg()).unwrap();
        assert_ne!(cl.kind, EqualityKind::StrictInclusion, "{p}");
        assert!(cl.hausdorff_gap <= cl.threshold);
        let back = cl.normal_form(p.degree()).unwrap().conjugate(&cl.conjugation().unwrap().inverse());
        assert!(back.max_coeff_diff(&p) <= 1e-5 * p.scale(), "{p}");
        if cl.kind == EqualityKind::MonomialConjugate {
            assert!((cl.sign_or_c.unwrap().norm() - 1.0).abs() <= 1e-9);
        }
    }
}

#[test]
fn classification_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cases = [
        Poly::chebyshev(4).unwrap(),
        Poly::monomial(c(0.6, 0.8), 2).unwrap(),
        quad(-1.0, 0.0),
        quad(0.0, 0.25),
    ];
    for p in cases {
        let kind = classify_equality(&p, &cfg()).unwrap().kind;
        for _ in 0..2 {
            let a = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU));
            let g = AffineMap::new(a, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).unwrap();
            let q = p.conjugate(&g);
            assert_eq!(classify_equality(&q, &cfg()).unwrap().kind, kind, "{p} under {g:?}");
        }
    }
}

#[test]
fn random_polynomials_satisfy_backward_inclusion() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for d in 2..=6 {
        let coeffs: Vec<Complex64> = (0..=d).map(|_| c(rng.gen(), rng.gen())).collect();
        let p = Poly::new(coeffs).unwrap();
        let config = CheckConfig { seed: rng.gen(), ..cfg() };
        let r = check_backward_inclusion(&p, &config).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{p}: {:e} > {:e}", r.worst_violation, r.threshold);
    }
}
