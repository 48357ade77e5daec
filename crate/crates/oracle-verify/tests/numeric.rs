use oracle_verify::quad::to_f64_lossy;
use oracle_verify::{asymptotic_order_check, gaussian_log_integral, partial_sum, QuadratureProblem};
use series_core::rational::{int, rat};
use stable_poly::StableTower;

#[test]
fn quartic_partial_sums_and_orders() {
    let p = QuadratureProblem::quartic(int(1));
    let mut t = StableTower::new(1);
    let h = rat(1, 10);
    assert_eq!(partial_sum(&mut t, &p, 2, &h).unwrap(), rat(-1, 80));
    assert_eq!(partial_sum(&mut t, &p, 3, &h).unwrap(), rat(-1, 80) + rat(1, 1200));
    for g in 1..=3 {
        let rep = asymptotic_order_check(&p, &mut t, g).unwrap();
        print!("{}", rep.tsv());
        assert!(rep.passed);
        let last = *rep.orders().last().unwrap();
        assert!((last - g as f64).abs() < 0.15, "G={g}: {last}");
    }
}

#[test]
fn scaling_in_s() {
    // ξ = √s η turns the quartic weight at (ħ, s) into the one at (ħs², 1)
    let a = QuadratureProblem::quartic(rat(1, 2));
    let b = QuadratureProblem::quartic(int(1));
    let va = gaussian_log_integral(&a, &rat(1, 5), &int(0)).unwrap();
    let vb = gaussian_log_integral(&b, &rat(1, 20), &int(0)).unwrap();
    let diff = to_f64_lossy(&va.value) - to_f64_lossy(&vb.value);
    assert!(diff.abs() < 1e-15 * to_f64_lossy(&vb.value).abs(), "{diff:e}");
    let mut t = StableTower::new(1);
    assert_eq!(partial_sum(&mut t, &a, 3, &rat(1, 5)).unwrap(), partial_sum(&mut t, &b, 3, &rat(1, 20)).unwrap());
}

#[test]
fn divergent_and_unstable_inputs_are_rejected() {
    let mut p = QuadratureProblem::quartic(int(1));
    p.u_spec = vec![(0, 4, int(1))];
    let err = gaussian_log_integral(&p, &rat(1, 10), &int(0)).unwrap_err();
    assert!(err.to_string().contains("diverges"), "{err}");
    p.u_spec = vec![(0, 3, int(1))];
    assert!(gaussian_log_integral(&p, &rat(1, 10), &int(0)).is_err());
    p.u_spec = vec![(0, 4, int(-1)), (0, 2, rat(1, 2))];
    let mut t = StableTower::new(1);
    assert!(asymptotic_order_check(&p, &mut t, 2).is_err());
    // still integrable, so the integral itself is fine
    assert!(gaussian_log_integral(&p, &rat(1, 10), &int(0)).is_ok());
}
