use jfft_core::format::{read_function_csv, read_gt_csv, write_function_csv, write_gt_csv, write_weights_csv};
use jfft_core::transform::apply_forward_complex;
use jfft_core::{
    apply_forward, apply_inverse, build_plan, load_plan, plan_to_json, project, save_plan, weights, FunctionVector,
    ProblemDims,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn dims_strategy() -> impl Strategy<Value = ProblemDims> {
    (1usize..=9).prop_flat_map(|n| (Just(n), 0..=n)).prop_map(|(n, k)| ProblemDims::new(n, k).unwrap())
}

fn case() -> impl Strategy<Value = (ProblemDims, Vec<f64>)> {
    dims_strategy().prop_flat_map(|d| (Just(d), proptest::collection::vec(-1e3f64..1e3, d.dim())))
}

#[test]
fn saved_plan_behaves_like_the_original() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plan.json");
    let plan = build_plan(ProblemDims::new(9, 4).unwrap()).unwrap();
    save_plan(&plan, &path).unwrap();
    let loaded = load_plan(&path).unwrap();
    assert_eq!(plan_to_json(&plan), plan_to_json(&loaded));

    let f = FunctionVector::new(plan.dims(), (0..126).map(|i| (i as f64).sin()).collect()).unwrap();
    let (a, _) = apply_forward(&plan, &f).unwrap();
    let (b, _) = apply_forward(&loaded, &f).unwrap();
    assert_eq!(a.values(), b.values());
}

#[test]
fn csv_pipeline_round_trips() {
    let plan = build_plan(ProblemDims::new(6, 3).unwrap()).unwrap();
    let f = FunctionVector::new(plan.dims(), (0..20).map(|i| 0.1 * i as f64 - 1.0).collect()).unwrap();

    let mut text = Vec::new();
    write_function_csv(&mut text, &f).unwrap();
    let f2 = read_function_csv(text.as_slice(), plan.dims()).unwrap();
    assert_eq!(f.values(), f2.values());

    let (g, _) = apply_forward(&plan, &f2).unwrap();
    let mut gt = Vec::new();
    write_gt_csv(&mut gt, &g, &plan).unwrap();
    let g2 = read_gt_csv(gt.as_slice(), &plan).unwrap();
    assert_eq!(g.values(), g2.values());

    let (back, _) = apply_inverse(&plan, &g2).unwrap();
    for (x, y) in back.values().iter().zip(f.values()) {
        assert!((x - y).abs() < 1e-12);
    }

    let (w, _) = weights(&plan, &f).unwrap();
    let mut out = Vec::new();
    write_weights_csv(&mut out, &w).unwrap();
    let lines: Vec<String> = String::from_utf8(out).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().enumerate().all(|(a, l)| l.starts_with(&format!("{a},"))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn forward_is_orthogonal((d, values) in case()) {
        let plan = build_plan(d).unwrap();
        let f = FunctionVector::new(d, values).unwrap();
        let (g, _) = apply_forward(&plan, &f).unwrap();
        let scale = f.norm_sqr().max(1.0);
        prop_assert!((g.norm_sqr() - f.norm_sqr()).abs() <= 1e-12 * scale);
        let (back, _) = apply_inverse(&plan, &g).unwrap();
        for (x, y) in back.values().iter().zip(f.values()) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }

    #[test]
    fn projections_are_idempotent_and_disjoint((d, values) in case()) {
        let plan = build_plan(d).unwrap();
        let f = FunctionVector::new(d, values).unwrap();
        for a in 0..=d.s() {
            let (pa, _) = project(&plan, &f, &[a]).unwrap();
            let (paa, _) = project(&plan, &pa, &[a]).unwrap();
            for (x, y) in pa.values().iter().zip(paa.values()) {
                prop_assert!((x - y).abs() <= 1e-9);
            }
            for b in (0..=d.s()).filter(|&b| b != a) {
                let (pba, _) = project(&plan, &pa, &[b]).unwrap();
                prop_assert!(pba.values().iter().all(|x| x.abs() <= 1e-9));
            }
        }
    }

    #[test]
    fn complex_forward_splits_into_real_parts((d, re) in case(), seed in 0u64..1000) {
        let plan = build_plan(d).unwrap();
        let im: Vec<f64> = re.iter().map(|x| (x * 0.37 + seed as f64).cos()).collect();
        let z: Vec<Complex64> = re.iter().zip(&im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        let (gz, _) = apply_forward_complex(&plan, &z).unwrap();
        let (gr, _) = apply_forward(&plan, &FunctionVector::new(d, re).unwrap()).unwrap();
        let (gi, _) = apply_forward(&plan, &FunctionVector::new(d, im).unwrap()).unwrap();
        for ((z, r), i) in gz.iter().zip(gr.values()).zip(gi.values()) {
            prop_assert!((z.re - r).abs() <= 1e-9 && (z.im - i).abs() <= 1e-9);
        }
    }
}
