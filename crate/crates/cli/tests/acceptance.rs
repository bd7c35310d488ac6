//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its runtime (visible under `--nocapture`).
//!
//! Run with `cargo test -p quiverlab-cli --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quiverlab::cluster::{ClusterIndec, ClusterModel, ClusterObject, TiltingSet, Window};
use quiverlab::rep::{self, derive_seed};
use quiverlab::{
    euler_form, ext1_dim_unchecked, generic_rigid_rep, hom_space, iso_check, kronecker_sequences,
    kronecker_weyl_word, positive_real_roots, projective, random_rep, tits_form, DimVector, Quiver,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quiverlab"))
}

fn pass(criterion: &str, started: Instant) {
    println!(
        "acceptance {criterion}: PASS ({:.2}s)",
        started.elapsed().as_secs_f64()
    );
}

fn tsv_vectors(stdout: &[u8]) -> BTreeSet<(i64, i64)> {
    String::from_utf8_lossy(stdout)
        .lines()
        .map(|l| {
            let mut it = l.split('\t');
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect()
}

#[test]
fn criterion_01_rigid_classification_m3() {
    let t = Instant::now();
    let out = bin()
        .args(["rigid", "--m", "3", "--bound", "40", "--seed", "0", "--format", "tsv"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let got = tsv_vectors(&out.stdout);
    let want: BTreeSet<(i64, i64)> = [
        (1, 0),
        (0, 1),
        (3, 1),
        (1, 3),
        (8, 3),
        (3, 8),
        (21, 8),
        (8, 21),
    ]
    .into_iter()
    .collect();
    assert_eq!(got, want);
    pass("01 rigid classification m=3 bound 40", t);
}

#[test]
fn criterion_02_rigid_classification_m6() {
    let t = Instant::now();
    let out = bin()
        .args(["rigid", "--m", "6", "--bound", "40", "--seed", "0", "--format", "tsv"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let got = tsv_vectors(&out.stdout);
    let want: BTreeSet<(i64, i64)> =
        [(1, 0), (0, 1), (6, 1), (1, 6), (35, 6), (6, 35)].into_iter().collect();
    assert_eq!(got, want);
    pass("02 rigid classification m=6 bound 40", t);
}

#[test]
fn criterion_03_model_constants() {
    let t = Instant::now();
    // degree-3 generator table (1, 1, 3, 0), model and honest routes
    let model = ClusterModel::new(3, 0).unwrap();
    let h = |a: i64, b: i64| model.hom_dim(&model.standard(a), &model.standard(b)).unwrap();
    assert_eq!((h(0, 0), h(1, 1), h(0, 1), h(1, 0)), (1, 1, 3, 0));
    let q3 = Quiver::kronecker(3);
    let p0 = projective(&q3, 1).unwrap();
    let p1 = projective(&q3, 2).unwrap();
    assert_eq!(hom_space(&p0, &p0).unwrap().dim(), 1);
    assert_eq!(hom_space(&p1, &p1).unwrap().dim(), 1);
    assert_eq!(hom_space(&p0, &p1).unwrap().dim(), 3);
    assert_eq!(hom_space(&p1, &p0).unwrap().dim(), 0);
    // degree-6 constant
    let q6 = Quiver::kronecker(6);
    let p0 = projective(&q6, 1).unwrap();
    let p1 = projective(&q6, 2).unwrap();
    assert_eq!(hom_space(&p0, &p1).unwrap().dim(), 6);
    let m6 = ClusterModel::new(6, 0).unwrap();
    assert_eq!(m6.hom_dim(&m6.standard(0), &m6.standard(1)).unwrap(), 6);
    pass("03 generator constants (1,1,3,0) and degree 6", t);
}

#[test]
fn criterion_04_mutation_chain() {
    let t = Instant::now();
    let model = ClusterModel::new(3, 0).unwrap();
    let win = Window {
        index_radius: 8,
        ..Window::default()
    };
    for i in -5..=5i64 {
        let ci = model.standard_pair(i);
        let up = model.mutate(&ci, &model.standard(i), &win).unwrap();
        assert_eq!(up, model.standard_pair(i + 1), "mutation up at {i}");
        let down = model.mutate(&ci, &model.standard(i + 1), &win).unwrap();
        assert_eq!(down, model.standard_pair(i - 1), "mutation down at {i}");
        let back = model.mutate(&up, &model.standard(i + 2), &win).unwrap();
        assert_eq!(back, ci, "double mutation at {i}");
    }
    pass("04 mutation chain |i| <= 5", t);
}

#[test]
fn criterion_05_two_complements() {
    let t = Instant::now();
    let model = ClusterModel::new(3, 0).unwrap();
    let win = Window {
        index_radius: 6,
        dim_cap: 45,
        honest_cap: 6,
    };
    for i in -4..=4i64 {
        let d = TiltingSet::new(vec![model.standard(i + 1)]);
        let comps = model.complements(&d, &win).unwrap();
        assert_eq!(
            comps,
            vec![model.standard(i), model.standard(i + 2)],
            "complements of M({})",
            i + 1
        );
    }
    pass("05 exactly two complements, window 6, caps 45", t);
}

#[test]
fn criterion_06_euler_identity() {
    let t = Instant::now();
    let quivers = [
        ("K2", Quiver::kronecker(2)),
        ("K3", Quiver::kronecker(3)),
        ("K6", Quiver::kronecker(6)),
        ("A2", Quiver::linear(2)),
        ("A3", Quiver::linear(3)),
    ];
    for (name, q) in quivers {
        let n = q.vertex_count();
        for case in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(case, name, &[n as i64]));
            let dx = DimVector((0..n).map(|_| rng.gen_range(0..=4)).collect());
            let dy = DimVector((0..n).map(|_| rng.gen_range(0..=4)).collect());
            let x = random_rep(&q, &dx, 6, &mut rng).unwrap();
            let y = random_rep(&q, &dy, 6, &mut rng).unwrap();
            let hom = hom_space(&x, &y).unwrap().dim() as i64;
            let ext = ext1_dim_unchecked(&x, &y).unwrap() as i64;
            let form = euler_form(&q, &dx, &dy).unwrap();
            assert_eq!(hom - ext, form, "{name} case {case} d={dx} e={dy}");
        }
    }
    pass("06 Euler identity, 100 pairs x 5 quivers", t);
}

#[test]
fn criterion_07_kac_uniqueness() {
    let t = Instant::now();
    for m in [2u64, 3, 6] {
        let q = Quiver::kronecker(m as usize);
        // unique rigid indecomposable at every real root in range
        for d in positive_real_roots(&q, 8).unwrap() {
            let mut r1 = ChaCha8Rng::seed_from_u64(derive_seed(m, "acc7-a", &d.0));
            let mut r2 = ChaCha8Rng::seed_from_u64(derive_seed(m, "acc7-b", &d.0));
            let x = generic_rigid_rep(&q, &d, 8, 10, &mut r1)
                .unwrap_or_else(|e| panic!("sampling failed at real Schur root {d} (m={m}): {e}"));
            let y = generic_rigid_rep(&q, &d, 8, 10, &mut r2)
                .unwrap_or_else(|e| panic!("sampling failed at real Schur root {d} (m={m}): {e}"));
            assert!(iso_check(&x, &y).unwrap(), "samples at {d} not isomorphic (m={m})");
        }
        // no rigid representation on the non-positive part of the form
        for a in 0..=8i64 {
            for b in 0..=8i64 {
                let d = DimVector(vec![a, b]);
                if d.is_zero() || tits_form(&q, &d).unwrap() > 0 {
                    continue;
                }
                for s in 0..8u64 {
                    let mut salt = d.0.clone();
                    salt.push(s as i64);
                    let mut rng =
                        ChaCha8Rng::seed_from_u64(derive_seed(m, "acc7-nonrigid", &salt));
                    let x = random_rep(&q, &d, 10, &mut rng).unwrap();
                    assert!(
                        rep::ext1_positive(&x, &x).unwrap(),
                        "rigid sample at imaginary vector {d} (m={m})"
                    );
                }
            }
        }
    }
    pass("07 uniqueness at real Schur roots; imaginary non-rigidity", t);
}

#[test]
fn criterion_08_weyl_recurrence_agreement() {
    let t = Instant::now();
    for m in [2u64, 3, 6] {
        let (p, i) = kronecker_sequences(m, 9).unwrap();
        for idx in 0..=8usize {
            assert_eq!(
                kronecker_weyl_word(m, false, idx).unwrap(),
                p[idx],
                "P word m={m} i={idx}"
            );
            assert_eq!(
                kronecker_weyl_word(m, true, idx).unwrap(),
                i[idx],
                "I word m={m} i={idx}"
            );
        }
    }
    pass("08 Weyl words match recurrences, i <= 8, m in {2,3,6}", t);
}

#[test]
fn criterion_09_symmetry_and_rigidity_preservation() {
    let t = Instant::now();
    let model = ClusterModel::new(3, 0).unwrap();
    let win = Window::default();
    // Serre symmetry on all chain pairs of the default window.
    for a in -win.index_radius..=win.index_radius {
        for b in -win.index_radius..=win.index_radius {
            let lhs = model
                .hom_dim(&model.standard(a), &model.standard(b - 2))
                .unwrap();
            let rhs = model
                .hom_dim(&model.standard(b), &model.standard(a - 2))
                .unwrap();
            assert_eq!(lhs, rhs, "chain pair ({a}, {b})");
        }
    }
    // Symmetry against sampled regular modules. Translate outputs grow
    // entries quickly, so the explicit pair scan runs on the strip where
    // exact reconstruction stays cheap; the chain pairs above cover the
    // full window.
    let scan = model.window_scan(&win).unwrap();
    let small: Vec<_> = scan
        .honest_regulars
        .iter()
        .filter(|r| r.dims().max_abs() <= 4)
        .collect();
    for r in &small {
        let zr = ClusterIndec::Module((*r).clone());
        for a in -4..=3i64 {
            let za = model.standard(a);
            let lhs = model.ext1_pair(&za, &zr).unwrap();
            let rhs = model.ext1_pair(&zr, &za).unwrap();
            assert_eq!(lhs, rhs, "mixed pair (M({a}), {})", r.dims());
        }
        for s in &small {
            let zs = ClusterIndec::Module((*s).clone());
            let lhs = model.ext1_pair(&zr, &zs).unwrap();
            let rhs = model.ext1_pair(&zs, &zr).unwrap();
            assert_eq!(lhs, rhs, "regular pair ({}, {})", r.dims(), s.dims());
        }
    }
    // 2-rigidity preservation across the window, including the certificate
    // tier, via the equivalence report.
    let report = model
        .verify_equivalence_window(&model.standard_pair(0), &win, 0)
        .unwrap();
    assert!(
        report.passed(),
        "equivalence window failures: {:?}",
        report.checks.iter().filter(|c| !c.ok).collect::<Vec<_>>()
    );
    // and 2-rigidity of sampled regulars is decided exactly as on the
    // module side
    for r in &scan.honest_regulars {
        let obj = ClusterObject::from(ClusterIndec::Module(r.clone()));
        assert!(!model.is_2_rigid(&obj).unwrap());
        assert!(tits_form(model.quiver(), r.dims()).unwrap() <= 0);
    }
    pass("09 orbit symmetry and rigidity preservation", t);
}

#[test]
fn criterion_10_verify_determinism() {
    let t = Instant::now();
    let run = || {
        bin()
            .args(["verify", "--all", "--seed", "0"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert!(first.status.success(), "first run exited nonzero");
    assert!(second.status.success(), "second run exited nonzero");
    let strip = |out: &[u8]| {
        let v: serde_json::Value = serde_json::from_slice(out).unwrap();
        let mut v = v;
        for r in v.as_array_mut().unwrap() {
            r["ms"] = serde_json::json!(0);
        }
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(&first.stdout), strip(&second.stdout));
    let reports: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert!(reports
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["status"] == "pass"));
    pass("10 verify --all determinism and exit 0", t);
}
