//! Acceptance gate: the eight headline guarantees, one test per criterion,
//! each printing a single pass/fail line (visible with `-- --nocapture`).
//!
//! Exact claims are checked with rational equality; the two numeric solvers
//! are held to their pinned tolerances (1e-9 absolute for the min-norm-point
//! cross-check, 1e-6 relative for the projected-gradient p-modulus solve).

use std::fmt::Write as _;
use std::process::Command;

use basemod::matroid::{Caps, Matroid, RankTable};
use basemod::modulus::{self, NUMERIC_TOL};
use basemod::{duality, fixtures, partition, pgrad, random, rat, rint};

const RANDOM_SEEDS: std::ops::RangeInclusive<u64> = 1..=50;

fn edges_for(seed: u64) -> usize {
    4 + (seed as usize % 5)
}

fn fixture_set() -> Vec<(&'static str, Matroid)> {
    vec![
        ("TP", fixtures::tp()),
        ("U12", fixtures::u12()),
        ("K4", fixtures::k4()),
        ("PATH3", fixtures::path3()),
    ]
}

fn criterion(name: &str, body: impl FnOnce() -> Result<String, String>) {
    match body() {
        Ok(detail) => println!("PASS {name}: {detail}"),
        Err(msg) => {
            println!("FAIL {name}: {msg}");
            panic!("{name}: {msg}");
        }
    }
}

macro_rules! req {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err_str(e: impl std::fmt::Display) -> String {
    e.to_string()
}

#[test]
fn c1_fixture_exactness() {
    criterion("c1 fixture exactness", || {
        let caps = Caps::default();
        let expected = [
            ("TP", rat(3, 7)),
            ("U12", rint(2)),
            ("K4", rat(2, 3)),
            ("PATH3", rat(1, 3)),
        ];
        for ((name, m), (_, want)) in fixture_set().iter().zip(&expected) {
            let res = modulus::mod2(m, &caps).map_err(err_str)?;
            req!(&res.mod2 == want, "{name}: mod2 = {} want {}", res.mod2, want);
            // independent confirmation by the exhaustive support-search oracle
            let (_, eta_bf, meo_bf) = modulus::brute_force_eta(m, &caps).map_err(err_str)?;
            req!(eta_bf == res.eta, "{name}: brute-force η* disagrees");
            req!(meo_bf == res.meo, "{name}: brute-force MEO disagrees");
        }
        let tp = fixtures::tp();
        let res = modulus::mod2(&tp, &Caps::default()).map_err(err_str)?;
        let g = tp.ground();
        for (label, want) in [("a", rat(2, 3)), ("b", rat(2, 3)), ("c", rat(2, 3)), ("d", rint(1))] {
            let i = basemod::bits(g.mask_of(&[label]).map_err(err_str)?).next().unwrap();
            req!(res.eta.0[i] == want, "η*(TP).{label} = {} want {}", res.eta.0[i], want);
        }
        req!(res.meo == rat(7, 3), "MEO(TP) = {} want 7/3", res.meo);
        Ok("mod2 on 4 fixtures exact; η*(TP), MEO(TP) exact; brute-force oracle agrees".into())
    });
}

#[test]
fn c2_packing_covering_duality() {
    criterion("c2 packing = strength, covering = arboricity", || {
        let caps = Caps::default();
        let mut instances: Vec<(String, Matroid)> = fixture_set()
            .into_iter()
            .map(|(n, m)| (n.to_string(), m))
            .collect();
        for seed in RANDOM_SEEDS {
            let m = random::random_graphic(seed, edges_for(seed)).map_err(err_str)?;
            instances.push((format!("seed {seed}"), m));
        }
        let count = instances.len();
        for (name, m) in instances {
            let t = RankTable::build(&m, &caps).map_err(err_str)?;
            let s = partition::strength(&t).map_err(err_str)?;
            let d = partition::arboricity(&t).map_err(err_str)?;
            let pk = duality::packing_value(&m, &caps).map_err(err_str)?;
            let cv = duality::covering_value(&m, &caps).map_err(err_str)?;
            req!(pk.value == s.value, "{name}: packing {} ≠ strength {}", pk.value, s.value);
            req!(cv.value == d.value, "{name}: covering {} ≠ arboricity {}", cv.value, d.value);
        }
        Ok(format!("exact LP equality on {count} instances (4 fixtures + 50 random)"))
    });
}

#[test]
fn c3_blocker_vertex_enumeration() {
    criterion("c3 blocker family = extreme points", || {
        let caps = Caps::default();
        for (name, m) in fixture_set() {
            let family = duality::fulkerson_blocker(&m, &caps).map_err(err_str)?;
            let mut theta: Vec<_> = family.iter().map(|bv| bv.vector.0.clone()).collect();
            let mut vertices: Vec<_> = duality::admissible_extreme_points(&m, &caps)
                .map_err(err_str)?
                .into_iter()
                .map(|d| d.0)
                .collect();
            theta.sort();
            vertices.sort();
            req!(
                theta == vertices,
                "{name}: Θ has {} members, vertex enumeration found {}",
                theta.len(),
                vertices.len()
            );
            if name == "TP" {
                req!(theta.len() == 5, "Θ(TP) has {} members, want 5", theta.len());
            }
        }
        Ok("set equality on all 4 fixtures; |Θ(TP)| = 5".into())
    });
}

#[test]
fn c4_dual_density_identity() {
    criterion("c4 η* + η°* = 1", || {
        let caps = Caps::default();
        let mut instances: Vec<(String, Matroid)> = fixture_set()
            .into_iter()
            .map(|(n, m)| (n.to_string(), m))
            .collect();
        for seed in RANDOM_SEEDS {
            let m = random::random_graphic(seed, edges_for(seed)).map_err(err_str)?;
            instances.push((format!("seed {seed}"), m));
        }
        let mut applicable = 0usize;
        for (name, m) in instances {
            let r = m.full_rank();
            if r == 0 || r == m.size() as u64 {
                continue; // identity needs both base families nondegenerate
            }
            applicable += 1;
            let id = duality::dual_eta_identity(&m, &caps).map_err(err_str)?;
            for i in 0..m.size() {
                let sum = &id.eta.0[i] + &id.eta_dual.0[i];
                req!(sum == rint(1), "{name}: η*+η°* = {sum} at element {i}");
            }
        }
        req!(applicable >= 3, "only {applicable} applicable instances");
        Ok(format!("exact pointwise identity on {applicable} applicable instances"))
    });
}

#[test]
fn c5_p_modulus_closed_form_vs_gradient() {
    criterion("c5 closed-form Mod_p vs projected gradient", || {
        let caps = Caps::default();
        let ps = [rat(3, 2), rint(2), rint(3), rint(5)];
        let mut worst: f64 = 0.0;
        for (name, m) in fixture_set() {
            let defl = partition::deflate(&m, &caps).map_err(err_str)?;
            let res = modulus::mod2(&m, &caps).map_err(err_str)?;
            for p in &ps {
                let mp = modulus::mod_p(&defl, p).map_err(err_str)?;
                let pf = basemod::modulus::rat_to_f64(p);
                let pg = pgrad::solve_modp(&m, pf, &caps).map_err(err_str)?;
                let rel = (mp.value - pg.value).abs() / mp.value.max(f64::MIN_POSITIVE);
                worst = worst.max(rel);
                req!(
                    rel <= 1e-6,
                    "{name} p={p}: closed form {} vs gradient {} (rel {rel:.2e})",
                    mp.value,
                    pg.value
                );
                if p == &rint(2) {
                    let exact = mp.value_exact.clone();
                    req!(
                        exact.as_ref() == Some(&res.mod2),
                        "{name}: Mod_2 closed form {exact:?} ≠ mod2 {}",
                        res.mod2
                    );
                }
            }
        }
        Ok(format!(
            "4 fixtures × p ∈ {{3/2, 2, 3, 5}}, worst relative gap {worst:.2e} ≤ 1e-6; p = 2 exact"
        ))
    });
}

#[test]
fn c6_serial_rule_on_beurling_sets() {
    criterion("c6 serial rule on certified Beurling sets", || {
        let caps = Caps::default();
        let mut total = 0usize;
        let mut detail = String::new();
        for (name, m) in fixture_set() {
            let t = RankTable::build(&m, &caps).map_err(err_str)?;
            let res = modulus::mod2(&m, &caps).map_err(err_str)?;
            let sets =
                partition::beurling_sets(&t, &res.eta, &res.fair_support).map_err(err_str)?;
            for &x in &sets {
                let split = partition::serial_split(&m, x, &res, &caps).map_err(err_str)?;
                let sum = &split.left_meo + &split.right_meo;
                req!(sum == res.meo, "{name} X={x:b}: {sum} ≠ MEO {}", res.meo);
                let ok = duality::verify_meomod(&m, &split.pmf, &res.eta, &caps)
                    .map_err(err_str)?;
                req!(ok, "{name} X={x:b}: product pmf fails the certificate check");
            }
            total += sets.len();
            let _ = write!(detail, "{name}:{} ", sets.len());
        }
        req!(total > 0, "no Beurling sets certified on any fixture");
        Ok(format!("{total} sets verified ({})", detail.trim_end()))
    });
}

#[test]
fn c7_wolfe_numeric_agreement() {
    criterion("c7 min-norm-point within 1e-9 of exact η*", || {
        let caps = Caps::default();
        let mut worst: f64 = 0.0;
        let mut count = 0usize;
        for (_, m) in fixture_set() {
            let res = modulus::mod2(&m, &caps).map_err(err_str)?;
            worst = worst.max(res.wolfe_max_err);
            count += 1;
        }
        for seed in RANDOM_SEEDS {
            let m = random::random_graphic(seed, edges_for(seed)).map_err(err_str)?;
            let res = modulus::mod2(&m, &caps).map_err(err_str)?;
            worst = worst.max(res.wolfe_max_err);
            count += 1;
        }
        req!(
            worst <= NUMERIC_TOL,
            "worst max-norm distance {worst:.2e} exceeds {NUMERIC_TOL:.0e}"
        );
        Ok(format!("{count} instances, worst max-norm distance {worst:.2e}"))
    });
}

#[test]
fn c8_invariant_suite_via_cli() {
    criterion("c8 invariant suite via the verify command", || {
        let dir = tempfile::tempdir().map_err(err_str)?;
        let bin = env!("CARGO_BIN_EXE_basemod");
        let mut jobs: Vec<(String, String, String)> = vec![
            ("TP".into(), "graph".into(), "0 1 a\n1 2 b\n0 2 c\n2 3 d\n".into()),
            ("U12".into(), "uniform".into(), "uniform 1 2\n".into()),
            (
                "K4".into(),
                "graph".into(),
                "0 1 e1\n0 2 e2\n0 3 e3\n1 2 e4\n1 3 e5\n2 3 e6\n".into(),
            ),
            ("PATH3".into(), "graph".into(), "0 1 a\n1 2 b\n2 3 c\n".into()),
        ];
        for seed in RANDOM_SEEDS {
            let out = Command::new(bin)
                .args([
                    "random",
                    "--seed",
                    &seed.to_string(),
                    "--size",
                    &edges_for(seed).to_string(),
                ])
                .output()
                .map_err(err_str)?;
            req!(out.status.success(), "random --seed {seed} failed");
            jobs.push((
                format!("seed {seed}"),
                "graph".into(),
                String::from_utf8(out.stdout).map_err(err_str)?,
            ));
        }
        let total = jobs.len();
        for (i, (name, format, text)) in jobs.into_iter().enumerate() {
            let path = dir.path().join(format!("inst{i}.txt"));
            std::fs::write(&path, text).map_err(err_str)?;
            let out = Command::new(bin)
                .args(["verify", path.to_str().unwrap(), "--format", &format])
                .output()
                .map_err(err_str)?;
            req!(
                out.status.success(),
                "{name}: verify exited {:?}\n{}{}",
                out.status.code(),
                String::from_utf8_lossy(&out.stdout),
                String::from_utf8_lossy(&out.stderr)
            );
            let stdout = String::from_utf8(out.stdout).map_err(err_str)?;
            req!(
                stdout.lines().all(|l| l.starts_with("PASS") || l.starts_with("SKIP")),
                "{name}: unexpected verify output:\n{stdout}"
            );
        }
        Ok(format!("verify exit 0 on {total} instances (4 fixtures + 50 random)"))
    });
}
