//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Run with `cargo test -p torelli-cli --test acceptance`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{series_division, symmetric};
use torelli_core::arithmetic_groups::{
    preserves_quadratic, quadratic_refinement, sample_group_element, shipped_transvection,
    ArithmeticGroup, FormSign, GammaType, GroupForm, QuadraticModulus,
};
use torelli_core::borel::{
    borel_constant_rep, lform_inequality_check, root_system, stated_lower_bound, RootFamily,
};
use torelli_core::char_classes::{
    index_generator_map, l_hat_polynomial, l_polynomial, l_to_p, p_in_terms_of_l,
    pontryagin_symbol, ClassLabel,
};
use torelli_core::graded_algebra::series_pointwise_equal;
use torelli_core::invariants::{
    brute_force_invariant_dim, matchings_count, omega_generators, stable_invariant_series,
    two_part_partitions, GradedVCopies, OracleConfig,
};
use torelli_core::mt_cohomology::{
    pair_generators, stable_range, symb_image_generator_degrees, theorem_b_series,
    torelli_invariant_series,
};
use torelli_core::{Error, Rational, WeightedPolynomial};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn l_class_engine() -> Check {
    let a = series_division::x_over_tanh(6);
    for i in 1..=6u32 {
        let oracle = symmetric::multiplicative_sequence(&a, i as usize);
        ensure(l_polynomial(i).terms() == oracle.terms(), || {
            format!("L_{i} differs from the symmetric-function route")
        })?;
    }
    for i in 1..=8u32 {
        let scale = Rational::from_integer(BigInt::from(1) << (2 * i));
        ensure(
            l_hat_polynomial(i).scale(&scale).terms() == l_polynomial(i).terms(),
            || format!("L_{i} != 2^{} hat L_{i}", 2 * i),
        )?;
    }
    for i in 1..=6u32 {
        let p = WeightedPolynomial::variable(&pontryagin_symbol(i), 4 * i).unwrap();
        let back = l_to_p(&p_in_terms_of_l(i)).map_err(|e| e.to_string())?;
        ensure(back.terms() == p.terms(), || {
            format!("p_{i} does not round-trip")
        })?;
    }
    Ok("L_1..L_6 match oracle; L_i = 2^{2i} hat L_i for i <= 8; p_i round-trips for i <= 6".into())
}

fn borel_bounds() -> Check {
    let cases: [(RootFamily, &[usize], &[usize]); 2] = [
        (RootFamily::C, &[2, 3, 4], &[0, 1, 2]),
        (RootFamily::D, &[3, 4], &[0, 1]),
    ];
    let mut summary = Vec::new();
    for (family, gs, ks) in cases {
        for &g in gs {
            let rs = root_system(family, g).map_err(|e| e.to_string())?;
            for &k in ks {
                let bound = stated_lower_bound(family, g, k);
                let c = borel_constant_rep(&rs, k, rs.positive_roots.len());
                ensure(c.meets(bound), || {
                    format!("{family}_{g}, k={k}: c = {c:?} below bound {bound}")
                })?;
                summary.push(format!("{family}{g}k{k}:{:?}", c.lower_bound()));
            }
        }
    }
    let mut certified = 0;
    for g in 2..=12usize {
        for k in 0..=4usize {
            for q in 0..(g.saturating_sub(k)) {
                ensure(
                    lform_inequality_check(g, k, q).map_err(|e| e.to_string())?,
                    || format!("linear form not positive at g={g}, k={k}, q={q}"),
                )?;
                certified += 1;
            }
        }
    }
    Ok(format!(
        "bounds met ({}); linear form certified at {certified} (g,k,q)",
        summary.join(" ")
    ))
}

fn ring_reconciliation() -> Check {
    let mut pairs = 0;
    for n in 8..=24u32 {
        let top = n - 3;
        let torelli = torelli_invariant_series(n, top).map_err(|e| e.to_string())?;
        let pair = theorem_b_series(n, top).map_err(|e| e.to_string())?;
        for g in 3..=(2 * n + 8) {
            let Some(c) = stable_range(g, n).value() else {
                continue;
            };
            let upto = c.min(top) as usize;
            ensure(
                series_pointwise_equal(&torelli, &pair, upto).unwrap(),
                || format!("series differ for n={n}, g={g} below degree {upto}"),
            )?;
            pairs += 1;
        }
    }
    let t3 = torelli_invariant_series(3, 12).map_err(|e| e.to_string())?;
    let b3 = theorem_b_series(3, 12).map_err(|e| e.to_string())?;
    let first = t3.first_difference(&b3);
    ensure(first == Some(4), || {
        format!("n=3 first difference at {first:?}, expected 4")
    })?;
    Ok(format!(
        "{pairs} (n,g) pairs agree; n=3 first differs in degree 4"
    ))
}

fn index_map_bookkeeping() -> Check {
    for n in 4..=9u32 {
        let map = index_generator_map(n).map_err(|e| e.to_string())?;
        let mut targets = Vec::new();
        for e in &map.entries {
            ensure(e.source_degree == e.target_degree, || {
                format!("n={n}: {} -> {} changes degree", e.source, e.target)
            })?;
            let ClassLabel::KappaL(j) = e.target else {
                return Err(format!("n={n}: unexpected target {}", e.target));
            };
            targets.push((j, e.target_degree));
        }
        let symb = symb_image_generator_degrees(n);
        ensure(targets == symb, || {
            format!("n={n}: targets {targets:?} vs symb degrees {symb:?}")
        })?;
    }
    Ok("n = 4..9: degrees preserved, targets equal kappa_{L_i} degrees".into())
}

fn stable_vs_pair_ring() -> Check {
    for n in (8..=48u32).step_by(4) {
        let s = stable_invariant_series(n, 60).map_err(|e| e.to_string())?;
        let b = theorem_b_series(n, 60).map_err(|e| e.to_string())?;
        ensure(s == b, || {
            format!("n={n}: first difference {:?}", s.first_difference(&b))
        })?;
    }
    let n = 32;
    let omegas = omega_generators(n, 60);
    let pairs = pair_generators(n, 60);
    for i in 1..=15u32 {
        let expect = two_part_partitions(i) as usize;
        let stable = omegas.iter().filter(|(x, y)| x + y == 4 * i).count();
        let ring = pairs.iter().filter(|p| p.degree == 4 * i).count();
        ensure(stable == expect && ring == expect, || {
            format!(
                "degree {}: {stable} omegas, {ring} pairs, {expect} partitions",
                4 * i
            )
        })?;
    }
    Ok("n = 8..48 step 4 agree to degree 60; generator counts are i/2 for i <= 15".into())
}

fn oracle_dim(kind: GammaType, g: usize, copies: &GradedVCopies, d: u32) -> Result<usize, String> {
    let group = ArithmeticGroup::new(kind, g).map_err(|e| e.to_string())?;
    let config = OracleConfig::default();
    let mut seen = BTreeMap::new();
    for seed in [1u64, 2] {
        let dim = brute_force_invariant_dim(&group, copies, d, seed, &config)
            .map_err(|e| e.to_string())?;
        seen.insert(seed, dim);
    }
    let values: Vec<usize> = seen.values().copied().collect();
    ensure(values[0] == values[1], || {
        format!("{kind:?} g={g}: seed-dependent result {seen:?}")
    })?;
    Ok(values[0])
}

fn invariant_oracle() -> Check {
    for g in 1..=3 {
        let even = GradedVCopies::new(g, vec![2]).unwrap();
        let d = oracle_dim(GammaType::Orthogonal, g, &even, 4)?;
        ensure(d == 1, || format!("O_{{{g},{g}}} on Sym^2 V: {d}"))?;
        let odd = GradedVCopies::new(g, vec![1]).unwrap();
        let d = oracle_dim(GammaType::Symplectic, g, &odd, 2)?;
        ensure(d == 1, || format!("Sp_{} on Lambda^2 V: {d}", 2 * g))?;
    }
    let mut drops = Vec::new();
    for k in [2u32, 4] {
        for g in 1..=3usize {
            let (copies, d) = GradedVCopies::tensor_power(g, k).unwrap();
            for kind in [GammaType::Symplectic, GammaType::Orthogonal] {
                let dim = oracle_dim(kind, g, &copies, d)?;
                let stable = matchings_count(k) as usize;
                if 2 * g >= k as usize {
                    ensure(dim == stable, || {
                        format!("{kind:?} g={g} k={k}: {dim} != {stable}")
                    })?;
                } else if dim < stable {
                    drops.push(format!("{kind:?} g={g} k={k}: {dim} < {stable}"));
                }
            }
        }
    }
    ensure(!drops.is_empty(), || {
        "no strict drop below the stable range".into()
    })?;
    Ok(format!(
        "quadratic and tensor counts match, seeds 1,2 agree; drop: {}",
        drops.join(", ")
    ))
}

fn group_arithmetic() -> Check {
    for kind in [
        GammaType::Symplectic,
        GammaType::Orthogonal,
        GammaType::Theta,
    ] {
        for g in 1..=3 {
            let group = ArithmeticGroup::new(kind, g).unwrap();
            let j = group.form().matrix();
            for seed in 0..100 {
                let a = sample_group_element(&group, seed, 10).map_err(|e| e.to_string())?;
                let ata = a
                    .transpose()
                    .mul(&j)
                    .and_then(|m| m.mul(&a))
                    .map_err(|e| e.to_string())?;
                ensure(ata == j, || {
                    format!("{kind:?} g={g} seed={seed}: A^T J A != J")
                })?;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in [2u32, 3, 5] {
        for _ in 0..100 {
            let g = rng.random_range(1..=3usize);
            let mut draw = || -> Vec<BigInt> {
                (0..2 * g)
                    .map(|_| BigInt::from(rng.random_range(-1000i64..=1000)))
                    .collect()
            };
            let (v, w) = (draw(), draw());
            let sum: Vec<BigInt> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
            let q = |x: &[BigInt]| quadratic_refinement(x, n).unwrap().value;
            let modulus = QuadraticModulus::for_n(n);
            let form = GroupForm::new(g, FormSign::for_n(n)).unwrap();
            ensure(
                modulus.reduce(q(&sum) - q(&v) - q(&w)) == modulus.reduce(form.pairing(&v, &w)),
                || format!("n={n}: q(v+w)-q(v)-q(w) != I(v,w) for v={v:?}, w={w:?}"),
            )?;
        }
    }

    for n in 1..=16u32 {
        for g in 1..=3 {
            let t = shipped_transvection(g);
            let got = preserves_quadratic(&t, n, g);
            let ok = match QuadraticModulus::for_n(n) {
                QuadraticModulus::Mod2 => got == Ok(false),
                QuadraticModulus::TrivialGroup => got == Ok(true),
                QuadraticModulus::IntegersFull => matches!(got, Err(Error::NotInGroup { .. })),
            };
            ensure(ok, || format!("transvection at n={n}, g={g}: {got:?}"))?;
        }
    }
    Ok("900 samples in group; 300 refinement pairs; transvection rejected exactly for Lambda_n = 2Z".into())
}

const INVOCATIONS: [&[&str]; 12] = [
    &["stable-range", "--g", "25", "--n", "23"],
    &["l-class", "--upto", "3", "--hat", "--format", "csv"],
    &["p-from-l", "--upto", "3"],
    &["mt-series", "--n", "3", "--maxdeg", "12"],
    &["torelli-series", "--n", "9", "--maxdeg", "20"],
    &["theoremB-series", "--n", "9", "--maxdeg", "20"],
    &[
        "borel-constant",
        "--family",
        "C",
        "--g",
        "2",
        "--k",
        "0",
        "--qmax",
        "4",
    ],
    &["lform-check", "--g", "6", "--k", "1", "--q", "3"],
    &[
        "group-sample",
        "--type",
        "theta",
        "--g",
        "2",
        "--seed",
        "7",
        "--len",
        "10",
    ],
    &["quad-refine", "--n", "5", "--vector", "1,-1,3,2"],
    &[
        "invariant-oracle",
        "--type",
        "o",
        "--g",
        "2",
        "--degrees",
        "2",
        "--deg",
        "4",
        "--seed",
        "3",
    ],
    &[
        "crosscheck-sec6",
        "--n",
        "40",
        "--g",
        "2",
        "--maxdeg",
        "8",
        "--oracle",
        "--seed",
        "5",
    ],
];

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_torelli"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!(
            "{args:?} exited with {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok(out.stdout)
}

fn cli_determinism() -> Check {
    for args in INVOCATIONS {
        let first = run_cli(args)?;
        let second = run_cli(args)?;
        ensure(first == second, || format!("{args:?} differs between runs"))?;
        if !args.contains(&"csv") {
            let v: serde_json::Value =
                serde_json::from_slice(&first).map_err(|e| format!("{args:?}: {e}"))?;
            ensure(
                v["provenance"].as_array().is_some_and(|p| !p.is_empty()),
                || format!("{args:?}: missing provenance"),
            )?;
        }
    }
    Ok(format!(
        "{} invocations byte-identical across two runs",
        INVOCATIONS.len()
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "L-class engine",
            limit: Duration::from_secs(10),
            run: l_class_engine,
        },
        Criterion {
            id: 2,
            name: "Borel bounds",
            limit: Duration::from_secs(120),
            run: borel_bounds,
        },
        Criterion {
            id: 3,
            name: "ring reconciliation",
            limit: Duration::from_secs(30),
            run: ring_reconciliation,
        },
        Criterion {
            id: 4,
            name: "index-map degrees",
            limit: Duration::from_secs(1),
            run: index_map_bookkeeping,
        },
        Criterion {
            id: 5,
            name: "stable invariants vs pair ring",
            limit: Duration::from_secs(10),
            run: stable_vs_pair_ring,
        },
        Criterion {
            id: 6,
            name: "invariant oracle",
            limit: Duration::from_secs(180),
            run: invariant_oracle,
        },
        Criterion {
            id: 7,
            name: "group arithmetic",
            limit: Duration::from_secs(10),
            run: group_arithmetic,
        },
        Criterion {
            id: 8,
            name: "CLI determinism",
            limit: Duration::from_secs(30),
            run: cli_determinism,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let result =
            panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(msg) if elapsed <= c.limit => ("PASS", msg),
            Ok(msg) => ("FAIL", format!("{msg}; over time limit {:?}", c.limit)),
            Err(msg) => ("FAIL", msg),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {}: {status} [{:.2}s / {}s] {}: {detail}",
            c.id,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            c.name
        );
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
