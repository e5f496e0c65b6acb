//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use hychroma::bounds::{self, format_value, KTable, Quantity, TableOptions};
use hychroma::forbidden::{direct_sum, exact_k_d2, forbidden_coset_partition, ForbiddenLinearCode};
use hychroma::oracle::{self, exact_chi_small};
use hychroma::partition::{self, PartitionMode};
use hychroma::verify::{verify_coloring, Counterexample, Strategy};
use hychroma::z4::{gray_map, preparata_code};
use hychroma::{cli, BinaryLinearCode, BitVector, ColoringCertificate, ColoringMode, Error, Guard};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("hychroma").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

fn construct_via_cli(dir: &std::path::Path, method: &str, file: &str) -> Result<ColoringCertificate, String> {
    let path = dir.join(file);
    let p = path.to_str().unwrap();
    let (code, _, err) = run_cli(&["construct", "--method", method, "--r", "3", "-o", p]);
    ensure!(code == 0, "construct {method} exited {code}: {err}");
    let (code, out, _) = run_cli(&["verify", p]);
    ensure!(code == 0, "verify {file} exited {code}: {out}");
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    ColoringCertificate::from_text(&text).map_err(|e| e.to_string())
}

fn preparata_colorings() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let v16 = construct_via_cli(dir.path(), "preparata-coset", "v16.hcc")?;
    ensure!(
        (v16.n(), v16.d(), v16.mode(), v16.color_count()) == (16, 5, ColoringMode::AtMostD, 256),
        "V_16 certificate is n={} d={} colors={}",
        v16.n(),
        v16.d(),
        v16.color_count()
    );
    let v15 = construct_via_cli(dir.path(), "preparata-punctured", "v15.hcc")?;
    ensure!(
        (v15.n(), v15.d(), v15.mode(), v15.color_count()) == (15, 4, ColoringMode::AtMostD, 128),
        "V_15 certificate is n={} d={} colors={}",
        v15.n(),
        v15.d(),
        v15.color_count()
    );
    Ok(format!(
        "V_16 d=5: 256 colors, V_15 d=4: 128 colors, both verified ({:.1}s)",
        start.elapsed().as_secs_f64()
    ))
}

fn octacode_facts() -> Outcome {
    let code = preparata_code(3).map_err(|e| e.to_string())?;
    ensure!((code.k1(), code.k2()) == (4, 0), "type 4^{} 2^{}", code.k1(), code.k2());
    let words = code.codewords(Guard::Enforce).map_err(|e| e.to_string())?;
    ensure!(words.len() == 256, "{} codewords", words.len());
    let min_lee = words.iter().filter(|w| !w.is_zero()).map(|w| w.lee_weight()).min();
    ensure!(min_lee == Some(6), "minimum Lee weight {min_lee:?}");
    let mut dist = std::collections::BTreeMap::new();
    for w in &words {
        *dist.entry(gray_map(w).weight()).or_insert(0u32) += 1;
    }
    let want: std::collections::BTreeMap<u32, u32> = [(0, 1), (6, 112), (8, 30), (10, 112), (16, 1)].into();
    ensure!(dist == want, "Gray weight distribution {dist:?}");
    Ok("type 4^4, min Lee 6, Gray weights {0:1, 6:112, 8:30, 10:112, 16:1}".into())
}

fn gray_properties() -> Outcome {
    let c = oracle::gray_map_check(4, 1_000_000, 0x5eed).map_err(|e| e.to_string())?;
    ensure!(
        c.isometry_violations == 0 && c.identity_violations == 0,
        "{} isometry and {} identity violations",
        c.isometry_violations,
        c.identity_violations
    );
    Ok(format!("{} pairs (exhaustive n<=4 plus 10^6 random), 0 violations", c.pairs))
}

fn exact_d2_family() -> Outcome {
    for n in 2..=32usize {
        let (k, code) = exact_k_d2(n).map_err(|e| e.to_string())?;
        let want = n - (usize::BITS - (n - 1).leading_zeros()) as usize;
        ensure!(k == want && code.dimension() == want, "n={n}: k={k}, witness {}", code.dimension());
        if n <= 6 {
            let more = oracle::forbidden_code_exists(n, k + 1, 2, Guard::Enforce).map_err(|e| e.to_string())?;
            ensure!(!more, "n={n}: a dimension-{} code avoids weight 2", k + 1);
        }
    }
    Ok("greedy kernel dimension n - ceil(log2 n) for n=2..32; k+1 impossible for n<=6".into())
}

fn bound_comparisons() -> Outcome {
    let kt = KTable::builtin();
    let opts = TableOptions::default();
    let mut rows = bounds::bound_table(Quantity::Chi, 4, [13, 14], &kt, opts).map_err(|e| e.to_string())?;
    rows.extend(bounds::bound_table(Quantity::Chi, 6, [28], &kt, opts).map_err(|e| e.to_string())?);
    let text = bounds::render_text(&rows);
    let expected = [("2^8", "2^7"), ("2^9", "2^7"), ("2^17", "2^11")];
    for (row, (greedy, dsum)) in rows.iter().zip(expected) {
        let g = format_value(&row.upper_by_rule("greedy-forbidden").ok_or("no greedy row")?.value);
        let s = format_value(&row.upper_by_rule("direct-sum-forbidden").ok_or("no direct-sum row")?.value);
        ensure!((g.as_str(), s.as_str()) == (greedy, dsum), "n={}: greedy {g}, direct sum {s}", row.n);
        ensure!(text.contains(greedy) && text.contains(dsum), "rendered table lacks {greedy}/{dsum}");
    }
    let mut cells = 0;
    for d in [2u32, 4, 6, 8] {
        for n in 2 * d..=64 {
            let g = bounds::greedy_upper(n, d).map_err(|e| e.to_string())?;
            let k = bounds::kdp_upper(n, d).map_err(|e| e.to_string())?;
            ensure!(g <= k, "greedy {g} > kdp {k} at n={n} d={d}");
            cells += 1;
        }
    }
    Ok(format!("2^8/2^9/2^17 and 2^7/2^7/2^11; greedy <= kdp on all {cells} grid cells"))
}

fn golay_direct_sum() -> Outcome {
    let tail = ForbiddenLinearCode::full_space(5, 6).map_err(|e| e.to_string())?;
    let code = direct_sum(&BinaryLinearCode::golay23(), &tail, Guard::Enforce).map_err(|e| e.to_string())?;
    ensure!((code.length(), code.dimension()) == (28, 17), "[{}, {}]", code.length(), code.dimension());
    let weights = code.code().weight_distribution(Guard::Enforce).map_err(|e| e.to_string())?;
    ensure!(weights.iter().sum::<u64>() == 1 << 17, "scanned {} codewords", weights.iter().sum::<u64>());
    ensure!(weights[6] == 0, "{} codewords of weight 6", weights[6]);
    match forbidden_coset_partition(&code, Guard::Enforce) {
        Err(Error::ExhaustiveLimit { .. }) => {}
        Ok(_) => return Err("V_28 coset partition was materialized".into()),
        Err(e) => return Err(format!("unexpected error {e}")),
    }
    Ok("[28,17] code, no weight-6 word among 2^17; V_28 partition refused by guard".into())
}

fn e<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn product_v9() -> Outcome {
    let ham = e(partition::from_binary_linear(&BinaryLinearCode::hamming(3).unwrap(), 2, Guard::Enforce))?;
    let v2 = e(hychroma::forbidden::greedy_forbidden_matrix(2, 2, Guard::Enforce))?;
    let e2 = e(forbidden_coset_partition(
        &e(hychroma::forbidden::code_from_parity(&v2, 2, Guard::Enforce))?,
        Guard::Enforce,
    ))?;
    ensure!(
        (ham.block_count(), e2.block_count(), e2.mode()) == (8, 2, PartitionMode::ForbiddenDistance(2)),
        "factors have {} and {} blocks",
        ham.block_count(),
        e2.block_count()
    );
    let p = e(partition::product_partition(&ham, &e2))?;
    let cert = e(partition::partition_to_coloring(&p))?;
    let report = e(verify_coloring(&cert, Strategy::Auto, Guard::Enforce))?;
    ensure!(report.passed, "verification failed: {}", report.summary());
    ensure!(
        (cert.n(), cert.d(), cert.mode(), cert.color_count()) == (9, 2, ColoringMode::ExactD, 16),
        "certificate n={} colors={}",
        cert.n(),
        cert.color_count()
    );
    Ok("(7,8,3) x (2,2,{2}) gives a verified exact-2 coloring of V_9 with 16 colors".into())
}

/// Every certificate constructible for `(n, d, mode)` at this scale.
fn constructions(n: usize, d: u32, mode: ColoringMode) -> Vec<ColoringCertificate> {
    let mut out = Vec::new();
    match mode {
        ColoringMode::AtMostD => {
            let (_, code) = oracle::exact_k_small(n, d + 1, Guard::Enforce).unwrap();
            out.push(partition::partition_to_coloring(&partition::from_binary_linear(&code, d, Guard::Enforce).unwrap()).unwrap());
            let single = partition::singleton_partition(n, PartitionMode::MinDistanceAtLeast(d + 1)).unwrap();
            out.push(partition::partition_to_coloring(&single).unwrap());
            if n >= 2 {
                out.push(partition::partition_to_coloring(&partition::from_binary_linear(
                    &BinaryLinearCode::repetition(n).unwrap(),
                    d,
                    Guard::Enforce,
                ).unwrap_or_else(|_| single.clone())).unwrap());
            }
        }
        ColoringMode::ExactD => {
            if d % 2 == 1 {
                out.push(partition::parity_coloring(n, d).unwrap());
            } else {
                let h = hychroma::forbidden::greedy_forbidden_matrix(n, d, Guard::Enforce).unwrap();
                let code = hychroma::forbidden::code_from_parity(&h, d, Guard::Enforce).unwrap();
                out.push(partition::partition_to_coloring(&forbidden_coset_partition(&code, Guard::Enforce).unwrap()).unwrap());
            }
        }
    }
    out
}

fn oracle_agreement() -> Outcome {
    let mut checked = 0;
    for n in 1..=5usize {
        for d in 1..=n as u32 {
            for mode in [ColoringMode::AtMostD, ColoringMode::ExactD] {
                let chi = exact_chi_small(n, d, mode, Guard::Enforce).map_err(|e| e.to_string())?;
                for cert in constructions(n, d, mode) {
                    let r = verify_coloring(&cert, Strategy::Auto, Guard::Enforce).map_err(|e| e.to_string())?;
                    ensure!(r.passed, "{} failed verification", cert.provenance());
                    ensure!(
                        chi <= cert.color_count(),
                        "exact {chi} exceeds {} colors of {} (n={n} d={d})",
                        cert.color_count(),
                        cert.provenance()
                    );
                    checked += 1;
                }
                if mode == ColoringMode::AtMostD && d == 1 {
                    ensure!(chi == 2, "chi'_1({n}) = {chi}");
                }
            }
        }
    }
    let c = exact_chi_small(3, 2, ColoringMode::AtMostD, Guard::Enforce).map_err(|e| e.to_string())?;
    ensure!(c == 4, "chi'_2(3) = {c}");
    Ok(format!("{checked} certificates for n<=5 all at or above the exact value; chi'_2(3)=4, chi'_1(n)=2"))
}

fn mutation_detection() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let code = preparata_code(3).map_err(|e| e.to_string())?;
    let p = partition::z4_punctured_partition(&code, Guard::Enforce).map_err(|e| e.to_string())?;
    let cert = partition::partition_to_coloring(&p).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let path = dir.path().join("mutant.hcc");
    let path_str = path.to_str().unwrap();
    let mut detected = 0;
    for trial in 0..100 {
        let v = rng.gen_range(0..1u64 << 15);
        let old = cert.color(v);
        let new = (old + rng.gen_range(1..cert.color_count())) % cert.color_count();
        let mutant = cert.with_color(v, new);
        std::fs::write(&path, mutant.to_text()).map_err(|e| e.to_string())?;
        let (status, out, _) = run_cli(&["verify", path_str, "--strategy", "pairwise"]);
        ensure!(status == 1, "trial {trial}: verify exited {status}");
        // re-check the printed pair independently of the verifier
        let line = out
            .lines()
            .find_map(|l| l.strip_prefix("counterexample: "))
            .ok_or_else(|| format!("trial {trial}: no counterexample printed"))?;
        let words: Vec<&str> = line.split_whitespace().collect();
        ensure!(words.len() >= 3 && words[1] == "and", "trial {trial}: unexpected `{line}`");
        let (a, b) = (words[0], words[2]);
        let distance = a.bytes().zip(b.bytes()).filter(|(x, y)| x != y).count() as u32;
        let (u, w) = (
            BitVector::parse(a).map_err(|e| e.to_string())?.bits(),
            BitVector::parse(b).map_err(|e| e.to_string())?.bits(),
        );
        ensure!(
            (1..=4).contains(&distance) && mutant.color(u) == mutant.color(w),
            "trial {trial}: reported pair does not violate"
        );
        let lib = verify_coloring(&mutant, Strategy::Neighbor, Guard::Enforce).map_err(|e| e.to_string())?;
        ensure!(
            matches!(lib.counterexample, Some(Counterexample::Pair { .. })),
            "trial {trial}: library verifier disagrees"
        );
        detected += 1;
    }
    Ok(format!("{detected}/100 single-color mutations of the V_15 certificate rejected with re-checked pairs"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("preparata colorings of V_16 and V_15", preparata_colorings),
        ("octacode parameters", octacode_facts),
        ("Gray map isometry and carry identity", gray_properties),
        ("exact weight-2 forbidden dimension", exact_d2_family),
        ("bound table comparisons", bound_comparisons),
        ("Golay direct-sum witness at (28,6)", golay_direct_sum),
        ("product coloring of V_9", product_v9),
        ("oracle agreement n<=5", oracle_agreement),
        ("mutation robustness", mutation_detection),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
