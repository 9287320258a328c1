//! Acceptance battery. Runs as a plain binary so every criterion prints one
//! PASS/FAIL line whether or not output capture is on.

use std::collections::{HashMap, HashSet};
use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use factorpoly::enumeration::{
    brute_counts, dp_counts, factor_counts, sample_nonvanishing, CoeffSeq, DegreeProfile, SampleWeights,
};
use factorpoly::fugacities::{
    binomial_reciprocal_fugacities, interval_fugacities, lemma_gamma, ruelle_fugacities, three_term_ratio,
    thm26_fugacities, LemmaFamily, Quadratic,
};
use factorpoly::inequalities::{
    hurwitz_consequences_check, log_concavity_check, newton_check, toeplitz_minors_check,
};
use factorpoly::polynomials::{classify, find_roots, Classification, Tolerances};
use factorpoly::scalar::{binomial, rat};
use factorpoly::verify::{
    all_multigraphs, bound_choices, check_cor19, check_heilmann_lieb, check_ruelle_bound, check_ruelle_fugacity,
    check_thm27, random_multigraph, scan_conjecture1, BoundPolicy, FamilySpec, Generator, HarnessConfig,
    ScanReport, TheoremCheck, Verdict,
};
use factorpoly::{DegreeBounds, FugacitySpec, Multigraph, Region, Surd, UniPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dump(check: &TheoremCheck) -> String {
    serde_json::to_string_pretty(check).expect("serializable")
}

/// A falsified theorem check is an implementation bug; fail with the full record.
fn confirmed(check: &TheoremCheck) -> Result<(), String> {
    match &check.verdict {
        Verdict::Confirmed => Ok(()),
        _ => Err(format!("unexpected verdict:\n{}", dump(check))),
    }
}

fn within(limit: Duration, started: Instant) -> Result<(), String> {
    let spent = started.elapsed();
    ensure(spent <= limit, || format!("took {spent:.1?}, limit {limit:?}"))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn simple_graph(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> Multigraph {
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(0..=max_m.min(n * (n - 1) / 2));
    random_multigraph(n, m, true, rng).unwrap()
}

fn cycle(n: usize) -> Multigraph {
    Multigraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
}

fn max_imag_ratio(c: &Classification) -> f64 {
    let scale = c.max_modulus.unwrap_or(0.0);
    if scale == 0.0 {
        return 0.0;
    }
    c.roots.roots.iter().map(|z| z.im.abs()).fold(0.0, f64::max) / scale
}

fn strictly_negative_real(p: &UniPoly, label: &str) -> Result<(), String> {
    let c = classify(p, &Tolerances::default()).map_err(|e| format!("{label}: {e}"))?;
    ensure(c.roots.origin_multiplicity == 0, || format!("{label}: zero at the origin"))?;
    ensure(c.roots.roots.iter().all(|z| z.re < 0.0), || format!("{label}: root with nonnegative real part"))?;
    let ratio = max_imag_ratio(&c);
    ensure(ratio <= 1e-8, || format!("{label}: max |Im| / max |root| = {ratio:e}"))
}

fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let graphs = all_multigraphs(4, 6);
    let mut compared = 0usize;
    for g in &graphs {
        let mut specs = Vec::new();
        for (f, w) in [(0, 1), (0, 2), (1, 1), (1, 2)] {
            specs.push(FugacitySpec::per_vertex(g, |_, d| Ok((d, interval_fugacities(f.min(d), (f + w).min(d), d)?))));
        }
        let delta = g.max_degree().max(1);
        specs.push(FugacitySpec::per_vertex(g, |_, d| Ok((d.max(2), ruelle_fugacities(delta)?))));
        for q in [Quadratic::Sqrt3, Quadratic::Sqrt2, Quadratic::Two] {
            specs.push(FugacitySpec::per_vertex(g, |_, d| Ok((d, thm26_fugacities(0, d, d, q)?))));
        }
        specs.push(FugacitySpec::per_vertex(g, |_, d| Ok((d, binomial_reciprocal_fugacities(d)))));
        for spec in specs {
            let spec = spec.map_err(|e| e.to_string())?;
            let dp = dp_counts(g, &spec).map_err(|e| e.to_string())?;
            let brute = brute_counts(g, &spec).map_err(|e| e.to_string())?;
            ensure(dp == brute, || format!("mismatch on\n{}dp {dp}\nbrute {brute}", g.to_text()))?;
            compared += 1;
        }
    }
    within(Duration::from_secs(60), started)?;
    Ok(format!("{} graphs, {compared} instances", graphs.len()))
}

fn matching_polynomials() -> Outcome {
    let started = Instant::now();
    let mut r = rng(2);
    let cfg = HarnessConfig::default();
    for _ in 0..200 {
        let g = simple_graph(&mut r, 10, 20);
        let check = check_heilmann_lieb(&g, &cfg).map_err(|e| e.to_string())?;
        confirmed(&check)?;
        let b = DegreeBounds::constant(g.vertex_count(), 0, 1).unwrap();
        strictly_negative_real(&factor_counts(&g, &b).unwrap().poly(), &g.to_text())?;
    }
    within(Duration::from_secs(30), started)?;
    Ok("200 graphs".into())
}

/// Random simple graphs with `2 ≤ Δ ≤ 4` and at most 14 edges.
fn bounded_degree_family() -> Vec<Multigraph> {
    let mut r = rng(3);
    let mut out = Vec::new();
    while out.len() < 100 {
        let g = simple_graph(&mut r, 10, 14);
        if (2..=4).contains(&g.max_degree()) {
            out.push(g);
        }
    }
    out
}

fn real_part_bound() -> Outcome {
    let cfg = HarnessConfig::default();
    let mut worst = f64::INFINITY;
    for g in bounded_degree_family() {
        let check = check_ruelle_bound(&g, &cfg).map_err(|e| e.to_string())?;
        confirmed(&check)?;
        let slack = check.margins["bound_slack"];
        ensure(slack >= -1e-8, || format!("slack {slack:e}:\n{}", dump(&check)))?;
        worst = worst.min(slack);
    }
    let c3 = check_ruelle_bound(&cycle(3), &cfg).map_err(|e| e.to_string())?;
    confirmed(&c3)?;
    let margin = c3.margins["bound_slack"];
    ensure(c3.margins["bound"] == -1.0 && margin.abs() <= 1e-9, || format!("triangle margin {margin:e}"))?;
    Ok(format!("smallest slack {worst:.3e}, triangle margin {margin:.1e}"))
}

fn critical_fugacity() -> Outcome {
    let cfg = HarnessConfig::default();
    for g in bounded_degree_family() {
        let check = check_ruelle_fugacity(&g, None, &cfg).map_err(|e| e.to_string())?;
        confirmed(&check)?;
        let p = UniPoly::new(check.coefficients.clone().unwrap());
        strictly_negative_real(&p, &g.to_text())?;
    }
    Ok("100 graphs".into())
}

fn unit_circle() -> Outcome {
    let cfg = HarnessConfig::default();
    let mut r = rng(5);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = r.gen_range(1..=6);
        let m = r.gen_range(1..=12);
        let g = random_multigraph(n, m, false, &mut r).unwrap();
        let check = check_thm27(&g, &cfg).map_err(|e| e.to_string())?;
        confirmed(&check)?;
        let dev = check.margins.get("max_modulus_deviation").copied().unwrap_or(0.0);
        ensure(dev <= 1e-9, || format!("|modulus - 1| = {dev:e}:\n{}", dump(&check)))?;
        worst = worst.max(dev);
    }
    let c3 = check_thm27(&cycle(3), &cfg).map_err(|e| e.to_string())?;
    let expected = vec![Surd::from_int(1), Surd::from_ratio(3, 4), Surd::from_ratio(3, 4), Surd::from_int(1)];
    ensure(c3.coefficients.as_ref() == Some(&expected), || format!("triangle coefficients {:?}", c3.coefficients))?;
    // (1 + t)(t² − t/4 + 1): −1 and (1/4 ± i√(4 − 1/16)) / 2
    let im = (4.0f64 - 1.0 / 16.0).sqrt() / 2.0;
    let want = [
        num_complex::Complex64::new(-1.0, 0.0),
        num_complex::Complex64::new(0.125, im),
        num_complex::Complex64::new(0.125, -im),
    ];
    let got = find_roots(&UniPoly::new(expected), &Tolerances::default()).map_err(|e| e.to_string())?;
    for w in want {
        ensure(got.roots.iter().any(|z| (z - w).norm() <= 1e-12), || format!("missing root {w}"))?;
    }
    Ok(format!("max |modulus - 1| = {worst:.2e}"))
}

fn implication_chain() -> Outcome {
    let tol = Tolerances::default();
    let mut seqs: Vec<CoeffSeq> = Vec::new();
    for g in all_multigraphs(3, 4) {
        for b in bound_choices(&g, &BoundPolicy::All, 0).unwrap() {
            seqs.push(factor_counts(&g, &b).unwrap());
        }
    }
    for g in all_multigraphs(4, 5).into_iter().filter(|g| g.vertex_count() == 4) {
        for b in bound_choices(&g, &BoundPolicy::Constant, 0).unwrap() {
            seqs.push(factor_counts(&g, &b).unwrap());
        }
    }
    let mut r = rng(6);
    for i in 0..60 {
        let g = simple_graph(&mut r, 6, 9);
        let q = [Quadratic::Sqrt3, Quadratic::Sqrt2, Quadratic::Two][i % 3];
        let spec = FugacitySpec::per_vertex(&g, |_, d| Ok((d, thm26_fugacities(0, d, d, q)?))).unwrap();
        seqs.push(dp_counts(&g, &spec).unwrap());
    }
    let unique: HashSet<CoeffSeq> = seqs.into_iter().collect();
    let (mut real, mut sector, mut half) = (0, 0, 0);
    for s in &unique {
        let n = s.trimmed();
        if n.len() < 2 {
            continue;
        }
        let c = classify(&s.poly(), &tol).map_err(|e| e.to_string())?;
        let min_arg = c.min_abs_arg.unwrap_or(PI);
        if c.real_rooted_nonpositive {
            real += 1;
            let d = n.len() - 1;
            for report in [
                newton_check(&n, d).unwrap(),
                toeplitz_minors_check(&n, 4).unwrap(),
                log_concavity_check(&n),
            ] {
                ensure(report.holds, || format!("{} fails for real-rooted {s}", report.name))?;
            }
        }
        if min_arg >= 2.0 * PI / 3.0 - tol.boundary {
            sector += 1;
            ensure(log_concavity_check(&n).holds, || format!("log-concavity fails for {s}"))?;
        }
        if c.hurwitz_quasi {
            half += 1;
            ensure(hurwitz_consequences_check(&n).holds, || format!("half-plane consequences fail for {s}"))?;
        }
    }
    Ok(format!("{} sequences: {real} real-rooted, {sector} two-thirds sector, {half} half-plane", unique.len()))
}

fn three_term_threshold() -> Outcome {
    let tol = Tolerances::default();
    let mut cases = 0;
    for d in 2..=10usize {
        for k in 1..d {
            let threshold = Surd::from_int(2) * Surd::sqrt_of(&three_term_ratio(d, k)).unwrap();
            let below = threshold.clone() - Surd::from(rat(1, 1_000_000));
            for (beta, should_be_real) in [(threshold, true), (below, false)] {
                // exact oracle: discriminant of the quadratic factor
                let c = |i: usize| Surd::from(binomial(d as u64, i as u64));
                let disc = beta.pow(2) * c(k).pow(2) - Surd::from_int(4) * c(k - 1) * c(k + 1);
                ensure(!disc.is_negative() == should_be_real, || format!("discriminant sign at D={d} k={k}"))?;
                let gamma = lemma_gamma(&LemmaFamily::ThreeTerm { d, k, beta: beta.clone() }).unwrap();
                let real = classify(&gamma, &tol).map_err(|e| e.to_string())?.real_rooted_nonpositive;
                ensure(real == should_be_real, || format!("D={d} k={k} beta={beta}: real-rooted = {real}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

/// Per-vertex `(f, g)` with `f ≤ g ≤ min(f + 2, d)`.
fn narrow_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..=d).flat_map(|f| (f..=(f + 2).min(d)).map(move |g| (f, g))).collect()
}

fn third_sector() -> Outcome {
    let tol = Tolerances::default();
    let mut cache: HashMap<Vec<u64>, f64> = HashMap::new();
    let mut instances = 0usize;
    let mut worst = PI;
    for g in all_multigraphs(4, 6) {
        let profile = DegreeProfile::new(&g).map_err(|e| e.to_string())?;
        let options: Vec<Vec<(usize, usize)>> = g.degree_vector().into_iter().map(narrow_pairs).collect();
        let mut idx = vec![0usize; options.len()];
        loop {
            let (f, gg): (Vec<usize>, Vec<usize>) = idx.iter().zip(&options).map(|(&i, o)| o[i]).unzip();
            let counts = profile.counts_raw(&f, &gg);
            instances += 1;
            let min_arg = match cache.get(&counts) {
                Some(&a) => a,
                None => {
                    let p = UniPoly::new(counts.iter().map(|&c| Surd::from(c as i64)).collect());
                    let a = if p.is_zero() {
                        PI
                    } else {
                        let roots = find_roots(&p, &tol).map_err(|e| e.to_string())?;
                        roots.roots.iter().map(|z| z.arg().abs()).fold(PI, f64::min)
                    };
                    cache.insert(counts.clone(), a);
                    a
                }
            };
            ensure(min_arg >= PI / 3.0 - 1e-8, || {
                format!("root at |arg| {min_arg} for f={f:?} g={gg:?} on\n{}", g.to_text())
            })?;
            worst = worst.min(min_arg);
            let Some(v) = (0..idx.len()).rev().find(|&v| idx[v] + 1 < options[v].len()) else {
                break;
            };
            idx[v] += 1;
            idx[v + 1..].iter_mut().for_each(|i| *i = 0);
        }
    }
    Ok(format!("{instances} instances, {} distinct polynomials, min |arg| = {worst:.6}", cache.len()))
}

fn sector_from_alpha() -> Outcome {
    let cfg = HarnessConfig::default();
    let mut r = rng(9);
    let mut largest: f64 = 0.0;
    for i in 0..50 {
        let g = simple_graph(&mut r, 7, 10);
        let q = [Quadratic::Sqrt3, Quadratic::Sqrt2, Quadratic::Two][i % 3];
        let choices: Vec<(usize, usize)> = g
            .degree_vector()
            .into_iter()
            .map(|d| {
                let a = r.gen_range(0..=d);
                let b = r.gen_range(0..=d);
                (a.min(b), a.max(b))
            })
            .collect();
        let spec = FugacitySpec::per_vertex(&g, |v, d| Ok((d, thm26_fugacities(choices[v].0, choices[v].1, d, q)?)))
            .map_err(|e| e.to_string())?;
        let check = check_cor19(&g, &spec, &cfg).map_err(|e| e.to_string())?;
        confirmed(&check)?;
        largest = largest.max(check.margins.get("alpha").copied().unwrap_or(0.0));
    }
    Ok(format!("50 instances, largest alpha {largest:.6}"))
}

fn log_concavity_scan() -> Outcome {
    let started = Instant::now();
    let family = FamilySpec { generator: Generator::AllMultigraphs { max_n: 3, max_m: 4 }, bounds: BoundPolicy::All };
    let report = scan_conjecture1(&family, &HarnessConfig::default()).map_err(|e| e.to_string())?;
    let json = serde_json::to_string(&report).map_err(|e| e.to_string())?;
    let back: ScanReport = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    ensure(back == report, || "report does not round-trip through JSON".into())?;
    ensure(report.violations.is_empty(), || {
        format!("{} violations:\n{}", report.violations.len(), serde_json::to_string_pretty(&report.violations).unwrap())
    })?;
    ensure(report.skipped == 0, || format!("{} instances skipped", report.skipped))?;
    within(Duration::from_secs(120), started)?;
    Ok(format!(
        "{} graphs, {} instances ({} log-concave, {} trivial), 0 violations",
        report.graphs, report.instances, report.confirmed, report.trivial
    ))
}

fn sampled_regions() -> Outcome {
    let mut r = rng(11);
    let regions = [Region::half_plane(), Region::Disc(1.0), Region::DiscExterior(1.0)];
    for i in 0..20u64 {
        let n = r.gen_range(1..=6);
        let m = r.gen_range(1..=10);
        let g = random_multigraph(n, m, false, &mut r).unwrap();
        for region in &regions {
            let v = sample_nonvanishing(&g, SampleWeights::Lambda, region, 10_000, 1000 + i).map_err(|e| e.to_string())?;
            ensure(v.is_nonvanishing(), || format!("zero in {region} at {:?} on\n{}", v.sample_point, g.to_text()))?;
        }
    }
    Ok("20 graphs x 3 regions x 10^4 samples".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("frontier DP equals brute force", oracle_equivalence),
        ("matching polynomials real and negative", matching_polynomials),
        ("real parts below -2/(D(D-1)^2)", real_part_bound),
        ("critical edge fugacity gives negative zeros", critical_fugacity),
        ("binomial-reciprocal zeros on the unit circle", unit_circle),
        ("zero location implies coefficient inequalities", implication_chain),
        ("three-term threshold is sharp", three_term_threshold),
        ("narrow bounds avoid the pi/3 sector", third_sector),
        ("alpha from vertex zeros bounds the sector", sector_from_alpha),
        ("log-concavity scan, n <= 3, m <= 4", log_concavity_scan),
        ("sampled product form has no zeros", sampled_regions),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}  PASS  {name} ({secs:.1} s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}  FAIL  {name} ({secs:.1} s): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
