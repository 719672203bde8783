//! End-to-end acceptance checks. Runs without the libtest harness so that
//! each criterion prints one PASS/FAIL line even when everything passes.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fispec::character::mn_character;
use fispec::fixtures::{
    containment, crush, disjoint_ordered_pairs, half_ordered_triples, intersection, intersection_family, kneser,
    points_and_pairs, subsets, tuples,
};
use fispec::multiplicity::total_dimension;
use fispec::partition::factorial;
use fispec::relation::counting_lemma_value;
use fispec::spectra::{analyze, brute_force_spectrum, consistency_check, Operator, SpectrumOptions};
use fispec::{Caps, FISetSpec, Partition, Rational, RelationSpec};
use fispec_cli::{cmd_decompose, cmd_spectrum, multiplicity_table, JobConfig, SpectrumDocument, SpectrumFlags, Status};
use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_integer::binomial;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn caps() -> Caps {
    Caps::default()
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn ibinom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        0
    } else {
        binomial(n, k)
    }
}

fn spectrum_doc(cfg: &JobConfig, name: &str, n: usize, n_max: usize) -> Result<SpectrumDocument, String> {
    let flags = SpectrumFlags {
        n: Some(n),
        n_max: Some(n_max),
        ..Default::default()
    };
    let out = cmd_spectrum(cfg, name, &flags).map_err(|e| format!("{e:#}"))?;
    if out.status != Status::Success {
        return Err(format!("spectrum of {name} exited with {:?}", out.status));
    }
    SpectrumDocument::from_json(&out.text).map_err(|e| e.to_string())
}

/// Evaluated families at `n`, sorted, zero multiplicities dropped.
fn spectrum_at(doc: &SpectrumDocument, n: usize) -> Vec<(Rational, Rational)> {
    let n = n as i64;
    doc.report
        .families
        .iter()
        .map(|f| (f.value.eval_int(n), f.multiplicity.eval_int(n)))
        .filter(|(_, m)| *m != int(0))
        .sorted()
        .collect()
}

fn brute_spectrum(rel: &RelationSpec, n: usize) -> Result<Vec<(Rational, Rational)>, String> {
    let b = brute_force_spectrum(rel, Operator::Adjacency, n, &caps()).map_err(|e| e.to_string())?;
    if b.distinct_eigenvalues() != b.integer_eigenvalues().len() {
        return Err(format!("non-integral spectrum at n = {n}: {}", b.factored()));
    }
    Ok(b.integer_eigenvalues()
        .into_iter()
        .map(|(v, m)| (Rational::from_integer(v), int(m as i64)))
        .sorted()
        .collect())
}

fn kneser_two() -> Check {
    let cfg = JobConfig::parse(include_str!("../fixtures/kneser.fis")).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let doc = spectrum_doc(&cfg, "kneser2", 5, 12)?;
    let elapsed = start.elapsed();
    if doc.report.families.len() != 3 || !doc.report.residuals.is_empty() {
        return Err(format!(
            "{} families, {} residuals",
            doc.report.families.len(),
            doc.report.residuals.len()
        ));
    }
    if !doc.report.verification.iter().all(|v| v.agrees) || doc.report.verification.len() != 8 {
        return Err("per-degree verification failed".into());
    }
    let rel = cfg.relation("kneser2").map_err(|e| e.to_string())?;
    for n in 5..=12usize {
        let ni = n as i64;
        let expected: Vec<(Rational, Rational)> = (0..=2)
            .map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                (
                    int(sign * ibinom(ni - 2 - i, 2 - i)),
                    int(ibinom(ni, i) - ibinom(ni, i - 1)),
                )
            })
            .sorted()
            .collect();
        let got = spectrum_at(&doc, n);
        if got != expected {
            return Err(format!("n = {n}: families give {got:?}, closed form {expected:?}"));
        }
        if brute_spectrum(&rel, n)? != expected {
            return Err(format!("n = {n}: brute force disagrees with the closed form"));
        }
    }
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("3 families exact for n = 5..12, pipeline {:.2?}", elapsed))
}

fn kneser_three_oracle() -> Check {
    let start = Instant::now();
    let rel = kneser(3);
    let report = analyze(&rel, &SpectrumOptions::default(), &caps()).map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for n in 9..=12 {
        let c = consistency_check(&report, &rel, n, &caps()).map_err(|e| e.to_string())?;
        if !c.agrees {
            return Err(format!("n = {n}: {}", c.diagnostic.unwrap_or_default()));
        }
        sizes.push(ibinom(n as i64, 3));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "exact charpoly equality at n = 9..12 (sizes {sizes:?}), {:.2?}",
        elapsed
    ))
}

fn intro_example() -> Check {
    let cfg = JobConfig::parse(include_str!("../fixtures/intro.fis")).map_err(|e| e.to_string())?;
    let doc = spectrum_doc(&cfg, "distinct", 3, 8)?;
    let n_minus_1 = fispec::RationalPolynomial::from_ints(&[-1, 1]);
    let minus_1 = fispec::RationalPolynomial::from_ints(&[-1]);
    let one = fispec::RationalPolynomial::from_ints(&[1]);
    let fams: Vec<_> = doc
        .report
        .families
        .iter()
        .map(|f| (f.value.clone(), f.multiplicity.clone()))
        .collect();
    if fams.len() != 2 || !fams.contains(&(n_minus_1.clone(), one)) || !fams.contains(&(minus_1, n_minus_1)) {
        return Err(format!("families {fams:?}"));
    }
    let rel = cfg.relation("distinct").map_err(|e| e.to_string())?;
    for n in 3..=8 {
        let expected = vec![(int(-1), int(n as i64 - 1)), (int(n as i64 - 1), int(1))];
        if spectrum_at(&doc, n) != expected || brute_spectrum(&rel, n)? != expected {
            return Err(format!("n = {n}: spectrum mismatch"));
        }
    }
    Ok("n - 1 (mult 1) and -1 (mult n - 1), verified at n = 3..8".into())
}

fn counting_lemma() -> Check {
    let fixtures: Vec<(&str, RelationSpec)> = vec![
        ("kneser r=2", kneser(2)),
        ("kneser r=3", kneser(3)),
        ("disjoint ordered pairs", disjoint_ordered_pairs()),
        ("intersection r=2 k=1", intersection(2, 1)),
        ("intersection r=3 k=1", intersection(3, 1)),
        ("intersection thresholds", intersection_family(2, &[(1, 4), (0, 6)])),
        ("containment", containment()),
    ];
    let mut profiles = 0;
    for (name, rel) in &fixtures {
        let m = rel.max_threshold();
        let target = rel.target();
        for g in rel.generators() {
            for (orbit, spec) in target.orbits().iter().enumerate() {
                let t = spec.m;
                for d in target.cosets(orbit) {
                    for s in (0..m).powerset() {
                        let counts: Vec<u64> = (m..=10)
                            .map(|n| rel.counting_profile(n, m, &g.x, orbit, d, &s, &caps()))
                            .collect::<Result<_, _>>()
                            .map_err(|e| format!("{name}: {e}"))?;
                        let zero = counts.iter().all(|&c| c == 0);
                        let binom = counts
                            .iter()
                            .zip(m..)
                            .all(|(&c, n)| c == counting_lemma_value(n, m, t, s.len()));
                        if !zero && !binom {
                            return Err(format!("{name}: S = {s:?}, d = {d}: counts {counts:?}"));
                        }
                        profiles += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{profiles} profiles over {} relations, n up to 10",
        fixtures.len()
    ))
}

fn shapes_config() -> Result<JobConfig, String> {
    JobConfig::parse(include_str!("../fixtures/shapes.fis")).map_err(|e| e.to_string())
}

fn theorem_a() -> Check {
    let mut text = String::new();
    for r in 1..=3 {
        text.push_str(&format!(
            "fiset \"subsets{r}\" {{ orbit {{ m = {r}, H = \"symmetric\", label = \"S\" }} }}\n\
             fiset \"tuples{r}\" {{ orbit {{ m = {r}, label = \"T\" }} }}\n"
        ));
    }
    let mut cfg = JobConfig::parse(&text).map_err(|e| e.to_string())?;
    cfg.fisets.extend(shapes_config()?.fisets);
    let mut cases: Vec<(String, String)> = Vec::new();
    for r in 1..=3 {
        let sym = if r == 1 {
            "trivial".to_string()
        } else {
            format!("S_{r}")
        };
        cases.push((format!("subsets{r}"), format!("(m={r}, H={sym})")));
        cases.push((format!("tuples{r}"), format!("(m={r}, H=trivial)")));
    }
    cases.push(("half_ordered".into(), "(m=3, H=<(1 2)>)".into()));
    for (name, expected) in &cases {
        let out = cmd_decompose(&cfg, name, 10).map_err(|e| format!("{e:#}"))?;
        if out.status != Status::Success {
            return Err(format!("{name}: {}", out.text.trim()));
        }
        let orbit_lines: Vec<&str> = out.text.lines().filter(|l| l.starts_with("orbit")).collect();
        if orbit_lines.len() != 1 || !orbit_lines[0].contains(expected.as_str()) {
            return Err(format!("{name}: expected {expected}, got {}", out.text.trim()));
        }
    }
    Ok(format!("{} specs certified within n <= 10", cases.len()))
}

fn multiplicity_fixtures() -> Vec<(&'static str, FISetSpec)> {
    vec![
        ("subsets 1", subsets(1)),
        ("subsets 2", subsets(2)),
        ("subsets 3", subsets(3)),
        ("tuples 1", tuples(1)),
        ("tuples 2", tuples(2)),
        ("tuples 3", tuples(3)),
        ("half-ordered triples", half_ordered_triples()),
        ("points and pairs", points_and_pairs()),
        ("crush", crush()),
        ("empty", FISetSpec::empty()),
    ]
}

fn multiplicities() -> Check {
    let mut checks = 0;
    for (name, spec) in multiplicity_fixtures() {
        let rows = multiplicity_table(&spec, 3, 10, &caps()).map_err(|e| format!("{name}: {e:#}"))?;
        checks += rows.iter().map(|r| r.checked.len()).sum::<usize>();
        let table: Vec<(Partition, u64)> = rows.iter().map(|r| (r.lambda.clone(), r.stable)).collect();
        let from = rows.iter().map(|r| r.from).max().unwrap_or(0);
        for n in from..=10 {
            let size = spec.evaluate(n, &caps()).map_err(|e| e.to_string())?.len();
            if total_dimension(&table, n) != Some(BigUint::from(size)) {
                return Err(format!("{name}: dimensions do not add up to |X_{n}| = {size}"));
            }
        }
    }
    Ok(format!("{checks} (lambda, n) comparisons agree, |lambda| <= 3"))
}

fn characters() -> Check {
    for n in 1..=7 {
        let parts = Partition::all(n);
        let order = BigInt::from(factorial(n));
        let table: Vec<Vec<i64>> = parts
            .iter()
            .map(|mu| parts.iter().map(|rho| mn_character(mu, rho)).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let class_sizes: Vec<BigInt> = parts
            .iter()
            .map(|rho| &order / BigInt::from(rho.centralizer_order()))
            .collect();
        for (i, j) in (0..parts.len()).cartesian_product(0..parts.len()) {
            let sum: BigInt = (0..parts.len())
                .map(|k| &class_sizes[k] * table[i][k] * table[j][k])
                .sum();
            let expected = if i == j { order.clone() } else { BigInt::from(0) };
            if sum != expected {
                return Err(format!("n = {n}: <chi_{}, chi_{}> = {sum}/{n}!", parts[i], parts[j]));
            }
        }
    }
    for n in 0..=8 {
        let total: BigUint = Partition::all(n).iter().map(|p| p.hook_dimension().pow(2)).sum();
        if total != factorial(n) {
            return Err(format!("sum of squared dimensions at n = {n} is {total}"));
        }
    }
    Ok("row orthogonality for n <= 7, sum dim^2 = n! for n <= 8".into())
}

fn stability() -> Check {
    let mut report = Vec::new();
    for (name, spec) in multiplicity_fixtures() {
        let range = spec.detect_stable_range(10, 3, &caps()).map_err(|e| e.to_string())?;
        let Some(start) = range.start else {
            return Err(format!("{name}: no stable range up to 10"));
        };
        let stable: Vec<_> = range.observations.iter().filter(|o| o.n >= start).collect();
        let orbits = stable[0].orbit_count;
        if stable.iter().any(|o| o.orbit_count != orbits) {
            return Err(format!("{name}: orbit count moves after {start}"));
        }
        if stable
            .iter()
            .any(|o| o.injective == Some(false) || o.orbit_bijective == Some(false))
        {
            return Err(format!("{name}: transition fails after {start}"));
        }
        if spec.is_pure_induced() && stable.iter().any(|o| o.size != spec.induced_size(o.n)) {
            return Err(format!("{name}: sizes differ from the induced count"));
        }
        report.push(format!("{name} from {start}"));
    }
    let crush = crush().detect_stable_range(10, 3, &caps()).map_err(|e| e.to_string())?;
    let before: Vec<usize> = crush.observations.iter().take(3).map(|o| o.size).collect();
    if before != [0, 1, 1] || crush.start != Some(1) {
        return Err(format!("crush: sizes {before:?}, start {:?}", crush.start));
    }
    let crushed = cmd_decompose(&shapes_config()?, "crush", 10).map_err(|e| format!("{e:#}"))?;
    if !crushed.text.contains("(m=0, H=trivial)") {
        return Err(format!("crush decomposition: {}", crushed.text.trim()));
    }
    Ok(report.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Kneser r=2 spectrum, n = 5..12", kneser_two),
        ("Kneser r=3 oracle agreement, n = 9..12", kneser_three_oracle),
        ("intro relation families, n = 3..8", intro_example),
        ("counting lemma on fixture relations", counting_lemma),
        ("orbit decomposition detection", theorem_a),
        ("Pieri against character multiplicities", multiplicities),
        ("character orthogonality and dimensions", characters),
        ("stability detection including the quotient", stability),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL: {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
