use std::fmt;
use std::fs;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use discriminantal::combin::{binomial, k_subsets};
use discriminantal::scalar::parse_rational;
use discriminantal::{
    a2m, build_discriminantal, classify, dense_uk, enumerate_intersections, example_8_5,
    falk_rank_report, gale_diagram, rank2_general, rank2_symmetric, Arrangement, AuditCheck,
    ClassificationReport, ConstructionResult, Discriminantal, Error as CoreError, IndexSet,
    IntersectionClass, Label,
};

use crate::Format;

#[derive(Debug)]
pub enum CmdError {
    Io(std::io::Error),
    Core(CoreError),
    Usage(String),
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmdError::Io(e) => write!(f, "{e}"),
            CmdError::Core(e) => write!(f, "{e}"),
            CmdError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> CmdError {
        CmdError::Io(e)
    }
}

impl From<CoreError> for CmdError {
    fn from(e: CoreError) -> CmdError {
        CmdError::Core(e)
    }
}

type CmdResult = Result<(), CmdError>;

fn read_arrangement(path: &str) -> Result<Arrangement, CmdError> {
    let text = fs::read_to_string(path)?;
    Ok(Arrangement::from_json(&text)?)
}

fn emit(output: Option<&str>, content: &str) -> CmdResult {
    match output {
        Some(path) => fs::write(path, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct IntersectionReport {
    closure: Vec<Vec<Label>>,
    rank: usize,
    components: Vec<Vec<Label>>,
    a: usize,
    class: IntersectionClass,
    ell: usize,
    bba: bool,
    minimal: bool,
    sparse: bool,
    dense: bool,
    multiplicity: usize,
    audit: Vec<AuditCheck>,
}

#[derive(Serialize)]
struct ClassCounts {
    vg: usize,
    anvg: usize,
    gnvg: usize,
}

#[derive(Serialize)]
struct CheckReport {
    n: usize,
    k: usize,
    hyperplanes: usize,
    max_rank: usize,
    counts: ClassCounts,
    /// "very generic" when no NVG intersection was found up to max_rank;
    /// otherwise "ANVG" when all of them are ANVG, else "GNVG".
    verdict: String,
    intersections: Vec<IntersectionReport>,
}

fn sets_to_labels(sets: &[IndexSet]) -> Vec<Vec<Label>> {
    sets.iter().map(|s| s.as_slice().to_vec()).collect()
}

fn build_check_report(b: &Discriminantal, max_rank: usize) -> CheckReport {
    let elements = enumerate_intersections(b, max_rank);
    let reports = discriminantal::par::map_collect(&elements, |x| (x.closure_sets(b), classify(b, x)));
    let mut counts = ClassCounts {
        vg: 0,
        anvg: 0,
        gnvg: 0,
    };
    let mut intersections = Vec::with_capacity(reports.len());
    for (closure_sets, report) in reports {
        match report.class {
            IntersectionClass::VeryGeneric => counts.vg += 1,
            IntersectionClass::Anvg => counts.anvg += 1,
            IntersectionClass::Gnvg => counts.gnvg += 1,
        }
        intersections.push(to_intersection_report(closure_sets, report));
    }
    let verdict = if counts.anvg == 0 && counts.gnvg == 0 {
        "very generic"
    } else if counts.gnvg == 0 {
        "ANVG"
    } else {
        "GNVG"
    };
    CheckReport {
        n: b.n(),
        k: b.k(),
        hyperplanes: b.len(),
        max_rank,
        counts,
        verdict: verdict.to_string(),
        intersections,
    }
}

fn to_intersection_report(
    closure_sets: Vec<IndexSet>,
    report: ClassificationReport,
) -> IntersectionReport {
    IntersectionReport {
        closure: sets_to_labels(&closure_sets),
        rank: report.rank,
        components: sets_to_labels(&report.presentation.components),
        a: report.a,
        class: report.class,
        ell: report.ell,
        bba: report.bba,
        minimal: report.minimal,
        sparse: report.sparse,
        dense: report.dense,
        multiplicity: report.multiplicity,
        audit: report.audit,
    }
}

fn fmt_label_sets(sets: &[Vec<Label>]) -> String {
    let inner: Vec<String> = sets
        .iter()
        .map(|s| {
            let labels: Vec<String> = s.iter().map(i64::to_string).collect();
            format!("{{{}}}", labels.join(","))
        })
        .collect();
    inner.join(" ")
}

fn render_check_text(report: &CheckReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "arrangement: n = {}, k = {}; discriminantal hyperplanes: {}\n",
        report.n, report.k, report.hyperplanes
    ));
    out.push_str(&format!(
        "enumerated {} intersections up to rank {}\n",
        report.intersections.len(),
        report.max_rank
    ));
    out.push_str(&format!(
        "classes: VG {}, ANVG {}, GNVG {}\n",
        report.counts.vg, report.counts.anvg, report.counts.gnvg
    ));
    for x in &report.intersections {
        if x.class == IntersectionClass::VeryGeneric && x.audit.iter().all(|c| c.pass) {
            continue;
        }
        out.push_str(&format!(
            "\n{} intersection, rank {}, a {}, ell {}, multiplicity {}{}{}{}\n",
            x.class,
            x.rank,
            x.a,
            x.ell,
            x.multiplicity,
            if x.minimal { ", minimal" } else { "" },
            if x.sparse { ", sparse" } else { "" },
            if x.dense { ", dense" } else { "" },
        ));
        out.push_str(&format!("  components: {}\n", fmt_label_sets(&x.components)));
        out.push_str(&format!("  closure: {}\n", fmt_label_sets(&x.closure)));
        for check in &x.audit {
            out.push_str(&format!(
                "  audit {}: {} ({})\n",
                check.name,
                if check.pass { "pass" } else { "FAIL" },
                check.detail
            ));
        }
    }
    out.push_str(&format!("\narrangement verdict: {}\n", report.verdict));
    out
}

pub fn cmd_check(
    input: &str,
    output: Option<&str>,
    max_rank: Option<usize>,
    format: Format,
) -> CmdResult {
    let a = read_arrangement(input)?;
    if !a.is_generic() {
        return Err(CoreError::NonGeneric(
            "the input arrangement has a dependent k-subset of normals".into(),
        )
        .into());
    }
    let default_depth = (a.n() - a.k()).saturating_sub(1).clamp(1, 4);
    let max_rank = max_rank.unwrap_or(default_depth).max(1);
    let b = build_discriminantal(&a)?;
    let report = build_check_report(&b, max_rank);

    // proved inequalities must never fail; a failure is an arithmetic bug
    for x in &report.intersections {
        for check in &x.audit {
            if !check.pass {
                eprintln!(
                    "THEOREM VIOLATION: {} on closure {} ({})",
                    check.name,
                    fmt_label_sets(&x.closure),
                    check.detail
                );
            }
        }
    }

    let content = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => render_check_text(&report),
    };
    emit(output, &content)
}

#[derive(Serialize)]
struct CertificateFile<'a> {
    family: &'a str,
    seed: u64,
    retries_used: u32,
    target: Vec<Vec<Label>>,
    expected: &'a discriminantal::ExpectedCertificate,
}

fn certificate_path(arrangement_path: &str) -> String {
    match arrangement_path.strip_suffix(".json") {
        Some(stem) => format!("{stem}.cert.json"),
        None => format!("{arrangement_path}.cert.json"),
    }
}

pub fn cmd_generate(
    family: &str,
    output: &str,
    k: Option<usize>,
    m: Option<usize>,
    n: Option<usize>,
    p: &str,
    seed: u64,
) -> CmdResult {
    let need = |what: &str, v: Option<usize>| -> Result<usize, CmdError> {
        v.ok_or_else(|| CmdError::Usage(format!("family {family} requires --{what}")))
    };
    let result: ConstructionResult = match family {
        "dense-uk" => dense_uk(need("k", k)?, seed)?,
        "a2m" => {
            let p = parse_rational(p)?;
            a2m(need("m", m)?, &p)?
        }
        "rank2-symmetric" => rank2_symmetric(need("n", n)?, seed)?,
        "rank2-general" => rank2_general(need("n", n)?, need("k", k)?, seed)?,
        "example-8-5" => example_8_5(),
        other => {
            return Err(CmdError::Usage(format!(
                "unknown family {other:?}; expected dense-uk, a2m, rank2-symmetric, rank2-general or example-8-5"
            )))
        }
    };

    fs::write(output, result.arrangement.to_json() + "\n")?;
    let cert = CertificateFile {
        family,
        seed: result.seed,
        retries_used: result.retries_used,
        target: sets_to_labels(&result.target),
        expected: &result.expected,
    };
    let cert_path = certificate_path(output);
    fs::write(
        &cert_path,
        serde_json::to_string_pretty(&cert).expect("serializable") + "\n",
    )?;

    // round-trip self-verification: re-read the emitted file and re-run the
    // full pipeline against the certificate
    let reread = read_arrangement(output)?;
    let b = build_discriminantal(&reread)?;
    let x = discriminantal::closure(&b, &result.target)?;
    let report = classify(&b, &x);
    let ok = result.expected.matches(&report);
    println!("wrote {output} and {cert_path}");
    println!("self-verification: {}", if ok { "pass" } else { "FAIL" });
    if !ok {
        return Err(CmdError::Core(CoreError::Degenerate(
            "re-running the pipeline did not reproduce the expected certificate".into(),
        )));
    }
    Ok(())
}

pub fn cmd_gale(input: &str, output: Option<&str>) -> CmdResult {
    let a = read_arrangement(input)?;
    let g = gale_diagram(&a)?;
    emit(output, &(g.to_json() + "\n"))
}

#[derive(Serialize)]
struct FalkReport {
    hyperplanes: usize,
    max_family_size: usize,
    families_checked: usize,
    exhaustive: bool,
    passes: usize,
    failures: usize,
    verdict: String,
}

pub fn cmd_falk(
    input: &str,
    output: Option<&str>,
    max_family_size: usize,
    budget: usize,
    seed: u64,
    format: Format,
) -> CmdResult {
    let a = read_arrangement(input)?;
    if !a.is_generic() {
        return Err(CoreError::NonGeneric(
            "the rank comparison needs a generic arrangement".into(),
        )
        .into());
    }
    let mut labels = a.labels().to_vec();
    labels.sort_unstable();
    let sets: Vec<IndexSet> = k_subsets(&labels, a.k() + 1)
        .into_iter()
        .map(IndexSet::new)
        .collect();
    let max_size = max_family_size.max(1).min(sets.len());
    let total: usize = (1..=max_size).map(|s| binomial(sets.len(), s)).sum();
    let exhaustive = total <= budget;
    let families: Vec<Vec<IndexSet>> = if exhaustive {
        (1..=max_size)
            .flat_map(|s| k_subsets(&sets, s))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..budget)
            .map(|_| {
                let size = rng.gen_range(1..=max_size);
                let mut picked = Vec::with_capacity(size);
                while picked.len() < size {
                    let candidate = sets[rng.gen_range(0..sets.len())].clone();
                    if !picked.contains(&candidate) {
                        picked.push(candidate);
                    }
                }
                picked
            })
            .collect()
    };
    let outcomes = falk_rank_report(&a, &families)?;
    let passes = outcomes.iter().filter(|&&ok| ok).count();
    let failures = outcomes.len() - passes;
    let report = FalkReport {
        hyperplanes: sets.len(),
        max_family_size: max_size,
        families_checked: families.len(),
        exhaustive,
        passes,
        failures,
        verdict: if failures == 0 { "pass" } else { "fail" }.to_string(),
    };
    let content = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => format!(
            "{} discriminantal hyperplanes; checked {} families up to size {} ({}): {} passed, {} failed -> {}\n",
            report.hyperplanes,
            report.families_checked,
            report.max_family_size,
            if report.exhaustive { "exhaustive" } else { "seeded sample" },
            report.passes,
            report.failures,
            report.verdict
        ),
    };
    emit(output, &content)
}
