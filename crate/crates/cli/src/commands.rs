//! Command dispatch. Every command produces both a JSON value and a table;
//! `main` picks one.

use groupoidal::cohomology::{cocycle_cohomology, integer_coefficients, theta_rho_check};
use groupoidal::groupoid::{FiniteGroupoid, GModule};
use groupoidal::homology::{homology_groups, odometer_homology, z_action_homology, Coefficients};
use groupoidal::limits::{
    af_cohomology_tower, colimit_divisible, colimit_equal, dimension_group, Certainty, ColimitElement, Divisibility,
    Equality, MlStatus, ThreadCertificate,
};
use groupoidal::models::{random_groupoid, random_module};
use groupoidal::skew::{les_verify, LesMode};
use groupoidal::zlinalg::FgAbGroup;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{parse_bratteli, parse_cocycle, parse_groupoid, parse_module, Query};
use crate::render::{table, to_json, yes_no};
use crate::{CliError, Command, Mode};

/// Arrow bound for sampled instances.
pub const SAMPLE_MAX_ARROWS: usize = 20;
/// Bound on composable triples of sampled instances.
pub const SAMPLE_MAX_TRIPLES: usize = 700;
/// Fiber rank bound for sampled modules.
pub const SAMPLE_MAX_RANK: usize = 2;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub table: String,
    /// False when a verification ran and failed.
    pub verified: bool,
}

impl Outcome {
    fn ok(json: Value, table: String) -> Self {
        Outcome {
            json,
            table,
            verified: true,
        }
    }
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Homology {
            input,
            max_degree,
            coefficients,
        } => {
            let g = parse_groupoid(input)?;
            let coeff = parse_coefficients(coefficients)?;
            Ok(group_list(&homology_groups(&g, *max_degree, coeff)?))
        }
        Command::Cohomology {
            input,
            module,
            max_degree,
        } => {
            let g = parse_groupoid(input)?;
            let m = match module {
                Some(path) => parse_module(path, &g)?,
                None => integer_coefficients(&g),
            };
            Ok(group_list(&cocycle_cohomology(&g, &m, *max_degree)?))
        }
        Command::VerifyTheta {
            input,
            seed,
            module,
            max_degree,
        } => {
            let (g, m, sample) = match (input, seed) {
                (Some(path), _) => {
                    let g = parse_groupoid(path)?;
                    let m = match module {
                        Some(p) => parse_module(p, &g)?,
                        None => integer_coefficients(&g),
                    };
                    (g, m, Value::Null)
                }
                (None, Some(seed)) => {
                    let (g, m) = sample_instance(*seed);
                    (g, m, json!({ "seed": seed }))
                }
                (None, None) => return Err(CliError::Usage("verify-theta needs an input file or --seed".into())),
            };
            verify_theta(&g, &m, *max_degree, sample)
        }
        Command::SkewLes {
            input,
            cocycle,
            window,
            guard,
            mode,
            max_degree,
            module,
        } => {
            let g = parse_groupoid(input)?;
            let c = parse_cocycle(cocycle, &g)?;
            let m = module.as_ref().map(|p| parse_module(p, &g)).transpose()?;
            if m.is_some() && *mode == Mode::Homology {
                return Err(CliError::Usage("--module applies to cohomology mode only".into()));
            }
            let mode = match mode {
                Mode::Homology => LesMode::Homology,
                Mode::Cohomology => LesMode::Cohomology,
            };
            let report = les_verify(&g, &c, *window, *guard, *max_degree, mode, m.as_ref())?;
            let rows: Vec<Vec<String>> = report
                .degrees
                .iter()
                .map(|d| {
                    vec![
                        d.degree.to_string(),
                        d.base.to_string(),
                        d.window.to_string(),
                        d.window_shifted.to_string(),
                        d.shift_cokernel.to_string(),
                        d.shift_kernel.to_string(),
                        d.connecting_rank.to_string(),
                        yes_no(
                            d.exact_at_window_shifted.holds() && d.exact_at_window.holds() && d.exact_at_base.holds(),
                        ),
                        yes_no(d.rank_bookkeeping),
                    ]
                })
                .collect();
            let mut text = format!(
                "window radius {}, guard {} (required {}), max |c| = {}\n",
                report.radius, report.guard, report.required_guard, report.max_abs_cocycle
            );
            text += &table(
                &[
                    "degree",
                    "base",
                    "window",
                    "shifted",
                    "coker",
                    "ker",
                    "connecting",
                    "exact",
                    "bookkeeping",
                ],
                &rows,
            );
            for f in &report.lifting_failures {
                text += &format!("lifting failure: {f}\n");
            }
            for n in &report.notes {
                text += &format!("note: {n}\n");
            }
            let passed = report.passed();
            text += &format!("result: {}\n", if passed { "exact" } else { "NOT EXACT" });
            let mut json = to_json(&report);
            json["passed"] = json!(passed);
            Ok(Outcome {
                json,
                table: text,
                verified: passed,
            })
        }
        Command::DimensionGroup { input, levels, queries } => {
            let b = parse_bratteli(input)?;
            let levels = levels.unwrap_or(b.levels());
            let c = dimension_group(&b, levels)?;
            let queries = match queries {
                Some(p) => crate::input::parse_queries(p)?,
                None => Vec::new(),
            };
            let mut answers = Vec::new();
            let mut rows = Vec::new();
            for q in &queries {
                match q {
                    Query::Equal { a, b: other, bound } => {
                        let r = colimit_equal(&c, a, other, bound.unwrap_or(levels))?;
                        rows.push(vec![
                            "equal".into(),
                            format!("{} = {}", element(a), element(other)),
                            equality(&r),
                        ]);
                        answers.push(json!({"op": "equal", "a": a, "b": other, "result": r}));
                    }
                    Query::Divisible { a, q, bound } => {
                        let r = colimit_divisible(&c, a, *q, bound.unwrap_or(levels))?;
                        rows.push(vec![
                            "divisible".into(),
                            format!("{q} | {}", element(a)),
                            divisibility(&r),
                        ]);
                        answers.push(json!({"op": "divisible", "a": a, "q": q, "result": r}));
                    }
                }
            }
            let json = json!({
                "levels": levels,
                "stationary": b.is_stationary(),
                "vertex_counts": b.vertex_counts(),
                "higher_homology": "0",
                "queries": answers,
            });
            let mut text = format!(
                "Bratteli diagram: {} levels{}, vertex counts {:?}\nH_0 = colimit of the multiplicity matrices; H_n = 0 for n >= 1\n",
                b.levels(),
                if b.is_stationary() { " (stationary)" } else { "" },
                b.vertex_counts()
            );
            if !rows.is_empty() {
                text += &table(&["query", "element", "answer"], &rows);
            }
            Ok(Outcome::ok(json, text))
        }
        Command::AfCohomology { input, levels, depth } => {
            let b = parse_bratteli(input)?;
            let report = af_cohomology_tower(&b, *levels, *depth)?;
            let h0 = match &report.h0 {
                ThreadCertificate::ConstantsOnly => "constants only (H^0 = Z)".to_string(),
                ThreadCertificate::Threads { rank } => format!("threads of rank {rank}"),
            };
            let h1 = match &report.h1.ml {
                MlStatus::Certified { .. } => "Mittag-Leffler certified, lim^1 = 0".to_string(),
                MlStatus::NonMl { stage, chain } => format!(
                    "not Mittag-Leffler within the truncation: stage {stage} images have ranks {:?}",
                    chain.iter().map(|s| s.rank).collect::<Vec<_>>()
                ),
            };
            let text = format!(
                "p = {}, stages = {}, depth = {}\nH^0 threads: {h0}\nH^1 tower: {h1}\n",
                report.p, report.stages, report.depth
            );
            Ok(Outcome::ok(to_json(&report), text))
        }
        Command::Odometer { p, max_depth } => {
            let report = odometer_homology(*p, *max_depth)?;
            let rows: Vec<Vec<String>> = report
                .depths
                .iter()
                .map(|d| {
                    vec![
                        d.depth.to_string(),
                        d.cylinders.to_string(),
                        d.h0.to_string(),
                        d.h1.to_string(),
                    ]
                })
                .collect();
            let mut text = table(&["depth", "cylinders", "H_0", "H_1"], &rows);
            let list = |v: &[num_bigint::BigInt]| v.iter().map(|x| format!("x{x}")).collect::<Vec<_>>().join(", ");
            text += &format!(
                "H_0 maps: {}\nH_1 maps: {}\nstable H_1: {}\n",
                list(&report.h0_maps),
                list(&report.h1_maps),
                report.h1_stable
            );
            Ok(Outcome::ok(to_json(&report), text))
        }
        Command::ZAction { perm } => {
            let r = z_action_homology(perm)?;
            let rows = vec![
                vec!["H_0".to_string(), r.h0.to_string()],
                vec!["H_1".to_string(), r.h1.to_string()],
                vec!["H^0".to_string(), r.cohomology_h0.to_string()],
                vec!["H^1".to_string(), r.cohomology_h1.to_string()],
            ];
            Ok(Outcome::ok(to_json(&r), table(&["group", "value"], &rows)))
        }
    }
}

pub fn parse_coefficients(s: &str) -> Result<Coefficients, CliError> {
    let s = s.trim();
    if s == "Z" {
        return Ok(Coefficients::Integers);
    }
    s.strip_prefix("Z/")
        .and_then(|m| m.parse::<i64>().ok())
        .map(Coefficients::Mod)
        .ok_or_else(|| CliError::Usage(format!("coefficients must be Z or Z/m, got {s:?}")))
}

/// The sampled groupoid and module for a seed.
pub fn sample_instance(seed: u64) -> (FiniteGroupoid, GModule) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_groupoid(&mut rng, SAMPLE_MAX_ARROWS, SAMPLE_MAX_TRIPLES);
    let m = random_module(&mut rng, &g, SAMPLE_MAX_RANK);
    (g, m)
}

fn group_list(groups: &[FgAbGroup]) -> Outcome {
    let json = Value::Array(
        groups
            .iter()
            .enumerate()
            .map(|(n, h)| json!({"degree": n, "free_rank": h.free_rank(), "torsion": to_json(h)["torsion"]}))
            .collect(),
    );
    let rows: Vec<Vec<String>> = groups
        .iter()
        .enumerate()
        .map(|(n, h)| vec![n.to_string(), h.to_string()])
        .collect();
    Outcome::ok(json, table(&["degree", "group"], &rows))
}

fn verify_theta(g: &FiniteGroupoid, m: &GModule, n_max: usize, sample: Value) -> Result<Outcome, CliError> {
    let report = theta_rho_check(g, m, n_max)?;
    let rows: Vec<Vec<String>> = report
        .degrees
        .iter()
        .map(|d| {
            vec![
                d.degree.to_string(),
                yes_no(d.rho_theta_identity),
                yes_no(d.theta_rho_identity),
                yes_no(d.chain_map),
                yes_no(d.rho_equivariant),
                report
                    .cocycle_cohomology
                    .get(d.degree)
                    .map(ToString::to_string)
                    .unwrap_or_default(),
                report
                    .hom_cohomology
                    .get(d.degree)
                    .map(ToString::to_string)
                    .unwrap_or_default(),
            ]
        })
        .collect();
    let mut text = format!(
        "groupoid: {} arrows, {} units; fiber ranks {:?}\n",
        g.n_arrows(),
        g.n_units(),
        m.fiber_ranks()
    );
    text += &table(
        &[
            "degree",
            "rho theta = id",
            "theta rho = id",
            "chain map",
            "equivariant",
            "cocycle H^n",
            "Hom-side H^n",
        ],
        &rows,
    );
    if let Some(w) = &report.witness {
        text += &format!("failure: {w}\n");
    }
    let passed = report.passed();
    text += &format!("result: {}\n", if passed { "PASS" } else { "FAIL" });
    let mut json = to_json(&report);
    json["passed"] = json!(passed);
    json["instance"] = json!({
        "arrows": g.n_arrows(),
        "units": g.n_units(),
        "fiber_ranks": m.fiber_ranks(),
        "sample": sample,
    });
    Ok(Outcome {
        json,
        table: text,
        verified: passed,
    })
}

fn element(a: &ColimitElement) -> String {
    let v: Vec<String> = a.vector.iter().map(ToString::to_string).collect();
    format!("[{}]@{}", v.join(", "), a.stage)
}

fn certainty(c: &Certainty) -> String {
    match c {
        Certainty::Exact => "exact".into(),
        Certainty::UpToBound(b) => format!("up to stage {b}"),
    }
}

fn equality(r: &Equality) -> String {
    match r {
        Equality::Equal { stage } => format!("equal at stage {stage}"),
        Equality::NotEqual { certainty: c } => format!("not equal ({})", certainty(c)),
    }
}

fn divisibility(r: &Divisibility) -> String {
    match r {
        Divisibility::Witness { stage, vector } => {
            let v: Vec<String> = vector.iter().map(ToString::to_string).collect();
            format!("yes, witness [{}]@{stage}", v.join(", "))
        }
        Divisibility::No { certainty: c } => format!("no ({})", certainty(c)),
    }
}
