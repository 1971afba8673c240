//! The commands behind the `toriclab` binary. Each returns an [`Outcome`]: the rendered
//! output and the exit code (0 all checks pass, 1 validation or certification failure,
//! 2 unreadable or unparsable input).
//!
//! An input path of the form `corpus:<name>` reads a built-in document instead of a file.

use std::time::Instant;

use num_traits::Signed;
use serde_json::{json, Value};

use crate::arith::BigRational;
use crate::charfunc::{
    check_star_condition, coloring_to_charfunc, four_color, CharFuncError, CharacteristicFunction,
};
use crate::cohomology::{chern_number_c1c2, edge_functional, IntersectionTable, VolumePolynomial};
use crate::combinatorics::{IndexSet, PolytopeError, SimplePolytope3};
use crate::cone::{
    analyze_classes, functional_values, obstruction_from_analysis, wall_classes, ConeAnalysis,
    Membership, StrictConvexity,
};
use crate::corpus;
use crate::fan::{parse_support, Fan3, FanError, UnimodularFan};
use crate::report::{self, int, ints, join, rational, rationals, vector, Report, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Report(Report),
    Raw(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: Output,
    pub exit_code: i32,
}

impl Outcome {
    fn report(mut report: Report, start: Instant, parse_failure: bool) -> Self {
        report.timing_ms = Some(start.elapsed().as_millis());
        let exit_code = if parse_failure {
            EXIT_PARSE
        } else if report.passed() {
            EXIT_OK
        } else {
            EXIT_FAILURE
        };
        Outcome { output: Output::Report(report), exit_code }
    }

    pub fn render(&self, json: bool) -> String {
        match &self.output {
            Output::Report(r) if json => r.render_json(),
            Output::Report(r) => r.render_text(),
            Output::Raw(s) => s.clone(),
        }
    }

    pub fn as_report(&self) -> Option<&Report> {
        match &self.output {
            Output::Report(r) => Some(r),
            Output::Raw(_) => None,
        }
    }
}

/// Reads a file, or a corpus document for `corpus:<name>`.
pub fn read_input(path: &str) -> Result<String, String> {
    if let Some(name) = path.strip_prefix("corpus:") {
        return corpus::get(name).map(|e| e.text.to_string()).ok_or_else(|| format!("no corpus entry '{name}'"));
    }
    std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

/// Command report that failed before any computation.
fn early_exit(command: &str, input: Option<&str>, name: &str, detail: String, parse: bool, start: Instant) -> Outcome {
    let mut r = Report::new(command, input);
    r.check(name, false, detail);
    Outcome::report(r, start, parse)
}

#[allow(clippy::result_large_err)]
fn load_polytope(
    command: &str,
    input: Result<String, String>,
    start: Instant,
) -> Result<(Report, SimplePolytope3, String), Outcome> {
    let text = input.map_err(|e| early_exit(command, None, "input", e, true, start))?;
    match SimplePolytope3::parse(&text) {
        Ok(p) => Ok((Report::new(command, Some(&text)), p, text)),
        Err(e @ PolytopeError::Parse(_)) => Err(early_exit(command, Some(&text), "parse", e.to_string(), true, start)),
        Err(e) => Err(early_exit(command, Some(&text), "simple-polytope", e.to_string(), false, start)),
    }
}

fn histogram_json(p: &SimplePolytope3) -> Value {
    let mut m = serde_json::Map::new();
    for (size, count) in p.face_histogram() {
        m.insert(size.to_string(), json!(count));
    }
    Value::Object(m)
}

/// Validation, f-vector, face histogram, fullerene and Delzant verdicts, a 4-coloring
/// (or the given characteristic function), condition (⋆) and Betti numbers.
pub fn cmd_polytope_report(path: &str, lambda_path: Option<&str>) -> Outcome {
    let command = match lambda_path {
        Some(l) => format!("polytope report {path} --lambda {l}"),
        None => format!("polytope report {path}"),
    };
    polytope_report(&command, read_input(path), lambda_path)
}

/// `polytope report` on an in-memory POLY3 document.
pub fn polytope_report_text(text: &str) -> Outcome {
    polytope_report("polytope report <text>", Ok(text.to_string()), None)
}

fn polytope_report(command: &str, input: Result<String, String>, lambda_path: Option<&str>) -> Outcome {
    let start = Instant::now();
    let (mut r, p, _) = match load_polytope(command, input, start) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let (v, e, f) = p.f_vector();
    let hist = p.face_histogram();
    r.section(
        "polytope",
        vec![
            format!("name: {}", p.name()),
            format!("f-vector: (v, e, f) = ({v}, {e}, {f})"),
            format!("face sizes: {}", hist.iter().map(|(s, c)| format!("{s}:{c}")).collect::<Vec<_>>().join(" ")),
            format!("fullerene: {}", p.is_fullerene()),
        ],
        json!({
            "name": p.name(),
            "f_vector": [v, e, f],
            "face_histogram": histogram_json(&p),
            "fullerene": p.is_fullerene(),
            "min_face_size": p.min_face_size(),
        }),
    );
    r.check("simple-polytope", true, "valid simple 3-polytope");
    let sphere = p.dual_sphere();

    let lambda = match lambda_path {
        Some(lp) => {
            let text = match read_input(lp) {
                Ok(t) => t,
                Err(e) => return early_exit(command, None, "input", e, true, start),
            };
            match CharacteristicFunction::parse(&text) {
                Ok(l) => l,
                Err(e @ CharFuncError::Parse(_)) => {
                    r.check("characteristic-function", false, e.to_string());
                    return Outcome::report(r, start, true);
                }
                Err(e) => {
                    r.check("characteristic-function", false, e.to_string());
                    return Outcome::report(r, start, false);
                }
            }
        }
        None => match four_color(&sphere) {
            Ok(coloring) => {
                let colors = coloring.colors();
                r.section(
                    "coloring",
                    vec![format!("{} ({} colors)", join(colors, " "), coloring.colors_used())],
                    json!({
                        "colors": colors.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "colors_used": coloring.colors_used(),
                    }),
                );
                r.check("four-coloring", true, format!("{} colors", coloring.colors_used()));
                coloring_to_charfunc(&coloring)
            }
            Err(e) => {
                r.check("four-coloring", false, e.to_string());
                return Outcome::report(r, start, false);
            }
        },
    };
    r.section(
        "characteristic-function",
        lambda.values().iter().enumerate().map(|(i, l)| format!("λ({i}) = ({l})")).collect(),
        json!({
            "source": if lambda_path.is_some() { "file" } else { "coloring" },
            "lambda": lambda.values().iter().map(vector).collect::<Vec<_>>(),
        }),
    );
    match check_star_condition(&sphere, &lambda) {
        Ok(violations) => {
            r.section(
                "star-condition",
                violations.iter().map(|v| format!("{} det {}", IndexSet(&v.triangle), v.det)).collect(),
                json!({
                    "vertices_checked": sphere.triangles().len(),
                    "violations": violations
                        .iter()
                        .map(|v| json!({"triangle": v.triangle, "det": int(&v.det)}))
                        .collect::<Vec<_>>(),
                }),
            );
            r.check(
                "star-condition",
                violations.is_empty(),
                format!("{} of {} vertices violate (⋆)", violations.len(), sphere.triangles().len()),
            );
            if violations.is_empty() {
                let b = sphere.betti_numbers();
                r.section(
                    "betti",
                    vec![format!("(b0, b2, b4, b6) = ({}, {}, {}, {})", b[0], b[1], b[2], b[3])],
                    json!(b),
                );
                r.verdict("quasitoric", Status::Pass, "YES");
            }
        }
        Err(e) => r.check("star-condition", false, e.to_string()),
    }
    let min = p.min_face_size();
    let delzant = if min >= 5 {
        format!("NO (every face has at least 5 sides, smallest {min})")
    } else {
        format!("not excluded (has a face with {min} sides)")
    };
    r.verdict("delzant-possible", Status::Info, delzant);
    Outcome::report(r, start, false)
}

/// The 4-coloring and the characteristic function derived from it.
pub fn cmd_polytope_color(path: &str) -> Outcome {
    let start = Instant::now();
    let command = format!("polytope color {path}");
    let (mut r, p, _) = match load_polytope(&command, read_input(path), start) {
        Ok(x) => x,
        Err(o) => return o,
    };
    match four_color(&p.dual_sphere()) {
        Ok(coloring) => {
            let lambda = coloring_to_charfunc(&coloring);
            let mut lines: Vec<String> = coloring
                .colors()
                .iter()
                .enumerate()
                .map(|(i, c)| format!("F {i}: {c}"))
                .collect();
            lines.extend(lambda.to_charfunc().lines().map(str::to_string));
            r.section(
                "coloring",
                lines,
                json!({
                    "colors": coloring.colors().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "charfunc": lambda.to_charfunc(),
                }),
            );
            r.check("four-coloring", true, format!("{} colors", coloring.colors_used()));
        }
        Err(e) => r.check("four-coloring", false, e.to_string()),
    }
    Outcome::report(r, start, false)
}

/// Parses and certifies a fan, recording unimodularity, completeness and support
/// verdicts. On failure returns the finished outcome.
#[allow(clippy::result_large_err)]
fn load_fan(
    command: &str,
    input: Result<String, String>,
    seed: u64,
    start: Instant,
) -> Result<(Report, UnimodularFan), Outcome> {
    let text = input.map_err(|e| early_exit(command, None, "input", e, true, start))?;
    let fan = match Fan3::parse(&text) {
        Ok(f) => f,
        Err(e @ FanError::Parse(_)) => return Err(early_exit(command, Some(&text), "parse", e.to_string(), true, start)),
        Err(e) => return Err(early_exit(command, Some(&text), "fan", e.to_string(), false, start)),
    };
    let mut r = Report::new(command, Some(&text));
    let (v, e, f) = fan.sphere().f_vector();
    r.section(
        "fan",
        vec![
            format!("name: {}", fan.name()),
            format!("rays: {v}, walls: {e}, maximal cones: {f}"),
            format!("support: {}", fan.support().map_or("none".to_string(), |s| join(s, " "))),
        ],
        json!({
            "name": fan.name(),
            "rays": fan.rays().iter().map(vector).collect::<Vec<_>>(),
            "cones": fan.cones(),
            "f_vector": [v, e, f],
            "support": fan.support().map(rationals),
        }),
    );
    let violations = fan.check_unimodular();
    r.check(
        "unimodular",
        violations.is_empty(),
        match violations.first() {
            None => format!("all {f} maximal cones have det ±1"),
            Some(c) => format!("{} cone(s) with |det| != 1, first {} det {}", violations.len(), IndexSet(&c.cone), c.det),
        },
    );
    if !violations.is_empty() {
        return Err(Outcome::report(r, start, false));
    }
    match fan.check_complete(seed) {
        Ok(cert) => {
            r.section(
                "completeness",
                vec![format!(
                    "direction ({}) lies in cone {} only (seed {seed}, {} sample(s))",
                    cert.direction,
                    IndexSet(&cert.containing_cone),
                    cert.samples
                )],
                json!({
                    "seed": seed,
                    "direction": vector(&cert.direction),
                    "containing_cone": cert.containing_cone,
                    "samples": cert.samples,
                }),
            );
            r.check("complete", true, "sphere, opposite apexes at every wall, generic direction covered once");
        }
        Err(e) => {
            r.check("complete", false, e.to_string());
            return Err(Outcome::report(r, start, false));
        }
    }
    match UnimodularFan::new(fan, seed) {
        Ok(smooth) => {
            if smooth.support().is_some() {
                r.check("support", true, "every edge functional is positive");
            }
            Ok((r, smooth))
        }
        Err(e) => {
            r.check("support", false, e.to_string());
            Err(Outcome::report(r, start, false))
        }
    }
}

fn walls_section(r: &mut Report, fan: &UnimodularFan) {
    let lines = fan
        .walls()
        .iter()
        .map(|w| {
            format!(
                "{} apexes ({}, {}) a = ({}, {}) curv {} {}",
                IndexSet(&w.vertices),
                w.apexes[0],
                w.apexes[1],
                w.a[0],
                w.a[1],
                w.curvature,
                w.convexity
            )
        })
        .collect();
    let data = fan
        .walls()
        .iter()
        .map(|w| {
            json!({
                "wall": w.vertices,
                "apexes": w.apexes,
                "a": ints(&w.a),
                "curvature": int(&w.curvature),
                "convexity_det": int(&w.convexity_det),
                "convexity": w.convexity.to_string(),
            })
        })
        .collect::<Vec<_>>();
    r.section("walls", lines, Value::Array(data));
}

fn membership_json(m: &Membership) -> Value {
    match m {
        Membership::Feasible { coefficients } => json!({"feasible": true, "coefficients": rationals(coefficients)}),
        Membership::Infeasible { separator } => json!({"feasible": false, "separator": rationals(separator)}),
    }
}

fn cone_section(r: &mut Report, analysis: &ConeAnalysis) {
    let mut lines = Vec::new();
    let mut groups = Vec::new();
    for (g, group) in analysis.groups.iter().enumerate() {
        lines.push(format!(
            "group {g}: direction ({}) {} walls {}",
            join(&group.direction, " "),
            if group.extremal { "extremal" } else { "not extremal" },
            group.walls.iter().map(|w| IndexSet(w).to_string()).collect::<Vec<_>>().join(" ")
        ));
        groups.push(json!({
            "walls": group.walls,
            "direction": ints(&group.direction),
            "extremal": group.extremal,
            "certificate": membership_json(&group.certificate),
        }));
    }
    let convexity = match &analysis.convexity {
        StrictConvexity::Witness { functional, source } => {
            let values = functional_values(functional, &analysis.classes);
            lines.push(format!("strict convexity witness ({source}): ({})", join(functional, " ")));
            json!({
                "witness": true,
                "source": source.to_string(),
                "functional": rationals(functional),
                "values": rationals(&values),
            })
        }
        StrictConvexity::NoWitness { certificate } => {
            lines.push(format!("no strict convexity witness, certificate ({})", join(certificate, " ")));
            json!({"witness": false, "certificate": rationals(certificate)})
        }
    };
    if let Some(note) = analysis.uncertified {
        lines.push(note.to_string());
    }
    let classes = analysis
        .classes
        .iter()
        .map(|c| json!({"wall": c.wall, "pairing": ints(&c.pairing)}))
        .collect::<Vec<_>>();
    r.section(
        "effective-cone",
        lines,
        json!({
            "classes": classes,
            "groups": groups,
            "strict_convexity": convexity,
            "uncertified": analysis.uncertified,
        }),
    );
}

fn cone_analysis(fan: &UnimodularFan, table: &IntersectionTable) -> ConeAnalysis {
    analyze_classes(wall_classes(fan.sphere(), table), fan.ray_count(), fan.support())
}

fn convexity_verdict(r: &mut Report, analysis: &ConeAnalysis) {
    let ok = matches!(analysis.convexity, StrictConvexity::Witness { .. });
    match analysis.uncertified {
        Some(note) => r.verdict("strict-convexity", Status::Info, note),
        None => r.check(
            "strict-convexity",
            ok,
            if ok { "wall classes lie in an open half-space" } else { "wall classes span a line" },
        ),
    }
}

fn witness_section(r: &mut Report, fan: &UnimodularFan, analysis: &ConeAnalysis) {
    match obstruction_from_analysis(fan, analysis) {
        Ok(w) => {
            let face = if w.degree == 3 { "triangle" } else { "quadrangle" };
            r.section(
                "obstruction-witness",
                vec![w.to_string(), format!("dual face: {face} ({} sides)", w.degree)],
                json!({
                    "wall": w.wall,
                    "a": ints(&w.a),
                    "curvature": int(&w.curvature),
                    "vertex": w.vertex,
                    "neighbors": w.neighbors,
                    "degree": w.degree,
                    "dual_face_size": w.degree,
                }),
            );
            let detail = format!("vertex {} of degree {} ({face})", w.vertex, w.degree);
            match analysis.uncertified {
                Some(_) => r.verdict("obstruction-witness", Status::Info, format!("{detail}, uncertified")),
                None => r.check("obstruction-witness", true, detail),
            }
        }
        Err(e) => r.check("obstruction-witness", false, e.to_string()),
    }
}

/// Full analysis of a fan: walls, Gauss–Bonnet sum, Chern number cross-check, volume,
/// effective cone and the obstruction witness.
pub fn cmd_fan_report(path: &str, seed: u64) -> Outcome {
    fan_report(&format!("fan report {path}"), read_input(path), seed)
}

/// `fan report` on an in-memory FAN3 document.
pub fn fan_report_text(text: &str, seed: u64) -> Outcome {
    fan_report("fan report <text>", Ok(text.to_string()), seed)
}

fn fan_report(command: &str, input: Result<String, String>, seed: u64) -> Outcome {
    let start = Instant::now();
    let (mut r, fan) = match load_fan(command, input, seed, start) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let b = fan.sphere().betti_numbers();
    r.section("betti", vec![format!("(b0, b2, b4, b6) = ({}, {}, {}, {})", b[0], b[1], b[2], b[3])], json!(b));
    walls_section(&mut r, &fan);
    let gb = fan.gauss_bonnet_sum();
    let table = IntersectionTable::for_fan(&fan);
    let chern = chern_number_c1c2(&fan, &table);
    r.section(
        "curvature",
        vec![format!("gauss-bonnet sum: {gb}"), format!("c1 c2: {chern}")],
        json!({"gauss_bonnet_sum": int(&gb), "c1c2": int(&chern)}),
    );
    if let Some(c) = fan.support() {
        let volume = VolumePolynomial::for_fan(&fan);
        let value = volume.evaluate(c);
        r.section("volume", vec![format!("V(c) = {value}")], json!({"support": rationals(c), "volume": rational(&value)}));
    }
    let analysis = cone_analysis(&fan, &table);
    cone_section(&mut r, &analysis);
    witness_section(&mut r, &fan, &analysis);

    r.check("chern-cross-check", chern == gb, format!("c1 c2 = {chern}, sum of curvatures = {gb}"));
    convexity_verdict(&mut r, &analysis);
    r.check("gauss-bonnet", gb == 24.into(), format!("sum of curvatures = {gb} (expected 24)"));
    // keep the witness verdict last
    if let Some(k) = r.verdicts.iter().position(|v| v.name == "obstruction-witness") {
        let w = r.verdicts.remove(k);
        r.verdicts.push(w);
    }
    Outcome::report(r, start, false)
}

/// Edge functionals and volume at the given support parameters.
pub fn cmd_fan_volume(path: &str, support: &str, seed: u64, polynomial: bool) -> Outcome {
    let start = Instant::now();
    let command = format!("fan volume {path} --support {support}");
    let c = match parse_support(support) {
        Ok(c) => c,
        Err(e) => return early_exit(&command, None, "support", e.to_string(), true, start),
    };
    let text = match read_input(path) {
        Ok(t) => t,
        Err(e) => return early_exit(&command, None, "input", e, true, start),
    };
    // the file's own support line is replaced, so validation happens below
    let fan = match Fan3::parse(&text).and_then(|f| f.with_support(None)).and_then(|f| UnimodularFan::new(f, seed)) {
        Ok(f) => f,
        Err(e @ FanError::Parse(_)) => return early_exit(&command, Some(&text), "parse", e.to_string(), true, start),
        Err(e) => return early_exit(&command, Some(&text), "fan", e.to_string(), false, start),
    };
    let mut r = Report::new(command, Some(&text));
    if c.len() != fan.ray_count() {
        r.check("support", false, format!("{} parameters for {} rays", c.len(), fan.ray_count()));
        return Outcome::report(r, start, false);
    }
    let volume = VolumePolynomial::for_fan(&fan);
    let edges: Vec<([usize; 2], BigRational)> =
        fan.walls().iter().map(|w| (w.key(), edge_functional(&volume, w.key(), &c))).collect();
    r.section(
        "edges",
        edges.iter().map(|(w, len)| format!("{} {len}", IndexSet(w))).collect(),
        Value::Array(edges.iter().map(|(w, len)| json!({"wall": w, "length": rational(len)})).collect()),
    );
    let bad: Vec<&([usize; 2], BigRational)> = edges.iter().filter(|(_, len)| !len.is_positive()).collect();
    if polynomial {
        let text = volume.to_string();
        r.section("polynomial", text.lines().map(str::to_string).collect(), json!(text));
    }
    if bad.is_empty() {
        let value = volume.evaluate(&c);
        r.section("volume", vec![format!("V(c) = {value}")], json!({"support": rationals(&c), "volume": rational(&value)}));
        r.check("support", true, "every edge functional is positive");
    } else {
        r.check(
            "support",
            false,
            format!(
                "non-positive edge functional at {}",
                bad.iter().map(|(w, len)| format!("{} ({len})", IndexSet(w))).collect::<Vec<_>>().join(", ")
            ),
        );
    }
    Outcome::report(r, start, false)
}

pub fn cmd_fan_extremal(path: &str, seed: u64) -> Outcome {
    let start = Instant::now();
    let command = format!("fan extremal {path}");
    let (mut r, fan) = match load_fan(&command, read_input(path), seed, start) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let analysis = cone_analysis(&fan, &IntersectionTable::for_fan(&fan));
    cone_section(&mut r, &analysis);
    convexity_verdict(&mut r, &analysis);
    Outcome::report(r, start, false)
}

pub fn cmd_fan_witness(path: &str, seed: u64) -> Outcome {
    let start = Instant::now();
    let command = format!("fan witness {path}");
    let (mut r, fan) = match load_fan(&command, read_input(path), seed, start) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let analysis = cone_analysis(&fan, &IntersectionTable::for_fan(&fan));
    convexity_verdict(&mut r, &analysis);
    witness_section(&mut r, &fan, &analysis);
    Outcome::report(r, start, false)
}

pub fn cmd_corpus_list() -> Outcome {
    let mut out = String::new();
    for e in corpus::list() {
        out.push_str(&format!("{:<9} {:<18} {}\n", e.kind, e.name, e.provenance));
    }
    Outcome { output: Output::Raw(out), exit_code: EXIT_OK }
}

pub fn cmd_corpus_get(name: &str) -> Outcome {
    match corpus::get(name) {
        Some(e) => Outcome { output: Output::Raw(e.text.to_string()), exit_code: EXIT_OK },
        None => Outcome {
            output: Output::Raw(format!("unknown corpus entry '{name}'\n")),
            exit_code: EXIT_FAILURE,
        },
    }
}

/// Digest of a report with its timing removed, for determinism checks.
pub fn stable_json(outcome: &Outcome) -> String {
    match &outcome.output {
        Output::Report(r) => {
            let mut r = r.clone();
            r.timing_ms = None;
            report::sha256_hex(r.render_json().as_bytes())
        }
        Output::Raw(s) => report::sha256_hex(s.as_bytes()),
    }
}
