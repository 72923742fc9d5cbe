use std::collections::BTreeSet;

use nefmirror::arith::{fmt_q, q};
use nefmirror::builtin;
use nefmirror::lattice::json::{fan_to_json, point_json, polytope_from_json, polytope_to_json, PolytopeJson};
use nefmirror::lattice::{dual_polytope, face_fan, lattice_points, minkowski_sum, normal_fan, Fan, Polytope};
use nefmirror::nef::{dual_nef_partition, is_nef_partition, NefPartition};
use nefmirror::triangulation::projective::{verify_certificate, verify_witness};
use nefmirror::triangulation::simplex::TriangulationJson;
use nefmirror::triangulation::tau::facet_restriction_mismatches;
use nefmirror::triangulation::{build_tau_p, check_projective, verify_triangulation, Projectivity, Triangulation};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{read_json, usage, CliResult, FanCmd, NefCmd, PolytopeCmd, Report, Source, Status, TriangulateCmd};

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn builtin_polytope(name: &str) -> CliResult<Polytope> {
    Ok(match name {
        "delta" => builtin::delta(),
        "delta1" => builtin::delta1(),
        "delta2" => builtin::delta2(),
        "nabla" => builtin::nabla(),
        "nabla1" => builtin::nabla1(),
        "nabla2" => builtin::nabla2(),
        "p" => builtin::p_polytope(),
        other => return Err(usage(format!("unknown polytope {other:?}; expected delta, delta1, delta2, nabla, nabla1, nabla2 or p"))),
    })
}

/// Inputs record plus the resolved object; `--builtin` and `--in` are exclusive.
fn resolve<T>(
    s: &Source,
    default: &str,
    from_builtin: impl Fn(&str) -> CliResult<T>,
    from_file: impl Fn(&std::path::PathBuf) -> CliResult<T>,
) -> CliResult<(Value, Option<String>, T)> {
    match (&s.builtin, &s.input) {
        (Some(_), Some(_)) => Err(usage("--builtin and --in are mutually exclusive")),
        (None, Some(path)) => Ok((json!({ "in": path.display().to_string() }), None, from_file(path)?)),
        (b, None) => {
            let name = b.as_deref().unwrap_or(default);
            Ok((json!({ "builtin": name }), Some(name.to_string()), from_builtin(name)?))
        }
    }
}

fn polytope_source(s: &Source, default: &str) -> CliResult<(Value, Option<String>, Polytope)> {
    resolve(s, default, builtin_polytope, |path| {
        let j: PolytopeJson = read_json(path)?;
        polytope_from_json(&j).map_err(|e| usage(format!("invalid polytope in {}: {e}", path.display())))
    })
}

pub fn polytope(cmd: &PolytopeCmd) -> CliResult<Report> {
    match cmd {
        PolytopeCmd::Dual(s) => {
            let (inputs, _, p) = polytope_source(s, "delta")?;
            let d = dual_polytope(&p)?;
            let results = json!({
                "vertices": d.polytope.vertices().len(),
                "reflexive": d.reflexive,
                "dual": to_value(&polytope_to_json(&d.polytope)),
            });
            Ok(Report::new("polytope dual", inputs, results, Status::Info))
        }
        PolytopeCmd::Points(s) => {
            let (inputs, _, p) = polytope_source(s, "p")?;
            let pts = lattice_points(&p);
            let coords: Vec<&[i64]> = pts.iter().map(|v| v.coords()).collect();
            Ok(Report::new("polytope points", inputs, json!({ "count": pts.len(), "points": coords }), Status::Info))
        }
        PolytopeCmd::Sum { builtin } => {
            let [a, b] = builtin.as_slice() else { return Err(usage("sum takes exactly two polytopes")) };
            let sum = minkowski_sum(&builtin_polytope(a)?, &builtin_polytope(b)?)?;
            let expected = match (a.as_str(), b.as_str()) {
                ("delta1", "delta2") | ("delta2", "delta1") => Some(builtin::delta()),
                ("nabla1", "nabla2") | ("nabla2", "nabla1") => Some(builtin::nabla()),
                _ => None,
            };
            let mut results = json!({ "vertices": sum.vertices().len(), "sum": to_value(&polytope_to_json(&sum)) });
            let status = match expected {
                Some(e) => {
                    results["matches_total"] = json!(e == sum);
                    Status::check(e == sum)
                }
                None => Status::Info,
            };
            Ok(Report::new("polytope sum", json!({ "builtin": builtin }), results, status))
        }
    }
}

#[derive(Deserialize)]
struct NefJson {
    parts: Vec<PolytopeJson>,
}

fn nef_source(s: &Source) -> CliResult<(Value, Option<String>, NefPartition)> {
    resolve(
        s,
        "delta",
        |name| match name {
            "delta" => Ok(builtin::nef_delta()),
            "nabla" => Ok(builtin::nef_nabla()),
            other => Err(usage(format!("unknown nef-partition {other:?}; expected delta or nabla"))),
        },
        |path| {
            let j: NefJson = read_json(path)?;
            let parts = j
                .parts
                .iter()
                .map(polytope_from_json)
                .collect::<nefmirror::Result<Vec<_>>>()
                .map_err(|e| usage(format!("invalid part in {}: {e}", path.display())))?;
            Ok(NefPartition::from_parts(parts)?)
        },
    )
}

pub fn nef(cmd: &NefCmd) -> CliResult<Report> {
    match cmd {
        NefCmd::Dual(s) => {
            let (inputs, name, np) = nef_source(s)?;
            let dual = dual_nef_partition(&np)?;
            let mut results = json!({
                "total_vertices": dual.total.vertices().len(),
                "parts": dual.parts.iter().map(|p| to_value(&polytope_to_json(p))).collect::<Vec<_>>(),
                "total": to_value(&polytope_to_json(&dual.total)),
            });
            let expected = match name.as_deref() {
                Some("delta") => Some((
                    vec![builtin::nabla1(), builtin::nabla2()],
                    Polytope::from_lattice(&builtin::nabla_listed_points()),
                )),
                Some("nabla") => Some((vec![builtin::delta1(), builtin::delta2()], builtin::delta())),
                _ => None,
            };
            let status = match expected {
                Some((parts, total)) => {
                    let parts_ok = parts == dual.parts;
                    let total_ok = total == dual.total;
                    results["parts_match"] = json!(parts_ok);
                    results["total_matches"] = json!(total_ok);
                    Status::check(parts_ok && total_ok)
                }
                None => Status::Info,
            };
            Ok(Report::new("nef dual", inputs, results, status))
        }
        NefCmd::Check(s) => {
            let (inputs, _, np) = nef_source(s)?;
            let check = is_nef_partition(&np);
            let witness = check.witness.as_ref().map(|w| point_json(np.total.space(), w));
            let results = json!({ "nef_partition": check.ok(), "failure": check.failure, "witness": witness });
            Ok(Report::new("nef check", inputs, results, Status::check(check.ok())))
        }
    }
}

fn fan_summary(f: &Fan) -> Value {
    json!({ "cones": f.len(), "rays": f.rays().len(), "fan": to_value(&fan_to_json(f)) })
}

pub fn fan(cmd: &FanCmd) -> CliResult<Report> {
    match cmd {
        FanCmd::Normal(s) => {
            let (inputs, name, p) = polytope_source(s, "nabla")?;
            let f = normal_fan(&p)?;
            let expected: Option<BTreeSet<Vec<Vec<i64>>>> = match name.as_deref() {
                Some("delta") => Some((1..=6).map(|i| builtin::sigma(i).canonical()).collect()),
                Some("nabla") => Some(builtin::named_nabla_cones().iter().map(|(_, c)| c.canonical()).collect()),
                _ => None,
            };
            let mut results = fan_summary(&f);
            let status = match expected {
                Some(e) => {
                    let ok = f.canonical() == e;
                    results["matches_named_cones"] = json!(ok);
                    Status::check(ok)
                }
                None => Status::Info,
            };
            Ok(Report::new("fan normal", inputs, results, status))
        }
        FanCmd::Face(s) => {
            let (inputs, _, p) = polytope_source(s, "p")?;
            Ok(Report::new("fan face", inputs, fan_summary(&face_fan(&p)?), Status::Info))
        }
        FanCmd::Compare => {
            let sd = normal_fan(&builtin::delta())?;
            let sigma: BTreeSet<_> = (1..=6).map(|i| builtin::sigma(i).canonical()).collect();
            let nf = normal_fan(&builtin::nabla())?;
            let ff = face_fan(&builtin::p_polytope())?;
            let named = builtin::named_nabla_cones();
            let named_set: BTreeSet<_> = named.iter().map(|(_, c)| c.canonical()).collect();
            // Name each computed cone of Σ_∇ by matching generators.
            let names: Vec<String> = nf
                .cones()
                .iter()
                .map(|c| {
                    let k = c.canonical();
                    named.iter().find(|(_, n)| n.canonical() == k).map_or_else(|| "?".into(), |(n, _)| n.clone())
                })
                .collect();
            let delta_ok = sd.len() == 6 && sd.canonical() == sigma;
            let same = nf.same_cones(&ff);
            let named_ok = nf.len() == 15 && nf.canonical() == named_set;
            let results = json!({
                "delta_cones": sd.len(),
                "delta_matches_sigma": delta_ok,
                "nabla_cones": nf.len(),
                "face_fan_cones": ff.len(),
                "normal_equals_face_fan": same,
                "nabla_matches_named_cones": named_ok,
                "nabla_cone_names": names,
            });
            Ok(Report::new("fan compare", json!({}), results, Status::check(delta_ok && same && named_ok)))
        }
    }
}

fn triangulation_source(s: &Source, default: &str) -> CliResult<(Value, Option<String>, Triangulation)> {
    resolve(
        s,
        default,
        |name| match name {
            "tau" => Ok(builtin::tau()?),
            "nonregular" => Ok(builtin::nonregular_triangulation()),
            other => Err(usage(format!("unknown triangulation {other:?}; expected tau or nonregular"))),
        },
        |path| {
            let j: TriangulationJson = read_json(path)?;
            Triangulation::from_json(&j).map_err(|e| usage(format!("invalid triangulation in {}: {e}", path.display())))
        },
    )
}

pub fn triangulate(cmd: &TriangulateCmd) -> CliResult<Report> {
    match cmd {
        TriangulateCmd::Build => {
            let tau = build_tau_p()?;
            let t = &tau.triangulation;
            let mismatches = facet_restriction_mismatches(&tau.facets, &tau.boundary);
            let results = json!({
                "simplices": t.len(),
                "points": t.points.len(),
                "facets": tau.facets.iter().map(|f| json!({ "name": f.name, "simplices": f.triangulation.len() })).collect::<Vec<_>>(),
                "facet_mismatches": mismatches,
                "star": t.is_star(),
            });
            let ok = mismatches.is_empty() && t.is_star();
            Ok(Report::new("triangulate build", json!({ "builtin": "tau" }), results, Status::check(ok))
                .with_artifact(to_value(&t.to_json())))
        }
        TriangulateCmd::Verify(s) => {
            let (inputs, name, t, facet_mismatches, poly) = if s.builtin.as_deref().unwrap_or("tau") == "tau" && s.input.is_none() {
                let tau = build_tau_p()?;
                let m = facet_restriction_mismatches(&tau.facets, &tau.boundary);
                (json!({ "builtin": "tau" }), Some("tau"), tau.triangulation, Some(m), builtin::p_polytope())
            } else {
                let (inputs, _, t) = triangulation_source(s, "tau")?;
                let hull = Polytope::from_points(t.space, &t.points);
                (inputs, None, t, None, hull)
            };
            let r = verify_triangulation(&t, &poly);
            let missing = r.missing_lattice_points.as_ref().map(Vec::len);
            let mut results = json!({
                "simplices": r.simplices,
                "points": r.points,
                "dimension": r.dimension,
                "axioms": r.axioms_hold(),
                "covers": r.covers(),
                "maximal": r.maximal(),
                "missing_lattice_points": missing,
                "volume_simplices": r.volume_simplices,
                "volume_polytope": r.volume_polytope,
                "degenerate": r.degenerate,
                "outside": r.outside,
                "bad_walls": r.bad_walls.len(),
                "improper_pairs": r.improper_pairs,
                "embedded_points": r.embedded_points,
                "star": r.star,
                "lp_checks": r.lp_checks,
            });
            let mut ok = r.passes();
            if let Some(m) = facet_mismatches {
                results["facet_mismatches"] = json!(m);
                ok &= m.is_empty() && r.star && name.is_some();
            }
            Ok(Report::new("triangulate verify", inputs, results, Status::check(ok)))
        }
    }
}

pub fn projectivity(s: &Source) -> CliResult<Report> {
    let (inputs, _, t) = triangulation_source(s, "tau")?;
    let res = check_projective(&t)?;
    let mut results = json!({ "walls": res.constraints.len(), "points": t.points.len(), "pivots": res.pivots });
    let (ok, artifact) = match &res.outcome {
        Projectivity::Regular(cert) => {
            let verified = verify_certificate(&res.constraints, cert);
            results["regular"] = json!(true);
            results["slack"] = json!(fmt_q(&cert.slack));
            results["slack_positive"] = json!(cert.slack > q(0));
            results["certificate_verified"] = json!(verified);
            (verified, Some(to_value(&cert.to_json())))
        }
        Projectivity::NotRegular(w) => {
            results["regular"] = json!(false);
            results["witness_constraints"] = json!(w.weights.len());
            results["witness_verified"] = json!(verify_witness(&res.constraints, t.points.len(), w));
            (false, None)
        }
    };
    let report = Report::new("projectivity check", inputs, results, Status::check(ok));
    Ok(match artifact {
        Some(a) => report.with_artifact(a),
        None => report,
    })
}
