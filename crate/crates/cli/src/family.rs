use std::collections::BTreeMap;

use nefmirror::arith::qr;
use nefmirror::builtin;
use nefmirror::mirror::{
    fiber_point, fiber_residuals, matches_printed_form, nabla_patch, odp_certificate, torus_jacobian_rank, Cyc, Psi,
    QuadraticForm, RayLabel,
};
use nefmirror::nef::{divisor_from_polytope, pullback_divisor, TorusDivisor};
use nefmirror::triangulation::star::non_unimodular_cones;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::{usage, CliResult, FamilyCmd, Report, Status};

fn parse_psi(s: &str) -> CliResult<Cyc> {
    Cyc::parse(s).map_err(|e| usage(format!("malformed cyclotomic literal {s:?}: {e}")))
}

fn label(v: &nefmirror::LatticeVector) -> String {
    RayLabel::from_vector(v).map_or_else(|| format!("{:?}", v.coords()), |l| l.to_string())
}

pub fn run(cmd: &FamilyCmd) -> CliResult<Report> {
    match cmd {
        FamilyCmd::Rays => rays(),
        FamilyCmd::Cones => cones(),
        FamilyCmd::Singular { psi } => singular(psi),
        FamilyCmd::Odp => odp(),
        FamilyCmd::Patch { cones, psi } => patch(cones, psi.as_deref()),
    }
}

fn rays() -> CliResult<Report> {
    let sigma = builtin::sigma_nabla_named();
    let pi = builtin::pi()?;
    let d1 = pullback_divisor(&divisor_from_polytope(&builtin::nabla1(), &sigma)?, &pi)?;
    let d2 = pullback_divisor(&divisor_from_polytope(&builtin::nabla2(), &sigma)?, &pi)?;
    let ones = |d: &TorusDivisor| d.coeffs.iter().filter(|&&c| c == 1).count();
    let binary = |d: &TorusDivisor| d.coeffs.iter().all(|&c| c == 0 || c == 1);
    let anticanonical = d1.add(&d2)? == TorusDivisor::anticanonical(pi.clone());
    let listing: Vec<Value> = pi
        .rays()
        .iter()
        .zip(d1.coeffs.iter().zip(&d2.coeffs))
        .map(|(r, (a, b))| json!({ "label": label(r), "coords": r.coords(), "d1": a, "d2": b }))
        .collect();
    let ok = ones(&d1) == 55 && ones(&d2) == 55 && binary(&d1) && binary(&d2) && anticanonical;
    let results = json!({
        "rays": pi.rays().len(),
        "d1_ones": ones(&d1),
        "d2_ones": ones(&d2),
        "coefficients_binary": binary(&d1) && binary(&d2),
        "sum_is_anticanonical": anticanonical,
        "listing": listing,
    });
    Ok(Report::new("family rays", json!({ "builtin": "pi" }), results, Status::check(ok)))
}

fn cones() -> CliResult<Report> {
    let pi = builtin::pi()?;
    let bad = non_unimodular_cones(&pi);
    let refines = pi.refines(&builtin::sigma_nabla_named()).is_ok();
    let target = builtin::rationality_cone().canonical();
    let has_rationality_cone = pi.cones().iter().any(|c| c.canonical() == target);
    let results = json!({
        "cones": pi.len(),
        "rays": pi.rays().len(),
        "all_unimodular": bad.is_empty(),
        "non_unimodular": bad,
        "refines_sigma_nabla": refines,
        "contains_rationality_cone": has_rationality_cone,
    });
    Ok(Report::new("family cones", json!({ "builtin": "pi" }), results, Status::check(bad.is_empty() && refines)))
}

fn diagonal_rank(psi: &Cyc) -> (Vec<String>, Option<usize>) {
    let t: [Cyc; 6] = std::array::from_fn(|_| psi.clone());
    let residuals = fiber_residuals(psi, &t).iter().map(ToString::to_string).collect();
    (residuals, torus_jacobian_rank(psi, &t).ok())
}

fn singular(psi: &str) -> CliResult<Report> {
    let psi = parse_psi(psi)?;
    let (residuals, rank) = diagonal_rank(&psi);
    let results = json!({
        "psi": psi.to_string(),
        "on_fiber": rank.is_some(),
        "residuals": residuals,
        "rank": rank,
        "singular": rank.is_some_and(|r| r < 3),
    });
    let ok = rank.is_some_and(|r| r < 3);
    Ok(Report::new("family singular", json!({ "psi": psi.to_json() }), results, Status::check(ok)))
}

fn odp() -> CliResult<Report> {
    let printed = QuadraticForm::printed_node_form();
    let mut all_rank_two = true;
    let mut all_nondegenerate = true;
    let mut all_match = true;
    let mut roots = Vec::new();
    for psi in Cyc::mu6() {
        let (residuals, rank) = diagonal_rank(&psi);
        let form = odp_certificate(&psi)?;
        let matches = matches_printed_form(&form);
        all_rank_two &= rank == Some(2);
        all_nondegenerate &= !form.det().is_zero();
        all_match &= matches;
        roots.push(json!({
            "psi": psi.to_string(),
            "residuals": residuals,
            "rank": rank,
            "form": serde_json::to_value(form.to_json()).expect("serializable"),
            "matches_printed_form": matches,
        }));
    }
    let (b, c) = (Cyc::rational(qr(-1, 2)), Cyc::rational(qr(-1, 2)));
    let (wpsi, wt) = fiber_point(&b, &c)?;
    let witness_rank = torus_jacobian_rank(&wpsi, &wt)?;
    let results = json!({
        "roots": roots,
        "all_rank_two": all_rank_two,
        "all_nondegenerate": all_nondegenerate,
        "all_match_printed_form": all_match,
        "printed_form": serde_json::to_value(printed.to_json()).expect("serializable"),
        "witness": {
            "psi": wpsi.to_string(),
            "t": wt.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "rank": witness_rank,
        },
    });
    let ok = all_rank_two && all_nondegenerate && all_match && wpsi == Cyc::one() && witness_rank == 3;
    Ok(Report::new("family odp", json!({}), results, Status::check(ok)))
}

fn patch(names: &[String], psi: Option<&str>) -> CliResult<Report> {
    let psi = match psi {
        Some(s) => Psi::Value(parse_psi(s)?),
        None => Psi::Symbol,
    };
    let named = builtin::named_nabla_cones();
    let mut patches = BTreeMap::new();
    for name in names {
        let (_, cone) = named
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| usage(format!("unknown cone {name:?}; expected U1..U3, V4..V6 or Ci,j")))?;
        let p = nabla_patch(cone, &psi)?;
        let text = p.to_string();
        let lines: Vec<&str> = text.lines().collect();
        let (g, r) = (p.generators.len(), p.relations.len());
        patches.insert(
            name.clone(),
            json!({
                "generators": lines[..g],
                "relations": lines[g..g + r],
                "equations": lines[g + r..],
            }),
        );
    }
    let inputs = json!({ "cones": names, "psi": match &psi { Psi::Value(c) => c.to_string(), Psi::Symbol => "psi".into() } });
    Ok(Report::new("family patch", inputs, json!({ "patches": patches }), Status::Info))
}
