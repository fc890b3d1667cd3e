//! Assembly of the JSON analysis report and its CSV side tables.
//!
//! Everything exact is rendered as a lowest-terms rational string; the
//! numeric cross-check section is the only place binary64 values appear.
//! serde_json's default map keeps keys sorted, so the report is
//! byte-identical across runs for identical input.

use std::fs;
use std::path::Path;

use basemod::matroid::{Caps, Matroid, RankTable};
use basemod::modulus::{self, Mod2Result};
use basemod::parse::fmt_rat;
use basemod::{duality, partition, suite, Error, Rat, Result};
use serde_json::{json, Value};

/// Everything the CLI emits for one instance: the JSON document plus the raw
/// pieces the CSV writer needs.
pub struct Analysis {
    pub json: Value,
    labels: Vec<String>,
    res: Mod2Result,
    blocker: Vec<duality::BlockerVector>,
}

/// Map element label → rendered rational, in ground-set order (serialization
/// sorts the keys).
fn density_map(labels: &[String], values: &[Rat]) -> Value {
    let entries: serde_json::Map<String, Value> = labels
        .iter()
        .zip(values)
        .map(|(l, v)| (l.clone(), Value::String(fmt_rat(v))))
        .collect();
    Value::Object(entries)
}

/// Full analysis of a parsed matroid. Runs the complete invariant suite
/// before emission and refuses to emit if any cross-identity fails.
pub fn analyze(m: &Matroid, format: &str, source: &str, ps: &[Rat], caps: &Caps) -> Result<Analysis> {
    let table = RankTable::build(m, caps)?;
    let res = modulus::mod2(m, caps)?;
    let defl = partition::deflate(m, caps)?;
    let chain = partition::critical_values(m, &table, &defl, caps)?;
    let strength = partition::strength(&table)?;
    let arbor = partition::arboricity(&table)?;
    let theta = partition::theta(&table)?;
    let packing = duality::packing_value(m, caps)?;
    let covering = duality::covering_value(m, caps)?;
    let blocker = duality::fulkerson_blocker(m, caps)?;

    let ground = m.ground();
    let labels: Vec<String> = ground.labels().to_vec();
    let n = m.size() as u64;
    let r = m.full_rank();

    // Re-assert every cross-identity before emitting anything.
    let verdicts = suite::run(m, caps)?;
    if !verdicts.all_passed() {
        let names: Vec<&str> = verdicts.failures().iter().map(|c| c.name).collect();
        return Err(Error::Internal(format!(
            "refusing to emit report; failed checks: {}",
            names.join(", ")
        )));
    }

    let mut mod_p = serde_json::Map::new();
    for p in ps {
        let mp = modulus::mod_p(&defl, p)?;
        mod_p.insert(
            fmt_rat(p),
            json!({
                "exact": mp.value_exact.as_ref().map(fmt_rat),
                "numeric": mp.value,
                "q": fmt_rat(&mp.q),
                "rho_exact": mp.rho_exact.as_ref().map(|d| density_map(&labels, &d.0)),
            }),
        );
    }

    let deflation: Vec<Value> = defl
        .blocks
        .iter()
        .map(|b| {
            json!({
                "elements": ground.labels_of(b.mask),
                "eta": fmt_rat(&b.eta),
                "rank": b.rank,
                "size": b.size,
            })
        })
        .collect();

    let theta_family: Vec<Value> = blocker
        .iter()
        .map(|bv| {
            json!({
                "denominator": bv.denom,
                "set": ground.labels_of(bv.set),
                "vector": density_map(&labels, &bv.vector.0),
            })
        })
        .collect();

    let mut doc = json!({
        "arboricity": {
            "value": fmt_rat(&arbor.value),
            "witness": ground.labels_of(arbor.witness),
        },
        "critical_values": chain.critical.iter().map(fmt_rat).collect::<Vec<_>>(),
        "deflation": deflation,
        "eta_star": density_map(&labels, &res.eta.0),
        "homogeneous": defl.blocks.len() == 1,
        "input": {
            "elements": labels.clone(),
            "format": format,
            "rank": r,
            "size": n,
            "source": source,
        },
        "meo": fmt_rat(&res.meo),
        "mod2": fmt_rat(&res.mod2),
        "mod_p": Value::Object(mod_p),
        "numeric": {
            "tolerance": modulus::NUMERIC_TOL,
            "wolfe_gap": res.wolfe_gap,
            "wolfe_max_err": res.wolfe_max_err,
        },
        "rho_star": density_map(&labels, &res.rho.0),
        "strength": {
            "value": fmt_rat(&strength.value),
            "witness": ground.labels_of(strength.witness),
        },
        "tau": fmt_rat(&packing.value),
        "theta": fmt_rat(&theta),
        "theta_family": theta_family,
        "upsilon": fmt_rat(&covering.value),
    });

    if r > 0 && r < n {
        let id = duality::dual_eta_identity(m, caps)?;
        doc.as_object_mut().unwrap().insert(
            "dual_identity".into(),
            json!({ "eta_dual": density_map(&labels, &id.eta_dual.0) }),
        );
    }

    Ok(Analysis { json: doc, labels, res, blocker })
}

/// Write eta_star.csv, rho_star.csv, and theta_family.csv into `dir`.
pub fn write_csv(dir: &Path, a: &Analysis) -> Result<()> {
    let io = |e: std::io::Error| Error::Domain(format!("csv export: {e}"));
    fs::create_dir_all(dir).map_err(io)?;

    let table = |name: &str, header: &str, values: &[Rat]| -> Result<()> {
        let mut w = csv::Writer::from_path(dir.join(name))
            .map_err(|e| Error::Domain(format!("csv export: {e}")))?;
        w.write_record(["element", header]).map_err(|e| Error::Domain(e.to_string()))?;
        for (l, v) in a.labels.iter().zip(values) {
            w.write_record([l.as_str(), &fmt_rat(v)])
                .map_err(|e| Error::Domain(e.to_string()))?;
        }
        w.flush().map_err(io)
    };
    table("eta_star.csv", "eta_star", &a.res.eta.0)?;
    table("rho_star.csv", "rho_star", &a.res.rho.0)?;

    let mut w = csv::Writer::from_path(dir.join("theta_family.csv"))
        .map_err(|e| Error::Domain(format!("csv export: {e}")))?;
    let mut header = vec!["set".to_string(), "denominator".to_string()];
    header.extend(a.labels.iter().cloned());
    w.write_record(&header).map_err(|e| Error::Domain(e.to_string()))?;
    for bv in &a.blocker {
        let mut row = vec![
            a.labels
                .iter()
                .enumerate()
                .filter(|(i, _)| bv.set >> i & 1 == 1)
                .map(|(_, l)| l.clone())
                .collect::<Vec<_>>()
                .join(";"),
            bv.denom.to_string(),
        ];
        row.extend(bv.vector.0.iter().map(fmt_rat));
        w.write_record(&row).map_err(|e| Error::Domain(e.to_string()))?;
    }
    w.flush().map_err(io)
}
