use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{json, Value};

use cirigid::{Error, Result};

use crate::commands::{budget, regularity_report, Outcome, RegularityRequest};
use crate::{input, report, Cli, Condition};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    pair: PathBuf,
    point: String,
    #[serde(default)]
    condition: Option<String>,
    #[serde(default)]
    conditions: Vec<String>,
    #[serde(default)]
    samples: Option<usize>,
    #[serde(default)]
    seed: Option<u64>,
}

fn condition(s: Option<&str>) -> Result<Condition> {
    Ok(match s.unwrap_or("auto") {
        "auto" => Condition::Auto,
        "r1" => Condition::R1,
        "r2" => Condition::R2,
        "r22" => Condition::R22,
        other => return Err(Error::InvalidArgument(format!("unknown condition {other:?}"))),
    })
}

/// One report per requested condition; `condition` and `conditions` merge,
/// and an entry naming neither gets the automatic choice.
fn run_entry(cli: &Cli, dir: &Path, raw: &Value) -> Result<Vec<Value>> {
    let e: Entry = serde_json::from_value(raw.clone()).map_err(|e| Error::InvalidArgument(format!("bad manifest entry: {e}")))?;
    let pair = dir.join(&e.pair);
    let mut names: Vec<&str> = e.condition.iter().chain(&e.conditions).map(String::as_str).collect();
    if names.is_empty() {
        names.push("auto");
    }
    let conditions = names.into_iter().map(|c| condition(Some(c))).collect::<Result<Vec<_>>>()?;
    conditions
        .into_iter()
        .map(|c| {
            let req = RegularityRequest {
                point: &e.point,
                samples: e.samples.unwrap_or(20),
                seed: e.seed.unwrap_or(cli.seed),
                condition: c,
                subspace: None,
                budget: budget(cli),
            };
            let (r, _) = regularity_report(cli.prime, &pair, &req)?;
            Ok(serde_json::to_value(r).expect("serializable"))
        })
        .collect()
}

pub fn run(cli: &Cli, manifest: &Path, out: &Path) -> Result<Outcome> {
    let src = input::read(manifest)?;
    let entries: Vec<Value> = serde_json::from_str(&src).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    let dir = manifest.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(out).map_err(|e| Error::InvalidArgument(format!("cannot create {}: {e}", out.display())))?;

    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(entries.len().max(1));
    let mut results: Vec<Option<Result<Vec<Value>>>> = (0..entries.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        let chunks = results.chunks_mut(entries.len().div_ceil(threads).max(1));
        let mut start = 0;
        for chunk in chunks {
            let base = start;
            start += chunk.len();
            let entries = &entries;
            s.spawn(move || {
                for (off, slot) in chunk.iter_mut().enumerate() {
                    *slot = Some(run_entry(cli, dir, &entries[base + off]));
                }
            });
        }
    });

    let (mut pass, mut fail, mut vacuous) = (0, 0, 0);
    let mut errors = Vec::new();
    let mut files = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        let name = format!("entry-{i:03}.json");
        let doc = match r.expect("every slot filled") {
            Ok(reports) => {
                for v in &reports {
                    match v["verdict"].as_str() {
                        Some("fail") => fail += 1,
                        Some("vacuous") => vacuous += 1,
                        _ => pass += 1,
                    }
                }
                json!({ "index": i, "entry": entries[i], "reports": reports })
            }
            Err(e) => {
                errors.push(json!({ "index": i, "message": e.to_string() }));
                json!({ "index": i, "entry": entries[i], "error": report::error_document("check-regularity", &[], &e)["error"] })
            }
        };
        let path = out.join(&name);
        fs::write(&path, serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
        files.push(name);
    }
    let summary = format!("{} entries: {pass} pass, {fail} fail, {vacuous} vacuous, {} errors", entries.len(), errors.len());
    let result = json!({
        "entries": entries.len(),
        "pass": pass,
        "fail": fail,
        "vacuous": vacuous,
        "errors": errors,
        "reports": files,
    });
    let mut o = Outcome { inputs: json!({ "manifest": manifest, "out": out }), result, warnings: Vec::new(), seed: Some(cli.seed), summary };
    if !o.result["errors"].as_array().is_some_and(|e| e.is_empty()) {
        o.warnings.push("some entries could not be checked; see errors".into());
    }
    Ok(o)
}
