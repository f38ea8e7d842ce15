use std::path::Path;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use webtrace_core::algebra::{format_rational, rational_to_f64, Rational};
use webtrace_core::annulus::{
    crossing_exponent, crossing_exponent_oracle, crossing_table, det_kz, det_uv, exact_mean,
    mean_crossings, pgf,
};
use webtrace_core::connection::{identity_connection, random_sl, Connection};
use webtrace_core::io::{parse_connection, parse_graph_document, parse_multiweb, GraphDocument};
use webtrace_core::kasteleyn::verify_main;
use webtrace_core::multiweb::{enumerate_multiwebs, Multiweb, MultiwebSampler};
use webtrace_core::skein::{pants_z1, reduce_annulus, ReductionResult};
use webtrace_core::Error;

use crate::report::{decimal, RunReport};
use crate::What;

pub enum CliError {
    Core(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                Error::Input { .. }
                | Error::Graph(_)
                | Error::Multiweb(_)
                | Error::Connection(_)
                | Error::Matrix(_) => 2,
                Error::Unsupported(_) => 4,
                Error::Skein(_) => 1,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<GraphDocument> {
    let text = read(path)?;
    parse_graph_document(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn exact(r: &Rational) -> Value {
    json!(format_rational(r))
}

fn connection_for(
    doc: &GraphDocument,
    n: usize,
    source: Option<&str>,
) -> Result<(Connection, String)> {
    let g = &doc.graph;
    let bad = |s: &str| {
        CliError::Core(Error::Input {
            line: None,
            msg: format!("unknown connection source {s:?}; use identity, random:SEED or file:PATH"),
        })
    };
    match source {
        None => match &doc.connection {
            Some(c) if c.rank() == n => Ok((c.clone(), "document".into())),
            _ => Ok((identity_connection(g, n), "identity".into())),
        },
        Some("identity") => Ok((identity_connection(g, n), "identity".into())),
        Some(s) => {
            if let Some(seed) = s.strip_prefix("random:") {
                let seed: u64 = seed.parse().map_err(|_| bad(s))?;
                Ok((random_sl(g, n, seed), s.to_string()))
            } else if let Some(path) = s.strip_prefix("file:") {
                let text = read(Path::new(path))?;
                Ok((parse_connection(&text, n, g.num_edges())?, s.to_string()))
            } else {
                Err(bad(s))
            }
        }
    }
}

pub fn verify(graph: &Path, n: Option<usize>, source: Option<&str>) -> Result<RunReport> {
    let doc = load(graph)?;
    let n = n.unwrap_or(doc.n);
    let (c, used) = connection_for(&doc, n, source)?;
    c.check_graph(&doc.graph)?;
    let r = verify_main(&doc.graph, &c)?;
    let mut report = RunReport::new(
        "verify",
        json!({"graph": graph.display().to_string(), "n": n, "connection": used}),
        json!({
            "det": exact(&r.det),
            "det_decimal": decimal(rational_to_f64(&r.det)),
            "trace_sum": exact(&r.trace_sum),
            "sign": r.sign,
            "multiwebs": r.multiwebs,
        }),
    );
    report.matches = Some(r.matches);
    Ok(report)
}

pub fn annulus(m: usize, height: usize, what: What, max: u32) -> Result<RunReport> {
    if what != What::Exponents && (m.is_multiple_of(2) || height == 0) {
        return Err(CliError::Io(format!(
            "--m must be odd and --height positive, got m={m} height={height}"
        )));
    }
    let inputs = json!({"m": m, "height": height});
    let (name, outputs) = match what {
        What::Detz => {
            let d = det_kz(m, height)?;
            let terms: Vec<Value> = d
                .terms()
                .map(|(e, c)| json!({"power": e, "coefficient": exact(c)}))
                .collect();
            ("annulus detz", json!({ "terms": terms }))
        }
        What::Uv => {
            let d = det_uv(m, height)?;
            let mut terms: Vec<(u32, u32, Rational)> = d
                .terms()
                .map(|(mono, c)| (mono.exponent(0), mono.exponent(1), c.clone()))
                .collect();
            terms.sort_by_key(|t| (t.0 + t.1, t.0));
            let rows: Vec<Value> = terms
                .iter()
                .map(|(j, k, c)| json!({"u": j, "v": k, "coefficient": exact(c)}))
                .collect();
            ("annulus uv", json!({ "terms": rows }))
        }
        What::Pgf => {
            let p = pgf(m, height)?;
            let table = crossing_table(&p);
            let total: Rational = table.iter().map(|t| t.2.clone()).sum();
            let rows: Vec<Value> = table
                .iter()
                .map(|(j, k, c)| {
                    json!({"j": j, "k": k, "probability": exact(c), "decimal": decimal(rational_to_f64(c))})
                })
                .collect();
            (
                "annulus pgf",
                json!({ "rows": rows, "total": exact(&total) }),
            )
        }
        What::Means => {
            let mean = exact_mean(m, height)?;
            let mut out = json!({
                "mean": exact(&mean),
                "mean_decimal": decimal(rational_to_f64(&mean)),
            });
            if height.is_multiple_of(2) {
                out["finite_sum"] = json!(decimal(mean_crossings(m, height)?));
            }
            ("annulus means", out)
        }
        What::Exponents => {
            let rows: Vec<(u32, u32)> = (0..=max)
                .flat_map(|j| (0..=max).map(move |k| (j, k)))
                .collect();
            let results: Vec<Value> = rows
                .par_iter()
                .map(|&(j, k)| {
                    let f = crossing_exponent(j as u64, k as u64);
                    let o = crossing_exponent_oracle(j as usize, k as usize);
                    json!({"j": j, "k": k, "formula": f, "oracle": o, "status": if f == o { "ok" } else { "mismatch" }})
                })
                .collect();
            let all = results.iter().all(|r| r["status"] == "ok");
            let mut report = RunReport::new(
                "annulus exponents",
                json!({ "max": max }),
                json!({ "rows": results }),
            );
            report.matches = Some(all);
            return Ok(report);
        }
    };
    Ok(RunReport::new(name, inputs, outputs))
}

fn reduction_rows(r: &ReductionResult) -> Vec<Value> {
    r.classes
        .iter()
        .map(|(&(j, k), c)| json!({"j": j, "k": k, "coefficient": c.to_string()}))
        .collect()
}

pub fn skein(graph: &Path, multiweb: Option<&Path>) -> Result<RunReport> {
    let doc = load(graph)?;
    let g = &doc.graph;
    let (result, count) = match multiweb {
        Some(p) => {
            let text = read(p)?;
            let m = parse_multiweb(g, &text)
                .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            (reduce_annulus(g, &m)?, 1)
        }
        None => {
            let webs: Vec<Multiweb> = enumerate_multiwebs(g, 3).collect();
            let parts = webs
                .par_iter()
                .map(|m| reduce_annulus(g, m))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let mut total = ReductionResult::default();
            for p in &parts {
                total.merge(p);
            }
            (total, webs.len())
        }
    };
    let three = Rational::from_integer(BigInt::from(3));
    let identity = result.evaluate(&three, &three);
    Ok(RunReport::new(
        "skein",
        json!({
            "graph": graph.display().to_string(),
            "multiweb": multiweb.map(|p| p.display().to_string()),
        }),
        json!({
            "classes": reduction_rows(&result),
            "identity_trace_total": exact(&identity),
            "multiwebs": count,
        }),
    ))
}

pub fn pants(graph: &Path) -> Result<RunReport> {
    let doc = load(graph)?;
    let r = pants_z1(&doc.graph)?;
    let check = &r.z0 + BigInt::from(6) * &r.z1;
    Ok(RunReport::new(
        "pants",
        json!({"graph": graph.display().to_string()}),
        json!({
            "Z0": r.z0.to_string(),
            "Z1": r.z1.to_string(),
            "check": check.to_string(),
            "variant": [r.variant.0, r.variant.1],
            "coefficients": r.coefficients,
        }),
    ))
}

/// Above this many multiwebs only the summary is printed.
const MAX_ROWS: usize = 64;

pub fn sample(graph: &Path, n: Option<usize>, count: usize, seed: u64) -> Result<RunReport> {
    let doc = load(graph)?;
    let g = &doc.graph;
    let n = n.unwrap_or(doc.n);
    let sampler = MultiwebSampler::new(g, n)?;
    let webs: Vec<(&Multiweb, _)> = sampler.support().collect();
    let index: std::collections::HashMap<&Multiweb, usize> =
        webs.iter().enumerate().map(|(i, (m, _))| (*m, i)).collect();
    let mut hits = vec![0usize; webs.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        hits[index[sampler.sample(&mut rng)]] += 1;
    }
    let total = sampler.total();
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for ((m, w), &h) in webs.iter().zip(&hits) {
        let p = Rational::new(BigInt::from((*w).clone()), BigInt::from(total.clone()));
        let pf = rational_to_f64(&p);
        let sd = (count as f64 * pf * (1.0 - pf)).sqrt();
        let z = if sd > 0.0 {
            (h as f64 - count as f64 * pf) / sd
        } else {
            0.0
        };
        worst = worst.max(z.abs());
        rows.push(json!({
            "multiplicities": m.multiplicities().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""),
            "weight": w.to_string(),
            "probability": exact(&p),
            "observed": h,
            "frequency": decimal(h as f64 / count.max(1) as f64),
            "z": format!("{z:.3}"),
        }));
    }
    let mut outputs = json!({
        "partition_function": total.to_string(),
        "multiwebs": webs.len(),
        "max_abs_z": format!("{worst:.3}"),
    });
    if webs.len() <= MAX_ROWS {
        outputs["rows"] = Value::Array(rows);
    }
    Ok(RunReport::new(
        "sample",
        json!({"graph": graph.display().to_string(), "n": n, "count": count, "seed": seed}),
        outputs,
    ))
}

pub fn faces(graph: &Path) -> Result<RunReport> {
    let doc = load(graph)?;
    let g = &doc.graph;
    let rows: Vec<Value> = g
        .faces()
        .iter()
        .enumerate()
        .map(|(f, face)| {
            json!({
                "face": f,
                "length": face.len(),
                "edges": face.edges().map(|e| e.to_string()).collect::<Vec<_>>().join(","),
                "punctured": g.is_punctured(f),
            })
        })
        .collect();
    let euler = g.num_vertices() as i64 - g.num_edges() as i64 + g.faces().len() as i64;
    Ok(RunReport::new(
        "faces",
        json!({"graph": graph.display().to_string()}),
        json!({
            "vertices": g.num_vertices(),
            "edges": g.num_edges(),
            "euler_characteristic": euler,
            "surface": format!("{:?}", g.surface().kind).to_lowercase(),
            "perfect_matchings": g.count_matchings(),
            "faces": rows,
        }),
    ))
}
