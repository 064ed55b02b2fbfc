use std::io::{Read, Write as _};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use serde_json::{json, Value};

use semspace_core::bench::{check_properties, csv_string, run_bench, write_csv, BenchConfig};
use semspace_core::ontology::{build_concept_index, ConceptIndex, FormatRegistry};
use semspace_core::space::{MetaModel, Space, SpaceConfig};
use semspace_core::ConceptId;
use semspace_server::{serve, OntologyPreload, ServiceConfig};

use crate::{CliError, Command, OntologyArgs, ServerArg};

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Serve {
            listen,
            max_lease_ms,
            max_payload_bytes,
            reaper_interval_ms,
            ontology,
            format,
            model,
        } => cmd_serve(
            listen,
            max_lease_ms,
            max_payload_bytes,
            reaper_interval_ms,
            ontology,
            format,
            model,
        ),
        Command::Sdice {
            ontology,
            c1,
            c2,
            json,
        } => cmd_sdice(&ontology, &c1, &c2, json),
        Command::Paths {
            ontology,
            concept,
            json,
        } => cmd_paths(&ontology, &concept, json),
        Command::Write {
            server,
            model,
            concept,
            lease_ms,
            payload,
            json,
        } => cmd_write(
            &server,
            &model,
            &concept,
            lease_ms,
            payload.as_deref(),
            json,
        ),
        Command::Read {
            server,
            model,
            concept,
            floor,
            json,
        } => {
            let body =
                json!({"model": parse_model(&model)?.as_str(), "concept": concept, "floor": floor});
            let response = post(&server, "/v1/read", &body)?;
            print_results(&response, json)
        }
        Command::Take {
            server,
            model,
            concept,
            json,
        } => {
            let body = json!({"model": parse_model(&model)?.as_str(), "concept": concept});
            let response = post(&server, "/v1/take", &body)?;
            print_results(&response, json)
        }
        Command::ReadById {
            server,
            identifier,
            json,
        } => {
            let response = post(
                &server,
                "/v1/read_by_id",
                &json!({"identifier": identifier}),
            )?;
            print_results(&response, json)
        }
        Command::Bench {
            op,
            sizes,
            threads,
            floors,
            reps,
            warmup,
            seed,
            entries,
            out,
            ontology,
            format,
            model,
            json,
        } => cmd_bench(
            &op,
            sizes,
            threads,
            floors,
            reps,
            warmup,
            seed,
            entries,
            out.as_deref(),
            ontology.as_deref(),
            &format,
            &model,
            json,
        ),
    }
}

/// Six decimals, ties rounded to even.
pub fn format_degree(value: f64) -> String {
    format!("{:.6}", (value * 1e6).round_ties_even() / 1e6)
}

fn parse_model(raw: &str) -> Result<MetaModel, CliError> {
    raw.parse().map_err(CliError::User)
}

fn parse_concept(raw: &str) -> Result<ConceptId, CliError> {
    ConceptId::new(raw).map_err(|e| CliError::User(e.to_string()))
}

fn load_index(args: &OntologyArgs) -> Result<ConceptIndex, CliError> {
    let text = std::fs::read_to_string(&args.ontology)
        .map_err(|e| CliError::User(format!("cannot read {}: {e}", args.ontology.display())))?;
    build_index_from(&args.format, &text)
}

fn build_index_from(format: &str, text: &str) -> Result<ConceptIndex, CliError> {
    let registry = FormatRegistry::builtin();
    let pairs = registry
        .parse(format, text)
        .map_err(|e| CliError::User(e.to_string()))?;
    build_concept_index(pairs, &[]).map_err(|e| CliError::User(e.to_string()))
}

fn cmd_sdice(args: &OntologyArgs, c1: &str, c2: &str, as_json: bool) -> Result<(), CliError> {
    let index = load_index(args)?;
    let degree = semspace_core::s_dice(&index, &parse_concept(c1)?, &parse_concept(c2)?)
        .map_err(|e| CliError::User(e.to_string()))?;
    if as_json {
        println!("{}", json!({"c1": c1, "c2": c2, "degree": degree.value()}));
    } else {
        println!("{}", format_degree(degree.value()));
    }
    Ok(())
}

fn cmd_paths(args: &OntologyArgs, concept: &str, as_json: bool) -> Result<(), CliError> {
    let index = load_index(args)?;
    let paths = index
        .paths_of(&parse_concept(concept)?)
        .map_err(|e| CliError::User(e.to_string()))?;
    if as_json {
        let rendered: Vec<Vec<&str>> = paths
            .paths()
            .iter()
            .map(|p| p.nodes().iter().map(ConceptId::as_str).collect())
            .collect();
        println!("{}", json!({"concept": concept, "paths": rendered}));
    } else {
        for path in paths.paths() {
            println!("{path}");
        }
    }
    Ok(())
}

fn cmd_serve(
    listen: String,
    max_lease_ms: u64,
    max_payload_bytes: usize,
    reaper_interval_ms: u64,
    ontologies: Vec<PathBuf>,
    formats: Vec<String>,
    models: Vec<String>,
) -> Result<(), CliError> {
    let listen: SocketAddr = listen
        .parse()
        .map_err(|e| CliError::User(format!("invalid --listen address {listen:?}: {e}")))?;
    if formats.len() != ontologies.len() || models.len() != ontologies.len() {
        return Err(CliError::User(format!(
            "--ontology, --format and --model must be given equally often (got {}, {}, {})",
            ontologies.len(),
            formats.len(),
            models.len()
        )));
    }
    let mut preload = Vec::new();
    for ((path, format), model) in ontologies.into_iter().zip(formats).zip(models) {
        preload.push(OntologyPreload {
            path,
            format,
            model: parse_model(&model)?,
        });
    }
    let config = ServiceConfig {
        listen,
        max_lease_ms,
        max_payload_bytes,
        reaper_interval_ms,
        preload,
    };
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| CliError::internal(e.to_string()))?;
    runtime
        .block_on(serve(config, |addr| {
            println!("listening on {addr}");
            let _ = std::io::stdout().flush();
        }))
        .map_err(|e| match e {
            semspace_server::ServeError::BindFailure { .. }
            | semspace_server::ServeError::PreloadFailure { .. }
            | semspace_server::ServeError::InvalidConfig(_) => CliError::User(e.to_string()),
            other => CliError::internal(other.to_string()),
        })
}

fn cmd_write(
    server: &ServerArg,
    model: &str,
    concept: &str,
    lease_ms: u64,
    payload_path: Option<&Path>,
    as_json: bool,
) -> Result<(), CliError> {
    let payload = match payload_path {
        Some(path) => std::fs::read(path)
            .map_err(|e| CliError::User(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buffer = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buffer)
                .map_err(|e| CliError::User(format!("cannot read stdin: {e}")))?;
            buffer
        }
    };
    let body = json!({
        "model": parse_model(model)?.as_str(),
        "concept": concept,
        "payload_b64": BASE64.encode(&payload),
        "lease_ms": lease_ms,
    });
    let response = post(server, "/v1/write", &body)?;
    if as_json {
        println!("{response}");
    } else {
        println!(
            "id={} granted_lease_ms={} expires_at_ms={}",
            response["id"], response["granted_lease_ms"], response["expires_at_ms"]
        );
    }
    Ok(())
}

fn print_results(response: &Value, as_json: bool) -> Result<(), CliError> {
    if as_json {
        println!("{response}");
        return Ok(());
    }
    let results = response["results"]
        .as_array()
        .ok_or_else(|| CliError::internal(format!("unexpected response shape: {response}")))?;
    println!("results: {}", results.len());
    for item in results {
        let payload_len = item["payload_b64"]
            .as_str()
            .and_then(|b64| BASE64.decode(b64).ok())
            .map(|bytes| bytes.len())
            .unwrap_or(0);
        println!(
            "id={} degree={} concept={} identifier={} payload_bytes={}",
            item["id"],
            format_degree(item["degree"].as_f64().unwrap_or(0.0)),
            item["concept"].as_str().unwrap_or("?"),
            item["identifier"].as_str().unwrap_or("?"),
            payload_len
        );
    }
    Ok(())
}

fn post(server: &ServerArg, path: &str, body: &Value) -> Result<Value, CliError> {
    let url = format!("{}{}", server.server.trim_end_matches('/'), path);
    let response = reqwest::blocking::Client::new()
        .post(&url)
        .json(body)
        .send()
        .map_err(|e| CliError::User(format!("cannot reach {url}: {e}")))?;
    let status = response.status();
    let body: Value = response
        .json()
        .map_err(|e| CliError::internal(format!("invalid response from {url}: {e}")))?;
    if status.is_success() {
        Ok(body)
    } else {
        let message = format!(
            "{}: {}",
            body["code"].as_str().unwrap_or("ERROR"),
            body["message"].as_str().unwrap_or("no message")
        );
        if status.is_client_error() {
            Err(CliError::User(message))
        } else {
            Err(CliError::Internal(message))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    op: &str,
    sizes: Vec<usize>,
    threads: Vec<usize>,
    floors: Vec<f64>,
    reps: usize,
    warmup: usize,
    seed: u64,
    entries: usize,
    out: Option<&Path>,
    ontology: Option<&Path>,
    format: &str,
    model: &str,
    as_json: bool,
) -> Result<(), CliError> {
    let model = parse_model(model)?;
    let text = match ontology {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::User(format!("cannot read {}: {e}", path.display())))?,
        None => semspace_core::sample::SWING_TAXONOMY_PAIRS.to_string(),
    };
    let index = build_index_from(format, &text)?;
    let space = Arc::new(Space::new(SpaceConfig::default()));
    space.load_model(model, index);

    let cfg = BenchConfig {
        op: op.parse().map_err(CliError::User)?,
        sizes,
        threads,
        floors,
        reps,
        warmup,
        seed,
        entries,
        model,
    };
    let report = run_bench(&cfg, &space).map_err(|e| match e {
        semspace_core::bench::BenchError::InvalidConfig(msg) => CliError::User(msg),
        other => CliError::internal(other.to_string()),
    })?;
    let verdicts = check_properties(&report, &space, model);

    if let Some(path) = out {
        write_csv(&report, path)
            .map_err(|e| CliError::User(format!("cannot write {}: {e}", path.display())))?;
    }
    if as_json {
        let rows: Vec<Value> = report
            .rows
            .iter()
            .map(|r| {
                json!({
                    "op": r.op.as_str(),
                    "size_bytes": r.size_bytes,
                    "threads": r.threads,
                    "floor": r.floor,
                    "count": r.count,
                    "mean_ms": r.mean_ms,
                    "p50_ms": r.p50_ms,
                    "p95_ms": r.p95_ms,
                })
            })
            .collect();
        let verdicts_json: Vec<Value> = verdicts
            .iter()
            .map(|v| json!({"name": v.name, "pass": v.pass, "detail": v.detail}))
            .collect();
        println!(
            "{}",
            json!({
                "environment": report.environment,
                "rows": rows,
                "verdicts": verdicts_json,
            })
        );
    } else {
        if out.is_none() {
            print!("{}", csv_string(&report));
        }
        eprintln!("environment: {}", report.environment);
        for verdict in &verdicts {
            eprintln!("{verdict}");
        }
    }
    Ok(())
}
