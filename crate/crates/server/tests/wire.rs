//! Wire protocol tests: endpoint contract, error mapping, concurrency.

mod common;

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use serde_json::{json, Value};

use common::{client, TestServer};
use semspace_core::sample::{swing_uri, SWING_TAXONOMY_PAIRS};
use semspace_server::ServiceConfig;

fn load_swing(server: &TestServer) -> Value {
    client()
        .post(server.url("/v1/ontology"))
        .json(&json!({
            "model": "RDFS",
            "format": "pairs",
            "data": SWING_TAXONOMY_PAIRS,
        }))
        .send()
        .unwrap()
        .json()
        .unwrap()
}

fn write_entry(
    server: &TestServer,
    concept: &str,
    payload: &[u8],
    lease_ms: i64,
) -> reqwest::blocking::Response {
    client()
        .post(server.url("/v1/write"))
        .json(&json!({
            "model": "RDFS",
            "concept": swing_uri(concept),
            "payload_b64": BASE64.encode(payload),
            "lease_ms": lease_ms,
        }))
        .send()
        .unwrap()
}

#[test]
fn health_is_ok() {
    let server = TestServer::start(ServiceConfig::default());
    let response = client().get(server.url("/v1/health")).send().unwrap();
    assert_eq!(response.status(), 200);
    assert_eq!(response.json::<Value>().unwrap(), json!({"status": "ok"}));
}

#[test]
fn ontology_load_reports_concept_count() {
    let server = TestServer::start(ServiceConfig::default());
    assert_eq!(load_swing(&server), json!({"concepts": 21}));
}

#[test]
fn write_read_take_cycle() {
    let server = TestServer::start(ServiceConfig::default());
    load_swing(&server);
    let payload = b"wetland sensor reading";
    let write: Value = write_entry(&server, "Frog", payload, 60_000)
        .json()
        .unwrap();
    assert!(write["id"].is_u64());
    assert_eq!(write["granted_lease_ms"], json!(60_000));
    assert!(write["expires_at_ms"].is_u64());

    let read: Value = client()
        .post(server.url("/v1/read"))
        .json(&json!({"model": "RDFS", "concept": swing_uri("Frog"), "floor": 1.0}))
        .send()
        .unwrap()
        .json()
        .unwrap();
    let results = read["results"].as_array().unwrap();
    assert_eq!(results.len(), 1);
    assert_eq!(
        BASE64
            .decode(results[0]["payload_b64"].as_str().unwrap())
            .unwrap(),
        payload
    );
    assert_eq!(results[0]["degree"], json!(1.0));

    let take: Value = client()
        .post(server.url("/v1/take"))
        .json(&json!({"model": "RDFS", "concept": swing_uri("Frog")}))
        .send()
        .unwrap()
        .json()
        .unwrap();
    assert_eq!(take["results"].as_array().unwrap().len(), 1);

    let after: Value = client()
        .post(server.url("/v1/read"))
        .json(&json!({"model": "RDFS", "concept": swing_uri("Frog"), "floor": 1.0}))
        .send()
        .unwrap()
        .json()
        .unwrap();
    assert!(after["results"].as_array().unwrap().is_empty());
}

#[test]
fn read_by_id_round_trip() {
    let server = TestServer::start(ServiceConfig::default());
    load_swing(&server);
    let write: Value = write_entry(&server, "Snake", b"s", 60_000).json().unwrap();
    let id = write["id"].as_u64().unwrap();
    let found: Value = client()
        .post(server.url("/v1/read_by_id"))
        .json(&json!({"identifier": format!("ent-{id}")}))
        .send()
        .unwrap()
        .json()
        .unwrap();
    assert_eq!(found["results"].as_array().unwrap().len(), 1);
    let missing: Value = client()
        .post(server.url("/v1/read_by_id"))
        .json(&json!({"identifier": "ent-424242"}))
        .send()
        .unwrap()
        .json()
        .unwrap();
    assert!(missing["results"].as_array().unwrap().is_empty());
}

#[test]
fn sdice_endpoint_returns_degree() {
    let server = TestServer::start(ServiceConfig::default());
    load_swing(&server);
    let response: Value = client()
        .get(server.url("/v1/sdice"))
        .query(&[
            ("model", "RDFS"),
            ("c1", &swing_uri("Frog")),
            ("c2", &swing_uri("Animal")),
        ])
        .send()
        .unwrap()
        .json()
        .unwrap();
    let degree = response["degree"].as_f64().unwrap();
    assert!((degree - 4.0 / 7.0).abs() < 1e-12);
}

#[test]
fn error_mapping_matches_contract() {
    // Small body limit; the loaded taxonomy has to stay under it too.
    let server = TestServer::start(ServiceConfig {
        max_payload_bytes: 1024,
        ..ServiceConfig::default()
    });
    let write_frog = |payload_b64: String, lease_ms: i64| {
        client()
            .post(server.url("/v1/write"))
            .json(&json!({
                "model": "RDFS",
                "concept": "Frog",
                "payload_b64": payload_b64,
                "lease_ms": lease_ms,
            }))
            .send()
            .unwrap()
    };

    // writing before any ontology is loaded
    let response = write_frog(BASE64.encode(b"x"), 1000);
    assert_eq!(response.status(), 409);
    assert_eq!(
        response.json::<Value>().unwrap()["code"],
        "MODEL_NOT_LOADED"
    );

    let response = client()
        .post(server.url("/v1/ontology"))
        .json(&json!({"model": "RDFS", "format": "pairs", "data": "Frog Amphibian"}))
        .send()
        .unwrap();
    assert_eq!(response.status(), 200);

    // floor out of range
    let response = client()
        .post(server.url("/v1/read"))
        .json(&json!({"model": "RDFS", "concept": "Frog", "floor": 1.5}))
        .send()
        .unwrap();
    assert_eq!(response.status(), 400);
    assert_eq!(
        response.json::<Value>().unwrap()["code"],
        "FLOOR_OUT_OF_RANGE"
    );

    // unknown concept
    let response = client()
        .post(server.url("/v1/write"))
        .json(&json!({
            "model": "RDFS",
            "concept": "a:Nope",
            "payload_b64": "", "lease_ms": 1000,
        }))
        .send()
        .unwrap();
    assert_eq!(response.status(), 404);
    assert_eq!(response.json::<Value>().unwrap()["code"], "UNKNOWN_CONCEPT");

    // non-positive lease
    let response = write_frog(BASE64.encode(b"x"), -5);
    assert_eq!(response.status(), 400);
    assert_eq!(response.json::<Value>().unwrap()["code"], "INVALID_LEASE");

    // a payload fitting the bound goes through; an oversized one is a 413
    let response = write_frog(BASE64.encode([0u8; 600]), 1000);
    assert_eq!(response.status(), 200);
    let response = write_frog(BASE64.encode(vec![0u8; 2048]), 1000);
    assert_eq!(response.status(), 413);
    assert_eq!(
        response.json::<Value>().unwrap()["code"],
        "PAYLOAD_TOO_LARGE"
    );

    // raw body over the limit
    let response = client()
        .post(server.url("/v1/write"))
        .header("content-type", "application/json")
        .body("x".repeat(4096))
        .send()
        .unwrap();
    assert_eq!(response.status(), 413);
    assert_eq!(
        response.json::<Value>().unwrap()["code"],
        "PAYLOAD_TOO_LARGE"
    );
}

#[test]
fn malformed_bodies_always_yield_malformed_request() {
    let server = TestServer::start(ServiceConfig::default());
    load_swing(&server);
    let junk_bodies = [
        "",
        "{",
        "[1,2",
        "null",
        "true",
        "\"string\"",
        "{\"model\":\"NOPE\",\"concept\":\"x\",\"floor\":0.5}",
        "{\"model\":\"RDFS\"}",
        "{\"model\":\"RDFS\",\"concept\":\"a b c\",\"floor\":0.5}",
        "{\"floor\": \"high\"}",
        "\u{0}\u{1}binary-ish",
        "{\"model\":123,\"concept\":[],\"floor\":{}}",
    ];
    for path in [
        "/v1/ontology",
        "/v1/write",
        "/v1/read",
        "/v1/read_by_id",
        "/v1/take",
    ] {
        for body in junk_bodies {
            let response = client()
                .post(server.url(path))
                .header("content-type", "application/json")
                .body(body.to_string())
                .send()
                .unwrap_or_else(|e| panic!("connection dropped for {path} with {body:?}: {e}"));
            let status = response.status().as_u16();
            assert!(
                (400..500).contains(&status),
                "{path} with {body:?} gave status {status}"
            );
            let parsed: Value = response.json().unwrap();
            assert_eq!(
                parsed["code"], "MALFORMED_REQUEST",
                "{path} with {body:?} gave {parsed}"
            );
        }
    }
    // unknown endpoint and wrong method also answer with the error shape
    let response = client().get(server.url("/v1/nope")).send().unwrap();
    assert_eq!(response.status(), 400);
    assert_eq!(
        response.json::<Value>().unwrap()["code"],
        "MALFORMED_REQUEST"
    );
}

#[test]
fn bad_ontology_documents_are_client_faults() {
    let server = TestServer::start(ServiceConfig::default());
    for (format, data) in [
        ("pairs", "A"),          // token count
        ("pairs", "A B\nB A"),   // cycle
        ("pairs", "Aa X\nBB X"), // hash collision
        ("turtle", "A B"),       // unknown format
    ] {
        let response = client()
            .post(server.url("/v1/ontology"))
            .json(&json!({"model": "RDFS", "format": format, "data": data}))
            .send()
            .unwrap();
        assert_eq!(response.status(), 400, "{format}/{data}");
        assert_eq!(
            response.json::<Value>().unwrap()["code"],
            "MALFORMED_REQUEST"
        );
    }
}

#[test]
fn parallel_writes_both_land() {
    let server = TestServer::start(ServiceConfig::default());
    load_swing(&server);
    std::thread::scope(|scope| {
        for _ in 0..2 {
            scope.spawn(|| {
                let response = write_entry(&server, "Frog", b"parallel", 60_000);
                assert_eq!(response.status(), 200);
            });
        }
    });
    let stats: Value = client()
        .get(server.url("/v1/stats"))
        .send()
        .unwrap()
        .json()
        .unwrap();
    assert_eq!(stats["live_entries"], json!(2));
    assert_eq!(stats["total_writes"], json!(2));
    assert_eq!(stats["entries_per_model"]["RDFS"], json!(2));
    assert_eq!(stats["entries_per_model"]["WSML"], json!(0));
}

#[test]
fn lease_expiry_over_the_wire() {
    let server = TestServer::start(ServiceConfig {
        reaper_interval_ms: 50,
        ..ServiceConfig::default()
    });
    load_swing(&server);
    let write: Value = write_entry(&server, "Frog", b"brief", 50).json().unwrap();
    assert_eq!(write["granted_lease_ms"], json!(50));
    std::thread::sleep(std::time::Duration::from_millis(200));
    let read: Value = client()
        .post(server.url("/v1/read"))
        .json(&json!({"model": "RDFS", "concept": swing_uri("Frog"), "floor": 0.0}))
        .send()
        .unwrap()
        .json()
        .unwrap();
    assert!(read["results"].as_array().unwrap().is_empty());
    let stats: Value = client()
        .get(server.url("/v1/stats"))
        .send()
        .unwrap()
        .json()
        .unwrap();
    assert_eq!(stats["live_entries"], json!(0));
    assert_eq!(stats["expired_total"], json!(1));
}
