//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tapphrase::sim::stats::{one_sample_t, SummaryStats};
use tapphrase::sim::{estimate_far, estimate_frr, gen_random_phrase, JitterModel, PhraseGenModel};
use tapphrase::{
    crude_match, hamming_distance, normalize, offline_scan, AuthSession, BinarySignal,
    MatcherParams, TapPhrase, Template,
};
use tapphrase_acceptance::{random_stream, random_template, unit};
use tapphrase_service::{router, AppState, TemplateStore};
use tower::ServiceExt;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn FnOnce() -> Outcome>);

fn check(failures: &mut Vec<String>, what: impl FnOnce() -> String, ok: bool) {
    if !ok && failures.len() < 5 {
        failures.push(what());
    }
}

fn verdict(summary: String, failures: Vec<String>) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!(
            "{summary}; first failures: {}",
            failures.join(" | ")
        ))
    }
}

fn phrase_with_taps(taps: usize, span: f64, weights: impl Fn(usize) -> f64) -> TapPhrase {
    let raw: Vec<f64> = (0..2 * taps - 1).map(&weights).collect();
    let total: f64 = raw.iter().sum();
    TapPhrase::new(raw.iter().map(|w| w * span / total).collect()).unwrap()
}

fn crude_rule() -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for span in [300.0, 500.0, 1000.0] {
        for taps in 1..=5 {
            let template = Template::new(
                "crude",
                phrase_with_taps(taps, span, |_| 1.0),
                MatcherParams::default(),
            );
            for candidate_taps in 1..=5 {
                for (factor, expect_in_span) in [
                    (0.80, true),
                    (1.20, true),
                    (1.0, true),
                    (0.799, false),
                    (1.201, false),
                ] {
                    let target = factor * span;
                    let candidate =
                        phrase_with_taps(candidate_taps, target, |k| 1.0 + (k % 3) as f64);
                    let expected = expect_in_span && candidate_taps == taps;
                    let got = crude_match(&template, &candidate).accepted;
                    cases += 1;
                    check(
                        &mut failures,
                        || format!("T={span} n={taps} m={candidate_taps} x{factor}: got {got}"),
                        got == expected,
                    );
                }
            }
        }
    }
    let elapsed = started.elapsed();
    check(
        &mut failures,
        || format!("runtime {elapsed:?}"),
        elapsed < Duration::from_secs(1),
    );
    verdict(format!("{cases} cases in {elapsed:.2?}"), failures)
}

fn statistics() -> Outcome {
    let stats = SummaryStats {
        n: 16,
        mean: 4.32,
        sd: 2.1,
    };
    let r = one_sample_t(&stats, 7.52).map_err(|e| e.to_string())?;
    let summary = format!("t = {:.4}, df = {}, d = {:.4}", r.t, r.df, r.cohens_d);
    let ok = r.df == 15 && (r.cohens_d + 1.52).abs() <= 0.01 && (r.t + 6.06).abs() <= 0.05;
    if ok {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn scale_invariance() -> Outcome {
    let mut failures = Vec::new();
    for draw in 0..1000u64 {
        let model = PhraseGenModel {
            tap_count_range: (1, 12),
            duration_range_ms: (1.0, 3000.0),
            seed: 0x5CA1E,
        };
        let phrase = gen_random_phrase(&model, draw);
        let base = normalize(&phrase, 64).unwrap();
        for s in [0.5, 0.9, 1.2, 3.0] {
            let scaled = normalize(&phrase.scaled(s), 64).unwrap();
            check(
                &mut failures,
                || format!("draw {draw} s={s}"),
                scaled == base,
            );
        }
    }
    verdict("1000 phrases x 4 factors".into(), failures)
}

fn streaming_offline() -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut accepted = 0;
    for seed in 0..10_000u64 {
        let template = random_template(seed);
        let events = random_stream(&template.phrase, seed, 30);
        let mut session = AuthSession::new(template.clone()).unwrap();
        let mut streaming = None;
        for (i, e) in events.iter().enumerate() {
            let d = session.push_event(*e).unwrap();
            if d.accepted {
                streaming = Some((d.matched_window.unwrap(), events[i].t, i));
                break;
            }
        }
        let offline = offline_scan(&template, &events)
            .unwrap()
            .first()
            .map(|d| d.matched_window.unwrap())
            .map(|(s, e)| ((s, e), events[e].t, e));
        accepted += usize::from(streaming.is_some());
        check(
            &mut failures,
            || format!("seed {seed}: streaming {streaming:?} offline {offline:?}"),
            streaming == offline,
        );
    }
    let elapsed = started.elapsed();
    check(
        &mut failures,
        || format!("runtime {elapsed:?}"),
        elapsed < Duration::from_secs(60),
    );
    verdict(
        format!("10000 streams, {accepted} with an acceptance, {elapsed:.2?}"),
        failures,
    )
}

fn simulation_sanity() -> Outcome {
    let mut failures = Vec::new();
    let sigmas = [0.0, 0.05, 0.1, 0.2];
    let attacker = PhraseGenModel::with_seed(77);
    let run = |template: &Template| -> Vec<tapphrase::sim::RateEstimate> {
        let mut out: Vec<_> = sigmas
            .iter()
            .map(|&s| estimate_frr(template, &JitterModel::new(s, 11).unwrap(), 500).unwrap())
            .collect();
        out.push(estimate_far(template, &attacker, 500).unwrap());
        out
    };
    for i in 0..100u64 {
        let template = Template::new(
            "sim",
            gen_random_phrase(&PhraseGenModel::with_seed(1000 + i), 0),
            MatcherParams::default(),
        );
        let first = run(&template);
        check(
            &mut failures,
            || format!("template {i}: FRR(0) = {}", first[0].rate),
            first[0].hits == 0,
        );
        let rates: Vec<f64> = first[..4].iter().map(|e| e.rate).collect();
        check(
            &mut failures,
            || format!("template {i}: FRR not monotone {rates:?}"),
            rates.windows(2).all(|w| w[0] <= w[1]),
        );
        let second = run(&template);
        check(
            &mut failures,
            || format!("template {i}: rerun differs"),
            first == second,
        );
    }
    verdict(
        "100 templates, sigma grid {0, 0.05, 0.1, 0.2}, 500 trials".into(),
        failures,
    )
}

fn random_signal(seed: u64, draw: u64) -> BinarySignal {
    BinarySignal::from_bits((0..64).map(|k| unit(seed, draw * 64 + k) < 0.5))
}

fn hamming_metric() -> Outcome {
    let mut failures = Vec::new();
    for i in 0..10_000u64 {
        let a = random_signal(0xBEEF, 3 * i);
        let b = if i % 2 == 0 {
            random_signal(0xBEEF, 3 * i + 1)
        } else {
            // Near neighbours exercise the small-distance regime.
            let mut b = a.clone();
            for k in 0..64 {
                if unit(0xF11F, i * 64 + k) < 0.05 {
                    b.set(k as usize, !b.get(k as usize));
                }
            }
            b
        };
        let c = random_signal(0xBEEF, 3 * i + 2);
        let d = |x: &BinarySignal, y: &BinarySignal| hamming_distance(x, y).unwrap();
        let (ab, ba, bc, ac) = (d(&a, &b), d(&b, &a), d(&b, &c), d(&a, &c));
        check(
            &mut failures,
            || format!("triple {i}: identity"),
            d(&a, &a) == 0.0 && ((ab == 0.0) == (a == b)),
        );
        check(&mut failures, || format!("triple {i}: symmetry"), ab == ba);
        check(
            &mut failures,
            || format!("triple {i}: triangle"),
            ac <= ab + bc,
        );
    }
    verdict("10000 triples at 64 bins".into(), failures)
}

struct Client {
    app: axum::Router,
}

impl Client {
    async fn call(&self, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
        let req = Request::builder()
            .method(method)
            .uri(uri)
            .header("content-type", "application/json")
            .body(
                body.map(|b| Body::from(b.to_string()))
                    .unwrap_or_else(Body::empty),
            )
            .unwrap();
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = resp.into_body().collect().await.unwrap().to_bytes();
        let value = if bytes.is_empty() {
            Value::Null
        } else {
            serde_json::from_slice(&bytes).unwrap()
        };
        (status, value)
    }
}

async fn api_engine() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let idle = Duration::from_secs(300);
    let state = Arc::new(AppState::new(
        TemplateStore::open(dir.path()).unwrap(),
        idle,
    ));
    let client = Client {
        app: router(state.clone()),
    };
    let mut failures = Vec::new();
    let mut ids = Vec::new();
    let mut decisions = 0;
    for seed in 0..500u64 {
        let generated = random_template(seed);
        let enroll = json!({
            "events": generated.phrase.to_events(unit(seed, 50) * 1000.0),
            "params": generated.params,
        });
        let (status, body) = client
            .call(Method::POST, "/api/templates", Some(enroll))
            .await;
        if status != StatusCode::CREATED {
            return Err(format!("enroll failed for seed {seed}: {status} {body}"));
        }
        let id = body["id"].as_str().unwrap().to_string();
        let template = state.templates.get(&id).unwrap();
        ids.push(id.clone());

        let mut events = random_stream(&template.phrase, seed + 1_000_000, 30);
        if seed % 10 == 9 && events.len() > 2 {
            // An out-of-order event must be rejected identically.
            let bad = events[events.len() / 2];
            events.push(bad);
        }
        let (_, created) = client
            .call(Method::POST, &format!("/api/templates/{id}/sessions"), None)
            .await;
        let sid = created["sessionId"].as_str().unwrap().to_string();
        let mut engine = AuthSession::new(template).unwrap();
        for (i, e) in events.iter().enumerate() {
            let (status, api) = client
                .call(
                    Method::POST,
                    &format!("/api/sessions/{sid}/events"),
                    Some(json!(e)),
                )
                .await;
            let expected = match engine.push_event(*e) {
                Ok(d) => (
                    StatusCode::OK,
                    serde_json::to_value(tapphrase_service::api::EventResponse::from(d)).unwrap(),
                ),
                Err(err) => (
                    status,
                    json!({ "error": err.name(), "detail": err.to_string() }),
                ),
            };
            decisions += 1;
            check(
                &mut failures,
                || format!("seed {seed} event {i}: api {status} {api} engine {expected:?}"),
                (status, &api) == (expected.0, &expected.1),
            );
        }
        client
            .call(Method::DELETE, &format!("/api/sessions/{sid}"), None)
            .await;
    }

    let before: Vec<Template> = ids
        .iter()
        .map(|id| state.templates.get(id).unwrap())
        .collect();
    drop(client);
    drop(state);
    let reopened = TemplateStore::open(dir.path()).map_err(|e| e.to_string())?;
    for (id, original) in ids.iter().zip(&before) {
        let restored = reopened.get(id);
        let exact = restored.as_ref().is_some_and(|r| {
            r == original
                && r.phrase.segments().iter().map(|x| x.to_bits()).eq(original
                    .phrase
                    .segments()
                    .iter()
                    .map(|x| x.to_bits()))
                && r.params.tau.to_bits() == original.params.tau.to_bits()
                && r.params.span_tolerance.to_bits() == original.params.span_tolerance.to_bits()
        });
        check(
            &mut failures,
            || format!("template {id} not restored exactly"),
            exact,
        );
    }
    check(
        &mut failures,
        || format!("restored {} of {}", reopened.len(), ids.len()),
        reopened.len() == ids.len(),
    );
    verdict(
        format!(
            "500 sequences, {decisions} events compared, {} templates restored",
            ids.len()
        ),
        failures,
    )
}

fn main() {
    let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
    let criteria: Vec<Criterion> = vec![
        ("crude rule fidelity", Box::new(crude_rule)),
        ("statistics reproduction", Box::new(statistics)),
        ("scale invariance", Box::new(scale_invariance)),
        ("streaming/offline equivalence", Box::new(streaming_offline)),
        ("simulation sanity", Box::new(simulation_sanity)),
        ("hamming metric properties", Box::new(hamming_metric)),
        (
            "api/engine equivalence",
            Box::new(move || runtime.block_on(api_engine())),
        ),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} failed", failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
