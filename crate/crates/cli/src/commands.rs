use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::json;
use tapphrase::sim::stats::{describe, one_sample_t, SummaryStats};
use tapphrase::sim::{estimate_far, estimate_frr, JitterModel, PhraseGenModel};
use tapphrase::{phrase_from_events, trace, AuthSession, MatcherParams, Template};
use tapphrase_service::{Service, ServiceConfig};

use crate::{Command, ParamOverrides};

#[derive(Debug)]
pub struct CliError {
    pub name: String,
    pub detail: String,
}

impl From<tapphrase::Error> for CliError {
    fn from(e: tapphrase::Error) -> Self {
        Self {
            name: e.name().to_string(),
            detail: e.to_string(),
        }
    }
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError {
        name: "IoError".into(),
        detail: format!("{}: {e}", path.display()),
    }
}

type CmdResult = Result<u8, CliError>;

fn print<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("output serializes")
    );
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn load_events(path: &Path) -> Result<Vec<tapphrase::TapEvent>, CliError> {
    Ok(trace::decode_events(&read(path)?)?)
}

fn load_template(path: &Path, overrides: &ParamOverrides) -> Result<Template, CliError> {
    let mut template: Template = serde_json::from_str(&read(path)?).map_err(|e| CliError {
        name: "ParseError".into(),
        detail: format!("{}: {e}", path.display()),
    })?;
    template.params = overrides.apply(template.params)?;
    Ok(template)
}

pub fn run(command: Command) -> CmdResult {
    match command {
        Command::Enroll {
            events,
            out,
            params,
        } => enroll(&events, &out, &params),
        Command::Verify {
            template,
            events,
            matcher,
            params,
        } => {
            let template = load_template(&template, &params)?;
            let candidate = phrase_from_events(&load_events(&events)?)?
                .debounced(template.params.min_segment_ms);
            let result = matcher.run(&template, &candidate);
            print(&json!({ "matcher": matcher, "result": result }));
            Ok(if result.accepted { 0 } else { 1 })
        }
        Command::Stream {
            template,
            events,
            params,
        } => stream(&load_template(&template, &params)?, &load_events(&events)?),
        Command::Simulate {
            template,
            frr,
            far,
            trials,
            seed,
            params,
        } => simulate(&load_template(&template, &params)?, frr, far, trials, seed),
        Command::Stats {
            csv,
            mu0,
            mean,
            sd,
            n,
        } => stats(csv.as_deref(), mu0, mean.zip(sd).zip(n)),
        Command::Serve {
            port,
            host,
            data_dir,
        } => serve(ServiceConfig {
            addr: (host, port).into(),
            data_dir,
            ..ServiceConfig::default()
        }),
    }
}

fn enroll(events: &Path, out: &Path, overrides: &ParamOverrides) -> CmdResult {
    let params = overrides.apply(MatcherParams::default())?;
    let phrase = phrase_from_events(&load_events(events)?)?.debounced(params.min_segment_ms);
    let template = Template::new(uuid::Uuid::new_v4().simple().to_string(), phrase, params);
    let json = serde_json::to_string_pretty(&template).expect("template serializes");
    fs::write(out, json + "\n").map_err(|e| io_error(out, e))?;
    print(&json!({
        "id": template.id,
        "tap_count": template.phrase.tap_count(),
        "span_ms": template.phrase.total_span(),
        "template": out,
    }));
    Ok(0)
}

fn stream(template: &Template, events: &[tapphrase::TapEvent]) -> CmdResult {
    let mut session = AuthSession::new(template.clone())?;
    for (index, event) in events.iter().enumerate() {
        let decision = session.push_event(*event)?;
        if decision.accepted {
            let (start, end) = decision.matched_window.expect("accepted has window");
            print(&json!({
                "accepted": true,
                "event_index": index,
                "t": event.t,
                "matched_window": [start, end],
                "result": decision.result,
            }));
            return Ok(0);
        }
    }
    print(&json!({ "accepted": false, "message": "no match", "events": events.len() }));
    Ok(1)
}

fn simulate(template: &Template, frr: Option<f64>, far: bool, trials: u64, seed: u64) -> CmdResult {
    let (model, estimate) = match (frr, far) {
        (Some(sigma), false) => {
            let jitter = JitterModel::new(sigma, seed)?;
            (
                json!({ "kind": "frr", "sigma": sigma }),
                estimate_frr(template, &jitter, trials)?,
            )
        }
        _ => {
            let attacker = PhraseGenModel::with_seed(seed);
            (
                json!({
                    "kind": "far",
                    "tap_count_range": attacker.tap_count_range,
                    "duration_range_ms": attacker.duration_range_ms,
                }),
                estimate_far(template, &attacker, trials)?,
            )
        }
    };
    print(&json!({
        "template": { "id": template.id, "segments": template.phrase.segments() },
        "params": template.params,
        "model": model,
        "trials": estimate.trials,
        "seed": estimate.seed,
        "rate": estimate.rate,
        "hits": estimate.hits,
    }));
    Ok(0)
}

fn parse_samples(text: &str) -> Result<Vec<f64>, CliError> {
    let mut samples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        let parsed: Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
        match parsed {
            Ok(values) => samples.extend(values),
            Err(_) if i == 0 => continue,
            Err(e) => {
                return Err(tapphrase::Error::ParseError {
                    line: i + 1,
                    message: e.to_string(),
                }
                .into())
            }
        }
    }
    Ok(samples)
}

fn stats(csv: Option<&Path>, mu0: f64, summary: Option<((f64, f64), usize)>) -> CmdResult {
    let (stats, description) = match (csv, summary) {
        (_, Some(((mean, sd), n))) => (SummaryStats { n, mean, sd }, None),
        (Some(path), None) => {
            let d = describe(&parse_samples(&read(path)?)?)?;
            (d.summary(), Some(d))
        }
        (None, None) => {
            return Err(CliError {
                name: "UsageError".into(),
                detail: "provide a CSV file or --mean/--sd/--n".into(),
            })
        }
    };
    let test = one_sample_t(&stats, mu0)?;
    print(&json!({
        "n": stats.n,
        "mean": stats.mean,
        "sd": stats.sd,
        "median": description.map(|d| d.median),
        "iqr": description.map(|d| d.iqr),
        "mu0": mu0,
        "t": test.t,
        "df": test.df,
        "d": test.cohens_d,
    }));
    Ok(0)
}

fn serve(config: ServiceConfig) -> CmdResult {
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError {
        name: "IoError".into(),
        detail: e.to_string(),
    })?;
    runtime.block_on(async {
        let service = Service::bind(&config).await.map_err(|e| CliError {
            name: "BindError".into(),
            detail: format!("{}: {e}", config.addr),
        })?;
        let addr = service.local_addr().map_err(|e| CliError {
            name: "IoError".into(),
            detail: e.to_string(),
        })?;
        print(
            &json!({ "listening": addr.to_string(), "templates": service.state().templates.len() }),
        );
        service
            .run(tapphrase_service::shutdown_signal())
            .await
            .map_err(|e| CliError {
                name: "IoError".into(),
                detail: e.to_string(),
            })?;
        Ok(0)
    })
}
