//! Subcommand implementations. Each resolves its configuration (flags win
//! over the config file, defaults fill the rest), runs the corresponding
//! library entry points, writes an output that embeds the version string,
//! the fully resolved config, and the master seed, and reports how many
//! anomalous trials it logged (nonzero ⇒ exit code 2).

use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Value};

use ldpc_floor::amoeba::{
    hard_amoeba, seeded_amoeba, soft_amoeba, AmoebaConfig, CodeDecoder, DecodedTo, DecoderSpec,
    InstantonRecord,
};
use ldpc_floor::channel::{effective_distance_of_noise, llr_from_noise, trial_seed, NoiseVector};
use ldpc_floor::error::Error;
use ldpc_floor::explorer::{instanton_fer_estimate, mc_fer, FerConfig, FerEstimate, Spectrum};
use ldpc_floor::graph::TannerGraph;
use ldpc_floor::lp::{LpMode, PseudoCodeword};
use ldpc_floor::oracle::CodebookEnumeration;
use ldpc_floor::pcs::{pcs_run, PcsConfig, PcsTrace};

use crate::config::{usage, CliResult, FileConfig};
use crate::output::{csv_header, read_noise_csv, render_json, resolve_code_path, write_output};
use crate::{
    AmoebaArgs, CodeArgs, DecodeArgs, DecoderArgs, DendroArgs, FerArgs, OracleArgs, PcsArgs,
    SpectrumArgs,
};

/// A code loaded for decoding, remembering the pre-transform bit count so
/// noise rows can be validated and zero-extended under `--dendro`.
struct LoadedCode {
    g: TannerGraph,
    path: PathBuf,
    dendro: bool,
    original_bits: usize,
}

fn load_code(args: &CodeArgs, cfg: &FileConfig) -> CliResult<LoadedCode> {
    let code: String = cfg.require(args.code.clone(), "code")?;
    let path = resolve_code_path(&code)?;
    let g = TannerGraph::read_alist(&path)?;
    let original_bits = g.n_bits();
    let dendro = cfg.switch(args.dendro, "dendro")?;
    let g = if dendro { g.dendro_transform()? } else { g };
    Ok(LoadedCode {
        g,
        path,
        dendro,
        original_bits,
    })
}

/// `bp:K` / `lp` / `oracle` as accepted on the command line.
fn spec_string(spec: &DecoderSpec) -> String {
    match spec {
        DecoderSpec::Bp { iterations } => format!("bp:{iterations}"),
        DecoderSpec::Lp { .. } => "lp".into(),
        DecoderSpec::Oracle => "oracle".into(),
    }
}

fn mode_string(mode: LpMode) -> &'static str {
    match mode {
        LpMode::CutGeneration => "cuts",
        LpMode::FullEnumeration => "full",
    }
}

fn resolve_lp_mode(cuts: bool, full: bool, cfg: &FileConfig) -> CliResult<LpMode> {
    if cuts {
        return Ok(LpMode::CutGeneration);
    }
    if full {
        return Ok(LpMode::FullEnumeration);
    }
    match cfg.opt::<String>(None, "mode")?.as_deref() {
        None | Some("cuts") => Ok(LpMode::CutGeneration),
        Some("full") => Ok(LpMode::FullEnumeration),
        Some(other) => Err(usage(format!(
            "config key mode: expected cuts|full, got {other}"
        ))),
    }
}

fn resolve_decoder(args: &DecoderArgs, cfg: &FileConfig) -> CliResult<DecoderSpec> {
    let spec: String = cfg.require(args.decoder.clone(), "decoder")?;
    match spec.as_str() {
        "bp" => {
            let iterations = cfg.get(args.iters, "iters", 32usize)?;
            if iterations == 0 {
                return Err(usage("--iters must be at least 1"));
            }
            Ok(DecoderSpec::Bp { iterations })
        }
        s if s.starts_with("bp:") => {
            if args.iters.is_some() {
                return Err(usage("pass either bp:K or --iters, not both"));
            }
            Ok(s.parse::<DecoderSpec>()?)
        }
        "lp" => Ok(DecoderSpec::Lp {
            mode: resolve_lp_mode(args.cuts, args.full, cfg)?,
        }),
        "oracle" => Ok(DecoderSpec::Oracle),
        other => Err(usage(format!(
            "unknown decoder {other}: expected bp[:K], lp, or oracle"
        ))),
    }
}

/// Validates one noise CSV row against the loaded code and lifts it to a
/// full-length `NoiseVector` (dendro auxiliary bits carry no observation).
fn noise_from_row(row: &[f64], code: &LoadedCode, frame: usize, s2: f64) -> CliResult<NoiseVector> {
    if row.len() != code.original_bits {
        return Err(usage(format!(
            "noise row {frame} has {} values, code has {} bits",
            row.len(),
            code.original_bits
        )));
    }
    let mut x = row.to_vec();
    x.resize(code.g.n_bits(), 0.0);
    Ok(NoiseVector::new(x, s2)?)
}

/// Runs `run(t)` for `t = 0..trials` across `workers` threads (worker `w`
/// takes trials `w, w+W, …`) and returns the results in trial order. The
/// outcome of each trial must not depend on which worker executes it.
fn parallel_trials<T, F>(trials: u64, workers: usize, run: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    let spawned = workers.min(trials.max(1) as usize).max(1);
    let mut slots: Vec<Option<T>> = (0..trials).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..spawned)
            .map(|w| {
                let run = &run;
                scope.spawn(move || {
                    let mut out = Vec::new();
                    let mut t = w as u64;
                    while t < trials {
                        out.push((t, run(t)));
                        t += spawned as u64;
                    }
                    out
                })
            })
            .collect();
        for handle in handles {
            for (t, value) in handle.join().expect("trial worker panicked") {
                slots[t as usize] = Some(value);
            }
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.expect("every trial filled"))
        .collect()
}

fn out_path(flag: &Option<PathBuf>, cfg: &FileConfig) -> CliResult<Option<PathBuf>> {
    cfg.opt(flag.clone(), "out")
}

// ---------------------------------------------------------------- decode

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum DecodedOut {
    Word {
        bits: Vec<u8>,
        weight: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        soft: Option<Vec<f64>>,
    },
    PseudoCodeword {
        values: Vec<f64>,
        distance: f64,
        integral: bool,
        support: Vec<usize>,
    },
}

#[derive(Serialize)]
struct DecodeRecord {
    frame: usize,
    error: bool,
    noise_distance: f64,
    #[serde(flatten)]
    decoded: DecodedOut,
}

pub fn decode(args: &DecodeArgs, cfg: &FileConfig) -> CliResult<u32> {
    let code = load_code(&args.code, cfg)?;
    let spec = resolve_decoder(&args.decoder, cfg)?;
    let s2: f64 = cfg.require(args.s2, "s2")?;
    let noise_path: PathBuf = cfg.require(args.noise.clone(), "noise")?;
    let dump_soft: Option<PathBuf> = cfg.opt(args.dump_soft.clone(), "dump_soft")?;
    if dump_soft.is_some() && !matches!(spec, DecoderSpec::Bp { .. }) {
        return Err(usage("--dump-soft applies only to the bp decoder"));
    }
    let rows = read_noise_csv(&noise_path)?;
    let decoder = CodeDecoder::new(&code.g, spec.clone())?;
    let mut records = Vec::with_capacity(rows.len());
    let mut soft_rows = Vec::new();
    for (frame, row) in rows.iter().enumerate() {
        let noise = noise_from_row(row, &code, frame, s2)?;
        let (error, decoded) = decoder.decode(&noise)?;
        let noise_distance = effective_distance_of_noise(&noise, &code.g)?;
        let decoded = match decoded {
            DecodedTo::Word(word) => {
                let soft = if matches!(spec, DecoderSpec::Bp { .. }) {
                    let h = llr_from_noise(&noise, &code.g)?;
                    let iterations = match spec {
                        DecoderSpec::Bp { iterations } => iterations,
                        _ => unreachable!(),
                    };
                    let out = ldpc_floor::bp::bp_decode(&h, &code.g, iterations)?;
                    soft_rows.push(out.soft.clone());
                    Some(out.soft)
                } else {
                    None
                };
                DecodedOut::Word {
                    weight: word.weight(),
                    bits: word.bits().to_vec(),
                    soft,
                }
            }
            DecodedTo::Pseudo(pc) => DecodedOut::PseudoCodeword {
                distance: pc.effective_distance,
                integral: pc.integral,
                support: pc.support.clone(),
                values: pc.values,
            },
        };
        records.push(DecodeRecord {
            frame,
            error,
            noise_distance,
            decoded,
        });
    }
    if let Some(path) = &dump_soft {
        let mut csv = String::from("# per-bit BP soft outputs, one frame per row\n");
        for row in &soft_rows {
            let cells: Vec<String> = row.iter().map(f64::to_string).collect();
            csv.push_str(&cells.join(","));
            csv.push('\n');
        }
        std::fs::write(path, csv)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let config = json!({
        "code": code.path.display().to_string(),
        "decoder": spec_string(&spec),
        "dendro": code.dendro,
        "noise": noise_path.display().to_string(),
        "s2": s2,
    });
    let payload = json!({ "records": records });
    write_output(
        out_path(&args.out, cfg)?.as_deref(),
        &render_json(config, None, payload),
    )?;
    Ok(0)
}

// ------------------------------------------------------------------- fer

pub fn fer(args: &FerArgs, cfg: &FileConfig) -> CliResult<u32> {
    let code = load_code(&args.code, cfg)?;
    let spec = resolve_decoder(&args.decoder, cfg)?;
    let s2_list = cfg
        .float_list(args.s2_list.clone(), "s2_list")?
        .ok_or_else(|| usage("missing --s2-list (or config key s2_list)"))?;
    let fer_config = FerConfig {
        max_frames: cfg.get(args.frames, "frames", 10_000u64)?,
        min_errors: cfg.get(args.min_errors, "min_errors", 100u64)?,
        seed: cfg.get(args.seed, "seed", 0u64)?,
        workers: cfg.get(args.workers, "workers", 1usize)?,
        early_stop: cfg.switch(args.early_stop, "early_stop")?,
    };
    let config = json!({
        "code": code.path.display().to_string(),
        "decoder": spec_string(&spec),
        "dendro": code.dendro,
        "early_stop": fer_config.early_stop,
        "frames": fer_config.max_frames,
        "min_errors": fer_config.min_errors,
        "s2_list": s2_list,
        "seed": fer_config.seed,
        "workers": fer_config.workers,
    });
    let mut body = String::from("s2,frames,errors,fer,ci_low,ci_high\n");
    for &s2 in &s2_list {
        let point = mc_fer(&code.g, &spec, s2, &fer_config)?;
        body.push_str(&format!(
            "{},{},{},{},{},{}\n",
            point.s2, point.frames, point.errors, point.fer, point.ci_low, point.ci_high
        ));
    }
    let text = csv_header(&config, Some(fer_config.seed)) + &body;
    write_output(out_path(&args.out, cfg)?.as_deref(), &text)?;
    Ok(0)
}

// ------------------------------------------------------------------- pcs

#[derive(Serialize)]
struct PcsRecordOut {
    trial: u64,
    seed: u64,
    iterations: usize,
    k_star: usize,
    distance: f64,
    instanton: NoiseVector,
    terminal: PseudoCodeword,
    anomaly: Option<String>,
}

#[derive(Serialize)]
struct TrialFailure {
    trial: u64,
    seed: u64,
    error: String,
}

pub fn pcs(args: &PcsArgs, cfg: &FileConfig) -> CliResult<u32> {
    let code = load_code(&args.code, cfg)?;
    let trials = cfg.get(args.trials, "trials", 10u64)?;
    if trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let s2: f64 = cfg.require(args.s2, "s2")?;
    let seed = cfg.get(args.seed, "seed", 0u64)?;
    let workers = cfg.get(args.workers, "workers", 1usize)?.max(1);
    let mode = resolve_lp_mode(args.cuts, args.full, cfg)?;
    let dump_traces: Option<PathBuf> = cfg.opt(args.dump_traces.clone(), "dump_traces")?;
    let pcs_config = PcsConfig {
        mode,
        ..PcsConfig::default()
    };
    let results: Vec<(u64, Result<PcsTrace, Error>)> = parallel_trials(trials, workers, |t| {
        let ts = trial_seed(seed, 0, t);
        (ts, pcs_run(&code.g, s2, ts, &pcs_config))
    });
    if let Some(dir) = &dump_traces {
        std::fs::create_dir_all(dir)
            .map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    let mut spectrum = Spectrum::new(code.g.n_bits())?;
    let mut records = Vec::new();
    let mut failures = Vec::new();
    let mut anomalies = 0u32;
    for (t, (ts, result)) in results.into_iter().enumerate() {
        let t = t as u64;
        match result {
            Ok(trace) => {
                if let Some(dir) = &dump_traces {
                    let path = dir.join(format!("trace_{t:04}.json"));
                    let mut text =
                        serde_json::to_string_pretty(&trace).expect("serializable trace");
                    text.push('\n');
                    std::fs::write(&path, text)
                        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                }
                if let Some(anomaly) = &trace.anomaly {
                    anomalies += 1;
                    spectrum.note_failed_trial();
                    eprintln!("ldpc-floor: pcs trial {t}: anomaly: {anomaly}");
                } else {
                    spectrum.add(&trace.terminal.values, trace.terminal.effective_distance)?;
                }
                records.push(PcsRecordOut {
                    trial: t,
                    seed: ts,
                    iterations: trace.iterates.len(),
                    k_star: trace.k_star,
                    distance: trace.terminal.effective_distance,
                    instanton: trace.instanton,
                    terminal: trace.terminal,
                    anomaly: trace.anomaly,
                });
            }
            Err(e) => {
                anomalies += 1;
                spectrum.note_failed_trial();
                eprintln!("ldpc-floor: pcs trial {t}: failed: {e}");
                failures.push(TrialFailure {
                    trial: t,
                    seed: ts,
                    error: e.to_string(),
                });
            }
        }
    }
    let estimate: Option<FerEstimate> = instanton_fer_estimate(&spectrum, s2).ok();
    let config = json!({
        "code": code.path.display().to_string(),
        "dendro": code.dendro,
        "dump_traces": dump_traces.as_ref().map(|d| d.display().to_string()),
        "mode": mode_string(mode),
        "s2": s2,
        "seed": seed,
        "trials": trials,
        "workers": workers,
    });
    let payload = json!({
        "records": records,
        "failures": failures,
        "spectrum": spectrum,
        "estimate": estimate,
    });
    write_output(
        out_path(&args.out, cfg)?.as_deref(),
        &render_json(config, Some(seed), payload),
    )?;
    Ok(anomalies)
}

// ---------------------------------------------------------------- amoeba

pub fn amoeba(args: &AmoebaArgs, cfg: &FileConfig) -> CliResult<u32> {
    let code = load_code(&args.code, cfg)?;
    let spec = resolve_decoder(&args.decoder, cfg)?;
    let seed = cfg.get(args.seed, "seed", 0u64)?;
    let workers = cfg.get(args.workers, "workers", 1usize)?.max(1);
    let seed_from: Option<PathBuf> = cfg.opt(args.seed_from.clone(), "seed_from")?;
    let defaults = AmoebaConfig::default();
    let amoeba_config = AmoebaConfig {
        max_evals: cfg.get(args.max_evals, "max_evals", defaults.max_evals)?,
        rounds: cfg.get(args.rounds, "rounds", defaults.rounds)?,
        ..defaults
    };

    let (variant_name, runs): (String, Vec<(u64, Result<InstantonRecord, Error>)>) =
        if let Some(seed_file) = &seed_from {
            if args.variant.is_some() {
                return Err(usage("--seed-from runs the seeded variant; drop --variant"));
            }
            if args.s2.is_some() {
                return Err(usage(
                    "--seed-from takes s² from the stored instantons; drop --s2",
                ));
            }
            let starts = read_instanton_seeds(seed_file)?;
            let limit = cfg
                .opt(args.trials, "trials")?
                .map(|t: u64| t as usize)
                .unwrap_or(starts.len());
            let starts = &starts[..limit.min(starts.len())];
            if starts.is_empty() {
                return Err(usage(format!(
                    "{} holds no instanton records",
                    seed_file.display()
                )));
            }
            let runs = parallel_trials(starts.len() as u64, workers, |t| {
                (
                    t,
                    seeded_amoeba(&code.g, &spec, &starts[t as usize], &amoeba_config),
                )
            });
            ("seeded".into(), runs)
        } else {
            let variant = cfg.get(args.variant.clone(), "variant", "soft".to_string())?;
            let s2: f64 = cfg.require(args.s2, "s2")?;
            let trials = cfg.get(args.trials, "trials", 10u64)?;
            if trials == 0 {
                return Err(usage("--trials must be at least 1"));
            }
            let run_one: Box<dyn Fn(u64) -> Result<InstantonRecord, Error> + Sync> =
                match variant.as_str() {
                    "soft" => Box::new(|ts| soft_amoeba(&code.g, &spec, s2, ts, &amoeba_config)),
                    "hard" => Box::new(|ts| hard_amoeba(&code.g, &spec, s2, ts, &amoeba_config)),
                    other => {
                        return Err(usage(format!(
                            "unknown variant {other}: expected soft or hard"
                        )))
                    }
                };
            let runs = parallel_trials(trials, workers, |t| {
                let ts = trial_seed(seed, 0, t);
                (ts, run_one(ts))
            });
            (variant, runs)
        };

    let mut records = Vec::new();
    let mut failures = Vec::new();
    let mut anomalies = 0u32;
    for (t, (ts, result)) in runs.into_iter().enumerate() {
        match result {
            Ok(record) => records.push(record),
            Err(e) => {
                anomalies += 1;
                eprintln!("ldpc-floor: amoeba trial {t}: failed: {e}");
                failures.push(TrialFailure {
                    trial: t as u64,
                    seed: ts,
                    error: e.to_string(),
                });
            }
        }
    }
    let d_min = records.iter().map(|r| r.d).min_by(f64::total_cmp);
    let config = json!({
        "code": code.path.display().to_string(),
        "decoder": spec_string(&spec),
        "dendro": code.dendro,
        "max_evals": amoeba_config.max_evals,
        "rounds": amoeba_config.rounds,
        "s2": args.s2,
        "seed": seed,
        "seed_from": seed_from.as_ref().map(|p| p.display().to_string()),
        "trials": records.len() + failures.len(),
        "variant": variant_name,
        "workers": workers,
    });
    let payload = json!({
        "records": records,
        "failures": failures,
        "d_min": d_min,
    });
    write_output(
        out_path(&args.out, cfg)?.as_deref(),
        &render_json(config, Some(seed), payload),
    )?;
    Ok(anomalies)
}

/// Pulls instanton noise vectors out of a pcs (or amoeba) output file.
fn read_instanton_seeds(path: &PathBuf) -> CliResult<Vec<NoiseVector>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| usage(format!("{} is not JSON: {e}", path.display())))?;
    let records = value
        .get("records")
        .and_then(Value::as_array)
        .ok_or_else(|| usage(format!("{} has no records array", path.display())))?;
    let mut seeds = Vec::new();
    for (i, record) in records.iter().enumerate() {
        let noise = record.get("instanton").or_else(|| record.get("noise"));
        let Some(noise) = noise else {
            return Err(usage(format!(
                "{} record {i} has neither instanton nor noise",
                path.display()
            )));
        };
        let noise: NoiseVector = serde_json::from_value(noise.clone())
            .map_err(|e| usage(format!("{} record {i}: {e}", path.display())))?;
        seeds.push(noise);
    }
    Ok(seeds)
}

// -------------------------------------------------------------- spectrum

enum HarvestItem {
    Entry(Vec<f64>, f64),
    Failed,
}

/// Recursively collects spectrum entries from stored JSON: raw pcs traces
/// (`terminal`), amoeba records (`decoded`), or whole output envelopes
/// (`records`).
fn harvest(value: &Value, source: &str, items: &mut Vec<HarvestItem>) -> CliResult<()> {
    if let Some(array) = value.as_array() {
        for element in array {
            harvest(element, source, items)?;
        }
        return Ok(());
    }
    let Some(object) = value.as_object() else {
        return Err(usage(format!("{source}: unrecognized record shape")));
    };
    if let Some(records) = object.get("records") {
        return harvest(records, source, items);
    }
    if object.contains_key("terminal") {
        if object.get("anomaly").is_some_and(|a| !a.is_null()) {
            items.push(HarvestItem::Failed);
            return Ok(());
        }
        let terminal: PseudoCodeword = serde_json::from_value(object["terminal"].clone())
            .map_err(|e| usage(format!("{source}: bad terminal: {e}")))?;
        items.push(HarvestItem::Entry(
            terminal.values,
            terminal.effective_distance,
        ));
        return Ok(());
    }
    if object.contains_key("decoded") {
        let record: InstantonRecord = serde_json::from_value(value.clone())
            .map_err(|e| usage(format!("{source}: bad instanton record: {e}")))?;
        let values = match record.decoded {
            DecodedTo::Word(word) => word.bits().iter().map(|&b| f64::from(b)).collect(),
            DecodedTo::Pseudo(pc) => pc.values,
        };
        items.push(HarvestItem::Entry(values, record.d));
        return Ok(());
    }
    Err(usage(format!(
        "{source}: unrecognized record shape (no records/terminal/decoded)"
    )))
}

pub fn spectrum(args: &SpectrumArgs, cfg: &FileConfig) -> CliResult<u32> {
    let input: PathBuf = cfg.require(args.input.clone(), "in")?;
    let estimate_s2 = cfg.float_list(args.estimate_s2.clone(), "estimate_s2")?;
    let mut files = Vec::new();
    if input.is_dir() {
        for entry in std::fs::read_dir(&input)
            .map_err(|e| usage(format!("cannot read {}: {e}", input.display())))?
        {
            let path = entry
                .map_err(|e| usage(format!("cannot read {}: {e}", input.display())))?
                .path();
            if path.extension().is_some_and(|ext| ext == "json") {
                files.push(path);
            }
        }
        files.sort();
        if files.is_empty() {
            return Err(usage(format!(
                "{} contains no .json files",
                input.display()
            )));
        }
    } else {
        files.push(input.clone());
    }
    let mut items = Vec::new();
    for file in &files {
        let text = std::fs::read_to_string(file)
            .map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| usage(format!("{} is not JSON: {e}", file.display())))?;
        harvest(&value, &file.display().to_string(), &mut items)?;
    }
    let n_bits = items
        .iter()
        .find_map(|item| match item {
            HarvestItem::Entry(values, _) => Some(values.len()),
            HarvestItem::Failed => None,
        })
        .ok_or_else(|| usage("no usable records found"))?;
    let mut spectrum = Spectrum::new(n_bits)?;
    for item in &items {
        match item {
            HarvestItem::Entry(values, d) => spectrum.add(values, *d)?,
            HarvestItem::Failed => spectrum.note_failed_trial(),
        }
    }
    let config = json!({
        "estimate_s2": estimate_s2,
        "in": input.display().to_string(),
        "sources": files.len(),
    });
    let mut text = csv_header(&config, None);
    if let Some(list) = &estimate_s2 {
        for &s2 in list {
            let est = instanton_fer_estimate(&spectrum, s2)?;
            text.push_str(&format!(
                "# estimate s2={s2}: sum={} leading={} d_min={} ({})\n",
                est.sum, est.leading_term, est.d_min, est.accuracy
            ));
        }
    }
    text.push_str("d,count,cum_fraction\n");
    let trials = spectrum.trials();
    let mut seen = 0u64;
    for entry in spectrum.entries() {
        seen += entry.count;
        text.push_str(&format!(
            "{},{},{}\n",
            entry.d,
            entry.count,
            seen as f64 / trials as f64
        ));
    }
    write_output(out_path(&args.out, cfg)?.as_deref(), &text)?;
    Ok(0)
}

// ---------------------------------------------------------------- dendro

pub fn dendro(args: &DendroArgs, cfg: &FileConfig) -> CliResult<u32> {
    let code: String = cfg.require(args.code.clone(), "code")?;
    let path = resolve_code_path(&code)?;
    let g = TannerGraph::read_alist(&path)?;
    let t = g.dendro_transform()?;
    let punctured: Vec<usize> = (0..t.n_bits()).filter(|&i| t.is_punctured(i)).collect();
    let check_neighbors: Vec<&[usize]> = (0..t.n_checks()).map(|a| t.check_neighbors(a)).collect();
    let config = json!({ "code": path.display().to_string() });
    let payload = json!({
        "original": { "n_bits": g.n_bits(), "n_checks": g.n_checks() },
        "transformed": {
            "n_bits": t.n_bits(),
            "n_checks": t.n_checks(),
            "n_punctured": punctured.len(),
            "punctured": punctured,
            "check_neighbors": check_neighbors,
        },
    });
    write_output(
        out_path(&args.out, cfg)?.as_deref(),
        &render_json(config, None, payload),
    )?;
    Ok(0)
}

// ---------------------------------------------------------------- oracle

#[derive(Serialize)]
struct OracleRecord {
    frame: usize,
    error: bool,
    bits: Vec<u8>,
    weight: usize,
    energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    marginals: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    log_partition: Option<f64>,
}

pub fn oracle(args: &OracleArgs, cfg: &FileConfig) -> CliResult<u32> {
    let code = load_code(&args.code, cfg)?;
    let s2: f64 = cfg.require(args.s2, "s2")?;
    let noise_path: PathBuf = cfg.require(args.noise.clone(), "noise")?;
    let marginals = cfg.switch(args.marginals, "marginals")?;
    let rows = read_noise_csv(&noise_path)?;
    let enumeration = CodebookEnumeration::new(&code.g)?;
    let mut records = Vec::with_capacity(rows.len());
    for (frame, row) in rows.iter().enumerate() {
        let noise = noise_from_row(row, &code, frame, s2)?;
        let h = llr_from_noise(&noise, &code.g)?;
        let (word, energy) = enumeration.block_map(&h)?;
        let (per_bit, log_partition) = if marginals {
            let m = enumeration.symbol_map_marginals(&h)?;
            (Some(m.per_bit), Some(m.log_partition))
        } else {
            (None, None)
        };
        records.push(OracleRecord {
            frame,
            error: !word.is_zero(),
            weight: word.weight(),
            bits: word.bits().to_vec(),
            energy,
            marginals: per_bit,
            log_partition,
        });
    }
    let config = json!({
        "code": code.path.display().to_string(),
        "dendro": code.dendro,
        "marginals": marginals,
        "noise": noise_path.display().to_string(),
        "s2": s2,
    });
    let payload = json!({
        "dimension": enumeration.dimension(),
        "n_codewords": enumeration.n_codewords(),
        "records": records,
    });
    write_output(
        out_path(&args.out, cfg)?.as_deref(),
        &render_json(config, None, payload),
    )?;
    Ok(0)
}
