//! WebAssembly bindings for the demo page. Every entry point takes plain
//! strings and numbers and returns a JSON document; failures come back as
//! `{"error": "..."}`.

use serde_json::{json, Value as Json};
use wasm_bindgen::prelude::wasm_bindgen;

use cryptologic::crypto::{vernam_statespace, MessageDistribution, VernamSystem, ATT};
use cryptologic::games::VernamCpaAttacker;
use cryptologic::muddy::{Assignment, Termination};
use cryptologic::rational::{self, Rational};
use cryptologic::{check_it_sec, run_ind_cpa, simulate, BitString, EvalConfig, MuddyConfig, Predicate};

/// Largest message length the page may request, in bits.
pub const MAX_MESSAGE_BITS: usize = 6;

fn frac(r: &Rational) -> String {
    rational::to_fraction_string(r)
}

fn parse_fraction(text: &str) -> Result<Rational, String> {
    rational::parse(text.trim()).ok_or_else(|| format!("not a fraction: {text:?}"))
}

fn parse_list(text: &str) -> Result<Vec<Rational>, String> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(parse_fraction).collect()
}

fn render(result: Result<Json, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Attacker posteriors of every message, one row per ciphertext, for the
/// Vernam system with key length `ell` repeated `blocks` times (plus the
/// first key bit when `plus_bit`). `weights` is `uniform` or a comma list
/// of message probabilities in message order.
pub fn posterior_table_json(ell: usize, blocks: usize, plus_bit: bool, weights: &str) -> Result<Json, String> {
    let sys = VernamSystem::new(ell, blocks, plus_bit).map_err(|e| e.to_string())?;
    if sys.message_len() > MAX_MESSAGE_BITS {
        return Err(format!("messages longer than {MAX_MESSAGE_BITS} bits"));
    }
    let messages = sys.all_messages();
    let dist = if weights.trim().eq_ignore_ascii_case("uniform") {
        MessageDistribution::Uniform
    } else {
        let ws = parse_list(weights)?;
        if ws.len() != messages.len() {
            return Err(format!("{} weights for {} messages", ws.len(), messages.len()));
        }
        MessageDistribution::Weights(messages.iter().cloned().zip(ws).collect())
    };
    let model = vernam_statespace(&sys, &dist).map_err(|e| e.to_string())?;
    let verdict = check_it_sec(&model, ATT, "m", "c").map_err(|e| e.to_string())?;
    let view = model.view(ATT).map_err(|e| e.to_string())?.clone();
    let mut rows = Vec::new();
    for class in model.space().partition(&view) {
        let c = class.key.get("c").map(ToString::to_string).unwrap_or_default();
        let mut posteriors = Vec::new();
        for m in &messages {
            let p = model
                .conditional_probability(ATT, &class.key, &Predicate::Top, &Predicate::field_is("m", m.clone()), &EvalConfig::default())
                .map_err(|e| e.to_string())?;
            posteriors.push(frac(&p));
        }
        rows.push(json!({ "c": c, "mass": frac(&class.mass), "posteriors": posteriors }));
    }
    let priors: Vec<String> = messages
        .iter()
        .map(|m| frac(&model.space().event_probability(|s| s.get("m").and_then(|v| v.as_bits()) == Some(m))))
        .collect();
    Ok(json!({
        "messages": messages.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "priors": priors,
        "rows": rows,
        "it_sec": verdict.holds,
        "witness": verdict.witness.map(|w| json!({
            "state": w.state.to_string(),
            "posterior": frac(&w.lhs),
            "prior": frac(&w.rhs),
        })),
    }))
}

/// The first-and-last-bit attacker on `ell+1`-bit messages, played either
/// against Vernam with the extra key bit or against a one-time pad.
pub fn cpa_game_json(ell: usize, plus_bit: bool, coin_bias: &str) -> Result<Json, String> {
    if ell == 0 || ell + 1 > MAX_MESSAGE_BITS {
        return Err(format!("ell must be between 1 and {}", MAX_MESSAGE_BITS - 1));
    }
    let p = parse_fraction(coin_bias)?;
    let sys = if plus_bit {
        VernamSystem::new(ell, 1, true)
    } else {
        VernamSystem::one_time_pad(ell + 1)
    }
    .map_err(|e| e.to_string())?;
    let att = VernamCpaAttacker::new(ell);
    let report = run_ind_cpa(&sys, &att, &p).map_err(|e| e.to_string())?;
    let observations: Vec<Json> = report
        .observations
        .iter()
        .map(|o| {
            json!({
                "c": o.view.get("c").map(ToString::to_string).unwrap_or_default(),
                "mass": frac(&o.mass),
                "posterior": frac(&o.posterior),
            })
        })
        .collect();
    Ok(json!({
        "success": frac(&report.success_probability),
        "blind_success": frac(&report.blind_success),
        "advantage": frac(&report.advantage()),
        "broken": report.beats_blind(),
        "indistinguishable": report.indistinguishable,
        "trials": report.trials,
        "observations": observations,
    }))
}

/// A muddy-children run. `noise` is a comma list of flip rates per child;
/// an empty `noise` means noiseless.
pub fn muddy_json(assignment: &str, noise: &str, threshold: &str, father: bool, max_rounds: usize) -> Result<Json, String> {
    let m: BitString = assignment.trim().parse().map_err(|_| format!("not a bit string: {assignment:?}"))?;
    let mut config = MuddyConfig::classical(m.clone());
    let eps = parse_list(noise)?;
    if !eps.is_empty() {
        if eps.len() != m.len() {
            return Err(format!("{} noise rates for {} children", eps.len(), m.len()));
        }
        config.noise = eps;
    }
    config.assignment = Assignment::Fixed(m);
    config.threshold = parse_fraction(threshold)?;
    config.father = father;
    config.max_rounds = max_rounds;
    let t = simulate(&config).map_err(|e| e.to_string())?;
    let rounds: Vec<Json> = t
        .rounds
        .iter()
        .map(|r| {
            json!({
                "round": r.round,
                "posteriors": r.posteriors.iter().map(frac).collect::<Vec<_>>(),
                "claimed": r.announcements.iter().map(|a| a.claimed).collect::<Vec<_>>(),
                "heard": r.announcements.iter().map(|a| a.transmitted).collect::<Vec<_>>(),
            })
        })
        .collect();
    let (reason, round) = match t.termination {
        Termination::AllKnow { round } => ("all_know", round),
        Termination::MaxRounds { rounds } => ("max_rounds", rounds),
    };
    Ok(json!({
        "assignment": t.assignment.to_string(),
        "rounds": rounds,
        "termination": { "reason": reason, "round": round },
    }))
}

#[wasm_bindgen]
pub fn posterior_table(ell: usize, blocks: usize, plus_bit: bool, weights: &str) -> String {
    render(posterior_table_json(ell, blocks, plus_bit, weights))
}

#[wasm_bindgen]
pub fn cpa_game(ell: usize, plus_bit: bool, coin_bias: &str) -> String {
    render(cpa_game_json(ell, plus_bit, coin_bias))
}

#[wasm_bindgen]
pub fn muddy_run(assignment: &str, noise: &str, threshold: &str, father: bool, max_rounds: usize) -> String {
    render(muddy_json(assignment, noise, threshold, father, max_rounds))
}
