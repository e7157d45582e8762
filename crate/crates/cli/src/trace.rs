//! Line-oriented trace files: rendering, writing, and replay.
//!
//! Each line is `t=<time> rule=<label> | <object-id>: <attr>=<old>→<new> ...`
//! plus `messages:` entries for sent/consumed messages. The line
//! `CYCLE-START` separates a counterexample's prefix from its cycle.
//! Comment lines start with `#`.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use crosslight_core::checker::{EdgeLabel, TraceStep};
use crosslight_core::environments::FailurePhase;
use crosslight_core::kernel::{Configuration, Payload};
use crosslight_core::Params;

/// Attribute-level differences of one object between two configurations.
fn payload_diff(old: &Payload, new: &Payload, out: &mut Vec<(String, String, String)>) {
    let mut push = |attr: &str, o: String, n: String| {
        if o != n {
            out.push((attr.to_owned(), o, n));
        }
    };
    match (old, new) {
        (Payload::CarLight(a), Payload::CarLight(b)) => {
            push("state", format!("{:?}", a.state), format!("{:?}", b.state));
            push("lights", a.lights.to_string(), b.lights.to_string());
            push("timer", a.timer.to_string(), b.timer.to_string());
            push("redTime", a.red_time.to_string(), b.red_time.to_string());
            push("greenTime", a.green_time.to_string(), b.green_time.to_string());
            push("pedWaiting", a.ped_waiting.to_string(), b.ped_waiting.to_string());
        }
        (Payload::PedLight(a), Payload::PedLight(b)) => {
            push("mode", format!("{:?}", a.mode), format!("{:?}", b.mode));
            push("color", format!("{:?}", a.color), format!("{:?}", b.color));
            push("timer", a.timer.to_string(), b.timer.to_string());
            push("buttonLit", a.button_lit.to_string(), b.button_lit.to_string());
        }
        (Payload::Approach(a), Payload::Approach(b)) => {
            push("carsPresent", a.cars_present.to_string(), b.cars_present.to_string());
        }
        (Payload::PeriodicEnv(a), Payload::PeriodicEnv(b)) => {
            push(
                "timeToNextEvents",
                a.time_to_next_events.to_string(),
                b.time_to_next_events.to_string(),
            );
        }
        (Payload::EmergencyEnv(a), Payload::EmergencyEnv(b)) => {
            push(
                "timeToNextEvents",
                a.time_to_next_events.to_string(),
                b.time_to_next_events.to_string(),
            );
            push("emergencyOn", a.emergency_on.to_string(), b.emergency_on.to_string());
        }
        (Payload::FailureEnv(a), Payload::FailureEnv(b)) => {
            let phase = |p: &FailurePhase| match p {
                FailurePhase::Up(t) => format!("up({t})"),
                FailurePhase::Down(t) => format!("down({t})"),
            };
            push("phase", phase(&a.phase), phase(&b.phase));
        }
        _ => push("kind", format!("{old:?}"), format!("{new:?}")),
    }
}

/// Render one transition as a trace line.
pub fn render_step(time: u64, label: &EdgeLabel, from: &Configuration, to: &Configuration) -> String {
    let mut line = format!("t={time} rule={label}");
    for (oid, new_payload) in to.objects() {
        if let Some(old_payload) = from.object(oid) {
            let mut diffs = Vec::new();
            payload_diff(old_payload, new_payload, &mut diffs);
            for (attr, o, n) in diffs {
                let _ = write!(line, " | {oid}: {attr}={o}\u{2192}{n}");
            }
        }
    }
    // Message multiset changes.
    let mut old_msgs: Vec<String> = from.messages().iter().map(|m| m.to_string()).collect();
    for m in to.messages() {
        let text = m.to_string();
        if let Some(pos) = old_msgs.iter().position(|x| *x == text) {
            old_msgs.remove(pos);
        } else {
            let _ = write!(line, " | messages: sent={text}");
        }
    }
    for text in old_msgs {
        let _ = write!(line, " | messages: consumed={text}");
    }
    line
}

/// Render a counterexample lasso (prefix, `CYCLE-START`, cycle).
pub fn render_lasso(
    initial: &Configuration,
    prefix: &[TraceStep],
    cycle: &[TraceStep],
) -> String {
    let mut out = String::new();
    let mut time = 0u64;
    let mut current = initial;
    for (label, state) in prefix {
        if let EdgeLabel::Tick(d) = label {
            time += d;
        }
        out.push_str(&render_step(time, label, current, state));
        out.push('\n');
        current = state;
    }
    out.push_str("CYCLE-START\n");
    for (label, state) in cycle {
        if let EdgeLabel::Tick(d) = label {
            time += d;
        }
        out.push_str(&render_step(time, label, current, state));
        out.push('\n');
        current = state;
    }
    out
}

/// Re-execute a trace from the initial configuration through the kernel
/// step function, failing on the first line that no successor matches.
pub fn replay(initial: &Configuration, params: &Params, trace: &str) -> Result<usize> {
    let mut current = initial.clone().normalized();
    let mut time = 0u64;
    let mut replayed = 0usize;
    for (lineno, raw) in trace.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line == "CYCLE-START" {
            continue;
        }
        // A stutter step stays in place; it marks the self-loop that makes a
        // finite violating prefix into an infinite path.
        if line == render_step(time, &EdgeLabel::Stutter, &current, &current) {
            replayed += 1;
            continue;
        }
        let successors = crosslight_core::checker::graph::step(&current, params);
        let mut matched = None;
        for (label, succ) in &successors {
            let t = match label {
                EdgeLabel::Tick(d) => time + d,
                _ => time,
            };
            if render_step(t, label, &current, succ) == line {
                matched = Some((t, succ.clone()));
                break;
            }
        }
        match matched {
            Some((t, succ)) => {
                time = t;
                current = succ;
                replayed += 1;
            }
            None => {
                bail!(
                    "replay diverged at line {}: no enabled transition matches `{line}` \
                     ({} successors enabled)",
                    lineno + 1,
                    successors.len()
                );
            }
        }
    }
    if replayed == 0 {
        bail!("trace contains no transitions");
    }
    Ok(replayed)
}

/// Read a trace file.
pub fn read_trace(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading trace {}", path.display()))
}
