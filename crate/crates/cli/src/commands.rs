use std::fs;

use cantor_ap::bounds::{
    corollary_bound, gaps_at_stage, lemma_bound, max_hits_scaled, max_hits_sliding, max_translates,
};
use cantor_ap::{
    empirical_max_length_with, find_common_point_with, is_k_good, verify_certificate, CantorParams,
    Certificate, Interval, Rational, TranslateFamily, Window,
};
use serde_json::{json, Value};

use crate::output::{document, emit, CliError, CliResult, Status};
use crate::{
    selection, BuildArgs, CorollaryArgs, DistArgs, FamilyArgs, FindApArgs, FindArgs, GoodArgs,
    LemmaArgs, SearchArgs, VerifyArgs,
};

fn parse_interval(s: &str) -> CliResult<Interval> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| CliError::invalid(format!("expected lo:hi, got {s:?}")))?;
    Ok(Interval::new(lo.parse()?, hi.parse()?)?)
}

/// `a..b` and `a..=b` are inclusive; otherwise a comma-separated list.
fn parse_n_list(s: &str) -> CliResult<Vec<u64>> {
    let bad = || CliError::invalid(format!("bad N list {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}

fn family(args: FamilyArgs) -> CliResult<TranslateFamily> {
    match (args.d, args.len) {
        (Some(d), Some(len)) => Ok(TranslateFamily::arithmetic_progression(d, len)?),
        _ if args.translates.is_empty() => Err(CliError::invalid(
            "give at least one --translate, or --d with --len",
        )),
        _ => Ok(TranslateFamily::new(args.translates)?),
    }
}

fn warn_if_beyond(p: &CantorParams, len: usize) {
    let cap = max_translates(p.n());
    if len as u64 > cap {
        eprintln!(
            "warning: {len} translates exceeds the guaranteed family size {cap} for N={}; refinement may fail",
            p.n()
        );
    }
}

pub fn build(a: BuildArgs) -> CliResult {
    let p = CantorParams::new(a.n)?;
    let level = p.stage_for_delta(&a.delta)?;
    let shift = a.translate.clone().unwrap_or_else(Rational::zero);
    let (set, window) = match &a.window {
        Some(w) => {
            let w = Window::new(parse_interval(w)?)?;
            (
                p.approximant_in_window(&a.delta, &shift, &w)?,
                Some(w.interval().clone()),
            )
        }
        None => {
            let global = p.global_approximant(&a.delta, a.budget)?;
            let set = if a.translate.is_some() {
                global.translate_mod1(&shift)
            } else {
                global
            };
            (set, None)
        }
    };
    let doc = document(json!({
        "N": p.n(),
        "delta": a.delta,
        "level": level,
        "translate": a.translate,
        "window": window,
        "components": set,
    }));
    emit(&doc, a.out.as_deref())?;
    Ok(Status::Ok)
}

pub fn good(a: GoodArgs) -> CliResult {
    let p = CantorParams::new(a.n)?;
    let fam = family(a.family)?;
    let interval = parse_interval(&a.interval)?;
    let g = is_k_good(&p, &fam, a.k, &interval)?;
    let v = merged(
        json!({ "N": p.n(), "translates": fam.translates() }),
        serde_json::to_value(&g).expect("goodness result serializes"),
    );
    emit(&document(v), a.out.as_deref())?;
    Ok(if g.good { Status::Ok } else { Status::Rejected })
}

/// Object `head` followed by the fields of object `tail`.
fn merged(mut head: Value, tail: Value) -> Value {
    if let (Value::Object(h), Value::Object(t)) = (&mut head, tail) {
        h.extend(t);
    }
    head
}

fn finish_find(cert: Certificate, out: Option<&std::path::Path>) -> CliResult {
    emit(&cert.to_json(), out)?;
    Ok(Status::Ok)
}

pub fn find(a: FindArgs) -> CliResult {
    let p = CantorParams::new(a.n)?;
    let fam = family(a.family)?;
    warn_if_beyond(&p, fam.len());
    let cert = find_common_point_with(&p, &fam, a.depth, selection(a.best_block))?;
    finish_find(cert, a.out.as_deref())
}

pub fn find_ap(a: FindApArgs) -> CliResult {
    let p = CantorParams::new(a.n)?;
    let fam = TranslateFamily::arithmetic_progression(a.d, a.len)?;
    warn_if_beyond(&p, fam.len());
    let cert = find_common_point_with(&p, &fam, a.depth, selection(a.best_block))?;
    finish_find(cert, a.out.as_deref())
}

pub fn verify(a: VerifyArgs) -> CliResult {
    let text = fs::read_to_string(&a.cert)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", a.cert.display())))?;
    let cert = Certificate::from_json(&text)?;
    let report = verify_certificate(&cert);
    print!("{report}");
    Ok(if report.accepted() {
        Status::Ok
    } else {
        Status::Rejected
    })
}

pub fn lemma_check(a: LemmaArgs) -> CliResult {
    let mut all_ok = true;
    println!(
        "{:>4} {:>3} {:>3} {:>10} {:>10} {:>3}",
        "N", "L", "k", "oracle_max", "bound", "ok"
    );
    for n in parse_n_list(&a.n)? {
        let p = CantorParams::new(n)?;
        for stage in 1..=a.max_stage {
            let gaps = gaps_at_stage(&p, stage, a.budget)?;
            for k in 0..stage {
                let found = max_hits_sliding(&gaps, &p.component_len(k))?.max_count;
                let bound = lemma_bound(stage, k)?;
                let ok = found <= bound;
                all_ok &= ok;
                println!(
                    "{n:>4} {stage:>3} {k:>3} {found:>10} {bound:>10} {:>3}",
                    yes_no(ok)
                );
            }
        }
    }
    Ok(if all_ok { Status::Ok } else { Status::Rejected })
}

pub fn corollary_check(a: CorollaryArgs) -> CliResult {
    if !a.min_delta.is_positive() {
        return Err(CliError::invalid("--min-delta must be positive"));
    }
    let mut all_ok = true;
    println!(
        "{:>4} {:>3} {:>3} {:>14} {:>10} {:>10} {:>3}",
        "N", "L", "k", "delta", "oracle_max", "bound", "ok"
    );
    for n in parse_n_list(&a.n)? {
        let p = CantorParams::new(n)?;
        for k in 0..=a.max_k {
            let scale = p.scale(k);
            for stage in 1.. {
                let delta = &p.gap_size(stage)? / &scale;
                if delta < a.min_delta {
                    break;
                }
                if delta > Rational::one() {
                    continue;
                }
                let found = max_hits_scaled(&p, k, &delta, a.budget)?;
                let bound = corollary_bound(&p, &delta)?;
                let ok = found <= bound;
                all_ok &= ok;
                println!(
                    "{n:>4} {stage:>3} {k:>3} {:>14} {found:>10} {bound:>10} {:>3}",
                    delta.to_string(),
                    yes_no(ok)
                );
            }
        }
    }
    Ok(if all_ok { Status::Ok } else { Status::Rejected })
}

fn yes_no(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "NO"
    }
}

pub fn dist(a: DistArgs) -> CliResult {
    let p = CantorParams::new(a.n)?;
    let d = p.distance_to_x(&a.x, a.max_level)?;
    let v = merged(
        json!({ "N": p.n(), "x": a.x, "max_level": a.max_level }),
        serde_json::to_value(&d).expect("distance serializes"),
    );
    emit(&document(v), a.out.as_deref())?;
    Ok(Status::Ok)
}

pub fn search(a: SearchArgs) -> CliResult {
    let p = CantorParams::new(a.n)?;
    let report = empirical_max_length_with(&p, &a.d, a.depth, a.cap, selection(a.best_block))?;
    let v = serde_json::to_value(&report).expect("report serializes");
    emit(&document(v), a.out.as_deref())?;
    Ok(Status::Ok)
}
