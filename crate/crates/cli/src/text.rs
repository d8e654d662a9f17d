use std::fmt::Write;

use gameforms::lab::{ClassReport, SuiteReport};
use gameforms::session::VerdictReport;

use crate::{DbReport, EnumerateReport, EvalReport, RefuteReport};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn eval(r: &EvalReport) -> String {
    let mut out = String::new();
    let form = r
        .form
        .clone()
        .unwrap_or_else(|| format!("<{} characters, not shown>", r.printed_length));
    let _ = writeln!(out, "form      {form}");
    let _ = writeln!(out, "id        {}", r.id);
    let _ = writeln!(out, "birthday  {}", r.birthday);
    let _ = writeln!(out, "outcome   {}", r.outcome);
    let _ = writeln!(out, "number    {}", yes_no(r.flags.is_number));
    let _ = writeln!(out, "impartial {}", yes_no(r.flags.is_impartial));
    let _ = writeln!(out, "set       {}", yes_no(r.flags.is_set));
    out
}

pub fn verdict(r: &VerdictReport) -> String {
    format!(
        "{} {} {}: {}\n({} nodes created, {} cache hits, {} ms)\n",
        r.lhs, r.relation, r.rhs, r.verdict, r.stats.nodes_created, r.stats.cache_hits, r.stats.elapsed_ms
    )
}

pub fn refute(r: &RefuteReport) -> String {
    match &r.witness {
        Some(w) => {
            let games: Vec<String> = w.games.iter().map(|g| g.to_string()).collect();
            format!(
                "separated by multiplier {} (outcomes {} vs {})\n",
                games.join(" with addend "),
                w.observed_outcomes.0,
                w.observed_outcomes.1
            )
        }
        None => format!(
            "no multiplier among the {} forms of birthday <= {} separates {} from {}\n",
            r.pool_size, r.pool_birthday, r.lhs, r.rhs
        ),
    }
}

fn classes(r: &ClassReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "relation      {}", r.relation_name);
    let _ = writeln!(
        out,
        "universe      {} ({} forms)",
        r.universe_description, r.universe_size
    );
    let _ = writeln!(out, "classCount    {}", r.class_count);
    let _ = writeln!(out, "pairsTested   {}", r.pairs_tested);
    for class in &r.classes {
        let ids: Vec<String> = class.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(out, "  {}", ids.join(" "));
    }
    out
}

pub fn enumerate(r: &EnumerateReport) -> String {
    let mut out = format!("{} forms of birthday <= {}\n", r.count, r.birthday);
    if let Some(c) = &r.classes {
        out.push_str(&classes(c));
    }
    out
}

pub fn suite(r: &SuiteReport) -> String {
    let mut out = String::new();
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "suite {}: {status}", r.suite_name);
    if let Some(seed) = r.seed {
        let _ = writeln!(out, "seed {seed}");
    }
    let width = r.checks.keys().map(|k| k.chars().count()).max().unwrap_or(0);
    for (name, count) in &r.checks {
        let failed = r.failures.iter().filter(|f| &f.check == name).count();
        let _ = writeln!(out, "  {name:<width$}  {count:>7} run  {failed:>5} failed");
    }
    for f in &r.failures {
        let ids: Vec<String> = f.inputs.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(
            out,
            "FAILED {} on [{}]: expected {}, got {}",
            f.check,
            ids.join(", "),
            f.expected,
            f.got
        );
    }
    for (key, value) in &r.findings {
        let _ = writeln!(out, "{key}: {value}");
    }
    let _ = writeln!(out, "{} checks in {} ms", r.checks_run, r.elapsed_ms);
    out
}

pub fn db(r: &DbReport) -> String {
    format!(
        "{}: {} nodes, {} cached verdicts, round trip {}\n",
        r.path.display(),
        r.nodes,
        r.memo_entries,
        if r.round_trip { "identical" } else { "DIFFERS" }
    )
}
