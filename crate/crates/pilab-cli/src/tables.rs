//! Human-readable table rendering. Decompositions are truncated to the ten
//! largest multiplicities; the JSON output is always complete.

use pilab_core::codim::report::{CocharEntry, ExponentReport, Report};

fn entry_string(e: &CocharEntry) -> String {
    let lambda: Vec<String> = e.lambda.iter().map(u32::to_string).collect();
    match &e.mu {
        Some(mu) => {
            let mu: Vec<String> = mu.iter().map(u32::to_string).collect();
            format!("({})|({}):{}", lambda.join(","), mu.join(","), e.m)
        }
        None => format!("({}):{}", lambda.join(","), e.m),
    }
}

fn cocharacter_string(entries: &[CocharEntry]) -> String {
    if entries.is_empty() {
        return "-".to_string();
    }
    let mut sorted: Vec<&CocharEntry> = entries.iter().collect();
    sorted.sort_by(|a, b| b.m.cmp(&a.m));
    let shown: Vec<String> = sorted.iter().take(10).map(|e| entry_string(e)).collect();
    let mut out = shown.join(" ");
    if sorted.len() > 10 {
        out.push_str(&format!(" (+{} more)", sorted.len() - 10));
    }
    out
}

pub fn print_codim_table(report: &Report) {
    println!(
        "target: {}   mode: {}   spanning: {}   arithmetic: {}{}",
        report.target,
        report.mode,
        report.spanning,
        report.arithmetic.mode,
        report
            .arithmetic
            .prime
            .as_ref()
            .map(|p| format!(" (prime {p}, seed {})", report.arithmetic.seed))
            .unwrap_or_default(),
    );
    let count_label = if report.mode == "graded" { "c_n_gr" } else { "c_n" };
    println!(
        "{:>4} {:>12} {:>6} {:>8} {:>10} {:>10}  cocharacter",
        "n", count_label, "l_n", "max_d", "root", "ratio"
    );
    for row in &report.rows {
        let c = row
            .c_n
            .as_deref()
            .or(row.c_n_gr.as_deref())
            .unwrap_or("-");
        let cochar = if row.cocharacter.is_empty() {
            match &row.signatures {
                Some(sigs) => {
                    let total: usize = sigs.iter().map(|s| s.cocharacter.len()).sum();
                    format!("[{} signatures, {total} entries]", sigs.len())
                }
                None => "-".to_string(),
            }
        } else {
            cocharacter_string(&row.cocharacter)
        };
        println!(
            "{:>4} {:>12} {:>6} {:>8} {:>10} {:>10}  {}",
            row.n,
            c,
            row.l_n,
            row.max_d_lambda,
            row.nth_root.as_deref().unwrap_or("-"),
            row.ratio.as_deref().unwrap_or("-"),
            cochar,
        );
    }
}

pub fn print_exponent_table(target: &str, report: &ExponentReport) {
    match report.reference_exponent {
        Some(r) => println!("target: {target}   reference exponent: {r}"),
        None => println!("target: {target}"),
    }
    println!("{:>4} {:>14} {:>12} {:>12}", "n", "c_n", "nth_root", "ratio");
    for row in &report.rows {
        println!(
            "{:>4} {:>14} {:>12} {:>12}{}",
            row.n,
            row.c_n,
            row.nth_root,
            row.ratio.as_deref().unwrap_or("-"),
            if row.decreased { "  (decreased)" } else { "" },
        );
    }
    if let Some(r) = report.reference_exponent {
        println!("reference line: {r} (predicted limit; small degrees need not be close)");
    }
    if report.expect_monotone && !report.monotonicity_violations.is_empty() {
        println!(
            "monotonicity violations at n = {:?}",
            report.monotonicity_violations
        );
    }
}
