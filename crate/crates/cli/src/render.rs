//! Human-readable output. Line formats follow the reference Python scripts
//! so their output can be diffed against ours token for token.

use std::fmt::Write;

use erdos_straus_core::{ScanOutcome, ScanReport, SearchStatus, SeriesReport, Triple};

/// Formats `v` the way Python's `repr(float)` does.
pub fn py_float(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0.0".into()
        } else {
            "0.0".into()
        };
    }
    // `{:e}` yields the shortest round-trip digits, e.g. "-2.5e-7".
    let sci = format!("{v:e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();

    let mut out = String::from(sign);
    if (-4..16).contains(&exp) {
        if exp >= 0 {
            let int_len = exp as usize + 1;
            if digits.len() <= int_len {
                out.push_str(&digits);
                out.extend(std::iter::repeat_n('0', int_len - digits.len()));
                out.push_str(".0");
            } else {
                out.push_str(&digits[..int_len]);
                out.push('.');
                out.push_str(&digits[int_len..]);
            }
        } else {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
            out.push_str(&digits);
        }
    } else {
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        let _ = write!(out, "e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    out
}

/// Python list formatting, e.g. `[3, 7]`.
pub fn py_list(values: &[u64]) -> String {
    format!("{values:?}")
}

/// Per-`n` line. `s = 1` uses the classical wording; larger `s` appends the
/// exponent like the zeta-version script.
pub fn outcome_line(o: &ScanOutcome, s: u32) -> String {
    let n = o.n;
    match (&o.witness, o.status) {
        (Some(w), _) if s == 1 => format!("n = {n}: OK (x = {}, t = {}, q = {})", w.x, w.t, w.q),
        (Some(w), _) => format!(
            "n = {n}: OK (x = {}, t = {}, q = {}) for s = {s}",
            w.x, w.t, w.q
        ),
        (None, SearchStatus::TimedOut) if s == 1 => format!("n = {n}:  Time budget exhausted"),
        (None, SearchStatus::TimedOut) => format!("n = {n}: Time budget exhausted for s = {s}"),
        (None, _) if s == 1 => format!("n = {n}:  No solution found within bounds"),
        (None, _) => format!("n = {n}: No solution found within bounds for s = {s}"),
    }
}

/// The summary block that closes a scan, starting with a blank line.
pub fn summary_block(r: &ScanReport) -> String {
    let mut out = String::new();
    let zeta = r.s > 1;
    out.push('\n');
    if zeta {
        out.push_str("========== Zeta Version Summary ==========\n");
        let _ = writeln!(
            out,
            "Interval tested: n in [{}, {}] with s = {}",
            r.n_min, r.n_max, r.s
        );
    } else {
        out.push_str("========== Summary ==========\n");
        let _ = writeln!(out, "Interval tested: n in [{}, {}]", r.n_min, r.n_max);
    }
    let _ = writeln!(
        out,
        "Captured: {} out of {} -> {:.2}%",
        r.captured,
        r.total(),
        r.success_rate
    );
    if !r.failed_n.is_empty() {
        out.push_str("Failed to capture the following n values:\n");
        let _ = writeln!(out, "{}", py_list(&r.failed_n));
        let timed_out: Vec<u64> = r.timed_out().collect();
        if !timed_out.is_empty() {
            let _ = writeln!(
                out,
                "Of these, the time budget ran out for: {}",
                py_list(&timed_out)
            );
        }
    } else if zeta {
        out.push_str("All values were successfully captured for the zeta version.\n");
    } else {
        out.push_str("Ok All values of n were successfully captured.\n");
    }
    out
}

/// The four lines of the series check, then the exact verdict.
pub fn series_block(r: &SeriesReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "N_max = {}", r.n_max);
    let _ = writeln!(out, "zeta( {} ) - 1 ~=  {}", r.s, py_float(r.left_float));
    let _ = writeln!(out, "Series approach: {}", py_float(r.right_float));
    let _ = writeln!(out, "Absolute error: {}", py_float(r.abs_error_float));
    let _ = writeln!(
        out,
        "Exact equality: {}",
        if r.exact_equal { "True" } else { "False" }
    );
    if !r.failures.is_empty() {
        let _ = writeln!(
            out,
            "No witness within bounds for: {}",
            py_list(&r.failures)
        );
    }
    out
}

/// `[(1, 4, 12), (1, 6, 6)]`.
pub fn triple_list(triples: &[Triple]) -> String {
    let items: Vec<String> = triples
        .iter()
        .map(|t| format!("({}, {}, {})", t.x, t.y, t.z))
        .collect();
    format!("[{}]", items.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use erdos_straus_core::{scan_range, SearchConfig, Witness};

    #[test]
    fn python_float_repr() {
        let cases = [
            (0.20203482859170052, "0.20203482859170052"),
            (0.0, "0.0"),
            (-0.0, "-0.0"),
            (1.0, "1.0"),
            (123.5, "123.5"),
            (1e16, "1e+16"),
            (1.5e16, "1.5e+16"),
            (9999999999999998.0, "9999999999999998.0"),
            (1e-5, "1e-05"),
            (0.0001, "0.0001"),
            (2.5e-7, "2.5e-07"),
            (-3.25, "-3.25"),
            (5.551115123125783e-17, "5.551115123125783e-17"),
            (1e300, "1e+300"),
        ];
        for (v, want) in cases {
            assert_eq!(py_float(v), want, "{v:e}");
        }
    }

    #[test]
    fn outcome_lines() {
        let w = Witness {
            x: 2u32.into(),
            t: 4u32.into(),
            q: 8u32.into(),
            y: 4u32.into(),
            z: 20u32.into(),
        };
        let found = ScanOutcome {
            n: 5,
            status: SearchStatus::Found,
            witness: Some(w),
            x_tried: 1,
            t_tried: 3,
        };
        assert_eq!(outcome_line(&found, 1), "n = 5: OK (x = 2, t = 4, q = 8)");
        assert_eq!(
            outcome_line(&found, 3),
            "n = 5: OK (x = 2, t = 4, q = 8) for s = 3"
        );
        let missed = ScanOutcome {
            witness: None,
            status: SearchStatus::Exhausted,
            ..found
        };
        assert_eq!(
            outcome_line(&missed, 1),
            "n = 5:  No solution found within bounds"
        );
        assert_eq!(
            outcome_line(&missed, 2),
            "n = 5: No solution found within bounds for s = 2"
        );
    }

    #[test]
    fn summary_formats() {
        let r = scan_range(2, 4, 1, &SearchConfig::default()).unwrap();
        assert_eq!(
            summary_block(&r),
            "\n========== Summary ==========\nInterval tested: n in [2, 4]\n\
             Captured: 3 out of 3 -> 100.00%\nOk All values of n were successfully captured.\n"
        );
        let cfg = SearchConfig {
            x_multiplier: 1,
            t_window: 1,
            ..SearchConfig::default()
        };
        let r = scan_range(2, 30, 2, &cfg).unwrap();
        let text = summary_block(&r);
        assert!(text.starts_with("\n========== Zeta Version Summary ==========\nInterval tested: n in [2, 30] with s = 2\n"));
        if !r.failed_n.is_empty() {
            assert!(text.contains("Failed to capture the following n values:\n["));
        }
    }

    #[test]
    fn triple_formatting() {
        let t = [Triple { x: 1, y: 4, z: 12 }, Triple { x: 1, y: 6, z: 6 }];
        assert_eq!(triple_list(&t), "[(1, 4, 12), (1, 6, 6)]");
        assert_eq!(triple_list(&[]), "[]");
    }
}
