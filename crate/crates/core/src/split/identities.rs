use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::report::VerdictReport;
use crate::split::volume::{canonical_pair, count_splitters};

/// Checks the counting identities behind "more overlap never makes two sets
/// harder to split", for every valid overlap `b`.
///
/// With `S, T` the canonical pair, `x` the lowest element of `S \ T`, `y` the
/// lowest of `T \ S`:
/// * `s, t` even: `𝓐`, `𝓑`, `𝓒` split `(S, T)`, `(S-x, T-y)`, `(S, T-y+x)`;
///   checks `4|𝓐| = |𝓑|`, `|𝓑|/4 <= |𝓒|` and `|𝓐| <= |𝓒|`.
/// * `s` odd, `t` even: with `z` the lowest element outside `S ∪ T`, `𝓐`,
///   `𝓐'`, `𝓒'`, `𝓒` split `(S, T)`, `(S+z, T)`, `(S+z, T+x-y)`, `(S, T+x-y)`;
///   checks `|𝓐| = 2|𝓐'|`, `|𝓐'| <= |𝓒'|`, `|𝓒| = 2|𝓒'|` and `|𝓐| <= |𝓒|`.
///   Overlaps leaving no spare `z` in `[k]` are skipped.
pub fn counting_identities_check(s: usize, t: usize, k: usize) -> Result<VerdictReport> {
    let limits = Limits::default();
    let even = match (s % 2, t % 2) {
        (0, 0) => true,
        (1, 0) => false,
        _ => {
            return Err(Error::domain(format!(
                "identities need s, t both even or s odd and t even, got s={s} t={t}"
            )))
        }
    };
    if s == 0 || t == 0 || s > k || t > k {
        return Err(Error::domain(format!("need 1 <= s, t <= k, got s={s} t={t} k={k}")));
    }
    let mut report = VerdictReport::new(
        if even {
            "counting-identities-even"
        } else {
            "counting-identities-mixed"
        },
        format!("s={s} t={t} k={k}"),
    );
    let spare = if even { 0 } else { 1 };
    for b in 0..s.min(t) {
        if s + t - b + spare > k {
            continue;
        }
        let (sm, tm) = canonical_pair(s, t, b, k)?;
        let x = 1u64 << (sm & !tm).trailing_zeros();
        let y = 1u64 << (tm & !sm).trailing_zeros();
        let count = |a: u64, b: u64| count_splitters(k, &[a, b], &limits);
        report.instances += 1;
        let mut check = |ok: bool, what: String| {
            if ok {
                report.note(what);
            } else {
                report.violation(what);
            }
        };
        if even {
            let a = count(sm, tm)?;
            let bb = count(sm & !x, tm & !y)?;
            let c = count(sm, (tm & !y) | x)?;
            check(4 * a == bb, format!("b={b}: 4|A| = 4*{a} vs |B| = {bb}"));
            check(bb <= 4 * c, format!("b={b}: |B|/4 = {bb}/4 <= |C| = {c}"));
            check(a <= c, format!("b={b}: |A| = {a} <= |C| = {c}"));
        } else {
            let z = 1u64 << (!(sm | tm)).trailing_zeros();
            let a = count(sm, tm)?;
            let a1 = count(sm | z, tm)?;
            let c1 = count(sm | z, (tm | x) & !y)?;
            let c = count(sm, (tm | x) & !y)?;
            check(a == 2 * a1, format!("b={b}: |A| = {a} vs 2|A'| = 2*{a1}"));
            check(a1 <= c1, format!("b={b}: |A'| = {a1} <= |C'| = {c1}"));
            check(c == 2 * c1, format!("b={b}: |C| = {c} vs 2|C'| = 2*{c1}"));
            check(a <= c, format!("b={b}: |A| = {a} <= |C| = {c}"));
        }
    }
    if report.instances == 0 {
        return Err(Error::domain(format!("no valid overlap for s={s} t={t} k={k}")));
    }
    report.premise_hits = report.instances;
    Ok(report)
}
