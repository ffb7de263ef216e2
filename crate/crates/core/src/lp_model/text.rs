//! Plain text program format.
//!
//! ```text
//! # comment
//! maximize 1 1
//! st
//! 1 0 <= 1
//! 0 1 <= 3/2
//! ```

use std::io::Write;

use crate::error::{Error, Result};
use crate::num::{format_rational, parse_rational, Rational};

use super::LinearProgram;

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, message: message.into() }
}

fn parse_numbers(tokens: &[&str], line: usize) -> Result<Vec<Rational>> {
    tokens
        .iter()
        .map(|t| parse_rational(t).ok_or_else(|| syntax(line, format!("not a number: {t:?}"))))
        .collect()
}

/// Parses the text format. Line numbers in errors are 1-based.
pub fn parse_lp(text: &str) -> Result<LinearProgram> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line_no, header) = lines.next().ok_or_else(|| syntax(1, "missing objective line"))?;
    let mut tokens = header.split_whitespace();
    match tokens.next() {
        Some(t) if t.eq_ignore_ascii_case("maximize") || t.eq_ignore_ascii_case("max") => {}
        _ => return Err(syntax(line_no, "expected `maximize` followed by the objective")),
    }
    let tokens: Vec<&str> = tokens.collect();
    if tokens.is_empty() {
        return Err(syntax(line_no, "objective line is empty"));
    }
    let c0 = parse_numbers(&tokens, line_no)?;
    let n = c0.len();

    match lines.next() {
        Some((_, l)) if l.eq_ignore_ascii_case("st") || l.eq_ignore_ascii_case("subject to") => {}
        Some((no, _)) => return Err(syntax(no, "expected `st`")),
        None => return Err(syntax(line_no + 1, "expected `st`")),
    }

    let mut a = Vec::new();
    let mut b = Vec::new();
    for (no, l) in lines {
        let (lhs, rhs) = l.split_once("<=").ok_or_else(|| syntax(no, "constraint must have the form `a1 .. an <= b`"))?;
        let lhs_tokens: Vec<&str> = lhs.split_whitespace().collect();
        if lhs_tokens.len() != n {
            return Err(syntax(no, format!("expected {n} coefficients, found {}", lhs_tokens.len())));
        }
        let rhs_tokens: Vec<&str> = rhs.split_whitespace().collect();
        if rhs_tokens.len() != 1 {
            return Err(syntax(no, "right hand side must be a single number"));
        }
        let row = parse_numbers(&lhs_tokens, no)?;
        if row.iter().all(num_traits::Zero::is_zero) {
            return Err(syntax(no, "constraint row is zero"));
        }
        a.push(row);
        b.extend(parse_numbers(&rhs_tokens, no)?);
    }
    LinearProgram::new(a, b, c0)
}

/// Canonical text form with reduced fractions; `parse_lp` inverts it.
pub fn to_lp_string(lp: &LinearProgram) -> String {
    let join = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(" ");
    let mut out = format!("maximize {}\nst\n", join(lp.objective()));
    for (row, rhs) in lp.rows().iter().zip(lp.rhs()) {
        out.push_str(&format!("{} <= {}\n", join(row), format_rational(rhs)));
    }
    out
}

/// Writes `[A | b]` as CSV with header `col0..col{n-1},b`.
pub fn write_matrix_csv<W: Write>(lp: &LinearProgram, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = (0..lp.num_vars()).map(|j| format!("col{j}")).collect();
    header.push("b".into());
    w.write_record(&header)?;
    for (row, rhs) in lp.rows().iter().zip(lp.rhs()) {
        let rec: Vec<String> = row.iter().chain(std::iter::once(rhs)).map(format_rational).collect();
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{frac, int};

    #[test]
    fn parses_the_documented_example() {
        let lp = parse_lp("# demo\nmaximize 1 1\nst\n1 0 <= 1\n0 1 <= 3/2 # upper\n").unwrap();
        assert_eq!(lp.num_vars(), 2);
        assert_eq!(lp.rhs(), &[int(1), frac(3, 2)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_lp("maximize 1 1\nst\n1 0 <= 1\n1 x <= 2\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 4, .. }), "{e:?}");
        let e = parse_lp("maximize 1 1\nst\n1 0 0 <= 1\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 3, .. }), "{e:?}");
        let e = parse_lp("maximize\nst\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, .. }), "{e:?}");
    }

    #[test]
    fn serialization_round_trips() {
        let text = "maximize 1/2 -3\nst\n2/4 1 <= 7\n-1 0 <= 0\n";
        let lp = parse_lp(text).unwrap();
        let again = parse_lp(&to_lp_string(&lp)).unwrap();
        assert_eq!(lp, again);
        assert!(to_lp_string(&lp).contains("1/2 1 <= 7"));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let lp = parse_lp("maximize 1 0\nst\n1 2 <= 3\n").unwrap();
        let mut buf = Vec::new();
        write_matrix_csv(&lp, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "col0,col1,b\n1,2,3\n");
    }
}
