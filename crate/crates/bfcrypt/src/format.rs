//! Text formats: ANF expressions, truth-table hex and vectorial function files.
//!
//! ANF grammar, whitespace insignificant:
//!
//! ```text
//! expr := term ('+' term)*
//! term := '0' | '1' | var ('*' var)*
//! var  := 'x' DECIMAL        (1-based)
//! ```
//!
//! Truth-table hex is `n=<k>:` followed by the `2^k` table bits packed
//! LSB-first into bytes, each byte as two lowercase hex digits.

use bfcrypt_core::{Anf, TruthTable, VectorialBf, MAX_VARS};

use crate::error::CliError;

/// A syntax error at a 1-based column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(column: usize, message: impl Into<String>) -> Self {
        ParseError { column, message: message.into() }
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }
}

/// Parsed expression before `n` is fixed: monomial masks and the largest index.
struct RawAnf {
    monomials: Vec<u32>,
    max_var: usize,
}

fn parse_raw(input: &str) -> Result<RawAnf, ParseError> {
    let mut lx = Lexer { bytes: input.as_bytes(), pos: 0 };
    let mut monomials = Vec::new();
    let mut max_var = 0;
    loop {
        let col = {
            lx.skip_ws();
            lx.column()
        };
        match lx.peek() {
            None => return Err(ParseError::at(col, "expected a term")),
            Some(b'0') | Some(b'1') => {
                let c = lx.digits().unwrap();
                match c {
                    "0" => {}
                    "1" => monomials.push(0),
                    _ => return Err(ParseError::at(col, format!("unexpected constant `{c}`"))),
                }
            }
            Some(b'x') => {
                let mut mask = 0u32;
                loop {
                    lx.skip_ws();
                    let vcol = lx.column();
                    if lx.peek() != Some(b'x') {
                        return Err(ParseError::at(vcol, "expected a variable `x<k>`"));
                    }
                    lx.pos += 1;
                    let digits = lx
                        .digits()
                        .ok_or_else(|| ParseError::at(vcol + 1, "expected a variable index"))?;
                    let var: usize = digits
                        .parse()
                        .ok()
                        .filter(|&v| (1..=MAX_VARS).contains(&v))
                        .ok_or_else(|| {
                            ParseError::at(vcol, format!("variable index {digits} outside 1..={MAX_VARS}"))
                        })?;
                    mask |= 1 << (var - 1);
                    max_var = max_var.max(var);
                    if lx.peek() != Some(b'*') {
                        break;
                    }
                    lx.pos += 1;
                }
                monomials.push(mask);
            }
            Some(c) => {
                return Err(ParseError::at(col, format!("unexpected character `{}`", c as char)))
            }
        }
        lx.skip_ws();
        let col = lx.column();
        match lx.peek() {
            None => break,
            Some(b'+') => lx.pos += 1,
            Some(c) => {
                return Err(ParseError::at(col, format!("expected `+`, found `{}`", c as char)))
            }
        }
    }
    Ok(RawAnf { monomials, max_var })
}

/// Parses an ANF. With `n = None` the variable count is the largest index
/// used (at least 1). Repeated monomials cancel.
pub fn parse_anf(input: &str, n: Option<usize>) -> Result<Anf, CliError> {
    let raw = parse_raw(input).map_err(|e| CliError::parse(None, e))?;
    let n = match n {
        Some(n) if raw.max_var > n => {
            return Err(CliError::Mismatch(format!(
                "expression uses x{} but n = {n}",
                raw.max_var
            )))
        }
        Some(n) => n,
        None => raw.max_var.max(1),
    };
    Ok(Anf::from_monomials(n, raw.monomials)?)
}

fn monomial_key(m: u32) -> (std::cmp::Reverse<u32>, Vec<u32>) {
    let vars = (0..32).filter(|i| m >> i & 1 == 1).collect();
    (std::cmp::Reverse(m.count_ones()), vars)
}

/// Canonical text: monomials by descending degree, then by variable
/// indices; `0` for the zero function.
pub fn format_anf(f: &Anf) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut ms = f.monomials().to_vec();
    ms.sort_by_key(|&m| monomial_key(m));
    ms.iter()
        .map(|&m| {
            if m == 0 {
                "1".to_string()
            } else {
                (0..32)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| format!("x{}", i + 1))
                    .collect::<Vec<_>>()
                    .join("*")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn format_tt_hex(t: &TruthTable) -> String {
    let mut out = format!("n={}:", t.n());
    let bytes = (t.len() / 8).max(1);
    for i in 0..bytes {
        let word = t.words()[i / 8];
        out.push_str(&format!("{:02x}", (word >> (8 * (i % 8))) as u8));
    }
    out
}

pub fn parse_tt_hex(input: &str) -> Result<TruthTable, CliError> {
    let err = |column: usize, msg: String| CliError::parse(None, ParseError::at(column, msg));
    let s = input.trim();
    let lead = input.len() - input.trim_start().len();
    let rest = s.strip_prefix("n=").ok_or_else(|| err(lead + 1, "expected `n=`".into()))?;
    let colon = rest.find(':').ok_or_else(|| err(lead + 3, "expected `:` after n".into()))?;
    let n: usize = rest[..colon]
        .parse()
        .ok()
        .filter(|&n| (1..=MAX_VARS).contains(&n))
        .ok_or_else(|| err(lead + 3, format!("n must be in 1..={MAX_VARS}")))?;
    let hex = &rest[colon + 1..];
    let hex_col = lead + 4 + colon;
    let len = 1usize << n;
    let bytes = (len / 8).max(1);
    if hex.len() != 2 * bytes {
        return Err(err(hex_col, format!("expected {} hex digits for n={n}, got {}", 2 * bytes, hex.len())));
    }
    let mut words = vec![0u64; len.div_ceil(64)];
    for i in 0..bytes {
        let pair = &hex[2 * i..2 * i + 2];
        if !pair.bytes().all(|c| c.is_ascii_digit() || (b'a'..=b'f').contains(&c)) {
            return Err(err(hex_col + 2 * i, format!("invalid hex byte `{pair}`")));
        }
        let b = u8::from_str_radix(pair, 16).unwrap();
        if len < 8 && b >> len != 0 {
            return Err(err(hex_col + 2 * i, format!("bits beyond 2^{n} entries are set")));
        }
        words[i / 8] |= (b as u64) << (8 * (i % 8));
    }
    Ok(TruthTable::from_words(n, words)?)
}

/// Either format: `n=` starts a hex table, anything else is an ANF.
pub fn parse_function(input: &str, n: Option<usize>) -> Result<Anf, CliError> {
    if input.trim_start().starts_with("n=") {
        let t = parse_tt_hex(input)?;
        if let Some(n) = n.filter(|&n| n != t.n()) {
            return Err(CliError::Mismatch(format!("table has n = {} but -n {n} was given", t.n())));
        }
        Ok(Anf::from_truth_table(&t))
    } else {
        parse_anf(input, n)
    }
}

/// `n=<k>` on the first line, then one ANF per coordinate.
pub fn parse_vbf(text: &str) -> Result<VectorialBf, CliError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| CliError::parse(Some(1), ParseError::at(1, "empty file")))?;
    let n: usize = header
        .trim()
        .strip_prefix("n=")
        .and_then(|k| k.trim().parse().ok())
        .filter(|&n| (1..=bfcrypt_core::vectorial::MAX_VBF_VARS).contains(&n))
        .ok_or_else(|| CliError::parse(Some(1), ParseError::at(1, "expected header `n=<k>`")))?;
    let mut coords = Vec::with_capacity(n);
    for (i, line) in lines {
        if coords.len() == n {
            return Err(CliError::parse(
                Some(i + 1),
                ParseError::at(1, format!("more than {n} coordinate lines")),
            ));
        }
        let raw = parse_raw(line).map_err(|e| CliError::parse(Some(i + 1), e))?;
        if raw.max_var > n {
            return Err(CliError::Mismatch(format!(
                "line {}: coordinate uses x{} but n = {n}",
                i + 1,
                raw.max_var
            )));
        }
        coords.push(Anf::from_monomials(n, raw.monomials)?);
    }
    if coords.len() != n {
        return Err(CliError::Mismatch(format!("expected {n} coordinate lines, found {}", coords.len())));
    }
    Ok(VectorialBf::from_anfs(&coords)?)
}

pub fn format_vbf(f: &VectorialBf) -> String {
    let mut out = format!("n={}\n", f.n());
    for c in f.coordinate_anfs() {
        out.push_str(&format_anf(&c));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_grammar() {
        let f = parse_anf("x1*x2 + x3 + 1", None).unwrap();
        assert_eq!(f.n(), 3);
        assert_eq!(format_anf(&f), "x1*x2 + x3 + 1");
        assert_eq!(format_anf(&parse_anf(" x3 +x2* x1+1 ", None).unwrap()), "x1*x2 + x3 + 1");
        assert_eq!(format_anf(&parse_anf("x1 + x1", Some(2)).unwrap()), "0");
        assert_eq!(format_anf(&parse_anf("0", Some(4)).unwrap()), "0");
        assert_eq!(parse_anf("x2*x2", None).unwrap(), parse_anf("x2", None).unwrap());
    }

    #[test]
    fn reports_error_columns() {
        let col = |s: &str| match parse_anf(s, None) {
            Err(CliError::Parse { error, .. }) => error.column,
            other => panic!("{other:?}"),
        };
        assert_eq!(col("x1 + "), 6);
        assert_eq!(col("x1 * y2"), 6);
        assert_eq!(col("x1 x2"), 4);
        assert_eq!(col("x0"), 1);
        assert_eq!(col("2"), 1);
        assert_eq!(col("x"), 2);
        assert!(matches!(parse_anf("x5", Some(3)), Err(CliError::Mismatch(_))));
    }

    #[test]
    fn hex_examples() {
        let x1 = parse_anf("x1", Some(3)).unwrap().to_truth_table();
        assert_eq!(format_tt_hex(&x1), "n=3:aa");
        let and = parse_anf("x1*x2", None).unwrap().to_truth_table();
        assert_eq!(format_tt_hex(&and), "n=2:08");
        assert_eq!(parse_tt_hex("n=2:08").unwrap(), and);
        let big = parse_anf("x7", None).unwrap().to_truth_table();
        assert_eq!(format_tt_hex(&big), format!("n=7:{}{}", "00".repeat(8), "ff".repeat(8)));
        assert!(parse_tt_hex("n=2:18").is_err());
        assert!(parse_tt_hex("n=3:AA").is_err());
        assert!(parse_tt_hex("n=3:a").is_err());
    }

    #[test]
    fn vbf_files() {
        let f = parse_vbf("n=2\nx1*x2\nx1 + x2\n").unwrap();
        assert_eq!(format_vbf(&f), "n=2\nx1*x2\nx1 + x2\n");
        assert!(matches!(parse_vbf("n=2\nx1\n"), Err(CliError::Mismatch(_))));
        assert!(matches!(parse_vbf("n=2\nx1\nx3\n"), Err(CliError::Mismatch(_))));
        assert!(matches!(parse_vbf("n=2\nx1\nx1 +\n"), Err(CliError::Parse { line: Some(3), .. })));
        assert!(matches!(parse_vbf("m=2\n"), Err(CliError::Parse { .. })));
    }
}
