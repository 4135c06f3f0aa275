//! Edge-list parsing for the `correlate` verb.
//!
//! Accepted shapes, all equivalent:
//!   `--edges "0,0;2,0;0,2;2,2"`
//!   `--edges "(0,0),(2,0),(0,2),(2,2)"`
//!   `--edges "0b00,0b10"`
//!
//! Parentheses and semicolons are treated as separators, coordinates are
//! decimal by default and binary with a `0b` prefix, and the flat token
//! stream is read two coordinates at a time as `(b2, b3)` pairs.

pub fn parse_edges(input: &str) -> Result<Vec<(usize, usize)>, String> {
    let cleaned = input.replace(['(', ')', ';'], ",");
    let tokens: Vec<&str> = cleaned
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.is_empty() {
        return Err("empty edge list".into());
    }
    if !tokens.len().is_multiple_of(2) {
        return Err(format!(
            "edge list has {} coordinates; expected an even number of b2,b3 values",
            tokens.len()
        ));
    }
    tokens
        .chunks(2)
        .map(|pair| Ok((parse_coord(pair[0])?, parse_coord(pair[1])?)))
        .collect()
}

fn parse_coord(token: &str) -> Result<usize, String> {
    match token.strip_prefix("0b") {
        Some(bits) => usize::from_str_radix(bits, 2),
        None => token.parse(),
    }
    .map_err(|_| format!("bad coordinate {token:?}"))
}
