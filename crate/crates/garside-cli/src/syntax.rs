//! Word syntax for the command line: whitespace-separated nonzero integers
//! plus a repetition macro `(w)^m`, expanded before parsing. Groups may nest
//! and `m` may be negative (the group is inverted first).

use garside::{BraidWord, Error};

pub fn parse_word(n: usize, input: &str) -> Result<BraidWord, Error> {
    let letters = expand(input)?;
    BraidWord::new(n, letters)
}

fn expand(input: &str) -> Result<Vec<i32>, Error> {
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0;
    let letters = parse_seq(&chars, &mut pos, 0)?;
    if pos != chars.len() {
        return Err(Error::WordSyntax(format!(
            "unexpected `{}` at offset {pos}",
            chars[pos]
        )));
    }
    Ok(letters)
}

fn parse_seq(chars: &[char], pos: &mut usize, depth: usize) -> Result<Vec<i32>, Error> {
    let mut out = Vec::new();
    loop {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
        match chars.get(*pos) {
            None => return Ok(out),
            Some(')') if depth > 0 => return Ok(out),
            Some(')') => {
                return Err(Error::WordSyntax("unmatched `)`".into()));
            }
            Some('(') => {
                *pos += 1;
                let inner = parse_seq(chars, pos, depth + 1)?;
                if chars.get(*pos) != Some(&')') {
                    return Err(Error::WordSyntax("unmatched `(`".into()));
                }
                *pos += 1;
                while *pos < chars.len() && chars[*pos].is_whitespace() {
                    *pos += 1;
                }
                if chars.get(*pos) != Some(&'^') {
                    return Err(Error::WordSyntax("expected `^` after `)`".into()));
                }
                *pos += 1;
                let m = parse_int(chars, pos)?;
                let block: Vec<i32> = if m >= 0 {
                    inner
                } else {
                    inner.iter().rev().map(|&l| -l).collect()
                };
                for _ in 0..m.unsigned_abs() {
                    out.extend_from_slice(&block);
                }
            }
            Some(_) => out.push(parse_int(chars, pos)? as i32),
        }
    }
}

fn parse_int(chars: &[char], pos: &mut usize) -> Result<i64, Error> {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
    let start = *pos;
    if chars.get(*pos) == Some(&'-') {
        *pos += 1;
    }
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let text: String = chars[start..*pos].iter().collect();
    text.parse()
        .map_err(|_| Error::WordSyntax(format!("expected an integer at offset {start}")))
}
