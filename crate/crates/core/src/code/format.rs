use serde::{Deserialize, Serialize};

use super::{Code, Codeword, MAX_NEURONS};
use crate::error::{Error, Result};

/// JSON mirror of a code: neuron index lists, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub n: usize,
    pub words: Vec<Vec<usize>>,
}

impl From<&Code> for CodeJson {
    fn from(c: &Code) -> Self {
        CodeJson { n: c.n(), words: c.iter().map(|w| w.support()).collect() }
    }
}

impl TryFrom<CodeJson> for Code {
    type Error = Error;

    fn try_from(j: CodeJson) -> Result<Code> {
        if j.n == 0 || j.n > MAX_NEURONS {
            return Err(Error::NeuronCount(j.n));
        }
        let mut words = Vec::with_capacity(j.words.len());
        for (k, w) in j.words.iter().enumerate() {
            if let Some(&bad) = w.iter().find(|&&i| i == 0 || i > j.n) {
                return Err(Error::Json(format!("word {} names neuron {bad}, outside 1..={}", k + 1, j.n)));
            }
            words.push(Codeword::from_neurons(w.iter().copied()));
        }
        Code::new(j.n, words)
    }
}

pub fn parse_code_json(s: &str) -> Result<Code> {
    let j: CodeJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
    Code::try_from(j)
}

pub(crate) fn parse_bits(s: &str) -> Option<Codeword> {
    if s.is_empty() || s.len() > MAX_NEURONS || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return None;
    }
    Some(Codeword::from_neurons(
        s.bytes().enumerate().filter(|(_, b)| *b == b'1').map(|(i, _)| i + 1),
    ))
}

/// Parses the line-oriented code format.
///
/// Each non-comment line is one codeword: a bit string ("01101"), a
/// whitespace separated list of 1-based neuron indices ("2 3 5"), or "-" for
/// the empty codeword. The first non-comment line may be `n=<int>`; it is
/// required when index lists are used. A line of 0/1 characters is read as a
/// bit string when its length equals n (or when no header is given).
pub fn parse_code_text(text: &str) -> Result<Code> {
    let mut n: Option<usize> = None;
    let mut words: Vec<(usize, Codeword)> = Vec::new();
    let mut saw_content = false;
    let mut bit_len: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_content {
            saw_content = true;
            if let Some(rest) = line.strip_prefix("n=").or_else(|| line.strip_prefix("n =")) {
                let value: usize = rest.trim().parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad neuron count {rest:?}"),
                })?;
                if value == 0 || value > MAX_NEURONS {
                    return Err(Error::Parse { line: line_no, msg: format!("neuron count {value} out of range") });
                }
                n = Some(value);
                continue;
            }
        }
        if line == "-" {
            words.push((line_no, Codeword::EMPTY));
            continue;
        }
        let is_bits = !line.contains(char::is_whitespace)
            && line.bytes().all(|b| b == b'0' || b == b'1')
            && n.map_or(true, |n| line.len() == n);
        if is_bits {
            if let Some(prev) = bit_len {
                if prev != line.len() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("bit string length {} differs from earlier length {prev}", line.len()),
                    });
                }
            }
            bit_len = Some(line.len());
            let w = parse_bits(line).ok_or_else(|| Error::Parse { line: line_no, msg: "bit string too long".into() })?;
            words.push((line_no, w));
            continue;
        }
        let Some(n) = n else {
            return Err(Error::Parse {
                line: line_no,
                msg: "index-list codewords need an `n=<int>` header".into(),
            });
        };
        let mut neurons = Vec::new();
        for tok in line.split_whitespace() {
            let i: usize = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad neuron index {tok:?}"),
            })?;
            if i == 0 || i > n {
                return Err(Error::Parse { line: line_no, msg: format!("neuron {i} outside 1..={n}") });
            }
            neurons.push(i);
        }
        words.push((line_no, Codeword::from_neurons(neurons)));
    }

    let n = match (n, bit_len) {
        (Some(n), _) => n,
        (None, Some(len)) => len,
        (None, None) => {
            return Err(Error::Parse { line: 0, msg: "no codewords and no `n=` header".into() });
        }
    };
    if words.is_empty() {
        return Err(Error::EmptyCode);
    }
    // report duplicates with their line number
    for (k, (line, w)) in words.iter().enumerate() {
        if words[..k].iter().any(|(_, v)| v == w) {
            return Err(Error::Parse { line: *line, msg: format!("duplicate codeword {}", w.to_bits(n)) });
        }
    }
    Code::new(n, words.into_iter().map(|(_, w)| w).collect())
}

/// Renders a code in the text format (bit strings, with a header).
pub fn to_code_text(code: &Code) -> String {
    let mut s = format!("n={}\n", code.n());
    for w in code.iter() {
        if w.is_empty() {
            s.push_str("-\n");
        } else {
            s.push_str(&w.to_bits(code.n()));
            s.push('\n');
        }
    }
    s
}
