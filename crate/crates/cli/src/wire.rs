//! Vector wire format: comma-separated residues in plain mode, or
//! `{"q": …, "k": …, "data": […]}` in JSON mode.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireVector {
    pub q: u64,
    pub k: usize,
    pub data: Vec<u64>,
}

/// A parsed vector; `q` and `k` are present only for JSON input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub q: Option<u64>,
    pub k: Option<usize>,
    pub data: Vec<u64>,
}

pub fn parse_vector(text: &str) -> Result<Parsed, String> {
    let text = text.trim();
    if text.starts_with('{') {
        let w: WireVector = serde_json::from_str(text).map_err(|e| format!("malformed JSON vector: {e}"))?;
        return Ok(Parsed { q: Some(w.q), k: Some(w.k), data: w.data });
    }
    if text.is_empty() {
        return Err("empty vector".into());
    }
    let data = text
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<u64>().map_err(|_| format!("not a residue: {s:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Parsed { q: None, k: None, data })
}

pub fn plain(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_and_json() {
        let p = parse_vector(" 8, 0,4 ,3\n").unwrap();
        assert_eq!(p, Parsed { q: None, k: None, data: vec![8, 0, 4, 3] });
        let p = parse_vector(r#"{"q":11,"k":4,"data":[1,2]}"#).unwrap();
        assert_eq!((p.q, p.k, p.data), (Some(11), Some(4), vec![1, 2]));
        assert!(parse_vector("1,x").is_err());
        assert!(parse_vector("").is_err());
        assert!(parse_vector("{").is_err());
        assert_eq!(plain(&[8, 0, 4]), "8,0,4");
    }
}
