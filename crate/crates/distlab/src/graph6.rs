//! graph6 codec: order header, then the upper triangle in column order
//! (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) packed six bits per byte,
//! big-endian, each byte offset by 63.

use std::io::BufRead;

use distlab_core::graph::{Graph, MAX_VERTICES};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at position {position} outside 63..=126")]
    InvalidByte { position: usize, byte: u8 },
    #[error("graph6 string for {n} vertices needs {expected} bytes, found {found}")]
    BadLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("graph6 string declares {0} vertices, supported range is 1..=64")]
    UnsupportedOrder(usize),
    #[error("nonzero padding bits in final byte")]
    NonzeroPadding,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: Graph6Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn decode(s: &str) -> Result<Graph, Graph6Error> {
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some(position) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Graph6Error::InvalidByte {
            position,
            byte: bytes[position],
        });
    }
    let (n, body) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // eight-byte form, n >= 258048
            return Err(Graph6Error::UnsupportedOrder(usize::MAX));
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::BadLength {
                n: 0,
                expected: 4,
                found: bytes.len(),
            });
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(Graph6Error::UnsupportedOrder(n));
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::BadLength {
            n,
            expected: expected + (bytes.len() - body.len()),
            found: bytes.len(),
        });
    }
    let pad = expected * 6 - nbits;
    if pad > 0 && (body[expected - 1] - 63) & ((1 << pad) - 1) != 0 {
        return Err(Graph6Error::NonzeroPadding);
    }
    let mut g = Graph::empty(n).expect("order checked");
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.try_add_edge(i, j).expect("indices in range");
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Streams graphs from graph6 lines, skipping blank lines. Errors carry
/// the 1-based line number.
pub fn read_graphs<R: BufRead>(reader: R) -> impl Iterator<Item = Result<Graph, IngestError>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(idx, line)| match line {
            Err(e) => Some(Err(IngestError::Io(e))),
            Ok(l) => {
                let t = l.trim_end_matches(['\r', '\n']).trim();
                if t.is_empty() {
                    None
                } else {
                    Some(decode(t).map_err(|source| IngestError::Parse {
                        line: idx + 1,
                        source,
                    }))
                }
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        // P3: x(0,1)=1, x(0,2)=0, x(1,2)=1 -> 101000 -> 40 + 63 = 'g'
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        assert_eq!(encode(&Graph::complete(2).unwrap()), "A_");
        assert_eq!(encode(&Graph::path(3).unwrap()), "Bg");
        assert_eq!(encode(&Graph::complete(5).unwrap()), "D~{");
        assert_eq!(decode("D~{").unwrap(), Graph::complete(5).unwrap());
    }

    #[test]
    fn five_vertex_round_trip() {
        let g = decode("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(encode(&g), "D?{");
    }

    #[test]
    fn large_orders_use_long_header() {
        let g = Graph::cycle(64).unwrap();
        let s = encode(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 63][..]);
        assert_eq!(decode(&s).unwrap(), g);
        let g63 = Graph::path(63).unwrap();
        assert_eq!(decode(&encode(&g63)).unwrap(), g63);
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert_eq!(
            decode("D? {"),
            Err(Graph6Error::InvalidByte {
                position: 2,
                byte: b' '
            })
        );
        assert!(matches!(decode("D?"), Err(Graph6Error::BadLength { .. })));
        assert!(matches!(decode("?"), Err(Graph6Error::UnsupportedOrder(0))));
        // K2 with the padding bit set
        assert_eq!(decode("A`"), Err(Graph6Error::NonzeroPadding));
    }

    #[test]
    fn header_accepted() {
        assert_eq!(decode(">>graph6<<A_").unwrap(), Graph::complete(2).unwrap());
    }

    #[test]
    fn stream_skips_blank_lines_and_numbers_errors() {
        let text = "A_\n\nBg\nB!\n";
        let items: Vec<_> = read_graphs(text.as_bytes()).collect();
        assert_eq!(items.len(), 3);
        assert!(items[0].is_ok() && items[1].is_ok());
        match &items[2] {
            Err(IngestError::Parse { line, .. }) => assert_eq!(*line, 4),
            other => panic!("{other:?}"),
        }
    }
}
