//! Short-form graph6: header byte `63 + n`, then the upper triangle in
//! column-major order `(0,1), (0,2), (1,2), (0,3), ...`, six bits per byte,
//! most significant bit first, each byte offset by 63, zero padded.

use super::{Graph, GraphError, MAX_VERTICES};

const OFFSET: u8 = 63;

fn body_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (&header, body) = bytes
        .split_first()
        .ok_or(GraphError::Truncated { expected: 1, found: 0 })?;
    if header == 126 {
        return Err(GraphError::LongForm);
    }
    if !(OFFSET..126).contains(&header) {
        return Err(GraphError::MalformedHeader(header));
    }
    let n = (header - OFFSET) as usize;
    if n == 0 {
        return Err(GraphError::InvalidOrder(0));
    }
    if n > MAX_VERTICES {
        return Err(GraphError::Capacity(n));
    }
    let expected = body_len(n);
    if body.len() < expected {
        return Err(GraphError::Truncated { expected, found: body.len() });
    }
    if body.len() > expected {
        return Err(GraphError::TrailingBytes { expected, found: body.len() });
    }
    if let Some(&b) = body.iter().find(|&&b| !(OFFSET..=126).contains(&b)) {
        return Err(GraphError::MalformedBody(b));
    }

    let mut g = Graph::empty(n)?;
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = body[bit / 6] - OFFSET;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(u, v)?;
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let last = body[bit / 6] - OFFSET;
        if last & ((1 << (6 - bit % 6)) - 1) != 0 {
            return Err(GraphError::NonZeroPadding);
        }
    }
    Ok(g)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(OFFSET + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(OFFSET + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(OFFSET + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertex_encodings() {
        // n = 2: header 63 + 2 = 'A'; one body bit (0,1) then five padding bits.
        // 0b100000 + 63 = 95 = '_', 0b000000 + 63 = '?'.
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let e2 = Graph::empty(2).unwrap();
        assert_eq!(emit_graph6(&k2), "A_");
        assert_eq!(emit_graph6(&e2), "A?");
        assert_eq!(parse_graph6("A_").unwrap(), k2);
        assert_eq!(parse_graph6("A?").unwrap(), e2);
    }

    #[test]
    fn known_strings() {
        // K4: six ones = 0b111111 + 63 = 126 = '~'.
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(emit_graph6(&k4), "C~");
        // P4 0-1-2-3: bits (0,1)=1 (0,2)=0 (1,2)=1 (0,3)=0 (1,3)=0 (2,3)=1 -> 0b101001 = 41, +63 = 104 = 'h'.
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(emit_graph6(&p4), "Ch");
        assert_eq!(parse_graph6("Ch\n").unwrap(), p4);
    }

    #[test]
    fn single_vertex_has_empty_body() {
        let g = parse_graph6("@").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(emit_graph6(&g), "@");
    }

    #[test]
    fn errors() {
        assert_eq!(parse_graph6(""), Err(GraphError::Truncated { expected: 1, found: 0 }));
        assert_eq!(parse_graph6(" A"), Err(GraphError::MalformedHeader(b' ')));
        assert_eq!(parse_graph6("~"), Err(GraphError::LongForm));
        assert_eq!(parse_graph6("?"), Err(GraphError::InvalidOrder(0)));
        assert_eq!(parse_graph6("C"), Err(GraphError::Truncated { expected: 1, found: 0 }));
        assert_eq!(parse_graph6("A??"), Err(GraphError::TrailingBytes { expected: 1, found: 2 }));
        assert_eq!(parse_graph6("A@"), Err(GraphError::NonZeroPadding));
        assert_eq!(parse_graph6("A "), Err(GraphError::MalformedBody(b' ')));
        // header for n = 33
        let s = String::from_utf8(vec![63 + 33]).unwrap();
        assert_eq!(parse_graph6(&s), Err(GraphError::Capacity(33)));
    }

    #[test]
    fn largest_order_round_trips() {
        let mut g = Graph::empty(32).unwrap();
        g.add_edge(0, 31).unwrap();
        g.add_edge(30, 31).unwrap();
        assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
    }
}
