//! Text form `n: a<b c~d …` with 1-based vertices.
//!
//! Rendering emits cover relations between class representatives and
//! `~` edges from each class minimum, so the output is canonical for a
//! given labelled quasi-poset and parses back to it.

use std::fmt;
use std::str::FromStr;

use super::{bits, QuasiPoset, RelKind};
use crate::error::{Error, Result};
use crate::linear::BasisText;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_whitespace() || self.src[self.pos] == b',') {
            self.pos += 1;
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "integer too large".into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }
}

/// Parses `n: a<b c~d …`.
pub fn parse(s: &str) -> Result<QuasiPoset> {
    let mut lx = Lexer {
        src: s.as_bytes(),
        pos: 0,
    };
    let n = lx.int()?;
    lx.expect(b':')?;
    let mut rels = Vec::new();
    while !lx.at_end() {
        let start = lx.pos;
        let a = lx.int()?;
        lx.skip_ws();
        let kind = match lx.src.get(lx.pos) {
            Some(b'<') => RelKind::Le,
            Some(b'~') => RelKind::Equiv,
            _ => return Err(lx.err("expected '<' or '~'")),
        };
        lx.pos += 1;
        let b = lx.int()?;
        for v in [a, b] {
            if v == 0 || v > n {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("vertex {v} outside 1..{n}"),
                });
            }
        }
        rels.push((a, b, kind));
    }
    QuasiPoset::from_generators(n, &rels)
}

/// Generating relations of minimal size: `~` stars and class covers.
pub fn generators(p: &QuasiPoset) -> Vec<(usize, usize, RelKind)> {
    let q = p.quotient();
    let mut out = Vec::new();
    for c in &q.classes {
        let min = c.trailing_zeros() as usize;
        for j in bits(c & !(1 << min)) {
            out.push((min + 1, j + 1, RelKind::Equiv));
        }
    }
    for c in 0..q.cl {
        for d in bits(q.order[c]) {
            let covered = bits(q.order[c]).any(|e| q.order[e] >> d & 1 == 1);
            if !covered {
                let a = q.classes[c].trailing_zeros() as usize;
                let b = q.classes[d].trailing_zeros() as usize;
                out.push((a + 1, b + 1, RelKind::Le));
            }
        }
    }
    out.sort_by_key(|&(a, b, k)| (a, b, k == RelKind::Le));
    out
}

impl fmt::Display for QuasiPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n())?;
        for (a, b, k) in generators(self) {
            let sym = match k {
                RelKind::Le => '<',
                RelKind::Equiv => '~',
            };
            write!(f, " {a}{sym}{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuasiPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuasiPoset({self})")
    }
}

impl FromStr for QuasiPoset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl BasisText for QuasiPoset {
    fn basis_text(&self) -> String {
        format!("[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::enumerate_labeled;

    #[test]
    fn parse_examples() {
        assert_eq!(parse("2: 1<2").unwrap(), QuasiPoset::chain(2));
        assert_eq!(parse("0:").unwrap(), QuasiPoset::empty());
        assert_eq!(parse(" 3 :1~2, 2~3 ").unwrap(), QuasiPoset::single_class(3));
        assert_eq!(parse("3: 1<2 2<3").unwrap(), QuasiPoset::chain(3));
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(parse("2 1<2"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("2: 1<3"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse("2: 1>2"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse("2: 1<"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn render_examples() {
        assert_eq!(QuasiPoset::chain(3).to_string(), "3: 1<2 2<3");
        assert_eq!(QuasiPoset::single_class(3).to_string(), "3: 1~2 1~3");
        assert_eq!(QuasiPoset::antichain(2).to_string(), "2:");
        assert_eq!(QuasiPoset::empty().to_string(), "0:");
        assert_eq!(parse("3: 2~3 1<3").unwrap().to_string(), "3: 1<2 2~3");
        assert_eq!(QuasiPoset::chain(2).basis_text(), "[2: 1<2]");
    }

    #[test]
    fn render_parse_round_trip() {
        for n in 0..=4 {
            for p in enumerate_labeled(n, false).unwrap() {
                assert_eq!(parse(&p.to_string()).unwrap(), p, "{p}");
            }
        }
    }
}
