//! Canonical printing and the plain-text ideal file format.
//!
//! Printing lifts coefficients to the symmetric range `(-p/2, p/2]`, so
//! `p - 1` renders as `-1`; terms appear in the ring's descending order.
//! `parse(print(f)) == f` holds for every polynomial.
//!
//! An ideal file is a header line followed by one polynomial per line:
//!
//! ```text
//! ring p=997 vars=x_0,x_1,y_0,y_1,y_2 degrees=[1,0];[1,0];[0,1];[0,1];[0,1] order=grevlex
//! x_0^2*y_1 - x_1^2*y_0
//! ```
//!
//! Blank lines and `#` comment lines are ignored on read.

use super::parse::ParseError;
use super::poly::Poly;
use super::{Monomial, MonomialOrder, Multidegree, Ring, RingError};
use crate::gf::{GfError, PrimeField};
use std::fmt::Write as _;
use thiserror::Error;

/// Errors reading an ideal file.
#[derive(Debug, Error)]
pub enum FileError {
    #[error("missing header line starting with 'ring'")]
    MissingHeader,
    #[error("invalid header: {0}")]
    Header(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("line {line}: {err}")]
    Poly { line: usize, err: ParseError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Ring {
    /// Canonical string of a monomial (`"1"` for the unit monomial).
    pub fn mono_string(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for i in 0..self.nvars() {
            match m.exp(i) {
                0 => {}
                1 => parts.push(self.var_name(i).to_string()),
                e => parts.push(format!("{}^{}", self.var_name(i), e)),
            }
        }
        parts.join("*")
    }

    /// Canonical string of a polynomial.
    pub fn poly_string(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let fld = self.field();
        let mut s = String::new();
        for (i, t) in f.terms.iter().enumerate() {
            let lifted = fld.lift_symmetric(t.c);
            let neg = lifted < 0;
            let a = lifted.unsigned_abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if t.m.is_one() {
                let _ = write!(s, "{a}");
            } else if a == 1 {
                s.push_str(&self.mono_string(&t.m));
            } else {
                let _ = write!(s, "{a}*{}", self.mono_string(&t.m));
            }
        }
        s
    }

    /// String form of a multidegree: `"5"` in rank 1, `"(3,4)"` in rank 2.
    pub fn degree_string(&self, d: Multidegree) -> String {
        if self.grading_rank() == 1 {
            format!("{}", d.0)
        } else {
            format!("({},{})", d.0, d.1)
        }
    }

    /// The ideal-file header describing this ring.
    pub fn header_string(&self) -> String {
        let vars = self.vars().join(",");
        let degrees = self
            .degrees()
            .iter()
            .map(|d| {
                if self.grading_rank() == 1 {
                    format!("[{}]", d.0)
                } else {
                    format!("[{},{}]", d.0, d.1)
                }
            })
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "ring p={} vars={} degrees={} order={}",
            self.field().p(),
            vars,
            degrees,
            self.order().name()
        )
    }
}

/// Parses a ring header line as produced by [`Ring::header_string`].
pub fn parse_header(line: &str) -> Result<Ring, FileError> {
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some("ring") {
        return Err(FileError::MissingHeader);
    }
    let (mut p, mut vars, mut degrees, mut order) = (None, None, None, None);
    for tok in tokens {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| FileError::Header(format!("expected key=value, got {tok:?}")))?;
        match k {
            "p" => {
                p = Some(
                    v.parse::<u64>()
                        .map_err(|_| FileError::Header(format!("bad prime {v:?}")))?,
                )
            }
            "vars" => vars = Some(v.split(',').map(|s| s.to_string()).collect::<Vec<_>>()),
            "degrees" => degrees = Some(parse_degrees(v)?),
            "order" => {
                order = Some(
                    MonomialOrder::parse_name(v)
                        .ok_or_else(|| FileError::Header(format!("unknown order {v:?}")))?,
                )
            }
            _ => return Err(FileError::Header(format!("unknown field {k:?}"))),
        }
    }
    let p = p.ok_or_else(|| FileError::Header("missing p=".into()))?;
    let vars = vars.ok_or_else(|| FileError::Header("missing vars=".into()))?;
    let (degrees, rank) = degrees.ok_or_else(|| FileError::Header("missing degrees=".into()))?;
    let order = order.ok_or_else(|| FileError::Header("missing order=".into()))?;
    let field = PrimeField::new(p)?;
    Ok(Ring::new(field, vars, degrees, rank, order)?)
}

/// Parses `[1,0];[0,1];...`, returning the degrees and the inferred rank.
fn parse_degrees(v: &str) -> Result<(Vec<Multidegree>, usize), FileError> {
    let mut out = Vec::new();
    let mut rank = None;
    for item in v.split(';') {
        let inner = item
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| FileError::Header(format!("bad degree {item:?}")))?;
        let comps: Vec<i64> = inner
            .split(',')
            .map(|c| {
                c.parse::<i64>()
                    .map_err(|_| FileError::Header(format!("bad degree component {c:?}")))
            })
            .collect::<Result<_, _>>()?;
        let d = match comps.as_slice() {
            [a] => Multidegree(*a, 0),
            [a, b] => Multidegree(*a, *b),
            _ => return Err(FileError::Header(format!("bad degree arity {item:?}"))),
        };
        match rank {
            None => rank = Some(comps.len()),
            Some(r) if r != comps.len() => {
                return Err(FileError::Header("inconsistent degree arities".into()))
            }
            _ => {}
        }
        out.push(d);
    }
    Ok((out, rank.ok_or_else(|| FileError::Header("empty degrees".into()))?))
}

/// Renders a ring and generator list as an ideal file.
pub fn write_ideal_str(ring: &Ring, polys: &[Poly]) -> String {
    let mut s = ring.header_string();
    s.push('\n');
    for f in polys {
        s.push_str(&ring.poly_string(f));
        s.push('\n');
    }
    s
}

/// Parses an ideal file (header + one polynomial per line).
pub fn parse_ideal_str(src: &str) -> Result<(Ring, Vec<Poly>), FileError> {
    let mut ring = None;
    let mut polys = Vec::new();
    for (idx, line) in src.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match &ring {
            None => ring = Some(parse_header(trimmed)?),
            Some(r) => polys.push(
                r.parse_poly(trimmed)
                    .map_err(|err| FileError::Poly { line: idx + 1, err })?,
            ),
        }
    }
    Ok((ring.ok_or(FileError::MissingHeader)?, polys))
}

/// Reads an ideal file from disk.
pub fn read_ideal_file(path: &std::path::Path) -> Result<(Ring, Vec<Poly>), FileError> {
    parse_ideal_str(&std::fs::read_to_string(path)?)
}

/// Writes an ideal file to disk.
pub fn write_ideal_file(
    path: &std::path::Path,
    ring: &Ring,
    polys: &[Poly],
) -> Result<(), FileError> {
    Ok(std::fs::write(path, write_ideal_str(ring, polys))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::rng::SplitMix64;

    fn cox() -> Ring {
        let f = PrimeField::new(997).unwrap();
        let mut degs = vec![Multidegree(1, 0); 2];
        degs.extend(vec![Multidegree(0, 1); 3]);
        Ring::new(
            f,
            vec!["x_0".into(), "x_1".into(), "y_0".into(), "y_1".into(), "y_2".into()],
            degs,
            2,
            MonomialOrder::GrevLex,
        )
        .unwrap()
    }

    #[test]
    fn printing_pins() {
        let r = Ring::standard(PrimeField::new(997).unwrap(), &["x", "y"]).unwrap();
        assert_eq!(r.poly_string(&r.poly_zero()), "0");
        assert_eq!(r.poly_string(&r.poly_const(996)), "-1");
        assert_eq!(r.poly_string(&r.parse_poly("x - y").unwrap()), "x - y");
        assert_eq!(r.poly_string(&r.parse_poly("-x + 2").unwrap()), "-x + 2");
        assert_eq!(
            r.poly_string(&r.parse_poly("995*x*y^2 - 3").unwrap()),
            "-2*x*y^2 - 3"
        );
        let c = cox();
        assert_eq!(
            c.poly_string(&c.parse_poly("(y_0+y_1)^2 - y_0^2 - y_1^2").unwrap()),
            "2*y_0*y_1"
        );
    }

    #[test]
    fn print_parse_round_trip_random() {
        let rings = [
            Ring::standard(PrimeField::new(997).unwrap(), &["x", "y", "z"]).unwrap(),
            Ring::new(
                PrimeField::new(7).unwrap(),
                vec!["a".into(), "b".into()],
                vec![Multidegree(1, 0); 2],
                1,
                MonomialOrder::Lex,
            )
            .unwrap(),
            cox(),
        ];
        let mut rng = SplitMix64::new(0xF00D);
        let mut checked = 0;
        for r in &rings {
            let p = r.field().p() as u64;
            for _ in 0..334 {
                let nterms = rng.next_below(8) as usize;
                let pairs: Vec<(i64, Monomial)> = (0..nterms)
                    .map(|_| {
                        let mut m = Monomial::ONE;
                        for i in 0..r.nvars() {
                            m.set_exp(i, rng.next_below(5) as u8);
                        }
                        (rng.next_below(p) as i64, m)
                    })
                    .collect();
                let f = r.poly_from_pairs(&pairs);
                let printed = r.poly_string(&f);
                let parsed = r.parse_poly(&printed).unwrap();
                assert_eq!(parsed, f, "round trip failed for {printed:?}");
                checked += 1;
            }
        }
        assert!(checked >= 1000);
    }

    #[test]
    fn header_round_trip() {
        let c = cox();
        assert_eq!(
            c.header_string(),
            "ring p=997 vars=x_0,x_1,y_0,y_1,y_2 degrees=[1,0];[1,0];[0,1];[0,1];[0,1] order=grevlex"
        );
        let parsed = parse_header(&c.header_string()).unwrap();
        assert_eq!(parsed, c);

        let r = Ring::new(
            PrimeField::new(31).unwrap(),
            vec!["y".into(), "x".into(), "z".into()],
            vec![Multidegree(1, 0), Multidegree(2, 0), Multidegree(3, 0)],
            1,
            MonomialOrder::Eliminate(1),
        )
        .unwrap();
        assert_eq!(
            r.header_string(),
            "ring p=31 vars=y,x,z degrees=[1];[2];[3] order=eliminate1"
        );
        assert_eq!(parse_header(&r.header_string()).unwrap(), r);
    }

    #[test]
    fn header_errors() {
        assert!(matches!(
            parse_header("module p=7"),
            Err(FileError::MissingHeader)
        ));
        assert!(matches!(
            parse_header("ring p=6 vars=x degrees=[1] order=grevlex"),
            Err(FileError::Field(_))
        ));
        assert!(matches!(
            parse_header("ring p=7 vars=x degrees=[1];[1] order=grevlex"),
            Err(FileError::Ring(RingError::DegreeCountMismatch))
        ));
        assert!(matches!(
            parse_header("ring p=7 vars=x,y degrees=[1];[1,0] order=grevlex"),
            Err(FileError::Header(_))
        ));
        assert!(matches!(
            parse_header("ring p=7 vars=x degrees=[1] order=fancy"),
            Err(FileError::Header(_))
        ));
        assert!(matches!(
            parse_header("ring p=7 vars=x degrees=[1]"),
            Err(FileError::Header(_))
        ));
    }

    #[test]
    fn ideal_file_round_trip() {
        let c = cox();
        let gens = vec![
            c.parse_poly("x_0^2*y_1 - x_1^2*y_0").unwrap(),
            c.parse_poly("y_0*y_2 - y_1^2").unwrap(),
        ];
        let text = write_ideal_str(&c, &gens);
        let (ring2, gens2) = parse_ideal_str(&text).unwrap();
        assert_eq!(ring2, c);
        assert_eq!(gens2, gens);

        // Comments and blank lines are ignored.
        let with_comments = format!("# an ideal\n\n{}\n# done\n", text);
        let (_, gens3) = parse_ideal_str(&with_comments).unwrap();
        assert_eq!(gens3, gens);

        // Poly errors carry the 1-based line number.
        let bad = format!("{}\nx_0 + w\n", c.header_string());
        match parse_ideal_str(&bad) {
            Err(FileError::Poly { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected poly error, got {other:?}"),
        }
    }

    #[test]
    fn ideal_file_disk_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ideal.txt");
        let c = cox();
        let gens = vec![c.parse_poly("x_0*y_0 + 3*x_1*y_2").unwrap()];
        write_ideal_file(&path, &c, &gens).unwrap();
        let (ring2, gens2) = read_ideal_file(&path).unwrap();
        assert_eq!(ring2, c);
        assert_eq!(gens2, gens);
    }
}
