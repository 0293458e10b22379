//! Parsing of the textual literals used on the command line: monomials,
//! polynomials, operators, fractions, points, and boxes.
//!
//! Variables are referenced by their labels (longest match wins), derivatives
//! by `d<k>` with a 1-based variable index and an optional divided-power
//! exponent `^[e]`. Factors are separated by whitespace or `*`, terms by `+`
//! and `-`, and coefficients are integers or `a/b` rationals. A fraction
//! literal splits at its rightmost `/`: the right side must be a power of the
//! localizing monomial.

use crate::field::{FieldSpec, Scalar};
use crate::sralgebra::{ExponentVector, Polynomial};
use crate::weyl::{DiffOp, OperatorMonomial};
use crate::{Error, Result};

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_filler(&mut self) {
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_whitespace() || self.text[self.pos] == b'*')
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn rest(&self) -> &'a str {
        std::str::from_utf8(&self.text[self.pos..]).expect("ascii input")
    }

    fn digits(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
    }
}

fn match_label(rest: &str, labels: &[String]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, l) in labels.iter().enumerate() {
        if rest.starts_with(l.as_str()) {
            match best {
                Some((_, len)) if len >= l.len() => {}
                _ => best = Some((i, l.len())),
            }
        }
    }
    best
}

struct Term {
    coeff: (u64, u64),
    negative: bool,
    x: Vec<u32>,
    d: Vec<u32>,
}

fn parse_terms(text: &str, labels: &[String], allow_derivatives: bool) -> Result<Vec<Term>> {
    let n = labels.len();
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    cur.skip_filler();
    if cur.peek().is_none() {
        return Err(Error::Parse("empty literal".into()));
    }
    loop {
        // sign
        let mut negative = false;
        cur.skip_filler();
        while let Some(c) = cur.peek() {
            match c {
                b'+' => {
                    cur.pos += 1;
                }
                b'-' => {
                    negative = !negative;
                    cur.pos += 1;
                }
                _ => break,
            }
            cur.skip_filler();
        }
        // coefficient
        let mut coeff = (1u64, 1u64);
        let mut saw_anything = false;
        if cur.peek().map_or(false, |c| c.is_ascii_digit()) {
            let num = cur.digits().unwrap();
            let mut den = 1u64;
            // a slash is a rational only if digits follow immediately
            if cur.peek() == Some(b'/')
                && cur.text.get(cur.pos + 1).map_or(false, |c| c.is_ascii_digit())
            {
                cur.pos += 1;
                den = cur.digits().unwrap();
                if den == 0 {
                    return Err(Error::Parse("zero denominator in coefficient".into()));
                }
            }
            coeff = (num, den);
            saw_anything = true;
        }
        // factors
        let mut x = vec![0u32; n];
        let mut d = vec![0u32; n];
        loop {
            cur.skip_filler();
            let Some(c) = cur.peek() else { break };
            if c == b'+' || c == b'-' {
                break;
            }
            let rest = cur.rest();
            if let Some((var, len)) = match_label(rest, labels) {
                cur.pos += len;
                let mut e = 1u32;
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    e = cur
                        .digits()
                        .ok_or_else(|| Error::Parse("expected exponent after ^".into()))?
                        as u32;
                }
                x[var] += e;
                saw_anything = true;
                continue;
            }
            if c == b'd' && cur.text.get(cur.pos + 1).map_or(false, |b| b.is_ascii_digit()) {
                if !allow_derivatives {
                    return Err(Error::Parse(
                        "derivative symbols are not allowed in a ring element".into(),
                    ));
                }
                cur.pos += 1;
                let idx = cur.digits().unwrap() as usize;
                if idx == 0 || idx > n {
                    return Err(Error::Parse(format!(
                        "derivative index d{} out of range 1..={}",
                        idx, n
                    )));
                }
                let mut e = 1u32;
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    let bracketed = cur.peek() == Some(b'[');
                    if bracketed {
                        cur.pos += 1;
                    }
                    e = cur
                        .digits()
                        .ok_or_else(|| Error::Parse("expected exponent after ^".into()))?
                        as u32;
                    if bracketed {
                        if cur.peek() != Some(b']') {
                            return Err(Error::Parse("unclosed divided-power bracket".into()));
                        }
                        cur.pos += 1;
                    }
                }
                d[idx - 1] += e;
                saw_anything = true;
                continue;
            }
            return Err(Error::Parse(format!(
                "unexpected input at \"{}\"",
                &rest[..rest.len().min(12)]
            )));
        }
        if !saw_anything {
            return Err(Error::Parse("empty term".into()));
        }
        terms.push(Term {
            coeff,
            negative,
            x,
            d,
        });
        cur.skip_filler();
        match cur.peek() {
            None => break,
            Some(b'+') | Some(b'-') => continue,
            Some(_) => unreachable!("factor loop stops only at signs or the end"),
        }
    }
    Ok(terms)
}

fn term_scalar(field: FieldSpec, term: &Term) -> Result<Scalar> {
    let num = num_bigint::BigInt::from(term.coeff.0);
    let den = num_bigint::BigInt::from(term.coeff.1);
    let mut s = field.from_ratio(&num, &den)?;
    if term.negative {
        s = field.neg(&s);
    }
    Ok(s)
}

/// Parse a plain monomial (single term, coefficient 1, no derivatives).
pub fn parse_monomial(text: &str, labels: &[String]) -> Result<ExponentVector> {
    let terms = parse_terms(text, labels, false)?;
    if terms.len() != 1 {
        return Err(Error::Parse("expected a single monomial".into()));
    }
    let t = &terms[0];
    if t.negative || t.coeff != (1, 1) {
        return Err(Error::Parse("expected a monomial with coefficient 1".into()));
    }
    Ok(ExponentVector(t.x.clone()))
}

/// Parse a polynomial in the ring variables.
pub fn parse_polynomial(text: &str, labels: &[String], field: FieldSpec) -> Result<Polynomial> {
    let terms = parse_terms(text, labels, false)?;
    let mut p = Polynomial::zero(labels.len(), field);
    for t in &terms {
        p.add_term(ExponentVector(t.x.clone()), term_scalar(field, t)?);
    }
    Ok(p)
}

/// Parse a differential operator: monomials times divided-power derivatives.
pub fn parse_operator(text: &str, labels: &[String], field: FieldSpec) -> Result<DiffOp> {
    let terms = parse_terms(text, labels, true)?;
    let mut op = DiffOp::zero(labels.len(), field);
    for t in &terms {
        let mono = OperatorMonomial {
            x: ExponentVector(t.x.clone()),
            d: ExponentVector(t.d.clone()),
        };
        op = op.add(&DiffOp::from_monomial(mono, term_scalar(field, t)?, field));
    }
    Ok(op)
}

/// Split a fraction literal at its rightmost `/` into numerator and
/// denominator parts. Coefficient slashes (digits on both sides) are kept in
/// the numerator; a literal with no eligible slash is all numerator.
pub fn split_fraction(text: &str) -> (&str, Option<&str>) {
    let bytes = text.as_bytes();
    for pos in (0..bytes.len()).rev() {
        if bytes[pos] != b'/' {
            continue;
        }
        // a slash squeezed between digits is a rational coefficient
        let prev_digit = pos > 0 && bytes[pos - 1].is_ascii_digit();
        let next_digit = bytes.get(pos + 1).is_some_and(|c| c.is_ascii_digit());
        if prev_digit && next_digit {
            continue;
        }
        return (&text[..pos], Some(&text[pos + 1..]));
    }
    (text, None)
}

/// Parse a fraction literal `g/f^k` against the localizing monomial `f`,
/// returning the numerator and the denominator exponent.
pub fn parse_fraction_literal(
    text: &str,
    labels: &[String],
    field: FieldSpec,
    f: &ExponentVector,
) -> Result<(Polynomial, u32)> {
    let (num_text, den_text) = split_fraction(text);
    let num = parse_polynomial(num_text, labels, field)?;
    let Some(den_text) = den_text else {
        return Ok((num, 0));
    };
    let den = parse_monomial(den_text.trim(), labels)?;
    // express the denominator as f^k
    if den.is_zero() {
        return Err(Error::Parse("denominator cannot be 1; omit the slash".into()));
    }
    let mut k = 0u32;
    'outer: for cand in 1..=den.degree() {
        for i in 0..den.len() {
            if f.0[i] * cand != den.0[i] {
                continue 'outer;
            }
        }
        k = cand;
        break;
    }
    if k == 0 {
        return Err(Error::Parse(format!(
            "denominator is not a power of the localizing monomial {:?}",
            f
        )));
    }
    Ok((num, k))
}

/// Parse comma-separated rational coordinates.
pub fn parse_point(text: &str, field: FieldSpec) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let (neg, body) = match part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, part),
        };
        let (num_s, den_s) = match body.split_once('/') {
            Some((a, b)) => (a, b),
            None => (body, "1"),
        };
        let num: i64 = num_s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad coordinate \"{part}\"")))?;
        let den: i64 = den_s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad coordinate \"{part}\"")))?;
        let mut s = field.from_ratio(&num.into(), &den.into())?;
        if neg {
            s = field.neg(&s);
        }
        out.push(s);
    }
    Ok(out)
}

/// Parse a `lo:hi` multidegree box.
pub fn parse_box(text: &str) -> Result<(i32, i32)> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse("expected lo:hi".into()))?;
    let lo: i32 = lo
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad bound \"{lo}\"")))?;
    let hi: i32 = hi
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad bound \"{hi}\"")))?;
    if lo > hi {
        return Err(Error::Parse("empty box".into()));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tripp_labels() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into(), "w".into()]
    }

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn monomials_and_longest_label_match() {
        let labels = tripp_labels();
        assert_eq!(
            parse_monomial("x^2 w", &labels).unwrap(),
            ExponentVector(vec![2, 0, 0, 1])
        );
        // default labels: x4 must match the label x4, not x^4
        let defaults: Vec<String> = (1..=4).map(|i| format!("x{i}")).collect();
        assert_eq!(
            parse_monomial("x4", &defaults).unwrap(),
            ExponentVector(vec![0, 0, 0, 1])
        );
        assert!(parse_monomial("q", &labels).is_err());
        assert!(parse_monomial("x + y", &labels).is_err());
    }

    #[test]
    fn polynomials_with_rational_coefficients() {
        let labels = tripp_labels();
        let p = parse_polynomial("3/2 x y - w^2 + 1", &labels, q()).unwrap();
        assert_eq!(p.term_count(), 3);
        assert_eq!(
            p.coeff(&ExponentVector(vec![1, 1, 0, 0])),
            q().from_ratio(&3.into(), &2.into()).unwrap()
        );
        assert_eq!(
            p.coeff(&ExponentVector(vec![0, 0, 0, 2])),
            q().from_i64(-1)
        );
        assert_eq!(p.coeff(&ExponentVector(vec![0, 0, 0, 0])), q().one());
        assert!(parse_polynomial("x d1", &labels, q()).is_err());
    }

    #[test]
    fn operators_use_divided_power_brackets() {
        let labels = tripp_labels();
        let op = parse_operator("x d1^[1] - 2 w d4^[2]", &labels, q()).unwrap();
        let rendered = op.render(&labels);
        assert!(rendered.contains("d1"), "{rendered}");
        let terms: Vec<_> = op.terms().collect();
        assert_eq!(terms.len(), 2);
        let xdx = OperatorMonomial {
            x: ExponentVector(vec![1, 0, 0, 0]),
            d: ExponentVector(vec![1, 0, 0, 0]),
        };
        assert!(terms.iter().any(|(m, c)| **m == xdx && **c == q().one()));
        // operator literal "x4 d4^[2]" with spec labels
        let defaults: Vec<String> = (1..=4).map(|i| format!("x{i}")).collect();
        let op = parse_operator("x4 d4^[2]", &defaults, q()).unwrap();
        let terms: Vec<_> = op.terms().collect();
        assert_eq!(terms[0].0.x, ExponentVector(vec![0, 0, 0, 1]));
        assert_eq!(terms[0].0.d, ExponentVector(vec![0, 0, 0, 2]));
    }

    #[test]
    fn fraction_literals_split_at_the_rightmost_slash() {
        let labels = tripp_labels();
        let f = ExponentVector(vec![0, 0, 0, 1]);
        let (num, k) = parse_fraction_literal("x^3/w^2", &labels, q(), &f).unwrap();
        assert_eq!(k, 2);
        assert_eq!(num.term_count(), 1);
        // coefficient slash stays in the numerator
        let (num, k) = parse_fraction_literal("1/2 x/w", &labels, q(), &f).unwrap();
        assert_eq!(k, 1);
        assert_eq!(
            num.coeff(&ExponentVector(vec![1, 0, 0, 0])),
            q().from_ratio(&1.into(), &2.into()).unwrap()
        );
        // no slash: denominator exponent 0
        let (_, k) = parse_fraction_literal("x y", &labels, q(), &f).unwrap();
        assert_eq!(k, 0);
        // denominator must be a power of f
        assert!(parse_fraction_literal("x/y", &labels, q(), &f).is_err());
    }

    #[test]
    fn points_and_boxes() {
        let p = parse_point("1,1,0,0", q()).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p[0], q().one());
        assert_eq!(p[2], q().zero());
        let p = parse_point("-1/2, 3", q()).unwrap();
        assert_eq!(p[0], q().from_ratio(&(-1).into(), &2.into()).unwrap());
        assert_eq!(parse_box("-4:4").unwrap(), (-4, 4));
        assert!(parse_box("4:-4").is_err());
        assert!(parse_box("4").is_err());
    }
}
