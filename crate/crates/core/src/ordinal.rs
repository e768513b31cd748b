//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a strictly decreasing sequence of terms `ω^e·c` with
//! `c ≥ 1`, where every exponent is itself an [`Ordinal`]. Because the form is
//! unique, the derived lexicographic ordering on the term vector is exactly the
//! ordinal ordering, and structural equality is ordinal equality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{ParseError, ScatteredError};

/// One CNF term `ω^exp · coeff`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub exp: Ordinal,
    pub coeff: u64,
}

/// An ordinal below ε₀, stored in Cantor normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::nat(1)
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![Term {
                    exp: Ordinal::zero(),
                    coeff: n,
                }],
            }
        }
    }

    /// `ω^exp`.
    pub fn omega_pow(exp: Ordinal) -> Self {
        Ordinal {
            terms: vec![Term { exp, coeff: 1 }],
        }
    }

    /// `ω^exp · coeff`; zero coefficient gives zero.
    pub fn monomial(exp: Ordinal, coeff: u64) -> Self {
        if coeff == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![Term { exp, coeff }],
            }
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs in any order,
    /// summing them left to right with ordinal addition.
    pub fn from_terms<I: IntoIterator<Item = (Ordinal, u64)>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(Ordinal::zero(), |acc, (e, c)| acc.add(&Ordinal::monomial(e, c)))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exp.is_zero())
    }

    /// The value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exp.is_zero() => Some(t.coeff),
            _ => None,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exp.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exp)
    }

    pub fn leading_coefficient(&self) -> Option<u64> {
        self.terms.first().map(|t| t.coeff)
    }

    /// Nesting depth of the exponent tower (0 for finite ordinals).
    pub fn height(&self) -> usize {
        self.terms
            .iter()
            .filter(|t| !t.exp.is_zero())
            .map(|t| 1 + t.exp.height())
            .max()
            .unwrap_or(0)
    }

    /// Splits `self = limit_part + n` with `n` finite.
    pub fn split_finite(&self) -> (Ordinal, u64) {
        match self.terms.last() {
            Some(t) if t.exp.is_zero() => {
                let head = Ordinal {
                    terms: self.terms[..self.terms.len() - 1].to_vec(),
                };
                (head, t.coeff)
            }
            _ => (self.clone(), 0),
        }
    }

    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut carry = 0u64;
        for t in &self.terms {
            match t.exp.cmp(&lead.exp) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => carry = t.coeff,
                Ordering::Less => break,
            }
        }
        let mut rest = rhs.terms.iter();
        let first = rest.next().expect("nonempty");
        terms.push(Term {
            exp: first.exp.clone(),
            coeff: first
                .coeff
                .checked_add(carry)
                .expect("ordinal coefficient overflow"),
        });
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    pub fn mul(&self, rhs: &Ordinal) -> Ordinal {
        if self.is_zero() || rhs.is_zero() {
            return Ordinal::zero();
        }
        let lead = &self.terms[0];
        rhs.terms.iter().fold(Ordinal::zero(), |acc, t| {
            let piece = if t.exp.is_zero() {
                // (ω^a·n + rest)·c = ω^a·(n·c) + rest
                let mut terms = self.terms.clone();
                terms[0].coeff = lead
                    .coeff
                    .checked_mul(t.coeff)
                    .expect("ordinal coefficient overflow");
                Ordinal { terms }
            } else {
                // self·ω^e = ω^(a+e) for e > 0
                Ordinal::monomial(lead.exp.add(&t.exp), t.coeff)
            };
            acc.add(&piece)
        })
    }
}

/// Three-way comparison; the derived ordering already coincides with the
/// ordinal order on CNF values.
pub fn compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

pub fn add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.add(b)
}

pub fn mul(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.mul(b)
}

pub fn omega_pow(a: &Ordinal) -> Ordinal {
    Ordinal::omega_pow(a.clone())
}

/// Cantor–Bendixson rank of the ordinal space `[0, a)`.
///
/// `ω^e` with `e > 0` has rank `e`; every other nonzero ordinal has rank
/// `e₁ + 1` where `e₁` is the leading exponent.
pub fn cb_rank_of_ordinal(a: &Ordinal) -> Result<Ordinal, ScatteredError> {
    match a.terms() {
        [] => Err(ScatteredError::ZeroOrdinal),
        [t] if t.coeff == 1 && !t.exp.is_zero() => Ok(t.exp.clone()),
        [t, ..] => Ok(t.exp.add(&Ordinal::one())),
    }
}

/// For a successor ordinal `a`, the pair `(α, n)` with `[0, a) ≅ ω^α·n + 1`.
pub fn canonical_compact_type(a: &Ordinal) -> Result<(Ordinal, u64), ScatteredError> {
    if !a.is_successor() {
        return Err(ScatteredError::NotSuccessor(a.to_string()));
    }
    let t = &a.terms()[0];
    Ok((t.exp.clone(), t.coeff))
}

/// Least ordinal receiving every countable metric space whose `a`-th
/// derivative is a single point.
///
/// With `a = γ + m` (γ zero or limit, m finite): `E(0) = 1`,
/// `E(m) = ω^(2m) + 1` and `E(γ + m) = ω^(γ + 2m + 1) + 1`.
pub fn embed_bound_e(a: &Ordinal) -> Ordinal {
    let (gamma, m) = a.split_finite();
    if gamma.is_zero() {
        if m == 0 {
            return Ordinal::one();
        }
        return Ordinal::omega_pow(Ordinal::nat(2 * m)).add(&Ordinal::one());
    }
    let exp = gamma.add(&Ordinal::nat(2 * m + 1));
    Ordinal::omega_pow(exp).add(&Ordinal::one())
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.exp.is_zero() {
                write!(f, "{}", t.coeff)?;
                continue;
            }
            f.write_str("w")?;
            if t.exp != Ordinal::one() {
                if t.exp.as_nat().is_some() || t.exp == Ordinal::omega() {
                    write!(f, "^{}", t.exp)?;
                } else {
                    write!(f, "^({})", t.exp)?;
                }
            }
            if t.coeff != 1 {
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ordinal(s)
    }
}

/// Parses the textual ordinal grammar; non-CNF sums are normalized.
pub fn parse_ordinal(text: &str) -> Result<Ordinal, ParseError> {
    let mut p = OrdParser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct OrdParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl OrdParser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Accepts `w` or the UTF-8 `ω`.
    fn eat_omega(&mut self) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b'w') {
            self.pos += 1;
            true
        } else if self.src[self.pos..].starts_with("ω".as_bytes()) {
            self.pos += "ω".len();
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ParseError::new(start, "natural number too large"))
    }

    fn sum(&mut self) -> Result<Ordinal, ParseError> {
        let mut acc = self.prod()?;
        while self.eat(b'+') {
            let rhs = self.prod()?;
            acc = acc.add(&rhs);
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<Ordinal, ParseError> {
        let base = self.pow()?;
        if self.eat(b'*') {
            let n = self.nat()?;
            return Ok(base.mul(&Ordinal::nat(n)));
        }
        Ok(base)
    }

    fn pow(&mut self) -> Result<Ordinal, ParseError> {
        if self.eat_omega() {
            if self.eat(b'^') {
                let e = self.exponent()?;
                return Ok(Ordinal::omega_pow(e));
            }
            return Ok(Ordinal::omega());
        }
        if self.eat(b'(') {
            let v = self.sum()?;
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(v);
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            _ => Err(self.error("expected 'w', a natural number or '('")),
        }
    }

    /// Exponents are atomic: a numeral, `w` (optionally raised again) or a
    /// parenthesized ordinal, so `w^2*3` reads as `(w^2)*3`.
    fn exponent(&mut self) -> Result<Ordinal, ParseError> {
        if self.eat_omega() {
            if self.eat(b'^') {
                let e = self.exponent()?;
                return Ok(Ordinal::omega_pow(e));
            }
            return Ok(Ordinal::omega());
        }
        if self.eat(b'(') {
            let v = self.sum()?;
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(v);
        }
        Ok(Ordinal::nat(self.nat()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let v = o("w^2*3+w+1");
        let pairs: Vec<(Ordinal, u64)> =
            v.terms().iter().map(|t| (t.exp.clone(), t.coeff)).collect();
        assert_eq!(
            pairs,
            vec![(Ordinal::nat(2), 3), (Ordinal::nat(1), 1), (Ordinal::zero(), 1)]
        );
        assert!(o("0").is_zero());
        assert_eq!(o("1+w"), Ordinal::omega());
        assert_eq!(o("w+w^2"), o("w^2"));
        assert_eq!(o(" w ^ ( w + 5 ) + 1 "), o("w^(w+5)+1"));
        assert_eq!(o("ω^2"), o("w^2"));
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse_ordinal("w^").unwrap_err();
        assert_eq!(e.pos, 2);
        let e = parse_ordinal("w+").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(parse_ordinal("w x").is_err());
        assert!(parse_ordinal("w*w").is_err());
        assert!(parse_ordinal("(w+1").is_err());
    }

    #[test]
    fn printing_is_canonical() {
        for s in ["0", "1", "w", "w^2*3+w+1", "w^(w+5)+1", "w^w", "w^(w^2)*2+7"] {
            assert_eq!(o(s).to_string(), s);
        }
        assert_eq!(o("w*1 + 0").to_string(), "w");
        assert_eq!(o("w^w^2*2+7").to_string(), "w^(w^2)*2+7");
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&o("w"), &o("w+1")), Ordering::Less);
        assert_eq!(compare(&o("w^2"), &o("w*5+3")), Ordering::Greater);
        assert_eq!(compare(&o("w^w"), &o("w^3*9")), Ordering::Greater);
    }

    #[test]
    fn add_examples() {
        assert_eq!(o("1").add(&o("w")), o("w"));
        assert_eq!(o("w").add(&o("1")), o("w+1"));
        assert_eq!(o("w^2*2+w").add(&o("w^2")), o("w^2*3"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(o("w").mul(&o("2")), o("w*2"));
        assert_eq!(o("2").mul(&o("w")), o("w"));
        assert_eq!(o("w+1").mul(&o("w")), o("w^2"));
    }

    #[test]
    fn mul_by_omega_is_sup_of_repeated_sums() {
        // (w+1)·n by repeated addition is w·n+1; all of these lie below the
        // product with w, and w^2 is the least ordinal above every w·n.
        let a = o("w+1");
        let prod = a.mul(&Ordinal::omega());
        let mut acc = Ordinal::zero();
        for n in 1..50u64 {
            acc = acc.add(&a);
            assert_eq!(acc, o(&format!("w*{n}+1")));
            assert!(acc < prod);
        }
        assert_eq!(prod, o("w^2"));
    }

    #[test]
    fn omega_pow_examples() {
        assert_eq!(omega_pow(&Ordinal::zero()), Ordinal::one());
        assert_eq!(omega_pow(&Ordinal::one()), Ordinal::omega());
        assert_eq!(omega_pow(&Ordinal::omega()), o("w^w"));
    }

    #[test]
    fn cb_rank_examples() {
        assert_eq!(cb_rank_of_ordinal(&o("w^3")).unwrap(), o("3"));
        assert_eq!(cb_rank_of_ordinal(&o("w^3+1")).unwrap(), o("4"));
        assert_eq!(cb_rank_of_ordinal(&o("w^2*5+w*3")).unwrap(), o("3"));
        assert_eq!(cb_rank_of_ordinal(&o("1")).unwrap(), o("1"));
        assert_eq!(cb_rank_of_ordinal(&o("w^w")).unwrap(), o("w"));
        assert!(matches!(
            cb_rank_of_ordinal(&Ordinal::zero()),
            Err(ScatteredError::ZeroOrdinal)
        ));
    }

    #[test]
    fn canonical_compact_examples() {
        assert_eq!(canonical_compact_type(&o("w^2*3+w+1")).unwrap(), (o("2"), 3));
        assert_eq!(canonical_compact_type(&o("1")).unwrap(), (o("0"), 1));
        assert_eq!(canonical_compact_type(&o("w+1")).unwrap(), (o("1"), 1));
        assert!(canonical_compact_type(&o("w^2")).is_err());
    }

    #[test]
    fn e_bound_examples() {
        assert_eq!(embed_bound_e(&o("0")), o("1"));
        assert_eq!(embed_bound_e(&o("1")), o("w^2+1"));
        assert_eq!(embed_bound_e(&o("w+2")), o("w^(w+5)+1"));
        assert_eq!(embed_bound_e(&o("w")), o("w^(w+1)+1"));
        for m in 1..6u64 {
            assert_eq!(
                embed_bound_e(&Ordinal::nat(m)),
                omega_pow(&Ordinal::nat(2 * m)).add(&Ordinal::one())
            );
        }
    }
}
