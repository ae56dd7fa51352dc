use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::arith::mobius;
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// A quotient of integer polynomials in canonical form: `gcd(num, den) = 1`
/// with coprime contents, and the lowest nonzero coefficient of the
/// denominator positive (the constant term whenever it is nonzero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        Self::normalize(p, IntPolynomial::one())
    }

    /// `1 / p`
    pub fn reciprocal_of(p: IntPolynomial) -> Result<Self> {
        Self::new(IntPolynomial::one(), p)
    }

    pub fn one() -> Self {
        Self::from_poly(IntPolynomial::one())
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    fn normalize(num: IntPolynomial, den: IntPolynomial) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num,
                den: IntPolynomial::one(),
            };
        }
        let g = IntPolynomial::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if den.trailing().is_some_and(|t| t.is_negative()) {
            num = -&num;
            den = -&den;
        }
        RationalFunction { num, den }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::normalize(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::normalize(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self::normalize(base.num.pow(k), base.den.pow(k)))
    }

    /// `r(1/z)`
    pub fn at_reciprocal(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let (num, den) = (self.num.reversed(), self.den.reversed());
        if dd >= dn {
            Self::normalize(num.shift(dd - dn), den)
        } else {
            Self::normalize(num, den.shift(dn - dd))
        }
    }

    /// Multiplies by `c z^k`.
    pub fn scale_monomial(&self, c: i64, k: usize) -> Self {
        Self::normalize(&self.num * &IntPolynomial::monomial(c, k), self.den.clone())
    }

    /// First `n + 1` Taylor coefficients at `z = 0`, or `None` when the
    /// denominator vanishes there.
    pub fn taylor(&self, n: usize) -> Option<Vec<BigRational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return None;
        }
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = BigRational::from_integer(self.num.coeff(k));
            for j in 1..=k.min(self.den.degree().unwrap_or(0)) {
                let dj = self.den.coeff(j);
                if !dj.is_zero() {
                    acc -= &out[k - j] * BigRational::from_integer(dj);
                }
            }
            out.push(acc / BigRational::from_integer(d0.clone()));
        }
        Some(out)
    }

    /// Parses the textual form produced by `Display`, and more generally any
    /// expression in `z`, integers, `+ - * / ^` and parentheses.
    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).parse()
    }
}

/// Canonical rendering: cyclotomic-type factors `(1 - z)`, `(1 + z)`,
/// `(1 + z + z^2)`, ... are pulled out of numerator and denominator and any
/// remaining part is printed expanded, e.g. `(1 - z)^2 / (1 - 3*z + z^2)`.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = FactoredPoly::of(&self.num);
        if self.den.is_one() {
            return f.write_str(&num.render());
        }
        let den = FactoredPoly::of(&self.den);
        let den_text = den.render();
        if den.item_count() > 1 || !den.unit.is_one() {
            write!(f, "{} / ({})", num.render(), den_text)
        } else {
            write!(f, "{} / {}", num.render(), den_text)
        }
    }
}

struct FactoredPoly {
    unit: BigInt,
    factors: Vec<(IntPolynomial, u32)>,
    rest: Option<IntPolynomial>,
}

impl FactoredPoly {
    fn of(p: &IntPolynomial) -> Self {
        let mut rest = p.clone();
        let mut factors = Vec::new();
        let valuation = rest.valuation();
        if valuation > 0 {
            rest = IntPolynomial::new(rest.coeffs()[valuation..].to_vec());
            factors.push((IntPolynomial::monomial(1, 1), valuation as u32));
        }
        let degree = rest.degree().unwrap_or(0);
        let mut m = 1usize;
        let bound = (2 * degree * degree + 2).min(MAX_DISPLAY_CYCLOTOMIC);
        while degree > 0 && m <= bound {
            let phi = cyclotomic_one_form(m);
            if phi.degree().unwrap_or(0) <= degree {
                let mut k = 0;
                while rest.degree().unwrap_or(0) > 0 {
                    match rest.div_exact(&phi) {
                        Some(q) => {
                            rest = q;
                            k += 1;
                        }
                        None => break,
                    }
                }
                if k > 0 {
                    factors.push((phi, k));
                }
            }
            m += 1;
        }
        if rest.degree().unwrap_or(0) == 0 {
            let unit = rest.coeff(0);
            FactoredPoly {
                unit,
                factors,
                rest: None,
            }
        } else {
            FactoredPoly {
                unit: BigInt::one(),
                factors,
                rest: Some(rest),
            }
        }
    }

    fn item_count(&self) -> usize {
        self.factors.len() + usize::from(self.rest.is_some())
    }

    fn render(&self) -> String {
        let mut items: Vec<String> = self
            .factors
            .iter()
            .map(|(p, k)| {
                let base = if p.coeffs().len() == 2 && p.coeff(0).is_zero() {
                    "z".to_string()
                } else {
                    format!("({p})")
                };
                if *k == 1 {
                    base
                } else {
                    format!("{base}^{k}")
                }
            })
            .collect();
        if let Some(r) = &self.rest {
            items.push(format!("({r})"));
        }
        if items.is_empty() {
            return self.unit.to_string();
        }
        let body = items.join(" * ");
        if self.unit.is_one() {
            body
        } else if self.unit == -BigInt::one() {
            format!("-{body}")
        } else {
            format!("{} * {body}", self.unit)
        }
    }
}

/// The `m`-th cyclotomic polynomial scaled to constant term 1 (so `1 - z`
/// for `m = 1`), as `∏_{d | m} (1 - z^d)^{μ(m/d)}`.
fn cyclotomic_one_form(m: usize) -> IntPolynomial {
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
        match mobius((m / d) as u64) {
            1 => num = &num * &IntPolynomial::one_minus_z_pow(d),
            -1 => den = &den * &IntPolynomial::one_minus_z_pow(d),
            _ => {}
        }
    }
    num.div_exact(&den).expect("cyclotomic quotient is exact")
}

/// Largest cyclotomic index tried when factoring for display.
const MAX_DISPLAY_CYCLOTOMIC: usize = 512;

const MAX_PARSE_DEPTH: usize = 128;
const MAX_PARSE_DEGREE: usize = 4096;
const MAX_PARSE_BITS: u64 = 1 << 16;
const MAX_EXPONENT: u32 = 1024;

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            depth: 0,
        }
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::parse(
            1,
            format!("{msg} at column {} in `{}`", self.pos + 1, self.src),
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<RationalFunction> {
        let r = self.expr()?;
        if self.peek().is_some() {
            return self.fail("unexpected trailing input");
        }
        Ok(r)
    }

    fn check(&self, r: RationalFunction) -> Result<RationalFunction> {
        for p in [&r.num, &r.den] {
            if p.degree().unwrap_or(0) > MAX_PARSE_DEGREE || p.max_bits() > MAX_PARSE_BITS {
                return self.fail("expression too large");
            }
        }
        Ok(r)
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.check(acc.add(&rhs))?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.check(acc.sub(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.check(acc.mul(&rhs))?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = match acc.div(&rhs) {
                        Ok(r) => self.check(r)?,
                        Err(_) => return self.fail("division by zero"),
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        self.enter()?;
        let r = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.unary().map(|r| r.neg())
        } else {
            self.power()
        };
        self.depth -= 1;
        r
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_PARSE_DEPTH {
            return self.fail("expression nested too deeply");
        }
        Ok(())
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let Ok(e) = self.src[start..self.pos].parse::<u32>() else {
            return self.fail("expected a nonnegative integer exponent");
        };
        if e > MAX_EXPONENT {
            return self.fail("exponent too large");
        }
        let limit_deg = base.num.degree().unwrap_or(0).max(base.den.degree().unwrap_or(0)) as u64;
        let limit_bits = base.num.max_bits().max(base.den.max_bits());
        if limit_deg * u64::from(e) > MAX_PARSE_DEGREE as u64 || limit_bits * u64::from(e) > MAX_PARSE_BITS {
            return self.fail("expression too large");
        }
        match base.pow(e as i32) {
            Ok(r) => self.check(r),
            Err(_) => self.fail("division by zero"),
        }
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.enter()?;
                let r = self.expr()?;
                self.depth -= 1;
                if self.peek() != Some(b')') {
                    return self.fail("expected `)`");
                }
                self.pos += 1;
                Ok(r)
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(RationalFunction::from_poly(IntPolynomial::monomial(1, 1)))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.pos - start > 256 {
                    return self.fail("integer literal too long");
                }
                let n: BigInt = self.src[start..self.pos].parse().expect("digits");
                Ok(RationalFunction::from_poly(IntPolynomial::constant(n)))
            }
            _ => self.fail("expected `z`, an integer or `(`"),
        }
    }
}

/// Canonical content normalization helper for callers holding raw coefficient
/// vectors (e.g. JSON input).
pub fn from_coefficients(num: &[BigInt], den: &[BigInt]) -> Result<RationalFunction> {
    RationalFunction::new(IntPolynomial::new(num.to_vec()), IntPolynomial::new(den.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn r(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn normalization_is_canonical() {
        assert_eq!(r(&[2, -2], &[2, -2]), RationalFunction::one());
        assert_eq!(r(&[2, -2], &[4, -4]), r(&[1], &[2]));
        let a = r(&[-1], &[-1, 2]);
        assert_eq!(a.numerator(), &p(&[1]));
        assert_eq!(a.denominator(), &p(&[1, -2]));
        let b = r(&[2], &[4]);
        assert_eq!((b.numerator(), b.denominator()), (&p(&[1]), &p(&[2])));
        assert!(RationalFunction::new(p(&[1]), p(&[])).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(r(&[1], &[1, -1]).pow(3).unwrap().to_string(), "1 / (1 - z)^3");
        assert_eq!(r(&[1], &[1, -6]).to_string(), "1 / (1 - 6*z)");
        let a = r(&[1, -2, 1], &[1, -3, 1]);
        assert_eq!(a.to_string(), "(1 - z)^2 / (1 - 3*z + z^2)");
        let den = &p(&[1, -1]).pow(4) * &p(&[1, 1]).pow(2);
        assert_eq!(
            RationalFunction::reciprocal_of(den).unwrap().to_string(),
            "1 / ((1 - z)^4 * (1 + z)^2)"
        );
        assert_eq!(r(&[1, -1], &[1, -2]).to_string(), "(1 - z) / (1 - 2*z)");
        assert_eq!(r(&[0, 0, 3], &[1]).to_string(), "3 * z^2");
        assert_eq!(r(&[-1], &[1]).to_string(), "-1");
        assert_eq!(r(&[0, -1], &[1, 1, 1]).to_string(), "-z / (1 + z + z^2)");
    }

    #[test]
    fn display_round_trips() {
        let cases = [
            r(&[1], &[1, -1]),
            r(&[1, -2, 1], &[1, -3, 1]),
            r(&[3, 0, -7], &[2, 5]),
            r(&[0, -1], &[1, 1, 1]),
            r(&[5], &[1]),
            r(&[0], &[1]),
            r(&[1, 1], &[0, 1]),
            r(&[-4, 2], &[3, 0, 0, 1]),
        ];
        for c in cases {
            let text = c.to_string();
            assert_eq!(RationalFunction::parse(&text).unwrap(), c, "{text}");
        }
    }

    #[test]
    fn parse_errors() {
        for text in ["", "(", "1 +", "z^", "1/0", "y", "(1 - z))", "z^99999", "2 ^ -1"] {
            assert!(RationalFunction::parse(text).is_err(), "{text}");
        }
    }

    #[test]
    fn reciprocal_substitution() {
        // 1/(1-z) at 1/z is -z/(1-z).
        let a = r(&[1], &[1, -1]);
        assert_eq!(a.at_reciprocal(), r(&[0, -1], &[1, -1]));
        let b = r(&[1, -2, 1], &[1, -3, 1]);
        assert_eq!(b.at_reciprocal(), b);
    }

    #[test]
    fn taylor_of_geometric_series() {
        let a = r(&[1], &[1, -2]);
        let t = a.taylor(5).unwrap();
        let expect: Vec<BigRational> = (0..=5)
            .map(|k| BigRational::from_integer(BigInt::from(1i64 << k)))
            .collect();
        assert_eq!(t, expect);
        assert!(r(&[1], &[0, 1]).taylor(3).is_none());
    }

    proptest::proptest! {
        #[test]
        fn parse_inverts_display(num in proptest::collection::vec(-5i64..=5, 0..5),
                                 den in proptest::collection::vec(-5i64..=5, 1..5)) {
            proptest::prop_assume!(den.iter().any(|&c| c != 0));
            let a = r(&num, &den);
            proptest::prop_assert_eq!(RationalFunction::parse(&a.to_string()).unwrap(), a);
        }

        #[test]
        fn reciprocal_substitution_is_involutive(num in proptest::collection::vec(-5i64..=5, 1..5),
                                                den in proptest::collection::vec(-5i64..=5, 1..5)) {
            proptest::prop_assume!(den.iter().any(|&c| c != 0));
            let a = r(&num, &den);
            proptest::prop_assert_eq!(a.at_reciprocal().at_reciprocal(), a);
        }
    }
}
