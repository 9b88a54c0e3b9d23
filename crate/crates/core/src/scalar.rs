//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! Every symbolic computation in this crate runs over ℚ or ℚ(i); floating
//! point appears only in the numeric spectrum module. `Rational` is stored
//! in lowest terms with a positive denominator (enforced by `num-rational`),
//! so equality is structural.

use num_bigint::{BigInt, Sign};
use num_complex::Complex;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Rational = BigRational;

/// Element of ℚ(i), the Gaussian rationals.
pub type GaussRational = Complex<Rational>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn gauss(re: Rational, im: Rational) -> GaussRational {
    Complex::new(re, im)
}

pub fn gauss_int(n: i64) -> GaussRational {
    Complex::new(rat_int(n), Rational::zero())
}

pub fn gauss_i() -> GaussRational {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn is_zero(x: &GaussRational) -> bool {
    x.re.is_zero() && x.im.is_zero()
}

pub fn is_real(x: &GaussRational) -> bool {
    x.im.is_zero()
}

/// Parses "p", "-p", "p/q" into a rational. The denominator must be positive.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid integer `{num}`"))?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| format!("invalid integer `{d}`"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    if d.sign() == Sign::Minus {
        return Err(format!("denominator must be positive in `{s}`"));
    }
    Ok(Rational::new(n, d))
}

/// Canonical "p/q" form ("p" when q = 1); used by every JSON surface.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn format_gauss(x: &GaussRational) -> String {
    if x.im.is_zero() {
        return format_rational(&x.re);
    }
    let im = if x.im.is_one() {
        "i".to_string()
    } else if (-x.im.clone()).is_one() {
        "-i".to_string()
    } else {
        format!("{}*i", format_rational(&x.im))
    };
    if x.re.is_zero() {
        im
    } else if x.im.is_negative() {
        format!("{}{}", format_rational(&x.re), im)
    } else {
        format!("{}+{}", format_rational(&x.re), im)
    }
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact integer n-th root, if it exists.
fn exact_nth_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if n == 1 {
        return Some(x.clone());
    }
    if x.is_negative() {
        if n.is_multiple_of(2) {
            return None;
        }
        return exact_nth_root(&-x, n).map(|r| -r);
    }
    let r = x.nth_root(n);
    if num_traits::pow::pow(r.clone(), n as usize) == *x {
        Some(r)
    } else {
        None
    }
}

/// t^e for rational t > 0 and rational exponent e, exactly, when the value is
/// rational; `None` when t^e is irrational.
pub fn rational_pow(t: &Rational, e: &Rational) -> Option<Rational> {
    assert!(t.is_positive(), "rational_pow requires t > 0");
    if e.is_zero() {
        return Some(Rational::one());
    }
    let q = e.denom().to_u32()?;
    let root_num = exact_nth_root(t.numer(), q)?;
    let root_den = exact_nth_root(t.denom(), q)?;
    let root = Rational::new(root_num, root_den);
    let p = e.numer().to_i64()?;
    let abs = num_traits::pow::pow(root, p.unsigned_abs() as usize);
    if p >= 0 {
        Some(abs)
    } else {
        Some(abs.recip())
    }
}

/// lcm of a nonempty list of positive rationals: the least positive rational
/// M with M/x integral for every x. Equals lcm(numerators)/gcd(denominators).
pub fn rational_lcm(xs: &[Rational]) -> Option<Rational> {
    if xs.is_empty() || xs.iter().any(|x| !x.is_positive()) {
        return None;
    }
    let mut num = BigInt::one();
    let mut den: BigInt = xs[0].denom().clone();
    for x in xs {
        num = num_integer::lcm(num, x.numer().clone());
        den = num_integer::gcd(den, x.denom().clone());
    }
    Some(Rational::new(num, den))
}

/// Wrapper giving rationals a stable display and JSON form.
#[derive(Clone, PartialEq, Eq)]
pub struct DisplayRational<'a>(pub &'a Rational);

impl fmt::Display for DisplayRational<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-7", "22/7", "-5/3", "0"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn pow_exact_cases() {
        // 4^(3/2) = 8
        assert_eq!(rational_pow(&rat_int(4), &rat(3, 2)), Some(rat_int(8)));
        // 2^(1/2) is irrational
        assert_eq!(rational_pow(&rat_int(2), &rat(1, 2)), None);
        // (8/27)^(2/3) = 4/9
        assert_eq!(rational_pow(&rat(8, 27), &rat(2, 3)), Some(rat(4, 9)));
        // negative exponent
        assert_eq!(rational_pow(&rat_int(4), &rat(-1, 2)), Some(rat(1, 2)));
    }

    #[test]
    fn lcm_of_rationals() {
        assert_eq!(
            rational_lcm(&[rat_int(2), rat_int(4), rat_int(6)]),
            Some(rat_int(12))
        );
        assert_eq!(rational_lcm(&[rat_int(1), rat(3, 2)]), Some(rat_int(3)));
        assert_eq!(rational_lcm(&[rat(1, 2), rat(1, 3)]), Some(rat_int(1)));
        assert_eq!(rational_lcm(&[]), None);
        assert_eq!(rational_lcm(&[rat_int(0)]), None);
    }

    #[test]
    fn gauss_formatting() {
        assert_eq!(format_gauss(&gauss_i()), "i");
        assert_eq!(format_gauss(&gauss(rat_int(2), rat(-1, 1))), "2-i");
        assert_eq!(format_gauss(&gauss(rat_int(0), rat(3, 2))), "3/2*i");
    }
}
