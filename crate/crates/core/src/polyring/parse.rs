//! Text syntax for polynomials in `x`: terms like `3*x^2 - 1/2*x + 4`.
//! Whitespace is ignored, `*` is optional, rational coefficients are `p/q`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Poly, PolyError};
use crate::rational::Q;

pub fn parse_poly(input: &str) -> Result<Poly, PolyError> {
    let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let fail = |reason: &str| PolyError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(fail("empty input"));
    }
    let mut coeffs: Vec<Q> = Vec::new();
    let mut pos = 0;
    while pos < s.len() {
        let mut sign = Q::one();
        if s[pos] == '+' || s[pos] == '-' {
            if s[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        } else if pos > 0 {
            return Err(fail("expected '+' or '-' between terms"));
        }

        let coef = match read_int(&s, &mut pos) {
            Some(num) => {
                let mut c = Q::from_integer(num);
                if s.get(pos) == Some(&'/') {
                    pos += 1;
                    let den = read_int(&s, &mut pos).ok_or_else(|| fail("missing denominator"))?;
                    if den.is_zero() {
                        return Err(fail("zero denominator"));
                    }
                    c /= Q::from_integer(den);
                }
                Some(c)
            }
            None => None,
        };

        let mut has_star = false;
        if coef.is_some() && s.get(pos) == Some(&'*') {
            pos += 1;
            has_star = true;
        }
        let mut exp = 0usize;
        if s.get(pos) == Some(&'x') {
            pos += 1;
            exp = 1;
            if s.get(pos) == Some(&'^') {
                pos += 1;
                let e = read_int(&s, &mut pos).ok_or_else(|| fail("missing exponent"))?;
                exp = usize::try_from(e).map_err(|_| fail("exponent out of range"))?;
                if exp > 1 << 16 {
                    return Err(fail("exponent out of range"));
                }
            }
        } else if has_star {
            return Err(fail("expected 'x' after '*'"));
        } else if coef.is_none() {
            return Err(fail("expected a coefficient or 'x'"));
        }

        let c = coef.unwrap_or_else(Q::one) * sign;
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, Q::zero());
        }
        coeffs[exp] += c;
    }
    Ok(Poly::new(coeffs))
}

fn read_int(s: &[char], pos: &mut usize) -> Option<BigInt> {
    let start = *pos;
    while *pos < s.len() && s[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == start {
        return None;
    }
    let digits: String = s[start..*pos].iter().collect();
    digits.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    #[test]
    fn parses_reference_syntax() {
        let f = parse_poly("3*x^2 - 1/2*x + 4").unwrap();
        assert_eq!(f.coeffs(), &[q(4), q_frac(-1, 2), q(3)]);
        assert_eq!(parse_poly(" 3 * x ^ 2-1/2*x+4 ").unwrap(), f);
    }

    #[test]
    fn shorthand_forms() {
        assert_eq!(parse_poly("x").unwrap(), Poly::x());
        assert_eq!(parse_poly("-x^3").unwrap(), Poly::from_ints(&[0, 0, 0, -1]));
        assert_eq!(parse_poly("2x + x").unwrap(), Poly::from_ints(&[0, 3]));
        assert_eq!(parse_poly("0").unwrap(), Poly::zero());
        assert_eq!(parse_poly("x - x").unwrap(), Poly::zero());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "y", "3*", "x^", "1/0", "x x", "1/", "++x"] {
            assert!(parse_poly(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn display_roundtrip() {
        let f = Poly::new(vec![q_frac(7, 3), q(0), q(-1), q_frac(1, 5)]);
        assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }
}
