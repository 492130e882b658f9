//! Text format: comma-separated integer coefficients, highest degree first
//! ("1,-2,-2,-2,1" is t^4 - 2t^3 - 2t^2 - 2t + 1).

use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use super::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

pub fn parse_poly(text: &str) -> Result<IntPoly, ParseError> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for field in text.split(',') {
        let trimmed = field.trim();
        let lead = field.len() - field.trim_start().len();
        if trimmed.is_empty() {
            return Err(ParseError {
                position: offset + lead,
                message: "empty coefficient".into(),
            });
        }
        let c = BigInt::from_str(trimmed).map_err(|_| ParseError {
            position: offset + lead,
            message: format!("`{trimmed}` is not an integer"),
        })?;
        coeffs.push(c);
        offset += field.len() + 1;
    }
    coeffs.reverse();
    Ok(IntPoly::new(coeffs))
}

pub fn print_poly(p: &IntPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs()
        .iter()
        .rev()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl FromStr for IntPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_poly("1,-3,1").unwrap(), IntPoly::from_desc(&[1, -3, 1]));
        assert_eq!(
            parse_poly("1,0,-1,-1,-1,0,1").unwrap(),
            IntPoly::from_desc(&[1, 0, -1, -1, -1, 0, 1])
        );
        assert_eq!(parse_poly(" 1, -2 ").unwrap(), IntPoly::from_desc(&[1, -2]));
        assert_eq!(parse_poly("0").unwrap(), IntPoly::zero());
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse_poly("1,,2").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_poly("1,x,2").unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse_poly("").is_err());
        assert!(parse_poly("1,2,").is_err());
    }

    #[test]
    fn print_examples() {
        assert_eq!(print_poly(&IntPoly::from_desc(&[1, -2, -2, -2, 1])), "1,-2,-2,-2,1");
        assert_eq!(print_poly(&IntPoly::zero()), "0");
    }

    proptest! {
        #[test]
        fn round_trip(coeffs in prop::collection::vec(-50i64..50, 1..9)) {
            let p = IntPoly::from_desc(&coeffs);
            prop_assert_eq!(parse_poly(&print_poly(&p)).unwrap(), p);
        }
    }
}
