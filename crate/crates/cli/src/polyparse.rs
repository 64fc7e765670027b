//! Text form of polynomials: `"2*x^2*y - 1/2 + zeta(3):[0,1]*x"`.

use std::str::FromStr;

use hopfva_core::scalar::Scalar;
use hopfva_core::vertexalg::{Monomial, Poly};

fn split_top_level(s: &str, seps: &[char]) -> Vec<(char, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut sign = '+';
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        let boundary = depth == 0 && seps.contains(&ch) && !matches!(prev, None | Some('^') | Some('*') | Some(':'));
        if boundary {
            out.push((sign, std::mem::take(&mut cur)));
            sign = ch;
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    out.push((sign, cur));
    out
}

pub fn parse_poly(text: &str, names: &[String]) -> Result<Poly, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let n = names.len();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut p = Poly::zero(n);
    for (sign, term) in split_top_level(&s, &['+', '-']) {
        let (negate, body) = match term.strip_prefix('-') {
            Some(rest) => (sign == '+', rest.to_string()),
            None => (sign == '-', term),
        };
        if body.is_empty() {
            return Err(format!("dangling sign in {text:?}"));
        }
        let mut coef = Scalar::one();
        let mut exps = vec![0u32; n];
        for (_, factor) in split_top_level(&body, &['*']) {
            let (base, power) = match factor.split_once('^') {
                Some((b, e)) if names.iter().any(|v| v == b) => {
                    (b.to_string(), e.parse::<u32>().map_err(|_| format!("bad exponent in {factor:?}"))?)
                }
                _ => (factor.clone(), 1),
            };
            if let Some(i) = names.iter().position(|v| *v == base) {
                exps[i] += power;
            } else {
                let bare = factor.strip_prefix('(').and_then(|f| f.strip_suffix(')')).unwrap_or(&factor);
                let c = Scalar::from_str(bare).map_err(|e| format!("{factor:?}: {e}"))?;
                coef = &coef * &c;
            }
        }
        if negate {
            coef = -coef;
        }
        p.add_term(Monomial(exps), coef);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn parses_mixed_terms() {
        let p = parse_poly("2*x^2*y - 1/2 + x", &names()).unwrap();
        assert_eq!(p.coefficient(&Monomial(vec![2, 1])), Scalar::from_int(2));
        assert_eq!(p.coefficient(&Monomial(vec![0, 0])), Scalar::from_ratio(-1, 2));
        assert_eq!(p.coefficient(&Monomial(vec![1, 0])), Scalar::one());
    }

    #[test]
    fn cyclotomic_coefficients_and_leading_signs() {
        let p = parse_poly("-zeta(3):[0,1]*x", &names()).unwrap();
        assert_eq!(p.coefficient(&Monomial(vec![1, 0])), -Scalar::zeta(3));
        let q = parse_poly("x - y", &names()).unwrap();
        assert_eq!(q.coefficient(&Monomial(vec![0, 1])), -Scalar::one());
        assert!(parse_poly("x*w", &names()).is_err());
    }

    #[test]
    fn round_trips_the_formatter() {
        let p = parse_poly("3*x*y - x^2 + 1 - 1/2*y^3", &names()).unwrap();
        assert_eq!(parse_poly(&p.format(&names()), &names()).unwrap(), p);
    }
}
