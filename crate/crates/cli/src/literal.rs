//! Operand syntax beyond plain elements: realisations, morphisms and
//! SL(2) matrices.

use weyl_core::lie::CatalogTag;
use weyl_core::morphism::{self, MorphismError};
use weyl_core::parse::{parse_element, parse_scalar_literal, ParseError};
use weyl_core::sl2::{self, f_i, f_ii, f_ii_variant, triplet_check, Sl2Error};
use weyl_core::{Field, SL2Element, Scalar, Sl2Realization, WeylElement, WeylMorphism};

/// A literal that did not parse or name a valid object. Always exit code 2.
#[derive(Debug)]
pub struct BadLiteral(pub String);

impl From<ParseError> for BadLiteral {
    fn from(e: ParseError) -> Self {
        BadLiteral(e.to_string())
    }
}

impl From<MorphismError> for BadLiteral {
    fn from(e: MorphismError) -> Self {
        BadLiteral(e.to_string())
    }
}

impl From<Sl2Error> for BadLiteral {
    fn from(e: Sl2Error) -> Self {
        BadLiteral(e.to_string())
    }
}

pub fn element(text: &str) -> Result<WeylElement, BadLiteral> {
    Ok(parse_element(text)?)
}

pub fn scalar(text: &str) -> Result<Scalar, BadLiteral> {
    Ok(parse_scalar_literal(text.trim())?)
}

/// Splits `name(a, b, …)` into the name and its arguments; a bare name has
/// no arguments.
fn call(text: &str) -> Result<(&str, Vec<&str>), BadLiteral> {
    let text = text.trim();
    match text.find('(') {
        None => Ok((text, Vec::new())),
        Some(open) => {
            let inner = text[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| BadLiteral(format!("missing ')' in {text:?}")))?;
            let args = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner.split(',').collect()
            };
            Ok((text[..open].trim(), args))
        }
    }
}

fn arity(name: &str, args: &[&str], n: usize) -> Result<(), BadLiteral> {
    if args.len() != n {
        return Err(BadLiteral(format!("{name} takes {n} arguments, got {}", args.len())));
    }
    Ok(())
}

fn exponent(text: &str) -> Result<u32, BadLiteral> {
    text.trim()
        .parse::<u32>()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| BadLiteral(format!("exponent must be a positive integer, got {text:?}")))
}

fn scalars<const N: usize>(name: &str, args: &[&str]) -> Result<[Scalar; N], BadLiteral> {
    arity(name, args, N)?;
    let v = args.iter().map(|a| scalar(a)).collect::<Result<Vec<_>, _>>()?;
    Ok(v.try_into().unwrap_or_else(|_| unreachable!()))
}

/// `fI`, `fII(b)`, `fIIvar(b)`, `exotic`, or three elements `X; Y; H`.
pub fn realization(text: &str) -> Result<Sl2Realization, BadLiteral> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() == 3 {
        let [x, y, h] = [parts[0], parts[1], parts[2]].map(element);
        return Ok(triplet_check(x?, y?, h?)?);
    }
    let (name, args) = call(text)?;
    match name {
        "fI" => {
            arity(name, &args, 0)?;
            Ok(f_i())
        }
        "exotic" => {
            arity(name, &args, 0)?;
            Ok(sl2::exotic_g())
        }
        "fII" => {
            let [b] = scalars(name, &args)?;
            Ok(f_ii(b))
        }
        "fIIvar" => {
            let [b] = scalars(name, &args)?;
            Ok(f_ii_variant(b))
        }
        _ => Err(BadLiteral(format!("unknown realisation {name:?}"))),
    }
}

fn sl2_matrix(name: &str, args: &[&str]) -> Result<SL2Element, BadLiteral> {
    let [a1, a2, a3, a4] = scalars(name, args)?;
    Ok(SL2Element::new(a1, a2, a3, a4)?)
}

fn generator(text: &str) -> Result<WeylMorphism, BadLiteral> {
    let (name, args) = call(text)?;
    match name {
        "id" => {
            arity(name, &args, 0)?;
            Ok(WeylMorphism::identity())
        }
        "phi" | "phiP" => {
            arity(name, &args, 2)?;
            let (n, l) = (exponent(args[0])?, scalar(args[1])?);
            Ok(if name == "phi" {
                WeylMorphism::phi(n, l)
            } else {
                WeylMorphism::phi_prime(n, l)
            })
        }
        "scale" => {
            let [u] = scalars(name, &args)?;
            Ok(WeylMorphism::scale(u)?)
        }
        "alpha1" => Ok(sl2::alpha1_hat(&sl2_matrix(name, &args)?)?),
        "alpha2" => {
            let [b1, b2] = scalars(name, &args)?;
            Ok(morphism::alpha2_hat([b1, b2]))
        }
        "beta" => {
            let [a1, a3] = scalars(name, &args)?;
            let a4 = a1.inv().ok_or_else(|| BadLiteral("beta needs a1 != 0".into()))?;
            let g = SL2Element::new(a1, Scalar::from(0), a3, a4)?;
            Ok(sl2::beta_hat(&g)?)
        }
        _ => Err(BadLiteral(format!("unknown morphism {name:?}"))),
    }
}

/// Generators joined by `;`, read as function composition: `a;b` is `a ∘ b`,
/// so `b` acts first.
pub fn morphism(text: &str) -> Result<WeylMorphism, BadLiteral> {
    let mut m = WeylMorphism::identity();
    for part in text.split(';') {
        m = m.compose(&generator(part)?);
    }
    Ok(m)
}

/// `a1,a2,a3,a4` for the matrix `(a1 a2; a3 a4)`, or `id`, or `tau`.
pub fn group_element(text: &str) -> Result<SL2Element, BadLiteral> {
    match text.trim() {
        "id" => Ok(SL2Element::identity()),
        "tau" => SL2Element::tau().ok_or_else(|| BadLiteral("tau needs sqrt(-1)".into())),
        t => sl2_matrix("matrix", &t.split(',').collect::<Vec<_>>()),
    }
}

pub fn catalog_tag(text: &str) -> Result<CatalogTag, BadLiteral> {
    text.parse()
        .map_err(|e: weyl_core::lie::LieError| BadLiteral(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn morphism_literals() {
        let m = morphism("phi(1,2); phiP(2,1/3)").unwrap();
        let want = WeylMorphism::phi(1, Scalar::from(2)).compose(&WeylMorphism::phi_prime(2, Scalar::from_ratio(1, 3)));
        assert!(m.same_map(&want));
        assert!(morphism("scale(i)").is_ok());
        assert!(morphism("scale(0)").is_err());
        assert!(morphism("phi(0,1)").is_err());
        assert!(morphism("psi(1,1)").is_err());
        assert!(morphism("alpha1(1,1,0,1)").is_ok());
        assert!(morphism("alpha1(1,1,1,1)").is_err());
    }

    #[test]
    fn realisation_literals() {
        assert_eq!(realization("fI").unwrap(), f_i());
        assert_eq!(realization("fII(1/2)").unwrap(), f_ii(Scalar::from_ratio(1, 2)));
        assert_eq!(realization("-1/2*q^2; 1/2*p^2; p*q - 1/2").unwrap(), f_i());
        assert!(realization("q^2; p^2; p*q").is_err());
        assert!(realization("fII").is_err());
    }

    #[test]
    fn matrices() {
        assert_eq!(group_element("id").unwrap(), SL2Element::identity());
        assert!(group_element("1,2,0,1").is_ok());
        assert!(group_element("1,2,3,4").is_err());
        assert!(group_element("1,2").is_err());
    }
}
