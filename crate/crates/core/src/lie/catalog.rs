use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::{verify_realization, LieAlgebra, LieError, Realization};
use crate::field::Field;
use crate::weyl::Element;

/// Names for the algebras that can occur as finite-dimensional subalgebras
/// of `A₁`, plus the two quotients that show up along the way.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CatalogTag {
    Abelian(usize),
    Heisenberg3,
    Sl2,
    Sl2xC,
    Sl2SemidirectH3,
    /// Filiform `L_n`: basis `X₀ … X_n`, `[X₀, X_k] = X_{k+1}`.
    L(usize),
    /// `L_n` extended by `h`.
    LTilde(usize),
    /// `h` acting diagonally with weights `-i_k`; `central` adds a `ℂ` factor.
    R {
        indices: Vec<i64>,
        central: bool,
    },
    LTildeModC(usize),
    Sl2SemidirectC2,
    Unknown,
}

impl CatalogTag {
    pub fn r(indices: &[i64]) -> Self {
        CatalogTag::R {
            indices: indices.to_vec(),
            central: false,
        }
    }
}

impl fmt::Display for CatalogTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogTag::Abelian(n) => write!(f, "Abelian({n})"),
            CatalogTag::Heisenberg3 => f.write_str("Heisenberg3"),
            CatalogTag::Sl2 => f.write_str("Sl2"),
            CatalogTag::Sl2xC => f.write_str("Sl2xC"),
            CatalogTag::Sl2SemidirectH3 => f.write_str("Sl2SemidirectH3"),
            CatalogTag::L(n) => write!(f, "L({n})"),
            CatalogTag::LTilde(n) => write!(f, "LTilde({n})"),
            CatalogTag::R { indices, central } => {
                let ix: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
                write!(f, "R({})", ix.join(","))?;
                if *central {
                    f.write_str("xC")?;
                }
                Ok(())
            }
            CatalogTag::LTildeModC(n) => write!(f, "LTildeModC({n})"),
            CatalogTag::Sl2SemidirectC2 => f.write_str("Sl2SemidirectC2"),
            CatalogTag::Unknown => f.write_str("Unknown"),
        }
    }
}

impl FromStr for CatalogTag {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, LieError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || LieError::BadParams(format!("unknown catalog entry '{s}'"));
        match s.as_str() {
            "Heisenberg3" | "H3" => return Ok(CatalogTag::Heisenberg3),
            "Sl2" => return Ok(CatalogTag::Sl2),
            "Sl2xC" => return Ok(CatalogTag::Sl2xC),
            "Sl2SemidirectH3" => return Ok(CatalogTag::Sl2SemidirectH3),
            "Sl2SemidirectC2" => return Ok(CatalogTag::Sl2SemidirectC2),
            "Unknown" => return Ok(CatalogTag::Unknown),
            _ => {}
        }
        let (body, central) = match s.strip_suffix("xC") {
            Some(b) => (b, true),
            None => (s.as_str(), false),
        };
        let open = body.find('(').ok_or_else(bad)?;
        let name = &body[..open];
        let args = body[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<i64> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| a.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        };
        let one = || -> Result<usize, LieError> {
            match nums.as_slice() {
                [n] if *n >= 0 && !central => Ok(*n as usize),
                _ => Err(bad()),
            }
        };
        match name {
            "Abelian" => Ok(CatalogTag::Abelian(one()?)),
            "L" => Ok(CatalogTag::L(one()?)),
            "LTilde" => Ok(CatalogTag::LTilde(one()?)),
            "LTildeModC" => Ok(CatalogTag::LTildeModC(one()?)),
            "R" => Ok(CatalogTag::R { indices: nums, central }),
            _ => Err(bad()),
        }
    }
}

/// Canonical form of a tag: `H₃` is `L(2)`, `R` indices are sorted, made
/// positive and divided by their gcd, and a zero index becomes a central
/// factor.
pub fn normalise(tag: &CatalogTag) -> CatalogTag {
    match tag {
        CatalogTag::Heisenberg3 => CatalogTag::L(2),
        CatalogTag::R { indices, central } => {
            let mut central = *central;
            let mut ix: Vec<i64> = Vec::new();
            for &i in indices {
                if i == 0 {
                    central = true;
                } else {
                    ix.push(i);
                }
            }
            if ix.is_empty() {
                return CatalogTag::Abelian(1 + usize::from(central));
            }
            if ix.iter().all(|&i| i < 0) {
                ix.iter_mut().for_each(|i| *i = -*i);
            }
            let g = ix.iter().fold(0i64, |g, &i| g.gcd(&i));
            ix.iter_mut().for_each(|i| *i /= g);
            ix.sort_unstable();
            ix.dedup();
            CatalogTag::R { indices: ix, central }
        }
        other => other.clone(),
    }
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn x_labels(from: usize, to: usize) -> Vec<String> {
    (from..=to).map(|k| format!("X{k}")).collect()
}

fn int<F: Field>(n: i64) -> F {
    F::from_i64(n)
}

fn half<F: Field>(sign: i64) -> F {
    F::from_ratio(sign, 2)
}

/// `[X, Y] = H`, `[H, X] = 2X`, `[H, Y] = -2Y` on indices 0, 1, 2.
fn sl2_entries<F: Field>() -> Vec<(usize, usize, usize, F)> {
    vec![(0, 1, 2, int(1)), (2, 0, 0, int(2)), (2, 1, 1, int(-2))]
}

/// The sl(2) triple `X = -½q², Y = ½p², H = pq - ½`.
fn sl2_images<F: Field>() -> Vec<Element<F>> {
    vec![
        Element::term(0, 2, half(-1)),
        Element::term(2, 0, half(1)),
        Element::from_terms([(1, 1, int(1)), (0, 0, half(-1))]),
    ]
}

/// `p^m / m!`
fn divided_power<F: Field>(m: u32) -> Element<F> {
    let fact: num_bigint::BigInt = (1..=m).map(num_bigint::BigInt::from).product();
    Element::term(m, 0, F::one() / F::from_bigint(fact))
}

/// The algebra named by `tag` and, when it embeds in `A₁` in the standard
/// way, that embedding.
pub fn catalog<F: Field>(tag: &CatalogTag) -> Result<(LieAlgebra<F>, Option<Realization<F>>), LieError> {
    let (alg, images) = build(tag)?;
    let real = match images {
        Some(im) => Some(verify_realization(&alg, im)?),
        None => None,
    };
    Ok((alg, real))
}

type Built<F> = (LieAlgebra<F>, Option<Vec<Element<F>>>);

fn build<F: Field>(tag: &CatalogTag) -> Result<Built<F>, LieError> {
    let bad = |m: &str| Err(LieError::BadParams(format!("{tag}: {m}")));
    match tag {
        CatalogTag::Abelian(n) => {
            if *n == 0 {
                return bad("dimension must be positive");
            }
            let alg = LieAlgebra::new(x_labels(1, *n), Vec::new())?;
            let images = (1..=*n as u32).map(|k| Element::monomial(k, 0)).collect();
            Ok((alg, Some(images)))
        }
        CatalogTag::Heisenberg3 => {
            let alg = LieAlgebra::new(names(&["P", "Q", "Z"]), vec![(0, 1, 2, int(1))])?;
            Ok((alg, Some(vec![Element::p(), Element::q(), Element::one()])))
        }
        CatalogTag::Sl2 => {
            let alg = LieAlgebra::new(names(&["X", "Y", "H"]), sl2_entries())?;
            Ok((alg, Some(sl2_images())))
        }
        CatalogTag::Sl2xC => {
            let alg = LieAlgebra::new(names(&["X", "Y", "H", "Z"]), sl2_entries())?;
            let mut im = sl2_images();
            im.push(Element::one());
            Ok((alg, Some(im)))
        }
        CatalogTag::Sl2SemidirectH3 | CatalogTag::Sl2SemidirectC2 => {
            let h3 = matches!(tag, CatalogTag::Sl2SemidirectH3);
            let mut e = sl2_entries();
            // X, Y, H act on span{P, Q} as on (p, q)
            e.extend([
                (0, 3, 4, int(1)),
                (1, 4, 3, int(1)),
                (2, 3, 3, int(-1)),
                (2, 4, 4, int(1)),
            ]);
            let mut labels = names(&["X", "Y", "H", "P", "Q"]);
            if !h3 {
                return Ok((LieAlgebra::new(labels, e)?, None));
            }
            e.push((3, 4, 5, int(1)));
            labels.push("Z".into());
            let mut im = sl2_images();
            im.extend([Element::p(), Element::q(), Element::one()]);
            Ok((LieAlgebra::new(labels, e)?, Some(im)))
        }
        CatalogTag::L(n) => {
            let n = *n;
            if n < 2 {
                return bad("n must be at least 2");
            }
            let e = (1..n).map(|k| (0, k, k + 1, int(1)));
            let alg = LieAlgebra::new(x_labels(0, n), e)?;
            let mut im = vec![-Element::q()];
            im.extend((1..=n).map(|k| divided_power((n - k) as u32)));
            Ok((alg, Some(im)))
        }
        CatalogTag::LTilde(n) => {
            let n = *n;
            if n < 2 {
                return bad("n must be at least 2");
            }
            // h is index 0, X_k is index k + 1
            let mut e: Vec<(usize, usize, usize, F)> = vec![(0, 1, 1, int(1))];
            e.extend((1..n).map(|k| (0, k + 1, k + 1, int(-((n - k) as i64)))));
            e.extend((1..n).map(|k| (1, k + 1, k + 2, int(1))));
            let mut labels = vec!["h".to_string()];
            labels.extend(x_labels(0, n));
            let alg = LieAlgebra::new(labels, e)?;
            let mut im = vec![Element::monomial(1, 1), -Element::q()];
            im.extend((1..=n).map(|k| divided_power((n - k) as u32)));
            Ok((alg, Some(im)))
        }
        CatalogTag::LTildeModC(n) => {
            let n = *n;
            if n < 2 {
                return bad("n must be at least 2");
            }
            let mut e: Vec<(usize, usize, usize, F)> = vec![(0, 1, 1, int(1))];
            e.extend((1..n).map(|k| (0, k + 1, k + 1, int(-((n - k) as i64)))));
            e.extend((1..n - 1).map(|k| (1, k + 1, k + 2, int(1))));
            let mut labels = vec!["h".to_string()];
            labels.extend(x_labels(0, n - 1));
            Ok((LieAlgebra::new(labels, e)?, None))
        }
        CatalogTag::R { indices, central } => {
            let mut sorted = indices.clone();
            sorted.sort_unstable();
            if sorted.is_empty() || sorted.windows(2).any(|w| w[0] == w[1]) {
                return bad("indices must be nonempty and distinct");
            }
            if *central && sorted.contains(&0) {
                return bad("a zero index already gives the central factor");
            }
            let k = indices.len();
            let e: Vec<(usize, usize, usize, F)> = indices
                .iter()
                .enumerate()
                .filter(|(_, &i)| i != 0)
                .map(|(a, &i)| (0, a + 1, a + 1, int(-i)))
                .collect();
            let mut labels = vec!["h".to_string()];
            labels.extend(x_labels(1, k));
            if *central {
                labels.push("Z".into());
            }
            let alg = LieAlgebra::new(labels, e)?;
            // p^i has weight -i under ad(pq), q^i has weight i
            let images = if indices.iter().all(|&i| i >= 0) {
                Some(
                    indices
                        .iter()
                        .map(|&i| Element::monomial(i as u32, 0))
                        .collect::<Vec<_>>(),
                )
            } else if indices.iter().all(|&i| i <= 0) {
                Some(indices.iter().map(|&i| Element::monomial(0, (-i) as u32)).collect())
            } else {
                None
            };
            let images = images.map(|mut im| {
                im.insert(0, Element::monomial(1, 1));
                if *central {
                    im.push(Element::one());
                }
                im
            });
            Ok((alg, images))
        }
        CatalogTag::Unknown => bad("not a catalog entry"),
    }
}
