mod literal;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use weyl_core::dixmier::{
    default_probes, eigenvectors_truncated, f_test, is_exponentiable, power_relation, Certificate, DixmierError,
    Exponentiable, FTest,
};
use weyl_core::lie::{
    catalog, filiform_normal_basis, lie_closure, recognize, weight_spaces, CatalogTag, LieAlgebra, LieError,
};
use weyl_core::serial::element_records;
use weyl_core::sl2::{
    casimir, exotic_report, group_act, isotropy_check, s11_test, triplet_check, S11Outcome, Sl2Error,
};
use weyl_core::{format_scalar, Realization, Scalar, Sl2Realization, WeylElement, WeylMorphism};

use literal::BadLiteral;

const SCHEMA: &str = "weyl-cli/1";

const GRAMMAR: &str = "\
Elements of the Weyl algebra (pq - qp = 1):
  expr   := ['+'|'-'] term (('+'|'-') term)*
  term   := factor (['*'] factor)*
  factor := atom ['^' nat]
  atom   := 'p' | 'q' | number | '(' expr ')'
  number := nat ['/' nat] ['i'] | 'i'
Multiplication is noncommutative and left-associative; '^' binds tighter
than '*'. Results are printed in normal order, p to the left of q.

Realisations: fI, fII(b), fIIvar(b), exotic, or 'X; Y; H'.
Morphisms: phi(n,l) q -> q + l p^n, phiP(n,l) p -> p + l q^n, scale(u),
  alpha1(a1,a2,a3,a4), alpha2(b1,b2), beta(a1,a3), id; joined by ';'
  as composition, so 'a;b' applies b first.
SL(2) matrices: 'a1,a2,a3,a4' for (a1 a2; a3 a4), id, tau.
Catalog tags: Abelian(n), Heisenberg3, Sl2, Sl2xC, Sl2SemidirectH3,
  L(n), LTilde(n), R(i1,...), R(i1,...)xC, LTildeModC(n), Sl2SemidirectC2.

Exit codes: 0 success, 1 negative answer, 2 usage or parse error,
3 resource bound hit.";

#[derive(Parser)]
#[command(name = "weyl", version, about = "Exact computations in the first Weyl algebra", after_long_help = GRAMMAR)]
struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Iteration bound for orbit and exponential searches.
    #[arg(long, global = true, default_value_t = 64)]
    max_iter: usize,
    /// Dimension bound for Lie closures.
    #[arg(long, global = true, default_value_t = 64)]
    max_dim: usize,
    /// Degree bound for truncated eigenspaces.
    #[arg(long, global = true, default_value_t = 8)]
    degree: u32,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Where a Lie algebra comes from: a catalog entry or the closure of
/// generators.
#[derive(Args)]
struct Source {
    /// Use a catalog entry instead of generators.
    #[arg(long, conflicts_with = "gens")]
    catalog: Option<String>,
    #[arg(required_unless_present = "catalog")]
    gens: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Product of the factors, left to right.
    Mul {
        #[arg(required = true)]
        factors: Vec<String>,
    },
    /// Commutator [x, y].
    Bracket { x: String, y: String },
    /// Dixmier class: Delta1 or Delta3 when decided, else a growth witness.
    Classify { x: String },
    /// Whether span{ad(z)^k a} stabilises within --max-iter brackets.
    Ftest { z: String, a: String },
    /// Basis of {y : [x, y] = lambda y} in degree at most --degree.
    Eigvecs { x: String, lambda: String },
    /// a with X1^|l2| = a X2^|l1| for commuting ad(h)-eigenvectors.
    Powrel { h: String, x1: String, x2: String },
    /// Lie subalgebra generated by the elements.
    Closure {
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// Catalog entry isomorphic to the algebra.
    Recognize {
        #[command(flatten)]
        src: Source,
    },
    /// Derived and lower central series, centre, solvability.
    Invariants {
        #[command(flatten)]
        src: Source,
    },
    /// Normal basis X0..Xn of a realised filiform algebra.
    Filiform {
        #[command(flatten)]
        src: Source,
    },
    /// Eigenspaces of ad of one basis element.
    Weights {
        /// Index of the grading element in the basis.
        #[arg(long, default_value_t = 0)]
        h: usize,
        #[command(flatten)]
        src: Source,
    },
    /// Checks [H,X]=2X, [H,Y]=-2Y, [X,Y]=H.
    Triplet { x: String, y: String, h: String },
    /// Scalar value of the Casimir element.
    Casimir { realization: String },
    /// (alpha, Ad(g)) . f = alpha o f o Ad(g)^-1.
    Act {
        morphism: String,
        g: String,
        realization: String,
    },
    /// Whether (alpha, Ad(g)) fixes the realisation.
    Isotropy {
        morphism: String,
        g: String,
        realization: String,
    },
    /// Computes the exotic realisation and compares it with both printed forms of H.
    Exotic,
    /// Compares the weight 2 and -2 eigenspaces of H with X C[H] and Y C[H].
    S11 { realization: String },
    /// Image of an element under a morphism.
    Apply { morphism: String, x: String },
    /// exp(ad z), when ad z is locally nilpotent on p and q.
    Expmap { z: String },
}

struct Outcome {
    negative: bool,
    text: String,
    json: Value,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Outcome {
            negative: false,
            text: text.into(),
            json,
        }
    }

    fn negative(text: impl Into<String>, json: Value) -> Self {
        Outcome {
            negative: true,
            text: text.into(),
            json,
        }
    }
}

enum Failure {
    Usage(String),
    Bound(String),
}

impl From<BadLiteral> for Failure {
    fn from(e: BadLiteral) -> Self {
        Failure::Usage(e.0)
    }
}

fn el_json(x: &WeylElement) -> Value {
    json!({ "text": x.to_string(), "terms": element_records(x) })
}

fn els_json(xs: &[WeylElement]) -> Value {
    Value::Array(xs.iter().map(el_json).collect())
}

fn lines(xs: &[WeylElement]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\n")
}

fn real_json(r: &Sl2Realization) -> Value {
    json!({ "X": el_json(r.x()), "Y": el_json(r.y()), "H": el_json(r.h()) })
}

fn algebra_json(alg: &LieAlgebra<Scalar>) -> Value {
    let brackets: Vec<Value> = alg
        .structure_constants()
        .into_iter()
        .map(|(i, j, k, c)| json!([i, j, k, format_scalar(&c)]))
        .collect();
    json!({ "dim": alg.dim(), "labels": alg.labels(), "brackets": brackets })
}

fn lie_failure(e: LieError) -> Result<Outcome, Failure> {
    match e {
        LieError::DimensionExceeded(_) | LieError::SpectrumTooLarge => Err(Failure::Bound(e.to_string())),
        LieError::BadParams(m) => Err(Failure::Usage(m)),
        e => Ok(Outcome::negative(e.to_string(), json!({ "reason": e.to_string() }))),
    }
}

fn elements(texts: &[String]) -> Result<Vec<WeylElement>, Failure> {
    texts
        .iter()
        .map(|t| literal::element(t).map_err(Failure::from))
        .collect()
}

fn resolve(src: &Source, max_dim: usize) -> Result<(LieAlgebra<Scalar>, Option<Realization>), Failure> {
    if let Some(t) = &src.catalog {
        let tag = literal::catalog_tag(t)?;
        return catalog(&tag).map_err(|e| Failure::Usage(e.to_string()));
    }
    let gens = elements(&src.gens)?;
    match lie_closure(&gens, max_dim) {
        Ok(r) => Ok((r.algebra.clone(), Some(r))),
        Err(LieError::DimensionExceeded(d)) => Err(Failure::Bound(format!("closure exceeds dimension {d}"))),
        Err(e) => Err(Failure::Usage(e.to_string())),
    }
}

fn realised(src: &Source, max_dim: usize) -> Result<Realization, Failure> {
    resolve(src, max_dim)?
        .1
        .ok_or_else(|| Failure::Usage("this catalog entry has no realisation in A1".into()))
}

fn certificate_json(c: &Option<Certificate<Scalar>>) -> Value {
    match c {
        None => Value::Null,
        Some(Certificate::Determinant(d)) => json!({ "determinant": format_scalar(d) }),
        Some(Certificate::PolynomialIn(v)) => json!({ "polynomial_in": v.to_string() }),
        Some(Certificate::Witness(w)) => json!({ "witness": el_json(w) }),
        Some(Certificate::Bounds { max_iter }) => json!({ "max_iter": max_iter }),
    }
}

fn s11_json(o: &S11Outcome<Scalar>) -> (String, Value) {
    match o {
        S11Outcome::InS11Pattern => ("matches the pattern".into(), json!({ "pattern": true })),
        S11Outcome::NotS11 { witness } => (
            format!("differs, witness {witness}"),
            json!({ "pattern": false, "witness": el_json(witness) }),
        ),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let el = |t: &str| literal::element(t).map_err(Failure::from);
    match &cli.cmd {
        Cmd::Mul { factors } => {
            let xs = elements(factors)?;
            let prod = xs.iter().skip(1).fold(xs[0].clone(), |acc, x| acc.mul(x));
            Ok(Outcome::ok(prod.to_string(), json!({ "value": el_json(&prod) })))
        }
        Cmd::Bracket { x, y } => {
            let b = el(x)?.bracket(&el(y)?);
            Ok(Outcome::ok(b.to_string(), json!({ "value": el_json(&b) })))
        }
        Cmd::Classify { x } => {
            let x = el(x)?;
            match is_exponentiable(&x, &default_probes(), cli.max_iter) {
                Err(DixmierError::ZeroElement) => Err(Failure::Usage("the zero element has no class".into())),
                Err(e) => Err(Failure::Usage(e.to_string())),
                Ok(Exponentiable::Yes(c)) => Ok(Outcome::ok(
                    c.tag.to_string(),
                    json!({ "class": c.tag.to_string(), "certificate": certificate_json(&c.certificate) }),
                )),
                Ok(Exponentiable::NoEvidence(a)) => Ok(Outcome::negative(
                    format!("not in Delta1 or Delta3: the ad-orbit of {a} does not stabilise"),
                    json!({ "class": "NotExponentiable", "witness": el_json(&a) }),
                )),
                Ok(Exponentiable::Undetermined { max_iter }) => Err(Failure::Bound(format!(
                    "undetermined within {max_iter} brackets per probe"
                ))),
            }
        }
        Cmd::Ftest { z, a } => match f_test(&el(z)?, &el(a)?, cli.max_iter) {
            FTest::Stabilized { dim, basis } => Ok(Outcome::ok(
                format!("stabilized at dimension {dim}"),
                json!({ "stabilized": true, "dim": dim, "basis": els_json(&basis) }),
            )),
            FTest::NotStabilized { dims } => Ok(Outcome::negative(
                format!("not stabilized after {} brackets; dimensions {dims:?}", dims.len() - 1),
                json!({ "stabilized": false, "dims": dims }),
            )),
        },
        Cmd::Eigvecs { x, lambda } => {
            let l = literal::scalar(lambda)?;
            let v = eigenvectors_truncated(&el(x)?, &l, cli.degree);
            let j = json!({ "lambda": format_scalar(&l), "degree": cli.degree, "basis": els_json(&v) });
            if v.is_empty() {
                Ok(Outcome::negative(
                    format!("no eigenvectors of degree <= {}", cli.degree),
                    j,
                ))
            } else {
                Ok(Outcome::ok(lines(&v), j))
            }
        }
        Cmd::Powrel { h, x1, x2 } => match power_relation(&el(h)?, &el(x1)?, &el(x2)?) {
            Ok(r) => Ok(Outcome::ok(
                format!(
                    "X1^{} = {} * X2^{}",
                    r.lambda2.unsigned_abs(),
                    format_scalar(&r.a),
                    r.lambda1.unsigned_abs()
                ),
                json!({ "lambda1": r.lambda1, "lambda2": r.lambda2, "a": format_scalar(&r.a) }),
            )),
            Err(DixmierError::NoProportionality) => Ok(Outcome::negative(
                "powers are not proportional",
                json!({ "reason": "no proportionality" }),
            )),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        Cmd::Closure { gens } => {
            let r = match lie_closure(&elements(gens)?, cli.max_dim) {
                Ok(r) => r,
                Err(e) => return lie_failure(e),
            };
            let text = std::iter::once(format!("dimension {}", r.images.len()))
                .chain(
                    r.algebra
                        .labels()
                        .iter()
                        .zip(&r.images)
                        .map(|(l, x)| format!("{l} = {x}")),
                )
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::ok(
                text,
                json!({ "algebra": algebra_json(&r.algebra), "basis": els_json(&r.images) }),
            ))
        }
        Cmd::Recognize { src } => {
            let (alg, _) = resolve(src, cli.max_dim)?;
            match recognize(&alg) {
                Ok(CatalogTag::Unknown) => Ok(Outcome::negative("Unknown", json!({ "tag": "Unknown" }))),
                Ok(t) => Ok(Outcome::ok(t.to_string(), json!({ "tag": t.to_string() }))),
                Err(e) => lie_failure(e),
            }
        }
        Cmd::Invariants { src } => {
            let (alg, _) = resolve(src, cli.max_dim)?;
            let i = alg.invariants();
            let text = format!(
                "dim {}\nderived series {:?}\nlower central series {:?}\ncentre {}\nsolvable {}\nnilpotent {}",
                i.dim, i.derived_series_dims, i.lower_central_dims, i.center_dim, i.solvable, i.nilpotent
            );
            Ok(Outcome::ok(
                text,
                json!({
                    "dim": i.dim,
                    "derived_series": i.derived_series_dims,
                    "lower_central_series": i.lower_central_dims,
                    "center_dim": i.center_dim,
                    "solvable": i.solvable,
                    "nilpotent": i.nilpotent,
                }),
            ))
        }
        Cmd::Filiform { src } => {
            let r = realised(src, cli.max_dim)?;
            match filiform_normal_basis(&r) {
                Ok(b) => {
                    let text = b
                        .iter()
                        .enumerate()
                        .map(|(k, x)| format!("X{k} = {x}"))
                        .collect::<Vec<_>>()
                        .join("\n");
                    Ok(Outcome::ok(text, json!({ "basis": els_json(&b) })))
                }
                Err(e) => lie_failure(e),
            }
        }
        Cmd::Weights { h, src } => {
            let r = realised(src, cli.max_dim)?;
            match weight_spaces(&r, *h) {
                Ok(w) => {
                    let text = w
                        .iter()
                        .map(|(l, v)| {
                            let xs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                            format!("{}: {}", format_scalar(l), xs.join(", "))
                        })
                        .collect::<Vec<_>>()
                        .join("\n");
                    let spaces: Vec<Value> = w
                        .iter()
                        .map(|(l, v)| json!({ "eigenvalue": format_scalar(l), "basis": els_json(v) }))
                        .collect();
                    Ok(Outcome::ok(
                        text,
                        json!({ "h": el_json(&r.images[*h]), "spaces": spaces }),
                    ))
                }
                Err(e) => lie_failure(e),
            }
        }
        Cmd::Triplet { x, y, h } => match triplet_check(el(x)?, el(y)?, el(h)?) {
            Ok(_) => Ok(Outcome::ok("sl(2) triplet", json!({ "triplet": true }))),
            Err(Sl2Error::RelationFailed(r)) => Ok(Outcome::negative(
                format!("relation {r} fails"),
                json!({ "triplet": false, "failed": r.to_string() }),
            )),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        Cmd::Casimir { realization } => {
            let r = literal::realization(realization)?;
            match casimir(&r) {
                Ok(c) => Ok(Outcome::ok(format_scalar(&c), json!({ "casimir": format_scalar(&c) }))),
                Err(e) => Ok(Outcome::negative(e.to_string(), json!({ "reason": e.to_string() }))),
            }
        }
        Cmd::Act {
            morphism,
            g,
            realization,
        } => {
            let (a, g, r) = (
                literal::morphism(morphism)?,
                literal::group_element(g)?,
                literal::realization(realization)?,
            );
            let moved = group_act(&a, &g, &r).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(Outcome::ok(moved.to_string(), json!({ "result": real_json(&moved) })))
        }
        Cmd::Isotropy {
            morphism,
            g,
            realization,
        } => {
            let (a, g, r) = (
                literal::morphism(morphism)?,
                literal::group_element(g)?,
                literal::realization(realization)?,
            );
            if isotropy_check(&r, &a, &g) {
                Ok(Outcome::ok("fixed", json!({ "fixed": true })))
            } else {
                Ok(Outcome::negative("moved", json!({ "fixed": false })))
            }
        }
        Cmd::Exotic => {
            let rep = exotic_report::<Scalar>();
            let h = match (rep.h_display_matches, rep.h_table_matches) {
                (true, false) => "H matches 2pq - 4p^2q^4 + 1",
                (false, true) => "H matches 2pq + 1 - 4p^4q^2",
                (true, true) => "H matches both forms",
                (false, false) => "H matches neither form",
            };
            let text = format!(
                "{}\nX matches: {}\nY matches: {}\n{h}",
                rep.computed, rep.x_matches, rep.y_matches
            );
            let j = json!({
                "computed": real_json(&rep.computed),
                "x_matches": rep.x_matches,
                "y_matches": rep.y_matches,
                "h_display_matches": rep.h_display_matches,
                "h_table_matches": rep.h_table_matches,
            });
            let consistent = rep.x_matches && rep.y_matches && rep.h_display_matches != rep.h_table_matches;
            Ok(if consistent {
                Outcome::ok(text, j)
            } else {
                Outcome::negative(text, j)
            })
        }
        Cmd::S11 { realization } => {
            let r = literal::realization(realization)?;
            let rep = s11_test(&r, cli.degree);
            let (pt, pj) = s11_json(&rep.plus);
            let (mt, mj) = s11_json(&rep.minus);
            Ok(Outcome::ok(
                format!("weight 2 vs X C[H]: {pt}\nweight -2 vs Y C[H]: {mt}"),
                json!({ "degree": cli.degree, "plus": pj, "minus": mj }),
            ))
        }
        Cmd::Apply { morphism, x } => {
            let y = literal::morphism(morphism)?.apply(&el(x)?);
            Ok(Outcome::ok(y.to_string(), json!({ "value": el_json(&y) })))
        }
        Cmd::Expmap { z } => match WeylMorphism::exp_ad(&el(z)?, cli.max_iter) {
            Ok(m) => Ok(Outcome::ok(
                format!("p -> {}\nq -> {}", m.image_p(), m.image_q()),
                json!({ "p": el_json(m.image_p()), "q": el_json(m.image_q()) }),
            )),
            Err(e) => Err(Failure::Bound(e.to_string())),
        },
    }
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Mul { .. } => "mul",
        Cmd::Bracket { .. } => "bracket",
        Cmd::Classify { .. } => "classify",
        Cmd::Ftest { .. } => "ftest",
        Cmd::Eigvecs { .. } => "eigvecs",
        Cmd::Powrel { .. } => "powrel",
        Cmd::Closure { .. } => "closure",
        Cmd::Recognize { .. } => "recognize",
        Cmd::Invariants { .. } => "invariants",
        Cmd::Filiform { .. } => "filiform",
        Cmd::Weights { .. } => "weights",
        Cmd::Triplet { .. } => "triplet",
        Cmd::Casimir { .. } => "casimir",
        Cmd::Act { .. } => "act",
        Cmd::Isotropy { .. } => "isotropy",
        Cmd::Exotic => "exotic",
        Cmd::S11 { .. } => "s11",
        Cmd::Apply { .. } => "apply",
        Cmd::Expmap { .. } => "expmap",
    }
}

/// Operands such as `-q` look like short flags to clap. The only short
/// flags are `-h` and `-V`, so anything else starting with a single dash is
/// shielded with a leading space, which the element grammar ignores.
fn shield_operands(args: impl Iterator<Item = String>) -> Vec<String> {
    args.map(|a| {
        let looks_negative = a.starts_with('-') && !a.starts_with("--") && a != "-h" && a != "-V";
        if looks_negative {
            format!(" {a}")
        } else {
            a
        }
    })
    .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(shield_operands(std::env::args()));
    let name = command_name(&cli.cmd);
    let (code, status, body) = match run(&cli) {
        Ok(o) if o.negative => (1, "negative", Ok(o)),
        Ok(o) => (0, "ok", Ok(o)),
        Err(Failure::Usage(m)) => (2, "usage", Err(m)),
        Err(Failure::Bound(m)) => (3, "bound", Err(m)),
    };
    if cli.json {
        let mut doc = json!({ "schema": SCHEMA, "command": name, "status": status });
        match body {
            Ok(o) => doc["result"] = o.json,
            Err(m) => doc["error"] = json!(m),
        }
        println!("{doc}");
    } else {
        match body {
            Ok(o) => println!("{}", o.text),
            Err(m) => eprintln!("weyl {name}: {m}"),
        }
    }
    ExitCode::from(code)
}
