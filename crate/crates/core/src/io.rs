//! JSON forms of seminorms, cones, instances and certificates.
//!
//! Scalars are written as `"p/q"` strings (integers as plain strings) and
//! read from strings or JSON integers. Every parse error names the offending
//! field by its path, e.g. `cone_K.pieces[0].generators[1][0]`.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::numerics::{Functional, Scalar, Vector};
use crate::polyhedra::{ConeUnion, ConvexConePiece};
use crate::seminorms::{PolyhedralSeminorm, SublinearFunction};
use crate::separation::{SeparationCertificate, SeparationProblem, Variant};

/// How a seminorm was specified; kept so instances round-trip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeminormSpec {
    Linf,
    L1,
    Abs(Vector),
    Minkowski(Vec<Vector>),
    PsiMax(Vec<Vector>),
    /// Gauge of the regular `2·order`-gon.
    Polygon(usize),
    Custom(Vec<Vector>),
}

impl SeminormSpec {
    /// Command-line form: `linf`, `l1`, or `polygon:N` with `N` the number
    /// of polygon vertices (even, at least 4).
    pub fn parse_flag(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::parse("--seminorm", m.to_string());
        match text {
            "linf" => Ok(SeminormSpec::Linf),
            "l1" => Ok(SeminormSpec::L1),
            _ => {
                let n = text
                    .strip_prefix("polygon:")
                    .ok_or_else(|| bad(&format!("unknown seminorm `{text}`; expected linf, l1 or polygon:N")))?;
                let n: usize = n.parse().map_err(|_| bad(&format!("bad vertex count `{n}`")))?;
                if n < 4 || n % 2 != 0 {
                    return Err(bad(&format!("polygon vertex count must be even and at least 4, got {n}")));
                }
                Ok(SeminormSpec::Polygon(n / 2))
            }
        }
    }

    pub fn flag(&self) -> Option<String> {
        match self {
            SeminormSpec::Linf => Some("linf".into()),
            SeminormSpec::L1 => Some("l1".into()),
            SeminormSpec::Polygon(m) => Some(format!("polygon:{}", 2 * m)),
            _ => None,
        }
    }

    pub fn build(&self, dim: usize) -> Result<PolyhedralSeminorm> {
        let psi = match self {
            SeminormSpec::Linf => PolyhedralSeminorm::linf(dim),
            SeminormSpec::L1 => PolyhedralSeminorm::l1(dim),
            SeminormSpec::Abs(x) => PolyhedralSeminorm::abs_functional(&Functional::new(x.clone()))?,
            SeminormSpec::Minkowski(ball) => PolyhedralSeminorm::minkowski_norm_from_ball(ball)?,
            SeminormSpec::PsiMax(g) => PolyhedralSeminorm::psi_max(&SublinearFunction::new(
                g.iter().cloned().map(Functional::new).collect(),
            )?),
            SeminormSpec::Polygon(m) => PolyhedralSeminorm::regular_polygon_norm(*m)?,
            SeminormSpec::Custom(g) => PolyhedralSeminorm::new(g.iter().cloned().map(Functional::new).collect())?,
        };
        if psi.dim() != dim {
            return Err(Error::parse(
                "seminorm",
                format!("seminorm has dimension {}, instance has {dim}", psi.dim()),
            ));
        }
        Ok(psi)
    }

    pub fn to_json(&self) -> Value {
        let gens = |g: &[Vector]| serde_json::to_value(g).expect("vectors serialize");
        match self {
            SeminormSpec::Linf => json!({"kind": "linf"}),
            SeminormSpec::L1 => json!({"kind": "l1"}),
            SeminormSpec::Abs(x) => json!({"kind": "abs", "generators": gens(std::slice::from_ref(x))}),
            SeminormSpec::Minkowski(g) => json!({"kind": "minkowski", "generators": gens(g)}),
            SeminormSpec::PsiMax(g) => json!({"kind": "psi_max", "generators": gens(g)}),
            SeminormSpec::Polygon(m) => json!({"kind": "polygon", "order": m}),
            SeminormSpec::Custom(g) => json!({"kind": "custom", "generators": gens(g)}),
        }
    }

    pub fn from_json(v: &Value, path: &str) -> Result<Self> {
        let obj = object(v, path)?;
        let kind = string(field(obj, "kind", path)?, &join(path, "kind"))?;
        let gens = || vectors(field(obj, "generators", path)?, &join(path, "generators"));
        match kind {
            "linf" => Ok(SeminormSpec::Linf),
            "l1" => Ok(SeminormSpec::L1),
            "abs" => {
                let g = gens()?;
                match g.as_slice() {
                    [x] => Ok(SeminormSpec::Abs(x.clone())),
                    _ => Err(Error::parse(join(path, "generators"), "abs takes exactly one functional")),
                }
            }
            "minkowski" => Ok(SeminormSpec::Minkowski(gens()?)),
            "psi_max" => Ok(SeminormSpec::PsiMax(gens()?)),
            "custom" => Ok(SeminormSpec::Custom(gens()?)),
            "polygon" => {
                let p = join(path, "order");
                let m = field(obj, "order", path)?
                    .as_u64()
                    .ok_or_else(|| Error::parse(&p, "expected a positive integer"))?;
                if m < 2 {
                    return Err(Error::parse(p, format!("polygon order must be at least 2, got {m}")));
                }
                Ok(SeminormSpec::Polygon(m as usize))
            }
            other => Err(Error::parse(join(path, "kind"), format!("unknown seminorm kind `{other}`"))),
        }
    }
}

/// A parsed instance file.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: Option<String>,
    pub seminorm: SeminormSpec,
    pub problem: SeparationProblem,
    pub seed: Option<u64>,
}

impl Instance {
    pub fn new(problem: SeparationProblem, seminorm: SeminormSpec) -> Self {
        Instance {
            name: None,
            seminorm,
            problem,
            seed: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("dimension".into(), json!(self.problem.dim()));
        m.insert("seminorm".into(), self.seminorm.to_json());
        m.insert("cone_K".into(), cone_to_json(&self.problem.k, None));
        m.insert("cone_A".into(), cone_to_json(&self.problem.a, None));
        m.insert("variant".into(), json!(self.problem.variant.as_str()));
        if let Some(s) = self.seed {
            m.insert("seed".into(), json!(s));
        }
        if let Some(n) = &self.name {
            m.insert("name".into(), json!(n));
        }
        Value::Object(m)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("instance serializes");
        s.push('\n');
        s
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::parse(display(path), "expected an object"))
}

fn display(path: &str) -> String {
    if path.is_empty() {
        "<root>".into()
    } else {
        path.into()
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::parse(join(path, key), "missing field"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::parse(path, "expected a string"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

pub fn scalar_from_json(v: &Value, path: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => Scalar::parse(s).map_err(|e| Error::parse(path, format!("{e}"))),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Scalar::from_int(i)),
            None => Err(Error::parse(
                path,
                format!("non-integer number {n}; write rationals as \"p/q\" strings"),
            )),
        },
        _ => Err(Error::parse(path, "expected a rational \"p/q\" or an integer")),
    }
}

pub fn vector_from_json(v: &Value, path: &str) -> Result<Vector> {
    let items = array(v, path)?;
    let coords = items
        .iter()
        .enumerate()
        .map(|(i, x)| scalar_from_json(x, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Vector::new(coords))
}

fn vectors(v: &Value, path: &str) -> Result<Vec<Vector>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| vector_from_json(x, &format!("{path}[{i}]")))
        .collect()
}

fn check_dims(vs: &[Vector], dim: usize, path: &str) -> Result<()> {
    for (i, v) in vs.iter().enumerate() {
        if v.dim() != dim {
            return Err(Error::parse(
                format!("{path}[{i}]"),
                format!("expected {dim} coordinates, found {}", v.dim()),
            ));
        }
    }
    Ok(())
}

/// `{"pieces": [{"generators": [[...], ...]}], "name": "..."}`
pub fn cone_from_json(v: &Value, dim: usize, path: &str) -> Result<ConeUnion> {
    let obj = object(v, path)?;
    let pieces_path = join(path, "pieces");
    let pieces = array(field(obj, "pieces", path)?, &pieces_path)?;
    if pieces.is_empty() {
        return Err(Error::parse(pieces_path, "a cone needs at least one piece"));
    }
    let mut out = Vec::with_capacity(pieces.len());
    for (i, p) in pieces.iter().enumerate() {
        let pp = format!("{pieces_path}[{i}]");
        let gp = join(&pp, "generators");
        let gens = vectors(field(object(p, &pp)?, "generators", &pp)?, &gp)?;
        check_dims(&gens, dim, &gp)?;
        let piece = ConvexConePiece::from_generators(&gens, dim).map_err(|e| Error::parse(&gp, e.to_string()))?;
        out.push(piece);
    }
    ConeUnion::new(out).map_err(|e| Error::parse(pieces_path, e.to_string()))
}

pub fn cone_to_json(c: &ConeUnion, name: Option<&str>) -> Value {
    let pieces: Vec<Value> = c
        .pieces()
        .iter()
        .map(|p| json!({"generators": p.generators()}))
        .collect();
    let mut m = Map::new();
    m.insert("pieces".into(), Value::Array(pieces));
    if let Some(n) = name {
        m.insert("name".into(), json!(n));
    }
    Value::Object(m)
}

/// Parses an instance; `seminorm_override` replaces the file's gauge.
pub fn parse_instance(text: &str, seminorm_override: Option<&SeminormSpec>) -> Result<Instance> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    instance_from_json(&v, seminorm_override)
}

pub fn instance_from_json(v: &Value, seminorm_override: Option<&SeminormSpec>) -> Result<Instance> {
    let obj = object(v, "")?;
    let dim = field(obj, "dimension", "")?
        .as_u64()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::parse("dimension", "expected a positive integer"))? as usize;
    if dim > crate::polyhedra::MAX_DIM {
        return Err(Error::parse(
            "dimension",
            format!("dimension {dim} exceeds the supported maximum {}", crate::polyhedra::MAX_DIM),
        ));
    }
    let seminorm = match seminorm_override {
        Some(s) => s.clone(),
        None => SeminormSpec::from_json(field(obj, "seminorm", "")?, "seminorm")?,
    };
    let psi = seminorm
        .build(dim)
        .map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::parse("seminorm", other.to_string()),
        })?;
    let k = cone_from_json(field(obj, "cone_K", "")?, dim, "cone_K")?;
    let a = cone_from_json(field(obj, "cone_A", "")?, dim, "cone_A")?;
    let variant = match obj.get("variant") {
        None | Some(Value::Null) => Variant::Strict,
        Some(s) => Variant::parse(string(s, "variant")?)?,
    };
    let seed = match obj.get("seed") {
        None | Some(Value::Null) => None,
        Some(s) => Some(
            s.as_u64()
                .ok_or_else(|| Error::parse("seed", "expected a nonnegative integer"))?,
        ),
    };
    let name = obj.get("name").and_then(Value::as_str).map(str::to_string);
    let problem = SeparationProblem::new(k, a, psi, variant)?;
    Ok(Instance {
        name,
        seminorm,
        problem,
        seed,
    })
}

/// `{"x_star", "alpha", "aug_class", "delta", "beta", "gamma", "achieved",
/// "verification", ...}`
pub fn certificate_to_json(cert: &SeparationCertificate) -> Value {
    json!({
        "variant": cert.variant,
        "x_star": cert.aug.x_star,
        "alpha": cert.aug.alpha,
        "aug_class": cert.aug_class,
        "delta": cert.hyperplane.delta,
        "beta": cert.hyperplane.beta,
        "gamma": cert.hyperplane.gamma,
        "achieved": cert.achieved,
        "linear": cert.linear,
        "verification": cert.verification,
    })
}

/// Reads `x_star` and `alpha` back from a certificate or augmented
/// functional object.
pub fn augmented_from_json(v: &Value, path: &str) -> Result<crate::augdual::AugmentedFunctional> {
    let obj = object(v, path)?;
    let x = vector_from_json(field(obj, "x_star", path)?, &join(path, "x_star"))?;
    let alpha = scalar_from_json(field(obj, "alpha", path)?, &join(path, "alpha"))?;
    crate::augdual::AugmentedFunctional::new(Functional::new(x), alpha)
        .map_err(|e| Error::parse(join(path, "alpha"), e.to_string()))
}

/// Deterministic pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
