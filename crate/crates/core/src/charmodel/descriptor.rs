use std::fmt;
use std::num::NonZeroUsize;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer};

use super::{GradedSpace, Stratum};
use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};

/// A Frobenius eigenvalue as written by the user: an exact rational, or a
/// power of the field size resolved when `q` is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenSpec {
    Exact(Rational),
    QPower(i32),
}

impl EigenSpec {
    pub fn resolve(&self, q: Option<u64>) -> Result<Rational> {
        match (self, q) {
            (EigenSpec::Exact(r), _) => Ok(r.clone()),
            (EigenSpec::QPower(0), _) => Ok(Rational::one()),
            (EigenSpec::QPower(k), Some(q)) => {
                let base = Rational::from_integer(BigInt::from(q));
                let mag = (0..k.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base);
                Ok(if *k < 0 { mag.recip() } else { mag })
            }
            (EigenSpec::QPower(_), None) => Err(Error::UnresolvedFieldSize(self.to_string())),
        }
    }
}

impl FromStr for EigenSpec {
    type Err = Error;

    /// `1`, `-2/3`, `q`, `q^2`, `q^-1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('q') {
            if rest.is_empty() {
                return Ok(EigenSpec::QPower(1));
            }
            let k = rest
                .strip_prefix('^')
                .and_then(|e| e.trim().parse::<i32>().ok())
                .ok_or_else(|| Error::Parse {
                    input: s.to_string(),
                    reason: "expected q^k with an integer k".into(),
                })?;
            return Ok(EigenSpec::QPower(k));
        }
        parse_rational(t).map(EigenSpec::Exact)
    }
}

impl fmt::Display for EigenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenSpec::Exact(r) => write!(f, "{r}"),
            EigenSpec::QPower(1) => f.write_str("q"),
            EigenSpec::QPower(k) => write!(f, "q^{k}"),
        }
    }
}

impl<'de> Deserialize<'de> for EigenSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn default_eigen() -> EigenSpec {
    EigenSpec::Exact(Rational::one())
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumSpec {
    pub deg: usize,
    pub dim: NonZeroUsize,
    #[serde(default = "default_eigen")]
    pub eigenvalue: EigenSpec,
}

/// Input datum for a variety: its cohomology strata with unresolved
/// eigenvalues. Read from JSON:
///
/// ```json
/// {"name": "G_m", "curve": true,
///  "strata": [{"deg": 0, "dim": 1, "eigenvalue": "1"},
///             {"deg": 1, "dim": 1, "eigenvalue": "q^-1"}]}
/// ```
///
/// Eigenvalues follow the arithmetic-Frobenius convention, under which a
/// curve has `q * sum (-1)^deg dim * eigenvalue` rational points.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyDescriptor {
    pub name: String,
    /// Smooth curve; point-count formulas are only claimed for these.
    #[serde(default)]
    pub curve: bool,
    pub strata: Vec<StratumSpec>,
}

pub const BUILTIN_NAMES: [&str; 5] = ["point", "affine", "torus", "punctured", "p1"];

impl VarietyDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Descriptor {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Descriptor {
            line: 0,
            column: 0,
            message: format!("{}: {e}", path.display()),
        })?;
        Self::from_json(&text)
    }

    fn make(name: &str, curve: bool, strata: &[(usize, usize, EigenSpec)]) -> Self {
        VarietyDescriptor {
            name: name.to_string(),
            curve,
            strata: strata
                .iter()
                .map(|(deg, dim, e)| StratumSpec {
                    deg: *deg,
                    dim: NonZeroUsize::new(*dim).expect("positive dimension"),
                    eigenvalue: e.clone(),
                })
                .collect(),
        }
    }

    /// `Spec F_q`: one class in degree 0 with eigenvalue `q^-1`.
    pub fn point() -> Self {
        Self::make("point", false, &[(0, 1, EigenSpec::QPower(-1))])
    }

    pub fn affine_line() -> Self {
        Self::make("affine", true, &[(0, 1, one())])
    }

    pub fn torus() -> Self {
        Self::make("torus", true, &[(0, 1, one()), (1, 1, EigenSpec::QPower(-1))])
    }

    /// The affine line minus `r` rational points.
    pub fn punctured_line(r: usize) -> Self {
        if r == 0 {
            return Self::affine_line();
        }
        Self::make("punctured", true, &[(0, 1, one()), (1, r, EigenSpec::QPower(-1))])
    }

    pub fn projective_line() -> Self {
        Self::make("p1", true, &[(0, 1, one()), (2, 1, EigenSpec::QPower(-1))])
    }

    /// One of [`BUILTIN_NAMES`]; `punctured` removes two points.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "point" => Some(Self::point()),
            "affine" | "a1" => Some(Self::affine_line()),
            "torus" | "gm" => Some(Self::torus()),
            "punctured" => Some(Self::punctured_line(2)),
            "p1" => Some(Self::projective_line()),
            _ => None,
        }
    }

    /// A builtin name, or else a path to a JSON descriptor.
    pub fn lookup(name_or_path: &str) -> Result<Self> {
        match Self::builtin(name_or_path) {
            Some(d) => Ok(d),
            None => Self::from_path(Path::new(name_or_path)),
        }
    }

    /// Eigenvalues specialized at `q`.
    pub fn resolve(&self, q: Option<u64>) -> Result<GradedSpace> {
        let strata = self
            .strata
            .iter()
            .map(|s| {
                Ok(Stratum {
                    deg: s.deg,
                    dim: s.dim.get(),
                    eigenvalue: s.eigenvalue.resolve(q)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedSpace::new(strata))
    }

    /// Betti data only.
    pub fn betti(&self) -> GradedSpace {
        GradedSpace::new(self.strata.iter().map(|s| Stratum {
            deg: s.deg,
            dim: s.dim.get(),
            eigenvalue: Rational::one(),
        }))
    }
}

fn one() -> EigenSpec {
    EigenSpec::Exact(Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn parses_descriptor() {
        let text = r#"{"name": "G_m", "strata": [
            {"deg": 0, "dim": 1, "eigenvalue": "1"},
            {"deg": 1, "dim": 1, "eigenvalue": "1/2"}]}"#;
        let d = VarietyDescriptor::from_json(text).unwrap();
        let v = d.resolve(None).unwrap();
        assert_eq!(v, GradedSpace::from_triples(&[(0, 1, int(1)), (1, 1, rat(1, 2))]));
        assert!(!d.curve);
    }

    #[test]
    fn q_tokens_resolve_per_invocation() {
        let d = VarietyDescriptor::torus();
        assert_eq!(d.resolve(Some(3)).unwrap().strata()[1].eigenvalue, rat(1, 3));
        assert!(matches!(d.resolve(None), Err(Error::UnresolvedFieldSize(_))));
        assert_eq!("q^2".parse::<EigenSpec>().unwrap().resolve(Some(2)).unwrap(), int(4));
        assert_eq!("q".parse::<EigenSpec>().unwrap(), EigenSpec::QPower(1));
        assert!("q^x".parse::<EigenSpec>().is_err());
    }

    #[test]
    fn malformed_descriptor_reports_position() {
        let text = "{\"name\": \"x\",\n \"strata\": [{\"deg\": 0, \"dim\": 0}]}";
        match VarietyDescriptor::from_json(text) {
            Err(Error::Descriptor { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("nonzero") || message.contains("zero"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let text = "{\"name\": \"x\",\n\n \"strata\": [{\"deg\": 0, \"dim\": 1, \"eigenvalue\": \"1/0\"}]}";
        assert!(matches!(
            VarietyDescriptor::from_json(text),
            Err(Error::Descriptor { line: 3, .. })
        ));
        assert!(matches!(
            VarietyDescriptor::from_json("{\"name\": \"x\", \"strata\": [], \"bogus\": 1}"),
            Err(Error::Descriptor { .. })
        ));
    }

    #[test]
    fn builtins() {
        for name in BUILTIN_NAMES {
            assert!(VarietyDescriptor::builtin(name).is_some(), "{name}");
        }
        let p1 = VarietyDescriptor::projective_line().betti();
        assert_eq!(p1.betti_numbers(), vec![1, 0, 1]);
        assert!(VarietyDescriptor::lookup("/nonexistent/file.json").is_err());
    }
}
