//! Instance documents: one JSON object per problem, rationals carried as
//! `"p/q"` strings (or bare integers) so no value ever passes through a
//! float.

use crate::error::{CliError, ErrorKind};
use perdec_core::abelian::{self, PeriodVector, WindowInstance};
use perdec_core::numeric::{format_rational, parse_rational, Rat};
use perdec_core::{Action, FnVec};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// A rational in transit: serializes as `"p/q"` (or `"p"`), deserializes
/// from such strings or from bare JSON integers. Floats are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonRat(pub Rat);

impl Serialize for JsonRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for JsonRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RatVisitor;
        impl Visitor<'_> for RatVisitor {
            type Value = JsonRat;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a rational as \"p/q\" string or integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonRat, E> {
                parse_rational(v)
                    .map(JsonRat)
                    .map_err(|e| E::custom(e.to_string()))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonRat, E> {
                Ok(JsonRat(Rat::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonRat, E> {
                Ok(JsonRat(Rat::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<JsonRat, E> {
                Err(E::custom(format!(
                    "floating-point value {v} is not accepted; use \"p/q\""
                )))
            }
        }
        deserializer.deserialize_any(RatVisitor)
    }
}

/// One problem instance, dispatched by its `mode` tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Instance {
    /// Explicit permutations on a finite carrier.
    FiniteAction {
        size: usize,
        perms: Vec<Vec<usize>>,
        f: Vec<JsonRat>,
    },
    /// Translations on a product of cyclic groups; `f` in row-major order.
    AbelianFinite {
        moduli: Vec<u64>,
        periods: Vec<Vec<i64>>,
        f: Vec<JsonRat>,
    },
    /// A function sampled on `{0..window-1}` with integer periods.
    ZWindow {
        periods: Vec<u64>,
        window: usize,
        f: Vec<JsonRat>,
    },
    /// Symbolic real periods as rational vectors over a rationally
    /// independent basis; only conditions are generated.
    TfConditions { dim: usize, periods: Vec<Vec<JsonRat>> },
}

impl Instance {
    pub fn mode_name(&self) -> &'static str {
        match self {
            Instance::FiniteAction { .. } => "finite_action",
            Instance::AbelianFinite { .. } => "abelian_finite",
            Instance::ZWindow { .. } => "z_window",
            Instance::TfConditions { .. } => "tf_conditions",
        }
    }
}

/// The instance compiled into core objects, ready to run.
pub enum Built {
    Act { action: Action, f: FnVec },
    Window(WindowInstance),
    Conditions { periods: Vec<PeriodVector> },
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance, CliError> {
    let mut deserializer = serde_json::Deserializer::from_str(text);
    let instance: Instance = serde_path_to_error::deserialize(&mut deserializer)
        .map_err(|e| CliError {
            kind: ErrorKind::Input,
            message: format!("parse error at {}: {}", e.path(), e.inner()),
        })?;
    build_instance(&instance)?;
    Ok(instance)
}

fn schema_error(field: &str, reason: impl std::fmt::Display) -> CliError {
    CliError {
        kind: ErrorKind::Input,
        message: format!("schema error in {field}: {reason}"),
    }
}

/// Compiles an instance into core objects, reporting the first schema
/// violation.
pub fn build_instance(instance: &Instance) -> Result<Built, CliError> {
    match instance {
        Instance::FiniteAction { size, perms, f } => {
            let action = Action::validate(*size, perms.clone())
                .map_err(|e| schema_error("perms", e))?;
            if f.len() != *size {
                return Err(schema_error(
                    "f",
                    format!("expected {size} values, got {}", f.len()),
                ));
            }
            Ok(Built::Act {
                action,
                f: FnVec::new(f.iter().map(|r| r.0.clone()).collect()),
            })
        }
        Instance::AbelianFinite { moduli, periods, f } => {
            let action = abelian::finite_abelian_action(moduli, periods)
                .map_err(|e| schema_error("moduli/periods", e))?;
            if f.len() != action.carrier_size() {
                return Err(schema_error(
                    "f",
                    format!(
                        "expected {} values (row-major carrier), got {}",
                        action.carrier_size(),
                        f.len()
                    ),
                ));
            }
            Ok(Built::Act {
                action,
                f: FnVec::new(f.iter().map(|r| r.0.clone()).collect()),
            })
        }
        Instance::ZWindow { periods, window, f } => {
            let instance = WindowInstance::new(
                periods.clone(),
                *window,
                f.iter().map(|r| r.0.clone()).collect(),
            )
            .map_err(|e| schema_error("periods/window/f", e))?;
            Ok(Built::Window(instance))
        }
        Instance::TfConditions { dim, periods } => {
            if *dim == 0 {
                return Err(schema_error("dim", "dimension must be at least 1"));
            }
            let mut vectors = Vec::with_capacity(periods.len());
            for (i, coords) in periods.iter().enumerate() {
                if coords.len() != *dim {
                    return Err(schema_error(
                        "periods",
                        format!(
                            "period {i} has {} coordinates, expected {dim}",
                            coords.len()
                        ),
                    ));
                }
                let vector =
                    PeriodVector::new(coords.iter().map(|r| r.0.clone()).collect());
                if vector.is_zero() {
                    return Err(schema_error("periods", format!("period {i} is zero")));
                }
                vectors.push(vector);
            }
            Ok(Built::Conditions { periods: vectors })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use perdec_core::numeric::rat;

    #[test]
    fn parses_finite_action_document() {
        let text = r#"{"mode":"finite_action","size":4,
            "perms":[[2,3,0,1],[1,0,3,2],[3,2,1,0]],
            "f":["0","1","1","1"]}"#;
        let instance = parse_instance(text).unwrap();
        assert_eq!(instance.mode_name(), "finite_action");
        let Built::Act { action, f } = build_instance(&instance).unwrap() else {
            panic!("expected an action instance");
        };
        assert_eq!(action.carrier_size(), 4);
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn rejects_repeated_image() {
        let text = r#"{"mode":"finite_action","size":2,"perms":[[0,0]],"f":[0,0]}"#;
        let err = parse_instance(text).unwrap_err();
        assert_eq!(err.kind, ErrorKind::Input);
        assert!(err.message.contains("schema error"), "{}", err.message);
    }

    #[test]
    fn rejects_floats() {
        let text = r#"{"mode":"z_window","periods":[2],"window":1,"f":[0.5]}"#;
        let err = parse_instance(text).unwrap_err();
        assert!(err.message.contains("not accepted"), "{}", err.message);
    }

    #[test]
    fn parses_minimal_window() {
        let text = r#"{"mode":"z_window","periods":[2,3],"window":4,"f":[0,0,0,0]}"#;
        let instance = parse_instance(text).unwrap();
        assert!(matches!(instance, Instance::ZWindow { .. }));
    }

    #[test]
    fn parses_rationals_from_strings_and_ints() {
        let text = r#"{"mode":"tf_conditions","dim":2,
            "periods":[["1","0"],[2,0],["1/2","0"]]}"#;
        let instance = parse_instance(text).unwrap();
        let Built::Conditions { periods } = build_instance(&instance).unwrap() else {
            panic!("expected conditions instance");
        };
        assert_eq!(periods[2].coords()[0], rat(1, 2));
    }

    #[test]
    fn round_trips_to_identical_instance() {
        let documents = [
            r#"{"mode":"finite_action","size":2,"perms":[[1,0]],"f":["1/2","-1/2"]}"#,
            r#"{"mode":"abelian_finite","moduli":[6],"periods":[[2],[3]],"f":[1,0,0,0,0,0]}"#,
            r#"{"mode":"z_window","periods":[3,3],"window":4,"f":[0,1,2,3]}"#,
            r#"{"mode":"tf_conditions","dim":1,"periods":[["2"],["1/3"]]}"#,
        ];
        for text in documents {
            let first = parse_instance(text).unwrap();
            let serialized = serde_json::to_string(&first).unwrap();
            let second = parse_instance(&serialized).unwrap();
            assert_eq!(first, second);
            // And serialization is a fixed point from then on.
            assert_eq!(serialized, serde_json::to_string(&second).unwrap());
        }
    }

    #[test]
    fn unknown_mode_is_a_parse_error() {
        let err = parse_instance(r#"{"mode":"mystery"}"#).unwrap_err();
        assert_eq!(err.kind, ErrorKind::Input);
    }
}
