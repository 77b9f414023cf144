//! The `maximin-instance/1` file format.
//!
//! Instances travel as TOML documents with a versioned `format` header:
//!
//! ```toml
//! format = "maximin-instance/1"
//! n = 2
//! m = 3
//! p = 2.0            # a number, or the string "inf" for the max norm
//! weights = [1.0, 1.0, 1.0]
//! points = [[1.0, 2.0], [2.0, 3.0], [1.0, 5.0]]
//! ```
//!
//! `points` holds `m` rows of `n` coordinates each. The header field is
//! checked on read so future revisions can evolve the schema.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::model::{Exponent, ProblemInstance};
use crate::{Error, Result};

/// Version tag carried by every instance file.
pub const INSTANCE_FORMAT: &str = "maximin-instance/1";

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    format: String,
    n: usize,
    m: usize,
    p: PValue,
    weights: Vec<f64>,
    points: Vec<Vec<f64>>,
}

/// The exponent as it appears on disk: a number or the string `"inf"`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PValue {
    Number(f64),
    Name(String),
}

impl PValue {
    fn to_exponent(&self) -> Result<Exponent> {
        match self {
            PValue::Number(v) => Exponent::finite(*v),
            PValue::Name(s) => s.parse(),
        }
    }

    fn from_exponent(p: Exponent) -> Self {
        match p {
            Exponent::Finite(v) => PValue::Number(v),
            Exponent::Infinity => PValue::Name("inf".to_string()),
        }
    }
}

/// Parses an instance from `maximin-instance/1` text.
pub fn parse_instance(text: &str) -> Result<ProblemInstance> {
    let file: InstanceFile =
        toml::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if file.format != INSTANCE_FORMAT {
        return Err(Error::Format(format!(
            "unsupported format {:?}, expected {INSTANCE_FORMAT:?}",
            file.format
        )));
    }
    if file.points.len() != file.m {
        return Err(Error::Format(format!(
            "header says m = {} but {} points are present",
            file.m,
            file.points.len()
        )));
    }
    let instance = ProblemInstance::new(file.n, file.p.to_exponent()?, file.points, file.weights)?;
    if instance.n() != file.n {
        return Err(Error::Format("header n disagrees with the points".into()));
    }
    Ok(instance)
}

/// Serializes an instance to `maximin-instance/1` text.
pub fn instance_to_string(instance: &ProblemInstance) -> String {
    let file = InstanceFile {
        format: INSTANCE_FORMAT.to_string(),
        n: instance.n(),
        m: instance.m(),
        p: PValue::from_exponent(instance.p()),
        weights: instance.weights().to_vec(),
        points: instance.points().to_vec(),
    };
    toml::to_string(&file).expect("instance serialization cannot fail")
}

/// Reads an instance file from disk.
pub fn read_instance(path: &Path) -> Result<ProblemInstance> {
    let text = std::fs::read_to_string(path)?;
    parse_instance(&text)
}

/// Writes an instance file to disk.
pub fn write_instance(instance: &ProblemInstance, path: &Path) -> Result<()> {
    std::fs::write(path, instance_to_string(instance))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> ProblemInstance {
        ProblemInstance::new(
            2,
            Exponent::Finite(2.0),
            vec![vec![1.0, 2.0], vec![2.0, 3.0], vec![1.0, 5.0]],
            vec![1.0, 1.0, 1.0],
        )
        .unwrap()
    }

    #[test]
    fn roundtrip() {
        let inst = example();
        let text = instance_to_string(&inst);
        assert!(text.contains("maximin-instance/1"));
        let back = parse_instance(&text).unwrap();
        assert_eq!(inst, back);
    }

    #[test]
    fn roundtrip_infinite_p() {
        let inst = ProblemInstance::new(
            3,
            Exponent::Infinity,
            vec![vec![0.5, -0.25, 0.0]],
            vec![2.0],
        )
        .unwrap();
        let back = parse_instance(&instance_to_string(&inst)).unwrap();
        assert_eq!(inst, back);
        assert!(back.p().is_infinite());
    }

    #[test]
    fn parses_inf_and_numeric_p() {
        let text = r#"
format = "maximin-instance/1"
n = 1
m = 1
p = "inf"
weights = [1.0]
points = [[0.5]]
"#;
        assert!(parse_instance(text).unwrap().p().is_infinite());
        let text = text.replace("\"inf\"", "3.0");
        assert_eq!(parse_instance(&text).unwrap().p(), Exponent::Finite(3.0));
    }

    #[test]
    fn rejects_wrong_version_and_bad_counts() {
        let good = instance_to_string(&example());
        let bad = good.replace("maximin-instance/1", "maximin-instance/9");
        assert!(matches!(parse_instance(&bad), Err(Error::Format(_))));
        let bad = good.replace("m = 3", "m = 2");
        assert!(matches!(parse_instance(&bad), Err(Error::Format(_))));
        assert!(matches!(parse_instance("not toml ["), Err(Error::Format(_))));
    }

    #[test]
    fn file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("inst.toml");
        let inst = example();
        write_instance(&inst, &path).unwrap();
        assert_eq!(read_instance(&path).unwrap(), inst);
    }
}
