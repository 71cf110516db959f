//! JSON document holding one point set with exact rational coordinates.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use ipset_core::{BigRational, Characteristic, Point, PointSet};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetFile {
    pub k: u64,
    pub points: Vec<PointEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointEntry {
    pub x: String,
    pub r: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diameter: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// `-?[0-9]+` or `-?[0-9]+/[0-9]+` with a nonzero denominator.
pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Input(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    let is_digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !is_digits(digits) || !den.is_none_or(is_digits) {
        return Err(bad());
    }
    if den.is_some_and(|d| d.bytes().all(|b| b == b'0')) {
        return Err(CliError::Input(format!("zero denominator in {s:?}")));
    }
    BigRational::from_str(s).map_err(|_| bad())
}

impl SetFile {
    pub fn from_set(set: &PointSet, metadata: Option<Metadata>) -> Self {
        SetFile {
            k: set.k().get(),
            points: set
                .points()
                .iter()
                .map(|p| PointEntry {
                    x: p.x.to_string(),
                    r: p.r.to_string(),
                })
                .collect(),
            metadata,
        }
    }

    pub fn to_set(&self) -> Result<PointSet, CliError> {
        let k = Characteristic::new(self.k)?;
        let points = self
            .points
            .iter()
            .map(|e| Ok(Point::new(parse_rational(&e.x)?, parse_rational(&e.r)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(PointSet::new(k, points)?)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("not a set file: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("set files serialize");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        SetFile::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
        fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_grammar() {
        assert_eq!(
            parse_rational("3").unwrap(),
            BigRational::from_integer(3.into())
        );
        assert_eq!(
            parse_rational("-6/4").unwrap(),
            BigRational::new((-3).into(), 2.into())
        );
        assert_eq!(parse_rational("5/1").unwrap(), parse_rational("5").unwrap());
        for bad in [
            "", "-", "1/", "/2", "1/0", "1/-2", "+1", "1.5", " 1", "1/2/3", "0x10",
        ] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn document_shape() {
        let set = PointSet::new(
            Characteristic::new(3).unwrap(),
            vec![Point::int(0, 0), Point::int(1, 0), Point::ratio(1, 2, 1, 2)],
        )
        .unwrap();
        let file = SetFile::from_set(&set, None);
        let json = file.to_json();
        assert!(json.contains("\"x\": \"1/2\""));
        assert!(!json.contains("metadata"));
        let back = SetFile::parse(&json).unwrap();
        assert_eq!(back.to_set().unwrap(), set);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(SetFile::parse("{\"k\": 1, \"points\": [], \"extra\": 1}").is_err());
        assert!(SetFile::parse("{\"k\": 1, \"points\": [{\"x\": 1, \"r\": \"0\"}]}").is_err());
        let f = SetFile::parse("{\"k\": 4, \"points\": [{\"x\": \"0\", \"r\": \"0\"}]}").unwrap();
        assert!(f.to_set().is_err());
        let f = SetFile::parse("{\"k\": 1, \"points\": [{\"x\": \"0\", \"r\": \"0\"}, {\"x\": \"0/3\", \"r\": \"0\"}]}").unwrap();
        assert!(f.to_set().is_err());
    }

    proptest! {
        #[test]
        fn round_trip(coords in proptest::collection::btree_set((-500i64..500, 1i64..50, -500i64..500, 1i64..50), 1..8),
                      k in prop::sample::select(vec![1u64, 2, 3, 5, 6, 7, 15])) {
            let points: Vec<Point> = coords.iter().map(|&(a, b, c, d)| Point::ratio(a, b, c, d)).collect();
            let mut unique = points.clone();
            unique.sort();
            unique.dedup();
            let set = PointSet::new(Characteristic::new(k).unwrap(), unique).unwrap();
            let meta = Metadata { n: Some(set.len()), provenance: Some("test".into()), ..Default::default() };
            let file = SetFile::from_set(&set, Some(meta));
            let parsed = SetFile::parse(&file.to_json()).unwrap();
            prop_assert_eq!(&parsed, &file);
            prop_assert_eq!(parsed.to_set().unwrap(), set);
        }
    }
}
