//! JSON form of configurations: matrices as row lists of scalar strings.
//!
//! ```json
//! {"kind": "config1", "k": 1, "r": 2, "a1": [["2"]], "a2": [["3"]],
//!  "d": [["0"]], "b": [["1", "0"]], "c": [["0"], ["1"]]}
//! ```

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Matrix};
use crate::monad::{AnyConfig, Config0, Config1};

type Rows = Vec<Vec<GaussianRational>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigJson {
    kind: String,
    k: usize,
    r: usize,
    a1: Rows,
    a2: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<Rows>,
    b: Rows,
    c: Rows,
}

fn matrix(rows: Rows, shape: (usize, usize), name: &str) -> Result<Matrix<GaussianRational>> {
    let m = Matrix::from_rows_with_cols(rows, shape.1).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
    if m.shape() != shape {
        return Err(Error::Parse(format!("{name} is {}x{}, expected {}x{}", m.rows(), m.cols(), shape.0, shape.1)));
    }
    Ok(m)
}

pub fn parse_config(text: &str) -> Result<AnyConfig<GaussianRational>> {
    let raw: ConfigJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let (k, r) = (raw.k, raw.r);
    let a1 = matrix(raw.a1, (k, k), "a1")?;
    let a2 = matrix(raw.a2, (k, k), "a2")?;
    let b = matrix(raw.b, (k, r), "b")?;
    let c = matrix(raw.c, (r, k), "c")?;
    match (raw.kind.as_str(), raw.d) {
        ("config0", None) => Ok(AnyConfig::Plane(Config0::new(a1, a2, b, c)?)),
        ("config1", Some(d)) => Ok(AnyConfig::Blowup(Config1::new(a1, a2, matrix(d, (k, k), "d")?, b, c)?)),
        ("config0", Some(_)) => Err(Error::Parse("config0 has no d matrix".into())),
        ("config1", None) => Err(Error::Parse("config1 needs a d matrix".into())),
        (other, _) => Err(Error::Parse(format!("unknown kind {other:?}"))),
    }
}

fn rows(m: &Matrix<GaussianRational>) -> Rows {
    m.to_rows()
}

pub fn config_to_json(m: &AnyConfig<GaussianRational>) -> Value {
    let raw = match m {
        AnyConfig::Plane(c) => ConfigJson {
            kind: "config0".into(),
            k: c.k(),
            r: c.r(),
            a1: rows(&c.a1),
            a2: rows(&c.a2),
            d: None,
            b: rows(&c.b),
            c: rows(&c.c),
        },
        AnyConfig::Blowup(c) => ConfigJson {
            kind: "config1".into(),
            k: c.k(),
            r: c.r(),
            a1: rows(&c.a1),
            a2: rows(&c.a2),
            d: Some(rows(&c.d)),
            b: rows(&c.b),
            c: rows(&c.c),
        },
    };
    serde_json::to_value(raw).expect("plain data")
}

/// Wraps a result with the operation that produced it.
pub fn with_provenance(result: Value, operation: &str, parameters: Value) -> Value {
    json!({
        "result": result,
        "provenance": {
            "tool": "blowup",
            "version": env!("CARGO_PKG_VERSION"),
            "operation": operation,
            "parameters": parameters,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{"kind":"config1","k":1,"r":2,"a1":[["2"]],"a2":[["3"]],"d":[["0"]],"b":[["1","0"]],"c":[["0"],["1/2+i"]]}"#;

    #[test]
    fn round_trip() {
        let m = parse_config(SAMPLE).unwrap();
        let AnyConfig::Blowup(c) = &m else { panic!("expected a blow-up config") };
        assert_eq!(c.c[(1, 0)], "1/2+i".parse().unwrap());
        let back = parse_config(&config_to_json(&m).to_string()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_config(&SAMPLE.replace("1/2+i", "1/0")), Err(Error::Parse(_))));
        assert!(matches!(parse_config(&SAMPLE.replace("config1", "config0")), Err(Error::Parse(_))));
        assert!(matches!(parse_config(&SAMPLE.replace(r#""k":1"#, r#""k":2"#)), Err(Error::Parse(_))));
        assert!(matches!(parse_config("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn provenance_block() {
        let v = with_provenance(json!(1), "glue", json!({"delta": "1/5"}));
        assert_eq!(v["provenance"]["operation"], "glue");
        assert_eq!(v["result"], 1);
    }
}
