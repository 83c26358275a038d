//! Built-in presets and the JSON preset format.

use serde_json::Value;

use crate::linalg::{self, IMat};
use crate::rootdata::{BasedRootDatum, LatticeSpec, RelativeRootDatum};
use crate::{Error, Result, Q};

pub const BUILTIN: &[&str] = &[
    "a1", "a2", "a3", "b2", "c2", "g2", "d4", "su3", "a3t", "d4t", "pgl2",
];

fn cartan(kind: &str) -> IMat {
    match kind {
        "A1" => vec![vec![2]],
        "A2" => vec![vec![2, -1], vec![-1, 2]],
        "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        "B2" => vec![vec![2, -2], vec![-1, 2]],
        "C2" => vec![vec![2, -1], vec![-2, 2]],
        "G2" => vec![vec![2, -1], vec![-3, 2]],
        "D4" => vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ],
        _ => unreachable!(),
    }
}

pub fn builtin(name: &str) -> Result<RelativeRootDatum> {
    let q = Q::new;
    let (kind, perm, lattice, jumps, scale): (&str, Vec<usize>, LatticeSpec, Option<Vec<Q>>, Option<Vec<Q>>) =
        match name {
            "a1" => ("A1", vec![0], LatticeSpec::Coroot, None, None),
            "a2" => ("A2", vec![0, 1], LatticeSpec::Coroot, None, None),
            "a3" => ("A3", vec![0, 1, 2], LatticeSpec::Coroot, None, None),
            "b2" => ("B2", vec![0, 1], LatticeSpec::Coroot, None, None),
            "c2" => ("C2", vec![0, 1], LatticeSpec::Coroot, None, None),
            "g2" => ("G2", vec![0, 1], LatticeSpec::Coroot, None, None),
            "d4" => ("D4", vec![0, 1, 2, 3], LatticeSpec::Coroot, None, None),
            "su3" => ("A2", vec![1, 0], LatticeSpec::Coroot, Some(vec![q(1, 4)]), Some(vec![q(1, 2)])),
            "a3t" => ("A3", vec![2, 1, 0], LatticeSpec::Coroot, Some(vec![q(1, 2), q(1, 1)]), None),
            "d4t" => ("D4", vec![2, 1, 3, 0], LatticeSpec::Coroot, Some(vec![q(1, 3), q(1, 1)]), None),
            "pgl2" => ("A1", vec![0], LatticeSpec::Coweight, None, None),
            _ => return Err(Error::Preset(format!("unknown preset `{name}`"))),
        };
    let abs = BasedRootDatum::new(cartan(kind), perm, &lattice)?;
    RelativeRootDatum::new(name, abs, jumps, scale)
}

/// Resolves a preset name, a `.json` path, or a name inside `dir`.
pub fn resolve(name: &str, dir: Option<&std::path::Path>) -> Result<RelativeRootDatum> {
    if BUILTIN.contains(&name) {
        return builtin(name);
    }
    let mut candidates = vec![std::path::PathBuf::from(name)];
    if let Some(d) = dir {
        candidates.push(d.join(name));
        candidates.push(d.join(format!("{name}.json")));
    }
    for p in candidates {
        if p.is_file() {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Error::Preset(format!("{}: {e}", p.display())))?;
            return from_json(&text);
        }
    }
    Err(Error::Preset(format!("unknown preset `{name}`")))
}

fn int_matrix(v: &Value, field: &str) -> Result<IMat> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("`{field}` must be an array of arrays")))?;
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            r.as_array()
                .ok_or_else(|| Error::Parse(format!("`{field}[{i}]` must be an array")))?
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    x.as_i64()
                        .ok_or_else(|| Error::Parse(format!("`{field}[{i}][{j}]` must be an integer")))
                })
                .collect()
        })
        .collect()
}

fn rational(v: &Value, field: &str) -> Result<Q> {
    match v {
        Value::String(s) => linalg::parse_q(s),
        Value::Number(n) => n.as_i64().map(Q::from_integer),
        _ => None,
    }
    .ok_or_else(|| Error::Parse(format!("`{field}` must be a rational like \"p/q\"")))
}

pub fn from_json(text: &str) -> Result<RelativeRootDatum> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    let name = v
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing string field `name`".into()))?;
    let cartan = int_matrix(
        v.get("cartan_matrix")
            .ok_or_else(|| Error::Parse("missing field `cartan_matrix`".into()))?,
        "cartan_matrix",
    )?;
    let n = cartan.len();
    let perm: Vec<usize> = match v.get("automorphism") {
        None | Some(Value::Null) => (0..n).collect(),
        Some(Value::Array(a)) => a
            .iter()
            .enumerate()
            .map(|(i, x)| {
                x.as_u64()
                    .map(|u| u as usize)
                    .ok_or_else(|| Error::Parse(format!("`automorphism[{i}]` must be an index")))
            })
            .collect::<Result<_>>()?,
        Some(_) => return Err(Error::Parse("`automorphism` must be an array".into())),
    };
    let lattice = match v.get("lattice") {
        None | Some(Value::Null) => LatticeSpec::Coroot,
        Some(Value::String(s)) if s == "coroot" => LatticeSpec::Coroot,
        Some(Value::String(s)) if s == "coweight" => LatticeSpec::Coweight,
        Some(m @ Value::Array(_)) => LatticeSpec::Basis(int_matrix(m, "lattice")?),
        Some(_) => {
            return Err(Error::Parse(
                "`lattice` must be \"coroot\", \"coweight\" or a basis matrix".into(),
            ))
        }
    };
    let abs = BasedRootDatum::new(cartan, perm, &lattice)?;
    let rank_guess = {
        let c = crate::rootdata::coinvariants(&abs)?;
        c.rank
    };
    let jumps = match v.get("jumps") {
        None | Some(Value::Null) => None,
        Some(Value::Object(map)) => {
            let mut js = vec![Q::from_integer(1); rank_guess];
            let mut seen = vec![false; rank_guess];
            for (k, x) in map {
                let i: usize = k
                    .parse()
                    .ok()
                    .filter(|&i: &usize| i < rank_guess)
                    .ok_or_else(|| Error::Parse(format!("`jumps` key `{k}` is not a simple root index")))?;
                js[i] = rational(x, &format!("jumps.{k}"))?;
                seen[i] = true;
            }
            if !abs.is_split() && seen.iter().any(|s| !s) {
                return Err(Error::Preset("every simple relative root needs a jump".into()));
            }
            Some(js)
        }
        Some(_) => return Err(Error::Parse("`jumps` must be an object".into())),
    };
    let scale = match v.get("display_scale") {
        None | Some(Value::Null) => None,
        Some(Value::Array(a)) => Some(
            a.iter()
                .enumerate()
                .map(|(i, x)| rational(x, &format!("display_scale[{i}]")))
                .collect::<Result<Vec<_>>>()?,
        ),
        Some(_) => return Err(Error::Parse("`display_scale` must be an array".into())),
    };
    RelativeRootDatum::new(name, abs, jumps, scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_load() {
        for name in BUILTIN {
            builtin(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn json_matches_builtin() {
        let text = r#"{"name": "su3j", "cartan_matrix": [[2,-1],[-1,2]], "automorphism": [1,0],
                       "lattice": "coroot", "jumps": {"0": "1/4"}, "display_scale": ["1/2"]}"#;
        let a = from_json(text).unwrap();
        let b = builtin("su3").unwrap();
        assert_eq!(a.two_rho, b.two_rho);
        assert_eq!(a.roots[0].jump, b.roots[0].jump);
    }

    #[test]
    fn json_errors_have_context() {
        let e = from_json("{\"name\": \"x\",\n \"cartan_matrix\": [[2, x]]}").unwrap_err();
        assert!(matches!(e, Error::Parse(ref s) if s.contains("line 2")), "{e}");
        let e = from_json(r#"{"name": "x", "cartan_matrix": [[2,-1],[-1,2]], "automorphism": [1,0]}"#)
            .unwrap_err();
        assert!(matches!(e, Error::Preset(_)));
    }
}
