//! JSON forms of graphs, states, witnesses, verdicts and LP certificates.
//!
//! Qubits are 1-based in edge lists. Rationals are written as `"p/q"`
//! strings; on input, JSON numbers and decimal strings are also accepted.
//! Label-keyed maps omit zero entries.

use serde_json::{json, Map, Value};

use crate::classifier::{CertificateKind, ComponentCertificate, Decomposition, Term, Verdict};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::label::BasisLabel;
use crate::ppt_mixture::{FarkasCertificate, LpCertificate, PptDecomposition};
use crate::rational::{self, Rational};
use crate::state::GraphDiagonalState;
use crate::witness::DiagonalWitness;

use num_traits::Zero;

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(rational::format_rational(r))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse_rational(s),
        Value::Number(n) => rational::parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

pub fn graph_to_json(g: &Graph) -> Value {
    let edges: Vec<Value> = g.edges().iter().map(|&(a, b)| json!([a + 1, b + 1])).collect();
    json!({ "n": g.n(), "edges": edges })
}

/// Accepts `{"n": .., "edges": [[1, 2], ..]}` or a built-in name such as `"C4"`.
pub fn graph_from_json(v: &Value) -> Result<Graph> {
    if let Some(name) = v.as_str() {
        return Graph::builtin(name);
    }
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("graph must be an object or a built-in name".into()))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("graph needs an integer \"n\"".into()))? as usize;
    let edges = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("graph needs an \"edges\" array".into()))?;
    let mut list = Vec::with_capacity(edges.len());
    for e in edges {
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Parse(format!("edge {e} is not a pair")))?;
        let end = |x: &Value| -> Result<usize> {
            let q = x
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("edge endpoint {x} is not an integer")))?;
            if q == 0 {
                return Err(Error::InvalidGraph("edge endpoints are 1-based".into()));
            }
            Ok(q as usize - 1)
        };
        list.push((end(&pair[0])?, end(&pair[1])?));
    }
    Graph::from_edges(n, &list)
}

/// Nonzero entries keyed by sign strings.
pub fn weights_to_json(n: usize, weights: &[Rational]) -> Value {
    let mut map = Map::new();
    for (k, w) in weights.iter().enumerate() {
        if !w.is_zero() {
            let label = BasisLabel::new(n, k as u32).expect("index within range");
            map.insert(label.to_string(), rational_to_json(w));
        }
    }
    Value::Object(map)
}

/// Reads a label-keyed map or a dense array indexed by label integer.
pub fn weights_from_json(n: usize, v: &Value) -> Result<Vec<Rational>> {
    let dim = 1usize << n;
    match v {
        Value::Object(map) => {
            let mut out = vec![rational::zero(); dim];
            for (key, val) in map {
                let label = BasisLabel::parse(key)?;
                if label.n() != n {
                    return Err(Error::SizeMismatch(label.n(), n));
                }
                out[label.index()] = rational_from_json(val)?;
            }
            Ok(out)
        }
        Value::Array(items) => {
            if items.len() != dim {
                return Err(Error::SizeMismatch(items.len(), dim));
            }
            items.iter().map(rational_from_json).collect()
        }
        other => Err(Error::Parse(format!("expected a weight map or array, found {other}"))),
    }
}

fn field<'a>(obj: &'a Value, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field \"{name}\"")))
}

pub fn state_to_json(s: &GraphDiagonalState) -> Value {
    json!({ "graph": graph_to_json(s.graph()), "lambda": weights_to_json(s.n(), s.weights()) })
}

/// Parses `{"graph": .., "lambda": {..}}` or `{"graph": .., "lambda_array": [..]}`.
pub fn state_from_json(v: &Value) -> Result<GraphDiagonalState> {
    let g = graph_from_json(field(v, "graph")?)?;
    let weights = match (v.get("lambda"), v.get("lambda_array")) {
        (Some(w), None) | (None, Some(w)) => weights_from_json(g.n(), w)?,
        (Some(_), Some(_)) => {
            return Err(Error::Parse("give either \"lambda\" or \"lambda_array\"".into()))
        }
        (None, None) => return Err(Error::Parse("missing field \"lambda\"".into())),
    };
    GraphDiagonalState::new(g, weights)
}

pub fn witness_to_json(w: &DiagonalWitness) -> Value {
    json!({
        "graph": graph_to_json(w.graph()),
        "name": w.name(),
        "coeffs": weights_to_json(w.graph().n(), w.coeffs()),
    })
}

pub fn witness_from_json(v: &Value) -> Result<DiagonalWitness> {
    let g = graph_from_json(field(v, "graph")?)?;
    let coeffs = weights_from_json(g.n(), field(v, "coeffs")?)?;
    let name = v.get("name").and_then(Value::as_str).unwrap_or("witness");
    DiagonalWitness::new(g, coeffs, name)
}

fn partition_from_json(n: usize, v: &Value) -> Result<Bipartition> {
    let text = v
        .as_str()
        .ok_or_else(|| Error::Parse(format!("partition {v} is not a string")))?;
    Bipartition::parse(n, text)
}

pub fn decomposition_to_json(d: &Decomposition, g: &Graph) -> Value {
    let terms: Vec<Value> = d
        .terms
        .iter()
        .map(|t| {
            json!({
                "weight": rational_to_json(&t.weight),
                "certificate": t.certificate.kind.name(),
                "partition": t.certificate.partition.to_string(),
                "component": weights_to_json(g.n(), t.component.weights()),
            })
        })
        .collect();
    json!({ "graph": graph_to_json(g), "terms": terms })
}

pub fn decomposition_from_json(v: &Value) -> Result<Decomposition> {
    let g = graph_from_json(field(v, "graph")?)?;
    let terms = field(v, "terms")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"terms\" must be an array".into()))?;
    let terms = terms
        .iter()
        .map(|t| {
            let kind = CertificateKind::parse(
                field(t, "certificate")?
                    .as_str()
                    .ok_or_else(|| Error::Parse("certificate kind must be a string".into()))?,
            )?;
            Ok(Term {
                weight: rational_from_json(field(t, "weight")?)?,
                component: GraphDiagonalState::new(
                    g.clone(),
                    weights_from_json(g.n(), field(t, "component")?)?,
                )?,
                certificate: ComponentCertificate {
                    kind,
                    partition: partition_from_json(g.n(), field(t, "partition")?)?,
                },
            })
        })
        .collect::<Result<_>>()?;
    Ok(Decomposition { terms })
}

pub fn ppt_decomposition_to_json(d: &PptDecomposition, g: &Graph) -> Value {
    let parts: Vec<Value> = d
        .parts
        .iter()
        .map(|(m, x)| json!({ "partition": m.to_string(), "weights": weights_to_json(g.n(), x) }))
        .collect();
    json!({ "graph": graph_to_json(g), "parts": parts })
}

pub fn ppt_decomposition_from_json(v: &Value) -> Result<PptDecomposition> {
    let g = graph_from_json(field(v, "graph")?)?;
    let parts = field(v, "parts")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"parts\" must be an array".into()))?
        .iter()
        .map(|p| {
            Ok((
                partition_from_json(g.n(), field(p, "partition")?)?,
                weights_from_json(g.n(), field(p, "weights")?)?,
            ))
        })
        .collect::<Result<_>>()?;
    Ok(PptDecomposition { parts })
}

pub fn lp_certificate_to_json(c: &LpCertificate, g: &Graph) -> Value {
    match c {
        LpCertificate::Feasible(d) => json!({
            "feasible": true,
            "decomposition": ppt_decomposition_to_json(d, g),
        }),
        LpCertificate::Infeasible(f) => json!({
            "feasible": false,
            "graph": graph_to_json(g),
            "dual": weights_to_json(g.n(), &f.dual),
            "partitions": f.partitions.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        }),
    }
}

pub fn lp_certificate_from_json(v: &Value) -> Result<LpCertificate> {
    let feasible = field(v, "feasible")?
        .as_bool()
        .ok_or_else(|| Error::Parse("\"feasible\" must be a boolean".into()))?;
    if feasible {
        return Ok(LpCertificate::Feasible(ppt_decomposition_from_json(field(
            v,
            "decomposition",
        )?)?));
    }
    let g = graph_from_json(field(v, "graph")?)?;
    let partitions = field(v, "partitions")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"partitions\" must be an array".into()))?
        .iter()
        .map(|m| partition_from_json(g.n(), m))
        .collect::<Result<_>>()?;
    Ok(LpCertificate::Infeasible(FarkasCertificate {
        dual: weights_from_json(g.n(), field(v, "dual")?)?,
        partitions,
    }))
}

/// `{"verdict": .., "certificate": .., "threshold"?: ..}`; inconclusive
/// verdicts add a `"reason"`.
pub fn verdict_to_json(v: &Verdict, g: &Graph, threshold: Option<&Rational>) -> Value {
    let mut out = Map::new();
    out.insert("verdict".into(), Value::String(v.label().into()));
    match v {
        Verdict::Gme { witness, value } => {
            out.insert(
                "certificate".into(),
                json!({
                    "kind": "witness",
                    "witness": witness_to_json(witness),
                    "value": rational_to_json(value),
                }),
            );
        }
        Verdict::Biseparable { decomposition } => {
            let mut cert = decomposition_to_json(decomposition, g);
            cert.as_object_mut()
                .expect("object")
                .insert("kind".into(), Value::String("decomposition".into()));
            out.insert("certificate".into(), cert);
        }
        Verdict::Inconclusive {
            reason,
            ppt_mixture,
        } => {
            out.insert("reason".into(), Value::String(reason.clone()));
            let cert = match ppt_mixture {
                Some(d) => {
                    let mut c = ppt_decomposition_to_json(d, g);
                    c.as_object_mut()
                        .expect("object")
                        .insert("kind".into(), Value::String("ppt_mixture".into()));
                    c
                }
                None => Value::Null,
            };
            out.insert("certificate".into(), cert);
        }
    }
    if let Some(t) = threshold {
        out.insert("threshold".into(), rational_to_json(t));
    }
    Value::Object(out)
}

pub fn verdict_from_json(v: &Value) -> Result<Verdict> {
    let label = field(v, "verdict")?
        .as_str()
        .ok_or_else(|| Error::Parse("\"verdict\" must be a string".into()))?;
    let cert = field(v, "certificate")?;
    match label {
        "GME" => Ok(Verdict::Gme {
            witness: witness_from_json(field(cert, "witness")?)?,
            value: rational_from_json(field(cert, "value")?)?,
        }),
        "BISEPARABLE" => Ok(Verdict::Biseparable {
            decomposition: decomposition_from_json(cert)?,
        }),
        "INCONCLUSIVE" => Ok(Verdict::Inconclusive {
            reason: v
                .get("reason")
                .and_then(Value::as_str)
                .unwrap_or_default()
                .to_string(),
            ppt_mixture: if cert.is_null() {
                None
            } else {
                Some(ppt_decomposition_from_json(cert)?)
            },
        }),
        other => Err(Error::Parse(format!("unknown verdict {other:?}"))),
    }
}

/// Parses JSON text, mapping syntax errors to [`Error::Json`].
pub fn parse(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn state_round_trip() {
        let s = GraphDiagonalState::white_noise(Graph::builtin("C4").unwrap(), &rat(5, 13)).unwrap();
        let v = state_to_json(&s);
        assert_eq!(v["lambda"]["++++"], "11/26");
        assert_eq!(v["graph"]["edges"][0], json!([1, 2]));
        assert_eq!(state_from_json(&v).unwrap(), s);
    }

    #[test]
    fn dense_array_and_builtin_graph() {
        let mut arr = vec![json!("0"); 4];
        arr[0] = json!("1/2");
        arr[3] = json!(0.5);
        let v = json!({ "graph": "C2", "lambda_array": arr });
        let s = state_from_json(&v).unwrap();
        assert_eq!(s.weights()[3], rat(1, 2));
    }

    #[test]
    fn unnormalized_state_is_rejected() {
        let v = json!({ "graph": "C2", "lambda": { "++": "1/2" } });
        assert!(matches!(state_from_json(&v), Err(Error::InvalidState(_))));
    }

    #[test]
    fn verdict_round_trip() {
        let s = GraphDiagonalState::white_noise(Graph::builtin("C4").unwrap(), &rat(1, 3)).unwrap();
        let v = crate::classify(&s).unwrap();
        let text = verdict_to_json(&v, s.graph(), None);
        assert_eq!(verdict_from_json(&text).unwrap(), v);
    }
}
