//! The JSON sequence document: a family tag, its parameters, an optional
//! explicit prefix overriding the first coefficients and a switch flag.
//!
//! ```json
//! {"family": "geometric", "params": {"c": "1/3", "k": 5}}
//! {"family": "ks_counterexample", "params": {...}, "explicit_prefix": ["1/3"], "switched": true}
//! ```
//!
//! Rationals are always `"p/q"` strings (integers as `"n"`). Documents written
//! by [`SequenceDocument::from_sequence`] rebuild an equal sequence.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::families::{coefficients_from_alpha, geometric_family, haar_eps_family, ks_counterexample};
use crate::rational::{format_rational, int, parse_rational, rat, Rational};
use crate::sequence::{AlphaSqRule, CoefficientSequence, Family, SRule, SSequence, Variant};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceDocument {
    pub family: String,
    #[serde(default)]
    pub params: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub explicit_prefix: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub switched: bool,
}

fn rational_value(value: &Rational) -> Value {
    Value::String(format_rational(value))
}

fn rational_list(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(rational_value).collect())
}

fn params(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(map) => map,
        _ => Map::new(),
    }
}

fn variant_value(variant: Variant) -> Value {
    serde_json::to_value(variant).expect("variant serializes")
}

fn s_rule_value(rule: &SRule) -> Value {
    match rule {
        SRule::InversePower { base } => json!({"rule": "inverse_power", "base": base}),
        SRule::Factorial { shift } => json!({"rule": "factorial", "shift": shift}),
        SRule::Geometric { lead, ratio } => {
            json!({"rule": "geometric", "lead": format_rational(lead), "ratio": ratio})
        }
        SRule::HaarEps { eps, k } => json!({"rule": "haar_eps", "eps": format_rational(eps), "k": k}),
        SRule::Explicit(values) => json!({"rule": "explicit", "values": rational_list(values)}),
    }
}

impl SequenceDocument {
    /// Describe `seq`, choosing the most specific family tag that rebuilds it.
    pub fn from_sequence(seq: &CoefficientSequence) -> Self {
        let (family, params_value) = describe(seq.family());
        Self {
            family: family.to_string(),
            params: params(params_value),
            explicit_prefix: seq.prefix().iter().map(format_rational).collect(),
            switched: seq.is_switched(),
        }
    }

    pub fn to_sequence(&self) -> Result<CoefficientSequence> {
        let base = build(&self.family, &self.params)?;
        let prefix = self.explicit_prefix.iter().map(|p| parse_rational(p)).collect::<Result<Vec<_>>>()?;
        let seq = if prefix.is_empty() { base } else { base.with_prefix(prefix) };
        Ok(if self.switched { seq.switch() } else { seq })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

fn describe(family: &Family) -> (&'static str, Value) {
    match family {
        Family::Chebyshev => ("chebyshev", json!({})),
        Family::Constant(c) => ("constant", json!({"c": format_rational(c)})),
        Family::KsCounterexample => (
            "ks_counterexample",
            json!({"c_odd": "c_(2n-1) = (6n+4)/(9n+9)", "c_even": "c_(2n) = (n+1)/(3n+5)"}),
        ),
        Family::FromS { s, variant } => describe_s(s, *variant),
        Family::FromAlpha(rule) => ("alpha_sq", json!({"rule": alpha_rule_value(rule)})),
        Family::Explicit => ("explicit", json!({})),
    }
}

fn describe_s(s: &SSequence, variant: Variant) -> (&'static str, Value) {
    match s.rule() {
        SRule::InversePower { base: 5 } => ("power5", json!({"variant": variant_value(variant)})),
        SRule::Factorial { shift: 3 } => ("factorial", json!({"variant": variant_value(variant)})),
        SRule::Geometric { lead, ratio } if *lead < rat(1, 2) && geometric_family(lead, *ratio).is_ok() => {
            let c = match variant {
                Variant::Second => lead.clone(),
                Variant::First => int(1) - lead,
            };
            ("geometric", json!({"c": format_rational(&c), "k": ratio}))
        }
        SRule::HaarEps { eps, k } if variant == Variant::Second && haar_eps_family(eps, *k).is_ok() => {
            ("haar_eps", json!({"eps": format_rational(eps), "k": k}))
        }
        rule => ("from_s", json!({"variant": variant_value(variant), "s": s_rule_value(rule)})),
    }
}

fn alpha_rule_value(rule: &AlphaSqRule) -> Value {
    match rule {
        AlphaSqRule::Periodic { first, even, odd } => json!({
            "rule": "periodic",
            "first": format_rational(first),
            "even": format_rational(even),
            "odd": format_rational(odd),
        }),
        AlphaSqRule::Explicit(values) => json!({"rule": "explicit", "values": rational_list(values)}),
        AlphaSqRule::Of(seq) => json!({"rule": "of", "sequence": SequenceDocument::from_sequence(seq)}),
    }
}

fn field<'a>(params: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    params.get(key).ok_or_else(|| Error::Document(format!("missing parameter {key:?}")))
}

fn rational_field(params: &Map<String, Value>, key: &str) -> Result<Rational> {
    match field(params, key)? {
        Value::String(text) => parse_rational(text),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        other => Err(Error::Document(format!("parameter {key:?} must be a \"p/q\" string, got {other}"))),
    }
}

fn u64_field(params: &Map<String, Value>, key: &str) -> Result<u64> {
    field(params, key)?
        .as_u64()
        .ok_or_else(|| Error::Document(format!("parameter {key:?} must be a nonnegative integer")))
}

fn rational_list_field(params: &Map<String, Value>, key: &str) -> Result<Vec<Rational>> {
    let Value::Array(items) = field(params, key)? else {
        return Err(Error::Document(format!("parameter {key:?} must be a list")));
    };
    items
        .iter()
        .map(|item| match item {
            Value::String(text) => parse_rational(text),
            other => Err(Error::Document(format!("list {key:?} holds a non-string entry {other}"))),
        })
        .collect()
}

fn variant_field(params: &Map<String, Value>) -> Result<Variant> {
    Variant::deserialize(field(params, "variant")?)
        .map_err(|_| Error::Document("variant must be \"first\" or \"second\"".into()))
}

fn object_field<'a>(params: &'a Map<String, Value>, key: &str) -> Result<&'a Map<String, Value>> {
    field(params, key)?.as_object().ok_or_else(|| Error::Document(format!("parameter {key:?} must be an object")))
}

fn rule_tag(params: &Map<String, Value>) -> Result<&str> {
    field(params, "rule")?.as_str().ok_or_else(|| Error::Document("rule tag must be a string".into()))
}

fn build_s_rule(params: &Map<String, Value>) -> Result<SRule> {
    Ok(match rule_tag(params)? {
        "inverse_power" => SRule::InversePower { base: u64_field(params, "base")? },
        "factorial" => SRule::Factorial { shift: u64_field(params, "shift")? },
        "geometric" => SRule::Geometric { lead: rational_field(params, "lead")?, ratio: u64_field(params, "ratio")? },
        "haar_eps" => SRule::HaarEps { eps: rational_field(params, "eps")?, k: u64_field(params, "k")? },
        "explicit" => SRule::Explicit(rational_list_field(params, "values")?),
        other => return Err(Error::Document(format!("unknown s rule {other:?}"))),
    })
}

fn build_alpha_rule(params: &Map<String, Value>) -> Result<AlphaSqRule> {
    Ok(match rule_tag(params)? {
        "periodic" => AlphaSqRule::Periodic {
            first: rational_field(params, "first")?,
            even: rational_field(params, "even")?,
            odd: rational_field(params, "odd")?,
        },
        "explicit" => AlphaSqRule::Explicit(rational_list_field(params, "values")?),
        "of" => {
            let doc = SequenceDocument::deserialize(field(params, "sequence")?)?;
            AlphaSqRule::Of(doc.to_sequence()?)
        }
        other => return Err(Error::Document(format!("unknown alpha_sq rule {other:?}"))),
    })
}

fn build(family: &str, params: &Map<String, Value>) -> Result<CoefficientSequence> {
    match family {
        "chebyshev" => Ok(CoefficientSequence::chebyshev()),
        "constant" => Ok(CoefficientSequence::constant(rational_field(params, "c")?)),
        "ks_counterexample" | "ks" => Ok(ks_counterexample()),
        "geometric" => Ok(geometric_family(&rational_field(params, "c")?, u64_field(params, "k")?)?.1),
        "haar_eps" => Ok(haar_eps_family(&rational_field(params, "eps")?, u64_field(params, "k")?)?.1),
        "power5" => Ok(CoefficientSequence::from_s(SSequence::inverse_power(5), variant_field(params)?)),
        "factorial" => Ok(CoefficientSequence::from_s(SSequence::factorial(3), variant_field(params)?)),
        "inverse_power" => Ok(CoefficientSequence::from_s(
            SSequence::inverse_power(u64_field(params, "base")?),
            variant_field(params)?,
        )),
        "from_s" => Ok(CoefficientSequence::from_s(
            SSequence::new(build_s_rule(object_field(params, "s")?)?),
            variant_field(params)?,
        )),
        "alpha_sq" => coefficients_from_alpha(build_alpha_rule(object_field(params, "rule")?)?),
        "explicit" => Ok(CoefficientSequence::explicit(match params.get("values") {
            Some(_) => rational_list_field(params, "values")?,
            None => Vec::new(),
        })),
        other => Err(Error::Document(format!("unknown family {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{standard_s, StandardS};
    use proptest::prelude::*;

    fn round_trip(seq: &CoefficientSequence) -> CoefficientSequence {
        let text = SequenceDocument::from_sequence(seq).to_json();
        SequenceDocument::from_json(&text).unwrap().to_sequence().unwrap()
    }

    #[test]
    fn documents_rebuild_equal_sequences() {
        let geo = geometric_family(&rat(1, 3), 5).unwrap().1;
        let samples = vec![
            CoefficientSequence::chebyshev(),
            CoefficientSequence::constant(rat(2, 7)),
            ks_counterexample(),
            ks_counterexample().switch(),
            ks_counterexample().with_prefix(vec![rat(1, 3), rat(1, 5)]).switch(),
            geo.clone(),
            geo.switch(),
            haar_eps_family(&rat(1, 2), 5).unwrap().1,
            CoefficientSequence::from_s(standard_s(StandardS::Power5), Variant::First),
            CoefficientSequence::from_s(standard_s(StandardS::Factorial), Variant::Second),
            CoefficientSequence::from_s(SSequence::inverse_power(7), Variant::First),
            CoefficientSequence::from_s(SSequence::explicit(vec![rat(1, 5), rat(1, 30), rat(1, 200), rat(1, 2000), rat(1, 20000), rat(1, 200000)]), Variant::First),
            CoefficientSequence::explicit(vec![rat(1, 2), rat(1, 3)]),
            coefficients_from_alpha(AlphaSqRule::Periodic { first: rat(5, 9), even: rat(1, 9), odd: rat(4, 9) }).unwrap(),
            coefficients_from_alpha(AlphaSqRule::Of(ks_counterexample())).unwrap(),
        ];
        for seq in samples {
            let back = round_trip(&seq);
            assert_eq!(back, seq);
            for n in 1..=6 {
                assert_eq!(back.c(n).ok(), seq.c(n).ok());
            }
        }
    }

    #[test]
    fn geometric_document_names_parameters() {
        let doc = SequenceDocument::from_sequence(&geometric_family(&rat(2, 3), 5).unwrap().1);
        assert_eq!(doc.family, "geometric");
        assert_eq!(doc.params["c"], json!("2/3"));
        assert_eq!(doc.params["k"], json!(5));
        assert!(!doc.to_json().contains("switched"));
    }

    #[test]
    fn ks_document_carries_formulas() {
        let doc = SequenceDocument::from_sequence(&ks_counterexample());
        assert!(doc.params["c_odd"].as_str().unwrap().contains("(6n+4)/(9n+9)"));
        let sw = SequenceDocument::from_sequence(&ks_counterexample().switch());
        assert!(sw.switched);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        for text in [
            r#"{"family": "nope"}"#,
            r#"{"family": "geometric", "params": {"c": "1/3"}}"#,
            r#"{"family": "geometric", "params": {"c": "0.3", "k": 5}}"#,
            r#"{"family": "power5", "params": {"variant": "third"}}"#,
            r#"{"family": "chebyshev", "explicit_prefix": ["1/0"]}"#,
            r#"{"family": "geometric", "params": {"c": "1/3", "k": 2}}"#,
            "not json",
        ] {
            let result = SequenceDocument::from_json(text).and_then(|d| d.to_sequence());
            assert!(result.is_err(), "{text}");
        }
    }

    #[test]
    fn user_written_switch_flag_is_honoured() {
        let doc = SequenceDocument::from_json(r#"{"family": "power5", "params": {"variant": "first"}, "switched": true}"#)
            .unwrap();
        let seq = doc.to_sequence().unwrap();
        assert_eq!(seq.c(1).unwrap(), rat(1, 5));
    }

    proptest! {
        #[test]
        fn explicit_prefixes_round_trip(values in prop::collection::vec((1i64..99, 1i64..99).prop_map(|(p, q)| rat(p, p + q)), 1..10), switched: bool) {
            let base = ks_counterexample().with_prefix(values);
            let seq = if switched { base.switch() } else { base };
            let back = round_trip(&seq);
            prop_assert_eq!(back.coefficients(12).unwrap(), seq.coefficients(12).unwrap());
        }
    }
}
