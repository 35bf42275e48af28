//! Verification records, printed one JSON object per line.

use serde::Serialize;
use serde_json::{json, Value};

use ihsimp::algebra::{HomologyGroup, HomologyResult, Integer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

/// One check: what was checked, the property it names, and a witness when
/// it failed or was skipped.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub check: String,
    pub property: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perversity: Option<String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Record {
    pub fn new(check: &str, property: &str, perversity: Option<&str>, ok: bool, witness: impl FnOnce() -> Value) -> Record {
        Record {
            check: check.to_string(),
            property: property.to_string(),
            perversity: perversity.map(str::to_string),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            witness: if ok { None } else { Some(witness()) },
        }
    }

    pub fn skip(check: &str, property: &str, reason: Value) -> Record {
        Record {
            check: check.to_string(),
            property: property.to_string(),
            perversity: None,
            verdict: Verdict::Skip,
            witness: Some(reason),
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// An integer as a JSON number when it fits, else as a decimal string.
pub fn integer(x: &Integer) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

/// `g` written over the base ring: `Z^r + Z/t` over the integers and
/// `(Z/p)^r` over `F_p`.
pub fn group_name(g: &HomologyGroup, characteristic: u64) -> String {
    match (characteristic, g.free_rank) {
        (0, _) | (_, 0) => g.to_string(),
        (p, 1) => format!("Z/{p}"),
        (p, r) => format!("(Z/{p})^{r}"),
    }
}

pub fn group(g: &HomologyGroup, characteristic: u64) -> Value {
    json!({
        "rank": g.free_rank,
        "torsion": g.torsion.iter().map(integer).collect::<Vec<_>>(),
        "group": group_name(g, characteristic),
    })
}

/// The groups of `h` in degrees `0..len`, as a list of strings.
pub fn groups(h: &HomologyResult, len: usize) -> Value {
    Value::from((0..len.max(h.groups.len())).map(|d| group_name(&h.group(d), h.characteristic)).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_records_have_no_witness() {
        let r = Record::new("c", "prop", Some("zero"), true, || json!({"degree": 1}));
        assert_eq!(r.to_line(), r#"{"check":"c","property":"prop","perversity":"zero","verdict":"PASS"}"#);
        let f = Record::new("c", "prop", None, false, || json!({"degree": 1}));
        assert_eq!(f.to_line(), r#"{"check":"c","property":"prop","verdict":"FAIL","witness":{"degree":1}}"#);
        assert!(f.failed() && !r.failed());
    }

    #[test]
    fn prime_field_groups() {
        assert_eq!(group_name(&HomologyGroup::free(1), 2), "Z/2");
        assert_eq!(group_name(&HomologyGroup::free(3), 5), "(Z/5)^3");
        assert_eq!(group_name(&HomologyGroup::free(0), 5), "0");
        assert_eq!(group_name(&HomologyGroup::free(2), 0), "Z^2");
    }
}
