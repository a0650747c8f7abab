//! Corpus of divisors with expected values and golden JSON records.
//!
//! Each entry is a TOML file `<name>.toml`:
//!
//! ```toml
//! vars = ["x", "y"]
//! f = "x^2 + y^3"
//!
//! [expected]
//! bpoly = "(s+5/6)*(s+1)*(s+7/6)"
//!
//! [expected.flags]
//! a1 = true
//! b1 = true
//! ```
//!
//! Its golden record is `<name>.golden.json` next to it.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Map, Value};
use weyl_core::annihilator::{self, AsVariant};
use weyl_core::bfunction::{self, Method};
use weyl_core::{charvariety, logarithmic, Element};

use crate::parse::parse_poly;
use crate::report::{self, SCHEMA};
use crate::Failure;

/// Conditions a corpus entry may pin.
pub const FLAGS: [&str; 7] = ["a1", "as", "b1", "free", "holonomic", "koszul", "ls"];

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    #[serde(skip)]
    pub name: String,
    pub vars: Vec<String>,
    pub f: String,
    #[serde(default)]
    pub expected: Expected,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub bpoly: Option<String>,
    #[serde(default)]
    pub flags: BTreeMap<String, bool>,
}

impl Entry {
    pub fn parse(name: &str, text: &str) -> Result<Entry, Failure> {
        let mut e: Entry = toml::from_str(text).map_err(|e| Failure::Corpus(format!("{name}: {e}")))?;
        e.name = name.to_string();
        if let Some(bad) = e.expected.flags.keys().find(|k| !FLAGS.contains(&k.as_str())) {
            return Err(Failure::Corpus(format!("{name}: unknown flag `{bad}`")));
        }
        Ok(e)
    }

    pub fn poly(&self) -> Result<Element, Failure> {
        parse_poly(&self.f, &self.vars).map_err(|err| Failure::Parse { what: format!("{}: f", self.name), err })
    }
}

/// Entries of `dir`, sorted by name.
pub fn load_dir(dir: &Path) -> Result<Vec<(Entry, PathBuf)>, Failure> {
    let rd = fs::read_dir(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    let mut out = Vec::new();
    for item in rd {
        let path = item.map_err(|e| Failure::Io(e.to_string()))?.path();
        if path.extension().and_then(|x| x.to_str()) != Some("toml") {
            continue;
        }
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        let text = fs::read_to_string(&path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        out.push((Entry::parse(&name, &text)?, path.with_extension("golden.json")));
    }
    out.sort_by(|a, b| a.0.name.cmp(&b.0.name));
    Ok(out)
}

fn flag_value(r: weyl_core::Result<bool>) -> Result<Value, Failure> {
    match r {
        Ok(b) => Ok(json!(b)),
        Err(weyl_core::Error::Unsupported(_)) => Ok(json!("unsupported")),
        Err(e) => Err(e.into()),
    }
}

/// Deterministic record of one entry: both b-function routes, both
/// annihilator routes, the symbol-variety dimension and the pinned flags.
pub fn compute(entry: &Entry) -> Result<Value, Failure> {
    let f = entry.poly()?;
    let b_min = bfunction::bpoly(&f, Method::MinPoly)?;
    let b_def = bfunction::bpoly(&f, Method::Deformation)?;
    let oaku = annihilator::ann_fs_oaku(&f)?;
    let bm = annihilator::ann_fs_bm(&f)?;
    let dim = charvariety::charvar_dim_fs_with(&bm)?;
    let mut flags = Map::new();
    for name in entry.expected.flags.keys() {
        let v = match name.as_str() {
            "a1" => flag_value(annihilator::is_a1_with(&bm, &b_min))?,
            "as" => flag_value(annihilator::is_as_with(&bm, AsVariant::Parametric))?,
            "b1" => json!(annihilator::is_b1_with(&b_min)),
            "free" => flag_value(logarithmic::is_free(&f).map(|r| r.free))?,
            "holonomic" => flag_value(crate::holonomic_inverse(&f))?,
            "koszul" => flag_value(logarithmic::is_koszul_free(&f))?,
            "ls" => flag_value(charvariety::is_ls_with(&bm))?,
            _ => unreachable!("validated on load"),
        };
        flags.insert(name.clone(), v);
    }
    let mut b = report::bfunction(&b_min);
    b["methods"] = json!([Method::MinPoly.tag(), Method::Deformation.tag()]);
    b["agreement"] = json!(b_min == b_def);
    Ok(json!({
        "schema": SCHEMA,
        "name": entry.name,
        "input": { "vars": entry.vars, "f": f.to_string() },
        "bpoly": b,
        "ann": {
            "generators": report::elements(bm.generators()),
            "max_order": bm.max_order,
            "methods": [bm.method.tag(), oaku.method.tag()],
            "agreement": oaku.basis == bm.basis,
        },
        "charvar_dim": dim,
        "flags": flags,
    }))
}

/// Problems of a computed record against the entry's expectations.
pub fn check(entry: &Entry, record: &Value) -> Vec<String> {
    let mut problems = Vec::new();
    if record["bpoly"]["agreement"] != json!(true) {
        problems.push("b-function routes disagree".into());
    }
    if record["ann"]["agreement"] != json!(true) {
        problems.push("annihilator routes disagree".into());
    }
    if let Some(want) = &entry.expected.bpoly {
        let got = record["bpoly"]["display"].as_str().unwrap_or_default();
        if got != want.replace(' ', "") {
            problems.push(format!("bpoly: expected {want}, got {got}"));
        }
    }
    for (name, want) in &entry.expected.flags {
        let got = &record["flags"][name];
        if got != &json!(want) {
            problems.push(format!("{name}: expected {want}, got {got}"));
        }
    }
    problems
}

pub fn render_record(record: &Value) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("serializable");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryOutcome {
    pub name: String,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summary {
    pub entries: Vec<EntryOutcome>,
    pub regenerated: bool,
}

impl Summary {
    pub fn code(&self) -> i32 {
        if self.entries.iter().all(|e| e.problems.is_empty()) {
            crate::EXIT_OK
        } else {
            crate::EXIT_ERROR
        }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let entries: Vec<Value> = self
                .entries
                .iter()
                .map(|e| json!({ "name": e.name, "ok": e.problems.is_empty(), "problems": e.problems }))
                .collect();
            let v = json!({ "schema": SCHEMA, "command": "corpus run", "regenerated": self.regenerated, "entries": entries });
            return render_record(&v);
        }
        let mut s = String::new();
        for e in &self.entries {
            if e.problems.is_empty() {
                s.push_str(&format!("ok    {}\n", e.name));
            } else {
                s.push_str(&format!("FAIL  {}: {}\n", e.name, e.problems.join("; ")));
            }
        }
        let failed = self.entries.iter().filter(|e| !e.problems.is_empty()).count();
        s.push_str(&format!("{} entries, {} failed\n", self.entries.len(), failed));
        s
    }
}

/// Computes every entry in parallel; compares with (or with `regenerate`,
/// rewrites) the golden files.
pub fn run_dir(dir: &Path, regenerate: bool) -> Result<Summary, Failure> {
    let entries = load_dir(dir)?;
    if entries.is_empty() {
        return Err(Failure::Corpus(format!("{}: no corpus entries", dir.display())));
    }
    let outcomes: Vec<Result<EntryOutcome, Failure>> = entries
        .par_iter()
        .map(|(entry, golden)| {
            let mut problems = Vec::new();
            match compute(entry) {
                Ok(record) => {
                    problems.extend(check(entry, &record));
                    let text = render_record(&record);
                    if regenerate {
                        fs::write(golden, &text).map_err(|e| Failure::Io(format!("{}: {e}", golden.display())))?;
                    } else {
                        match fs::read_to_string(golden) {
                            Ok(want) if want == text => {}
                            Ok(_) => problems.push("output differs from golden".into()),
                            Err(_) => problems.push(format!("missing golden {}", golden.display())),
                        }
                    }
                }
                Err(e) => problems.push(e.to_string()),
            }
            Ok(EntryOutcome { name: entry.name.clone(), problems })
        })
        .collect();
    let entries = outcomes.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Summary { entries, regenerated: regenerate })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_entry() {
        let e = Entry::parse(
            "cusp",
            "vars = [\"x\", \"y\"]\nf = \"x^2+y^3\"\n[expected]\nbpoly = \"(s+5/6)*(s+1)*(s+7/6)\"\n[expected.flags]\nb1 = true\n",
        )
        .unwrap();
        assert_eq!(e.vars, ["x", "y"]);
        assert_eq!(e.expected.flags.get("b1"), Some(&true));
        assert!(Entry::parse("bad", "vars = [\"x\"]\nf = \"x\"\n[expected.flags]\nzz = true\n").is_err());
        assert!(Entry::parse("bad", "vars = [\"x\"]\nf = \"x\"\nextra = 1\n").is_err());
    }
}
