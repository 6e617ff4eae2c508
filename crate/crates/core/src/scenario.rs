//! Scenario files: a named Gaussian-mixture electorate plus a candidate roster.
//!
//! ```yaml
//! name: "Polarized Bimodal"
//! real_world_analog: "Contemporary USA, Brexit-era UK"
//! n_voters: 5000
//! electorate:
//!   type: gaussian_mixture
//!   components:
//!     - weight: 0.55
//!       mean: [0.72, 0.58]
//!       std:  [0.10, 0.08]
//! candidates:
//!   - {label: "Right", position: [0.72, 0.58]}
//! ```
//!
//! Unknown keys are rejected. The eight built-in scenarios ship in the
//! crate's `scenarios/` directory and are also compiled into the library.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::candidates::{Candidate, CandidateSet};
use crate::electorate::{validate_mixture, MixtureComponent};
use crate::error::{Error, Result};

pub const GAUSSIAN_MIXTURE: &str = "gaussian_mixture";

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub real_world_analog: String,
    pub n_voters: usize,
    pub electorate: Vec<MixtureComponent>,
    pub candidates: CandidateSet,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    #[serde(default)]
    real_world_analog: String,
    n_voters: usize,
    electorate: ElectorateFile,
    candidates: Vec<Candidate>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElectorateFile {
    #[serde(rename = "type")]
    kind: String,
    components: Vec<MixtureComponent>,
}

impl Scenario {
    /// Lowercase identifier derived from the name, e.g. `polarized_bimodal`.
    pub fn slug(&self) -> String {
        slugify(&self.name)
    }

    pub fn to_yaml(&self) -> String {
        let file = ScenarioFile {
            name: self.name.clone(),
            real_world_analog: self.real_world_analog.clone(),
            n_voters: self.n_voters,
            electorate: ElectorateFile {
                kind: GAUSSIAN_MIXTURE.to_string(),
                components: self.electorate.clone(),
            },
            candidates: self.candidates.to_candidates(),
        };
        serde_yaml::to_string(&file).expect("scenario serialises")
    }
}

pub fn slugify(name: &str) -> String {
    let mut slug = String::with_capacity(name.len());
    for ch in name.chars() {
        if ch.is_ascii_alphanumeric() {
            slug.push(ch.to_ascii_lowercase());
        } else if !slug.ends_with('_') && !slug.is_empty() {
            slug.push('_');
        }
    }
    slug.trim_end_matches('_').to_string()
}

/// 1-based line of the first line whose trimmed text starts with `key`.
fn line_of(text: &str, key: &str) -> Option<usize> {
    text.lines()
        .position(|l| l.trim_start().trim_start_matches("- ").starts_with(key))
        .map(|i| i + 1)
}

fn at_line(text: &str, key: &str, message: String) -> String {
    match line_of(text, key) {
        Some(line) => format!("{message} (line {line})"),
        None => message,
    }
}

pub fn load_scenario(yaml_text: &str) -> Result<Scenario> {
    load_scenario_from(yaml_text, "<inline>")
}

/// Parses and validates one scenario; `source_name` labels error messages.
pub fn load_scenario_from(yaml_text: &str, source_name: &str) -> Result<Scenario> {
    let err = |msg: String| Error::scenario(source_name, msg);
    let file: ScenarioFile = serde_yaml::from_str(yaml_text).map_err(|e| err(e.to_string()))?;

    if file.electorate.kind != GAUSSIAN_MIXTURE {
        return Err(err(at_line(
            yaml_text,
            "type:",
            format!(
                "unknown electorate type `{}` (expected `{GAUSSIAN_MIXTURE}`)",
                file.electorate.kind
            ),
        )));
    }
    if file.n_voters == 0 {
        return Err(err(at_line(yaml_text, "n_voters:", "n_voters must be at least 1".into())));
    }
    validate_mixture(&file.electorate.components)
        .map_err(|e| err(at_line(yaml_text, "components:", format!("electorate: {e}"))))?;
    let candidates = CandidateSet::new(file.candidates)
        .map_err(|e| err(at_line(yaml_text, "candidates:", format!("candidates: {e}"))))?;

    Ok(Scenario {
        name: file.name,
        real_world_analog: file.real_world_analog,
        n_voters: file.n_voters,
        electorate: file.electorate.components,
        candidates,
    })
}

pub fn load_scenario_file(path: &Path) -> Result<Scenario> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    load_scenario_from(&text, &path.display().to_string())
}

/// Scenarios loaded from a directory, with per-file failures kept aside.
#[derive(Debug, Default)]
pub struct ScenarioBatch {
    pub scenarios: Vec<Scenario>,
    pub errors: Vec<(PathBuf, Error)>,
}

/// Loads every `*.yaml` file in `directory`, sorted by file name. A bad file
/// is reported in `errors` and does not stop the others.
pub fn load_all_scenarios(directory: &Path) -> Result<ScenarioBatch> {
    let entries = fs::read_dir(directory).map_err(|e| Error::io(directory, e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(directory, e))?.path();
        if path.is_file() && path.extension().is_some_and(|x| x == "yaml") {
            paths.push(path);
        }
    }
    paths.sort();
    let mut batch = ScenarioBatch::default();
    for path in paths {
        match load_scenario_file(&path) {
            Ok(s) => batch.scenarios.push(s),
            Err(e) => batch.errors.push((path, e)),
        }
    }
    Ok(batch)
}

const BUILTIN_FILES: [(&str, &str); 8] = [
    ("01_unimodal_consensus.yaml", include_str!("../scenarios/01_unimodal_consensus.yaml")),
    ("02_polarized_bimodal.yaml", include_str!("../scenarios/02_polarized_bimodal.yaml")),
    ("03_multimodal_fragmented.yaml", include_str!("../scenarios/03_multimodal_fragmented.yaml")),
    ("04_dominant_party.yaml", include_str!("../scenarios/04_dominant_party.yaml")),
    ("05_asymmetric_skewed.yaml", include_str!("../scenarios/05_asymmetric_skewed.yaml")),
    ("06_two_party_symmetric.yaml", include_str!("../scenarios/06_two_party_symmetric.yaml")),
    ("07_two_party_centrist_majority.yaml", include_str!("../scenarios/07_two_party_centrist_majority.yaml")),
    ("08_two_party_dominant_left.yaml", include_str!("../scenarios/08_two_party_dominant_left.yaml")),
];

/// Directory holding the built-in scenario files in the source tree.
pub fn builtin_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

/// The eight built-in scenarios, in file-name order.
pub fn builtin_scenarios() -> Vec<Scenario> {
    BUILTIN_FILES
        .iter()
        .map(|(file, text)| load_scenario_from(text, file).expect("built-in scenarios are valid"))
        .collect()
}

/// Built-in scenario by slug (`polarized_bimodal`) or exact name.
pub fn builtin_scenario(key: &str) -> Option<Scenario> {
    let wanted = slugify(key);
    builtin_scenarios().into_iter().find(|s| s.slug() == wanted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spatial::Point2;

    const LISTING: &str = r#"
name: "Polarized Bimodal"
real_world_analog: "Contemporary USA, Brexit-era UK"
n_voters: 5000
electorate:
  type: gaussian_mixture
  components:
    - weight: 0.55
      mean: [0.72, 0.58]
      std:  [0.10, 0.08]
    - weight: 0.45
      mean: [0.25, 0.38]
      std:  [0.10, 0.08]
candidates:
  - {label: "Far-Right", position: [0.80, 0.75]}
  - {label: "Right",     position: [0.72, 0.58]}
  - {label: "Center",    position: [0.50, 0.48]}
  - {label: "Left",      position: [0.28, 0.42]}
  - {label: "Far-Left",  position: [0.15, 0.25]}
"#;

    #[test]
    fn parses_listing() {
        let s = load_scenario(LISTING).unwrap();
        assert_eq!(s.name, "Polarized Bimodal");
        assert_eq!(s.n_voters, 5000);
        assert_eq!(s.electorate.len(), 2);
        assert_eq!(s.electorate[0].weight, 0.55);
        assert_eq!(s.electorate[1].weight, 0.45);
        assert_eq!(s.electorate[1].mean, Point2::new(0.25, 0.38));
        assert_eq!(s.electorate[0].std, [0.10, 0.08]);
        assert_eq!(s.candidates.len(), 5);
        assert_eq!(s.candidates.label(2), "Center");
        assert_eq!(s.slug(), "polarized_bimodal");
    }

    #[test]
    fn builtin_polarized_matches_listing() {
        let builtin = builtin_scenario("polarized_bimodal").unwrap();
        assert_eq!(builtin, load_scenario(LISTING).unwrap());
        assert_eq!(builtin_scenario("Polarized Bimodal").unwrap(), builtin);
    }

    #[test]
    fn weight_sum_error() {
        let text = LISTING.replace("weight: 0.55", "weight: 0.6").replace("weight: 0.45", "weight: 0.5");
        let e = load_scenario(&text).unwrap_err().to_string();
        assert!(e.contains("weights sum to 1.1"), "{e}");
        assert!(e.contains("line 7"), "{e}");
    }

    #[test]
    fn unknown_type_error() {
        let text = LISTING.replace("type: gaussian_mixture", "type: uniform");
        let e = load_scenario(&text).unwrap_err().to_string();
        assert!(e.contains("unknown electorate type"), "{e}");
    }

    #[test]
    fn unknown_key_named() {
        let text = LISTING.replace("n_voters: 5000", "n_voters: 5000\nturnout: 0.7");
        let e = load_scenario(&text).unwrap_err().to_string();
        assert!(e.contains("turnout"), "{e}");
        assert!(e.contains("line"), "{e}");
    }

    #[test]
    fn structural_errors() {
        let missing = LISTING.replace("n_voters: 5000\n", "");
        assert!(load_scenario(&missing).unwrap_err().to_string().contains("n_voters"));
        let wrong_type = LISTING.replace("n_voters: 5000", "n_voters: many");
        assert!(load_scenario(&wrong_type).is_err());
        let outside = LISTING.replace("[0.80, 0.75]", "[1.80, 0.75]");
        let e = load_scenario(&outside).unwrap_err().to_string();
        assert!(e.contains("outside"), "{e}");
    }

    #[test]
    fn yaml_round_trip() {
        for s in builtin_scenarios() {
            let again = load_scenario(&s.to_yaml()).unwrap();
            assert_eq!(again, s);
        }
    }

    #[test]
    fn slugs() {
        assert_eq!(slugify("Two-Party Centrist Majority"), "two_party_centrist_majority");
        assert_eq!(slugify("  Odd -- name! "), "odd_name");
    }
}
