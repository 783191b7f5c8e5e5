use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ModelKind, RbmModel};
use crate::error::{Error, Result};

/// On-disk JSON layout of a model. `J` is row-major `n × m`.
///
/// Floats are written in shortest round-trip form, so reading a file back yields
/// bit-identical parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "J")]
    pub weights: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub kind: ModelKind,
}

impl From<&RbmModel> for ModelFile {
    fn from(model: &RbmModel) -> Self {
        Self {
            n: model.n,
            m: model.m,
            weights: model.weights.clone(),
            f: model.visible_field.clone(),
            g: model.hidden_field.clone(),
            kind: model.kind(),
        }
    }
}

impl TryFrom<ModelFile> for RbmModel {
    type Error = Error;

    fn try_from(file: ModelFile) -> Result<Self> {
        let model = RbmModel::new(file.n, file.m, file.weights, file.f, file.g)?;
        if !model.satisfies(file.kind) {
            return Err(Error::InvalidModel(format!(
                "declared kind `{}` does not match the parameters (actual `{}`)",
                file.kind,
                model.kind()
            )));
        }
        Ok(model)
    }
}

impl RbmModel {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ModelFile::from(self)).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<ModelFile>(text)?.try_into()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kind_mismatch_is_rejected() {
        let text = r#"{"n":1,"m":1,"J":[-0.5],"f":[0.0],"g":[0.0],"kind":"ferromagnetic"}"#;
        assert!(matches!(RbmModel::from_json(text), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn file_fields_are_named_as_documented() {
        let model = RbmModel::ring_of_four(0.5);
        let value: serde_json::Value = serde_json::from_str(&model.to_json()).unwrap();
        for key in ["n", "m", "J", "f", "g", "kind"] {
            assert!(value.get(key).is_some(), "missing {key}");
        }
        assert_eq!(value["kind"], "ferromagnetic");
    }

    proptest! {
        #[test]
        fn json_round_trip_is_bit_exact(
            n in 1usize..5,
            m in 0usize..4,
            seed in proptest::collection::vec(-1e3f64..1e3, 40),
        ) {
            let weights = seed[..n * m].to_vec();
            let f = seed[20..20 + n].to_vec();
            let g = seed[30..30 + m].to_vec();
            let model = RbmModel::new(n, m, weights, f, g).unwrap();
            let back = RbmModel::from_json(&model.to_json()).unwrap();
            let bits = |m: &RbmModel| m.weights().iter().chain(m.visible_field()).chain(m.hidden_field()).map(|v| v.to_bits()).collect::<Vec<_>>();
            prop_assert_eq!(bits(&model), bits(&back));
        }
    }
}
