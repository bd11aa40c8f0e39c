//! Parameter echo carried by every emitted file.

use std::fmt::Display;

use crate::{TOOL_NAME, TOOL_VERSION};

#[derive(Clone, Debug)]
pub struct Meta {
    command: String,
    params: Vec<(String, String)>,
}

impl Meta {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: Vec::new(),
        }
    }

    pub fn push(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    /// `# key=value` comment block for CSV headers.
    pub fn csv_block(&self) -> String {
        let mut out = format!("# tool={TOOL_NAME} version={TOOL_VERSION}\n# command={}\n", self.command);
        for (k, v) in &self.params {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out
    }

    /// Metadata object for JSON documents.
    pub fn json_value(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("tool".into(), TOOL_NAME.into());
        map.insert("version".into(), TOOL_VERSION.into());
        map.insert("command".into(), self.command.clone().into());
        let mut params = serde_json::Map::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), v.clone().into());
        }
        map.insert("params".into(), params.into());
        map.into()
    }
}
