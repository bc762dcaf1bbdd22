use serde::Serialize;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum LabError {
    /// The document does not match the scene schema.
    #[error("schema error at `{path}`: {reason}")]
    Schema { path: String, reason: String },
    /// The document is well formed but describes an invalid table or run.
    #[error("validation error: {0}")]
    Validation(#[from] pblab_core::Error),
}

impl LabError {
    pub(crate) fn schema_from<E: std::fmt::Display>(err: &serde_path_to_error::Error<E>, prefix: &str) -> Self {
        let path = err.path().to_string();
        LabError::Schema {
            path: crate::scene::join_path(prefix, if path == "." { "" } else { &path }),
            reason: err.inner().to_string(),
        }
    }

    pub fn body(&self) -> ErrorBody {
        match self {
            LabError::Schema { path, reason } => ErrorBody {
                error: "schema",
                kind: None,
                path: Some(path.clone()),
                message: reason.clone(),
            },
            LabError::Validation(err) => ErrorBody {
                error: "validation",
                kind: Some(variant_name(err)),
                path: None,
                message: err.to_string(),
            },
        }
    }
}

/// Machine-readable error report shared by the CLI and the service.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorBody {
    pub error: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub message: String,
}

fn variant_name(err: &pblab_core::Error) -> String {
    let debug = format!("{err:?}");
    debug
        .split(|c: char| !c.is_alphanumeric() && c != '_')
        .next()
        .unwrap_or_default()
        .to_string()
}
