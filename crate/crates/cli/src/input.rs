use std::io::Read;
use std::path::Path;

use qinv_core::qstate::StateInput;
use qinv_core::{ACoords, Error};

/// Where a state comes from: `--a`, `--state-file`, or stdin.
pub fn read_state(a: Option<&str>, state_file: Option<&Path>) -> Result<StateInput, Error> {
    if let Some(text) = a {
        let z: ACoords = serde_json::from_str(text).map_err(|e| Error::Parse(format!("field \"a\": {e}")))?;
        return Ok(StateInput::A { a: z });
    }
    let text = match state_file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    StateInput::from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_flag_is_parsed() {
        let s = read_state(Some("[[1,0],[0,0],[0,0],[0,0]]"), None).unwrap();
        assert!(matches!(s, StateInput::A { .. }));
    }

    #[test]
    fn bad_a_names_the_field() {
        let err = read_state(Some("[[1,0],[0,0]]"), None).unwrap_err();
        assert!(err.to_string().contains("\"a\""), "{err}");
    }

    #[test]
    fn missing_file_is_an_input_error() {
        let err = read_state(None, Some(Path::new("/nonexistent/state.json"))).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }
}
