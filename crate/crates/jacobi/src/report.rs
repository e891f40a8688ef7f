//! Versioned JSON envelopes for command output.

use serde::Serialize;

/// Bumped whenever a result schema changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub version: u32,
    pub command: &'a str,
    pub result: T,
}

pub fn to_json<T: Serialize>(command: &str, result: T) -> crate::Result<String> {
    Ok(serde_json::to_string_pretty(&Envelope {
        version: SCHEMA_VERSION,
        command,
        result,
    })?)
}
