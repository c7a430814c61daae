use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

/// A deck that can check its own invariants after parsing.
pub trait Validate {
    fn validate(&self) -> Result<()>;
}

impl Validate for crate::neuron::NeuronDeck {
    fn validate(&self) -> Result<()> {
        crate::neuron::NeuronDeck::validate(self)
    }
}

impl Validate for crate::network::NetworkDeck {
    fn validate(&self) -> Result<()> {
        crate::network::NetworkDeck::validate(self)
    }
}

impl Validate for crate::quantum::QmeSpec {
    fn validate(&self) -> Result<()> {
        crate::quantum::QmeSpec::validate(self)
    }
}

/// Parses JSON text into a validated deck. Unknown keys are rejected and
/// missing ones take their defaults.
pub fn parse_config<T: DeserializeOwned + Validate>(text: &str, origin: &str) -> Result<T> {
    let deck: T = serde_json::from_str(text).map_err(|source| Error::Json {
        path: origin.to_string(),
        source,
    })?;
    deck.validate()?;
    Ok(deck)
}

pub fn load_config<T: DeserializeOwned + Validate>(path: &Path) -> Result<T> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| Error::io(&name, e))?;
    parse_config(&text, &name)
}

/// Canonical form: pretty JSON with every field present.
pub fn to_canonical<T: Serialize>(deck: &T) -> String {
    serde_json::to_string_pretty(deck).expect("decks serialise to json") + "\n"
}

pub fn save_config<T: Serialize>(path: &Path, deck: &T) -> Result<()> {
    fs::write(path, to_canonical(deck)).map_err(|e| Error::io(path.display().to_string(), e))
}
