//! Presheaf instances (placeholder while the module is under construction).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::fincat::{FinPreord, MonotoneMap};

#[derive(Debug, Error)]
pub enum PresheafError {
    #[error("not a partial order: {0}")]
    NotAPoset(String),
}

#[derive(Debug, Clone)]
pub struct FinPoset(FinPreord);

impl FinPoset {
    pub fn new(p: FinPreord) -> Result<Self, PresheafError> {
        if p.is_antisymmetric() {
            Ok(FinPoset(p))
        } else {
            Err(PresheafError::NotAPoset(p.to_string()))
        }
    }

    pub fn as_preord(&self) -> &FinPreord {
        &self.0
    }
}

#[derive(Debug, Clone)]
pub struct PreordPresheaf {
    index: FinPoset,
    components: BTreeMap<String, FinPreord>,
    restrictions: BTreeMap<(String, String), MonotoneMap>,
}

impl PreordPresheaf {
    pub fn new(
        index: FinPoset,
        components: BTreeMap<String, FinPreord>,
        restrictions: BTreeMap<(String, String), MonotoneMap>,
    ) -> Result<Self, PresheafError> {
        Ok(PreordPresheaf { index, components, restrictions })
    }

    pub fn index(&self) -> &FinPoset {
        &self.index
    }

    pub fn component(&self, p: &str) -> Option<&FinPreord> {
        self.components.get(p)
    }

    pub fn restriction(&self, from: &str, to: &str) -> Option<&MonotoneMap> {
        self.restrictions.get(&(from.to_string(), to.to_string()))
    }
}
