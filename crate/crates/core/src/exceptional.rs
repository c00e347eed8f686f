//! Externally supplied data for exceptional types: nilpotent orbits with
//! their Springer characters, and Kazhdan-Lusztig maps.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::characters::CharTable;
use crate::error::{Error, Result};
use crate::rootdata::CartanType;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRow {
    pub name: String,
    pub dim: u32,
    pub special: bool,
    /// Springer character (constant local system), by label.
    pub springer: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTable {
    pub ty: CartanType,
    pub rows: Vec<OrbitRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlTable {
    pub ty: CartanType,
    /// `(orbit name, class label)`.
    pub rows: Vec<(String, String)>,
}

/// All ingested tables.
#[derive(Clone, Debug, Default)]
pub struct Tables {
    pub chartabs: Vec<(CartanType, CharTable)>,
    pub orbits: Vec<OrbitTable>,
    pub kl: Vec<KlTable>,
}

impl Tables {
    pub fn orbit_table(&self, ty: CartanType) -> Option<&OrbitTable> {
        self.orbits.iter().find(|t| t.ty == ty)
    }

    pub fn kl_table(&self, ty: CartanType) -> Option<&KlTable> {
        self.kl.iter().find(|t| t.ty == ty)
    }

    pub fn kl_class(&self, ty: CartanType, orbit: &str) -> Result<&str> {
        let t = self
            .kl_table(ty)
            .ok_or_else(|| Error::ExternalTableRequired(format!("kl table for {ty}")))?;
        t.rows
            .iter()
            .find(|(o, _)| o == orbit)
            .map(|(_, c)| c.as_str())
            .ok_or_else(|| Error::Table(format!("kl table for {ty} has no row for orbit {orbit}")))
    }
}
