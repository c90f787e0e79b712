//! Optional symbolic names for generators, so output can read `Z_n` or
//! `Z_pq` instead of concrete numbers when the caller has flagged inputs
//! as named primes or parameters.

use std::collections::BTreeMap;

use crate::{Error, Result};

/// Maps symbol names to the concrete values they stand for.
#[derive(Debug, Clone, Default)]
pub struct SymbolTable {
    syms: BTreeMap<String, u64>,
}

impl SymbolTable {
    pub fn empty() -> SymbolTable {
        SymbolTable::default()
    }

    /// Parses `p=2,q=3`.
    pub fn parse(text: &str) -> Result<SymbolTable> {
        let mut syms = BTreeMap::new();
        for piece in text.split(',').filter(|p| !p.is_empty()) {
            let (name, value) = piece
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("bad symbol `{piece}`; expected name=value")))?;
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric()) {
                return Err(Error::InvalidInput(format!("bad symbol name `{name}`")));
            }
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad symbol value in `{piece}`")))?;
            if value < 2 {
                return Err(Error::InvalidInput(format!("symbol `{name}` must stand for a value >= 2")));
            }
            if syms.insert(name.to_string(), value).is_some() {
                return Err(Error::InvalidInput(format!("duplicate symbol `{name}`")));
            }
        }
        Ok(SymbolTable { syms })
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    /// Renders a generator: an exact symbol match wins, then a product of
    /// distinct symbols (fewest factors first, then name order), then the
    /// plain decimal.
    pub fn render(&self, n: u64) -> String {
        if self.syms.is_empty() || n < 2 {
            return n.to_string();
        }
        let names: Vec<(&String, &u64)> = self.syms.iter().collect();
        if let Some((name, _)) = names.iter().find(|(_, &v)| v == n) {
            return (*name).clone();
        }
        let k = names.len().min(16);
        let mut subsets: Vec<u32> = (1u32..(1 << k)).collect();
        subsets.sort_by_key(|m| (m.count_ones(), *m));
        for mask in subsets {
            let mut product: u64 = 1;
            let mut label = String::new();
            for (i, (name, &v)) in names.iter().enumerate().take(k) {
                if mask & (1 << i) != 0 {
                    product = product.saturating_mul(v);
                    label.push_str(name);
                }
            }
            if product == n {
                return label;
            }
        }
        n.to_string()
    }
}
