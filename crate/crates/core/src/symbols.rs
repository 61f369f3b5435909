//! Name interning.
//!
//! Every instance carries opaque string identifiers for its elements. They are
//! assigned a dense index on first sight and all algorithms work on indices.

use std::collections::HashMap;

#[derive(Clone, Debug, Default)]
pub struct Symbols {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Symbols {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the index of `name`, inserting it if unseen.
    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), i);
        i
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// A name based on `base` that is not yet taken. Primes are appended
    /// until the name is free.
    pub fn fresh(&self, base: &str) -> String {
        let mut candidate = base.to_owned();
        while self.contains(&candidate) {
            candidate.push('\'');
        }
        candidate
    }
}

impl PartialEq for Symbols {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Symbols {}
