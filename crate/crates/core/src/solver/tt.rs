//! Transposition table: proven wins (with their trees) and disproofs.
//!
//! Sharded behind mutexes so independent searches may share one table.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::tree::RzstNode;

const SHARDS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Win(Arc<RzstNode>),
    Fail,
}

pub struct TranspositionTable {
    shards: Vec<Mutex<HashMap<(u64, u64), Entry>>>,
}

impl Default for TranspositionTable {
    fn default() -> Self {
        TranspositionTable::new()
    }
}

impl TranspositionTable {
    pub fn new() -> TranspositionTable {
        TranspositionTable {
            shards: (0..SHARDS).map(|_| Mutex::new(HashMap::new())).collect(),
        }
    }

    fn shard(&self, hash: u64) -> &Mutex<HashMap<(u64, u64), Entry>> {
        &self.shards[(hash as usize) % SHARDS]
    }

    pub fn lookup(&self, hash: u64, goal: u64) -> Option<Entry> {
        self.shard(hash)
            .lock()
            .expect("table lock poisoned")
            .get(&(hash, goal))
            .cloned()
    }

    pub fn store(&self, hash: u64, goal: u64, entry: Entry) {
        self.shard(hash)
            .lock()
            .expect("table lock poisoned")
            .insert((hash, goal), entry);
    }

    pub fn len(&self) -> usize {
        self.shards
            .iter()
            .map(|s| s.lock().expect("table lock poisoned").len())
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
