//! Variable names and ordered variable tables.
//!
//! A [`VarTable`] fixes the ambient polynomial ring: which variables exist and
//! how they compare. Position `p` in the table is the variable's rank in the
//! total order, ascending: `entries[0]` is the smallest variable and
//! `entries[len - 1]` the largest. Box variables `x[i1,...,in]` are entered in
//! lexicographic order of their index tuples, so `x[1,...,1]` is the smallest,
//! which is the ordering the Groebner-basis statements assume.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A variable name in the fixed naming scheme: multi-index `x[1,2,1]` /
/// `y[2,3]`, or numbered scalars `w1`, `z4`, `t2`, `e1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarName {
    Indexed(char, Vec<u32>),
    Numbered(char, u32),
}

impl VarName {
    pub fn x(indices: &[u32]) -> Self {
        VarName::Indexed('x', indices.to_vec())
    }

    pub fn y(l: u32, i: u32) -> Self {
        VarName::Indexed('y', vec![l, i])
    }

    pub fn w(i: u32) -> Self {
        VarName::Numbered('w', i)
    }

    pub fn z(i: u32) -> Self {
        VarName::Numbered('z', i)
    }

    pub fn aux(i: u32) -> Self {
        VarName::Numbered('e', i)
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarName::Indexed(c, idx) => {
                write!(f, "{c}[")?;
                for (k, i) in idx.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{i}")?;
                }
                write!(f, "]")
            }
            VarName::Numbered(c, i) => write!(f, "{c}{i}"),
        }
    }
}

/// Ordered table of distinct variables; position doubles as order rank.
#[derive(Debug)]
pub struct VarTable {
    entries: Vec<VarName>,
    index: HashMap<VarName, usize>,
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}
impl Eq for VarTable {}

impl VarTable {
    pub fn new(entries: Vec<VarName>) -> Result<Arc<Self>> {
        let mut index = HashMap::with_capacity(entries.len());
        for (p, v) in entries.iter().enumerate() {
            if index.insert(v.clone(), p).is_some() {
                return Err(Error::Invalid(format!("duplicate variable `{v}` in table")));
            }
        }
        Ok(Arc::new(VarTable { entries, index }))
    }

    /// Table of the generic box `x[i1,...,in]`, `1 <= i_j <= sizes[j-1]`,
    /// entered in ascending lexicographic order of the index tuples.
    pub fn generic_box(sizes: &[u32]) -> Arc<Self> {
        let mut entries = Vec::new();
        let mut tuple: Vec<u32> = vec![1; sizes.len()];
        loop {
            entries.push(VarName::x(&tuple));
            // advance the tuple like an odometer, last coordinate fastest
            let mut k = sizes.len();
            loop {
                if k == 0 {
                    return Self::new(entries).expect("box tuples are distinct");
                }
                k -= 1;
                if tuple[k] < sizes[k] {
                    tuple[k] += 1;
                    break;
                }
                tuple[k] = 1;
            }
        }
    }

    /// Table of `base1 ... base<count>` where `base1` is the *largest*
    /// variable (so `w1 > w2 > w3` for `numbered_desc('w', 3)`).
    pub fn numbered_desc(base: char, count: u32) -> Arc<Self> {
        let entries = (1..=count).rev().map(|i| VarName::Numbered(base, i)).collect();
        Self::new(entries).expect("numbered variables are distinct")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn name(&self, position: usize) -> &VarName {
        &self.entries[position]
    }

    pub fn names(&self) -> &[VarName] {
        &self.entries
    }

    pub fn position(&self, name: &VarName) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &VarName) -> Result<usize> {
        self.position(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// New table containing `self` plus the given variables appended above
    /// all existing ones (they become the largest variables).
    pub fn extend(&self, extra: &[VarName]) -> Result<Arc<Self>> {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(extra);
        Self::new(entries)
    }

    /// Project onto the variables at `keep` (in the given order). Returns the
    /// sub-table and the map old-position -> new-position.
    pub fn project(&self, keep: &[usize]) -> Result<(Arc<Self>, HashMap<usize, usize>)> {
        let entries: Vec<VarName> = keep.iter().map(|&p| self.entries[p].clone()).collect();
        let table = Self::new(entries)?;
        let map = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        Ok((table, map))
    }
}

/// Two polynomials may only interact when they live over the same table.
/// Cheap pointer check first, falling back to content equality.
pub fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
