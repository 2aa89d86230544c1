//! Selections: which creatives an ad group runs.

use crate::error::{Error, Result};

/// A set of distinct creative indices with a fixed target size.
///
/// Indices keep insertion order so greedy traces read in pick order; goal
/// evaluation treats the selection as an unordered set. The derived equality
/// is therefore order-sensitive; compare [`Selection::sorted`] when only the
/// set matters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    indices: Vec<usize>,
    capacity: usize,
}

impl Selection {
    pub fn empty(capacity: usize) -> Self {
        Self { indices: Vec::with_capacity(capacity), capacity }
    }

    /// Builds a selection from explicit indices, rejecting duplicates and
    /// overflow past `capacity`.
    pub fn from_indices(indices: impl Into<Vec<usize>>, capacity: usize) -> Result<Self> {
        let indices = indices.into();
        if indices.len() > capacity {
            return Err(Error::CapacityExceeded { capacity });
        }
        for (pos, &index) in indices.iter().enumerate() {
            if indices[..pos].contains(&index) {
                return Err(Error::DuplicateIndex { index });
            }
        }
        Ok(Self { indices, capacity })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Indices in ascending order, the canonical set representation.
    pub fn sorted(&self) -> Vec<usize> {
        let mut v = self.indices.clone();
        v.sort_unstable();
        v
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn is_complete(&self) -> bool {
        self.indices.len() == self.capacity
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.contains(&index)
    }

    pub fn push(&mut self, index: usize) -> Result<()> {
        if self.contains(index) {
            return Err(Error::DuplicateIndex { index });
        }
        if self.indices.len() == self.capacity {
            return Err(Error::CapacityExceeded { capacity: self.capacity });
        }
        self.indices.push(index);
        Ok(())
    }

    /// Same indices under a different target size.
    pub fn with_capacity(&self, capacity: usize) -> Result<Self> {
        Self::from_indices(self.indices.clone(), capacity)
    }

    /// Copy of this selection minus the members at the given positions.
    ///
    /// `positions` index into the selection (0..len), not the creative ids;
    /// the survivors keep their relative order and the capacity is unchanged.
    pub fn without_positions(&self, positions: &[usize]) -> Result<Self> {
        for (i, &pos) in positions.iter().enumerate() {
            if pos >= self.indices.len() {
                return Err(Error::InvalidParams(format!(
                    "removal position {pos} out of range for a selection of {}",
                    self.indices.len()
                )));
            }
            if positions[..i].contains(&pos) {
                return Err(Error::InvalidParams(format!("removal position {pos} repeated")));
            }
        }
        let kept = self
            .indices
            .iter()
            .enumerate()
            .filter(|(pos, _)| !positions.contains(pos))
            .map(|(_, &index)| index)
            .collect();
        Ok(Self { indices: kept, capacity: self.capacity })
    }

    /// Checks every index against the matrix width.
    pub fn validate_columns(&self, cols: usize) -> Result<()> {
        for &index in &self.indices {
            if index >= cols {
                return Err(Error::IndexOutOfRange { index, cols });
            }
        }
        Ok(())
    }
}
