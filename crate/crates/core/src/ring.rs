use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::MAX_VARS;

/// `k[x_0, ..., x_r]` over a fixed field. Immutable once built and shared
/// through `Arc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring<F: Field> {
    field: F,
    names: Arc<[String]>,
}

impl<F: Field> Ring<F> {
    /// Ring with variables `x0 .. x{nvars-1}`.
    pub fn new(field: F, nvars: usize) -> Result<Arc<Self>> {
        Self::with_offset(field, nvars, 0)
    }

    /// Ring whose variables are named `x{offset} .. x{offset+nvars-1}`.
    pub fn with_offset(field: F, nvars: usize, offset: usize) -> Result<Arc<Self>> {
        let names = (offset..offset + nvars).map(|i| format!("x{i}")).collect();
        Self::with_names(field, names)
    }

    pub fn with_names(field: F, names: Vec<String>) -> Result<Arc<Self>> {
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(Error::InvalidArgument(format!(
                "rings need between 1 and {MAX_VARS} variables, got {}",
                names.len()
            )));
        }
        Ok(Arc::new(Ring {
            field,
            names: names.into(),
        }))
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn names(&self) -> &Arc<[String]> {
        &self.names
    }

    /// `k[x_1, ..., x_r]`: the ring without its first variable.
    pub fn drop_first(&self) -> Result<Arc<Self>> {
        Self::with_names(self.field.clone(), self.names[1..].to_vec())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Same ring: identical object or structurally equal.
pub fn same_ring<F: Field>(a: &Arc<Ring<F>>, b: &Arc<Ring<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
