//! The orbit and Burnside categories of one group, with their opposites and squares.

use std::sync::{Arc, OnceLock};

use crate::burnside::BurnsideCategory;
use crate::context::GroupContext;
use crate::groups::{FiniteGroup, GroupError};
use crate::kan::{Cat, Opposite, Product};
use crate::orbit::OrbitCategory;

pub struct GroupCategories {
    pub ctx: Arc<GroupContext>,
    pub orbit: Arc<OrbitCategory>,
    pub burnside: Arc<BurnsideCategory>,
    orbit_cat: Cat,
    orbit_op: Cat,
    burnside_cat: Cat,
    orbit_op_sq: OnceLock<Cat>,
    orbit_sq: OnceLock<Cat>,
    burnside_sq: OnceLock<Cat>,
}

impl GroupCategories {
    pub fn new(group: FiniteGroup) -> Result<Arc<Self>, GroupError> {
        Ok(Self::from_context(GroupContext::new(group)?))
    }

    pub fn by_name(name: &str) -> Option<Arc<Self>> {
        Some(Self::from_context(GroupContext::by_name(name)?))
    }

    pub fn from_context(ctx: Arc<GroupContext>) -> Arc<Self> {
        let orbit = Arc::new(OrbitCategory::new(ctx.clone()));
        let burnside = Arc::new(BurnsideCategory::new(ctx.clone()));
        let orbit_cat: Cat = orbit.clone();
        let orbit_op: Cat = Arc::new(Opposite::new(orbit_cat.clone()));
        let burnside_cat: Cat = burnside.clone();
        Arc::new(GroupCategories {
            ctx,
            orbit,
            burnside,
            orbit_cat,
            orbit_op,
            burnside_cat,
            orbit_op_sq: OnceLock::new(),
            orbit_sq: OnceLock::new(),
            burnside_sq: OnceLock::new(),
        })
    }

    /// `𝒪_G`, the indexing category of co-coefficient systems.
    pub fn orbit_cat(&self) -> &Cat {
        &self.orbit_cat
    }

    /// `𝒪_G^op`, the indexing category of coefficient systems.
    pub fn orbit_op(&self) -> &Cat {
        &self.orbit_op
    }

    /// `ℬ_G`, the indexing category of Mackey functors.
    pub fn burnside_cat(&self) -> &Cat {
        &self.burnside_cat
    }

    pub fn orbit_op_sq(&self) -> &Cat {
        self.orbit_op_sq.get_or_init(|| Arc::new(Product::new(self.orbit_op.clone(), self.orbit_op.clone())))
    }

    pub fn orbit_sq(&self) -> &Cat {
        self.orbit_sq.get_or_init(|| Arc::new(Product::new(self.orbit_cat.clone(), self.orbit_cat.clone())))
    }

    pub fn burnside_sq(&self) -> &Cat {
        self.burnside_sq.get_or_init(|| Arc::new(Product::new(self.burnside_cat.clone(), self.burnside_cat.clone())))
    }

    pub fn orbit_count(&self) -> usize {
        self.ctx.orbit_count()
    }
}
