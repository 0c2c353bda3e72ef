//! Per-instance data shared by every claim, computed once on first use.

use std::sync::{Arc, OnceLock};

use super::descriptor::{Instance, InstanceDescriptor};
use crate::algebra::{GradedIdeal, MultiplicativeSet};
use crate::error::{AlgebraError, Result};
use crate::localization::{localize, LocalizedModule};
use crate::module::{GradedModule, GradedSubmodule, ResidueSummary, ZInstance};
use crate::primality::{classify, PrimalityVerdict};

pub struct InstanceCtx {
    pub index: usize,
    pub descriptor: InstanceDescriptor,
    pub label: String,
    pub kind: CtxKind,
}

pub enum CtxKind {
    Finite(FiniteCtx),
    Integer(ZInstance, ResidueSummary),
    Broken(AlgebraError),
}

pub struct FiniteCtx {
    pub module: Arc<GradedModule>,
    pub designated: Option<GradedSubmodule>,
    pub bound: usize,
    submodules: OnceLock<Result<Vec<GradedSubmodule>>>,
    verdicts: OnceLock<Vec<PrimalityVerdict>>,
    ideals: OnceLock<Result<Vec<GradedIdeal>>>,
    s_sets: OnceLock<Result<Vec<MultiplicativeSet>>>,
    localizations: OnceLock<Vec<Result<Arc<LocalizedModule>>>>,
    multiplication: OnceLock<Result<bool>>,
}

impl InstanceCtx {
    pub fn new(index: usize, descriptor: InstanceDescriptor, bound: usize) -> Self {
        let label = descriptor.label();
        let kind = match descriptor.build() {
            Ok(Instance::Finite { module, designated }) => CtxKind::Finite(FiniteCtx::new(module, designated, bound)),
            Ok(Instance::Integer(z)) => match z.residue_reduction() {
                Ok(s) => CtxKind::Integer(z, s),
                Err(e) => CtxKind::Broken(e),
            },
            Err(e) => CtxKind::Broken(e),
        };
        Self { index, descriptor, label, kind }
    }
}

impl FiniteCtx {
    pub fn new(module: Arc<GradedModule>, designated: Option<GradedSubmodule>, bound: usize) -> Self {
        Self {
            module,
            designated,
            bound,
            submodules: OnceLock::new(),
            verdicts: OnceLock::new(),
            ideals: OnceLock::new(),
            s_sets: OnceLock::new(),
            localizations: OnceLock::new(),
            multiplication: OnceLock::new(),
        }
    }

    /// All graded submodules, or only the designated one.
    pub fn submodules(&self) -> Result<&[GradedSubmodule]> {
        self.submodules
            .get_or_init(|| match &self.designated {
                Some(n) => Ok(vec![n.clone()]),
                None => self.module.enumerate_graded_submodules(self.bound),
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Every graded submodule, ignoring the designated one.
    pub fn all_submodules(&self) -> Result<Vec<GradedSubmodule>> {
        match &self.designated {
            None => self.submodules().map(<[_]>::to_vec),
            Some(_) => self.module.enumerate_graded_submodules(self.bound),
        }
    }

    /// Verdicts aligned with [`Self::submodules`].
    pub fn verdicts(&self) -> Result<&[PrimalityVerdict]> {
        let subs = self.submodules()?;
        Ok(self.verdicts.get_or_init(|| subs.iter().map(|n| classify(&self.module, n)).collect()))
    }

    pub fn ideals(&self) -> Result<&[GradedIdeal]> {
        self.ideals
            .get_or_init(|| self.module.ring().enumerate_graded_ideals(self.bound))
            .as_deref()
            .map_err(Clone::clone)
    }

    pub fn s_sets(&self) -> Result<&[MultiplicativeSet]> {
        self.s_sets
            .get_or_init(|| self.module.ring().enumerate_multiplicative_sets(self.bound))
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Localizations aligned with [`Self::s_sets`].
    pub fn localizations(&self) -> Result<&[Result<Arc<LocalizedModule>>]> {
        let s = self.s_sets()?;
        Ok(self.localizations.get_or_init(|| s.iter().map(|s| localize(&self.module, s).map(Arc::new)).collect()))
    }

    pub fn is_multiplication(&self) -> Result<bool> {
        self.multiplication.get_or_init(|| self.module.is_multiplication(self.bound)).clone()
    }
}
