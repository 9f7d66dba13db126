use crate::error::{Error, ModelError};
use crate::model::{Assignment, Element, FiniteUnaryAlgebra};
use crate::ops::Sidedness;
use crate::prune::is_pruned;
use crate::tree::{EdgeId, SigmaTree, VertexId};

/// Evaluates left (or right) adequate trees in a finite model.
///
/// Right-sided evaluation runs the left-sided recursion on the mirrored tree
/// inside the opposite monoid, whose `plus` is the original `star`.
#[derive(Debug, Clone)]
pub struct Evaluator {
    sidedness: Sidedness,
    model: FiniteUnaryAlgebra,
    oriented: FiniteUnaryAlgebra,
    chi: Assignment,
}

impl Evaluator {
    /// Verifies `model` for `sidedness` unless `trusted` is set.
    pub fn new(
        model: &FiniteUnaryAlgebra,
        chi: Assignment,
        sidedness: Sidedness,
        trusted: bool,
    ) -> Result<Self, ModelError> {
        if sidedness == Sidedness::TwoSided {
            return Err(ModelError::Mode(
                "evaluation is defined for left or right sidedness".into(),
            ));
        }
        if !trusted {
            model
                .verify(sidedness)
                .map_err(|violation| ModelError::NotAdequate {
                    sidedness,
                    violation,
                })?;
        }
        let table_present = match sidedness {
            Sidedness::Left => model.plus_table().is_some(),
            _ => model.star_table().is_some(),
        };
        if !table_present {
            return Err(ModelError::NotAdequate {
                sidedness,
                violation: crate::model::Violation::MissingTable,
            });
        }
        if let Some((_, &v)) = chi.iter().find(|(_, &v)| v >= model.order()) {
            return Err(ModelError::ElementOutOfRange(v));
        }
        let full = model.with_adjoined_identity();
        let oriented = match sidedness {
            Sidedness::Left => full,
            _ => full.opposite(),
        };
        Ok(Evaluator {
            sidedness,
            model: model.clone(),
            oriented,
            chi,
        })
    }

    pub fn sidedness(&self) -> Sidedness {
        self.sidedness
    }

    pub fn model(&self) -> &FiniteUnaryAlgebra {
        &self.model
    }

    pub fn assignment(&self) -> &Assignment {
        &self.chi
    }

    /// The identity used for empty products; `model().order()` when the model
    /// is a semigroup and the identity had to be adjoined.
    pub fn one(&self) -> Element {
        self.oriented.identity().expect("identity adjoined")
    }

    /// Multiplication in the model (not the oriented copy).
    pub fn mul(&self, x: Element, y: Element) -> Element {
        match self.sidedness {
            Sidedness::Left => self.oriented.mul(x, y),
            _ => self.oriented.mul(y, x),
        }
    }

    /// `plus` for left models, `star` for right models.
    pub fn unary(&self, x: Element) -> Element {
        self.oriented.plus(x).expect("checked at construction")
    }

    pub fn generator(&self, letter: &crate::tree::Letter) -> Result<Element, ModelError> {
        self.chi.get(letter)
    }

    fn oriented_tree(&self, x: &SigmaTree) -> Result<SigmaTree, ModelError> {
        if !self.sidedness.admits(x) {
            return Err(ModelError::Mode(format!(
                "tree is not {} adequate",
                self.sidedness
            )));
        }
        Ok(match self.sidedness {
            Sidedness::Left => x.clone(),
            _ => x.mirror(),
        })
    }

    /// `τ` of an idempotent tree.
    pub fn tau(&self, x: &SigmaTree) -> Result<Element, ModelError> {
        if !x.is_idempotent() {
            return Err(ModelError::Mode("τ needs an idempotent tree".into()));
        }
        let t = self.oriented_tree(x)?;
        self.tau_at(&t, t.start(), &[])
    }

    /// `ρ`: the alternating product of trunk letters and branch clusters.
    pub fn rho(&self, x: &SigmaTree) -> Result<Element, ModelError> {
        let t = self.oriented_tree(x)?;
        let trunk = t.trunk();
        let m = &self.oriented;
        let mut acc = self.tau_at(&t, t.start(), &trunk)?;
        for &e in &trunk {
            let edge = t.edge(e);
            acc = m.mul(acc, self.chi.get(&edge.label)?);
            acc = m.mul(acc, self.tau_at(&t, edge.target, &trunk)?);
        }
        Ok(acc)
    }

    /// `ρ̂`: `ρ` restricted to pruned trees, the morphism extending `χ`.
    pub fn rho_hat(&self, x: &SigmaTree) -> Result<Element, Error> {
        if !is_pruned(x) {
            return Err(crate::error::OpError::NotPruned.into());
        }
        Ok(self.rho(x)?)
    }

    /// Product over the edges leaving `v` (other than `blocked`) of
    /// `[χ(label) τ(cluster beyond the edge)]⁺`, in the oriented model.
    fn tau_at(
        &self,
        t: &SigmaTree,
        v: VertexId,
        blocked: &[EdgeId],
    ) -> Result<Element, ModelError> {
        let m = &self.oriented;
        let mut acc = self.one();
        for &e in t.incident(v) {
            if blocked.contains(&e) {
                continue;
            }
            let edge = t.edge(e);
            debug_assert_eq!(edge.source, v, "oriented trees point away from the start");
            let inner = self.tau_at(t, edge.target, &[e])?;
            let factor = m.mul(self.chi.get(&edge.label)?, inner);
            acc = m.mul(acc, self.unary(factor));
        }
        Ok(acc)
    }
}
