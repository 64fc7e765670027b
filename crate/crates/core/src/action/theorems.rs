//! Hypothesis-gated checkers for the structural results about annihilators and
//! inner-faithful actions. A checker refuses rather than guesses when a
//! hypothesis cannot be established within the caps.

use serde::Serialize;

use super::{action_annihilator, is_inner_faithful, verify_module_vertex_algebra, ActionError, HopfAction};
use crate::hopf::{is_bialgebra_ideal, is_hopf_ideal, recognize_group_algebra};
use crate::linalg::Matrix;
use crate::report::Check;
use crate::scalar::Scalar;
use crate::vertexalg::pi2_kernel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "hypothesis", rename_all = "snake_case")]
pub enum Hypothesis {
    Pi2NotInjective { kernel_dim: usize },
    Pi2NotStabilized { chain: Vec<usize> },
    NotModuleVertexAlgebra { failures: Vec<String> },
    FiltrationFlagMissing,
    NotInnerFaithful { ideal_dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { reason: String },
    Refused { unmet: Vec<Hypothesis> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub verdict: Verdict,
    pub details: Vec<String>,
}

fn common_hypotheses(act: &HopfAction, order: Option<usize>, details: &mut Vec<String>) -> Vec<Hypothesis> {
    let a = act.backend();
    let cap = act.basis().cap();
    let chain = pi2_kernel(a, cap, order);
    details.push(format!("pi2 kernel dimension {} at D = {cap}, K = {}", chain.kernel.dim(), chain.order));
    let mut unmet = Vec::new();
    if !chain.kernel.is_zero() {
        unmet.push(Hypothesis::Pi2NotInjective { kernel_dim: chain.kernel.dim() });
    }
    if !chain.stabilized {
        unmet.push(Hypothesis::Pi2NotStabilized { chain: chain.chain.clone() });
    }
    let mva = verify_module_vertex_algebra(act, chain.order.min(2 * cap as usize + 2));
    if !mva.passed() {
        let mut failures = Vec::new();
        let m = &mva.module_algebra;
        failures.extend(m.unit.witness.iter().map(|w| format!("unit: {w}")));
        failures.extend(m.product.witness.iter().map(|w| format!("product: {w}")));
        failures.extend(mva.d_commutation.witnesses.iter().map(|(h, u)| format!("d-commutation: ({h}, {u})")));
        failures.extend(mva.vertex_identity.witness.iter().map(|w| format!("vertex identity: {w}")));
        unmet.push(Hypothesis::NotModuleVertexAlgebra { failures });
    }
    if !act.is_filtration_compatible() {
        unmet.push(Hypothesis::FiltrationFlagMissing);
    }
    unmet
}

/// The annihilator of an action on a vertex algebra with injective `π₂` is a bialgebra ideal.
pub fn check_thm_kernel_bialgebra_ideal(act: &HopfAction, order: Option<usize>) -> Result<TheoremReport, ActionError> {
    let mut details = Vec::new();
    let unmet = common_hypotheses(act, order, &mut details);
    if !unmet.is_empty() {
        return Ok(TheoremReport { verdict: Verdict::Refused { unmet }, details });
    }
    let h = act.hopf();
    let k = action_annihilator(act)?.kernel;
    details.push(format!("annihilator dimension {}", k.dim()));
    let bi = is_bialgebra_ideal(h, &k);
    let hopf = is_hopf_ideal(h, &k);
    details.push(format!("hopf ideal: {}", hopf.is_hopf_ideal()));
    let verdict = if bi.is_bialgebra_ideal() {
        Verdict::Pass
    } else {
        let reason = [bi.left_ideal, bi.right_ideal, bi.counit_vanishes, bi.coideal]
            .into_iter()
            .flatten()
            .next()
            .unwrap_or_default();
        Verdict::Fail { reason }
    };
    Ok(TheoremReport { verdict, details })
}

/// An inner-faithful action on a vertex algebra with injective `π₂` forces a group algebra.
pub fn check_thm_group_algebra(
    act: &HopfAction,
    order: Option<usize>,
    conductor: u32,
) -> Result<TheoremReport, ActionError> {
    let mut details = Vec::new();
    let mut unmet = common_hypotheses(act, order, &mut details);
    if act.is_filtration_compatible() && !is_inner_faithful(act)? {
        let k = action_annihilator(act)?.kernel;
        let ideal = super::maximal_hopf_ideal_in(act.hopf(), &k)?;
        unmet.push(Hypothesis::NotInnerFaithful { ideal_dim: ideal.dim() });
    }
    if !unmet.is_empty() {
        return Ok(TheoremReport { verdict: Verdict::Refused { unmet }, details });
    }
    let verdict = match recognize_group_algebra(act.hopf(), conductor) {
        Ok(g) => {
            details.push(format!("group of order {}", g.table.order()));
            Verdict::Pass
        }
        Err(e) => Verdict::Fail { reason: e.to_string() },
    };
    Ok(TheoremReport { verdict, details })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipCheck {
    /// `(ρ⊗ρ)(Δh) = (ρ⊗ρ)(Δᵒᵖh)` for every basis element.
    pub operators_agree: Check,
    pub tensor_square_faithful: bool,
    pub cocommutative_concluded: bool,
}

/// Compares `Δ` with its flip through the action on `V ⊗ V`; if `ρ⊗ρ` is
/// injective on `H ⊗ H` agreement forces cocommutativity.
pub fn coproduct_flip_check(act: &HopfAction) -> FlipCheck {
    let h = act.hopf();
    let d = h.dim();
    let n = act.basis().len();
    let ms = act.matrices();
    let mut witness = None;
    for i in 0..d {
        let delta = h.coproduct(&h.basis(i));
        let mut plain = Matrix::zeros(n * n, n * n);
        let mut flipped = Matrix::zeros(n * n, n * n);
        for (t, c) in delta.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            plain.add_scaled(c, &ms[t / d].kronecker(&ms[t % d]));
            flipped.add_scaled(c, &ms[t % d].kronecker(&ms[t / d]));
        }
        if plain != flipped {
            witness = Some(h.names()[i].clone());
            break;
        }
    }
    // ρ⊗ρ is injective on H⊗H exactly when ρ is injective on H
    let cols: Vec<Vec<Scalar>> = ms.iter().map(|m| (0..n).flat_map(|c| m.column(c)).collect()).collect();
    let tensor_square_faithful = Matrix::from_columns(&cols, n * n).rank() == d;
    let operators_agree = Check::from_witness(witness);
    let cocommutative_concluded = operators_agree.passed && tensor_square_faithful;
    FlipCheck { operators_agree, tensor_square_faithful, cocommutative_concluded }
}
