//! Command dispatch. Every command yields a machine block (sorted-key JSON)
//! and a short human summary.

use serde::Serialize;
use serde_json::{json, Value};

use hopfva_core::action::{
    action_annihilator, check_thm_group_algebra, check_thm_kernel_bialgebra_ideal, fixed_subspace,
    inner_faithful_quotient, maximal_hopf_ideal_in, tensor_power_faithfulness, verify_module_vertex_algebra,
    ActionError, HopfAction, Verdict, DEFAULT_TENSOR_BUDGET,
};
use hopfva_core::hopf::{group_likes, is_cocommutative, recognize_group_algebra, FinHopfAlgebra};
use hopfva_core::linalg::Subspace;
use hopfva_core::scalar::lcm_conductor;
use hopfva_core::schurweyl::{
    check_commutant, cyclic_reachability, decompose, distinguish_isotypes, fixed_samples, multiplicity_space,
    verify_character_table, verify_projectors, CharacterTable, DistinguishedBy, FinGroupRep, SwError,
    DEFAULT_MODE_BUDGET,
};
use hopfva_core::vertexalg::{
    default_order, format_tensor, pi2_kernel, pin_injectivity_check, z2_kernel, CommDiffVA, MonomialBasis,
};

use crate::polyparse::parse_poly;
use crate::workspace::Workspace;

pub const COMMANDS: [&str; 20] = [
    "verify-hopf",
    "cocommutative",
    "group-likes",
    "recognize-group-algebra",
    "verify-action",
    "pi2-kernel",
    "pin-check",
    "z2-kernel",
    "fixed-points",
    "annihilator",
    "inner-faithful",
    "quotient",
    "tensor-faithful",
    "thm-5-1",
    "thm-5-4",
    "decompose",
    "multiplicity",
    "commutant",
    "reach",
    "distinguish",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Refused,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Refused => 2,
            Status::Fail => 3,
            Status::Error => 4,
        }
    }

    fn of(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub object: Option<String>,
    pub table: Option<String>,
    pub character: Option<String>,
    pub against: Option<String>,
    pub seed: Option<String>,
    pub cap_d: Option<u32>,
    pub order_k: Option<usize>,
    pub conductor: Option<u32>,
    pub n: Option<usize>,
    pub bound: Option<u32>,
    pub s_max: Option<usize>,
    pub budget: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub status: Status,
    pub machine: Value,
    pub human: String,
}

impl Report {
    pub fn machine_text(&self) -> String {
        serde_json::to_string_pretty(&self.machine).expect("values serialize")
    }
}

struct Outcome {
    status: Status,
    result: Value,
    human: String,
}

fn outcome(status: Status, result: Value, human: impl Into<String>) -> Result<Outcome, String> {
    Ok(Outcome { status, result, human: human.into() })
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

pub fn run(ws: &Workspace, command: &str, opts: &Options) -> Report {
    let ctx = Ctx { ws, opts };
    let result = match command {
        "verify-hopf" => ctx.verify_hopf(),
        "cocommutative" => ctx.cocommutative(),
        "group-likes" => ctx.group_likes(),
        "recognize-group-algebra" => ctx.recognize(),
        "verify-action" => ctx.verify_action(),
        "pi2-kernel" => ctx.pi2(),
        "pin-check" => ctx.pin(),
        "z2-kernel" => ctx.z2(),
        "fixed-points" => ctx.fixed_points(),
        "annihilator" => ctx.annihilator(),
        "inner-faithful" => ctx.inner_faithful(),
        "quotient" => ctx.quotient(),
        "tensor-faithful" => ctx.tensor_faithful(),
        "thm-5-1" => ctx.thm_group_algebra(),
        "thm-5-4" => ctx.thm_kernel(),
        "decompose" => ctx.decompose(),
        "multiplicity" => ctx.multiplicity(),
        "commutant" => ctx.commutant(),
        "reach" => ctx.reach(),
        "distinguish" => ctx.distinguish(),
        other => Err(format!("unknown command {other:?}; expected one of {}", COMMANDS.join(", "))),
    };
    let (status, result, human) = match result {
        Ok(o) => (o.status, o.result, o.human),
        Err(e) => (Status::Error, json!({ "error": e }), format!("error: {e}")),
    };
    let machine = json!({
        "command": command,
        "object": opts.object,
        "status": status,
        "result": result,
    });
    Report { status, machine, human: format!("{command}: {}\n{human}", status_word(status)) }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Refused => "REFUSED",
        Status::Fail => "FAIL",
        Status::Error => "ERROR",
    }
}

fn subspace_json(s: &Subspace, fmt: impl Fn(&[hopfva_core::scalar::Scalar]) -> String) -> Value {
    json!({ "dim": s.dim(), "basis": s.basis().iter().map(|v| fmt(v)).collect::<Vec<_>>() })
}

fn poly_subspace(a: &CommDiffVA, basis: &MonomialBasis, s: &Subspace) -> Value {
    subspace_json(s, |v| a.format(&basis.poly(v)))
}

fn hopf_subspace(h: &FinHopfAlgebra, s: &Subspace) -> Value {
    subspace_json(s, |v| h.format_element(v))
}

fn list(s: &Subspace, fmt: impl Fn(&[hopfva_core::scalar::Scalar]) -> String) -> String {
    let items: Vec<String> = s.basis().iter().map(|v| fmt(v)).collect();
    format!("[{}]", items.join(", "))
}

struct Ctx<'a> {
    ws: &'a Workspace,
    opts: &'a Options,
}

impl Ctx<'_> {
    fn object(&self) -> Result<&str, String> {
        self.opts.object.as_deref().ok_or_else(|| "--object is required".to_string())
    }

    fn hopf(&self) -> Result<&FinHopfAlgebra, String> {
        let name = self.object()?;
        self.ws.hopf_algebras.get(name).ok_or_else(|| format!("no Hopf algebra named {name:?}"))
    }

    fn backend(&self) -> Result<CommDiffVA, String> {
        let name = self.object()?;
        let b = self.ws.backends.get(name).ok_or_else(|| format!("no backend named {name:?}"))?;
        Ok(self.opts.cap_d.map_or_else(|| b.clone(), |c| b.with_cap(c)))
    }

    fn action(&self) -> Result<HopfAction, String> {
        let name = self.object()?;
        let def = self.ws.actions.get(name).ok_or_else(|| format!("no action named {name:?}"))?;
        self.ws.instantiate(def, self.opts.cap_d)
    }

    fn conductor(&self, base: u32) -> u32 {
        lcm_conductor(base, self.opts.conductor.unwrap_or(self.ws.conductor))
    }

    fn verify_hopf(&self) -> Result<Outcome, String> {
        let h = self.hopf()?;
        let r = h.verify_axioms();
        let checks: Vec<Value> = r
            .checks
            .iter()
            .map(|c| json!({ "axiom": format!("{:?}", c.axiom), "passed": c.passed, "witness": c.witness }))
            .collect();
        let failures: Vec<String> =
            r.failures().map(|c| format!("{:?} fails at {}", c.axiom, c.witness.as_deref().unwrap_or("?"))).collect();
        let human = if failures.is_empty() { "all Hopf axioms hold".to_string() } else { failures.join("\n") };
        outcome(Status::of(r.passed()), json!({ "checks": checks, "verified_at_load": h.is_verified() }), human)
    }

    fn cocommutative(&self) -> Result<Outcome, String> {
        let c = is_cocommutative(self.hopf()?);
        let human = match &c.witness {
            Some(w) => format!("not cocommutative; Δ({w}) differs from its flip"),
            None => "cocommutative".into(),
        };
        outcome(Status::of(c.cocommutative), json!({ "verdict": c.cocommutative, "witness": c.witness }), human)
    }

    fn group_likes(&self) -> Result<Outcome, String> {
        let h = self.hopf()?;
        let n = self.conductor(h.conductor());
        match group_likes(h, n) {
            Ok(gs) => {
                let shown: Vec<String> = gs.iter().map(|g| h.format_element(g)).collect();
                let human = format!("{} group-like elements: {}", gs.len(), shown.join(", "));
                outcome(Status::Pass, json!({ "conductor": n, "count": gs.len(), "elements": shown }), human)
            }
            Err(e) => outcome(Status::Fail, json!({ "conductor": n, "reason": e.to_string() }), e.to_string()),
        }
    }

    fn recognize(&self) -> Result<Outcome, String> {
        let h = self.hopf()?;
        let n = self.conductor(h.conductor());
        match recognize_group_algebra(h, n) {
            Ok(g) => {
                let names = g.table.names();
                let table: Vec<Vec<&str>> = g
                    .table
                    .table()
                    .iter()
                    .map(|row| row.iter().map(|&k| names[k].as_str()).collect())
                    .collect();
                let elements: Vec<String> = g.elements.iter().map(|e| h.format_element(e)).collect();
                let human = format!("group algebra of a group of order {}", names.len());
                outcome(
                    Status::Pass,
                    json!({ "conductor": n, "order": names.len(), "elements": elements, "table": table, "abelian": g.table.is_abelian() }),
                    human,
                )
            }
            Err(e) => outcome(Status::Fail, json!({ "conductor": n, "reason": e.to_string() }), e.to_string()),
        }
    }

    fn verify_action(&self) -> Result<Outcome, String> {
        let act = self.action()?;
        let order = self.opts.order_k.unwrap_or(2 * act.basis().cap() as usize + 2);
        let r = verify_module_vertex_algebra(&act, order);
        let mut lines = vec![
            format!("module algebra: {}", r.module_algebra.passed()),
            format!("D-commutation: {}", r.d_commutation.commutes),
            format!("vertex identity: {}", r.vertex_identity.passed),
        ];
        lines.extend(r.d_commutation.witnesses.iter().map(|(h, u)| format!("  [{h}, D] ≠ 0 on {u}")));
        let mut v = to_value(&r);
        v["order"] = json!(order);
        outcome(Status::of(r.passed()), v, lines.join("\n"))
    }

    fn pi2(&self) -> Result<Outcome, String> {
        let a = self.backend()?;
        let cap = a.cap();
        let ch = pi2_kernel(&a, cap, self.opts.order_k);
        let basis = a.monomial_basis(cap);
        let kernel = subspace_json(&ch.kernel, |v| format_tensor(&a, &basis, v, 2));
        let status = if ch.kernel.is_zero() {
            Status::Pass
        } else if ch.stabilized {
            Status::Fail
        } else {
            Status::Refused
        };
        let human = format!(
            "kernel dimension {} (D = {cap}, K = {}, stabilized = {})\n{}",
            ch.kernel.dim(),
            ch.order,
            ch.stabilized,
            list(&ch.kernel, |v| format_tensor(&a, &basis, v, 2))
        );
        outcome(
            status,
            json!({ "cap": cap, "order": ch.order, "chain": ch.chain, "stabilized": ch.stabilized, "kernel": kernel }),
            human,
        )
    }

    fn pin(&self) -> Result<Outcome, String> {
        let a = self.backend()?;
        let cap = a.cap();
        let n = self.opts.n.unwrap_or(3);
        let order = self.opts.order_k.unwrap_or_else(|| default_order(&a, cap));
        let r = pin_injectivity_check(&a, n, cap, order).map_err(|e| e.to_string())?;
        let human = match &r.witness {
            Some(w) => format!("pi_{n} not injective; witness {w}"),
            None => format!("pi_{n} injective at D = {cap}, K = {order}"),
        };
        outcome(
            Status::of(r.injective),
            json!({ "n": n, "cap": cap, "order": order, "injective": r.injective, "kernel_dim": r.kernel.dim(), "witness": r.witness }),
            human,
        )
    }

    fn z2(&self) -> Result<Outcome, String> {
        let a = self.backend()?;
        let cap = a.cap();
        let bound = self.opts.bound.unwrap_or(2);
        let order = self.opts.order_k.unwrap_or_else(|| default_order(&a, cap));
        let k = z2_kernel(&a, cap, order, bound);
        let basis = a.monomial_basis(cap);
        let dim = basis.len();
        let side = 2 * bound as usize + 1;
        let fmt = |v: &[hopfva_core::scalar::Scalar]| {
            let names = a.names();
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(idx, c)| {
                    let f = idx % (side * side);
                    let ij = idx / (side * side);
                    let p = (f / side) as i64 - bound as i64;
                    let q = (f % side) as i64 - bound as i64;
                    format!(
                        "({c})*{}⊗{}⊗z1^{p}z2^{q}",
                        basis.monomial(ij / dim).format(names),
                        basis.monomial(ij % dim).format(names)
                    )
                })
                .collect();
            terms.join(" + ")
        };
        let human = format!("Z2 kernel dimension {} (D = {cap}, K = {order}, B = {bound})", k.dim());
        outcome(
            Status::of(k.is_zero()),
            json!({ "cap": cap, "order": order, "bound": bound, "kernel": subspace_json(&k, fmt) }),
            human,
        )
    }

    fn fixed_points(&self) -> Result<Outcome, String> {
        let act = self.action()?;
        let f = fixed_subspace(&act);
        let c = &f.closure;
        let ok = c.contains_one.passed && c.derivation_stable.passed && c.products_closed.passed;
        let human = format!(
            "V^H has dimension {} within the cap: {}",
            f.subspace.dim(),
            list(&f.subspace, |v| act.backend().format(&act.basis().poly(v)))
        );
        outcome(
            Status::of(ok),
            json!({ "cap": act.basis().cap(), "fixed": poly_subspace(act.backend(), act.basis(), &f.subspace), "closure": to_value(c) }),
            human,
        )
    }

    fn annihilator(&self) -> Result<Outcome, String> {
        let act = self.action()?;
        match action_annihilator(&act) {
            Ok(k) => {
                let human = format!("annihilator dimension {}: {}", k.kernel.dim(), list(&k.kernel, |v| act.hopf().format_element(v)));
                outcome(
                    Status::Pass,
                    json!({ "cap": act.basis().cap(), "annihilator": hopf_subspace(act.hopf(), &k.kernel), "agrees_with_lower_cap": k.agrees_with_lower_cap }),
                    human,
                )
            }
            Err(e @ ActionError::FiltrationFlagRequired) => outcome(Status::Refused, json!({ "reason": e.to_string() }), e.to_string()),
            Err(e) => Err(e.to_string()),
        }
    }

    fn inner_faithful(&self) -> Result<Outcome, String> {
        let act = self.action()?;
        let k = match action_annihilator(&act) {
            Ok(k) => k.kernel,
            Err(e @ ActionError::FiltrationFlagRequired) => {
                return outcome(Status::Refused, json!({ "reason": e.to_string() }), e.to_string())
            }
            Err(e) => return Err(e.to_string()),
        };
        let ideal = maximal_hopf_ideal_in(act.hopf(), &k).map_err(|e| e.to_string())?;
        let faithful = ideal.is_zero();
        let human = format!(
            "inner faithful: {faithful} (annihilator dimension {}, largest Hopf ideal inside has dimension {})",
            k.dim(),
            ideal.dim()
        );
        outcome(
            Status::of(faithful),
            json!({ "inner_faithful": faithful, "annihilator": hopf_subspace(act.hopf(), &k), "maximal_hopf_ideal": hopf_subspace(act.hopf(), &ideal) }),
            human,
        )
    }

    fn quotient(&self) -> Result<Outcome, String> {
        let act = self.action()?;
        let q = inner_faithful_quotient(&act).map_err(|e| e.to_string())?;
        let reps: Vec<&str> = q.quotient.representatives.iter().map(|&r| act.hopf().names()[r].as_str()).collect();
        let n = self.conductor(q.quotient.algebra.conductor());
        let recognized = recognize_group_algebra(&q.quotient.algebra, n).ok().map(|g| g.table.order());
        let human = format!(
            "quotient of dimension {} on representatives {}; fixed points preserved: {}",
            q.quotient.algebra.dim(),
            reps.join(", "),
            q.fixed_points_preserved()
        );
        outcome(
            Status::of(q.fixed_points_preserved()),
            json!({
                "ideal": hopf_subspace(act.hopf(), &q.ideal),
                "quotient_dim": q.quotient.algebra.dim(),
                "representatives": reps,
                "recognized_group_order": recognized,
                "fixed_before": poly_subspace(act.backend(), act.basis(), &q.fixed_before),
                "fixed_after": poly_subspace(act.backend(), act.basis(), &q.fixed_after),
                "fixed_points_preserved": q.fixed_points_preserved(),
            }),
            human,
        )
    }

    fn tensor_faithful(&self) -> Result<Outcome, String> {
        let act = self.action()?;
        let s_max = self.opts.s_max.unwrap_or(3);
        let budget = self.opts.budget.unwrap_or(DEFAULT_TENSOR_BUDGET);
        match tensor_power_faithfulness(&act, s_max, budget) {
            Ok(t) => {
                let human = format!("annihilator dimensions for s = 1..={s_max}: {:?}; s0 = {:?}", t.table, t.s0);
                outcome(Status::of(t.s0.is_some()), to_value(&t), human)
            }
            Err(e @ ActionError::BudgetExceeded { .. }) => outcome(Status::Refused, json!({ "reason": e.to_string() }), e.to_string()),
            Err(e) => Err(e.to_string()),
        }
    }

    fn theorem(&self, r: hopfva_core::action::TheoremReport) -> Result<Outcome, String> {
        let status = match &r.verdict {
            Verdict::Pass => Status::Pass,
            Verdict::Fail { .. } => Status::Fail,
            Verdict::Refused { .. } => Status::Refused,
        };
        let human = format!("{:?}\n{}", r.verdict, r.details.join("\n"));
        outcome(status, to_value(&r), human)
    }

    fn thm_group_algebra(&self) -> Result<Outcome, String> {
        let act = self.action()?;
        let n = self.conductor(act.conductor());
        let r = check_thm_group_algebra(&act, self.opts.order_k, n).map_err(|e| e.to_string())?;
        self.theorem(r)
    }

    fn thm_kernel(&self) -> Result<Outcome, String> {
        let act = self.action()?;
        let r = check_thm_kernel_bialgebra_ideal(&act, self.opts.order_k).map_err(|e| e.to_string())?;
        self.theorem(r)
    }

    fn rep(&self) -> Result<(FinGroupRep, Option<&CharacterTable>), String> {
        let act = self.action()?;
        let group_name = self
            .ws
            .hopf_groups
            .get(&self.ws.actions[self.object()?].hopf)
            .ok_or_else(|| "the action's Hopf algebra is not declared as a group algebra".to_string())?;
        let group = self.ws.groups[group_name].clone();
        let table = match &self.opts.table {
            Some(t) => {
                let def = self.ws.character_tables.get(t).ok_or_else(|| format!("no character table named {t:?}"))?;
                if def.group != *group_name {
                    return Err(format!("table {t:?} is for group {:?}, the action uses {group_name:?}", def.group));
                }
                Some(&def.table)
            }
            None => None,
        };
        let n = self.conductor(act.conductor());
        let rep = FinGroupRep::from_action(group, act).map_err(|e| e.to_string())?.with_conductor(n);
        Ok((rep, table))
    }

    fn rep_and_table(&self) -> Result<(FinGroupRep, &CharacterTable), String> {
        let (rep, t) = self.rep()?;
        Ok((rep, t.ok_or_else(|| "--table is required".to_string())?))
    }

    fn character(&self, t: &CharacterTable, name: Option<&String>, flag: &str) -> Result<usize, String> {
        let name = name.ok_or_else(|| format!("{flag} is required"))?;
        t.index_of(name).map_err(|e| e.to_string())
    }

    fn decompose(&self) -> Result<Outcome, String> {
        let (rep, t) = self.rep_and_table()?;
        let table_report = verify_character_table(t, rep.group(), Some(&rep));
        let d = decompose(t, &rep).map_err(|e: SwError| e.to_string())?;
        let p = verify_projectors(t, &rep).map_err(|e| e.to_string())?;
        let act = rep.action();
        let isotypes: Vec<Value> = d
            .isotypes
            .iter()
            .map(|i| {
                json!({
                    "name": i.name,
                    "degree": i.degree,
                    "multiplicities": i.multiplicities,
                    "dims": i.dims,
                    "component": poly_subspace(act.backend(), act.basis(), &i.component),
                })
            })
            .collect();
        let ok = table_report.passed() && p.passed() && d.bookkeeping_holds();
        let human = d
            .isotypes
            .iter()
            .map(|i| format!("{}: multiplicities {:?}, dimension {}", i.name, i.multiplicities, i.component.dim()))
            .collect::<Vec<_>>()
            .join("\n");
        outcome(
            Status::of(ok),
            json!({
                "degree_dims": d.degree_dims,
                "isotypes": isotypes,
                "bookkeeping": d.bookkeeping_holds(),
                "projectors": to_value(&p),
                "table": to_value(&table_report),
            }),
            human,
        )
    }

    fn multiplicity(&self) -> Result<Outcome, String> {
        let (rep, t) = self.rep_and_table()?;
        let l = self.character(t, self.opts.character.as_ref(), "--character")?;
        let m = multiplicity_space(t, &rep, l).map_err(|e| e.to_string())?;
        let act = rep.action();
        let human = format!(
            "Hom_G(W, A_n) dimensions {:?}; images of the first basis vector {}",
            m.dims(),
            list(&m.highest_vectors, |v| act.backend().format(&act.basis().poly(v)))
        );
        outcome(
            Status::of(m.matches_characters),
            json!({
                "character": t.names()[l],
                "dims": m.dims(),
                "highest_vectors": poly_subspace(act.backend(), act.basis(), &m.highest_vectors),
                "matches_characters": m.matches_characters,
            }),
            human,
        )
    }

    fn samples(&self, rep: &FinGroupRep) -> Result<Vec<hopfva_core::vertexalg::Poly>, String> {
        match &self.opts.seed {
            Some(s) => Ok(vec![parse_poly(s, rep.action().backend().names())?]),
            None => Ok(fixed_samples(rep)),
        }
    }

    fn commutant(&self) -> Result<Outcome, String> {
        let (rep, _) = self.rep()?;
        let order = self.opts.order_k.unwrap_or(rep.action().basis().cap() as usize);
        let samples = self.samples(&rep)?;
        let r = check_commutant(&rep, &samples, order);
        let human = if r.passed {
            format!("{} multiplier checks commute with the group", r.checked)
        } else {
            r.failures.join("\n")
        };
        outcome(Status::of(r.passed), to_value(&r), human)
    }

    fn reach(&self) -> Result<Outcome, String> {
        let (rep, t) = self.rep_and_table()?;
        let l = self.character(t, self.opts.character.as_ref(), "--character")?;
        let act = rep.action();
        let seed_text = self.opts.seed.as_deref().ok_or("--seed is required")?;
        let seed = parse_poly(seed_text, act.backend().names())?;
        let coords = act.basis().coordinates(&seed).ok_or("seed leaves the cap")?;
        let order = self.opts.order_k.unwrap_or(2);
        let budget = self.opts.budget.unwrap_or(DEFAULT_MODE_BUDGET);
        let r = match cyclic_reachability(t, &rep, l, &coords, order, budget) {
            Ok(r) => r,
            Err(e @ SwError::BudgetExceeded { .. }) => {
                return outcome(Status::Refused, json!({ "reason": e.to_string() }), e.to_string())
            }
            Err(e) => return Err(e.to_string()),
        };
        let human = format!(
            "reachable dimension {}; equals the isotype: {}",
            r.reachable.dim(),
            r.equals_isotype
        );
        outcome(
            Status::of(r.within_isotype && r.equals_isotype),
            json!({
                "character": t.names()[l],
                "seed": act.backend().format(&seed),
                "reachable": poly_subspace(act.backend(), act.basis(), &r.reachable),
                "within_isotype": r.within_isotype,
                "equals_isotype": r.equals_isotype,
                "applications": r.applications,
            }),
            human,
        )
    }

    fn distinguish(&self) -> Result<Outcome, String> {
        let (rep, t) = self.rep_and_table()?;
        let l = self.character(t, self.opts.character.as_ref(), "--character")?;
        let m = self.character(t, self.opts.against.as_ref(), "--against")?;
        let d = decompose(t, &rep).map_err(|e| e.to_string())?;
        let order = self.opts.order_k.unwrap_or(1);
        let r = distinguish_isotypes(t, &rep, &d, l, m, order).map_err(|e| e.to_string())?;
        let human = format!("{} vs {}: {:?}", t.names()[l], t.names()[m], r.verdict);
        outcome(Status::of(r.verdict != DistinguishedBy::Inconclusive), to_value(&r), human)
    }
}
