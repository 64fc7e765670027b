//! Acceptance suite. Each criterion prints one `criterion N: PASS|FAIL` line;
//! the process exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};

use itertools::Itertools;

use hopfva_cli::Workspace;
use hopfva_core::action::corpus;
use hopfva_core::action::{
    action_annihilator, check_thm_group_algebra, check_thm_kernel_bialgebra_ideal, inner_faithful_quotient, is_inner_faithful, tensor_power_faithfulness,
    verify_module_algebra, verify_module_vertex_algebra, HopfAction, Verdict, DEFAULT_TENSOR_BUDGET,
};
use hopfva_core::hopf::{
    group_algebra, is_cocommutative, is_hopf_ideal, recognize_group_algebra, sweedler, verify_hopf_axioms,
    GroupTable, HopfError,
};
use hopfva_core::linalg::unit_vector;
use hopfva_core::scalar::Scalar;
use hopfva_core::schurweyl::{
    check_commutant, cyclic_reachability, decompose, distinguish_isotypes, verify_projectors, CharacterTable,
    DistinguishedBy, FinGroupRep, DEFAULT_MODE_BUDGET,
};
use hopfva_core::vertexalg::{
    embed_in_z2_domain, pi2_kernel, tensor_coordinates, vandermonde_monomial_decision, z2_kernel, CommDiffVA,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn five_groups() -> Vec<(&'static str, GroupTable, u32)> {
    vec![
        ("Z2", GroupTable::cyclic(2), 1),
        ("Z3", GroupTable::cyclic(3), 3),
        ("Z4", GroupTable::cyclic(4), 4),
        ("Z2xZ2", GroupTable::klein(), 1),
        ("S3", GroupTable::symmetric3(), 1),
    ]
}

/// Module-vertex-algebra actions of the corpus, all at cap 4.
fn mva_corpus() -> Vec<(&'static str, HopfAction)> {
    let euler = || CommDiffVA::x_power_derivation(1, 4);
    vec![
        ("Z2 on x d/dx", corpus::cyclic_on_euler(2, 4)),
        ("Z3 on x d/dx", corpus::cyclic_on_euler(3, 4)),
        ("Z4 on x d/dx", corpus::cyclic_on_euler(4, 4)),
        ("Z2xZ2 through first factor", corpus::klein_first_factor(4)),
        ("trivial Z1", corpus::trivial(group_algebra(&GroupTable::cyclic(1)), euler())),
        ("trivial Z2", corpus::trivial(group_algebra(&GroupTable::cyclic(2)), euler())),
        ("trivial Sweedler", corpus::trivial(sweedler(), euler())),
    ]
}

fn hopf_axioms() -> Outcome {
    for (name, g, _) in five_groups() {
        let r = verify_hopf_axioms(&group_algebra(&g));
        ensure!(r.passed(), "group algebra of {name}: {:?}", r.failures().collect::<Vec<_>>());
    }
    ensure!(verify_hopf_axioms(&sweedler()).passed(), "sweedler() fails its axioms");
    let ws = Workspace::load(&[fixture("sweedler_mutated.json")]).map_err(|e| e.to_string())?;
    let bad = verify_hopf_axioms(&ws.hopf_algebras["sweedler_bad_antipode"]);
    let witness = bad.failures().find_map(|c| c.witness.clone());
    ensure!(!bad.passed() && witness.is_some(), "mutated antipode was not caught");
    Ok(format!("5 group algebras and Sweedler verified; mutated antipode witness {}", witness.unwrap()))
}

fn recognition() -> Outcome {
    let c = is_cocommutative(&sweedler());
    ensure!(!c.cocommutative && c.witness.as_deref() == Some("x"), "sweedler cocommutativity: {c:?}");
    for (name, g, conductor) in five_groups() {
        let r = recognize_group_algebra(&group_algebra(&g), conductor).map_err(|e| format!("{name}: {e}"))?;
        ensure!(r.table.is_isomorphic(&g), "{name}: recovered table is not isomorphic");
    }
    match recognize_group_algebra(&sweedler(), 1) {
        Err(HopfError::NotGroupAlgebra(_)) => {}
        other => return Err(format!("sweedler recognized as {other:?}")),
    }
    Ok("5 group tables recovered; Sweedler rejected with witness x".into())
}

/// Coefficient of `x^{n + k(m−1)}` in `(x^m d/dx)^k x^n`, by direct iteration.
fn bracket_oracle(n: u32, k: u32, m: u32) -> i128 {
    let (mut c, mut e) = (1i128, n as i64);
    for _ in 0..k {
        c *= e as i128;
        e += m as i64 - 1;
    }
    c
}

fn det_oracle(m: &[Vec<i128>]) -> i128 {
    let s = m.len();
    if s == 0 {
        return 1;
    }
    (0..s)
        .map(|c| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect()).collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det_oracle(&minor)
        })
        .sum()
}

fn pi2_injectivity() -> Outcome {
    for m in 0..=3 {
        let r = pi2_kernel(&CommDiffVA::x_power_derivation(m, 6), 6, None);
        ensure!(r.kernel.is_zero() && r.stabilized, "m = {m}: kernel dim {}, stabilized {}", r.kernel.dim(), r.stabilized);
    }
    let mut families = 0;
    for m in 0..=3u32 {
        for s in 1..=4usize {
            for ns in (0..9u32).rev().combinations(s) {
                let total = ns[0];
                let pairs: Vec<(u32, u32)> = ns.iter().map(|&n| (n, total - n)).collect();
                let d = vandermonde_monomial_decision(m, &pairs).map_err(|e| e.to_string())?;
                let oracle: Vec<Vec<i128>> =
                    (0..s).map(|k| pairs.iter().map(|p| bracket_oracle(p.0, k as u32, m)).collect()).collect();
                let det = det_oracle(&oracle);
                ensure!(det != 0, "oracle determinant vanishes for m = {m}, {pairs:?}");
                ensure!(
                    d.independent && d.determinant == Scalar::from_int(det as i64),
                    "m = {m}, {pairs:?}: got {:?}, oracle {det}",
                    d
                );
                families += 1;
            }
        }
    }
    Ok(format!("pi2 kernel zero for m = 0..3 at D = 6; {families} Vandermonde families independent"))
}

fn diagonal_witness(a: &CommDiffVA) -> Vec<Scalar> {
    let basis = a.basis();
    let d = a.variable(0).sub(&a.variable(1));
    let l = tensor_coordinates(&basis, &[d.clone(), a.one()]).unwrap();
    let r = tensor_coordinates(&basis, &[a.one(), d]).unwrap();
    l.iter().zip(&r).map(|(x, y)| x - y).collect()
}

type Dense = BTreeMap<(u32, u32), Scalar>;

/// `∂x = ∂y = 1` on exponent maps.
fn diag_derive(p: &Dense) -> Dense {
    let mut out = Dense::new();
    for (&(a, b), c) in p {
        if a > 0 {
            let e = out.entry((a - 1, b)).or_insert_with(Scalar::zero);
            *e = &*e + &(c * &Scalar::from_int(a as i64));
        }
        if b > 0 {
            let e = out.entry((a, b - 1)).or_insert_with(Scalar::zero);
            *e = &*e + &(c * &Scalar::from_int(b as i64));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn gauss_rank(mut rows: Vec<Vec<Scalar>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().unwrap();
        let pivot: Vec<Scalar> = rows[rank].iter().map(|v| v * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Dense null-space dimension of `f ⊗ g ↦ ((∂ᵏf)g)_{k ≤ K}` on `ℚ[x,y]_{≤D}`.
fn brute_force_diagonal_pi2(cap: u32, order: usize) -> usize {
    let monos: Vec<(u32, u32)> = (0..=cap).flat_map(|d| (0..=d).rev().map(move |a| (a, d - a))).collect();
    let n = monos.len();
    let mut rows: BTreeMap<(usize, (u32, u32)), Vec<Scalar>> = BTreeMap::new();
    for (i, &mi) in monos.iter().enumerate() {
        let mut f: Dense = [(mi, Scalar::one())].into_iter().collect();
        for k in 0..=order {
            for (j, &(a, b)) in monos.iter().enumerate() {
                for (&(p, q), c) in &f {
                    let row = rows.entry((k, (p + a, q + b))).or_insert_with(|| vec![Scalar::zero(); n * n]);
                    row[i * n + j] = &row[i * n + j] + c;
                }
            }
            f = diag_derive(&f);
        }
    }
    n * n - gauss_rank(rows.into_values().collect(), n * n)
}

fn pi2_counterexample() -> Outcome {
    let mut dims = Vec::new();
    for cap in [1u32, 2] {
        let a = CommDiffVA::diagonal_xy(cap);
        let r = pi2_kernel(&a, cap, None);
        ensure!(r.kernel.contains(&diagonal_witness(&a)), "D = {cap}: witness missing");
        let oracle = brute_force_diagonal_pi2(cap, r.order);
        ensure!(r.kernel.dim() == oracle, "D = {cap}: kernel dim {} vs oracle {oracle}", r.kernel.dim());
        dims.push(oracle);
    }
    Ok(format!("witness in kernel; kernel dims {dims:?} match the dense oracle"))
}

fn nondegeneracy() -> Outcome {
    let a = CommDiffVA::diagonal_xy(1);
    let k = z2_kernel(&a, 1, 10, 2);
    ensure!(!k.is_zero(), "diagonal z2 kernel is zero");
    ensure!(k.contains(&embed_in_z2_domain(&diagonal_witness(&a), 3, 2)), "embedded witness missing");
    let e = CommDiffVA::x_power_derivation(1, 4);
    let k2 = z2_kernel(&e, 4, 20, 2);
    ensure!(k2.is_zero(), "x d/dx z2 kernel has dim {}", k2.dim());
    Ok(format!("diagonal z2 kernel dim {} contains the witness; x d/dx kernel zero", k.dim()))
}

fn def_discriminates() -> Outcome {
    let mut missing = Vec::new();
    for m in 0..=2 {
        let act = corpus::sweedler_on_z(m, 4);
        ensure!(verify_module_algebra(&act).passed(), "m = {m}: not a module algebra");
        ensure!(is_inner_faithful(&act).map_err(|e| e.to_string())?, "m = {m}: not inner faithful");
        let r = verify_module_vertex_algebra(&act, 10);
        ensure!(!r.passed(), "m = {m}: passed as a module vertex algebra");
        let w = &r.d_commutation.witnesses;
        if !w.iter().any(|(h, u)| h == "x" && u == "z^2") {
            missing.push(format!("m = {m} witnesses {w:?}"));
        }
    }
    ensure!(missing.is_empty(), "(x, z^2) is not a D-commutation witness for {}", missing.join("; "));
    Ok("module algebra and inner faithful, fails as module vertex algebra with witness (x, z^2) for m = 0, 1, 2".into())
}

fn bialgebra_ideal_corpus() -> Outcome {
    for (name, act) in mva_corpus() {
        let r = check_thm_kernel_bialgebra_ideal(&act, None).map_err(|e| format!("{name}: {e}"))?;
        ensure!(r.verdict == Verdict::Pass, "{name}: {:?}", r.verdict);
        let k = action_annihilator(&act).map_err(|e| e.to_string())?.kernel;
        ensure!(is_hopf_ideal(act.hopf(), &k).is_hopf_ideal(), "{name}: annihilator not a Hopf ideal");
    }
    Ok(format!("{} actions pass, annihilators are Hopf ideals", mva_corpus().len()))
}

fn group_algebra_pipeline() -> Outcome {
    let mut passes = 0;
    let mut refusals = 0;
    let extra = (0..=2).map(|m| ("Sweedler on z", corpus::sweedler_on_z(m, 4)));
    for (name, act) in mva_corpus().into_iter().chain(extra) {
        let faithful = is_inner_faithful(&act).map_err(|e| e.to_string())?;
        let mva = verify_module_vertex_algebra(&act, 10).passed();
        let r = check_thm_group_algebra(&act, None, act.conductor()).map_err(|e| format!("{name}: {e}"))?;
        match r.verdict {
            Verdict::Pass if faithful && mva => passes += 1,
            Verdict::Refused { .. } if !(faithful && mva) => refusals += 1,
            v => return Err(format!("{name}: inner faithful {faithful}, module vertex algebra {mva}, verdict {v:?}")),
        }
    }
    Ok(format!("{passes} PASS on inner-faithful actions, {refusals} refused, none FAIL"))
}

fn quotient() -> Outcome {
    let q = inner_faithful_quotient(&corpus::klein_first_factor(4)).map_err(|e| e.to_string())?;
    ensure!(q.quotient.algebra.dim() == 2, "quotient dim {}", q.quotient.algebra.dim());
    let g = recognize_group_algebra(&q.quotient.algebra, 1).map_err(|e| e.to_string())?;
    ensure!(g.table.is_isomorphic(&GroupTable::cyclic(2)), "quotient is not Q[Z/2]");
    ensure!(format!("{:?}", q.fixed_before) == format!("{:?}", q.fixed_after), "fixed subspaces differ");
    Ok(format!("2-dimensional quotient = Q[Z/2]; fixed subspace of dim {} unchanged", q.fixed_after.dim()))
}

fn tensor_powers() -> Outcome {
    let faithful = [
        corpus::cyclic_on_euler(2, 4),
        corpus::cyclic_on_euler(3, 4),
        corpus::cyclic_on_euler(4, 4),
        corpus::trivial(group_algebra(&GroupTable::cyclic(1)), CommDiffVA::x_power_derivation(1, 4)),
    ];
    for act in &faithful {
        let r = tensor_power_faithfulness(act, 2, DEFAULT_TENSOR_BUDGET).map_err(|e| e.to_string())?;
        ensure!(r.s0 == Some(1), "faithful action has table {:?}", r.table);
    }
    let r = tensor_power_faithfulness(&corpus::klein_first_factor(4), 3, DEFAULT_TENSOR_BUDGET).map_err(|e| e.to_string())?;
    ensure!(r.table.iter().all(|&k| k == r.table[0] && k > 0), "klein table {:?}", r.table);
    Ok(format!("s0 = 1 for {} faithful actions; through-first-factor table {:?}", faithful.len(), r.table))
}

fn schur_weyl() -> Outcome {
    let rep = FinGroupRep::from_action(GroupTable::cyclic(2), corpus::cyclic_on_euler(2, 6)).map_err(|e| e.to_string())?;
    let t = CharacterTable::cyclic(2);
    let d = decompose(&t, &rep).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = d.isotypes.iter().map(|i| i.component.dim()).collect();
    ensure!(dims == [4, 3] && d.bookkeeping_holds(), "isotype dims {dims:?}");
    ensure!(d.isotypes[0].dims == [1, 0, 1, 0, 1, 0, 1], "even dims {:?}", d.isotypes[0].dims);
    ensure!(verify_projectors(&t, &rep).map_err(|e| e.to_string())?.passed(), "projector identities fail");
    let a = rep.action().backend().clone();
    let evens: Vec<_> = (0..=3).map(|k| (0..k).fold(a.one(), |p, _| p.mul(&a.variable(0)).mul(&a.variable(0)))).collect();
    let c = check_commutant(&rep, &evens, 2);
    ensure!(c.passed, "commutant failures {:?}", c.failures);
    let r = cyclic_reachability(&t, &rep, 1, &unit_vector(7, 1), 2, DEFAULT_MODE_BUDGET).map_err(|e| e.to_string())?;
    ensure!(r.equals_isotype, "reached dim {} of the odd isotype", r.reachable.dim());
    let v = distinguish_isotypes(&t, &rep, &d, 0, 1, 2).map_err(|e| e.to_string())?.verdict;
    ensure!(v == DistinguishedBy::DegreewiseDims, "distinguish gave {v:?}");

    let s3 = FinGroupRep::from_action(GroupTable::symmetric3(), corpus::s3_permuting(2)).map_err(|e| e.to_string())?;
    let t3 = CharacterTable::symmetric3();
    let d3 = decompose(&t3, &s3).map_err(|e| e.to_string())?;
    let (sizes, perm) = ([1i64, 3, 2], [3i64, 1, 0]);
    for (l, chi) in [[1i64, 1, 1], [1, -1, 1], [2, 0, -1]].iter().enumerate() {
        let ip = (0..3).map(|c| sizes[c] * perm[c] * chi[c]).sum::<i64>() / 6;
        ensure!(d3.isotypes[l].multiplicities[1] as i64 == ip, "S3 isotype {l}: degree-1 multiplicity mismatch");
    }
    let pair = (d3.isotypes[0].multiplicities[1], d3.isotypes[2].multiplicities[1]);
    ensure!(pair == (1, 1), "S3 degree-1 multiplicities {pair:?}");
    Ok("Z2 dims (4, 3), projectors exact, commutant, reach and degreewise-dims all hold; S3 degree-1 (1, 1)".into())
}

fn cli_invocations() -> Vec<(Vec<&'static str>, Vec<&'static str>)> {
    let z2 = vec!["z2_on_xddx.json"];
    vec![
        (vec!["verify-hopf", "--object", "QS3"], vec!["groups.json"]),
        (vec!["verify-hopf", "--object", "sweedler_bad_antipode"], vec!["sweedler_mutated.json"]),
        (vec!["cocommutative", "--object", "sweedler"], vec!["sweedler.json"]),
        (vec!["group-likes", "--object", "QZ3"], vec!["groups.json"]),
        (vec!["recognize-group-algebra", "--object", "QZ4"], vec!["groups.json"]),
        (vec!["verify-action", "--object", "sweedler_z_m1"], vec!["sweedler_on_z.json"]),
        (vec!["pi2-kernel", "--object", "xy_diagonal", "--cap-d", "1", "--order-k", "10"], vec!["xy_diagonal.json"]),
        (vec!["pi2-kernel", "--object", "x_m2"], vec!["x_power_backends.json"]),
        (vec!["pin-check", "--object", "xy_diagonal", "--n", "3", "--order-k", "6"], vec!["xy_diagonal.json"]),
        (vec!["z2-kernel", "--object", "xy_diagonal", "--order-k", "10", "--bound", "2"], vec!["xy_diagonal.json"]),
        (vec!["fixed-points", "--object", "z2_on_x", "--cap-d", "4"], z2.clone()),
        (vec!["annihilator", "--object", "klein_first"], vec!["klein_first_factor.json"]),
        (vec!["inner-faithful", "--object", "trivial_sweedler"], vec!["trivial_actions.json"]),
        (vec!["quotient", "--object", "klein_first"], vec!["klein_first_factor.json"]),
        (vec!["tensor-faithful", "--object", "klein_first", "--s-max", "2"], vec!["klein_first_factor.json"]),
        (vec!["thm-5-1", "--object", "z3_on_x", "--cap-d", "4"], vec!["z3_on_xddx.json"]),
        (vec!["thm-5-4", "--object", "klein_first"], vec!["klein_first_factor.json"]),
        (vec!["decompose", "--object", "s3_permuting", "--table", "chars_S3"], vec!["s3_permuting.json"]),
        (vec!["multiplicity", "--object", "z2_on_x", "--table", "chars_Z2", "--character", "sign"], z2.clone()),
        (vec!["commutant", "--object", "z2_on_x", "--table", "chars_Z2"], z2.clone()),
        (vec!["reach", "--object", "z2_on_x", "--table", "chars_Z2", "--character", "sign", "--seed", "x"], z2.clone()),
        (
            vec!["distinguish", "--object", "z2_on_x", "--table", "chars_Z2", "--character", "trivial", "--against", "sign"],
            z2,
        ),
    ]
}

fn machine_block(args: &[&str], files: &[&str]) -> Result<String, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hopfva"));
    cmd.args(args).arg("--workspace");
    for f in files {
        cmd.arg(fixture(f));
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    Ok(text.split("\n---\n").next().unwrap_or_default().to_string())
}

fn determinism() -> Outcome {
    let cases = cli_invocations();
    let mut commands: Vec<&str> = cases.iter().map(|(a, _)| a[0]).collect();
    commands.dedup();
    for (args, files) in &cases {
        let first = machine_block(args, files)?;
        let second = machine_block(args, files)?;
        ensure!(!first.is_empty() && first == second, "{} differs between runs", args.join(" "));
    }
    Ok(format!("{} invocations covering {} commands are byte-identical across runs", cases.len(), commands.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("Hopf axioms", hopf_axioms),
        ("cocommutativity and group-algebra recognition", recognition),
        ("pi2 injectivity", pi2_injectivity),
        ("pi2 counterexample", pi2_counterexample),
        ("nondegeneracy linkage", nondegeneracy),
        ("module vertex algebra discriminates", def_discriminates),
        ("annihilator is a bialgebra ideal", bialgebra_ideal_corpus),
        ("group algebra pipeline", group_algebra_pipeline),
        ("inner-faithful quotient", quotient),
        ("tensor-power faithfulness", tensor_powers),
        ("Schur-Weyl mechanism", schur_weyl),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
