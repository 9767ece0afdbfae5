//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use flagchow::bundles::{normal_top_chern_in_levi, whitney_check};
use flagchow::chow::{
    kernel_report, levi_presentation, siegel_presentation, verify_symmetric_identity,
};
use flagchow::intersection::{
    euler_characteristic, self_intersection_check, siegel_pair, verify_theorem,
};
use flagchow::poly::rat;
use flagchow::report::cmd_table;
use flagchow::roots::ParabolicSubset;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

const RANK_BUDGET: Duration = Duration::from_secs(60);

fn theorem() -> Outcome {
    let mut notes = Vec::new();
    for g in 2..=5 {
        let start = Instant::now();
        let (push, report) = verify_theorem(g).map_err(|e| format!("g={g}: {e}"))?;
        let took = start.elapsed();
        if !push.proportional {
            return Err(format!("g={g}: pushforward {} is not a multiple of λ_g", push.class));
        }
        let a = push.a.clone().ok_or(format!("g={g}: no coefficient"))?;
        if !push.sign_ok(g) {
            return Err(format!("g={g}: a = {a} has the wrong sign"));
        }
        if !report.pass {
            return Err(format!("g={g}: {report:?}"));
        }
        if took > RANK_BUDGET {
            return Err(format!("g={g}: took {took:?}"));
        }
        let b = push.lambda_coefficient.clone().expect("proportional");
        notes.push(format!("g={g}: a={a} λ-coeff={b}"));
    }
    Ok(notes.join(", "))
}

fn chern_vanishing() -> Outcome {
    for g in 2..=6 {
        let levi = levi_presentation(g).map_err(|e| e.to_string())?;
        let c = normal_top_chern_in_levi(g, &levi).map_err(|e| e.to_string())?;
        if !c.is_zero() {
            return Err(format!("g={g}: c_g(N) reduces to {c}"));
        }
    }
    Ok("g=2..6".into())
}

fn symmetric_lemma() -> Outcome {
    let mut count = 0;
    for g in 1..=8 {
        for l in 1..g {
            if !verify_symmetric_identity(g, l).map_err(|e| e.to_string())? {
                return Err(format!("g={g}, l={l}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} cases"))
}

fn kernel() -> Outcome {
    for g in 1..=4 {
        let amb = siegel_presentation(g).map_err(|e| e.to_string())?;
        let sub = levi_presentation(g).map_err(|e| e.to_string())?;
        for d in kernel_report(&amb, &sub, amb.top_degree()).map_err(|e| e.to_string())? {
            if !d.kernel_matches || !d.surjective {
                return Err(format!("g={g}: {d:?}"));
            }
        }
    }
    Ok("g=1..4, every degree".into())
}

/// Coefficients of `Π_{i=1..g} (1 + t^i)`.
fn poincare_oracle(g: usize) -> Vec<usize> {
    let mut c = vec![1usize];
    for i in 1..=g {
        let mut next = vec![0; c.len() + i];
        for (k, &x) in c.iter().enumerate() {
            next[k] += x;
            next[k + i] += x;
        }
        c = next;
    }
    c
}

/// Size of the orbit of the coordinate Lagrangian `{e_1, ..., e_g}` under
/// all signed permutations.
fn fixed_point_oracle(g: usize) -> usize {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..g {
        let mut next = Vec::new();
        for p in &perms {
            for x in (0..g).filter(|x| !p.contains(x)) {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        perms = next;
    }
    let mut orbit = BTreeSet::new();
    for p in &perms {
        for signs in 0..(1u32 << g) {
            let image: BTreeSet<(usize, bool)> = (0..g)
                .map(|i| (p[i], signs >> i & 1 == 1))
                .collect();
            orbit.insert(image);
        }
    }
    orbit.len()
}

fn structure() -> Outcome {
    for g in 1..=5 {
        let pres = siegel_presentation(g).map_err(|e| e.to_string())?;
        if pres.graded_dimensions() != poincare_oracle(g) {
            return Err(format!("g={g}: dimensions {:?}", pres.graded_dimensions()));
        }
        if pres.total_dimension() != 1 << g {
            return Err(format!("g={g}: total {}", pres.total_dimension()));
        }
    }
    for g in 1..=4 {
        let pres = siegel_presentation(g).map_err(|e| e.to_string())?;
        let chi = euler_characteristic(&pres).map_err(|e| e.to_string())?;
        let points = fixed_point_oracle(g);
        if points != 1 << g || chi != rat(points as i64) {
            return Err(format!("g={g}: ∫c_top(T) = {chi}, fixed points {points}"));
        }
    }
    Ok("series g=1..5, Euler g=1..4".into())
}

fn whitney() -> Outcome {
    for g in 1..=6 {
        let i = ParabolicSubset::siegel_i(g).map_err(|e| e.to_string())?;
        let j = ParabolicSubset::siegel_j(g).map_err(|e| e.to_string())?;
        if !whitney_check(g, &i, &j).map_err(|e| e.to_string())? {
            return Err(format!("g={g}"));
        }
    }
    Ok("g=1..6".into())
}

fn self_intersection() -> Outcome {
    for g in 2..=4 {
        let (amb, sub) = siegel_pair(g).map_err(|e| e.to_string())?;
        if !self_intersection_check(&amb, &sub).map_err(|e| e.to_string())? {
            return Err(format!("g={g}"));
        }
    }
    Ok("g=2..4".into())
}

fn determinism() -> Outcome {
    let first = cmd_table(4).to_json();
    let second = cmd_table(4).to_json();
    if first != second {
        return Err("in-process runs differ".into());
    }
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_flagchow"))
            .args(["table", "--gmax", "4", "--format", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    if !a.status.success() || a.stdout != b.stdout {
        return Err("separate processes differ".into());
    }
    if String::from_utf8_lossy(&a.stdout).trim_end() != first {
        return Err("binary output differs from library output".into());
    }
    Ok(format!("{} bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("1 pushforward is a multiple of λ_g and (-1)^g a > 0 against c_g(Hodge), g=2..5", theorem),
        ("2 top Chern class of the normal bundle vanishes", chern_vanishing),
        ("3 squares identity for elementary symmetric functions", symmetric_lemma),
        ("4 pullback is surjective with kernel (λ_g)", kernel),
        ("5 Poincaré series, total dimension and Euler number", structure),
        ("6 Whitney product formula", whitney),
        ("7 self-intersection of the sub flag variety", self_intersection),
        ("8 table output is byte-identical across runs", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(note) => println!("PASS criterion {name} [{note}] ({ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} ({ms} ms)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
