//! Subcommand bodies. Each fills a [`Recorder`] with checks and data.

use std::sync::Arc;

use anyonkit::adaptive_sim::{library_entry, run_exact, run_sampled};
use anyonkit::anyon_model::{
    verify_fusion, verify_hexagon, verify_modular, verify_pentagon, verify_unitarity, verify_verlinde,
};
use anyonkit::braid_engine::{compare_block, generators_sparse, printed_block, verify_braid_relations};
use anyonkit::fusion_space::{dim as space_dim, enumerate_basis};
use anyonkit::group_closure::{check_table_row, printed_scale, space_images};
use anyonkit::qutrit_models::{gate_check, phase_text};
use anyonkit::{AnyonModel, ConsistencyReport, Cyclotomic, Matrix, TreeShape};
use serde_json::{json, Map, Value};

use crate::report::Recorder;
use crate::{BoxError, GatesArgs, Mode, ProtocolArgs, RepArgs, Suite, VerifyArgs};

/// Largest eight-strand space `rep` will build.
const MAX_EIGHT_STRAND_DIM: u128 = 20_000;

fn consistency(rec: &mut Recorder, r: &ConsistencyReport) {
    let first: Vec<_> = r.violations.iter().take(5).collect();
    rec.check(
        r.check.clone(),
        r.passed(),
        json!({ "checked": r.checked, "violations": r.violations.len(), "first_violations": first }),
    );
}

pub fn verify(rec: &mut Recorder, model: &AnyonModel, args: &VerifyArgs) {
    let all = [Suite::Pentagon, Suite::Hexagon, Suite::Unitarity, Suite::Fusion, Suite::Verlinde, Suite::Modular];
    let suites: Vec<Suite> = if args.only.is_empty() { all.to_vec() } else { all.into_iter().filter(|s| args.only.contains(s)).collect() };
    for s in suites {
        let (name, f): (&str, fn(&AnyonModel) -> ConsistencyReport) = match s {
            Suite::Pentagon => ("pentagon", verify_pentagon),
            Suite::Hexagon => ("hexagon", verify_hexagon),
            Suite::Unitarity => ("unitarity", verify_unitarity),
            Suite::Fusion => ("fusion", verify_fusion),
            Suite::Verlinde => ("verlinde", verify_verlinde),
            Suite::Modular => ("modular", verify_modular),
        };
        let r = rec.timed(name, || f(model));
        consistency(rec, &r);
    }
    if !args.mutate.is_empty() {
        rec.data = json!({ "mutations": args.mutate });
    }
}

fn rows(m: &Matrix) -> Value {
    json!(m.to_string_rows())
}

fn phase_str(c: &Option<Cyclotomic>) -> Value {
    c.as_ref().map_or(Value::Null, |c| json!(phase_text(c)))
}

pub fn rep(rec: &mut Recorder, model: &AnyonModel, args: &RepArgs) -> Result<(), BoxError> {
    let (m, z) = (args.m, args.z);
    model.check_label(m)?;
    model.check_label(z)?;
    if args.strands == "8" {
        return rep8(rec, model, args);
    }
    let basis = enumerate_basis(model, m, z, &TreeShape::paired4());
    if basis.is_empty() {
        return Err(format!("total charge {z} is not reachable from four {m} anyons").into());
    }
    let (basis, raw, scale) = rec.timed("generators", || printed_scale(model, m, z))?;
    let gens: Vec<Matrix> = raw.iter().map(|g| g.scale(&scale)).collect();
    let relations = verify_braid_relations(&gens);
    rec.check("braid relations", relations.passed(), json!({ "checked": relations.checked }));
    rec.check("generators unitary", gens.iter().all(Matrix::is_unitary), Value::Null);

    let mut data = Map::new();
    data.insert("space".into(), json!(format!("{m}{z}")));
    data.insert("strands".into(), json!(4));
    data.insert("dim".into(), json!(basis.dim()));
    data.insert("basis".into(), json!(basis.labelings().iter().map(|l| anyonkit::anyon_model::label::word(l)).collect::<Vec<_>>()));
    data.insert("scale".into(), json!(scale.to_string()));
    data.insert("generators".into(), json!(gens.iter().map(rows).collect::<Vec<_>>()));

    if let Some(block) = printed_block(m, z) {
        let cmp = compare_block(model, block)?;
        let groups: Vec<Value> = cmp
            .groups
            .iter()
            .map(|g| {
                json!({
                    "label": g.label,
                    "common_phase": phase_str(&g.common_phase),
                    "mismatched": g.matrices.iter().filter(|x| !x.matches()).map(|x| json!({ "matrix": x.name, "entries": x.mismatched })).collect::<Vec<_>>(),
                })
            })
            .collect();
        data.insert("printed_comparison".into(), json!(groups));
    }

    match rec.timed("closure", || space_images(model, m, z)) {
        Ok(im) => {
            data.insert("sector_dims".into(), json!(im.sector_dims));
            data.insert("decomposition_complete".into(), json!(im.complete));
            data.insert("image".into(), json!(im.full));
            data.insert("sectors".into(), json!(im.sectors));
        }
        Err(e) => {
            data.insert("image_error".into(), json!(e.to_string()));
        }
    }

    if args.assert_table {
        let chk = rec.timed("table", || check_table_row(model, m, z))?;
        if chk.items.is_empty() {
            rec.check("table4: row", false, json!(format!("no built-in expectations for {m}{z}")));
        }
        for it in chk.items {
            rec.check(format!("table4: {}", it.what), it.pass, json!({ "expected": it.expected, "actual": it.actual }));
        }
    }
    rec.data = Value::Object(data);
    Ok(())
}

fn rep8(rec: &mut Recorder, model: &AnyonModel, args: &RepArgs) -> Result<(), BoxError> {
    let (m, z) = (args.m, args.z);
    let n = space_dim(model, m, z, 8);
    if n == 0 {
        return Err(format!("total charge {z} is not reachable from eight {m} anyons").into());
    }
    if n > MAX_EIGHT_STRAND_DIM {
        return Err(format!("eight-strand space has dimension {n}; the limit is {MAX_EIGHT_STRAND_DIM}").into());
    }
    let basis = Arc::new(enumerate_basis(model, m, z, &TreeShape::two_branch8()));
    let gens = rec.timed("generators", || generators_sparse(model, &basis))?;
    rec.check("generators unitary", gens.iter().all(|g| g.is_unitary()), Value::Null);
    let relations = rec.timed("relations", || verify_braid_relations(&gens));
    rec.check("braid relations", relations.passed(), json!({ "checked": relations.checked }));
    if args.assert_table {
        rec.check("table4: row", false, json!("the table covers four strands only"));
    }
    rec.data = json!({
        "space": format!("{m}{z}"),
        "strands": 8,
        "dim": basis.dim(),
        "nonzeros": gens.iter().map(|g| g.nnz()).collect::<Vec<_>>(),
    });
    Ok(())
}

pub fn gates(rec: &mut Recorder, args: &GatesArgs) -> Result<(), BoxError> {
    let names: Vec<&str> = if args.check.is_empty() {
        anyonkit::qutrit_models::GATE_CHECKS.to_vec()
    } else {
        args.check.iter().map(|g| g.key()).collect()
    };
    for name in names {
        let chk = rec.timed(name, || gate_check(name))?;
        for it in chk.items {
            let detail = it.phase.map_or(Value::Null, |p| json!({ "phase": p }));
            rec.check(format!("{name}: {}", it.what), it.pass, detail);
        }
    }
    Ok(())
}

fn prob_value(p: &Cyclotomic) -> Value {
    json!({ "exact": p.to_string(), "value": p.to_complex().re })
}

pub fn protocol(rec: &mut Recorder, args: &ProtocolArgs) -> Result<(), BoxError> {
    let rounds = args.max_iter as usize;
    let entry = library_entry(&args.name, rounds)?;
    let tree = rec.timed("exact", || run_exact(&entry.program, &entry.input))?;
    let dist = tree.distribution();
    rec.check("probabilities sum to 1", tree.is_consistent(), Value::Null);
    let closed = entry.closed_form.as_ref().map(|(label, expected)| {
        let actual = tree.probability(label);
        let pass = actual == Cyclotomic::from_rational(expected);
        (label.to_string(), expected.clone(), actual, pass)
    });

    let mut data = Map::new();
    data.insert("protocol".into(), json!(entry.name));
    data.insert("mode".into(), json!(if args.mode == Mode::Exact { "exact" } else { "sample" }));
    data.insert("max_iter".into(), json!(rounds));
    data.insert("branch_nodes".into(), json!(tree.size()));
    data.insert("distribution".into(), Value::Object(dist.iter().map(|(k, p)| (k.clone(), prob_value(p))).collect()));
    if let Some((label, expected, actual, _)) = &closed {
        data.insert(
            "closed_form".into(),
            json!({ "label": label, "expected": expected.to_string(), "actual": actual.to_string(), "value": expected.to_f64() }),
        );
    }

    match args.mode {
        Mode::Exact => {
            if let Some((label, _, _, pass)) = &closed {
                rec.check(format!("closed form for {label}"), *pass, Value::Null);
            }
        }
        Mode::Sample => {
            let rep = rec.timed("sample", || run_sampled(&entry.program, &entry.input, args.seed, args.trials))?;
            let mut freqs = Map::new();
            for (label, p) in &dist {
                let p = p.to_complex().re;
                let f = rep.frequency(label);
                let ok = rep.within(label, p, args.sigmas);
                let sd = (p * (1.0 - p) / args.trials as f64).sqrt();
                freqs.insert(label.clone(), json!({ "count": rep.counts.get(label).copied().unwrap_or(0), "frequency": f, "exact": p, "sd": sd }));
                rec.check(format!("{label} within {} sd", args.sigmas), ok, Value::Null);
            }
            data.insert("seed".into(), json!(args.seed));
            data.insert("trials".into(), json!(args.trials));
            data.insert("samples".into(), Value::Object(freqs));
        }
    }
    rec.data = Value::Object(data);
    Ok(())
}
