//! Verification suites. Each suite appends checks to a [`Recorder`]; the
//! check order is fixed so reports are reproducible.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use ainf_core::ainfty::fixtures as afix;
use ainf_core::ainfty::{
    chain_associativity, check_ainfty, check_functor, homology_product, AInftyCategory, AInftyFunctorData, CategoryFile, Convention,
    FunctorFile,
};
use ainf_core::branes::{chord_degree, maslov_winding, rotating_line, PhasePath, PinTorsor};
use ainf_core::c0bound::{verify_all, C0Config};
use ainf_core::cubical::{cone, standard_cube, torus, CubicalFile, PresentedCubicalSet};
use ainf_core::pontryagin::{
    check_associativity, check_dg_identity, fixtures as pfix, perturbation_sweep, Digraph, DigraphFile, LoopModel, PontryaginCategory,
    ThirdTermSign,
};
use ainf_core::strata::{check_formal_mod2, check_mod2_z, codim1_r, codim1_z, dim_z, formal_symbols, signed_residues, stasheff_strata};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::fixtures::{self, member_seed, MAX_CUBICAL_GENERATORS};
use crate::input::{compute, load_versioned, CliError};
use crate::oracle::trees_by_internal_vertices;
use crate::report::{Recorder, Status};

pub const CUBICAL_FAMILY: u64 = 24;
pub const DIGRAPH_FAMILY: u64 = 12;
pub const FRAME_SAMPLES: usize = 1000;

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub d_max: usize,
    pub max_path_len: usize,
    pub grid: usize,
    pub convention: Convention,
    pub input: Option<std::path::PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Self { seed: 1, d_max: 4, max_path_len: 4, grid: 100_000, convention: Convention::PaperLiteral, input: None }
    }
}

fn cubical_summary(name: &str, x: &PresentedCubicalSet) -> Result<(bool, Value), CliError> {
    let r = x.check_complex().map_err(compute)?;
    Ok((r.passed, json!({ "fixture": name, "cubes": r.cubes, "max_dim": r.max_dim, "passed": r.passed, "witness": r.witness })))
}

pub fn cubical(rec: &mut Recorder, opt: &Options) -> Result<(), CliError> {
    if let Some(path) = &opt.input {
        let file: CubicalFile = load_versioned(path)?;
        let set = file.to_set().map_err(|e| CliError::malformed(path, e))?;
        return rec.run("cubical.input", || {
            let (ok, w) = cubical_summary(&path.display().to_string(), &set)?;
            Ok((Status::from_bool(ok), w))
        });
    }
    rec.run("cubical.generated", || {
        let mut members: Vec<(String, PresentedCubicalSet)> = vec![
            ("standard_cube_4".into(), standard_cube(4)),
            ("torus".into(), torus()),
            ("cone_torus".into(), cone(&torus(), "apex")),
        ];
        members.extend((0..CUBICAL_FAMILY).map(|i| (format!("random_{i}"), fixtures::random_cubical(member_seed(opt.seed, i)))));
        let rows: Vec<(bool, Value)> = members
            .par_iter()
            .map(|(n, x)| cubical_summary(n, x))
            .collect::<Result<_, _>>()?;
        let max_cubes = members.iter().map(|(_, x)| x.len()).max().unwrap_or(0);
        let max_dim = members.iter().map(|(_, x)| x.max_dim()).max().unwrap_or(0);
        let ok = rows.iter().all(|r| r.0) && members.len() >= 20 && max_cubes <= MAX_CUBICAL_GENERATORS && max_dim <= 4;
        Ok((
            Status::from_bool(ok),
            json!({ "fixtures": members.len(), "max_cubes": max_cubes, "max_dim": max_dim, "results": rows.into_iter().map(|r| r.1).collect::<Vec<_>>() }),
        ))
    })?;
    rec.run("cubical.homology", || {
        let betti = |x: &PresentedCubicalSet, n| x.chain_complex().and_then(|c| c.betti(n)).map_err(compute);
        let cube = betti(&standard_cube(4), 4)?;
        let t = betti(&torus(), 2)?;
        let c = betti(&cone(&torus(), "apex"), 3)?;
        let ok = cube == [1, 0, 0, 0, 0] && t == [1, 2, 1] && c == [1, 0, 0, 0];
        Ok((Status::from_bool(ok), json!({ "standard_cube_4": cube, "torus": t, "cone_torus": c })))
    })
}

fn digraph_members(opt: &Options) -> Result<Vec<(String, Digraph)>, CliError> {
    if let Some(path) = &opt.input {
        let file: DigraphFile = load_versioned(path)?;
        return Ok(vec![(path.display().to_string(), Digraph::new(file).map_err(|e| CliError::malformed(path, e))?)]);
    }
    let mut out = vec![
        ("loop_edge".to_string(), pfix::loop_edge()),
        ("commuting_square".to_string(), pfix::commuting_square()),
        ("two_loops".to_string(), pfix::two_loops()),
        ("filled_square".to_string(), pfix::filled_square(true)),
    ];
    for i in 0..DIGRAPH_FAMILY {
        let file = fixtures::digraph_squares(3 + (i as usize % 2), member_seed(opt.seed, i));
        out.push((format!("random_{i}"), Digraph::new(file).map_err(compute)?));
    }
    Ok(out)
}

pub fn pontryagin(rec: &mut Recorder, opt: &Options) -> Result<(), CliError> {
    let members = digraph_members(opt)?;
    let models: Vec<(String, LoopModel)> = members
        .iter()
        .map(|(n, g)| Ok((n.clone(), LoopModel::from_digraph(g, opt.max_path_len).map_err(compute)?)))
        .collect::<Result<_, CliError>>()?;
    rec.run("pontryagin.path_spaces", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for (n, m) in &models {
            let all = m.check_cubical().map_err(compute)?.into_iter().all(|(_, r)| r.passed);
            ok &= all;
            rows.push(json!({ "fixture": n, "cubes": m.cubes().len(), "passed": all }));
        }
        Ok((Status::from_bool(ok), json!({ "max_path_len": opt.max_path_len, "results": rows })))
    })?;
    rec.run("pontryagin.dg_identity", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for (n, m) in &models {
            let r = check_dg_identity(m, &ThirdTermSign::Correct).map_err(compute)?;
            ok &= r.passed;
            rows.push(json!({ "fixture": n, "pairs_checked": r.pairs_checked, "passed": r.passed, "failure": r.failure }));
        }
        Ok((Status::from_bool(ok), json!({ "fixtures": models.len(), "results": rows })))
    })?;
    rec.run("pontryagin.perturbation", || {
        let (mut injected, mut detected, mut vacuous) = (0, 0, 0);
        let mut undetected = Vec::new();
        for (n, m) in &models {
            let r = perturbation_sweep(m).map_err(compute)?;
            injected += r.injected;
            detected += r.detected;
            vacuous += r.vacuous;
            undetected.extend(r.undetected.into_iter().map(|p| json!({ "fixture": n, "pair": p })));
        }
        // A single input fixture may have nothing to perturb; the built-in family must.
        let ok = detected == injected && (injected > 0 || opt.input.is_some());
        Ok((Status::from_bool(ok), json!({ "injected": injected, "detected": detected, "vacuous": vacuous, "undetected": undetected })))
    })?;
    rec.run("pontryagin.associativity", || {
        let mut ok = true;
        let mut triples = 0;
        let mut failures = Vec::new();
        for (n, m) in &models {
            let r = check_associativity(m).map_err(compute)?;
            ok &= r.passed;
            triples += r.triples_checked;
            if let Some(f) = r.failure {
                failures.push(json!({ "fixture": n, "triple": f }));
            }
        }
        Ok((Status::from_bool(ok), json!({ "triples_checked": triples, "failures": failures })))
    })
}

fn accepts(name: &str, c: &AInftyCategory, d_max: usize) -> Result<(bool, Value), CliError> {
    let r = check_ainfty(c, d_max).map_err(compute)?;
    Ok((r.passed, json!({ "fixture": name, "passed": r.passed, "tuples_checked": r.tuples_checked, "failures": r.failures })))
}

pub fn ainfty(rec: &mut Recorder, opt: &Options) -> Result<(), CliError> {
    if let Some(path) = &opt.input {
        let file: CategoryFile = load_versioned(path)?;
        let c = file.to_category().map_err(|e| CliError::malformed(path, e))?;
        return rec.run("ainfty.input", || {
            let (ok, w) = accepts(&path.display().to_string(), &c, opt.d_max)?;
            Ok((Status::from_bool(ok), w))
        });
    }
    rec.run("ainfty.accepts", || {
        let two_loops = LoopModel::from_digraph(&pfix::two_loops(), 3).map_err(compute)?;
        let mut members: Vec<(String, AInftyCategory)> = vec![
            ("dg".into(), afix::dg_fixture()),
            ("mu3".into(), afix::mu3_fixture()),
            ("massey_dg".into(), afix::massey_dg()),
            ("pontryagin_two_loops".into(), PontryaginCategory::new(&two_loops).to_ainfty().map_err(compute)?),
            ("random_dg".into(), fixtures::random_dg(3, 3, opt.seed).map_err(CliError::Compute)?),
        ];
        for v in [opt.seed, opt.seed + 1] {
            members.push((format!("transferred_{}", v % 2), afix::transferred_massey(v, opt.d_max).minimal.as_ref().clone()));
        }
        let rows: Vec<(bool, Value)> = members.par_iter().map(|(n, c)| accepts(n, c, opt.d_max)).collect::<Result<_, _>>()?;
        let ok = rows.iter().all(|r| r.0);
        Ok((Status::from_bool(ok), json!({ "d_max": opt.d_max, "results": rows.into_iter().map(|r| r.1).collect::<Vec<_>>() })))
    })?;
    rec.run("ainfty.rejects_flips", || {
        let members = [("dg", afix::dg_fixture()), ("mu3", afix::mu3_fixture()), ("massey_dg", afix::massey_dg())];
        let mut ok = true;
        let mut rows = Vec::new();
        for (n, c) in &members {
            let constants = c.constants();
            let undetected: Vec<String> = constants
                .par_iter()
                .map(|k| Ok((k, check_ainfty(&c.with_flipped(k).map_err(compute)?, opt.d_max).map_err(compute)?.passed)))
                .collect::<Result<Vec<_>, CliError>>()?
                .into_iter()
                .filter(|(_, passed)| *passed)
                .map(|(k, _)| format!("{k:?}"))
                .collect();
            let products = c.nonzero_products();
            ok &= undetected.is_empty() && products >= 2;
            rows.push(json!({ "fixture": n, "nonzero_products": products, "flips": constants.len(), "undetected": undetected }));
        }
        Ok((Status::from_bool(ok), json!({ "d_max": opt.d_max, "results": rows })))
    })?;
    rec.run("ainfty.homology_associativity", || {
        let c = afix::mu3_fixture();
        let chain = chain_associativity(&c).map_err(compute)?;
        let h = homology_product(&c).map_err(compute)?;
        let ok = !chain.is_empty() && h.associative;
        Ok((
            Status::from_bool(ok),
            json!({ "fixture": "mu3", "chain_level_failures": chain, "homology_triples_checked": h.triples_checked, "homology_associative": h.associative }),
        ))
    })
}

pub fn functor(rec: &mut Recorder, opt: &Options) -> Result<(), CliError> {
    let run = |name: &str, f: &AInftyFunctorData| -> Result<(bool, Value), CliError> {
        let r = check_functor(f, opt.d_max, opt.convention).map_err(compute)?;
        Ok((
            r.passed,
            json!({ "fixture": name, "passed": r.passed, "convention": r.convention, "tuples_checked": r.tuples_checked, "first_failing_arity": r.first_failing_arity, "failures": r.failures }),
        ))
    };
    if let Some(path) = &opt.input {
        let file: FunctorFile = load_versioned(path)?;
        let f = file.to_functor().map_err(|e| CliError::malformed(path, e))?;
        return rec.run("functor.input", || {
            let (ok, w) = run(&path.display().to_string(), &f)?;
            Ok((Status::from_bool(ok), w))
        });
    }
    rec.run("functor.identity", || {
        let two_loops = LoopModel::from_digraph(&pfix::two_loops(), 3).map_err(compute)?;
        let cats = [
            ("dg", afix::dg_fixture()),
            ("mu3", afix::mu3_fixture()),
            ("massey_dg", afix::massey_dg()),
            ("pontryagin_two_loops", PontryaginCategory::new(&two_loops).to_ainfty().map_err(compute)?),
        ];
        let mut ok = true;
        let mut rows = Vec::new();
        for (n, c) in cats {
            let (p, w) = run(n, &AInftyFunctorData::identity(Arc::new(c)))?;
            ok &= p;
            rows.push(w);
        }
        Ok((Status::from_bool(ok), json!({ "results": rows })))
    })?;
    rec.run("functor.transferred", || {
        let t = afix::transferred_massey(opt.seed, opt.d_max);
        let (ok, w) = run("transferred", &t.functor)?;
        Ok((Status::from_bool(ok), w))
    })
}

pub fn strata(rec: &mut Recorder, opt: &Options) -> Result<(), CliError> {
    rec.run("strata.counts", || {
        let z4 = codim1_z(2).map_err(compute)?.len();
        let r3 = codim1_r(3).map_err(compute)?.len();
        let dims: Vec<usize> = (1..=10).map(dim_z).collect::<Result<_, _>>().map_err(compute)?;
        let ok = z4 == 2 && r3 == 2 && dims.iter().enumerate().all(|(i, &d)| d == i);
        Ok((Status::from_bool(ok), json!({ "z4_codim1": z4, "r3_codim1": r3, "dim_z_1_to_10": dims })))
    })?;
    rec.run("strata.stasheff_oracle", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for d in 2..=7 {
            let levels = stasheff_strata(d).map_err(compute)?;
            let ours: Vec<usize> = levels.iter().map(|l| l.len()).collect();
            let oracle = trees_by_internal_vertices(d);
            let expected: Vec<usize> = (0..ours.len().max(oracle.len())).map(|k| oracle.get(&(k + 1)).copied().unwrap_or(0)).collect();
            let facets = codim1_r(d).map_err(compute)?.len();
            let good = ours == expected && facets == oracle.get(&2).copied().unwrap_or(0);
            ok &= good;
            rows.push(json!({ "d": d, "by_codim": ours, "oracle": expected, "codim1": facets, "passed": good }));
        }
        Ok((Status::from_bool(ok), json!({ "results": rows })))
    })?;
    rec.run("strata.mod2", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for d in 1..=4 {
            let g = check_mod2_z(d).map_err(compute)?;
            let f = check_formal_mod2(d).map_err(compute)?;
            ok &= g.passed && f.passed;
            rows.push(json!({ "d": d, "geometric": g, "formal": f }));
        }
        Ok((Status::from_bool(ok), json!({ "results": rows })))
    })?;
    rec.run("strata.signed_residues", || {
        let mut rng = ChaCha8Rng::seed_from_u64(member_seed(opt.seed, 0x5157));
        let mut rows = Vec::new();
        for d in 1..=3 {
            let assign: BTreeMap<String, i64> =
                formal_symbols(d).map_err(compute)?.into_iter().map(|s| (s, rng.random_range(0..=2))).collect();
            let t = signed_residues(d, &assign).map_err(compute)?;
            rows.push(json!({ "d": d, "rows": t.rows.len(), "nonzero_residues": t.nonzero_residues, "table": t }));
        }
        Ok((Status::Diagnostic, json!({ "note": "signed coefficients of the formal second boundary; not a gate", "results": rows })))
    })
}

pub fn branes(rec: &mut Recorder, opt: &Options) -> Result<(), CliError> {
    rec.run("branes.basis_invariance", || {
        let mut rng = ChaCha8Rng::seed_from_u64(member_seed(opt.seed, 0xB7));
        let mut worst = 0.0f64;
        for k in 0..FRAME_SAMPLES {
            let n = 1 + k % 4;
            let f = fixtures::random_frame(&mut rng, n);
            let g = f.change_basis(&fixtures::random_gl(&mut rng, n)).map_err(compute)?;
            worst = worst.max((f.squared_phase() - g.squared_phase()).norm());
        }
        Ok((Status::from_bool(worst <= 1e-9), json!({ "frames": FRAME_SAMPLES, "max_n": 4, "max_deviation": worst, "tolerance": 1e-9 })))
    })?;
    rec.run("branes.rotating_line", || {
        let line = PhasePath::from_frames(&rotating_line(256, 1.0)).map_err(compute)?;
        let w = maslov_winding(&line, true).map_err(compute)?;
        let refined = maslov_winding(&line.refined(), true).map_err(compute)?;
        let twisted = PhasePath::from_frames(&fixtures::frame_path(3, 256, 1, opt.seed)).map_err(compute)?;
        let wt = maslov_winding(&twisted, true).map_err(compute)?;
        let ok = w == 1 && refined == 1 && wt == 1;
        Ok((Status::from_bool(ok), json!({ "rotating_line": w, "refined": refined, "random_basis_n3": wt })))
    })?;
    rec.run("branes.chord_shift", || {
        let mut rng = ChaCha8Rng::seed_from_u64(member_seed(opt.seed, 0xC4));
        let examples = [chord_degree(0.0, 0.5), chord_degree(0.2, 0.2), chord_degree(1.0, 0.0)];
        let mut violations = 0;
        for _ in 0..10_000 {
            let (a0, a1): (f64, f64) = (rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
            let m = rng.random_range(-5..=5i64);
            if chord_degree(a0, a1 + 1.0) != chord_degree(a0, a1) + 1 || chord_degree(a0 + m as f64, a1 + m as f64) != chord_degree(a0, a1)
            {
                violations += 1;
            }
        }
        let ok = examples == [1, 1, 0] && violations == 0;
        Ok((Status::from_bool(ok), json!({ "examples": examples, "samples": 10_000, "violations": violations })))
    })?;
    rec.run("branes.torsor", || {
        let mut rows = Vec::new();
        let mut ok = true;
        for dim in 0..=3 {
            let labels = (0..1usize << dim).map(|i| format!("P{i}")).collect();
            let r = PinTorsor::standard(dim, labels).map_err(compute)?.check_axioms();
            ok &= r.passed();
            rows.push(json!({ "dim": dim, "report": r }));
        }
        Ok((Status::from_bool(ok), json!({ "results": rows })))
    })
}

pub fn c0(rec: &mut Recorder, opt: &Options) -> Result<(), CliError> {
    rec.run("c0.verify", || {
        let cfg = C0Config::standard(opt.grid, fixtures::branch_points(1000, member_seed(opt.seed, 0xC0)));
        let r = verify_all(&cfg).map_err(compute)?;
        let mut w = serde_json::to_value(&r).expect("serializable");
        // The sample points are reproducible from the seed; keep the report small.
        w["config"]["fd_points"] = json!(cfg.fd_points.len());
        Ok((Status::from_bool(r.passed), w))
    })
}

pub fn all(rec: &mut Recorder, opt: &Options) -> Result<(), CliError> {
    let opt = Options { input: None, ..opt.clone() };
    cubical(rec, &opt)?;
    pontryagin(rec, &opt)?;
    ainfty(rec, &opt)?;
    functor(rec, &opt)?;
    strata(rec, &opt)?;
    branes(rec, &opt)?;
    c0(rec, &opt)
}

pub fn require_input<'a>(opt: &'a Options, what: &str) -> Result<&'a Path, CliError> {
    opt.input.as_deref().ok_or_else(|| CliError::Usage(format!("{what} needs --in")))
}
