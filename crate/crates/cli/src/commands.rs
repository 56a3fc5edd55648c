use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use lcsq::decolor::{canonical_assignment, decolor_canonical, decolor_vertices};
use lcsq::f2::{abelianized_order, incidence_system, solve as solve_f2, BitVec, LinearSystem, SimpleGraph};
use lcsq::fpgroups::{solution_presentation, todd_coxeter, FiniteGroup};
use lcsq::graphiso::{automorphism_group, find_isomorphism, verify_mapping, Bijection};
use lcsq::graphs::{from_json, to_dot, to_json, ColoredGraph};
use lcsq::qcert::{
    build_magic_unitary, extract_generators, lift_cert, noncommuting_witness, verify_cert, VerifyOptions,
};
use lcsq::reps::{group_algebra_rep, pauli_magic_square_rep, DenseAlgebra, GroupAlgebra, Mode, Representation, StarAlgebra};
use serde_json::{json, Value};

use crate::input::{self, bits, construct, coset_cap, read, write};
use crate::{CapHit, CertMode, Construction, Decolor, RepKind, Source};

pub fn build(
    source: &Source,
    b: Option<&str>,
    construction: Construction,
    decolor: Decolor,
    c0: Option<&str>,
    out: Option<PathBuf>,
    dot: Option<PathBuf>,
) -> Result<u8> {
    let (sys, _) = input::system(source, b)?;
    let g = construct(&sys, construction)?;
    let g = match decolor {
        Decolor::None => g,
        Decolor::Vertices => {
            let c0 = input::c0(&g, c0, construction)?;
            decolor_vertices(&g, &canonical_assignment(&g, &c0))?
        }
        Decolor::Full => {
            let c0 = input::c0(&g, c0, construction)?;
            decolor_canonical(&g, &c0)?.1
        }
    };
    let summary = format!(
        "{}: {} vertices, {} edges",
        g.meta().construction,
        g.vertex_count(),
        g.edge_count()
    );
    match out {
        Some(path) => {
            write(&path, &to_json(&g))?;
            println!("{summary}");
        }
        None => {
            println!("{}", to_json(&g));
            eprintln!("{summary}");
        }
    }
    if let Some(path) = dot {
        write(&path, &to_dot(&g))?;
    }
    Ok(0)
}

pub struct GroupArgs {
    pub source: Source,
    pub b: Option<String>,
    pub homogeneous: bool,
    pub word: Option<String>,
    pub cap: Option<usize>,
    pub presentation_out: Option<PathBuf>,
    pub cosets_out: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

pub fn group(args: GroupArgs) -> Result<u8> {
    let (sys, _) = input::system(&args.source, args.b.as_deref())?;
    let cap = coset_cap(args.cap)?;
    let p = solution_presentation(&sys, args.homogeneous);
    let word = match &args.word {
        Some(text) => Some(p.parse_word(text).with_context(|| format!("invalid --word {text:?}"))?),
        None => None,
    };
    if let Some(path) = &args.presentation_out {
        write(path, &p.to_text())?;
    }
    let table = todd_coxeter(&p, &[], cap);
    if let Some(path) = &args.cosets_out {
        write(path, &table.to_csv(&p))?;
    }
    if !table.is_complete() {
        if let Some(path) = &args.report {
            let doc = json!({"complete": false, "cap": cap, "cosets": table.len()});
            write(path, &serde_json::to_string_pretty(&doc)?)?;
        }
        return Err(CapHit(cap).into());
    }
    let group = FiniteGroup::from_table(table)?;
    let abelian = group.is_abelian();
    println!("order {}", group.order());
    println!("{}", if abelian { "abelian" } else { "non-abelian" });

    let mut doc = json!({
        "complete": true,
        "cap": cap,
        "homogeneous": args.homogeneous,
        "generators": p.generator_count(),
        "relators": p.relators().len(),
        "order": group.order(),
        "abelian": abelian,
    });
    if args.homogeneous {
        if let Ok(order) = abelianized_order(sys.matrix()) {
            doc["abelianized_order"] = json!(order);
        }
    }
    if let (Some(w), Some(text)) = (&word, &args.word) {
        let trivial = group.evaluate(w) == group.identity();
        println!("{} {} 1", text.trim(), if trivial { "=" } else { "≠" });
        doc["word"] = json!({"text": text.trim(), "identity": trivial});
    }
    if let Some(path) = &args.report {
        write(path, &serde_json::to_string_pretty(&doc)?)?;
    }
    Ok(0)
}

pub struct CertArgs {
    pub mode: CertMode,
    pub source: Source,
    pub b: Option<String>,
    pub b1: Option<String>,
    pub b2: Option<String>,
    pub rep: RepKind,
    pub rep_file: Option<PathBuf>,
    pub construction: Construction,
    pub lift: bool,
    pub c0: Option<String>,
    pub tol: Option<f64>,
    pub seed: u64,
    pub cap: Option<usize>,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

fn k33_matrix_matches(sys: &LinearSystem) -> bool {
    let k33 = incidence_system(&SimpleGraph::complete_bipartite(3, 3), &BitVec::zeros(6)).expect("valid");
    sys.matrix() == k33.matrix()
}

fn enumerate(sys: &LinearSystem, cap: usize) -> Result<(lcsq::fpgroups::Presentation, Arc<FiniteGroup>)> {
    let p = solution_presentation(sys, true);
    let table = todd_coxeter(&p, &[], cap);
    if !table.is_complete() {
        return Err(CapHit(cap).into());
    }
    Ok((p, Arc::new(FiniteGroup::from_table(table)?)))
}

pub fn cert(args: CertArgs) -> Result<u8> {
    let (sys, _) = input::system(&args.source, None)?;
    let m = sys.constraints();
    let (b1, b2) = match args.mode {
        CertMode::Qut => {
            if args.b1.is_some() || args.b2.is_some() {
                bail!("qut certificates take --b, not --b1/--b2");
            }
            let b = match &args.b {
                Some(text) => bits(text, m, "b")?,
                None => sys.rhs().clone(),
            };
            (b.clone(), b)
        }
        CertMode::Qiso => {
            if args.b.is_some() {
                bail!("qiso certificates take --b1 and --b2, not --b");
            }
            let b1 = match &args.b1 {
                Some(text) => bits(text, m, "b1")?,
                None => sys.rhs().clone(),
            };
            let b2 = bits(args.b2.as_deref().context("qiso needs --b2")?, m, "b2")?;
            (b1, b2)
        }
    };
    let rhs = b1.xor(&b2);
    let g1 = construct(&sys.with_rhs(b1)?, args.construction)?;
    let g2 = construct(&sys.with_rhs(b2)?, args.construction)?;
    let sys_rhs = sys.with_rhs(rhs.clone())?;

    match args.rep {
        RepKind::Pauli => {
            if !k33_matrix_matches(&sys) {
                bail!("the pauli representation needs the K3,3 incidence system with edges in lexicographic order");
            }
            let r = pauli_magic_square_rep(&rhs)?;
            run_cert(&args, &g1, &g2, r, "pauli")
        }
        RepKind::Regular => {
            if !rhs.is_zero() {
                bail!("the regular representation needs equal right-hand sides; use --rep pauli or --rep-file");
            }
            let (p, group) = enumerate(&sys_rhs, coset_cap(args.cap)?)?;
            let r = group_algebra_rep(&p, group)?;
            run_cert(&args, &g1, &g2, r, "regular")
        }
        RepKind::File => {
            let path = args.rep_file.as_ref().context("--rep file needs --rep-file")?;
            let text = read(path)?;
            let doc: Value = serde_json::from_str(&text).with_context(|| format!("in {}", path.display()))?;
            match doc["backend"].as_str() {
                Some("dense") => {
                    let dim = doc["images"]
                        .as_object()
                        .and_then(|m| m.values().next())
                        .and_then(Value::as_array)
                        .map_or(1, Vec::len);
                    let r = Representation::from_json(DenseAlgebra::new(dim.max(1)), &text)?;
                    run_cert(&args, &g1, &g2, r, "file")
                }
                Some("group-algebra") => {
                    if !rhs.is_zero() {
                        bail!("group-algebra representations need equal right-hand sides");
                    }
                    let (_, group) = enumerate(&sys_rhs, coset_cap(args.cap)?)?;
                    let r = Representation::from_json(GroupAlgebra::new(group), &text)?;
                    run_cert(&args, &g1, &g2, r, "file")
                }
                other => bail!("unknown representation backend {other:?}"),
            }
        }
    }
}

fn run_cert<A: StarAlgebra + Clone>(
    args: &CertArgs,
    g1: &ColoredGraph,
    g2: &ColoredGraph,
    r: Representation<A>,
    kind: &str,
) -> Result<u8> {
    let mode = match args.mode {
        CertMode::Qut => Mode::Qut,
        CertMode::Qiso => Mode::Iso,
    };
    let opts = VerifyOptions {
        tol: args.tol.unwrap_or(1e-10),
        seed: args.seed,
        ..VerifyOptions::default()
    };
    let cert = build_magic_unitary(g1, g2, &r)?;
    if let Some(path) = &args.out {
        write(path, &cert.to_json())?;
    }
    let report = verify_cert(&cert, mode, &opts);
    let mut passed = report.passed;
    println!(
        "certificate {}x{}: {} (max residual {:.3e})",
        g1.vertex_count(),
        g2.vertex_count(),
        if report.passed { "pass" } else { "FAIL" },
        report.max_residual
    );
    if let Some(w) = &report.worst_offender {
        println!("worst offender: {w}");
    }

    let mut doc = json!({
        "mode": mode,
        "representation": kind,
        "backend": r.algebra().backend(),
        "construction": g1.meta().construction,
        "verification": report,
    });

    if report.passed {
        let witness = noncommuting_witness(&cert, opts.tol);
        match &witness {
            Some(w) => println!(
                "noncommuting witness: u{:?} and u{:?} (commutator norm {:.3e})",
                w.first, w.second, w.commutator_norm
            ),
            None => println!("all entries commute"),
        }
        doc["witness"] = witness.map_or(Value::Null, |w| {
            json!({"first": [w.first.0, w.first.1], "second": [w.second.0, w.second.1], "commutator_norm": w.commutator_norm})
        });
        let ex = extract_generators(&cert, Some(&r), &opts)?;
        doc["round_trip"] = json!({
            "discrepancy": ex.discrepancy,
            "residual": ex.round_trip,
            "product_residual": ex.product_residual,
        });
    }

    if args.lift {
        let c0 = input::c0(g1, args.c0.as_deref(), args.construction)?;
        let (_, gpp1) = decolor_canonical(g1, &c0)?;
        let (_, gpp2) = decolor_canonical(g2, &c0)?;
        let lift_opts = VerifyOptions {
            tol: args.tol.unwrap_or(1e-9),
            ..opts
        };
        let lifted = lift_cert(&cert, &gpp1, &gpp2, &lift_opts)?;
        let lr = verify_cert(&lifted, mode, &lift_opts);
        println!(
            "lifted certificate {}x{}: {} (max residual {:.3e})",
            gpp1.vertex_count(),
            gpp2.vertex_count(),
            if lr.passed { "pass" } else { "FAIL" },
            lr.max_residual
        );
        passed &= lr.passed;
        doc["lift"] = json!({
            "vertices": [gpp1.vertex_count(), gpp2.vertex_count()],
            "verification": lr,
        });
    }
    doc["passed"] = json!(passed);
    if let Some(path) = &args.report {
        write(path, &serde_json::to_string_pretty(&doc)?)?;
    }
    Ok(if passed { 0 } else { 1 })
}

fn load_graph(path: &Path) -> Result<ColoredGraph> {
    from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn iso(first: &Path, second: &Path, map_out: Option<PathBuf>, check: Option<PathBuf>) -> Result<u8> {
    let (g1, g2) = (load_graph(first)?, load_graph(second)?);
    if let Some(path) = check {
        let f = Bijection::from_json(&read(&path)?).with_context(|| format!("in {}", path.display()))?;
        return match verify_mapping(&g1, &g2, f.forward())? {
            None => {
                println!("valid isomorphism");
                Ok(0)
            }
            Some(v) => {
                println!("invalid: {v}");
                Ok(1)
            }
        };
    }
    match find_isomorphism(&g1, &g2) {
        Some(f) => {
            println!("isomorphic");
            if let Some(path) = map_out {
                write(&path, &f.to_json())?;
            }
            Ok(0)
        }
        None => {
            println!("non-isomorphic");
            Ok(1)
        }
    }
}

pub fn aut(graph: &Path, out: Option<PathBuf>) -> Result<u8> {
    let g = load_graph(graph)?;
    let a = automorphism_group(&g);
    println!("order {}", a.order);
    println!("{} generators", a.generators.len());
    if let Some(path) = out {
        let doc = json!({
            "order": a.order,
            "generators": a.generators,
            "base": a.base.iter().map(|&(v, orbit)| json!({"vertex": v, "orbit": orbit})).collect::<Vec<_>>(),
        });
        write(&path, &serde_json::to_string_pretty(&doc)?)?;
    }
    Ok(0)
}

pub fn solve(source: &Source, b: Option<&str>) -> Result<u8> {
    let (sys, _) = input::system(source, b)?;
    match solve_f2(&sys) {
        Some(x) => {
            println!("{x}");
            Ok(0)
        }
        None => {
            println!("no solution");
            Ok(1)
        }
    }
}
