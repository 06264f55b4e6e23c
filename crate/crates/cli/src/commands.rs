use std::path::{Path, PathBuf};
use std::sync::Arc;

use cotstruct_core::algebra::PathAlgebra;
use cotstruct_core::complexes::{cohomology_dims, hom_space, is_contractible, Complex};
use cotstruct_core::cotstructure::{
    adjacency_report, b_samples, check_connected_corigid, check_setup2, decompose,
    default_max_iter, generating_diagnostic, in_b, membership_equality_suite, nondegeneracy_window,
    setup2_iso_diagnostic, verify_approx_maps, verify_axioms, verify_b_approximation, verify_isom,
    verify_ses, GeneratorSet, Level, Report, Verdict,
};
use cotstruct_core::exact_linear::{Field, Fp};
use cotstruct_core::random::{random_corpus, RandomParams};
use cotstruct_core::{Error, Q};

use crate::error::CliError;
use crate::format::{complex_file, to_toml, AlgebraFile, AlgebraRef, FieldSpec, RawComplex};
use crate::report::{RunReport, Status};
use crate::{Cli, Command, DecomposeArgs, HomArgs, RandomArgs, VerifyArgs, FIELD_ENV};

macro_rules! with_field {
    ($spec:expr, $f:ident($($arg:expr),*)) => {
        match $spec {
            FieldSpec::Rational => $f::<Q>($($arg),*),
            FieldSpec::Prime(2) => $f::<Fp<2>>($($arg),*),
            FieldSpec::Prime(3) => $f::<Fp<3>>($($arg),*),
            FieldSpec::Prime(5) => $f::<Fp<5>>($($arg),*),
            FieldSpec::Prime(7) => $f::<Fp<7>>($($arg),*),
            FieldSpec::Prime(11) => $f::<Fp<11>>($($arg),*),
            FieldSpec::Prime(13) => $f::<Fp<13>>($($arg),*),
            FieldSpec::Prime(17) => $f::<Fp<17>>($($arg),*),
            FieldSpec::Prime(19) => $f::<Fp<19>>($($arg),*),
            FieldSpec::Prime(23) => $f::<Fp<23>>($($arg),*),
            FieldSpec::Prime(29) => $f::<Fp<29>>($($arg),*),
            FieldSpec::Prime(31) => $f::<Fp<31>>($($arg),*),
            FieldSpec::Prime(101) => $f::<Fp<101>>($($arg),*),
            FieldSpec::Prime(p) => unreachable!("prime {p} passed validation"),
        }
    };
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

pub fn dispatch(cli: &Cli) -> RunReport {
    let (name, inputs) = match &cli.command {
        Command::Hom(a) => ("hom", vec![display(&a.x), display(&a.y)]),
        Command::Decompose(a) => {
            let mut v = vec![display(&a.x)];
            v.extend(a.gens.iter().map(|p| display(p)));
            v.extend(a.samples.iter().map(|p| display(p)));
            ("decompose", v)
        }
        Command::Verify(a) => {
            let mut v: Vec<String> = a.gens.iter().map(|p| display(p)).collect();
            v.push(display(&a.corpus));
            v.extend(a.probes.iter().map(|p| display(p)));
            ("verify", v)
        }
        Command::Random(a) => ("random", vec![display(&a.algebra)]),
    };
    let mut report = RunReport::new(name, inputs);
    let result = match &cli.command {
        Command::Hom(a) => hom(cli, a, &mut report),
        Command::Decompose(a) => decompose_cmd(cli, a, &mut report),
        Command::Verify(a) => verify(cli, a, &mut report),
        Command::Random(a) => random(cli, a, &mut report),
    };
    match result {
        Ok(()) => report.finish(),
        Err(e) => {
            let status = match e.exit_code() {
                2 => Status::NonTerminating,
                3 => Status::VerificationFailed,
                _ => Status::InputError,
            };
            if let CliError::Engine(Error::NonTerminating { trace, .. }) = &e {
                report.tower = Some(trace.clone());
            }
            report.fail(status, e.to_string());
        }
    }
    report
}

/// Field from the files, else `--field`, else the environment, else 5. A
/// `--field` that contradicts a file is an error.
fn resolve_field(flag: Option<&str>, files: &[&AlgebraFile]) -> Result<FieldSpec, CliError> {
    let flag = flag.map(FieldSpec::parse).transpose()?;
    let mut declared: Option<FieldSpec> = None;
    for f in files {
        if let Some(s) = &f.field {
            let spec = FieldSpec::parse(s)?;
            match declared {
                Some(d) if d != spec => {
                    return Err(CliError::input(format!(
                        "inputs disagree on the field: {d} and {spec}"
                    )))
                }
                _ => declared = Some(spec),
            }
        }
    }
    match (declared, flag) {
        (Some(d), Some(f)) if d != f => Err(CliError::input(format!(
            "--field {f} contradicts the field {d} declared by the inputs"
        ))),
        (Some(d), _) => Ok(d),
        (None, Some(f)) => Ok(f),
        (None, None) => match std::env::var(FIELD_ENV) {
            Ok(s) => FieldSpec::parse(&s),
            Err(_) => Ok(FieldSpec::Prime(5)),
        },
    }
}

/// Loaded inputs sharing one algebra and one field.
struct Inputs {
    field: FieldSpec,
    algebra: Arc<PathAlgebra>,
    raws: Vec<RawComplex>,
}

fn load(cli: &Cli, paths: &[&Path]) -> Result<Inputs, CliError> {
    let raws = paths
        .iter()
        .map(|p| RawComplex::load(p))
        .collect::<Result<Vec<_>, _>>()?;
    let Some(first) = raws.first() else {
        return Err(CliError::input("no input complexes"));
    };
    for r in &raws[1..] {
        if r.algebra.quiver != first.algebra.quiver {
            return Err(CliError::input(format!(
                "{} and {} live over different quivers",
                first.path.display(),
                r.path.display()
            )));
        }
    }
    let algebras: Vec<&AlgebraFile> = raws.iter().map(|r| &r.algebra).collect();
    let field = resolve_field(cli.field.as_deref(), &algebras)?;
    let algebra = Arc::new(PathAlgebra::new(first.algebra.quiver()?));
    Ok(Inputs {
        field,
        algebra,
        raws,
    })
}

impl Inputs {
    fn build<F: Field>(&self) -> Result<Vec<Complex<F>>, CliError> {
        self.raws.iter().map(|r| r.build(&self.algebra)).collect()
    }
}

fn hom(cli: &Cli, args: &HomArgs, report: &mut RunReport) -> Result<(), CliError> {
    let inputs = load(cli, &[&args.x, &args.y])?;
    report.field = Some(inputs.field.to_string());
    with_field!(inputs.field, hom_typed(&inputs, args, report))
}

fn hom_typed<F: Field>(
    inputs: &Inputs,
    args: &HomArgs,
    report: &mut RunReport,
) -> Result<(), CliError> {
    let xs = inputs.build::<F>()?;
    let h = hom_space(&xs[0], &xs[1], args.shift)?;
    report.dim("shift", args.shift);
    report.dim("dimension", h.dimension());
    report.dim("cycles", h.ambient_dim);
    report.dim("boundaries", h.boundary_dim);
    if args.show_reps {
        let reps: Vec<_> = h.representatives.iter().map(|r| r.view()).collect();
        report.dim("representatives", reps);
    }
    Ok(())
}

fn decompose_cmd(cli: &Cli, args: &DecomposeArgs, report: &mut RunReport) -> Result<(), CliError> {
    let mut paths: Vec<&Path> = vec![&args.x];
    paths.extend(args.gens.iter().map(PathBuf::as_path));
    paths.extend(args.samples.iter().map(PathBuf::as_path));
    let inputs = load(cli, &paths)?;
    report.field = Some(inputs.field.to_string());
    with_field!(inputs.field, decompose_typed(&inputs, args, report))
}

fn triangle_verdict<F: Field>(
    t: &cotstruct_core::complexes::Triangle<F>,
    subject: &str,
) -> Verdict<F> {
    let failures = t.failures();
    let v = Verdict::new("triangle", subject, Level::Assertion, failures.is_empty());
    if failures.is_empty() {
        v
    } else {
        v.detail(failures.join(", "))
    }
}

fn decompose_typed<F: Field>(
    inputs: &Inputs,
    args: &DecomposeArgs,
    report: &mut RunReport,
) -> Result<(), CliError> {
    let objects = inputs.build::<F>()?;
    let x = &objects[0];
    let n_gens = args.gens.len();
    let gen_objects = objects[1..=n_gens].to_vec();
    let explicit_samples = &objects[1 + n_gens..];
    let gens = GeneratorSet::new(gen_objects, args.generating)
        .map_err(|e| CliError::input(e.to_string()))?;
    let max_iter = args.max_iter.unwrap_or_else(|| default_max_iter(x, &gens));
    report.dim("max_iter", max_iter);

    let dec = decompose(x, &gens, max_iter)?;
    report.tower = Some(dec.tower.trace().clone());
    report.dim("tower_length", dec.tower.len());

    let mut samples = Vec::new();
    for (i, s) in explicit_samples.iter().enumerate() {
        if !in_b(s, &gens)?.holds {
            return Err(CliError::input(format!(
                "sample {} is not in B",
                args.samples[i].display()
            )));
        }
        samples.push(s.clone());
    }
    let params = RandomParams::default();
    let candidates: Vec<Complex<F>> =
        random_corpus(&inputs.algebra, &params, args.seed, args.random_samples);
    samples.extend(b_samples(&candidates, &gens)?);
    samples.push(dec.b_part.clone());
    samples.push(Complex::zero(inputs.algebra.clone()));
    report.dim("samples", samples.len());

    for (name, part) in [("a_part", &dec.a_part), ("b_part", &dec.b_part)] {
        report.dim(&format!("{name}_terms"), part.summary());
        report.dim(&format!("{name}_cohomology"), cohomology_dims(part));
        report.dim(&format!("{name}_hom_profile"), gens.hom_profile(part)?);
        report.dim(&format!("{name}_contractible"), is_contractible(part));
    }

    let mut checks = Report::new("decomposition");
    checks.push(triangle_verdict(&dec.triangle, "A → X → B → ΣA"));
    let b = in_b(&dec.b_part, &gens)?;
    checks.push(Verdict::new("b_part_in_b", "B", Level::Assertion, b.holds).witness(b.witness));
    let level = if gens.is_generating() {
        Level::Assertion
    } else {
        Level::Diagnostic
    };
    checks.push(
        Verdict::new("a_part_in_a_bar", "A", level, dec.a_bar.holds)
            .witness(dec.a_bar.witness.clone()),
    );
    for (n, step) in dec.tower.steps().iter().enumerate() {
        checks.push(triangle_verdict(&step.triangle, &format!("step {n}")));
    }
    report.add(&checks);
    for (n, step) in dec.tower.steps().iter().enumerate() {
        let mut ses = verify_ses(step, &gens)?;
        ses.name = format!("ses step {n}");
        report.add(&ses);
        let mut approx = verify_approx_maps(step, &gens, &samples)?;
        approx.name = format!("approx_maps step {n}");
        report.add(&approx);
    }
    report.add(&verify_isom(&dec, &gens, &samples)?);
    report.add(&verify_b_approximation(&dec, &gens, &samples)?);
    if check_setup2(&gens)?.passed_all() {
        report.add(&setup2_iso_diagnostic(&dec, &gens)?);
    }

    let out_dir = match &args.out_dir {
        Some(d) => d.clone(),
        None => args.x.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    std::fs::create_dir_all(&out_dir)
        .map_err(|e| CliError::input(format!("{}: {e}", out_dir.display())))?;
    let stem = args
        .x
        .file_stem()
        .map_or("complex".into(), |s| s.to_string_lossy().into_owned());
    for (suffix, part) in [("a", &dec.a_part), ("b", &dec.b_part)] {
        let path = out_dir.join(format!("{stem}.{suffix}.toml"));
        write(&path, &to_toml(&complex_file(part, inputs.field)))?;
        report.outputs.push(display(&path));
    }
    Ok(())
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::input("empty corpus"));
    }
    Ok(files)
}

fn verify(cli: &Cli, args: &VerifyArgs, report: &mut RunReport) -> Result<(), CliError> {
    let corpus = corpus_files(&args.corpus)?;
    let mut paths: Vec<&Path> = args.gens.iter().map(PathBuf::as_path).collect();
    paths.extend(corpus.iter().map(PathBuf::as_path));
    paths.extend(args.probes.iter().map(PathBuf::as_path));
    let inputs = load(cli, &paths)?;
    report.field = Some(inputs.field.to_string());
    report.dim(
        "corpus",
        corpus.iter().map(|p| display(p)).collect::<Vec<_>>(),
    );
    with_field!(
        inputs.field,
        verify_typed(&inputs, args, corpus.len(), report)
    )
}

fn prefixed<F: Field>(mut r: Report<F>, prefix: &str) -> Report<F> {
    for v in &mut r.verdicts {
        v.subject = format!("{prefix} {}", v.subject);
    }
    r
}

fn verify_typed<F: Field>(
    inputs: &Inputs,
    args: &VerifyArgs,
    corpus_len: usize,
    report: &mut RunReport,
) -> Result<(), CliError> {
    let objects = inputs.build::<F>()?;
    let n_gens = args.gens.len();
    let gens = GeneratorSet::new(objects[..n_gens].to_vec(), args.generating)
        .map_err(|e| CliError::input(e.to_string()))?;
    let tests = &objects[n_gens..n_gens + corpus_len];
    let probes = &objects[n_gens..];

    let mut samples = b_samples(&tests[..args.samples.min(tests.len())], &gens)?;
    samples.push(Complex::zero(inputs.algebra.clone()));
    report.dim("samples", samples.len());

    report.add(&check_setup2(&gens)?);
    for (j, s) in gens.generators().iter().enumerate() {
        report.add(&prefixed(check_connected_corigid(s)?, &format!("S{j}")));
    }
    report.add(&verify_axioms(&gens, tests, args.max_iter)?);
    if gens.is_generating() {
        report.add(&membership_equality_suite(
            &gens,
            tests,
            &samples,
            args.max_iter,
        )?);
    }
    report.add(&generating_diagnostic(&gens, probes)?);
    for (i, x) in tests.iter().enumerate() {
        if !is_contractible(x) {
            report.add(&prefixed(
                nondegeneracy_window(&gens, x, None)?,
                &format!("X{i}"),
            ));
        }
    }
    report.add(&adjacency_report(&gens, tests)?);
    Ok(())
}

fn random(cli: &Cli, args: &RandomArgs, report: &mut RunReport) -> Result<(), CliError> {
    if args.degree_span == 0 || args.max_rank == 0 || args.count == 0 {
        return Err(CliError::input(
            "degree-span, max-rank and count must be positive",
        ));
    }
    let algebra_file = AlgebraFile::load(&args.algebra)?;
    let field = resolve_field(cli.field.as_deref(), &[&algebra_file])?;
    report.field = Some(field.to_string());
    let algebra = Arc::new(PathAlgebra::new(algebra_file.quiver()?));
    with_field!(field, random_typed(&algebra, field, args, report))
}

fn random_typed<F: Field>(
    algebra: &Arc<PathAlgebra>,
    field: FieldSpec,
    args: &RandomArgs,
    report: &mut RunReport,
) -> Result<(), CliError> {
    let params = RandomParams {
        degree_span: args.degree_span,
        max_rank: args.max_rank,
    };
    let corpus: Vec<Complex<F>> = random_corpus(algebra, &params, args.seed, args.count);
    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::input(format!("{}: {e}", args.out_dir.display())))?;
    report.dim("seed", args.seed);
    report.dim("degree_span", args.degree_span);
    report.dim("max_rank", args.max_rank);
    for (i, x) in corpus.iter().enumerate() {
        let mut file = complex_file(x, field);
        if let Some(r) = &args.algebra_ref {
            file.algebra = AlgebraRef::Path(r.clone());
        }
        let path = args.out_dir.join(format!("{}-{i:04}.toml", args.prefix));
        write(&path, &to_toml(&file))?;
        report.outputs.push(display(&path));
    }
    Ok(())
}
