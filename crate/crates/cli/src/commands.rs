//! Command execution: document in, report and exit code out.

use std::io::Read;
use std::time::Instant;

use moncat::finset::{self, FinFunction, DEFAULT_SEARCH_CARD};
use moncat::lawcheck::{self, Faulty, LawReport, SampleSpec, Sampler, EXHAUSTIVE_MAX_SIZE};
use moncat::linvec::{self, ComplexMatrix, DirectSumMode, TensorSplit, C64};
use moncat::{
    CategoryId, DecompositionOutcome, Morphism, MorphismBody, ObjectHandle, Point, ProductKind, Verdict,
};
use num_complex::ComplexFloat;

use crate::cli::{Command, Common, DecompositionKind, DiagramArgs, Format, LawArgs, Mode, QueryArgs, SolveArgs};
use crate::document::{self, Diagnostic, Document, Split, Workspace};
use crate::dot;
use crate::report::{pair, CommandEcho, InstanceEcho, MorphismValue, Outcome, Report, Shape};

pub const TOLERANCE_ENV: &str = "MCAT_TOLERANCE";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(#[from] Diagnostic),
    #[error(transparent)]
    Core(#[from] moncat::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// A finished command: the report, what to print, and the exit code
/// (0 positive, 1 negative).
#[derive(Debug, Clone)]
pub struct Output {
    pub report: Report,
    pub rendered: String,
    pub exit: i32,
}

/// Reads the document named on the command line (`-` for stdin).
pub fn read_document(common: &Common) -> Result<String, CliError> {
    let path = common.document.to_string_lossy().into_owned();
    let io = |source| CliError::Io { path: path.clone(), source };
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
        Ok(text)
    } else {
        std::fs::read_to_string(&common.document).map_err(io)
    }
}

/// Flag, then environment, then document. Finite-set instances are exact:
/// the environment is ignored and a nonzero flag is an error.
pub fn effective_tolerance(doc: &Document, flag: Option<f64>, env: Option<&str>) -> Result<Option<f64>, CliError> {
    if doc.instance.category == CategoryId::Finset {
        return match flag {
            Some(t) if t != 0.0 => Err(CliError::Usage(format!("finset instances are exact; --tolerance must be 0, got {t}"))),
            _ => Ok(None),
        };
    }
    let checked = |t: f64, what: &str| {
        if t.is_finite() && t >= 0.0 {
            Ok(Some(t))
        } else {
            Err(CliError::Usage(format!("{what} must be a non-negative number, got {t}")))
        }
    };
    if let Some(t) = flag {
        return checked(t, "--tolerance");
    }
    if let Some(s) = env {
        let t = s
            .trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("{TOLERANCE_ENV} is not a number: `{s}`")))?;
        return checked(t, TOLERANCE_ENV);
    }
    Ok(doc.instance.tolerance)
}

/// Parses `text`, applies the tolerance overrides and runs `command`.
pub fn run(command: &Command, text: &str, env_tolerance: Option<&str>) -> Result<Output, CliError> {
    let doc = document::parse(text)?;
    let common = command.common();
    let tolerance = effective_tolerance(&doc, common.tolerance, env_tolerance)?;
    let ws = Workspace::build(&doc, tolerance)?;

    let start = Instant::now();
    let (echo, result, exit) = match command {
        Command::CheckLaws(args) => check_laws(&ws, args)?,
        Command::DecomposeSeq(args) => {
            let (out, replay) = decompose_seq(&ws, args)?;
            let exit = verdict_exit(out.verdict);
            (query_echo(command, args, None), decomposition(out, Shape::Sequential, replay), exit)
        }
        Command::DecomposePar(args) => {
            let (mode, out, replay) = decompose_par(&ws, args)?;
            let exit = verdict_exit(out.verdict);
            (query_echo(command, args, Some(mode)), decomposition(out, Shape::Parallel, replay), exit)
        }
        Command::Entangled(args) => entangled(&ws, command, args)?,
        Command::Coupling(args) => coupling(&ws, command, args)?,
        Command::Solve(args) => solve(&ws, args)?,
        Command::Diagram(args) => diagram(&ws, args)?,
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;

    let report = Report {
        command: CommandEcho { seed: common.seed.or(echo.seed), ..echo },
        instance: InstanceEcho {
            category: ws.instance.category_id().as_str().into(),
            product: ws.instance.product_kind().as_str().into(),
        },
        tolerance: ws.instance.tolerance(),
        result,
        timing_ms: common.timing.then_some(elapsed),
    };
    let rendered = match (common.format, &report.result) {
        (Format::Json, _) => report.to_json(),
        (Format::Text, Outcome::Diagram { dot }) => dot.clone(),
        (Format::Text, _) => {
            let mut s = report.to_text();
            if let Some(ms) = report.timing_ms {
                s.push_str(&format!("time: {ms:.3} ms\n"));
            }
            s
        }
    };
    Ok(Output { report, rendered, exit })
}

fn verdict_exit(v: Verdict) -> i32 {
    if v.is_decomposable() {
        0
    } else {
        1
    }
}

fn query_echo(command: &Command, args: &QueryArgs, mode: Option<Mode>) -> CommandEcho {
    CommandEcho {
        name: command.name().into(),
        morphism: Some(args.morphism.clone()),
        policy: Some(args.policy),
        mode: mode.map(|m| m.as_str().into()),
        split: args.split.clone(),
        ..CommandEcho::default()
    }
}

fn decomposition(out: DecompositionOutcome<Morphism>, shape: Shape, replay: Option<f64>) -> Outcome {
    let values = |pair: Option<(Morphism, Morphism)>| pair.map(|(a, b)| [MorphismValue::from(&a), MorphismValue::from(&b)]);
    Outcome::Decomposition {
        verdict: out.verdict,
        shape,
        factors: values(out.factors),
        witness_isos: values(out.witness_isos),
        replay_deviation: replay,
    }
}

type Triple = (CommandEcho, Outcome, i32);

fn check_laws(ws: &Workspace, args: &LawArgs) -> Result<Triple, CliError> {
    let seed = args.common.seed.unwrap_or(1);
    let sizes = args.sizes.unwrap_or(if args.exhaustive { (0, EXHAUSTIVE_MAX_SIZE) } else { (0, 3) });
    let spec = SampleSpec::new(seed, sizes, args.trials);
    let reports = if let Some(cat) = ws.instance.set_category() {
        laws(cat, args, &spec)?
    } else {
        laws(ws.instance.vec_category().expect("vec instance"), args, &spec)?
    };
    let passed = reports.iter().all(LawReport::passed);
    let echo = CommandEcho {
        name: "check-laws".into(),
        seed: (!args.exhaustive).then_some(seed),
        trials: (!args.exhaustive).then_some(args.trials),
        sizes: Some(sizes),
        exhaustive: args.exhaustive.then_some(true),
        inject: args.inject,
        ..CommandEcho::default()
    };
    Ok((echo, Outcome::Laws { passed, reports }, if passed { 0 } else { 1 }))
}

fn laws<C: Sampler + Copy>(cat: C, args: &LawArgs, spec: &SampleSpec) -> Result<Vec<LawReport>, CliError> {
    if args.exhaustive && spec.object_size_range.0 != 0 {
        return Err(CliError::Usage("exhaustive mode always starts at size 0; pass --sizes 0,N".into()));
    }
    let max = spec.object_size_range.1;
    Ok(match args.inject {
        Some(fault) if args.exhaustive => lawcheck::check_exhaustive(&Faulty::new(cat, fault), max)?,
        Some(fault) => lawcheck::check_all(&Faulty::new(cat, fault), spec)?,
        None if args.exhaustive => lawcheck::check_exhaustive(&cat, max)?,
        None => lawcheck::check_all(&cat, spec)?,
    })
}

fn function(m: &Morphism) -> &FinFunction {
    m.as_function().expect("finset morphism")
}

fn matrix(m: &Morphism) -> &ComplexMatrix {
    m.as_matrix().expect("vec morphism")
}

fn wrap(ws: &Workspace, out: DecompositionOutcome<FinFunction>) -> DecompositionOutcome<Morphism> {
    out.map(|g| ws.instance.function(g).expect("finset instance"))
}

fn wrap_matrix(ws: &Workspace, out: DecompositionOutcome<ComplexMatrix>) -> DecompositionOutcome<Morphism> {
    out.map(|m| ws.instance.matrix(m).expect("vec instance"))
}

fn decompose_seq(ws: &Workspace, args: &QueryArgs) -> Result<(DecompositionOutcome<Morphism>, Option<f64>), CliError> {
    let f = ws.morphism(&args.morphism)?;
    let out = match f.body() {
        MorphismBody::Function(g) => wrap(ws, finset::seq_decompose(g, args.policy)),
        MorphismBody::Linear(m) => wrap_matrix(ws, linvec::rank_factorization(m, args.policy, ws.instance.tolerance())),
    };
    let replay = match &out.factors {
        Some((first, second)) => Some(ws.instance.deviation(&ws.instance.compose(second, first)?, f)?),
        None => None,
    };
    Ok((out, replay))
}

fn chosen_split<'a>(ws: &'a Workspace, args: &QueryArgs) -> Result<Option<&'a Split>, CliError> {
    let split = match &args.split {
        Some(name) => ws.split(name)?,
        None => match ws.sole_split(&args.morphism) {
            Some(s) => s,
            None => return Ok(None),
        },
    };
    if split.morphism != args.morphism {
        return Err(CliError::Usage(format!("split `{}` belongs to `{}`, not `{}`", split.name, split.morphism, args.morphism)));
    }
    Ok(Some(split))
}

fn required_split<'a>(ws: &'a Workspace, args: &QueryArgs, what: &str) -> Result<&'a Split, CliError> {
    chosen_split(ws, args)?.ok_or_else(|| {
        CliError::Usage(format!("{what} needs a split of `{}`; declare one in the document or pass --split", args.morphism))
    })
}

fn split_dom<'a>(split: &'a Split) -> Result<&'a (ObjectHandle, ObjectHandle), CliError> {
    split.dom.as_ref().ok_or_else(|| CliError::Usage(format!("split `{}` has no `dom` factors", split.name)))
}

fn dims(pair: &(ObjectHandle, ObjectHandle)) -> (usize, usize) {
    (pair.0.size(), pair.1.size())
}

fn isqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

/// The split's dimensions, or `C^{k²} = C^k ⊗ C^k` on both sides when no
/// split is declared. States and effects keep their `C¹` side whole.
fn tensor_split(ws: &Workspace, args: &QueryArgs, m: &ComplexMatrix) -> Result<TensorSplit, CliError> {
    let infer = |n: usize, side: &str| -> Result<(usize, usize), CliError> {
        if n == 1 {
            return Ok((1, 1));
        }
        isqrt(n).map(|k| (k, k)).ok_or_else(|| {
            CliError::Usage(format!("cannot infer a tensor split of the {side} C^{n}; declare a split or pass --split"))
        })
    };
    Ok(match chosen_split(ws, args)? {
        Some(s) => {
            let dom = match &s.dom {
                Some(d) => dims(d),
                None => infer(m.cols(), "domain")?,
            };
            TensorSplit::new(dom, dims(&s.cod))
        }
        None => TensorSplit::new(infer(m.cols(), "domain")?, infer(m.rows(), "codomain")?),
    })
}

fn positional_iso(from: &finset::FinSet, to: &finset::FinSet, what: &str) -> Result<FinFunction, CliError> {
    if from.len() != to.len() {
        return Err(CliError::Usage(format!(
            "the {what} factors have {} elements in product but the {what} has {}",
            from.len(),
            to.len()
        )));
    }
    Ok(FinFunction::from_fn(from.clone(), to.clone(), |i| i)?)
}

fn decompose_par(
    ws: &Workspace,
    args: &QueryArgs,
) -> Result<(Mode, DecompositionOutcome<Morphism>, Option<f64>), CliError> {
    let f = ws.morphism(&args.morphism)?;
    let kind = ws.instance.product_kind();
    let has_split = args.split.is_some() || ws.sole_split(&args.morphism).is_some();
    let mode = args.mode.unwrap_or(match kind {
        ProductKind::Coproduct | ProductKind::Product if !has_split => Mode::Search,
        _ => Mode::Fixed,
    });
    let policy = args.policy;
    let out = match (kind, mode) {
        (ProductKind::Coproduct, Mode::Search | Mode::UpToIso) => {
            wrap(ws, finset::par_decompose_coproduct(function(f), policy)?)
        }
        (ProductKind::Coproduct, Mode::Fixed) => {
            let s = required_split(ws, args, "fixed mode")?;
            let (d1, d2) = split_dom(s)?;
            let (c1, c2) = &s.cod;
            let sets = |a: &ObjectHandle| a.as_set().expect("finset").clone();
            let out = finset::par_check_coproduct(function(f), (&sets(d1), &sets(d2)), (&sets(c1), &sets(c2)), policy)?;
            wrap(ws, out)
        }
        (ProductKind::Product, Mode::Search | Mode::UpToIso) => {
            wrap(ws, finset::par_search_product(function(f), DEFAULT_SEARCH_CARD, policy)?)
        }
        (ProductKind::Product, Mode::Fixed) => {
            let s = required_split(ws, args, "fixed mode")?;
            let (d1, d2) = split_dom(s)?;
            let (c1, c2) = &s.cod;
            let set = |a: &ObjectHandle| a.as_set().expect("finset").clone();
            let g = function(f);
            let dom_iso = match &s.dom_iso {
                Some(m) => function(m).clone(),
                None => positional_iso(&set(d1).product(&set(d2)), g.dom(), "domain")?,
            };
            let cod_iso = match &s.cod_iso {
                Some(m) => function(m).clone(),
                None => positional_iso(&set(c1).product(&set(c2)), g.cod(), "codomain")?,
            };
            let out =
                finset::par_check_product(g, (&set(d1), &set(d2)), (&set(c1), &set(c2)), &dom_iso, &cod_iso, policy)?;
            wrap(ws, out)
        }
        (ProductKind::Directsum, Mode::Fixed | Mode::UpToIso) => {
            let s = required_split(ws, args, "a direct-sum decomposition")?;
            let dom = dims(split_dom(s)?);
            let dsm = if mode == Mode::Fixed { DirectSumMode::Fixed } else { DirectSumMode::UpToIso };
            let out = linvec::par_decompose_directsum(matrix(f), dom, dims(&s.cod), dsm, policy, ws.instance.tolerance())?;
            wrap_matrix(ws, out)
        }
        (ProductKind::Directsum, Mode::Search) => {
            return Err(CliError::Usage("search mode is for finite sets; use --mode fixed or --mode up-to-iso".into()))
        }
        (ProductKind::Tensor, Mode::Fixed) => {
            let m = matrix(f);
            let split = tensor_split(ws, args, m)?;
            wrap_matrix(ws, linvec::strict_par_decompose_tensor(m, split, policy)?)
        }
        (ProductKind::Tensor, _) => {
            return Err(CliError::Usage(
                "tensor decompositions fix both witness isos to identities; only --mode fixed is available".into(),
            ))
        }
    };
    let replay = match (&out.factors, &out.witness_isos) {
        (Some((g1, g2)), Some((di, ci))) => {
            let left = ws.instance.compose(f, di)?;
            let right = ws.instance.compose(ci, &ws.instance.mproduct_mor(g1, g2)?)?;
            Some(ws.instance.deviation(&left, &right)?)
        }
        _ => None,
    };
    Ok((mode, out, replay))
}

fn require_tensor(ws: &Workspace, what: &str) -> Result<(), CliError> {
    if ws.instance.product_kind() != ProductKind::Tensor {
        return Err(CliError::Usage(format!("{what} needs a (vec, tensor) document, not {}", ws.instance.product_kind())));
    }
    Ok(())
}

fn entangled(ws: &Workspace, command: &Command, args: &QueryArgs) -> Result<Triple, CliError> {
    require_tensor(ws, "entangled")?;
    let f = ws.morphism(&args.morphism)?;
    let Point::Vector(v) = ws.instance.state_extract(f)? else { unreachable!("vec instance") };
    let split = tensor_split(ws, args, matrix(f))?.cod;
    let entangled = linvec::is_entangled(&v, split, ws.instance.tolerance().max(linvec::RANK_THRESHOLD))?;
    let sd = linvec::state_schmidt(&v, split)?;
    let echo = CommandEcho { policy: None, ..query_echo(command, args, None) };
    let result = Outcome::Entanglement {
        entangled,
        split: [split.0, split.1],
        schmidt_rank: sd.rank,
        coefficients: sd.coefficients,
    };
    Ok((echo, result, if entangled { 1 } else { 0 }))
}

fn coupling(ws: &Workspace, command: &Command, args: &QueryArgs) -> Result<Triple, CliError> {
    require_tensor(ws, "coupling")?;
    let m = matrix(ws.morphism(&args.morphism)?);
    let split = tensor_split(ws, args, m)?;
    let value = linvec::coupling_measure(m, split)?;
    let sd = linvec::operator_schmidt(m, split)?;
    let echo = CommandEcho { policy: None, ..query_echo(command, args, None) };
    Ok((echo, Outcome::Coupling { value, schmidt_rank: sd.rank, coefficients: sd.coefficients }, 0))
}

pub fn parse_rhs(s: &str) -> Result<Vec<C64>, CliError> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<C64>().map_err(|_| CliError::Usage(format!("--rhs: `{part}` is not a number")))
        })
        .collect()
}

fn solve(ws: &Workspace, args: &SolveArgs) -> Result<Triple, CliError> {
    if ws.instance.category_id() != CategoryId::Vec {
        return Err(CliError::Usage("solve needs a vec document".into()));
    }
    let m = matrix(ws.morphism(&args.query.morphism)?);
    let b = parse_rhs(&args.rhs)?;
    if b.len() != m.rows() {
        return Err(CliError::Usage(format!("--rhs has {} entries but the matrix has {} rows", b.len(), m.rows())));
    }
    let x = linvec::solve(m, &b)?;
    let mx = m.apply(&x)?;
    let residual = mx.iter().zip(&b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
    let echo = CommandEcho {
        name: "solve".into(),
        morphism: Some(args.query.morphism.clone()),
        rhs: Some(b.iter().map(|z| pair(*z)).collect()),
        ..CommandEcho::default()
    };
    Ok((echo, Outcome::Solution { x: x.iter().map(|z| pair(*z)).collect(), residual }, 0))
}

fn object_label(ws: &Workspace, a: &ObjectHandle) -> String {
    ws.name_of(a).map(String::from).unwrap_or_else(|| a.to_string())
}

fn product_symbol(kind: ProductKind) -> &'static str {
    match kind {
        ProductKind::Coproduct | ProductKind::Directsum => "⊕",
        ProductKind::Product => "×",
        ProductKind::Tensor => "⊗",
    }
}

fn diagram(ws: &Workspace, args: &DiagramArgs) -> Result<Triple, CliError> {
    let q = &args.query;
    let f = ws.morphism(&q.morphism)?;
    let name = q.morphism.as_str();
    let (dom, cod) = (object_label(ws, &f.dom()), object_label(ws, &f.cod()));
    let mut echo = CommandEcho { name: "diagram".into(), morphism: Some(q.morphism.clone()), ..CommandEcho::default() };

    let (graph, exit) = match args.decomposition {
        None => (dot::morphism(name, &dom, &cod), 0),
        Some(DecompositionKind::Seq) => {
            echo.policy = Some(q.policy);
            echo.decomposition = Some("seq".into());
            let (out, _) = decompose_seq(ws, q)?;
            match &out.factors {
                Some((first, _)) => (dot::sequential(name, &dom, &object_label(ws, &first.cod()), &cod), verdict_exit(out.verdict)),
                None => (dot::morphism(name, &dom, &cod), 1),
            }
        }
        Some(DecompositionKind::Par) => {
            let (mode, out, _) = decompose_par(ws, q)?;
            echo.policy = Some(q.policy);
            echo.mode = Some(mode.as_str().into());
            echo.split = q.split.clone();
            echo.decomposition = Some("par".into());
            match &out.factors {
                Some((g1, g2)) => {
                    let labels = |a: &ObjectHandle, b: &ObjectHandle| (object_label(ws, a), object_label(ws, b));
                    let (c1, c2) = labels(&g1.dom(), &g2.dom());
                    let (d1, d2) = labels(&g1.cod(), &g2.cod());
                    let op = product_symbol(ws.instance.product_kind());
                    (dot::parallel(name, op, &dom, &cod, [&c1, &c2], [&d1, &d2]), verdict_exit(out.verdict))
                }
                None => (dot::morphism(name, &dom, &cod), 1),
            }
        }
    };
    Ok((echo, Outcome::Diagram { dot: graph.render() }, exit))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(category: &str, product: &str, tolerance: Option<f64>) -> Document {
        let tol = tolerance.map(|t| format!(r#", "tolerance": {t}"#)).unwrap_or_default();
        document::parse(&format!(
            r#"{{"schema_version": "1", "instance": {{"category": "{category}", "product": "{product}"{tol}}}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn tolerance_precedence() {
        let d = doc("vec", "tensor", Some(1e-6));
        assert_eq!(effective_tolerance(&d, None, None).unwrap(), Some(1e-6));
        assert_eq!(effective_tolerance(&d, None, Some("1e-3")).unwrap(), Some(1e-3));
        assert_eq!(effective_tolerance(&d, Some(0.5), Some("1e-3")).unwrap(), Some(0.5));
        assert!(effective_tolerance(&d, None, Some("lots")).is_err());
        assert!(effective_tolerance(&d, Some(-1.0), None).is_err());

        let s = doc("finset", "product", None);
        assert_eq!(effective_tolerance(&s, None, Some("1e-3")).unwrap(), None);
        assert_eq!(effective_tolerance(&s, Some(0.0), None).unwrap(), None);
        assert!(effective_tolerance(&s, Some(0.1), None).is_err());
    }

    #[test]
    fn right_hand_sides() {
        let b = parse_rhs("3, 1, 1+2i, -0.5i").unwrap();
        assert_eq!(b, vec![C64::new(3.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 2.0), C64::new(0.0, -0.5)]);
        assert!(parse_rhs("3,,1").is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(isqrt(16), Some(4));
        assert_eq!(isqrt(1), Some(1));
        assert_eq!(isqrt(8), None);
    }
}
