//! Executes one command against a loaded spec over a fixed field.

use gerst_core::algebra::check_algebra;
use gerst_core::bar::{BarConfig, Cochain, Source};
use gerst_core::bialgebroid::{check_bialgebroid, enveloping, LeftBialgebroid};
use gerst_core::cohomology::{verify_gerstenhaber, ExtGroups};
use gerst_core::extension::verify_extension_loop;
use gerst_core::field::Field;
use gerst_core::operad::{verify_operad, OperadContext};
use gerst_core::yd::{
    check_braided_comonoid, check_braided_monoid, check_coefficients, check_commuting_pair,
    check_yd_left_left, check_yd_left_right, commuting_pair_witness, unit_coefficients,
    CommutingPair, YDLeftLeft, YDLeftRight,
};

use crate::failure::Failure;
use crate::load;
use crate::report::{self, Caps, Product, Report};
use crate::spec::{Document, Kind, Tok};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    CheckAxioms,
    Ext { max_degree: usize },
    Cup { max_degree: usize },
    Bracket { max_degree: usize },
    VerifyOperad { trials: usize, cap: usize },
    VerifyGerstenhaber { cap: usize, max_degree: usize },
    VerifyExtensionLoop { p: usize, q: usize },
    Hochschild { max_degree: usize },
}

impl Task {
    /// The command line that reproduces this task, without global flags.
    pub fn echo(&self) -> String {
        match self {
            Task::CheckAxioms => "check-axioms".into(),
            Task::Ext { max_degree } => format!("ext --max-degree {max_degree}"),
            Task::Cup { max_degree } => format!("cup --max-degree {max_degree}"),
            Task::Bracket { max_degree } => format!("bracket --max-degree {max_degree}"),
            Task::VerifyOperad { trials, cap } => {
                format!("verify-operad --trials {trials} --cap {cap}")
            }
            Task::VerifyGerstenhaber { cap, max_degree } => {
                format!("verify-gerstenhaber --cap {cap} --max-degree {max_degree}")
            }
            Task::VerifyExtensionLoop { p, q } => format!("verify-extension-loop --p {p} --q {q}"),
            Task::Hochschild { max_degree } => format!("hochschild --max-degree {max_degree}"),
        }
    }

    fn seeded(&self) -> bool {
        matches!(
            self,
            Task::VerifyOperad { .. } | Task::VerifyExtensionLoop { .. }
        )
    }
}

/// Choices made on the command line; `None` defers to the input file.
#[derive(Clone, Debug, Default)]
pub struct Selection {
    pub algebra: Option<String>,
    pub bialgebroid: Option<String>,
    pub coefficients: Option<String>,
    pub seed: Option<u64>,
}

fn task_entry<'a>(doc: &'a Document, key: &str) -> Result<Option<&'a Tok>, Failure> {
    let Some(task) = doc.of_kind(Kind::Task).next() else {
        return Ok(None);
    };
    match task.get(key) {
        None => Ok(None),
        Some(e) => match e.args.as_slice() {
            [v] => Ok(Some(v)),
            _ => Err(Failure::at(
                &e.key,
                format!("`{key}` takes exactly one value"),
            )),
        },
    }
}

/// The block of `kind` to use: from the flag, the task block, or the only one present.
fn select(doc: &Document, kind: Kind, flag: &Option<String>) -> Result<Tok, Failure> {
    let names: Vec<&str> = doc.of_kind(kind).map(|b| b.name.text.as_str()).collect();
    let word = kind.keyword();
    if let Some(name) = flag {
        if !names.contains(&name.as_str()) {
            return Err(Failure::Usage(format!(
                "no `{word} {name}` block; the input file defines [{}]",
                names.join(", ")
            )));
        }
        return Ok(Tok {
            text: name.clone(),
            line: 0,
            col: 0,
        });
    }
    if let Some(t) = task_entry(doc, word)? {
        return Ok(t.clone());
    }
    let blocks: Vec<_> = doc.of_kind(kind).collect();
    match blocks.as_slice() {
        [one] => Ok(one.name.clone()),
        [] => Err(Failure::Usage(format!(
            "the input file defines no `{word}` block"
        ))),
        _ => Err(Failure::Usage(format!(
            "the input file defines several {word} blocks [{}]; choose one with --{word}",
            names.join(", ")
        ))),
    }
}

fn select_coefficients(doc: &Document, flag: &Option<String>) -> Result<String, Failure> {
    if let Some(name) = flag {
        return Ok(name.clone());
    }
    if let Some(t) = task_entry(doc, "coefficients")? {
        return Ok(t.text.clone());
    }
    let blocks: Vec<_> = doc.of_kind(Kind::Coefficients).collect();
    match blocks.as_slice() {
        [] => Ok("unit".into()),
        [one] => Ok(one.name.text.clone()),
        _ => {
            let names: Vec<&str> = blocks.iter().map(|b| b.name.text.as_str()).collect();
            Err(Failure::Usage(format!(
                "the input file defines several coefficient blocks [{}]; choose one with --coefficients",
                names.join(", ")
            )))
        }
    }
}

fn select_seed(doc: &Document, flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match task_entry(doc, "seed")? {
        None => Ok(0),
        Some(t) => t.text.parse().map_err(|_| {
            Failure::at(
                t,
                format!("seed must be a non-negative integer, found `{}`", t.text),
            )
        }),
    }
}

fn first_failure(what: &str, r: &gerst_core::report::Report) -> Result<(), Failure> {
    match r.failures.first() {
        None => Ok(()),
        Some(f) => Err(Failure::Math(format!(
            "{what}: axiom `{}` fails at {}",
            f.axiom, f.witness
        ))),
    }
}

fn validated_pair<F: Field>(
    b: &LeftBialgebroid<F>,
    x: YDLeftRight<F>,
    z: YDLeftLeft<F>,
    name: &str,
) -> Result<CommutingPair<F>, Failure> {
    let checked = if x.comonoid.is_some() && z.monoid.is_some() {
        check_coefficients(b, x, z)
    } else {
        check_commuting_pair(b, x, z)
    };
    checked.map_err(|e| Failure::core(&format!("coefficients {name}"), e))
}

/// A context whose resolutions reach `max_degree + 1`, within the caps.
fn context<F: Field>(
    b: &LeftBialgebroid<F>,
    pair: CommutingPair<F>,
    max_degree: usize,
    caps: &Caps,
    why: &str,
) -> Result<OperadContext<F>, Failure> {
    let bar_degree = max_degree + 1;
    if bar_degree > caps.max_bar_degree {
        return Err(Failure::Resource(format!(
            "{why} needs the bar resolution up to degree {bar_degree}, above the cap {}; raise it with --max-bar-degree or GERST_MAX_BAR_DEGREE",
            caps.max_bar_degree
        )));
    }
    let cfg = BarConfig {
        max_degree: caps.max_bar_degree,
        max_dim_u: caps.max_dim_u,
        max_ambient: caps.max_ambient,
    };
    OperadContext::with_config(b, pair, bar_degree, cfg)
        .map_err(|e| Failure::core("bar resolution", e))
}

fn cochain_entry<F: Field>(ext: &ExtGroups<F>, label: String, c: &Cochain<F>) -> report::Cochain {
    let flat = ext.context().bar(Source::X).flatten(c);
    report::Cochain {
        label,
        degree: c.degree,
        entries: flat.iter().map(|(i, x)| (*i, x.to_string())).collect(),
    }
}

fn ext_groups<F: Field>(
    b: &LeftBialgebroid<F>,
    pair: CommutingPair<F>,
    n: usize,
    caps: &Caps,
) -> Result<ExtGroups<F>, Failure> {
    let ctx = context(b, pair, n, caps, &format!("Ext up to degree {n}"))?;
    ExtGroups::from_context(ctx, n).map_err(|e| Failure::core("Ext", e))
}

fn dims_and_representatives<F: Field>(ext: &ExtGroups<F>, out: &mut Report) {
    out.dims = Some(ext.dims());
    for n in 0..=ext.max_degree() {
        for (i, c) in ext.basis_classes(n).iter().enumerate() {
            out.cochains
                .push(cochain_entry(ext, format!("[{n}.{i}]"), &c.rep));
        }
    }
}

fn products<F: Field>(ext: &ExtGroups<F>, cup: bool, out: &mut Report) -> Result<(), Failure> {
    let top = ext.max_degree();
    for p in 0..=top {
        for q in 0..=top {
            let degree = if cup { p + q } else { (p + q).wrapping_sub(1) };
            if p + q == 0 && !cup || degree > top {
                continue;
            }
            for (i, a) in ext.basis_classes(p).iter().enumerate() {
                for (j, b) in ext.basis_classes(q).iter().enumerate() {
                    let class = if cup {
                        ext.class_cup(a, b).map(Some)
                    } else {
                        ext.class_bracket(a, b)
                    };
                    let Some(class) = class.map_err(|e| Failure::core("product", e))? else {
                        continue;
                    };
                    let coords = ext
                        .coordinates(&class)
                        .map_err(|e| Failure::core("product", e))?;
                    out.products.push(Product {
                        op: if cup { "cup" } else { "bracket" }.into(),
                        left: format!("[{p}.{i}]"),
                        right: format!("[{q}.{j}]"),
                        degree,
                        coordinates: coords.iter().map(|x| x.to_string()).collect(),
                    });
                }
            }
        }
    }
    Ok(())
}

fn check_axioms<F: Field>(
    doc: &Document,
    b: &LeftBialgebroid<F>,
    coeff: &str,
    out: &mut Report,
) -> Result<(), Failure> {
    for block in doc.of_kind(Kind::Algebra) {
        let a: gerst_core::algebra::FiniteAlgebra<F> = load::algebra_block(block)?;
        out.absorb(&format!("{}: ", block.title()), &check_algebra(&a));
    }
    let name = out.bialgebroid.clone().unwrap_or_default();
    out.absorb(&format!("bialgebroid {name}: "), &check_bialgebroid(b));
    let (x, z) = load::coefficients(doc, coeff, b)?;
    out.absorb("X: ", &check_yd_left_right(b, &x));
    if x.comonoid.is_some() {
        out.absorb("X: ", &check_braided_comonoid(b, &x));
    }
    out.absorb("Z: ", &check_yd_left_left(b, &z));
    if z.monoid.is_some() {
        out.absorb("Z: ", &check_braided_monoid(b, &z));
    }
    let mut pair = gerst_core::report::Report::new();
    match commuting_pair_witness(b, &x, &z) {
        None => pair.check("commuting-pair"),
        Some((i, j)) => pair.fail(
            "commuting-pair",
            format!("(x{i}, z{j}): x₍₀₎ ⊗ x₍₁₎ z != z₍₋₁₎ x ⊗ z₍₀₎"),
        ),
    }
    out.absorb("", &pair);
    Ok(())
}

/// Runs `task`, filling `out`.
pub fn run<F: Field>(
    doc: &Document,
    task: &Task,
    sel: &Selection,
    out: &mut Report,
) -> Result<(), Failure> {
    load::check_keys(doc)?;
    out.field = F::name();
    let caps = out.caps.clone();
    if task.seeded() {
        out.seed = Some(select_seed(doc, sel.seed)?);
    }
    let seed = out.seed.unwrap_or(0);

    if let Task::Hochschild { max_degree } = task {
        let name = select(doc, Kind::Algebra, &sel.algebra)?;
        let a = load::algebra::<F>(doc, &name)?;
        first_failure(&format!("algebra {}", name.text), &check_algebra(&a))?;
        out.bialgebroid = Some(format!("enveloping({})", name.text));
        out.coefficients = Some("unit".into());
        let b = enveloping(&a);
        if b.dim_u() > caps.max_dim_u {
            return Err(Failure::Resource(format!(
                "dim U = {} exceeds the cap {}; raise it with --max-dim-u or GERST_MAX_DIM_U",
                b.dim_u(),
                caps.max_dim_u
            )));
        }
        let pair = unit_coefficients(&b).map_err(|e| Failure::core("coefficients unit", e))?;
        let ext = ext_groups(&b, pair, *max_degree, &caps)?;
        out.dims = Some(ext.dims());
        products(&ext, true, out)?;
        return products(&ext, false, out);
    }

    let name = select(doc, Kind::Bialgebroid, &sel.bialgebroid)?;
    out.bialgebroid = Some(name.text.clone());
    let b = load::bialgebroid::<F>(doc, &name)?;
    let coeff = select_coefficients(doc, &sel.coefficients)?;
    out.coefficients = Some(coeff.clone());
    if *task == Task::CheckAxioms {
        return check_axioms(doc, &b, &coeff, out);
    }
    first_failure(
        &format!("bialgebroid {}", name.text),
        &check_bialgebroid(&b),
    )?;
    let (x, z) = load::coefficients(doc, &coeff, &b)?;
    let pair = validated_pair(&b, x, z, &coeff)?;

    match *task {
        Task::CheckAxioms | Task::Hochschild { .. } => unreachable!("handled above"),
        Task::Ext { max_degree } => {
            dims_and_representatives(&ext_groups(&b, pair, max_degree, &caps)?, out)
        }
        Task::Cup { max_degree } => {
            let ext = ext_groups(&b, pair, max_degree, &caps)?;
            out.dims = Some(ext.dims());
            products(&ext, true, out)?;
        }
        Task::Bracket { max_degree } => {
            let ext = ext_groups(&b, pair, max_degree, &caps)?;
            out.dims = Some(ext.dims());
            products(&ext, false, out)?;
        }
        Task::VerifyOperad { trials, cap } => {
            let cap = cap.max(1);
            let ctx = context(
                &b,
                pair,
                3 * cap - 2,
                &caps,
                &format!("verify-operad with degrees up to {cap}"),
            )?;
            out.absorb("", &verify_operad(&ctx, cap, trials, seed));
        }
        Task::VerifyGerstenhaber { cap, max_degree } => {
            let ext = ext_groups(&b, pair, max_degree, &caps)?;
            out.dims = Some(ext.dims());
            let g = verify_gerstenhaber(&ext, cap);
            out.absorb("", &g.report);
            let mut nontrivial = 0;
            for x in &g.exhibited {
                if let Some(h) = x.h.as_ref().filter(|h| !h.is_zero()) {
                    nontrivial += 1;
                    out.cochains
                        .push(cochain_entry(&ext, format!("h for {}", x.identity), h));
                }
            }
            out.notes.push(format!(
                "{} instances decided by solving δh = lhs - rhs; {nontrivial} needed a nonzero h",
                g.exhibited.len()
            ));
        }
        Task::VerifyExtensionLoop { p, q } => {
            let ctx = context(
                &b,
                pair,
                p + q,
                &caps,
                &format!("the extension loop for p = {p}, q = {q}"),
            )?;
            let r = verify_extension_loop(&ctx, p, q, seed)
                .map_err(|e| Failure::core("extension loop", e))?;
            out.absorb("", &r);
        }
    }
    Ok(())
}
