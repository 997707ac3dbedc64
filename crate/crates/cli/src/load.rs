//! Turns a parsed [`Document`] into core structures over a chosen field.
//!
//! Nothing here checks axioms: structures are assembled as given so that
//! `check-axioms` can report on them. Shapes and references are validated.

use gerst_core::algebra::FiniteAlgebra;
use gerst_core::bialgebroid::{enveloping, LeftBialgebroid, Leg};
use gerst_core::field::Field;
use gerst_core::linalg::Matrix;
use gerst_core::umodule::UModule;
use gerst_core::yd::{sign_pair, unit_x, unit_z, YDLeftLeft, YDLeftRight};

use crate::failure::Failure;
use crate::spec::{Block, Document, Entry, Kind, Tok};

/// The two halves of a coefficient pair, not yet checked to commute.
pub type Pair<F> = (YDLeftRight<F>, YDLeftLeft<F>);

/// Coefficient names that need no block.
pub const BUILTIN_COEFFICIENTS: [&str; 2] = ["unit", "sign"];

const ALGEBRA_KEYS: &[&str] = &["dim", "unit", "constants"];
const BIALGEBROID_KEYS: &[&str] = &[
    "constructor",
    "algebra",
    "total",
    "base",
    "source",
    "target",
    "coproduct",
    "counit",
];
const COEFFICIENT_KEYS: &[&str] = &[
    "unit",
    "sign",
    "x-dim",
    "x-action",
    "x-coaction",
    "x-coproduct",
    "x-counit",
    "z-dim",
    "z-action",
    "z-coaction",
    "z-product",
    "z-unit",
];
const TASK_KEYS: &[&str] = &["algebra", "bialgebroid", "coefficients", "seed"];

/// Rejects keys that `kind` does not know, pointing at the first offender.
pub fn check_keys(doc: &Document) -> Result<(), Failure> {
    for b in &doc.blocks {
        let known = match b.kind {
            Kind::Algebra => ALGEBRA_KEYS,
            Kind::Bialgebroid => BIALGEBROID_KEYS,
            Kind::Coefficients => COEFFICIENT_KEYS,
            Kind::Task => TASK_KEYS,
        };
        if let Some(e) = b
            .entries
            .iter()
            .find(|e| !known.contains(&e.key.text.as_str()))
        {
            return Err(Failure::at(
                &e.key,
                format!("unknown key `{}` in block `{}`", e.key.text, b.title()),
            ));
        }
    }
    Ok(())
}

fn num<F: Field>(t: &Tok) -> Result<F, Failure> {
    F::parse(&t.text)
        .ok_or_else(|| Failure::at(t, format!("`{}` is not a number in {}", t.text, F::name())))
}

fn uint(t: &Tok) -> Result<usize, Failure> {
    t.text.parse().map_err(|_| {
        Failure::at(
            t,
            format!("expected a non-negative integer, found `{}`", t.text),
        )
    })
}

fn bounded(t: &Tok, bound: usize, what: &str) -> Result<usize, Failure> {
    let i = uint(t)?;
    if i >= bound {
        return Err(Failure::at(
            t,
            format!("{what} index {i} is out of range 0..{bound}"),
        ));
    }
    Ok(i)
}

fn numbers<F: Field>(toks: &[Tok]) -> Result<Vec<F>, Failure> {
    toks.iter().map(num).collect()
}

/// The tokens of `toks` split at `;`.
fn groups(toks: &[Tok]) -> Vec<&[Tok]> {
    if toks.is_empty() {
        return Vec::new();
    }
    toks.split(|t| t.text == ";").collect()
}

fn plain<'a>(block: &Block, e: &'a Entry) -> Result<&'a [Tok], Failure> {
    if let Some(t) = e.args.iter().find(|t| t.text == "=" || t.text == ";") {
        return Err(Failure::at(
            t,
            format!(
                "`{}` in block `{}` takes a plain list of values",
                e.key.text,
                block.title()
            ),
        ));
    }
    Ok(&e.args)
}

fn single<'a>(block: &'a Block, key: &str) -> Result<&'a Entry, Failure> {
    let all = block.all(key);
    let mut it = all.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Failure::shape(block.title(), format!("missing `{key}`")))?;
    if let Some(dup) = it.next() {
        return Err(Failure::at(
            &dup.key,
            format!("`{key}` given twice in block `{}`", block.title()),
        ));
    }
    Ok(first)
}

fn single_name<'a>(block: &'a Block, key: &str) -> Result<&'a Tok, Failure> {
    let e = single(block, key)?;
    match e.args.as_slice() {
        [name] => Ok(name),
        _ => Err(Failure::at(
            &e.key,
            format!("`{key}` takes exactly one name"),
        )),
    }
}

/// Entries `key i = ...` for every `i` in `0..count`, in index order.
fn indexed<'a>(block: &'a Block, key: &str, count: usize) -> Result<Vec<&'a [Tok]>, Failure> {
    let mut slots: Vec<Option<&[Tok]>> = vec![None; count];
    for e in block.all(key) {
        let (idx, rest) = match e.args.as_slice() {
            [i, eq, rest @ ..] if eq.text == "=" => (i, rest),
            _ => {
                return Err(Failure::at(
                    &e.key,
                    format!("expected `{key} <index> = ...`"),
                ))
            }
        };
        let i = bounded(idx, count, key)?;
        if slots[i].is_some() {
            return Err(Failure::at(idx, format!("`{key} {i}` given twice")));
        }
        slots[i] = Some(rest);
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            s.ok_or_else(|| {
                Failure::shape(
                    block.title(),
                    format!("`{key} {i}` is missing; {count} entries are needed"),
                )
            })
        })
        .collect()
}

fn legs<F: Field>(
    block: &Block,
    toks: &[Tok],
    bounds: (usize, usize),
    what: &str,
) -> Result<Vec<Leg<F>>, Failure> {
    groups(toks)
        .into_iter()
        .map(|g| match g {
            [c, i, j] => Ok((
                num(c)?,
                bounded(i, bounds.0, what)?,
                bounded(j, bounds.1, what)?,
            )),
            [] => Err(Failure::shape(
                block.title(),
                format!("empty term in `{what}`"),
            )),
            [t, ..] => Err(Failure::at(
                t,
                format!(
                    "a term of `{what}` is `coefficient left right`, got {} tokens",
                    g.len()
                ),
            )),
        })
        .collect()
}

fn vector<F: Field>(
    block: &Block,
    toks: &[Tok],
    len: usize,
    what: &str,
) -> Result<Vec<F>, Failure> {
    let v = numbers(toks)?;
    if v.len() != len {
        return Err(Failure::shape(
            block.title(),
            format!("`{what}` needs {len} values, got {}", v.len()),
        ));
    }
    Ok(v)
}

fn matrix<F: Field>(
    block: &Block,
    toks: &[Tok],
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<Matrix<F>, Failure> {
    let parsed: Vec<Vec<F>> = groups(toks)
        .into_iter()
        .map(numbers)
        .collect::<Result<_, _>>()?;
    if parsed.len() != rows || parsed.iter().any(|r| r.len() != cols) {
        let got: Vec<String> = parsed.iter().map(|r| r.len().to_string()).collect();
        return Err(Failure::shape(
            block.title(),
            format!(
                "`{what}` must be {rows} × {cols} with rows separated by `;`, got row lengths [{}]",
                got.join(", ")
            ),
        ));
    }
    Ok(Matrix::from_rows(&parsed, cols))
}

fn lookup<'a>(doc: &'a Document, kind: Kind, name: &Tok) -> Result<&'a Block, Failure> {
    doc.find(kind, &name.text).ok_or_else(|| {
        Failure::at(
            name,
            format!(
                "unresolved reference: no `{} {}` block",
                kind.keyword(),
                name.text
            ),
        )
    })
}

pub fn algebra<F: Field>(doc: &Document, name: &Tok) -> Result<FiniteAlgebra<F>, Failure> {
    algebra_block(lookup(doc, Kind::Algebra, name)?)
}

pub fn algebra_block<F: Field>(block: &Block) -> Result<FiniteAlgebra<F>, Failure> {
    let dim_entry = single(block, "dim")?;
    let dim = match plain(block, dim_entry)? {
        [d] => uint(d)?,
        _ => return Err(Failure::at(&dim_entry.key, "`dim` takes one integer")),
    };
    let unit = vector(block, plain(block, single(block, "unit")?)?, dim, "unit")?;
    let mut constants = Vec::new();
    for e in block.all("constants") {
        constants.extend(numbers::<F>(plain(block, e)?)?);
    }
    if constants.len() != dim * dim * dim {
        return Err(Failure::shape(
            block.title(),
            format!(
                "dimension {dim} needs {} structure constants, got {}",
                dim * dim * dim,
                constants.len()
            ),
        ));
    }
    FiniteAlgebra::new(dim, constants, unit).map_err(|e| Failure::core(&block.title(), e))
}

/// The bialgebroid of block `name`, assembled without checking axioms.
pub fn bialgebroid<F: Field>(doc: &Document, name: &Tok) -> Result<LeftBialgebroid<F>, Failure> {
    let block = lookup(doc, Kind::Bialgebroid, name)?;
    let title = block.title();
    let constructor = single_name(block, "constructor")?;
    match constructor.text.as_str() {
        "enveloping" => Ok(enveloping(&algebra(doc, single_name(block, "algebra")?)?)),
        "from_bialgebra" => {
            let h: FiniteAlgebra<F> = algebra(doc, single_name(block, "algebra")?)?;
            let n = h.dim();
            let coproduct = indexed(block, "coproduct", n)?
                .into_iter()
                .map(|t| legs(block, t, (n, n), "coproduct"))
                .collect::<Result<Vec<_>, _>>()?;
            let counit = vector::<F>(block, plain(block, single(block, "counit")?)?, n, "counit")?;
            let unit = h.unit().to_vec();
            let counit = counit.into_iter().map(|x| vec![x]).collect();
            LeftBialgebroid::new(
                h,
                FiniteAlgebra::ground(),
                vec![unit.clone()],
                vec![unit],
                coproduct,
                counit,
            )
            .map_err(|e| Failure::core(&title, e))
        }
        "explicit" => {
            let u: FiniteAlgebra<F> = algebra(doc, single_name(block, "total")?)?;
            let a: FiniteAlgebra<F> = algebra(doc, single_name(block, "base")?)?;
            let (n, m) = (u.dim(), a.dim());
            let maps = |key: &str| -> Result<Vec<Vec<F>>, Failure> {
                indexed(block, key, m)?
                    .into_iter()
                    .map(|t| vector(block, t, n, key))
                    .collect()
            };
            let (s, t) = (maps("source")?, maps("target")?);
            let coproduct = indexed(block, "coproduct", n)?
                .into_iter()
                .map(|t| legs(block, t, (n, n), "coproduct"))
                .collect::<Result<_, _>>()?;
            let counit = indexed(block, "counit", n)?
                .into_iter()
                .map(|t| vector(block, t, m, "counit"))
                .collect::<Result<_, _>>()?;
            LeftBialgebroid::new(u, a, s, t, coproduct, counit)
                .map_err(|e| Failure::core(&title, e))
        }
        other => Err(Failure::at(
            constructor,
            format!(
                "unknown constructor `{other}`; expected enveloping, from_bialgebra or explicit"
            ),
        )),
    }
}

/// The coefficients named `name`: a block of that name, or a builtin.
pub fn coefficients<F: Field>(
    doc: &Document,
    name: &str,
    b: &LeftBialgebroid<F>,
) -> Result<Pair<F>, Failure> {
    let Some(block) = doc.find(Kind::Coefficients, name) else {
        return builtin(name, b)?.ok_or_else(|| {
            Failure::Usage(format!("unresolved reference: no `coefficients {name}` block and `{name}` is not a builtin"))
        });
    };
    let title = block.title();
    for key in BUILTIN_COEFFICIENTS {
        if let Some(e) = block.get(key) {
            if block.entries.len() > 1 {
                return Err(Failure::at(
                    &e.key,
                    format!("`{key}` cannot be combined with other keys"),
                ));
            }
            return Ok(builtin(key, b)?.expect("builtin name"));
        }
    }
    let (nu, na) = (b.dim_u(), b.dim_a());
    let dim = |key: &str| -> Result<usize, Failure> {
        let e = single(block, key)?;
        match plain(block, e)? {
            [d] => uint(d),
            _ => Err(Failure::at(&e.key, format!("`{key}` takes one integer"))),
        }
    };
    let actions = |key: &str, d: usize| -> Result<Vec<Matrix<F>>, Failure> {
        indexed(block, key, nu)?
            .into_iter()
            .map(|t| matrix(block, t, d, d, key))
            .collect()
    };

    let dx = dim("x-dim")?;
    let xmod =
        UModule::new(b, dx, actions("x-action", dx)?).map_err(|e| Failure::core(&title, e))?;
    let rho = indexed(block, "x-coaction", dx)?
        .into_iter()
        .map(|t| legs(block, t, (dx, nu), "x-coaction"))
        .collect::<Result<Vec<_>, _>>()?;
    let mut x = YDLeftRight::new(b, xmod, rho).map_err(|e| Failure::core(&title, e))?;
    match (block.get("x-coproduct"), block.get("x-counit")) {
        (None, None) => {}
        (Some(_), Some(_)) => {
            let delta = indexed(block, "x-coproduct", dx)?
                .into_iter()
                .map(|t| legs(block, t, (dx, dx), "x-coproduct"))
                .collect::<Result<Vec<_>, _>>()?;
            let counit = matrix(block, &single(block, "x-counit")?.args, na, dx, "x-counit")?;
            x = x
                .with_comonoid(b, delta, counit)
                .map_err(|e| Failure::core(&title, e))?;
        }
        _ => {
            return Err(Failure::shape(
                title,
                "`x-coproduct` and `x-counit` must be given together",
            ))
        }
    }

    let dz = dim("z-dim")?;
    let zmod =
        UModule::new(b, dz, actions("z-action", dz)?).map_err(|e| Failure::core(&title, e))?;
    let lam = indexed(block, "z-coaction", dz)?
        .into_iter()
        .map(|t| legs(block, t, (nu, dz), "z-coaction"))
        .collect::<Result<Vec<_>, _>>()?;
    let mut z = YDLeftLeft::new(b, zmod, lam).map_err(|e| Failure::core(&title, e))?;
    match (block.get("z-product"), block.get("z-unit")) {
        (None, None) => {}
        (Some(_), Some(_)) => {
            let table = matrix(
                block,
                &single(block, "z-product")?.args,
                dz,
                dz * dz,
                "z-product",
            )?;
            let unit = vector(block, plain(block, single(block, "z-unit")?)?, dz, "z-unit")?;
            z = z
                .with_monoid(table, unit)
                .map_err(|e| Failure::core(&title, e))?;
        }
        _ => {
            return Err(Failure::shape(
                title,
                "`z-product` and `z-unit` must be given together",
            ))
        }
    }
    Ok((x, z))
}

fn builtin<F: Field>(name: &str, b: &LeftBialgebroid<F>) -> Result<Option<Pair<F>>, Failure> {
    let ctx = format!("coefficients {name}");
    match name {
        "unit" => Ok(Some((
            unit_x(b).map_err(|e| Failure::core(&ctx, e))?,
            unit_z(b).map_err(|e| Failure::core(&ctx, e))?,
        ))),
        "sign" => sign_pair(b).map(Some).map_err(|e| Failure::core(&ctx, e)),
        _ => Ok(None),
    }
}
