//! JSON input files: groupoid models, modules, cocycles and colimit queries.

use std::collections::BTreeMap;
use std::path::Path;

use groupoidal::groupoid::{FiniteGroupoid, GModule};
use groupoidal::limits::{BratteliDiagram, ColimitElement};
use groupoidal::models::{action_groupoid, group_groupoid, pair_groupoid_from_fibers};
use groupoidal::skew::ZCocycle;
use groupoidal::zlinalg::{int_vec, IntMatrix};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

/// Levels used for a stationary diagram when the file does not say.
pub const DEFAULT_STATIONARY_LEVELS: usize = 8;

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ModelFile {
    Explicit {
        units: Vec<usize>,
        arrows: Vec<ArrowFile>,
        compose: Vec<Vec<usize>>,
    },
    Group {
        cayley: Vec<Vec<usize>>,
    },
    Pair {
        fibers: Vec<usize>,
    },
    Action {
        cayley: Vec<Vec<usize>>,
        perms: Vec<Vec<usize>>,
    },
    Bratteli {
        matrices: Vec<Vec<Vec<i64>>>,
        #[serde(default)]
        stationary: bool,
        levels: Option<usize>,
    },
    Odometer {
        p: usize,
    },
}

#[derive(Debug, Deserialize)]
struct ArrowFile {
    src: usize,
    rng: usize,
}

#[derive(Debug, Deserialize)]
struct ModuleFile {
    fibers: BTreeMap<String, usize>,
    #[serde(default)]
    action: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
struct CocycleFile {
    values: BTreeMap<String, i64>,
}

#[derive(Debug, Deserialize)]
struct ElementFile {
    stage: usize,
    vector: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
enum QueryFile {
    Equal {
        a: ElementFile,
        b: ElementFile,
        bound: Option<usize>,
    },
    Divisible {
        a: ElementFile,
        q: i64,
        bound: Option<usize>,
    },
}

/// A parsed model file.
#[derive(Debug, Clone)]
pub enum Model {
    Groupoid(FiniteGroupoid),
    Bratteli(BratteliDiagram),
    Odometer { p: usize },
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Groupoid(_) => "groupoid",
            Model::Bratteli(_) => "bratteli",
            Model::Odometer { .. } => "odometer",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Query {
    Equal {
        a: ColimitElement,
        b: ColimitElement,
        bound: Option<usize>,
    },
    Divisible {
        a: ColimitElement,
        q: i64,
        bound: Option<usize>,
    },
}

/// Source text plus its path, for error locations.
struct Source {
    path: String,
    text: String,
}

impl Source {
    fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Ok(Source {
            path: path.display().to_string(),
            text,
        })
    }

    fn decode<T: DeserializeOwned>(&self) -> Result<T, CliError> {
        serde_json::from_str(&self.text).map_err(|e| CliError::Parse {
            path: self.path.clone(),
            line: Some(e.line()),
            field: None,
            message: e.to_string(),
        })
    }

    /// Error at a field; the line is that of the first occurrence of its key.
    fn error(&self, field: impl Into<String>, message: impl Into<String>) -> CliError {
        let field = field.into();
        let key = field.split(['[', '.']).next().unwrap_or("").to_string();
        let needle = format!("\"{key}\"");
        let line = self.text.lines().position(|l| l.contains(&needle)).map(|i| i + 1);
        CliError::Parse {
            path: self.path.clone(),
            line,
            field: Some(field),
            message: message.into(),
        }
    }
}

pub fn parse_model(path: &Path) -> Result<Model, CliError> {
    let src = Source::read(path)?;
    match src.decode::<ModelFile>()? {
        ModelFile::Explicit { units, arrows, compose } => {
            explicit_groupoid(&src, units, &arrows, &compose).map(Model::Groupoid)
        }
        ModelFile::Group { cayley } => Ok(Model::Groupoid(group_groupoid(&cayley)?)),
        ModelFile::Pair { fibers } => Ok(Model::Groupoid(pair_groupoid_from_fibers(&fibers)?)),
        ModelFile::Action { cayley, perms } => Ok(Model::Groupoid(action_groupoid(&cayley, &perms)?)),
        ModelFile::Bratteli {
            matrices,
            stationary,
            levels,
        } => {
            let mats = matrices
                .iter()
                .enumerate()
                .map(|(i, m)| matrix_of(&src, &format!("matrices[{i}]"), m, None))
                .collect::<Result<Vec<_>, _>>()?;
            if stationary {
                if mats.len() != 1 {
                    return Err(src.error("matrices", "a stationary diagram takes exactly one matrix"));
                }
                let levels = levels.unwrap_or(DEFAULT_STATIONARY_LEVELS);
                Ok(Model::Bratteli(BratteliDiagram::stationary(mats[0].clone(), levels)?))
            } else {
                if levels.is_some_and(|l| l != mats.len()) {
                    return Err(src.error("levels", "must equal the number of matrices"));
                }
                Ok(Model::Bratteli(BratteliDiagram::new(mats)?))
            }
        }
        ModelFile::Odometer { p } => {
            if p < 2 {
                return Err(src.error("p", "base must be at least 2"));
            }
            Ok(Model::Odometer { p })
        }
    }
}

pub fn parse_groupoid(path: &Path) -> Result<FiniteGroupoid, CliError> {
    match parse_model(path)? {
        Model::Groupoid(g) => Ok(g),
        other => Err(CliError::Usage(format!(
            "{} describes a {}, this command needs a finite groupoid",
            path.display(),
            other.kind()
        ))),
    }
}

pub fn parse_bratteli(path: &Path) -> Result<BratteliDiagram, CliError> {
    match parse_model(path)? {
        Model::Bratteli(b) => Ok(b),
        other => Err(CliError::Usage(format!(
            "{} describes a {}, this command needs a Bratteli diagram",
            path.display(),
            other.kind()
        ))),
    }
}

fn matrix_of(
    src: &Source,
    field: &str,
    rows: &[Vec<i64>],
    shape: Option<(usize, usize)>,
) -> Result<IntMatrix, CliError> {
    let cols = match (rows.first(), shape) {
        (Some(r), _) => r.len(),
        (None, Some((_, c))) => c,
        (None, None) => 0,
    };
    if rows.iter().any(|r| r.len() != cols) {
        return Err(src.error(field, "rows have different lengths"));
    }
    Ok(IntMatrix::from_rows_with_cols(rows, cols))
}

fn explicit_groupoid(
    src: &Source,
    units: Vec<usize>,
    arrows: &[ArrowFile],
    compose: &[Vec<usize>],
) -> Result<FiniteGroupoid, CliError> {
    let n = arrows.len();
    for (i, a) in arrows.iter().enumerate() {
        if a.src >= n || a.rng >= n {
            return Err(src.error(format!("arrows[{i}]"), format!("endpoint out of range 0..{n}")));
        }
    }
    for (i, &u) in units.iter().enumerate() {
        if u >= n {
            return Err(src.error(format!("units[{i}]"), format!("unit {u} out of range 0..{n}")));
        }
    }
    let srcs: Vec<usize> = arrows.iter().map(|a| a.src).collect();
    let rngs: Vec<usize> = arrows.iter().map(|a| a.rng).collect();
    let mut table: Vec<Option<usize>> = vec![None; n * n];
    for (i, t) in compose.iter().enumerate() {
        let field = format!("compose[{i}]");
        let &[g, h, gh] = t.as_slice() else {
            return Err(src.error(field, format!("triple {t:?} must have three entries [g, h, gh]")));
        };
        if g >= n || h >= n || gh >= n {
            return Err(src.error(field, format!("triple {t:?} names an arrow outside 0..{n}")));
        }
        if srcs[g] != rngs[h] {
            return Err(src.error(field, format!("triple {t:?}: source of {g} is not the range of {h}")));
        }
        match table[g * n + h] {
            Some(prev) if prev != gh => {
                return Err(src.error(field, format!("triple {t:?} conflicts with an earlier product {prev}")));
            }
            _ => table[g * n + h] = Some(gh),
        }
    }
    for g in 0..n {
        for h in 0..n {
            if srcs[g] == rngs[h] && table[g * n + h].is_none() {
                return Err(src.error("compose", format!("no triple for the composable pair ({g}, {h})")));
            }
        }
    }
    let inv = (0..n)
        .map(|g| {
            (0..n)
                .find(|&h| table[g * n + h] == Some(rngs[g]) && table[h * n + g] == Some(srcs[g]))
                .ok_or_else(|| src.error("compose", format!("arrow {g} has no inverse")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteGroupoid::from_tables(units, srcs, rngs, table, inv)?)
}

fn arrow_key(src: &Source, field: &str, key: &str, n: usize) -> Result<usize, CliError> {
    match key.parse::<usize>() {
        Ok(a) if a < n => Ok(a),
        _ => Err(src.error(format!("{field}.{key}"), format!("expected an arrow id in 0..{n}"))),
    }
}

/// Module file: fiber ranks per unit and matrices per arrow. Arrows left
/// out act by the identity, which requires equal ranks at both ends.
pub fn parse_module(path: &Path, g: &FiniteGroupoid) -> Result<GModule, CliError> {
    let src = Source::read(path)?;
    let file: ModuleFile = src.decode()?;
    let n = g.n_arrows();
    let mut ranks = vec![None; g.n_units()];
    for (key, &r) in &file.fibers {
        let u = arrow_key(&src, "fibers", key, n)?;
        let pos = g
            .unit_index(u)
            .ok_or_else(|| src.error(format!("fibers.{key}"), format!("arrow {u} is not a unit")))?;
        ranks[pos] = Some(r);
    }
    let ranks = ranks
        .iter()
        .enumerate()
        .map(|(pos, r)| r.ok_or_else(|| src.error("fibers", format!("no rank for unit {}", g.units()[pos]))))
        .collect::<Result<Vec<_>, _>>()?;
    let rank_of = |u: usize| ranks[g.unit_index(u).expect("unit")];
    let mut action: Vec<Option<IntMatrix>> = vec![None; n];
    for (key, rows) in &file.action {
        let a = arrow_key(&src, "action", key, n)?;
        let shape = (rank_of(g.rng(a)), rank_of(g.src(a)));
        action[a] = Some(matrix_of(&src, &format!("action.{key}"), rows, Some(shape))?);
    }
    let action = action
        .into_iter()
        .enumerate()
        .map(|(a, m)| match m {
            Some(m) => Ok(m),
            None => {
                let (r, s) = (rank_of(g.rng(a)), rank_of(g.src(a)));
                if r == s {
                    Ok(IntMatrix::identity(r))
                } else {
                    Err(src.error(
                        "action",
                        format!("no matrix for arrow {a} between fibers of ranks {s} and {r}"),
                    ))
                }
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = GModule::new(ranks, action);
    m.validate(g)
        .map_err(|v| CliError::Validation(groupoidal::Error::InvalidModule(v.to_string())))?;
    Ok(m)
}

/// Cocycle file: integer value per arrow, missing arrows take 0.
pub fn parse_cocycle(path: &Path, g: &FiniteGroupoid) -> Result<ZCocycle, CliError> {
    let src = Source::read(path)?;
    let file: CocycleFile = src.decode()?;
    let mut values = vec![0; g.n_arrows()];
    for (key, &v) in &file.values {
        values[arrow_key(&src, "values", key, g.n_arrows())?] = v;
    }
    Ok(ZCocycle::new(values))
}

pub fn parse_queries(path: &Path) -> Result<Vec<Query>, CliError> {
    let src = Source::read(path)?;
    let file: Vec<QueryFile> = src.decode()?;
    let elem = |e: ElementFile| ColimitElement::new(e.stage, int_vec(&e.vector));
    Ok(file
        .into_iter()
        .map(|q| match q {
            QueryFile::Equal { a, b, bound } => Query::Equal {
                a: elem(a),
                b: elem(b),
                bound,
            },
            QueryFile::Divisible { a, q, bound } => Query::Divisible { a: elem(a), q, bound },
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn group_file() {
        let f = file(r#"{"kind": "group", "cayley": [[0, 1], [1, 0]]}"#);
        let g = parse_groupoid(f.path()).unwrap();
        assert_eq!(g.n_arrows(), 2);
    }

    #[test]
    fn explicit_file_matches_group() {
        let f = file(
            r#"{"kind": "explicit", "units": [0],
                "arrows": [{"src": 0, "rng": 0}, {"src": 0, "rng": 0}],
                "compose": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]]}"#,
        );
        let g = parse_groupoid(f.path()).unwrap();
        assert_eq!(g.inv(1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn malformed_triple_is_named() {
        let f = file(
            "{\"kind\": \"explicit\", \"units\": [0],\n \"arrows\": [{\"src\": 0, \"rng\": 0}],\n \"compose\": [[0, 0]]}",
        );
        match parse_model(f.path()).unwrap_err() {
            CliError::Parse {
                line, field, message, ..
            } => {
                assert_eq!(line, Some(3));
                assert_eq!(field.as_deref(), Some("compose[0]"));
                assert!(message.contains("[0, 0]"), "{message}");
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let f = file("{\"kind\": \"group\",\n \"cayley\": [[0]");
        assert!(matches!(
            parse_model(f.path()),
            Err(CliError::Parse { line: Some(2), .. })
        ));
    }

    #[test]
    fn stationary_bratteli() {
        let f = file(r#"{"kind": "bratteli", "matrices": [[[2]]], "stationary": true}"#);
        let b = parse_bratteli(f.path()).unwrap();
        assert!(b.is_stationary());
        assert_eq!(b.single_vertex_edges(), Some(2));
    }

    #[test]
    fn sign_module_file() {
        let g = parse_groupoid(file(r#"{"kind": "group", "cayley": [[0, 1], [1, 0]]}"#).path()).unwrap();
        let m = parse_module(file(r#"{"fibers": {"0": 1}, "action": {"1": [[-1]]}}"#).path(), &g).unwrap();
        assert_eq!(m.action(1).get(0, 0), &num_bigint::BigInt::from(-1));
        let bad = parse_module(file(r#"{"fibers": {"0": 1}, "action": {"1": [[2]]}}"#).path(), &g);
        assert!(matches!(bad, Err(CliError::Validation(_))));
    }
}
