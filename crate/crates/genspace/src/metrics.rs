//! Behavioral characteristics: per-level scalar heuristics of emergent
//! level properties (empty space, linearity, enemy count, contiguity).

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::corpus::{LevelCorpus, LevelGrid, Role, TileAlphabet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BcKind {
    EmptySpace,
    Linearity,
    EnemyCount,
    Contiguity,
}

impl BcKind {
    pub fn name(&self) -> &'static str {
        match self {
            BcKind::EmptySpace => "empty_space",
            BcKind::Linearity => "linearity",
            BcKind::EnemyCount => "enemy_count",
            BcKind::Contiguity => "contiguity",
        }
    }
}

impl fmt::Display for BcKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BcKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "empty_space" | "es" => Ok(BcKind::EmptySpace),
            "linearity" | "lin" => Ok(BcKind::Linearity),
            "enemy_count" | "ec" => Ok(BcKind::EnemyCount),
            "contiguity" | "contig" => Ok(BcKind::Contiguity),
            other => Err(Error::Config(format!("unknown BC '{other}'"))),
        }
    }
}

/// Which BCs to compute for a game, plus the solid-tile policy.
#[derive(Debug, Clone)]
pub struct BcProfile {
    pub bcs: Vec<BcKind>,
    /// Whether pipe tiles count as solid for linearity/contiguity.
    /// Pipes block horizontal traversal in Mario, so the default is true.
    pub pipe_as_solid: bool,
}

impl BcProfile {
    pub fn mario() -> Self {
        BcProfile {
            bcs: vec![BcKind::EmptySpace, BcKind::Linearity, BcKind::EnemyCount],
            pipe_as_solid: true,
        }
    }

    pub fn sokoban() -> Self {
        BcProfile {
            bcs: vec![BcKind::EmptySpace, BcKind::Contiguity],
            pipe_as_solid: false,
        }
    }

    /// Lode Runner: empty space plus enemy count (a simple leniency proxy).
    pub fn loderunner() -> Self {
        BcProfile {
            bcs: vec![BcKind::EmptySpace, BcKind::EnemyCount],
            pipe_as_solid: false,
        }
    }

    pub fn synthetic() -> Self {
        BcProfile {
            bcs: vec![BcKind::EmptySpace, BcKind::Linearity, BcKind::Contiguity],
            pipe_as_solid: false,
        }
    }
}

/// BC values of one level.
#[derive(Debug, Clone, PartialEq)]
pub struct BcVector {
    pub level_id: String,
    pub set_label: String,
    pub values: BTreeMap<BcKind, f64>,
}

impl BcVector {
    pub fn get(&self, bc: BcKind) -> Option<f64> {
        self.values.get(&bc).copied()
    }
}

fn is_solid(role: Role, pipe_as_solid: bool) -> bool {
    role == Role::Solid || (pipe_as_solid && role == Role::Pipe)
}

/// Count of empty-role cells.
pub fn bc_empty_space(level: &LevelGrid, alphabet: &TileAlphabet) -> usize {
    level
        .cells()
        .iter()
        .filter(|&&c| alphabet.role(c as usize) == Role::Empty)
        .count()
}

/// Count of enemy-role cells. Errors when the alphabet has no enemy role.
pub fn bc_enemy_count(level: &LevelGrid, alphabet: &TileAlphabet) -> Result<usize> {
    if !alphabet.has_role(Role::Enemy) {
        return Err(Error::UnsupportedBc {
            bc: BcKind::EnemyCount.name().to_string(),
            reason: "alphabet has no enemy role".to_string(),
        });
    }
    Ok(level
        .cells()
        .iter()
        .filter(|&&c| alphabet.role(c as usize) == Role::Enemy)
        .count())
}

/// Horizontally adjacent solid pairs: unordered ((r,c),(r,c+1)) with both solid.
pub fn bc_linearity(level: &LevelGrid, alphabet: &TileAlphabet, pipe_as_solid: bool) -> usize {
    let mut count = 0;
    for r in 0..level.height() {
        for c in 0..level.width().saturating_sub(1) {
            if is_solid(alphabet.role(level.cell(r, c) as usize), pipe_as_solid)
                && is_solid(alphabet.role(level.cell(r, c + 1) as usize), pipe_as_solid)
            {
                count += 1;
            }
        }
    }
    count
}

/// 4-neighbor solid pairs (horizontal + vertical), each counted once.
pub fn bc_contiguity(level: &LevelGrid, alphabet: &TileAlphabet, pipe_as_solid: bool) -> usize {
    let mut count = bc_linearity(level, alphabet, pipe_as_solid);
    for r in 0..level.height().saturating_sub(1) {
        for c in 0..level.width() {
            if is_solid(alphabet.role(level.cell(r, c) as usize), pipe_as_solid)
                && is_solid(alphabet.role(level.cell(r + 1, c) as usize), pipe_as_solid)
            {
                count += 1;
            }
        }
    }
    count
}

/// One BcVector per level, order-aligned with the corpus.
pub fn bc_profile(corpus: &LevelCorpus, profile: &BcProfile) -> Result<Vec<BcVector>> {
    let alphabet = corpus.alphabet();
    let mut out = Vec::with_capacity(corpus.len());
    for level in corpus.levels() {
        let mut values = BTreeMap::new();
        for &bc in &profile.bcs {
            let v = match bc {
                BcKind::EmptySpace => bc_empty_space(level, alphabet) as f64,
                BcKind::EnemyCount => bc_enemy_count(level, alphabet)? as f64,
                BcKind::Linearity => bc_linearity(level, alphabet, profile.pipe_as_solid) as f64,
                BcKind::Contiguity => bc_contiguity(level, alphabet, profile.pipe_as_solid) as f64,
            };
            values.insert(bc, v);
        }
        out.push(BcVector {
            level_id: level.level_id().to_string(),
            set_label: level.set_label().to_string(),
            values,
        });
    }
    Ok(out)
}

/// Dump as delimited text: level_id, set_label, bc_name, value.
pub fn write_bc_csv(bcs: &[BcVector], path: &Path) -> Result<()> {
    let mut out = String::from("level_id,set_label,bc_name,value\n");
    for bc in bcs {
        for (kind, value) in &bc.values {
            out.push_str(&format!(
                "{},{},{},{}\n",
                bc.level_id, bc.set_label, kind, value
            ));
        }
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Read a BC dump written by [`write_bc_csv`], preserving level order.
pub fn read_bc_csv(path: &Path) -> Result<Vec<BcVector>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let fname = path.display().to_string();
    let mut order: Vec<String> = Vec::new();
    let mut by_id: BTreeMap<String, BcVector> = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        if lineno == 0 {
            if line != "level_id,set_label,bc_name,value" {
                return Err(Error::Parse {
                    file: fname,
                    line: 1,
                    message: "unrecognized BC dump header".into(),
                });
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                file: fname,
                line: lineno + 1,
                message: format!("expected 4 fields, found {}", fields.len()),
            });
        }
        let kind: BcKind = fields[2].parse()?;
        let value: f64 = fields[3].parse().map_err(|_| Error::Parse {
            file: fname.clone(),
            line: lineno + 1,
            message: format!("bad value '{}'", fields[3]),
        })?;
        let entry = by_id.entry(fields[0].to_string()).or_insert_with(|| {
            order.push(fields[0].to_string());
            BcVector {
                level_id: fields[0].to_string(),
                set_label: fields[1].to_string(),
                values: BTreeMap::new(),
            }
        });
        entry.values.insert(kind, value);
    }
    Ok(order.into_iter().map(|id| by_id.remove(&id).unwrap()).collect())
}
