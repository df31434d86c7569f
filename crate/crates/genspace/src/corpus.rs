//! Level corpora: tile alphabets, level grids, the three corpus parsers
//! (VGLC, Mario, Boxoban) and stratified sampling.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::index::sample as index_sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Semantic role of a tile symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Empty,
    Solid,
    Enemy,
    Pipe,
    Reward,
    Box,
    Goal,
    PlayerSpawn,
    Other,
}

impl Role {
    pub fn name(&self) -> &'static str {
        match self {
            Role::Empty => "empty",
            Role::Solid => "solid",
            Role::Enemy => "enemy",
            Role::Pipe => "pipe",
            Role::Reward => "reward",
            Role::Box => "box",
            Role::Goal => "goal",
            Role::PlayerSpawn => "player-spawn",
            Role::Other => "other",
        }
    }

    pub fn from_name(name: &str) -> Option<Role> {
        Some(match name {
            "empty" => Role::Empty,
            "solid" => Role::Solid,
            "enemy" => Role::Enemy,
            "pipe" => Role::Pipe,
            "reward" => Role::Reward,
            "box" => Role::Box,
            "goal" => Role::Goal,
            "player-spawn" => Role::PlayerSpawn,
            "other" => Role::Other,
            _ => return None,
        })
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ordered set of distinct tile symbols with their semantic roles.
/// Declaration order fixes tile-type indices, so encodings are stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileAlphabet {
    symbols: Vec<char>,
    roles: Vec<Role>,
}

impl TileAlphabet {
    /// At least one symbol must carry the `empty` role; symbols must be unique.
    pub fn new(entries: Vec<(char, Role)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (sym, _) in &entries {
            if !seen.insert(*sym) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol '{sym}'")));
            }
        }
        if !entries.iter().any(|(_, r)| *r == Role::Empty) {
            return Err(Error::InvalidAlphabet(
                "no symbol has the 'empty' role".into(),
            ));
        }
        let (symbols, roles) = entries.into_iter().unzip();
        Ok(TileAlphabet { symbols, roles })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn index_of(&self, symbol: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == symbol)
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    pub fn role(&self, index: usize) -> Role {
        self.roles[index]
    }

    pub fn has_role(&self, role: Role) -> bool {
        self.roles.contains(&role)
    }

    /// Parse a key-value alphabet config: one `symbol=role` entry per line,
    /// `#` comments and blank lines ignored. A space symbol is written `\s`,
    /// a literal backslash `\\` and a literal `#` as `\h`.
    pub fn from_config(text: &str, origin: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (sym_part, role_part) = line.split_once('=').ok_or_else(|| Error::Parse {
                file: origin.to_string(),
                line: lineno + 1,
                message: "expected 'symbol=role'".into(),
            })?;
            let sym = unescape_symbol(sym_part).ok_or_else(|| Error::Parse {
                file: origin.to_string(),
                line: lineno + 1,
                message: format!("'{sym_part}' is not a single symbol"),
            })?;
            let role = Role::from_name(role_part.trim()).ok_or_else(|| Error::Parse {
                file: origin.to_string(),
                line: lineno + 1,
                message: format!("unknown role '{}'", role_part.trim()),
            })?;
            entries.push((sym, role));
        }
        TileAlphabet::new(entries)
    }
}

fn unescape_symbol(s: &str) -> Option<char> {
    match s {
        "\\s" => Some(' '),
        "\\\\" => Some('\\'),
        "\\h" => Some('#'),
        _ => {
            let mut chars = s.chars();
            let c = chars.next()?;
            if chars.next().is_some() {
                None
            } else {
                Some(c)
            }
        }
    }
}

/// Load a raw→simplified symbol mapping from key-value text (`raw=simplified`
/// per line, same escaping and comment rules as the alphabet config).
pub fn load_symbol_mapping(text: &str, origin: &str) -> Result<BTreeMap<char, char>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (from, to) = line.split_once('=').ok_or_else(|| Error::Parse {
            file: origin.to_string(),
            line: lineno + 1,
            message: "expected 'raw=simplified'".into(),
        })?;
        let parse = |part: &str| {
            unescape_symbol(part.trim_end()).ok_or_else(|| Error::Parse {
                file: origin.to_string(),
                line: lineno + 1,
                message: format!("'{part}' is not a single symbol"),
            })
        };
        map.insert(parse(from)?, parse(to)?);
    }
    Ok(map)
}

/// One level: an H×W grid of tile-symbol indices into its corpus alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelGrid {
    cells: Vec<u8>,
    height: usize,
    width: usize,
    set_label: String,
    level_id: String,
}

impl LevelGrid {
    pub fn new(
        cells: Vec<u8>,
        height: usize,
        width: usize,
        set_label: String,
        level_id: String,
    ) -> Self {
        assert_eq!(cells.len(), height * width, "cell count must be H*W");
        LevelGrid {
            cells,
            height,
            width,
            set_label,
            level_id,
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn set_label(&self) -> &str {
        &self.set_label
    }

    pub fn level_id(&self) -> &str {
        &self.level_id
    }

    /// Symbol index at (row, col).
    pub fn cell(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.width + col]
    }

    /// Row-major cell indices.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn with_identity(&self, set_label: String, level_id: String) -> LevelGrid {
        LevelGrid {
            cells: self.cells.clone(),
            height: self.height,
            width: self.width,
            set_label,
            level_id,
        }
    }

    /// Serialize back to the plain-text row format.
    pub fn to_text(&self, alphabet: &TileAlphabet) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for r in 0..self.height {
            for c in 0..self.width {
                out.push(alphabet.symbol(self.cell(r, c) as usize));
            }
            out.push('\n');
        }
        out
    }
}

/// A named collection of uniform-size levels grouped by source set.
#[derive(Debug, Clone)]
pub struct LevelCorpus {
    alphabet: TileAlphabet,
    levels: Vec<LevelGrid>,
}

impl LevelCorpus {
    /// Enforces the uniform-size and unique-id invariants.
    pub fn new(alphabet: TileAlphabet, levels: Vec<LevelGrid>) -> Result<Self> {
        if let Some(first) = levels.first() {
            let (h, w) = (first.height, first.width);
            let offenders: Vec<String> = levels
                .iter()
                .filter(|l| l.height != h || l.width != w)
                .map(|l| l.level_id.clone())
                .collect();
            if !offenders.is_empty() {
                return Err(Error::SizeMismatch {
                    expected_h: h,
                    expected_w: w,
                    offenders,
                });
            }
            let mut ids = BTreeSet::new();
            for l in &levels {
                if !ids.insert(l.level_id.as_str()) {
                    return Err(Error::InvalidAlphabet(format!(
                        "duplicate level id '{}'",
                        l.level_id
                    )));
                }
            }
        }
        Ok(LevelCorpus { alphabet, levels })
    }

    pub fn alphabet(&self) -> &TileAlphabet {
        &self.alphabet
    }

    pub fn levels(&self) -> &[LevelGrid] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn height(&self) -> usize {
        self.levels.first().map_or(0, |l| l.height)
    }

    pub fn width(&self) -> usize {
        self.levels.first().map_or(0, |l| l.width)
    }

    /// Set labels with member counts, sorted by label.
    pub fn sets(&self) -> Vec<(String, usize)> {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for l in &self.levels {
            *counts.entry(l.set_label.as_str()).or_default() += 1;
        }
        counts
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect()
    }

    /// Persist to the VGLC-style format: one text file per level under
    /// `dir/<set_label>/`, named by the level id's file stem.
    pub fn write_vglc(&self, dir: &Path) -> Result<()> {
        for level in &self.levels {
            let set_dir = dir.join(&level.set_label);
            fs::create_dir_all(&set_dir).map_err(|e| Error::io(&set_dir, e))?;
            let stem = level
                .level_id
                .rsplit('/')
                .next()
                .unwrap_or(&level.level_id)
                .replace('#', "_");
            let path = set_dir.join(format!("{stem}.txt"));
            fs::write(&path, level.to_text(&self.alphabet)).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }
}

/// The simplified five-type Mario alphabet.
pub fn mario_alphabet() -> TileAlphabet {
    TileAlphabet::new(vec![
        ('-', Role::Empty),
        ('E', Role::Enemy),
        ('X', Role::Solid),
        ('P', Role::Pipe),
        ('R', Role::Reward),
    ])
    .expect("static alphabet")
}

/// Default raw→simplified mapping for VGLC-style Mario level files.
/// Editable via a mapping config file; this is the shipped default.
pub fn default_mario_mapping() -> BTreeMap<char, char> {
    [
        ('-', '-'),
        ('E', 'E'),
        ('g', 'E'),
        ('k', 'E'),
        ('r', 'E'),
        ('y', 'E'),
        ('X', 'X'),
        ('#', 'X'),
        ('%', 'X'),
        ('B', 'X'),
        ('b', 'X'),
        ('S', 'X'),
        ('D', 'X'),
        ('U', 'X'),
        ('t', 'P'),
        ('T', 'P'),
        ('<', 'P'),
        ('>', 'P'),
        ('[', 'P'),
        (']', 'P'),
        ('?', 'R'),
        ('Q', 'R'),
        ('C', 'R'),
        ('L', 'R'),
        ('o', 'R'),
        ('@', 'R'),
        ('!', 'R'),
    ]
    .into_iter()
    .collect()
}

/// Boxoban tile alphabet: wall, floor, pushable box, goal, player spawn.
pub fn boxoban_alphabet() -> TileAlphabet {
    TileAlphabet::new(vec![
        ('#', Role::Solid),
        (' ', Role::Empty),
        ('$', Role::Box),
        ('.', Role::Goal),
        ('@', Role::PlayerSpawn),
    ])
    .expect("static alphabet")
}

/// Lode Runner VGLC alphabet.
pub fn loderunner_alphabet() -> TileAlphabet {
    TileAlphabet::new(vec![
        ('.', Role::Empty),
        ('b', Role::Solid),
        ('B', Role::Solid),
        ('#', Role::Other),
        ('G', Role::Reward),
        ('E', Role::Enemy),
        ('M', Role::PlayerSpawn),
        ('-', Role::Other),
    ])
    .expect("static alphabet")
}

/// Minimal two-symbol alphabet used by the synthetic generators.
pub fn binary_alphabet() -> TileAlphabet {
    TileAlphabet::new(vec![('-', Role::Empty), ('#', Role::Solid)]).expect("static alphabet")
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn sorted_entries(dir: &Path, want_dirs: bool) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    let rd = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    for entry in rd {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        let is_dir = path.is_dir();
        if is_dir == want_dirs && (is_dir || !path.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.'))) {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn dir_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Parse one grid from plain text: one row of symbols per line.
fn parse_grid_text(
    text: &str,
    alphabet: &TileAlphabet,
    file: &str,
    line_offset: usize,
    set_label: &str,
    level_id: &str,
) -> Result<LevelGrid> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.is_empty()).collect();
    if lines.is_empty() {
        return Err(Error::Parse {
            file: file.to_string(),
            line: line_offset + 1,
            message: "empty level".into(),
        });
    }
    let width = lines[0].chars().count();
    let mut cells = Vec::with_capacity(lines.len() * width);
    for (r, row) in lines.iter().enumerate() {
        let row_len = row.chars().count();
        if row_len != width {
            return Err(Error::Parse {
                file: file.to_string(),
                line: line_offset + r + 1,
                message: format!("ragged row: expected width {width}, found {row_len}"),
            });
        }
        for (c, sym) in row.chars().enumerate() {
            let idx = alphabet.index_of(sym).ok_or(Error::UnknownSymbol {
                symbol: sym,
                file: file.to_string(),
                row: r,
                col: c,
            })?;
            cells.push(idx as u8);
        }
    }
    Ok(LevelGrid::new(
        cells,
        lines.len(),
        width,
        set_label.to_string(),
        level_id.to_string(),
    ))
}

/// Parse a directory of single-level text files (VGLC convention).
/// The directory name becomes the set label.
pub fn parse_vglc(path: &Path, alphabet: &TileAlphabet) -> Result<LevelCorpus> {
    let set_label = dir_name(path);
    let mut levels = Vec::new();
    for file in sorted_entries(path, false)? {
        let text = read_to_string(&file)?;
        let stem = file_stem(&file);
        let level_id = format!("{set_label}/{stem}");
        levels.push(parse_grid_text(
            &text,
            alphabet,
            &file.display().to_string(),
            0,
            &set_label,
            &level_id,
        )?);
    }
    LevelCorpus::new(alphabet.clone(), levels)
}

/// Parse a Mario corpus: one subdirectory per generator, 16×200 raw levels
/// mapped to the simplified five-type alphabet.
pub fn parse_mario(path: &Path, raw_to_simplified: &BTreeMap<char, char>) -> Result<LevelCorpus> {
    const MARIO_H: usize = 16;
    const MARIO_W: usize = 200;
    let alphabet = mario_alphabet();
    for (raw, simplified) in raw_to_simplified {
        if alphabet.index_of(*simplified).is_none() {
            return Err(Error::Config(format!(
                "mapping sends '{raw}' to '{simplified}', not a simplified Mario symbol"
            )));
        }
    }
    let mut levels = Vec::new();
    let subdirs = sorted_entries(path, true)?;
    let set_dirs = if subdirs.is_empty() {
        vec![path.to_path_buf()]
    } else {
        subdirs
    };
    for set_dir in set_dirs {
        let set_label = dir_name(&set_dir);
        for file in sorted_entries(&set_dir, false)? {
            let text = read_to_string(&file)?;
            let fname = file.display().to_string();
            let mut mapped = String::with_capacity(text.len());
            for (lineno, line) in text.lines().filter(|l| !l.is_empty()).enumerate() {
                for (c, raw) in line.chars().enumerate() {
                    let simplified =
                        raw_to_simplified
                            .get(&raw)
                            .copied()
                            .ok_or(Error::UnknownSymbol {
                                symbol: raw,
                                file: fname.clone(),
                                row: lineno,
                                col: c,
                            })?;
                    mapped.push(simplified);
                }
                mapped.push('\n');
            }
            let stem = file_stem(&file);
            let level_id = format!("{set_label}/{stem}");
            let grid = parse_grid_text(&mapped, &alphabet, &fname, 0, &set_label, &level_id)?;
            if grid.height() != MARIO_H || grid.width() != MARIO_W {
                return Err(Error::SizeMismatch {
                    expected_h: MARIO_H,
                    expected_w: MARIO_W,
                    offenders: vec![level_id],
                });
            }
            levels.push(grid);
        }
    }
    LevelCorpus::new(alphabet, levels)
}

const BOXOBAN_SIDE: usize = 10;

/// Parse a Boxoban corpus: multi-level text files where each level is a
/// `;`-prefixed id line followed by ten lines of ten symbols. If `path`
/// contains subdirectories (unfiltered/medium/hard), each becomes a set;
/// otherwise `path` itself is one set.
pub fn parse_boxoban(path: &Path) -> Result<LevelCorpus> {
    let alphabet = boxoban_alphabet();
    let subdirs = sorted_entries(path, true)?;
    let set_dirs = if subdirs.is_empty() {
        vec![path.to_path_buf()]
    } else {
        subdirs
    };
    let mut levels = Vec::new();
    for set_dir in set_dirs {
        let set_label = dir_name(&set_dir);
        for file in sorted_entries(&set_dir, false)? {
            let text = read_to_string(&file)?;
            let fname = file.display().to_string();
            let stem = file_stem(&file);
            parse_boxoban_file(&text, &fname, &alphabet, &set_label, &stem, &mut levels)?;
        }
    }
    LevelCorpus::new(alphabet, levels)
}

fn parse_boxoban_file(
    text: &str,
    fname: &str,
    alphabet: &TileAlphabet,
    set_label: &str,
    stem: &str,
    levels: &mut Vec<LevelGrid>,
) -> Result<()> {
    let lines: Vec<&str> = text.lines().collect();
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i].trim_end();
        if line.is_empty() {
            i += 1;
            continue;
        }
        if !line.starts_with(';') {
            return Err(Error::Parse {
                file: fname.to_string(),
                line: i + 1,
                message: format!("expected ';'-prefixed level id line, found '{line}'"),
            });
        }
        let block_id = line[1..].trim().to_string();
        let start = i + 1;
        let mut block = Vec::new();
        let mut j = start;
        while j < lines.len() && !lines[j].trim_end().is_empty() && !lines[j].starts_with(';') {
            block.push(lines[j].trim_end());
            j += 1;
        }
        if block.len() != BOXOBAN_SIDE {
            return Err(Error::Parse {
                file: fname.to_string(),
                line: start + 1,
                message: format!(
                    "level '{block_id}' has {} lines, expected {BOXOBAN_SIDE}",
                    block.len()
                ),
            });
        }
        let level_id = format!("{set_label}/{stem}#{block_id}");
        let grid = parse_grid_text(
            &block.join("\n"),
            alphabet,
            fname,
            start,
            set_label,
            &level_id,
        )?;
        if grid.width() != BOXOBAN_SIDE {
            return Err(Error::Parse {
                file: fname.to_string(),
                line: start + 1,
                message: format!(
                    "level '{block_id}' has width {}, expected {BOXOBAN_SIDE}",
                    grid.width()
                ),
            });
        }
        levels.push(grid);
        i = j;
    }
    Ok(())
}

/// Draw `total` levels without replacement, evenly split across source sets.
/// The remainder goes to the largest sets, ties broken alphabetically.
/// Deterministic for a fixed seed.
pub fn sample_stratified(corpus: &LevelCorpus, total: usize, seed: u64) -> Result<LevelCorpus> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if total > corpus.len() {
        return Err(Error::Config(format!(
            "sample size {total} exceeds corpus size {}",
            corpus.len()
        )));
    }
    // set name -> level indices, in corpus order
    let mut by_set: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, l) in corpus.levels.iter().enumerate() {
        by_set.entry(l.set_label.as_str()).or_default().push(i);
    }
    let n_sets = by_set.len();
    let base = total / n_sets;
    let remainder = total % n_sets;

    // remainder goes to sets in descending size order, ties alphabetical
    let mut order: Vec<&str> = by_set.keys().copied().collect();
    order.sort_by(|a, b| by_set[b].len().cmp(&by_set[a].len()).then(a.cmp(b)));
    let mut quota: BTreeMap<&str, usize> = by_set.keys().map(|&k| (k, base)).collect();
    for set in order.iter().take(remainder) {
        *quota.get_mut(set).unwrap() += 1;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut selected = Vec::with_capacity(total);
    for (set, indices) in &by_set {
        let q = quota[set];
        if indices.len() < q {
            return Err(Error::InsufficientLevels {
                set: set.to_string(),
                quota: q,
                available: indices.len(),
            });
        }
        let chosen = index_sample(&mut rng, indices.len(), q);
        for k in chosen.iter() {
            selected.push(indices[k]);
        }
    }
    selected.sort_unstable();
    let levels = selected
        .into_iter()
        .map(|i| corpus.levels[i].clone())
        .collect();
    LevelCorpus::new(corpus.alphabet.clone(), levels)
}
