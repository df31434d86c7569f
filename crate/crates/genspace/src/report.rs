//! Generative-space visualizations: SVG scatter plots colored by source set
//! and level tile maps, plus the most proximal / most distant pair search.
//!
//! Output is plain text SVG with fixed-precision coordinates, so identical
//! inputs produce byte-identical files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::corpus::{LevelGrid, Role, TileAlphabet};
use crate::dimred::Projection;
use crate::{Error, Result};

/// Colorblind-safe 9-color cycle (Wong palette plus gray), enough for the
/// nine Mario generator sets.
pub const SET_COLORS: [&str; 9] = [
    "#0072b2", "#e69f00", "#009e73", "#cc79a7", "#d55e00", "#56b4e9", "#f0e442", "#999999",
    "#000000",
];

/// Default tile colors keyed by semantic role.
pub fn default_role_palette() -> BTreeMap<Role, String> {
    [
        (Role::Empty, "#ffffff"),
        (Role::Solid, "#4d4d4d"),
        (Role::Enemy, "#d55e00"),
        (Role::Pipe, "#009e73"),
        (Role::Reward, "#e69f00"),
        (Role::Box, "#a0522d"),
        (Role::Goal, "#cc79a7"),
        (Role::PlayerSpawn, "#0072b2"),
        (Role::Other, "#bdbdbd"),
    ]
    .into_iter()
    .map(|(r, c)| (r, c.to_string()))
    .collect()
}

/// Closest and farthest level pair in a projection.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremePairs {
    pub closest: (String, String, f64),
    pub farthest: (String, String, f64),
}

/// Global argmin/argmax distance over all unordered pairs; ties broken by
/// lexicographic pair id.
pub fn find_extreme_pairs(p: &Projection) -> ExtremePairs {
    assert!(p.len() >= 2, "need at least two levels");
    let dist = |i: usize, j: usize| {
        let dx = p.coords[i][0] - p.coords[j][0];
        let dy = p.coords[i][1] - p.coords[j][1];
        (dx * dx + dy * dy).sqrt()
    };
    let pair_ids = |i: usize, j: usize| {
        let a = &p.row_ids[i];
        let b = &p.row_ids[j];
        if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        }
    };
    let mut closest: Option<(String, String, f64)> = None;
    let mut farthest: Option<(String, String, f64)> = None;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            let d = dist(i, j);
            let (a, b) = pair_ids(i, j);
            let better_min = match &closest {
                None => true,
                Some((ca, cb, cd)) => {
                    d < *cd || (d == *cd && (a.as_str(), b.as_str()) < (ca.as_str(), cb.as_str()))
                }
            };
            if better_min {
                closest = Some((a.clone(), b.clone(), d));
            }
            let better_max = match &farthest {
                None => true,
                Some((fa, fb, fd)) => {
                    d > *fd || (d == *fd && (a.as_str(), b.as_str()) < (fa.as_str(), fb.as_str()))
                }
            };
            if better_max {
                farthest = Some((a, b, d));
            }
        }
    }
    ExtremePairs {
        closest: closest.unwrap(),
        farthest: farthest.unwrap(),
    }
}

/// Scatter plot description.
pub struct PlotSpec<'a> {
    pub projection: &'a Projection,
    /// set_label → color; defaults to the 9-color cycle over sorted labels.
    pub set_palette: Option<BTreeMap<String, String>>,
    pub annotate_extremes: bool,
    pub title: String,
}

impl<'a> PlotSpec<'a> {
    pub fn new(projection: &'a Projection, title: impl Into<String>) -> Self {
        PlotSpec {
            projection,
            set_palette: None,
            annotate_extremes: false,
            title: title.into(),
        }
    }
}

fn fmt_coord(v: f64) -> String {
    format!("{v:.2}")
}

/// Render the scatter as an SVG string: one marker per level colored by set,
/// a legend, axes labeled "component 1"/"component 2", optional extreme-pair
/// callouts.
pub fn render_scatter(spec: &PlotSpec) -> String {
    let p = spec.projection;
    let (width, height) = (640.0, 480.0);
    let margin = 60.0;
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for c in &p.coords {
        min_x = min_x.min(c[0]);
        max_x = max_x.max(c[0]);
        min_y = min_y.min(c[1]);
        max_y = max_y.max(c[1]);
    }
    if max_x - min_x < 1e-12 {
        max_x = min_x + 1.0;
    }
    if max_y - min_y < 1e-12 {
        max_y = min_y + 1.0;
    }
    let sx = |x: f64| margin + (x - min_x) / (max_x - min_x) * (width - 2.0 * margin);
    let sy = |y: f64| height - margin - (y - min_y) / (max_y - min_y) * (height - 2.0 * margin);

    let mut labels: Vec<&str> = p.set_labels.iter().map(|s| s.as_str()).collect();
    labels.sort();
    labels.dedup();
    let palette: BTreeMap<&str, String> = labels
        .iter()
        .enumerate()
        .map(|(k, &l)| {
            let color = spec
                .set_palette
                .as_ref()
                .and_then(|m| m.get(l).cloned())
                .unwrap_or_else(|| SET_COLORS[k % SET_COLORS.len()].to_string());
            (l, color)
        })
        .collect();

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    )
    .unwrap();
    writeln!(svg, "  <rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>").unwrap();
    writeln!(
        svg,
        "  <text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">{}</text>",
        width / 2.0,
        xml_escape(&spec.title)
    )
    .unwrap();
    // axes
    writeln!(
        svg,
        "  <line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>",
        m = margin,
        b = height - margin,
        r = width - margin
    )
    .unwrap();
    writeln!(
        svg,
        "  <line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>",
        m = margin,
        t = margin,
        b = height - margin
    )
    .unwrap();
    writeln!(
        svg,
        "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">component 1</text>",
        width / 2.0,
        height - margin / 3.0
    )
    .unwrap();
    writeln!(
        svg,
        "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 {x} {y})\">component 2</text>",
        margin / 3.0,
        height / 2.0,
        x = margin / 3.0,
        y = height / 2.0
    )
    .unwrap();

    if spec.annotate_extremes && p.len() >= 2 {
        let extremes = find_extreme_pairs(p);
        for (ids, color) in [(&extremes.closest, "#009e73"), (&extremes.farthest, "#d55e00")] {
            let find = |id: &str| p.row_ids.iter().position(|r| r == id).unwrap();
            let (i, j) = (find(&ids.0), find(&ids.1));
            writeln!(
                svg,
                "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-dasharray=\"4 3\"/>",
                fmt_coord(sx(p.coords[i][0])),
                fmt_coord(sy(p.coords[i][1])),
                fmt_coord(sx(p.coords[j][0])),
                fmt_coord(sy(p.coords[j][1])),
            )
            .unwrap();
        }
    }

    for i in 0..p.len() {
        writeln!(
            svg,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\" fill-opacity=\"0.7\"/>",
            fmt_coord(sx(p.coords[i][0])),
            fmt_coord(sy(p.coords[i][1])),
            palette[p.set_labels[i].as_str()]
        )
        .unwrap();
    }

    // legend
    for (k, label) in labels.iter().enumerate() {
        let y = margin + k as f64 * 18.0;
        writeln!(
            svg,
            "  <rect x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\"/>",
            width - margin + 6.0,
            y,
            palette[label]
        )
        .unwrap();
        writeln!(
            svg,
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
            width - margin + 20.0,
            y + 9.0,
            xml_escape(label)
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn write_scatter(spec: &PlotSpec, path: &Path) -> Result<()> {
    fs::write(path, render_scatter(spec)).map_err(|e| Error::io(path, e))
}

/// Render a level as an H×W colored grid, one cell per tile.
/// Errors when a role present in the level has no palette entry.
pub fn render_level_tilemap(
    level: &LevelGrid,
    alphabet: &TileAlphabet,
    palette: &BTreeMap<Role, String>,
) -> Result<String> {
    let cell = 16.0;
    let (h, w) = (level.height(), level.width());
    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        w as f64 * cell,
        h as f64 * cell,
        w as f64 * cell,
        h as f64 * cell
    )
    .unwrap();
    for r in 0..h {
        for c in 0..w {
            let role = alphabet.role(level.cell(r, c) as usize);
            let color = palette.get(&role).ok_or_else(|| Error::MissingRoleColor {
                role: role.name().to_string(),
            })?;
            writeln!(
                svg,
                "  <rect x=\"{}\" y=\"{}\" width=\"{cell}\" height=\"{cell}\" fill=\"{color}\" stroke=\"#e0e0e0\" stroke-width=\"0.5\"/>",
                c as f64 * cell,
                r as f64 * cell
            )
            .unwrap();
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn write_level_tilemap(
    level: &LevelGrid,
    alphabet: &TileAlphabet,
    palette: &BTreeMap<Role, String>,
    path: &Path,
) -> Result<()> {
    fs::write(path, render_level_tilemap(level, alphabet, palette)?)
        .map_err(|e| Error::io(path, e))
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
