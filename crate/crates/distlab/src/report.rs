//! Parallel survey driver, survey CSV, SVG heatmap and atomic file output.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use distlab_core::distance::ExtDiameter;
use distlab_core::enumerate::{check_order, enumerate_connected, ConnectedGraphs};
use distlab_core::error::EnumError;
use distlab_core::survey::{survey, SurveyTable};
use rayon::prelude::*;

/// Survey on `threads` workers. Subtrees below a split level are
/// surveyed independently and summed, so the table does not depend on
/// the thread count. `threads <= 1` runs the plain sequential survey.
pub fn survey_parallel(n: usize, force: bool, threads: usize) -> Result<SurveyTable, EnumError> {
    check_order(n, force)?;
    if threads <= 1 || n < 5 {
        return survey(n, force);
    }
    let split = n - 3;
    let roots: Vec<_> = enumerate_connected(split, force)?.collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let parts: Vec<SurveyTable> = pool.install(|| {
        roots
            .into_par_iter()
            .map(|root| {
                let mut t = SurveyTable::new(n);
                for g in ConnectedGraphs::from_root(root, n) {
                    t.record(&g);
                }
                t
            })
            .collect()
    });
    let mut table = SurveyTable::new(n);
    for p in &parts {
        table.merge(p);
    }
    Ok(table)
}

/// `n,d,d2,count` rows for every nonzero cell, `d2 = inf` last.
pub fn survey_csv(t: &SurveyTable) -> String {
    let mut out = String::from("n,d,d2,count\n");
    for (d, d2, c) in t.cells() {
        writeln!(out, "{},{d},{d2},{c}", t.n()).unwrap();
    }
    out
}

const CELL: f64 = 48.0;
const MARGIN: f64 = 56.0;

/// Heatmap of the finite cells: `d` across, `d2` upwards, colour on a
/// log scale of the count, every cell labelled with its count. The
/// lower curve `ceil(d/2)` is drawn in blue and the upper line `d + 2`
/// in red over `d >= 3`.
pub fn survey_svg(t: &SurveyTable) -> String {
    let finite: Vec<(u32, u32, u64)> = t
        .cells()
        .filter_map(|(d, d2, c)| d2.finite().map(|x| (d, x, c)))
        .collect();
    let max_d = finite.iter().map(|c| c.0).max().unwrap_or(1).max(3);
    let max_d2 = finite.iter().map(|c| c.1).max().unwrap_or(1).max(max_d + 2);
    let max_c = finite.iter().map(|c| c.2).max().unwrap_or(1).max(1);
    let infinite: u64 = t
        .cells()
        .filter(|c| c.1 == ExtDiameter::Infinite)
        .map(|c| c.2)
        .sum();

    let width = 2.0 * MARGIN + CELL * max_d as f64;
    let height = 2.0 * MARGIN + CELL * max_d2 as f64;
    // column d occupies [x(d) - CELL, x(d)), row d2 likewise upwards
    let x = |d: f64| MARGIN + CELL * d;
    let y = |d2: f64| height - MARGIN - CELL * d2;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">n = {}: diam(G) vs diam(G2), {} graphs ({} with G2 disconnected)</text>"#,
        width / 2.0,
        t.n(),
        t.total(),
        infinite
    )
    .unwrap();
    for &(d, d2, c) in &finite {
        let level = if max_c > 1 {
            (c as f64).ln() / (max_c as f64).ln()
        } else {
            1.0
        };
        let (r, g, b) = ramp(level);
        writeln!(
            s,
            r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="rgb({r},{g},{b})" stroke="white"/>"#,
            x(d as f64 - 1.0),
            y(d2 as f64)
        )
        .unwrap();
        let text = if level > 0.6 { "white" } else { "black" };
        writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle" fill="{text}">{c}</text>"#,
            x(d as f64 - 0.5),
            y(d2 as f64 - 0.5) + 4.0
        )
        .unwrap();
    }

    // axes and ticks
    writeln!(
        s,
        r#"<path d="M{} {} V{} H{}" fill="none" stroke="black"/>"#,
        x(0.0),
        y(max_d2 as f64),
        y(0.0),
        x(max_d as f64)
    )
    .unwrap();
    for d in 1..=max_d {
        writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{d}</text>"#,
            x(d as f64 - 0.5),
            y(0.0) + 16.0
        )
        .unwrap();
    }
    for d2 in 1..=max_d2 {
        writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{d2}</text>"#,
            x(0.0) - 6.0,
            y(d2 as f64 - 0.5) + 4.0
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">d</text>"#,
        width / 2.0,
        height - 12.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">d2</text>"#,
        height / 2.0,
        height / 2.0
    )
    .unwrap();

    // bound curves through the cell centres
    let points = |f: &dyn Fn(u32) -> u32| -> String {
        (3..=max_d)
            .map(|d| format!("{},{}", x(d as f64 - 0.5), y(f(d) as f64 - 0.5)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    writeln!(
        s,
        r#"<polyline points="{}" fill="none" stroke="blue" stroke-width="2"/>"#,
        points(&|d| d.div_ceil(2))
    )
    .unwrap();
    writeln!(
        s,
        r#"<polyline points="{}" fill="none" stroke="red" stroke-width="2"/>"#,
        points(&|d| d + 2)
    )
    .unwrap();
    s.push_str("</svg>\n");
    s
}

/// Pale yellow to dark purple.
fn ramp(level: f64) -> (u8, u8, u8) {
    let l = level.clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64| (a + (b - a) * l).round() as u8;
    (lerp(255.0, 68.0), lerp(245.0, 1.0), lerp(190.0, 84.0))
}

/// Writes through a temporary file in the target directory, then
/// renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        for n in 5..=8 {
            let seq = survey(n, false).unwrap();
            for threads in [2, 4] {
                assert_eq!(survey_parallel(n, false, threads).unwrap(), seq, "n={n}");
            }
        }
    }

    #[test]
    fn csv_layout() {
        let t = survey(4, false).unwrap();
        let csv = survey_csv(&t);
        assert!(csv.starts_with("n,d,d2,count\n4,1,inf,1\n"));
        assert!(csv.ends_with("4,3,inf,1\n"));
        let total: u64 = csv
            .lines()
            .skip(1)
            .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
            .sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn svg_has_cells_and_bounds() {
        let t = survey(6, false).unwrap();
        let svg = survey_svg(&t);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        let finite = t.cells().filter(|c| c.1.is_finite()).count();
        assert_eq!(svg.matches("<rect").count(), finite);
        assert!(svg.contains(r#"stroke="blue""#) && svg.contains(r#"stroke="red""#));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.csv");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
