//! SVG rendering of a terrain plus a result.
//!
//! Polygon results draw the terrain and the polygon as two `path` elements;
//! segment results draw the terrain as a `polygon` and the segment as a
//! `line`. An optional grid overlay adds one more `path`.

use std::fmt::Write as _;
use std::path::Path;

use crate::fptas::Grid;
use crate::geom::Point;
use crate::io::ResultRecord;
use crate::terrain::Terrain;

pub fn render_svg(
    t: &Terrain,
    record: &ResultRecord,
    grid: Option<&Grid>,
    path: &Path,
) -> std::io::Result<()> {
    std::fs::write(path, svg_string(t, record, grid))
}

pub fn svg_string(t: &Terrain, record: &ResultRecord, grid: Option<&Grid>) -> String {
    let (lo, hi) = t.bbox();
    let w = (hi.x - lo.x).max(1e-9);
    let h = (hi.y - lo.y).max(1e-9);
    let pad_x = 0.05 * w;
    let pad_y = 0.05 * h;
    // Flip y inside the box so the terrain is drawn upright.
    let fy = |y: f64| hi.y - y;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        lo.x - pad_x,
        -pad_y,
        w + 2.0 * pad_x,
        h + 2.0 * pad_y
    );

    let stroke_w = 0.004 * w.max(h);
    let terrain_pts: Vec<Point> = t.chain().to_vec();
    let result_pts = record.points();
    let segment_result = result_pts.len() == 2;

    if let Some(g) = grid {
        let mut d = String::new();
        for f in &g.fine {
            let o = f.cell.origin;
            let m = f.cell.max_corner();
            let _ = write!(
                d,
                "M{} {}H{}V{}H{}Z",
                o.x,
                fy(o.y),
                m.x,
                fy(m.y),
                o.x
            );
        }
        let _ = writeln!(
            out,
            r#"<path d="{d}" fill="none" stroke="#bbbbbb" stroke-width="{}"/>"#,
            stroke_w * 0.5
        );
    }

    if segment_result {
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="#d8e8d0" stroke="#557755" stroke-width="{stroke_w}"/>"#,
            terrain_pts
                .iter()
                .map(|p| format!("{},{}", p.x, fy(p.y)))
                .collect::<Vec<_>>()
                .join(" ")
        );
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#cc3333" stroke-width="{}"/>"#,
            result_pts[0].x,
            fy(result_pts[0].y),
            result_pts[1].x,
            fy(result_pts[1].y),
            stroke_w * 1.5
        );
    } else {
        let _ = writeln!(
            out,
            r#"<path d="{}" fill="#d8e8d0" stroke="#557755" stroke-width="{stroke_w}"/>"#,
            path_of(&terrain_pts, fy)
        );
        let _ = writeln!(
            out,
            r#"<path d="{}" fill="none" stroke="#cc3333" stroke-width="{}"/>"#,
            path_of(&result_pts, fy),
            stroke_w * 1.5
        );
    }
    out.push_str("</svg>\n");
    out
}

fn path_of(pts: &[Point], fy: impl Fn(f64) -> f64) -> String {
    let mut d = String::new();
    for (i, p) in pts.iter().enumerate() {
        let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { "L" }, p.x, fy(p.y));
    }
    d.push('Z');
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{ConfigEcho, MeasureKind, Problem};

    fn t1() -> Terrain {
        Terrain::build(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 2.0),
            Point::new(2.0, 0.0),
        ])
        .unwrap()
    }

    fn record(problem: Problem, vertices: Vec<[f64; 2]>) -> ResultRecord {
        ResultRecord {
            problem,
            measure: MeasureKind::Length,
            value: 0.0,
            vertices,
            config: ConfigEcho {
                k: None,
                epsilon: None,
                tie_break: "lexicographic".into(),
                tolerance: 1e-9,
            },
            wall_time_ms: 0,
            oracle: None,
        }
    }

    #[test]
    fn triangle_renders_two_paths() {
        let t = t1();
        let r = record(
            Problem::Triangle,
            vec![[0.0, 0.0], [2.0, 0.0], [1.0, 2.0]],
        );
        let svg = svg_string(&t, &r, None);
        assert_eq!(svg.matches("<path").count(), 2);
        assert_eq!(svg.matches("<line").count(), 0);

        let grid = crate::fptas::build_grid(&t, 3, 0.5, 2.0 * 5.0_f64.sqrt());
        let svg = svg_string(&t, &r, Some(&grid));
        assert_eq!(svg.matches("<path").count(), 3);
    }

    #[test]
    fn diameter_renders_polygon_and_line() {
        let t = t1();
        let r = record(Problem::Diameter, vec![[0.0, 0.0], [1.0, 2.0]]);
        let svg = svg_string(&t, &r, None);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<line").count(), 1);
    }
}
