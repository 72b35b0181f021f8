//! CSV and SVG rendering of wall loci, and the two reference figures: the
//! surface picture in `(t₁+t₂, t₁t₂)` and the Hilbert-scheme picture in
//! `(−Σt_i, Σt_it_j)`.

use std::fmt::Write as _;

use redstab_core::charge::LatticeVector;
use redstab_core::num::{frac, int, to_f64};
use redstab_core::walls::{
    hilb_boundary, hilb_bounds, hilb_charge, hilb_interior, hilb_root_line, sb_v_surface, CoordSystem,
    LocusPoint, Viewport, WallLocus,
};
use redstab_core::Result;

/// Sample count of the reference figures.
pub const FIGURE_SAMPLES: usize = 401;
/// Degree of the curve class in the default Hilbert-scheme figure.
pub const FIGURE4_M: u64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stroke {
    Solid,
    Dashed,
    Dotted,
}

/// One drawn locus.
#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    pub label: String,
    pub color: &'static str,
    pub stroke: Stroke,
    pub width: f64,
    pub points: Vec<LocusPoint>,
    /// Break the polyline where consecutive samples are unusually far
    /// apart (clipped stretches of a uniformly sampled line).
    pub split_gaps: bool,
}

impl Layer {
    pub fn from_locus(locus: &WallLocus, label: &str, color: &'static str, stroke: Stroke) -> Self {
        Layer {
            label: label.to_string(),
            color,
            stroke,
            width: 2.0,
            points: locus.points.clone(),
            split_gaps: true,
        }
    }

    fn segments(&self) -> Vec<Vec<(f64, f64)>> {
        let pts: Vec<(f64, f64)> = self.points.iter().map(|p| (p.x, p.y)).collect();
        if pts.is_empty() {
            return Vec::new();
        }
        let dist = |a: (f64, f64), b: (f64, f64)| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
        let min_step = pts
            .windows(2)
            .map(|w| dist(w[0], w[1]))
            .filter(|d| *d > 0.0)
            .fold(f64::INFINITY, f64::min);
        let mut out = vec![vec![pts[0]]];
        for w in pts.windows(2) {
            if self.split_gaps && dist(w[0], w[1]) > 1.5 * min_step {
                out.push(Vec::new());
            }
            out.last_mut().unwrap().push(w[1]);
        }
        out
    }
}

/// A titled set of layers over a viewport.
#[derive(Clone, Debug, PartialEq)]
pub struct Plot {
    pub title: String,
    pub coords: CoordSystem,
    pub view: Viewport,
    pub layers: Vec<Layer>,
}

impl Plot {
    pub fn is_empty(&self) -> bool {
        self.layers.iter().all(|l| l.points.is_empty())
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut w: Vec<String> = self
            .layers
            .iter()
            .filter(|l| l.points.is_empty())
            .map(|l| format!("EmptyLocus: {}", l.label))
            .collect();
        if self.layers.is_empty() {
            w.push("EmptyLocus: no layers".to_string());
        }
        w
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    if s == "-0" || s.is_empty() {
        "0".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// CSV with a `coord1,coord2,residual` header; comment lines name the
/// coordinates and the row range of each layer.
pub fn to_csv(plot: &Plot) -> String {
    let (x, y) = plot.coords.axes();
    let mut s = String::new();
    let _ = writeln!(s, "# {}", plot.title);
    let _ = writeln!(s, "# coordinates: coord1 = {x}, coord2 = {y} ({})", plot.coords.name());
    let mut row = 0;
    for (k, l) in plot.layers.iter().enumerate() {
        let _ = writeln!(s, "# layer {k}: {} (rows {}..{})", l.label, row, row + l.points.len());
        row += l.points.len();
    }
    for w in plot.warnings() {
        let _ = writeln!(s, "# warning: {w}");
    }
    s.push_str("coord1,coord2,residual\n");
    for l in &plot.layers {
        for p in &l.points {
            let _ = writeln!(s, "{:.12e},{:.12e},{:.3e}", p.x, p.y, p.residual);
        }
    }
    s
}

const WIDTH: f64 = 640.0;

/// Standalone SVG 1.1 document whose `viewBox` is the viewport, with the
/// vertical axis flipped by negating `y`.
pub fn to_svg(plot: &Plot) -> String {
    let v = plot.view;
    let (w, h) = (v.x_max - v.x_min, v.y_max - v.y_min);
    let height = (WIDTH * h / w).round().max(1.0);
    let font = h / 28.0;
    // Stroke widths and dashes are given in pixels and converted to data units.
    let px = w / WIDTH;
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(WIDTH),
        num(height),
        num(v.x_min),
        num(-v.y_max),
        num(w),
        num(h)
    );
    let _ = writeln!(s, "<title>{}</title>", escape(&plot.title));
    let warnings = plot.warnings();
    let _ = writeln!(
        s,
        "<desc>coords={} viewport=[{}, {}]x[{}, {}] empty={}{}</desc>",
        plot.coords.name(),
        num(v.x_min),
        num(v.x_max),
        num(v.y_min),
        num(v.y_max),
        plot.is_empty(),
        warnings.iter().map(|w| format!("; {}", escape(w))).collect::<String>()
    );
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\"/>",
        num(v.x_min),
        num(-v.y_max),
        num(w),
        num(h)
    );
    // Axes through the origin when visible, otherwise along the lower-left edges.
    let ax = if v.x_min <= 0.0 && 0.0 <= v.x_max { 0.0 } else { v.x_min };
    let ay = if v.y_min <= 0.0 && 0.0 <= v.y_max { 0.0 } else { v.y_min };
    let (xl, yl) = plot.coords.axes();
    let _ = writeln!(s, "<g id=\"axes\" stroke=\"black\" stroke-width=\"{}\">", num(px));
    let _ = writeln!(
        s,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
        num(v.x_min),
        num(-ay),
        num(v.x_max),
        num(-ay)
    );
    let _ = writeln!(
        s,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
        num(ax),
        num(-v.y_min),
        num(ax),
        num(-v.y_max)
    );
    s.push_str("</g>\n");
    let _ = writeln!(
        s,
        "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"{}\" fill=\"black\">",
        num(font)
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>",
        num(v.x_max - font * 0.3),
        num(-ay - font * 0.4),
        escape(xl)
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\">{}</text>",
        num(ax + font * 0.3),
        num(-v.y_max + font),
        escape(yl)
    );
    s.push_str("</g>\n");
    for (k, l) in plot.layers.iter().enumerate() {
        let dash = match l.stroke {
            Stroke::Solid => String::new(),
            Stroke::Dashed => format!(" stroke-dasharray=\"{} {}\"", num(6.0 * px), num(4.0 * px)),
            Stroke::Dotted => format!(" stroke-dasharray=\"{} {}\"", num(2.0 * px), num(3.0 * px)),
        };
        let _ = writeln!(
            s,
            "<g id=\"layer-{k}\" data-label=\"{}\" data-empty=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{dash}>",
            escape(&l.label),
            l.points.is_empty(),
            l.color,
            num(l.width * px)
        );
        for seg in l.segments() {
            if seg.len() == 1 {
                let _ = writeln!(
                    s,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
                    num(seg[0].0),
                    num(-seg[0].1),
                    num(h / 150.0),
                    l.color
                );
                continue;
            }
            let pts: Vec<String> = seg.iter().map(|(x, y)| format!("{},{}", num(*x), num(-*y))).collect();
            let _ = writeln!(
                s,
                "<polyline points=\"{}\"/>",
                pts.join(" ")
            );
        }
        s.push_str("</g>\n");
    }
    let _ = writeln!(
        s,
        "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"{}\">",
        num(font * 0.8)
    );
    for (k, l) in plot.layers.iter().enumerate() {
        let y = -v.y_max + font * (1.2 * k as f64 + 2.2);
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" fill=\"{}\" text-anchor=\"end\">{}</text>",
            num(v.x_max - w * 0.02),
            num(y),
            l.color,
            escape(&l.label)
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| if i + 1 == n && n > 1 { hi } else { lo + step * i as f64 })
}

/// Default viewport of the surface figure.
pub fn figure1_viewport() -> Viewport {
    Viewport::new(-5.0, 5.0, -3.0, 7.0).expect("valid")
}

/// The parabola `q = p²/4`, the loci of `v₁ = (1, 0, −c)` and
/// `v₂ = (1, −1, ½)`, each with its full line dashed and the part strictly
/// below the parabola solid.
pub fn figure1(c: &redstab_core::Rat, samples: usize) -> Result<Plot> {
    let view = figure1_viewport();
    let parabola: Vec<LocusPoint> = linspace(view.x_min, view.x_max, samples)
        .map(|p| (p, p * p / 4.0))
        .filter(|&(p, q)| view.contains(p, q))
        .map(|(p, q)| LocusPoint { x: p, y: q, residual: 0.0 })
        .collect();
    let v1 = LatticeVector::new(vec![int(1), int(0), -c.clone()])?;
    let v2 = LatticeVector::new(vec![int(1), int(-1), frac(1, 2)])?;
    let full = |q_of: &dyn Fn(f64) -> f64| -> Vec<LocusPoint> {
        linspace(view.x_min, view.x_max, samples)
            .map(|p| (p, q_of(p)))
            .filter(|&(p, q)| view.contains(p, q))
            .map(|(p, q)| LocusPoint { x: p, y: q, residual: 0.0 })
            .collect()
    };
    let cf = to_f64(c);
    let l1 = sb_v_surface(&v1, &view, samples)?;
    let l2 = sb_v_surface(&v2, &view, samples)?;
    let mut layers = vec![Layer {
        label: "t1 = t2 (q = p^2/4)".to_string(),
        color: "black",
        stroke: Stroke::Solid,
        width: 2.0,
        points: parabola,
        split_gaps: false,
    }];
    layers.push(Layer {
        label: format!("v1 = (1, 0, -{c}) line"),
        color: "gray",
        stroke: Stroke::Dashed,
        width: 1.0,
        points: full(&|_p| 2.0 * cf),
        split_gaps: true,
    });
    layers.push(Layer::from_locus(&l1, &format!("Sb(v1), v1 = (1, 0, -{c})"), "blue", Stroke::Solid));
    layers.push(Layer {
        label: "v2 = (1, -1, 1/2) line".to_string(),
        color: "gray",
        stroke: Stroke::Dashed,
        width: 1.0,
        points: full(&|p| -1.0 - p),
        split_gaps: true,
    });
    layers.push(Layer::from_locus(&l2, "Sb(v2), v2 = (1, -1, 1/2)", "red", Stroke::Solid));
    Ok(Plot {
        title: "Reduced central charges on a polarized surface".to_string(),
        coords: CoordSystem::Surface,
        view,
        layers,
    })
}

/// Default viewport of the Hilbert-scheme figure.
pub fn figure4_viewport() -> Viewport {
    Viewport::new(0.0, 100.0, 0.0, 100.0).expect("valid")
}

/// Ray of tuples `(−K, −a, −b)` with `ab = 6m/K`, from its tangency with
/// the boundary to the edge of the viewport.
fn root_line(m: u64, k: u64, view: &Viewport, samples: usize) -> Result<Vec<LocusPoint>> {
    let (slope, icpt) = hilb_root_line(m, k)?;
    let (sl, ic) = (to_f64(&slope), to_f64(&icpt));
    let kf = k as f64;
    let p = 6.0 * m as f64 / kf;
    let lo = 2.0 * p.sqrt();
    let hi = (view.x_max - kf).min((view.y_max - p) / kf);
    if !(lo < hi) {
        return Ok(Vec::new());
    }
    let step = (hi - lo) / samples as f64;
    Ok((1..=samples)
        .filter_map(|i| {
            let x = kf + lo + step * i as f64;
            let y = sl * x + ic;
            if !view.contains(x, y) {
                return None;
            }
            let t = hilb_interior(m, x, y)?;
            let scale = m as f64 + (t[0] * t[1] * t[2]).abs() / 6.0;
            Some(LocusPoint { x, y, residual: hilb_charge(m, &t).abs() / scale })
        })
        .collect())
}

/// The boundary curve `(2t + 6m/t², t² + 12m/t)`, the red wall `t₁ = −M`
/// and the green wall `t₃ = −N`.
pub fn figure4(m: u64, samples: usize) -> Result<Plot> {
    let view = figure4_viewport();
    let (n, big_m) = hilb_bounds(m)?;
    let mut boundary = hilb_boundary(m, 0.3, 10.0, samples)?;
    boundary.points.retain(|p| view.contains(p.x, p.y));
    let layers = vec![
        Layer {
            label: format!("boundary (2t + {}/t^2, t^2 + {}/t)", 6 * m, 12 * m),
            color: "blue",
            stroke: Stroke::Dotted,
            width: 2.0,
            points: boundary.points,
            split_gaps: false,
        },
        Layer {
            label: format!("wall t1 = -M, M = {big_m}"),
            color: "red",
            stroke: Stroke::Solid,
            width: 3.0,
            points: root_line(m, big_m, &view, samples)?,
            split_gaps: true,
        },
        Layer {
            label: format!("wall t3 = -N, N = {n}"),
            color: "green",
            stroke: Stroke::Solid,
            width: 2.0,
            points: root_line(m, n, &view, samples)?,
            split_gaps: true,
        },
    ];
    Ok(Plot {
        title: format!("Walls for v = (1, 0, 0, -{m})"),
        coords: CoordSystem::Hilbert,
        view,
        layers,
    })
}

/// Plot of a single locus.
pub fn single(locus: &WallLocus, view: Viewport, title: &str) -> Plot {
    let mut layers = Vec::new();
    if locus.coords == CoordSystem::Surface {
        let parabola = linspace(view.x_min, view.x_max, 400)
            .map(|p| (p, p * p / 4.0))
            .filter(|&(p, q)| view.contains(p, q))
            .map(|(p, q)| LocusPoint { x: p, y: q, residual: 0.0 })
            .collect();
        layers.push(Layer {
            label: "t1 = t2 (q = p^2/4)".to_string(),
            color: "black",
            stroke: Stroke::Solid,
            width: 1.0,
            points: parabola,
            split_gaps: false,
        });
    }
    layers.push(Layer::from_locus(locus, &locus.description, "blue", Stroke::Solid));
    Plot { title: title.to_string(), coords: locus.coords, view, layers }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure1_layers() {
        let p = figure1(&int(1), 401).unwrap();
        assert_eq!(p.layers.len(), 5);
        // Horizontal line q = 2 lies below the parabola only for |p| > 2√2.
        assert!(p.layers[2].points.iter().all(|pt| (pt.y - 2.0).abs() < 1e-12 && pt.x.abs() > 2.8));
        assert_eq!(p.layers[2].segments().len(), 2);
        // The sloped line is tangent at p = −2, so it survives on both sides.
        assert_eq!(p.layers[4].segments().len(), 2);
    }

    #[test]
    fn figure4_layers() {
        let p = figure4(2, 400).unwrap();
        assert!(p.layers.iter().all(|l| !l.points.is_empty()));
        // Red wall for m = 2: Y = 4X − 13.
        for pt in &p.layers[1].points {
            assert!((pt.y - (4.0 * pt.x - 13.0)).abs() < 1e-9);
            assert!(pt.residual < 1e-10);
        }
        for pt in &p.layers[2].points {
            assert!((pt.y - (pt.x + 11.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn deterministic_output() {
        let a = to_svg(&figure4(1, 200).unwrap());
        let b = to_svg(&figure4(1, 200).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with("<?xml"));
        assert!(a.contains("version=\"1.1\""));
        let csv = to_csv(&figure1(&int(1), 50).unwrap());
        assert!(csv.lines().any(|l| l == "coord1,coord2,residual"));
    }

    #[test]
    fn empty_plot_flags() {
        let locus = redstab_core::walls::numerical_wall(
            &LatticeVector::from_ints(&[1, 0, -1]),
            &LatticeVector::from_ints(&[0, 1, 0]),
            -5.0,
            5.0,
            10,
        )
        .unwrap();
        let p = single(&locus, figure1_viewport(), "empty");
        let svg = to_svg(&p);
        assert!(svg.contains("data-empty=\"true\""));
        assert!(svg.contains("EmptyLocus"));
    }
}
