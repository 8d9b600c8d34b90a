//! SVG scenes: the `K_p` raster as an underlay, a decimated Julia sample, the
//! hull, preimages of the hull boundary, critical points and a legend.

use std::fmt::Write;

use num_complex::Complex64;

use crate::check::{CheckConfig, CheckReport, JuliaHull};
use crate::error::Result;
use crate::hull::{ConvexPolygon, Degeneracy};
use crate::julia::{escape_grid, EscapeGrid};
use crate::roots::critical_points;

/// Side of the square image in pixels.
pub const CANVAS: f64 = 800.0;
const LEGEND_HEIGHT: f64 = 120.0;
const MAX_CLOUD_MARKS: usize = 5000;

#[derive(Clone, Debug)]
pub struct Scene {
    pub title: String,
    /// Half-width of the square viewport centred at the origin.
    pub half_width: f64,
    pub raster: EscapeGrid<f64>,
    pub cloud: Vec<Complex64>,
    pub hull: ConvexPolygon<f64>,
    pub preimages: Vec<Complex64>,
    pub critical: Vec<Complex64>,
    pub verdicts: Vec<(String, String)>,
}

impl Scene {
    pub fn build(ctx: &JuliaHull, cfg: &CheckConfig, reports: &[CheckReport]) -> Result<Self> {
        let p = &ctx.polynomial;
        let raster = escape_grid(p, cfg.grid_resolution, cfg.max_iter)?;
        let stride = ctx.cloud.len().div_ceil(MAX_CLOUD_MARKS).max(1);
        let fibers = ctx.fibers(&ctx.boundary_samples(cfg.boundary_samples), cfg.residual_tol)?;
        Ok(Self {
            title: p.to_string(),
            half_width: -raster.origin_re,
            cloud: ctx.cloud.points.iter().step_by(stride).copied().collect(),
            hull: ctx.hull.clone(),
            preimages: fibers.into_iter().flatten().collect(),
            critical: critical_points(p, cfg.residual_tol)?.roots,
            verdicts: reports
                .iter()
                .map(|r| (r.check.as_str().to_string(), format!("{:?}", r.verdict)))
                .collect(),
            raster,
        })
    }

    /// Pixel coordinates, y pointing down.
    pub fn to_canvas(&self, z: Complex64) -> (f64, f64) {
        let s = CANVAS / (2.0 * self.half_width);
        ((z.re + self.half_width) * s, (self.half_width - z.im) * s)
    }

    pub fn to_svg(&self) -> String {
        let mut out = String::new();
        let height = CANVAS + LEGEND_HEIGHT;
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{height}" viewBox="0 0 {w} {height}">"#,
            w = CANVAS
        );
        let _ = writeln!(out, r#"<rect x="0" y="0" width="{CANVAS}" height="{height}" fill="white"/>"#);
        self.write_raster(&mut out);
        self.write_cloud(&mut out);
        self.write_hull(&mut out);
        for &z in &self.preimages {
            let (x, y) = self.to_canvas(z);
            let _ = writeln!(out, r##"<circle class="preimage" cx="{x:.3}" cy="{y:.3}" r="2" fill="#1f77b4"/>"##);
        }
        for &z in &self.critical {
            let (x, y) = self.to_canvas(z);
            let _ = writeln!(
                out,
                r##"<path class="critical" d="M{:.3} {:.3}l4 4l-4 4l-4 -4z" fill="#d62728"/>"##,
                x,
                y - 4.0
            );
        }
        self.write_legend(&mut out);
        out.push_str("</svg>\n");
        out
    }

    fn write_raster(&self, out: &mut String) {
        let g = &self.raster;
        let cell = CANVAS / g.width as f64;
        out.push_str(r##"<g class="filled-julia" fill="#dddddd">"##);
        out.push('\n');
        for row in 0..g.height {
            let y = CANVAS - (row + 1) as f64 * cell;
            let mut col = 0;
            while col < g.width {
                if !g.get(col, row) {
                    col += 1;
                    continue;
                }
                let start = col;
                while col < g.width && g.get(col, row) {
                    col += 1;
                }
                let _ = writeln!(
                    out,
                    r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}"/>"#,
                    start as f64 * cell,
                    y,
                    (col - start) as f64 * cell,
                    cell
                );
            }
        }
        out.push_str("</g>\n");
    }

    fn write_cloud(&self, out: &mut String) {
        out.push_str(r##"<path class="julia-sample" fill="#333333" d=""##);
        for &z in &self.cloud {
            let (x, y) = self.to_canvas(z);
            let _ = write!(out, "M{:.3} {:.3}h1v1h-1z", x - 0.5, y - 0.5);
        }
        out.push_str("\"/>\n");
    }

    fn write_hull(&self, out: &mut String) {
        let v = self.hull.vertices();
        let mut d = String::new();
        for (i, &z) in v.iter().enumerate() {
            let (x, y) = self.to_canvas(z);
            let _ = write!(d, "{}{:.3} {:.3}", if i == 0 { "M" } else { "L" }, x, y);
        }
        match self.hull.kind() {
            Degeneracy::Proper => d.push('z'),
            Degeneracy::Segment => {}
            Degeneracy::Point => d.push_str("h0.01"),
        }
        let _ = writeln!(
            out,
            r##"<path class="hull" d="{d}" fill="none" stroke="#ff7f0e" stroke-width="1.5" stroke-linecap="round"/>"##
        );
    }

    fn write_legend(&self, out: &mut String) {
        let mut y = CANVAS + 22.0;
        let _ = writeln!(
            out,
            r#"<text x="10" y="{y}" font-family="monospace" font-size="14">p(z) = {}</text>"#,
            escape_xml(&self.title)
        );
        for (i, (name, verdict)) in self.verdicts.iter().enumerate() {
            if i % 3 == 0 {
                y += 20.0;
            }
            let x = 10.0 + (i % 3) as f64 * 260.0;
            let _ = writeln!(
                out,
                r#"<text x="{x}" y="{y}" font-family="monospace" font-size="12">{name}: {verdict}</text>"#
            );
        }
        let _ = writeln!(
            out,
            r##"<text x="10" y="{}" font-family="monospace" font-size="12"><tspan fill="#1f77b4">● preimages of ∂H</tspan>  <tspan fill="#d62728">◆ critical points</tspan>  <tspan fill="#ff7f0e">━ hull H</tspan>  <tspan fill="#999999">■ K_p raster</tspan></text>"##,
            y + 24.0
        );
    }
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
