//! SVG rendering of neighbourhood graphs.
//!
//! Each related pair `{i, j}` is drawn as a segment split at its midpoint:
//! the half touching `i` carries the colour of edge `(i, j)`, the half
//! touching `j` that of `(j, i)`. A direction with no edge is drawn dashed in
//! neutral grey. Retrieval graphs use GnBu, relevance graphs OrRd, both with
//! white prepended so that a zero penalty is white.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::bundling::BundledEdge;
use crate::error::{Error, Result};
use crate::graphs::{GraphKind, MingGraph};
use crate::penalties::QualityReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub const WHITE: Rgb = Rgb(255, 255, 255);
    /// Colour of dashed halves.
    pub const NEUTRAL_GREY: Rgb = Rgb(128, 128, 128);

    const fn hex(v: u32) -> Rgb {
        Rgb((v >> 16) as u8, (v >> 8) as u8, v as u8)
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02X}{:02X}{:02X}", self.0, self.1, self.2)
    }
}

// ColorBrewer 9-class sequential palettes, lightest first.
const GNBU: [Rgb; 9] = [
    Rgb::hex(0xf7fcf0),
    Rgb::hex(0xe0f3db),
    Rgb::hex(0xccebc5),
    Rgb::hex(0xa8ddb5),
    Rgb::hex(0x7bccc4),
    Rgb::hex(0x4eb3d3),
    Rgb::hex(0x2b8cbe),
    Rgb::hex(0x0868ac),
    Rgb::hex(0x084081),
];

const ORRD: [Rgb; 9] = [
    Rgb::hex(0xfff7ec),
    Rgb::hex(0xfee8c8),
    Rgb::hex(0xfdd49e),
    Rgb::hex(0xfdbb84),
    Rgb::hex(0xfc8d59),
    Rgb::hex(0xef6548),
    Rgb::hex(0xd7301f),
    Rgb::hex(0xb30000),
    Rgb::hex(0x7f0000),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "gnbu")]
    GnBu,
    #[serde(rename = "orrd")]
    OrRd,
}

impl Scheme {
    /// Default scheme for a graph kind.
    pub fn for_kind(kind: GraphKind) -> Self {
        match kind {
            GraphKind::Retrieval => Scheme::GnBu,
            GraphKind::Relevance => Scheme::OrRd,
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            Scheme::GnBu => "gnbu",
            Scheme::OrRd => "orrd",
        }
    }

    /// Interpolation anchors, white first.
    pub fn anchors(&self) -> [Rgb; 10] {
        let palette = match self {
            Scheme::GnBu => &GNBU,
            Scheme::OrRd => &ORRD,
        };
        let mut out = [Rgb::WHITE; 10];
        out[1..].copy_from_slice(palette);
        out
    }
}

/// A sequential colour scale saturated at `cap`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColourScale {
    scheme: Scheme,
    cap: f64,
}

impl ColourScale {
    pub fn new(scheme: Scheme, cap: f64) -> Result<Self> {
        if !(cap.is_finite() && cap > 0.0) {
            return Err(Error::InvalidRender(format!(
                "saturation cap must be positive, got {cap}"
            )));
        }
        Ok(Self { scheme, cap })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    /// Position on the ramp: `min(penalty / cap, 1)`.
    pub fn parameter(&self, penalty: f64) -> f64 {
        if penalty.is_nan() || penalty <= 0.0 {
            return 0.0;
        }
        (penalty / self.cap).min(1.0)
    }

    pub fn colour_of(&self, penalty: f64) -> Rgb {
        colour_at(self.scheme, self.parameter(penalty))
    }

    pub fn darkest(&self) -> Rgb {
        colour_at(self.scheme, 1.0)
    }
}

/// Piecewise-linear sRGB interpolation through the scheme anchors.
pub fn colour_at(scheme: Scheme, t: f64) -> Rgb {
    let anchors = scheme.anchors();
    let segments = (anchors.len() - 1) as f64;
    let pos = t.clamp(0.0, 1.0) * segments;
    let k = (pos.floor() as usize).min(anchors.len() - 2);
    let f = pos - k as f64;
    let (a, b) = (anchors[k], anchors[k + 1]);
    let mix = |x: u8, y: u8| (f64::from(x) + (f64::from(y) - f64::from(x)) * f).round() as u8;
    Rgb(mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

pub fn colour_of(scale: &ColourScale, penalty: f64) -> Rgb {
    scale.colour_of(penalty)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Background {
    Circle,
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub marker_radius: f64,
    pub edge_width: f64,
    /// On/off lengths of dashed halves.
    pub dash_pattern: (f64, f64),
    pub background: Background,
    /// Width and height of the square canvas, in pixels.
    pub canvas_size: u32,
    pub show_labels: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            marker_radius: 3.0,
            edge_width: 1.2,
            dash_pattern: (3.0, 2.0),
            background: Background::Circle,
            canvas_size: 800,
            show_labels: false,
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        let lengths = [
            ("marker radius", self.marker_radius),
            ("edge width", self.edge_width),
            ("dash on-length", self.dash_pattern.0),
            ("dash off-length", self.dash_pattern.1),
            ("canvas size", f64::from(self.canvas_size)),
        ];
        for (name, v) in lengths {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidRender(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

const BACKGROUND_FILL: Rgb = Rgb(189, 189, 189);
const MARKER_FILL: Rgb = Rgb(37, 37, 37);
const RAMP_WIDTH: f64 = 160.0;
const RAMP_HEIGHT: f64 = 12.0;

/// Maps embedding coordinates onto the canvas, preserving aspect ratio.
#[derive(Debug, Clone, Copy)]
struct Frame {
    centre: [f64; 2],
    scale: f64,
    half: f64,
    radius_px: f64,
}

impl Frame {
    fn fit(graph: &MingGraph, spec: &RenderSpec) -> Result<Self> {
        for v in &graph.vertices {
            if !v.position.iter().all(|c| c.is_finite()) {
                return Err(Error::NonFinitePosition(v.id));
            }
        }
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for v in &graph.vertices {
            for a in 0..2 {
                lo[a] = lo[a].min(v.position[a]);
                hi[a] = hi[a].max(v.position[a]);
            }
        }
        let centre = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])];
        let extent = graph
            .vertices
            .iter()
            .map(|v| (v.position[0] - centre[0]).hypot(v.position[1] - centre[1]))
            .fold(0.0, f64::max);
        let half = f64::from(spec.canvas_size) / 2.0;
        let radius_px = half * 0.94;
        let usable = radius_px - 2.0 * spec.marker_radius;
        let scale = if extent > 0.0 { usable / extent } else { 1.0 };
        Ok(Self {
            centre,
            scale,
            half,
            radius_px,
        })
    }

    fn project(&self, p: [f64; 2]) -> [f64; 2] {
        [
            self.half + (p[0] - self.centre[0]) * self.scale,
            self.half - (p[1] - self.centre[1]) * self.scale,
        ]
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn open_document(out: &mut String, spec: &RenderSpec, frame: &Frame) {
    let s = spec.canvas_size;
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#
    );
    let _ = writeln!(out, r##"<rect width="{s}" height="{s}" fill="#FFFFFF"/>"##);
    if spec.background == Background::Circle {
        let _ = writeln!(
            out,
            r#"<circle class="background" cx="{:.2}" cy="{:.2}" r="{:.2}" fill="{BACKGROUND_FILL}"/>"#,
            frame.half, frame.half, frame.radius_px
        );
    }
}

fn write_markers(out: &mut String, graph: &MingGraph, spec: &RenderSpec, frame: &Frame) {
    out.push_str("<g class=\"markers\">\n");
    for v in &graph.vertices {
        let [x, y] = frame.project(v.position);
        let _ = writeln!(
            out,
            r#"<circle class="marker" data-id="{}" cx="{x:.2}" cy="{y:.2}" r="{:.2}" fill="{MARKER_FILL}" stroke="{}" stroke-width="0.5"/>"#,
            v.id,
            spec.marker_radius,
            Rgb::WHITE
        );
    }
    if spec.show_labels {
        for v in &graph.vertices {
            if let Some(label) = &v.label {
                let [x, y] = frame.project(v.position);
                let _ = writeln!(
                    out,
                    r#"<text class="label" x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="9">{}</text>"#,
                    x + spec.marker_radius + 1.0,
                    y - spec.marker_radius - 1.0,
                    escape(label)
                );
            }
        }
    }
    out.push_str("</g>\n");
}

struct Half {
    penalty: f64,
    near: usize,
    far: usize,
    from: [f64; 2],
    to: [f64; 2],
}

/// Renders a graph as a standalone SVG document.
pub fn render_graph(graph: &MingGraph, scale: &ColourScale, spec: &RenderSpec) -> Result<String> {
    render_document(graph, scale, spec, None)
}

/// Renders a graph with the legend and indicator readout on top.
pub fn render_graph_with_report(
    graph: &MingGraph,
    scale: &ColourScale,
    spec: &RenderSpec,
    report: &QualityReport,
) -> Result<String> {
    render_document(graph, scale, spec, Some(report))
}

fn render_document(
    graph: &MingGraph,
    scale: &ColourScale,
    spec: &RenderSpec,
    report: Option<&QualityReport>,
) -> Result<String> {
    spec.validate()?;
    let frame = Frame::fit(graph, spec)?;

    // unordered pair -> penalties of (lo -> hi) and (hi -> lo)
    let mut pairs: BTreeMap<(usize, usize), [Option<f64>; 2]> = BTreeMap::new();
    for e in &graph.edges {
        let key = (e.src.min(e.dst), e.src.max(e.dst));
        let slot = usize::from(e.src > e.dst);
        pairs.entry(key).or_default()[slot] = Some(e.penalty);
    }

    let mut solid = Vec::with_capacity(graph.edges.len());
    let mut dashed = Vec::new();
    for (&(a, b), penalties) in &pairs {
        let pa = frame.project(graph.vertices[a].position);
        let pb = frame.project(graph.vertices[b].position);
        let mid = [0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])];
        for (near, far, from, penalty) in [(a, b, pa, penalties[0]), (b, a, pb, penalties[1])] {
            let half = Half {
                penalty: penalty.unwrap_or(0.0),
                near,
                far,
                from,
                to: mid,
            };
            if penalty.is_some() {
                solid.push(half);
            } else {
                dashed.push(half);
            }
        }
    }
    // heaviest first so reliable structure is painted last
    solid.sort_by(|x, y| {
        y.penalty
            .total_cmp(&x.penalty)
            .then_with(|| (x.near, x.far).cmp(&(y.near, y.far)))
    });

    let mut out = String::new();
    open_document(&mut out, spec, &frame);
    let _ = writeln!(
        out,
        r#"<g class="edges {}" stroke-width="{:.2}" stroke-linecap="butt">"#,
        graph.kind.id(),
        spec.edge_width
    );
    for h in &dashed {
        let _ = writeln!(
            out,
            r#"<line class="half dashed" data-near="{}" data-far="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-dasharray="{:.2} {:.2}"/>"#,
            h.near,
            h.far,
            h.from[0],
            h.from[1],
            h.to[0],
            h.to[1],
            Rgb::NEUTRAL_GREY,
            spec.dash_pattern.0,
            spec.dash_pattern.1
        );
    }
    for h in &solid {
        let _ = writeln!(
            out,
            r#"<line class="half solid" data-src="{}" data-dst="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}"/>"#,
            h.near,
            h.far,
            h.from[0],
            h.from[1],
            h.to[0],
            h.to[1],
            scale.colour_of(h.penalty)
        );
    }
    out.push_str("</g>\n");
    write_markers(&mut out, graph, spec, &frame);
    if let Some(report) = report {
        out.push_str(&render_report_overlay(report, scale, spec, graph.kind));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn format_cap(cap: f64) -> String {
    if cap.fract() == 0.0 && cap.abs() < 1e15 {
        format!("{cap:.0}")
    } else {
        format!("{cap}")
    }
}

/// Legend fragment: colour ramp labelled from 0 to the cap, κ and the two
/// global indicators to three decimals.
pub fn render_report_overlay(
    report: &QualityReport,
    scale: &ColourScale,
    spec: &RenderSpec,
    kind: GraphKind,
) -> String {
    let scheme = scale.scheme();
    let id = format!("ramp-{}", scheme.id());
    let margin = (f64::from(spec.canvas_size) * 0.015).max(4.0);
    let (x0, y0) = (margin, margin);
    let mut out = String::new();
    let _ = writeln!(out, r#"<g class="legend" font-family="sans-serif" font-size="11">"#);
    let _ = writeln!(out, r#"<defs><linearGradient id="{id}" x1="0" y1="0" x2="1" y2="0">"#);
    let anchors = scheme.anchors();
    for (k, c) in anchors.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<stop offset="{:.4}" stop-color="{c}"/>"#,
            k as f64 / (anchors.len() - 1) as f64
        );
    }
    out.push_str("</linearGradient></defs>\n");
    let _ = writeln!(
        out,
        r##"<rect class="ramp" x="{x0:.2}" y="{y0:.2}" width="{RAMP_WIDTH:.2}" height="{RAMP_HEIGHT:.2}" fill="url(#{id})" stroke="#636363" stroke-width="0.5"/>"##
    );
    let ty = y0 + RAMP_HEIGHT + 12.0;
    let _ = writeln!(out, r#"<text class="ramp-min" x="{x0:.2}" y="{ty:.2}">0</text>"#);
    let _ = writeln!(
        out,
        r#"<text class="ramp-max" x="{:.2}" y="{ty:.2}" text-anchor="end">≥ {}</text>"#,
        x0 + RAMP_WIDTH,
        format_cap(scale.cap())
    );
    let lines = [
        format!("{} graph ({})", kind.id(), escape(&report.model)),
        format!("κ = {}", report.kappa),
        format!("F = {:.3}", report.global_false),
        format!("M = {:.3}", report.global_missed),
    ];
    for (k, line) in lines.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<text class="readout" x="{x0:.2}" y="{:.2}">{line}</text>"#,
            ty + 16.0 * (k + 1) as f64
        );
    }
    out.push_str("</g>\n");
    out
}

/// Renders bundled polylines, each in its bin's colour, heaviest bin first.
pub fn render_bundled(
    graph: &MingGraph,
    bundled: &[BundledEdge],
    spec: &RenderSpec,
    overlay: Option<(&QualityReport, &ColourScale)>,
) -> Result<String> {
    spec.validate()?;
    let frame = Frame::fit(graph, spec)?;
    let mut order: Vec<&BundledEdge> = bundled.iter().collect();
    order.sort_by(|a, b| {
        b.bin_index
            .cmp(&a.bin_index)
            .then_with(|| (a.src, a.dst).cmp(&(b.src, b.dst)))
    });
    let mut out = String::new();
    open_document(&mut out, spec, &frame);
    let _ = writeln!(
        out,
        r#"<g class="bundles {}" fill="none" stroke-width="{:.2}" stroke-linejoin="round" stroke-opacity="0.7">"#,
        graph.kind.id(),
        spec.edge_width
    );
    for e in order {
        let points: Vec<String> = e
            .polyline
            .iter()
            .map(|&p| {
                let [x, y] = frame.project(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="bundle" data-src="{}" data-dst="{}" data-bin="{}" points="{}" stroke="{}"/>"#,
            e.src,
            e.dst,
            e.bin_index,
            points.join(" "),
            e.draw_colour
        );
    }
    out.push_str("</g>\n");
    write_markers(&mut out, graph, spec, &frame);
    if let Some((report, scale)) = overlay {
        out.push_str(&render_report_overlay(report, scale, spec, graph.kind));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{Edge, EdgeClass, Vertex};
    use proptest::prelude::*;

    fn two_point_graph(edges: Vec<Edge>) -> MingGraph {
        MingGraph {
            kind: GraphKind::Retrieval,
            kappa: 1,
            model: "tc".into(),
            vertices: vec![
                Vertex {
                    id: 0,
                    position: [0.0, 0.0],
                    label: Some("a<b".into()),
                },
                Vertex {
                    id: 1,
                    position: [1.0, 1.0],
                    label: None,
                },
            ],
            edges,
        }
    }

    fn edge(src: usize, dst: usize, penalty: f64, reverse_exists: bool) -> Edge {
        Edge {
            src,
            dst,
            penalty,
            reverse_exists,
            class: if penalty > 0.0 {
                EdgeClass::FalseNbr
            } else {
                EdgeClass::Reliable
            },
        }
    }

    #[test]
    fn anchors_and_saturation() {
        for scheme in [Scheme::GnBu, Scheme::OrRd] {
            let scale = ColourScale::new(scheme, 20.0).unwrap();
            assert_eq!(scale.colour_of(0.0).to_string(), "#FFFFFF");
            assert_eq!(scale.colour_of(20.0), scale.colour_of(1e9));
        }
        let gnbu = ColourScale::new(Scheme::GnBu, 20.0).unwrap();
        assert_eq!(gnbu.colour_of(25.0).to_string(), "#084081");
        let orrd = ColourScale::new(Scheme::OrRd, 16.0).unwrap();
        assert_eq!(orrd.colour_of(16.0).to_string(), "#7F0000");
        assert_eq!(gnbu.parameter(10.0), 0.5);
        assert_eq!(ColourScale::new(Scheme::GnBu, 16.0).unwrap().parameter(8.0), 0.5);
        // t = 1/9 lands exactly on the first palette entry
        assert_eq!(colour_at(Scheme::GnBu, 1.0 / 9.0).to_string(), "#F7FCF0");
        assert!(ColourScale::new(Scheme::GnBu, 0.0).is_err());
        assert!(ColourScale::new(Scheme::GnBu, f64::NAN).is_err());
    }

    #[test]
    fn mutual_reliable_pair() {
        let g = two_point_graph(vec![edge(0, 1, 0.0, true), edge(1, 0, 0.0, true)]);
        let scale = ColourScale::new(Scheme::GnBu, 20.0).unwrap();
        let svg = render_graph(&g, &scale, &RenderSpec::default()).unwrap();
        assert_eq!(svg.matches("class=\"half solid\"").count(), 2);
        assert_eq!(svg.matches("class=\"half dashed\"").count(), 0);
        assert_eq!(svg.matches("stroke=\"#FFFFFF\"/>").count(), 2);
    }

    #[test]
    fn one_way_edge_has_dashed_far_half() {
        let g = two_point_graph(vec![edge(0, 1, 20.0, false)]);
        let scale = ColourScale::new(Scheme::GnBu, 20.0).unwrap();
        let svg = render_graph(&g, &scale, &RenderSpec::default()).unwrap();
        let solid: Vec<&str> = svg.lines().filter(|l| l.contains("half solid")).collect();
        let dashed: Vec<&str> = svg.lines().filter(|l| l.contains("half dashed")).collect();
        assert_eq!(solid.len(), 1);
        assert_eq!(dashed.len(), 1);
        assert!(solid[0].contains("data-src=\"0\""));
        assert!(solid[0].contains("#084081"));
        assert!(dashed[0].contains("data-near=\"1\""));
        assert!(dashed[0].contains("#808080"));
        assert!(dashed[0].contains("stroke-dasharray"));
    }

    #[test]
    fn paint_order_is_decreasing_penalty() {
        let g = two_point_graph(vec![edge(0, 1, 2.0, true), edge(1, 0, 7.0, true)]);
        let scale = ColourScale::new(Scheme::OrRd, 20.0).unwrap();
        let svg = render_graph(&g, &scale, &RenderSpec::default()).unwrap();
        let first = svg.find("data-src=\"1\"").unwrap();
        let second = svg.find("data-src=\"0\"").unwrap();
        assert!(first < second);
    }

    #[test]
    fn labels_are_escaped_and_optional() {
        let g = two_point_graph(vec![edge(0, 1, 0.0, false)]);
        let scale = ColourScale::new(Scheme::GnBu, 20.0).unwrap();
        let spec = RenderSpec {
            show_labels: true,
            ..RenderSpec::default()
        };
        let svg = render_graph(&g, &scale, &spec).unwrap();
        assert!(svg.contains("a&lt;b"));
        let plain = render_graph(&g, &scale, &RenderSpec::default()).unwrap();
        assert!(!plain.contains("class=\"label\""));
    }

    #[test]
    fn background_toggle_and_validation() {
        let g = two_point_graph(vec![edge(0, 1, 0.0, true), edge(1, 0, 0.0, true)]);
        let scale = ColourScale::new(Scheme::GnBu, 20.0).unwrap();
        let none = RenderSpec {
            background: Background::None,
            ..RenderSpec::default()
        };
        assert!(!render_graph(&g, &scale, &none).unwrap().contains("class=\"background\""));
        assert!(render_graph(&g, &scale, &RenderSpec::default())
            .unwrap()
            .contains("class=\"background\""));
        let bad = RenderSpec {
            dash_pattern: (0.0, 2.0),
            ..RenderSpec::default()
        };
        assert!(render_graph(&g, &scale, &bad).is_err());
        let mut broken = g.clone();
        broken.vertices[1].position[0] = f64::INFINITY;
        assert!(matches!(
            render_graph(&broken, &scale, &RenderSpec::default()),
            Err(Error::NonFinitePosition(1))
        ));
    }

    fn report(global_false: f64) -> QualityReport {
        QualityReport {
            kappa: 10,
            model: "tc".into(),
            normalizer: 1845.0,
            pointwise_false: vec![],
            pointwise_missed: vec![],
            global_false,
            global_missed: 0.93456,
            raw_false: global_false,
            raw_missed: 0.93456,
        }
    }

    #[test]
    fn legend_readout() {
        let spec = RenderSpec::default();
        let scale = ColourScale::new(Scheme::GnBu, 20.0).unwrap();
        let svg = render_report_overlay(&report(1.0), &scale, &spec, GraphKind::Retrieval);
        assert!(svg.contains(">F = 1.000<"));
        assert!(svg.contains(">M = 0.935<"));
        assert!(svg.contains(">κ = 10<"));
        assert!(svg.contains(">≥ 20<"));
        let scale16 = ColourScale::new(Scheme::OrRd, 16.0).unwrap();
        let svg = render_report_overlay(&report(0.5), &scale16, &spec, GraphKind::Relevance);
        assert!(svg.contains(">≥ 16<"));
        assert!(svg.contains("#7F0000"));
        let frac = ColourScale::new(Scheme::OrRd, 2.5).unwrap();
        assert!(render_report_overlay(&report(0.5), &frac, &spec, GraphKind::Relevance).contains(">≥ 2.5<"));
    }

    proptest! {
        #[test]
        fn parameter_is_monotone(a in 0.0f64..100.0, b in 0.0f64..100.0, cap in 0.5f64..50.0) {
            let scale = ColourScale::new(Scheme::OrRd, cap).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(scale.parameter(lo) <= scale.parameter(hi));
            // every channel darkens (or stays) along the sequential ramp
            let (c1, c2) = (scale.colour_of(lo), scale.colour_of(hi));
            let lum = |c: Rgb| 0.2126 * f64::from(c.0) + 0.7152 * f64::from(c.1) + 0.0722 * f64::from(c.2);
            prop_assert!(lum(c2) <= lum(c1) + 1.0);
        }
    }
}
