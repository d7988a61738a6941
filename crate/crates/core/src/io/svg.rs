use std::collections::BTreeSet;
use std::fmt::Write;

use crate::coloring::ColoringCertificate;
use crate::convex::Segment;
use crate::thrackle::decompose;

use super::document::ThrackleSet;

/// Class colours, reused cyclically past the sixteenth class.
pub const PALETTE: [&str; 16] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39", "#7b4173", "#3182bd",
];

const CELL: u32 = 24;
const RADIUS: f64 = 200.0;
const MARGIN: f64 = 30.0;

fn colour(class: usize) -> &'static str {
    PALETTE[class % PALETTE.len()]
}

fn header(out: &mut String, width: f64, height: f64) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
}

/// Cells of `Omega_n` as squares, row 1 on top, filled by class.
pub fn render_polyomino(cert: &ColoringCertificate) -> String {
    let side = cert.n.saturating_sub(1).max(1) * CELL;
    let mut out = String::new();
    header(&mut out, f64::from(side), f64::from(side));
    for (c, class) in cert.classes.iter().enumerate() {
        let label = cert.class_labels.get(c).copied().unwrap_or(0);
        writeln!(out, r#"<g class="color" data-class="{c}" data-path="{label}">"#).unwrap();
        for s in class {
            let x = (s.b() - 2) * CELL;
            let y = (s.a() - 1) * CELL;
            writeln!(
                out,
                r#"<rect class="cell" x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}" stroke="white"><title>({},{})</title></rect>"#,
                colour(c),
                s.a(),
                s.b()
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// Position of label `v` among `n` points, 1 at the top, clockwise.
fn point(v: u32, n: u32) -> (f64, f64) {
    let angle = std::f64::consts::TAU * f64::from(v - 1) / f64::from(n.max(1));
    (MARGIN + RADIUS + RADIUS * angle.sin(), MARGIN + RADIUS - RADIUS * angle.cos())
}

fn chord_diagram<'a>(n: u32, groups: impl Iterator<Item = (usize, &'a [Segment], BTreeSet<Segment>)>) -> String {
    let side = 2.0 * (RADIUS + MARGIN);
    let mut out = String::new();
    header(&mut out, side, side);
    for (g, edges, bold) in groups {
        writeln!(out, r#"<g class="group" data-index="{g}" stroke="{}">"#, colour(g)).unwrap();
        for &s in edges {
            let (x1, y1) = point(s.a(), n);
            let (x2, y2) = point(s.b(), n);
            let (class, width) = if bold.contains(&s) { ("chord cycle", 3) } else { ("chord", 1) };
            writeln!(
                out,
                r#"<line class="{class}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke-width="{width}"/>"#
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }
    for v in 1..=n {
        let (x, y) = point(v, n);
        writeln!(out, r#"<circle class="point" cx="{x:.2}" cy="{y:.2}" r="4" fill="black"><title>{v}</title></circle>"#)
            .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Every colour class drawn as chords of the convex polygon.
pub fn render_chords(cert: &ColoringCertificate) -> String {
    chord_diagram(cert.n, cert.classes.iter().enumerate().map(|(c, class)| (c, class.as_slice(), BTreeSet::new())))
}

/// Thrackles as chords; odd-cycle edges of maximal members are drawn thicker.
pub fn render_thrackle_chords(set: &ThrackleSet) -> String {
    let groups: Vec<(Vec<Segment>, BTreeSet<Segment>)> = set
        .thrackles
        .iter()
        .map(|t| {
            let cycle = decompose(set.n, t).map(|m| m.cycle_edges()).unwrap_or_default();
            (t.iter().copied().collect(), cycle)
        })
        .collect();
    chord_diagram(set.n, groups.iter().enumerate().map(|(g, (e, c))| (g, e.as_slice(), c.clone())))
}
