//! SVG pictures of closed geodesics on the fundamental polygon, drawn in
//! the Poincaré disk.

use std::fmt::Write;

use num_complex::Complex64;

use crate::conjugacy::ConjugacyClass;
use crate::error::{Error, Result};
use crate::goldman::enumerate_intersections;
use crate::hyperbolic::tiling::{locate, period_stretches};
use crate::hyperbolic::Representation;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 10.0;
const SAMPLES_PER_UNIT: f64 = 200.0;
const COLOURS: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn to_svg(z: Complex64) -> (f64, f64) {
    let r = SIZE / 2.0 - MARGIN;
    (SIZE / 2.0 + r * z.re, SIZE / 2.0 - r * z.im)
}

fn path_data(points: &[Complex64]) -> String {
    let mut d = String::new();
    for (i, &z) in points.iter().enumerate() {
        let (x, y) = to_svg(z);
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{cmd}{x:.3},{y:.3} ");
    }
    d.trim_end().to_string()
}

/// Disk geodesic from `p` to `q`, sampled.
fn disk_segment(p: Complex64, q: Complex64, samples: usize) -> Vec<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let w = (q - p) / (one - p.conj() * q);
    (0..=samples)
        .map(|k| {
            let s = w * (k as f64 / samples as f64);
            (s + p) / (one + p.conj() * s)
        })
        .collect()
}

/// Pieces of the closed geodesic of `c` inside the fundamental polygon, in
/// disk coordinates.
fn geodesic_pieces(rep: &Representation, c: &ConjugacyClass) -> Result<Vec<Vec<Complex64>>> {
    if c.is_identity() {
        return Err(Error::TrivialClass);
    }
    let mut pieces: Vec<Vec<Complex64>> = Vec::new();
    let mut current_tile = None;
    // a point of a rotated axis has the same image in P as the matching
    // point of the original one
    for st in period_stretches(rep, c.word())? {
        let samples = (((st.to - st.from).abs() * SAMPLES_PER_UNIT).ceil() as usize).max(16);
        for k in 0..=samples {
            let z = st.frame.point(st.from + (st.to - st.from) * k as f64 / samples as f64);
            let tile = locate(rep, z);
            let inside = rep.to_disk(tile.matrix.inverse().apply(z));
            if current_tile.as_ref() != Some(&tile.word) {
                pieces.push(Vec::new());
                current_tile = Some(tile.word.clone());
            }
            pieces.last_mut().expect("piece started").push(inside);
        }
    }
    Ok(pieces.into_iter().filter(|p| p.len() > 1).collect())
}

/// Renders the fundamental polygon, one path per class and a marker at each
/// transverse intersection of every pair of classes.
pub fn render_svg(rep: &Representation, classes: &[ConjugacyClass]) -> Result<String> {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let (cx, cy) = to_svg(Complex64::new(0.0, 0.0));
    let _ = writeln!(
        svg,
        r##"<circle cx="{cx}" cy="{cy}" r="{}" fill="none" stroke="#999" stroke-width="1"/>"##,
        SIZE / 2.0 - MARGIN
    );

    let verts = rep.polygon_vertices();
    let n = verts.len();
    let mut boundary = Vec::new();
    for k in 0..n {
        let p = rep.to_disk(verts[k]);
        let q = rep.to_disk(verts[(k + 1) % n]);
        let mut seg = disk_segment(p, q, 32);
        if k > 0 {
            seg.remove(0);
        }
        boundary.extend(seg);
    }
    let _ = writeln!(
        svg,
        r##"<path class="polygon" d="{} Z" fill="#f8f8f8" stroke="black" stroke-width="1.5"/>"##,
        path_data(&boundary)
    );

    for (i, c) in classes.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        let mut d = String::new();
        for piece in geodesic_pieces(rep, c)? {
            d.push_str(&path_data(&piece));
            d.push(' ');
        }
        let _ = writeln!(
            svg,
            r#"<path class="geodesic" data-class="{c}" d="{}" fill="none" stroke="{colour}" stroke-width="2"/>"#,
            d.trim_end()
        );
    }

    for (i, c1) in classes.iter().enumerate() {
        for c2 in &classes[i + 1..] {
            let budget = crate::goldman::default_budget(rep, c1, c2) * 4;
            let points = match enumerate_intersections(rep, c1, c2, budget) {
                Ok(e) => e.points,
                Err(Error::Coincident(..)) => continue,
                Err(e) => return Err(e),
            };
            for p in points {
                let tile = locate(rep, p.representative);
                let z = rep.to_disk(tile.matrix.inverse().apply(p.representative));
                let (x, y) = to_svg(z);
                let fill = if p.sign > 0 { "black" } else { "white" };
                let _ = writeln!(
                    svg,
                    r#"<circle class="intersection" cx="{x:.3}" cy="{y:.3}" r="4" fill="{fill}" stroke="black"/>"#
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
