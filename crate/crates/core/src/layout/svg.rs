use std::fmt::Write;

use super::{InterceptLayout, LayoutRef, SlopeLayout, DEFAULT_COLOR_NEG, DEFAULT_COLOR_POS};
use crate::geometry::{Half, Point};
use crate::scalar::Scalar;

const AXIS_STROKE: &str = "#555555";
const STROKE_WIDTH: f64 = 1.5;
const SLOPE_MARGIN: f64 = 40.0;

pub fn emit_svg<'a, T: Scalar>(layout: impl Into<LayoutRef<'a, T>>) -> String {
    match layout.into() {
        LayoutRef::Intercept(l) => intercept_svg(l),
        LayoutRef::Slope(l) => slope_svg(l),
    }
}

fn num<T: Scalar>(v: T) -> String {
    let v = v.to_f64_lossy();
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
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

fn line_path<T: Scalar>(a: Point<T>, b: Point<T>) -> String {
    format!("M{} {} L{} {}", num(a.x), num(a.y), num(b.x), num(b.y))
}

/// Semicircle from the top to the bottom of a circle, on the given half.
fn semicircle<T: Scalar>(center: Point<T>, radius: T, half: Half) -> String {
    let sweep = match half {
        Half::Right => 1,
        Half::Left => 0,
    };
    format!(
        "M{cx} {top} A{r} {r} 0 0 {sweep} {cx} {bottom}",
        cx = num(center.x),
        top = num(center.y - radius),
        bottom = num(center.y + radius),
        r = num(radius),
    )
}

fn half_name(half: Half) -> &'static str {
    match half {
        Half::Right => "right",
        Half::Left => "left",
    }
}

fn intercept_svg<T: Scalar>(layout: &InterceptLayout<T>) -> String {
    let cfg = &layout.config;
    let circles = layout.circles();
    let tol = T::lit(1e-9) * cfg.outer_radius;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" class="intercept-graph">"#,
        w = num(cfg.width),
        h = num(cfg.height),
    );
    let _ = writeln!(
        out,
        r#"<g class="axes" fill="none" stroke="{AXIS_STROKE}">"#
    );
    for (class, radius) in [
        ("outer", circles.outer_radius),
        ("inner", circles.inner_radius),
    ] {
        for half in [Half::Right, Half::Left] {
            let _ = writeln!(
                out,
                r#"<path class="axis {class} {side}" d="{d}"/>"#,
                side = half_name(half),
                d = semicircle(circles.center, radius, half),
            );
        }
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(
        out,
        r#"<g class="segments" fill="none" stroke-width="{STROKE_WIDTH}">"#
    );
    for seg in &layout.segments {
        let g = &seg.geometry;
        let color = match g.half {
            Half::Right => &cfg.color_pos,
            Half::Left => &cfg.color_neg,
        };
        let side = half_name(g.half);
        let _ = writeln!(
            out,
            r#"<g class="segment {side}" data-name="{name}"><title>{name}</title>"#,
            name = escape(&seg.item.name)
        );
        let remainder_start = match g.chord {
            Some([a, b]) => {
                let _ = writeln!(
                    out,
                    r#"<path class="chord" stroke="{color}" stroke-opacity="{op}" d="{d}"/>"#,
                    op = num(cfg.opacity_in),
                    d = line_path(a, b),
                );
                b
            }
            None => g.inner,
        };
        if remainder_start.distance(g.outer) > tol {
            let _ = writeln!(
                out,
                r#"<path class="remainder" stroke="{color}" stroke-opacity="{op}" d="{d}"/>"#,
                op = num(cfg.opacity_out),
                d = line_path(remainder_start, g.outer),
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</g>");

    let label_y = circles.center.y + circles.outer_radius + T::lit(20.0);
    let offset = circles.outer_radius * T::lit(0.5);
    for (half, count, x) in [
        (Half::Right, layout.counts.right, circles.center.x + offset),
        (Half::Left, layout.counts.left, circles.center.x - offset),
    ] {
        let _ = writeln!(
            out,
            r#"<text class="count {side}" x="{x}" y="{y}" text-anchor="middle">{count}</text>"#,
            side = half_name(half),
            x = num(x),
            y = num(label_y),
        );
    }
    out.push_str("</svg>\n");
    out
}

fn slope_svg<T: Scalar>(layout: &SlopeLayout<T>) -> String {
    let margin = T::lit(SLOPE_MARGIN);
    let gap = layout.axis_gap;
    // Stretch tiny (normalized) layouts to a readable size.
    let scale = if gap < T::lit(100.0) {
        T::lit(600.0) / gap
    } else {
        T::one()
    };
    let side = gap * scale + margin * T::lit(2.0);
    let to_canvas = |p: Point<T>| Point::new(margin + p.x * scale, margin + (gap - p.y) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}" class="slope-graph">"#,
        s = num(side),
    );
    let _ = writeln!(
        out,
        r#"<g class="axes" fill="none" stroke="{AXIS_STROKE}">"#
    );
    for x in [T::zero(), gap] {
        let d = line_path(
            to_canvas(Point::new(x, T::zero())),
            to_canvas(Point::new(x, gap)),
        );
        let _ = writeln!(out, r#"<path class="axis" d="{d}"/>"#);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<g class="lines" fill="none" stroke-width="{STROKE_WIDTH}">"#
    );
    for line in &layout.lines {
        let (class, color) = if line.item.d >= T::zero() {
            ("rising", DEFAULT_COLOR_POS)
        } else {
            ("dropping", DEFAULT_COLOR_NEG)
        };
        let _ = writeln!(
            out,
            r#"<path class="line {class}" stroke="{color}" d="{d}"><title>{name}</title></path>"#,
            d = line_path(to_canvas(line.left), to_canvas(line.right)),
            name = escape(&line.item.name),
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
