//! Text and SVG pictures of diagrams. Presentation only.

use std::fmt::Write as _;

use super::{Side, TLDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

pub fn render(d: &TLDiagram, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => render_ascii(d),
        RenderFormat::Svg => render_svg(d),
    }
}

/// Nesting height of every arc on one boundary: innermost arcs have height 1.
fn heights(arcs: &[(usize, usize)]) -> Vec<usize> {
    let mut h = vec![1; arcs.len()];
    // arcs are sorted by left endpoint, so inner arcs come later; iterate by width
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_by_key(|&k| arcs[k].1 - arcs[k].0);
    for &k in &order {
        let (a, b) = arcs[k];
        h[k] = 1 + arcs
            .iter()
            .enumerate()
            .filter(|&(_, &(c, d))| a < c && d < b)
            .map(|(j, _)| h[j])
            .max()
            .unwrap_or(0);
    }
    h
}

fn arc_rows(d: &TLDiagram, side: Side, spacing: usize, width: usize) -> Vec<String> {
    let arcs = d.boundary_arcs(side);
    let h = heights(&arcs);
    let through = d.through_points(side);
    let rows = h.iter().copied().max().unwrap_or(0);
    let col = |k: usize| spacing * (k - 1);
    (1..=rows)
        .map(|r| {
            let mut line = vec![b' '; width];
            for &t in &through {
                line[col(t)] = b'|';
            }
            for (&(a, b), &height) in arcs.iter().zip(&h) {
                if r < height {
                    line[col(a)] = b'|';
                    line[col(b)] = b'|';
                } else if r == height {
                    line[col(a)..=col(b)].fill(b'-');
                    line[col(a)] = b'+';
                    line[col(b)] = b'+';
                }
            }
            String::from_utf8(line).unwrap()
        })
        .collect()
}

fn label_row(n: usize, spacing: usize, width: usize) -> String {
    let mut line = " ".repeat(width + spacing);
    for k in 1..=n {
        let label = k.to_string();
        let start = spacing * (k - 1);
        line.replace_range(start..start + label.len(), &label);
    }
    line
}

/// Fixed-width picture: labels, top arcs (one row per nesting level),
/// through lines drifting one column per row, bottom arcs, labels.
pub fn render_ascii(d: &TLDiagram) -> String {
    let n = d.n();
    let spacing = n.to_string().len() + 1;
    let width = spacing * (n - 1) + 1;
    let col = |k: usize| spacing * (k - 1);

    let mut rows = vec![label_row(n, spacing, width)];
    rows.extend(arc_rows(d, Side::Top, spacing, width));

    let lines: Vec<(usize, usize)> = d.arcs().through.iter().map(|a| a.endpoints).collect();
    let steps = lines.iter().map(|&(t, b)| t.abs_diff(b)).max().unwrap_or(0).max(1);
    let at = |(t, b): (usize, usize), r: usize| b.clamp(t.saturating_sub(r).max(1), t + r);
    for r in 1..=steps {
        let mut line = vec![b' '; width];
        for &l in &lines {
            let (prev, cur) = (at(l, r - 1), at(l, r));
            if cur == prev {
                line[col(cur)] = b'|';
            } else if cur > prev {
                line[col(prev) + spacing / 2] = b'\\';
            } else {
                line[col(cur) + spacing / 2] = b'/';
            }
        }
        rows.push(String::from_utf8(line).unwrap());
    }

    let mut bottom = arc_rows(d, Side::Bottom, spacing, width);
    bottom.reverse();
    rows.extend(bottom);
    rows.push(label_row(n, spacing, width));

    let mut out = String::new();
    for row in rows {
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

/// SVG with one cubic curve per strand.
pub fn render_svg(d: &TLDiagram) -> String {
    const STEP: usize = 40;
    const TOP: usize = 20;
    let n = d.n();
    let height = TOP * 2 + STEP * (n + 1).max(3);
    let bottom = height - TOP;
    let x = |k: usize| STEP * k;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{height}" viewBox="0 0 {} {height}">"#,
        x(n + 1),
        x(n + 1)
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="2">"#);
    for (a, b) in d.top_arcs() {
        let depth = TOP + STEP * (b - a + 1) / 2;
        let _ = writeln!(out, r#"<path d="M {} {TOP} C {} {depth} {} {depth} {} {TOP}"/>"#, x(a), x(a), x(b), x(b));
    }
    for (a, b) in d.bottom_arcs() {
        let rise = bottom - STEP * (b - a + 1) / 2;
        let _ = writeln!(out, r#"<path d="M {} {bottom} C {} {rise} {} {rise} {} {bottom}"/>"#, x(a), x(a), x(b), x(b));
    }
    let mid = height / 2;
    for arc in d.arcs().through {
        let (t, b) = arc.endpoints;
        let _ = writeln!(out, r#"<path d="M {} {TOP} C {} {mid} {} {mid} {} {bottom}"/>"#, x(t), x(t), x(b), x(b));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="black">"#);
    for k in 1..=n {
        let _ = writeln!(out, r#"<circle cx="{}" cy="{TOP}" r="4"/>"#, x(k));
        let _ = writeln!(out, r#"<circle cx="{}" cy="{bottom}" r="4"/>"#, x(k));
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_arcs_ascii() {
        let d = TLDiagram::from_arcs(4, &[(1, 4), (2, 3)], &[(1, 4), (2, 3)]).unwrap();
        let expected = "\
1 2 3 4
| +-+ |
+-----+

+-----+
| +-+ |
1 2 3 4
";
        assert_eq!(render_ascii(&d), expected);
    }

    #[test]
    fn generator_ascii() {
        let d = TLDiagram::generator(1, 2).unwrap();
        assert_eq!(render_ascii(&d), "1 2\n+-+\n\n+-+\n1 2\n");
    }

    #[test]
    fn drifting_through_lines() {
        let d = TLDiagram::from_arcs(4, &[(3, 4)], &[(1, 2)]).unwrap();
        let expected = "\
1 2 3 4
| | +-+
 \\ \\
   \\ \\
+-+ | |
1 2 3 4
";
        assert_eq!(render_ascii(&d), expected);
    }

    #[test]
    fn svg_is_deterministic() {
        let d = TLDiagram::from_arcs(4, &[(3, 4)], &[(1, 2)]).unwrap();
        let svg = render_svg(&d);
        assert_eq!(svg, render_svg(&d));
        assert_eq!(svg.matches("<path").count(), 4);
        assert!(svg.starts_with("<svg"));
    }
}
