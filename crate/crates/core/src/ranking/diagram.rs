use std::fmt::Write as _;

use super::rank::{check_same_models, Ranking};
use crate::error::Result;

const ROW_SPACING: f64 = 28.0;
const TOP: f64 = 56.0;
const LEFT_X: f64 = 170.0;
const RIGHT_X: f64 = 330.0;
const WIDTH: f64 = 500.0;

/// Straight arrow from a model's row in the left column to its row in the
/// right column.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrow {
    pub model: String,
    pub from: (f64, f64),
    pub to: (f64, f64),
}

/// Two-column ranking comparison: left is ranking `a`, right is ranking `b`,
/// rows evenly spaced best-first.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingDiagram {
    pub left: Ranking,
    pub right: Ranking,
    pub arrows: Vec<Arrow>,
}

fn row_y(i: usize) -> f64 {
    TOP + i as f64 * ROW_SPACING
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn render_diagram(a: &Ranking, b: &Ranking) -> Result<RankingDiagram> {
    check_same_models(&a.models, &b.models)?;
    let arrows = a
        .models
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let j = b.position(m).expect("aligned rankings");
            Arrow {
                model: m.clone(),
                from: (LEFT_X, row_y(i)),
                to: (RIGHT_X, row_y(j)),
            }
        })
        .collect();
    Ok(RankingDiagram {
        left: a.clone(),
        right: b.clone(),
        arrows,
    })
}

impl RankingDiagram {
    pub fn to_svg(&self) -> String {
        let n = self.left.len();
        let height = row_y(n) + 8.0;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}" font-family="sans-serif" font-size="13">"#
        );
        let _ = writeln!(
            s,
            r#"<defs><marker id="head" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="black"/></marker></defs>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="24" text-anchor="end" font-weight="bold">{}</text>"#,
            LEFT_X - 10.0,
            escape(&self.left.metric)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="24" font-weight="bold">{}</text>"#,
            RIGHT_X + 10.0,
            escape(&self.right.metric)
        );
        for (i, m) in self.left.models.iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{} {}</text>"#,
                LEFT_X - 10.0,
                row_y(i) + 4.0,
                i + 1,
                escape(m)
            );
        }
        for (j, m) in self.right.models.iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}">{} {}</text>"#,
                RIGHT_X + 10.0,
                row_y(j) + 4.0,
                j + 1,
                escape(m)
            );
        }
        for a in &self.arrows {
            let _ = writeln!(
                s,
                r#"<line class="arrow" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black" marker-end="url(#head)"><title>{}</title></line>"#,
                a.from.0,
                a.from.1,
                a.to.0,
                a.to.1,
                escape(&a.model)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
