use alloc::string::String;
use core::fmt::Write;

use super::{Bubble, Cell, LatticeConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

const CELL_PX: i32 = 20;
const FILL_A: &str = "#4e79a7";
const FILL_B: &str = "#f28e2b";

/// Textual picture of a configuration. Rows run from the top (largest `y`) down.
pub fn render(config: &LatticeConfig, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => ascii(config),
        RenderFormat::Svg => svg(config),
    }
}

fn ascii(config: &LatticeConfig) -> String {
    let Some((x0, y0, x1, y1)) = config.bounding_box() else {
        return String::new();
    };
    let mut out = String::new();
    for y in (y0..=y1).rev() {
        for x in x0..=x1 {
            out.push(match config.bubble_at(Cell::new(x, y)) {
                Some(b) => b.label(),
                None => '.',
            });
        }
        if y != y0 {
            out.push('\n');
        }
    }
    out
}

fn svg(config: &LatticeConfig) -> String {
    let (x0, y0, x1, y1) = config.bounding_box().unwrap_or((0, 0, -1, -1));
    let width = (x1 - x0 + 1) * CELL_PX;
    let height = (y1 - y0 + 1) * CELL_PX;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for (bubble, fill) in [(Bubble::A, FILL_A), (Bubble::B, FILL_B)] {
        for c in config.cells(bubble) {
            let px = (c.x - x0) * CELL_PX;
            let py = (y1 - c.y) * CELL_PX;
            let _ = writeln!(
                out,
                r##"  <rect x="{px}" y="{py}" width="{CELL_PX}" height="{CELL_PX}" fill="{fill}" stroke="#222222" stroke-width="1" data-bubble="{}"/>"##,
                bubble.label()
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
