//! Document emission with per-glyph parallelism.

use glyphplot_core::render::{glyph_markup, render_scene_from, RenderOptions};
use glyphplot_core::scene::Scene;
use glyphplot_core::GlyphGeometry;
use rayon::prelude::*;

pub const NO_PARALLEL_ENV: &str = "GLYPHPLOT_NO_PARALLEL";

/// False when `GLYPHPLOT_NO_PARALLEL=1`.
pub fn parallel_enabled() -> bool {
    std::env::var(NO_PARALLEL_ENV).map_or(true, |v| v.trim() != "1")
}

/// Renders glyph groups on the rayon pool, then serializes the document in
/// order. Output is identical to the sequential path.
pub fn render_document(scene: &Scene, opts: &RenderOptions, parallel: bool) -> String {
    let glyphs: Vec<&GlyphGeometry> = scene.glyphs().collect();
    let border = scene.border_color.as_str();
    let groups: Vec<String> = if parallel {
        glyphs
            .par_iter()
            .map(|g| glyph_markup(g, border, opts))
            .collect()
    } else {
        glyphs
            .iter()
            .map(|g| glyph_markup(g, border, opts))
            .collect()
    };
    render_scene_from(scene, &groups)
}
