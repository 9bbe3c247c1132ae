use std::f64::consts::TAU;

use glyphplot_core::build_scene;
use glyphplot_core::glyph::{normalize_slices, sector_angles};
use glyphplot_core::jitter::jitter_offsets;
use glyphplot_core::model::{
    extract_compositions, pivot_long_to_wide, DataTable, PlotSpec, SliceSpec, Value,
};
use glyphplot_core::render::{render_scene, RenderOptions};
use glyphplot_core::scale::{facet_layout, nice_breaks, size_radius, LinearScale, Rect, SizeScale};
use proptest::prelude::*;

fn wide_table(rows: &[(f64, f64, Vec<u32>)]) -> DataTable {
    let mut columns = vec!["x".to_string(), "y".to_string()];
    columns.extend((0..rows[0].2.len()).map(|i| format!("s{}", i)));
    let data = rows
        .iter()
        .map(|(x, y, v)| {
            let mut r = vec![Value::Number(*x), Value::Number(*y)];
            r.extend(v.iter().map(|&n| Value::Number(n as f64)));
            r
        })
        .collect();
    DataTable::new(columns, data, "t").unwrap()
}

fn compositions(width: usize) -> impl Strategy<Value = Vec<(f64, f64, Vec<u32>)>> {
    prop::collection::vec(
        (
            -100.0..100.0f64,
            -100.0..100.0f64,
            prop::collection::vec(0u32..50, width)
                .prop_filter("not all zero", |v| v.iter().any(|&x| x > 0)),
        ),
        1..40,
    )
}

proptest! {
    #[test]
    fn affine_round_trip(d0 in -1e3..1e3f64, span in 1.0..1e3f64, r0 in 0.0..2e3f64, r1 in 0.0..2e3f64,
                         e in 0.0..0.2f64, x in -2e3..2e3f64) {
        prop_assume!((r1 - r0).abs() > 1.0);
        let s = LinearScale::new((d0, d0 + span), (r0, r1), e);
        prop_assert!((s.inverse(s.forward(x)) - x).abs() <= 1e-9);
    }

    #[test]
    fn breaks_inside_domain_and_evenly_spaced(a in -1e4..1e4f64, span in 1e-3..1e4f64, target in 3usize..10) {
        // The step is under twice the raw interval, so at least one multiple
        // fits once there are two or more intervals, and two from target 5 up.
        let b = nice_breaks(a, a + span, target);
        let min_len = if target >= 5 { 2 } else { 1 };
        prop_assert!(b.len() >= min_len);
        for w in b.windows(2) {
            prop_assert!(w[1] > w[0]);
            prop_assert!(((w[1] - w[0]) - (b[1] - b[0])).abs() <= 1e-9 * span.max(1.0));
        }
        prop_assert!(b[0] >= a && *b.last().unwrap() <= a + span);
    }

    #[test]
    fn facet_cells_are_disjoint_and_inside(n in 1usize..20, w in 100.0..2000.0f64, h in 100.0..2000.0f64) {
        let keys: Vec<Option<String>> = (0..n).map(|i| Some(i.to_string())).collect();
        let total = Rect::new(5.0, 7.0, w, h);
        let cells = facet_layout(&keys, total, None, None, 10.0).unwrap();
        prop_assert_eq!(cells.len(), n);
        for (i, c) in cells.iter().enumerate() {
            prop_assert!(total.contains_rect(&c.rect, 1e-9));
            for d in &cells[i + 1..] {
                prop_assert!(!c.rect.overlaps(&d.rect));
            }
        }
    }

    #[test]
    fn size_is_monotone_and_area_linear(lo in -100.0..100.0f64, span in 0.01..500.0f64,
                                        rmin in 0.5..10.0f64, extra in 0.0..20.0f64,
                                        t1 in 0.0..1.0f64, t2 in 0.0..1.0f64) {
        let sc = SizeScale::new((lo, lo + span), (rmin, rmin + extra)).unwrap();
        let (a, b) = (lo + span * t1.min(t2), lo + span * t1.max(t2));
        prop_assert!(size_radius(&sc, a) <= size_radius(&sc, b));
        let rmax = rmin + extra;
        let want = rmin * rmin + (a - lo) / span * (rmax * rmax - rmin * rmin);
        prop_assert!((size_radius(&sc, a).powi(2) - want).abs() <= 1e-9);
    }

    #[test]
    fn normalize_is_scale_invariant(v in prop::collection::vec(0u32..1000, 1..8), k in 0.001..1000.0f64) {
        prop_assume!(v.iter().any(|&x| x > 0));
        let base: Vec<f64> = v.iter().map(|&x| x as f64).collect();
        let scaled: Vec<f64> = base.iter().map(|x| x * k).collect();
        let (p, q) = (normalize_slices(&base).unwrap(), normalize_slices(&scaled).unwrap());
        for (a, b) in p.iter().zip(&q) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn sectors_partition_the_circle(v in prop::collection::vec(0u32..100, 1..8)) {
        prop_assume!(v.iter().any(|&x| x > 0));
        let f: Vec<f64> = v.iter().map(|&x| x as f64).collect();
        let spans = sector_angles(&normalize_slices(&f).unwrap());
        prop_assert_eq!(spans.len(), v.iter().filter(|&&x| x > 0).count());
        prop_assert_eq!(spans[0].start, 0.0);
        prop_assert_eq!(spans.last().unwrap().end, TAU);
        for w in spans.windows(2) {
            prop_assert_eq!(w[0].end, w[1].start);
        }
    }

    #[test]
    fn jitter_stays_within_amount(n in 0usize..200, amount in 0.0..50.0f64, seed: u64) {
        let offs = jitter_offsets(n, amount, seed);
        prop_assert_eq!(offs.len(), n);
        for (dx, dy) in offs {
            prop_assert!(dx.abs() <= amount && dy.abs() <= amount);
        }
    }

    #[test]
    fn pivot_then_extract_recovers_wide_values(rows in compositions(3)) {
        // Long form: one (group, category, value) row per cell.
        let mut long = Vec::new();
        for (i, (x, y, v)) in rows.iter().enumerate() {
            for (c, n) in v.iter().enumerate() {
                long.push(vec![
                    Value::Text(format!("g{}", i)),
                    Value::Number(*x),
                    Value::Number(*y),
                    Value::Text(format!("s{}", c)),
                    Value::Number(*n as f64),
                ]);
            }
        }
        let cols = ["g", "x", "y", "cat", "val"].iter().map(|s| s.to_string()).collect();
        let table = DataTable::new(cols, long, "long").unwrap();
        let group = vec!["g".to_string(), "x".to_string(), "y".to_string()];
        let wide = pivot_long_to_wide(&table, "cat", "val", &group).unwrap();
        prop_assert_eq!(wide.len(), rows.len());
        let slices = vec!["s0".to_string(), "s1".to_string(), "s2".to_string()];
        let spec = PlotSpec::new("x", "y", SliceSpec::Wide(slices));
        let ex = extract_compositions(&spec, &wide).unwrap();
        for (row, (_, _, v)) in ex.rows.iter().zip(&rows) {
            let want: Vec<f64> = v.iter().map(|&n| n as f64).collect();
            prop_assert_eq!(&row.values, &want);
        }
    }

    #[test]
    fn rendered_document_is_well_formed_and_conserves_glyphs(rows in compositions(4), interactive: bool) {
        let table = wide_table(&rows);
        let slices = (0..4).map(|i| format!("s{}", i)).collect();
        let mut spec = PlotSpec::new("x", "y", SliceSpec::Wide(slices));
        spec.interactive = interactive;
        let ex = extract_compositions(&spec, &table).unwrap();
        let scene = build_scene(&spec, &ex, None).unwrap();
        let svg = render_scene(&scene, &RenderOptions { interactive });
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let glyphs = doc.descendants().filter(|n| n.attribute("class") == Some("glyph")).count();
        prop_assert_eq!(glyphs, rows.len());
        let titles = doc.descendants().filter(|n| n.has_tag_name("title")).count();
        if interactive {
            prop_assert!(titles > 0);
        } else {
            prop_assert_eq!(titles, 0);
        }
    }
}
