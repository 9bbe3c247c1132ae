//! Plot specification, typed data table, validation and composition extraction.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::geo::ProjectionKind;
use crate::num::fmt_decimal;

/// One table cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Number(f64),
    Text(String),
    Missing,
}

impl Value {
    /// Types a raw cell: empty is missing, integer/decimal/scientific
    /// notation is numeric, anything else is text.
    pub fn parse(cell: &str) -> Value {
        let t = cell.trim();
        if t.is_empty() {
            return Value::Missing;
        }
        let numeric_chars = t
            .bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'+' | b'-' | b'.' | b'e' | b'E'));
        if numeric_chars && t.bytes().any(|b| b.is_ascii_digit()) {
            if let Ok(v) = t.parse::<f64>() {
                if v.is_finite() {
                    return Value::Number(v);
                }
            }
        }
        Value::Text(cell.to_string())
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            Value::Number(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_missing(&self) -> bool {
        matches!(self, Value::Missing)
    }

    /// Key text used for facets, groups and long-format categories.
    pub fn key(&self) -> String {
        match self {
            Value::Number(v) => fmt_decimal(*v, 6),
            Value::Text(s) => s.clone(),
            Value::Missing => String::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TableError {
    DuplicateColumn(String),
    RowWidth {
        row: usize,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::DuplicateColumn(c) => write!(f, "duplicate column name '{}'", c),
            TableError::RowWidth {
                row,
                expected,
                found,
            } => write!(
                f,
                "row {} has {} fields, expected {}",
                row + 1,
                found,
                expected
            ),
        }
    }
}

/// Columnar-addressable rows of typed cells.
#[derive(Clone, Debug, PartialEq)]
pub struct DataTable {
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
    source: String,
}

impl DataTable {
    pub fn new(
        columns: Vec<String>,
        rows: Vec<Vec<Value>>,
        source: impl Into<String>,
    ) -> Result<Self, TableError> {
        for (i, c) in columns.iter().enumerate() {
            if columns[..i].contains(c) {
                return Err(TableError::DuplicateColumn(c.clone()));
            }
        }
        for (row, values) in rows.iter().enumerate() {
            if values.len() != columns.len() {
                return Err(TableError::RowWidth {
                    row,
                    expected: columns.len(),
                    found: values.len(),
                });
            }
        }
        Ok(DataTable {
            columns,
            rows,
            source: source.into(),
        })
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn cell(&self, row: usize, column: usize) -> &Value {
        &self.rows[row][column]
    }
}

/// Which columns hold the slice values.
#[derive(Clone, Debug, PartialEq)]
pub enum SliceSpec {
    /// One column per category, in legend order.
    Wide(Vec<String>),
    /// One row per (group, category) pair.
    Long {
        category: String,
        value: String,
        group_by: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct JitterSpec {
    /// Maximum displacement in screen units; `None` means half the pie radius.
    pub amount: Option<f64>,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Labels {
    pub title: Option<String>,
    pub x: Option<String>,
    pub y: Option<String>,
}

pub const DEFAULT_PIE_RADIUS: f64 = 10.0;
pub const DEFAULT_SIZE_RANGE: (f64, f64) = (4.0, 18.0);
pub const DEFAULT_BORDER: &str = "#ffffff";

/// Declarative description of one plot.
#[derive(Clone, Debug, PartialEq)]
pub struct PlotSpec {
    pub x_column: String,
    pub y_column: String,
    pub slices: SliceSpec,
    /// Glyph radius in output user units.
    pub pie_radius: f64,
    pub size_column: Option<String>,
    pub size_range: (f64, f64),
    pub facet_column: Option<String>,
    pub facet_rows: Option<usize>,
    pub facet_cols: Option<usize>,
    pub color_overrides: BTreeMap<String, String>,
    pub border_color: String,
    pub projection: Option<ProjectionKind>,
    /// Lambert center `(lon, lat)` in degrees.
    pub projection_center: Option<(f64, f64)>,
    pub map_source: Option<String>,
    pub jitter: Option<JitterSpec>,
    pub interactive: bool,
    pub labels: Labels,
    pub width: f64,
    pub height: f64,
    pub skip_incomplete_rows: bool,
    pub clip_glyphs: bool,
}

impl PlotSpec {
    pub fn new(
        x_column: impl Into<String>,
        y_column: impl Into<String>,
        slices: SliceSpec,
    ) -> Self {
        PlotSpec {
            x_column: x_column.into(),
            y_column: y_column.into(),
            slices,
            pie_radius: DEFAULT_PIE_RADIUS,
            size_column: None,
            size_range: DEFAULT_SIZE_RANGE,
            facet_column: None,
            facet_rows: None,
            facet_cols: None,
            color_overrides: BTreeMap::new(),
            border_color: DEFAULT_BORDER.to_string(),
            projection: None,
            projection_center: None,
            map_source: None,
            jitter: None,
            interactive: false,
            labels: Labels::default(),
            width: 600.0,
            height: 600.0,
            skip_incomplete_rows: false,
            clip_glyphs: false,
        }
    }

    /// Map mode: positions are longitude/latitude and go through a projection.
    pub fn is_map(&self) -> bool {
        self.projection.is_some() || self.map_source.is_some()
    }

    fn referenced_columns(&self) -> Vec<&str> {
        let mut cols: Vec<&str> = Vec::new();
        cols.push(&self.x_column);
        cols.push(&self.y_column);
        match &self.slices {
            SliceSpec::Wide(names) => cols.extend(names.iter().map(String::as_str)),
            SliceSpec::Long {
                category,
                value,
                group_by,
            } => {
                cols.push(category);
                cols.push(value);
                cols.extend(group_by.iter().map(String::as_str));
            }
        }
        if let Some(s) = &self.size_column {
            cols.push(s);
        }
        if let Some(f) = &self.facet_column {
            cols.push(f);
        }
        cols
    }
}

/// `#rgb` or `#rrggbb`.
pub fn is_hex_color(s: &str) -> bool {
    let b = s.as_bytes();
    (b.len() == 4 || b.len() == 7) && b[0] == b'#' && b[1..].iter().all(u8::is_ascii_hexdigit)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ValidationIssue {
    MissingColumn(String),
    NonNumericColumn(String),
    ProjectionRequired,
    NoSliceColumns,
    DuplicateSliceColumn(String),
    InvalidRadius(f64),
    InvalidDimensions {
        width: f64,
        height: f64,
    },
    InvalidSizeRange {
        min: f64,
        max: f64,
    },
    InvalidJitter(f64),
    InvalidColor {
        category: String,
        color: String,
    },
    InvalidFacetGrid,
    CoordinateOutOfRange {
        row: usize,
        column: String,
        value: f64,
    },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::MissingColumn(c) => write!(f, "column '{}' not found in data", c),
            ValidationIssue::NonNumericColumn(c) => {
                write!(f, "column '{}' must be numeric but holds only text", c)
            }
            ValidationIssue::ProjectionRequired => {
                f.write_str("map source is set but no projection was given")
            }
            ValidationIssue::NoSliceColumns => f.write_str("no slice columns given"),
            ValidationIssue::DuplicateSliceColumn(c) => {
                write!(f, "slice column '{}' listed more than once", c)
            }
            ValidationIssue::InvalidRadius(r) => write!(f, "pie radius {} must be positive", r),
            ValidationIssue::InvalidDimensions { width, height } => {
                write!(f, "output size {}x{} must be positive", width, height)
            }
            ValidationIssue::InvalidSizeRange { min, max } => {
                write!(f, "size range ({}, {}) needs 0 < min <= max", min, max)
            }
            ValidationIssue::InvalidJitter(a) => write!(f, "jitter amount {} is negative", a),
            ValidationIssue::InvalidColor { category, color } => {
                write!(
                    f,
                    "color '{}' for category '{}' is not a hex color",
                    color, category
                )
            }
            ValidationIssue::InvalidFacetGrid => f.write_str("facet rows/cols must be at least 1"),
            ValidationIssue::CoordinateOutOfRange { row, column, value } => write!(
                f,
                "row {}: {} in column '{}' is outside the valid degree range",
                row + 1,
                value,
                column
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Lists every reason the spec cannot be rendered against `table`.
pub fn validate_spec(spec: &PlotSpec, table: &DataTable) -> ValidationReport {
    let mut issues = Vec::new();

    if !(spec.pie_radius > 0.0 && spec.pie_radius.is_finite()) {
        issues.push(ValidationIssue::InvalidRadius(spec.pie_radius));
    }
    if !(spec.width > 0.0 && spec.height > 0.0 && spec.width.is_finite() && spec.height.is_finite())
    {
        issues.push(ValidationIssue::InvalidDimensions {
            width: spec.width,
            height: spec.height,
        });
    }
    let (rmin, rmax) = spec.size_range;
    if !(rmin > 0.0 && rmin <= rmax && rmax.is_finite()) {
        issues.push(ValidationIssue::InvalidSizeRange {
            min: rmin,
            max: rmax,
        });
    }
    if let Some(JitterSpec {
        amount: Some(a), ..
    }) = &spec.jitter
    {
        if !(*a >= 0.0 && a.is_finite()) {
            issues.push(ValidationIssue::InvalidJitter(*a));
        }
    }
    if spec.facet_rows == Some(0) || spec.facet_cols == Some(0) {
        issues.push(ValidationIssue::InvalidFacetGrid);
    }
    if spec.map_source.is_some() && spec.projection.is_none() {
        issues.push(ValidationIssue::ProjectionRequired);
    }
    for (category, color) in &spec.color_overrides {
        if !is_hex_color(color) {
            issues.push(ValidationIssue::InvalidColor {
                category: category.clone(),
                color: color.clone(),
            });
        }
    }
    if !is_hex_color(&spec.border_color) {
        issues.push(ValidationIssue::InvalidColor {
            category: "<border>".to_string(),
            color: spec.border_color.clone(),
        });
    }

    match &spec.slices {
        SliceSpec::Wide(names) => {
            if names.is_empty() {
                issues.push(ValidationIssue::NoSliceColumns);
            }
            for (i, n) in names.iter().enumerate() {
                if names[..i].contains(n) {
                    issues.push(ValidationIssue::DuplicateSliceColumn(n.clone()));
                }
            }
        }
        SliceSpec::Long {
            category, value, ..
        } => {
            if category.is_empty() || value.is_empty() {
                issues.push(ValidationIssue::NoSliceColumns);
            }
        }
    }

    let mut seen_missing: Vec<&str> = Vec::new();
    for col in spec.referenced_columns() {
        if table.column_index(col).is_none() && !seen_missing.contains(&col) {
            seen_missing.push(col);
            issues.push(ValidationIssue::MissingColumn(col.to_string()));
        }
    }

    let mut numeric: Vec<&str> = Vec::new();
    numeric.push(&spec.x_column);
    numeric.push(&spec.y_column);
    match &spec.slices {
        SliceSpec::Wide(names) => numeric.extend(names.iter().map(String::as_str)),
        SliceSpec::Long { value, .. } => numeric.push(value),
    }
    if let Some(s) = &spec.size_column {
        numeric.push(s);
    }
    let mut seen_text: Vec<&str> = Vec::new();
    for col in numeric {
        if let Some(idx) = table.column_index(col) {
            if is_text_column(table, idx) && !seen_text.contains(&col) {
                seen_text.push(col);
                issues.push(ValidationIssue::NonNumericColumn(col.to_string()));
            }
        }
    }

    if spec.is_map() {
        for (column, limit) in [(&spec.x_column, 180.0), (&spec.y_column, 90.0)] {
            if let Some(idx) = table.column_index(column) {
                for (row, values) in table.rows().iter().enumerate() {
                    if let Value::Number(v) = values[idx] {
                        if !(-limit..=limit).contains(&v) {
                            issues.push(ValidationIssue::CoordinateOutOfRange {
                                row,
                                column: column.clone(),
                                value: v,
                            });
                        }
                    }
                }
            }
        }
    }

    ValidationReport { issues }
}

/// A column with text cells and no numbers at all.
fn is_text_column(table: &DataTable, idx: usize) -> bool {
    let mut any_text = false;
    for row in table.rows() {
        match &row[idx] {
            Value::Number(_) => return false,
            Value::Text(_) => any_text = true,
            Value::Missing => {}
        }
    }
    any_text
}

/// One glyph's worth of data.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionRow {
    pub anchor_x: f64,
    pub anchor_y: f64,
    /// Raw slice values in global category order.
    pub values: Vec<f64>,
    pub size_value: Option<f64>,
    pub facet_key: Option<String>,
    /// Source row index (first row of the group for long data).
    pub row_id: usize,
}

/// A per-row data problem. `row` is the 0-based data row index.
#[derive(Clone, Debug, PartialEq)]
pub enum DataError {
    NegativeSliceValue {
        row: usize,
        column: String,
        value: f64,
    },
    AllZeroComposition {
        row: usize,
    },
    NonNumeric {
        row: usize,
        column: String,
        text: String,
    },
    MissingValue {
        row: usize,
        column: String,
    },
}

impl DataError {
    pub fn row(&self) -> usize {
        match self {
            DataError::NegativeSliceValue { row, .. }
            | DataError::AllZeroComposition { row }
            | DataError::NonNumeric { row, .. }
            | DataError::MissingValue { row, .. } => *row,
        }
    }

    pub fn column(&self) -> Option<&str> {
        match self {
            DataError::NegativeSliceValue { column, .. }
            | DataError::NonNumeric { column, .. }
            | DataError::MissingValue { column, .. } => Some(column),
            DataError::AllZeroComposition { .. } => None,
        }
    }
}

impl fmt::Display for DataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataError::NegativeSliceValue { column, value, .. } => {
                write!(f, "negative slice value {} in column '{}'", value, column)
            }
            DataError::AllZeroComposition { .. } => f.write_str("all slice values are zero"),
            DataError::NonNumeric { column, text, .. } => {
                write!(f, "non-numeric value '{}' in column '{}'", text, column)
            }
            DataError::MissingValue { column, .. } => {
                write!(f, "missing value in column '{}'", column)
            }
        }
    }
}

/// Accepted compositions plus rows skipped under `skip_incomplete_rows`.
#[derive(Clone, Debug, PartialEq)]
pub struct Extraction {
    pub categories: Vec<String>,
    pub rows: Vec<CompositionRow>,
    pub skipped: Vec<DataError>,
}

fn col(table: &DataTable, name: &str) -> usize {
    table
        .column_index(name)
        .unwrap_or_else(|| panic!("column '{}' missing; run validate_spec first", name))
}

/// Reads a required number. `Ok(None)` means the cell is missing.
fn number_at(table: &DataTable, row: usize, column: usize) -> Result<Option<f64>, DataError> {
    match table.cell(row, column) {
        Value::Number(v) => Ok(Some(*v)),
        Value::Missing => Ok(None),
        Value::Text(t) => Err(DataError::NonNumeric {
            row,
            column: table.columns()[column].clone(),
            text: t.clone(),
        }),
    }
}

struct RowScan<'a> {
    table: &'a DataTable,
    row: usize,
    errors: Vec<DataError>,
    missing: Option<DataError>,
}

impl RowScan<'_> {
    fn number(&mut self, column: usize) -> f64 {
        match number_at(self.table, self.row, column) {
            Ok(Some(v)) => v,
            Ok(None) => {
                if self.missing.is_none() {
                    self.missing = Some(DataError::MissingValue {
                        row: self.row,
                        column: self.table.columns()[column].clone(),
                    });
                }
                0.0
            }
            Err(e) => {
                self.errors.push(e);
                0.0
            }
        }
    }

    fn slice_value(&mut self, column: usize) -> f64 {
        let v = self.number(column);
        if v < 0.0 {
            self.errors.push(DataError::NegativeSliceValue {
                row: self.row,
                column: self.table.columns()[column].clone(),
                value: v,
            });
        }
        v
    }

    fn key(&mut self, column: usize) -> String {
        let v = self.table.cell(self.row, column);
        if v.is_missing() && self.missing.is_none() {
            self.missing = Some(DataError::MissingValue {
                row: self.row,
                column: self.table.columns()[column].clone(),
            });
        }
        v.key()
    }
}

/// Pulls one composition per plottable row (wide) or per group (long).
///
/// Every problem is collected; any non-skippable problem fails the whole
/// extraction so callers can report them all at once.
pub fn extract_compositions(
    spec: &PlotSpec,
    table: &DataTable,
) -> Result<Extraction, Vec<DataError>> {
    match &spec.slices {
        SliceSpec::Wide(names) => extract_wide(spec, table, names),
        SliceSpec::Long {
            category,
            value,
            group_by,
        } => extract_long(spec, table, category, value, group_by),
    }
}

fn extract_wide(
    spec: &PlotSpec,
    table: &DataTable,
    names: &[String],
) -> Result<Extraction, Vec<DataError>> {
    let x = col(table, &spec.x_column);
    let y = col(table, &spec.y_column);
    let slice_cols: Vec<usize> = names.iter().map(|n| col(table, n)).collect();
    let size = spec.size_column.as_deref().map(|c| col(table, c));
    let facet = spec.facet_column.as_deref().map(|c| col(table, c));

    let mut rows = Vec::new();
    let mut errors = Vec::new();
    let mut skipped = Vec::new();
    for row in 0..table.len() {
        let mut scan = RowScan {
            table,
            row,
            errors: Vec::new(),
            missing: None,
        };
        let anchor_x = scan.number(x);
        let anchor_y = scan.number(y);
        let values: Vec<f64> = slice_cols.iter().map(|&c| scan.slice_value(c)).collect();
        let size_value = size.map(|c| scan.number(c));
        let facet_key = facet.map(|c| scan.key(c));

        if !scan.errors.is_empty() {
            errors.append(&mut scan.errors);
            continue;
        }
        if let Some(m) = scan.missing {
            if spec.skip_incomplete_rows {
                skipped.push(m);
            } else {
                errors.push(m);
            }
            continue;
        }
        if values.iter().all(|&v| v == 0.0) {
            errors.push(DataError::AllZeroComposition { row });
            continue;
        }
        rows.push(CompositionRow {
            anchor_x,
            anchor_y,
            values,
            size_value,
            facet_key,
            row_id: row,
        });
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    Ok(Extraction {
        categories: names.to_vec(),
        rows,
        skipped,
    })
}

struct Group {
    first_row: usize,
    anchor_x: f64,
    anchor_y: f64,
    size_value: Option<f64>,
    facet_key: Option<String>,
    sums: BTreeMap<usize, f64>,
}

fn extract_long(
    spec: &PlotSpec,
    table: &DataTable,
    category: &str,
    value: &str,
    group_by: &[String],
) -> Result<Extraction, Vec<DataError>> {
    let x = col(table, &spec.x_column);
    let y = col(table, &spec.y_column);
    let cat = col(table, category);
    let val = col(table, value);
    let group_cols: Vec<usize> = group_by.iter().map(|g| col(table, g)).collect();
    let size = spec.size_column.as_deref().map(|c| col(table, c));
    let facet = spec.facet_column.as_deref().map(|c| col(table, c));

    let mut categories: Vec<String> = Vec::new();
    let mut groups: Vec<Group> = Vec::new();
    let mut group_index: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    let mut errors = Vec::new();
    let mut skipped = Vec::new();

    for row in 0..table.len() {
        let mut scan = RowScan {
            table,
            row,
            errors: Vec::new(),
            missing: None,
        };
        let key: Vec<String> = group_cols.iter().map(|&c| scan.key(c)).collect();
        let category_name = scan.key(cat);
        let v = scan.slice_value(val);
        let anchor_x = scan.number(x);
        let anchor_y = scan.number(y);
        let size_value = size.map(|c| scan.number(c));
        let facet_key = facet.map(|c| scan.key(c));

        if !scan.errors.is_empty() {
            errors.append(&mut scan.errors);
            continue;
        }
        if let Some(m) = scan.missing {
            if spec.skip_incomplete_rows {
                skipped.push(m);
            } else {
                errors.push(m);
            }
            continue;
        }
        let ci = match categories.iter().position(|c| *c == category_name) {
            Some(i) => i,
            None => {
                categories.push(category_name);
                categories.len() - 1
            }
        };
        let gi = *group_index.entry(key).or_insert_with(|| {
            groups.push(Group {
                first_row: row,
                anchor_x,
                anchor_y,
                size_value,
                facet_key,
                sums: BTreeMap::new(),
            });
            groups.len() - 1
        });
        *groups[gi].sums.entry(ci).or_insert(0.0) += v;
    }

    let mut rows = Vec::with_capacity(groups.len());
    for g in groups {
        let values: Vec<f64> = (0..categories.len())
            .map(|i| g.sums.get(&i).copied().unwrap_or(0.0))
            .collect();
        if values.iter().all(|&v| v == 0.0) {
            errors.push(DataError::AllZeroComposition { row: g.first_row });
            continue;
        }
        rows.push(CompositionRow {
            anchor_x: g.anchor_x,
            anchor_y: g.anchor_y,
            values,
            size_value: g.size_value,
            facet_key: g.facet_key,
            row_id: g.first_row,
        });
    }
    if !errors.is_empty() {
        errors.sort_by_key(DataError::row);
        return Err(errors);
    }
    Ok(Extraction {
        categories,
        rows,
        skipped,
    })
}

/// Long to wide: one row per distinct group key, one column per category.
///
/// Output columns are the group columns followed by the categories in
/// first-appearance order. Duplicate (group, category) pairs are summed and
/// absent pairs are zero.
pub fn pivot_long_to_wide(
    table: &DataTable,
    category_col: &str,
    value_col: &str,
    group_cols: &[String],
) -> Result<DataTable, Vec<DataError>> {
    let cat = col(table, category_col);
    let val = col(table, value_col);
    let groups: Vec<usize> = group_cols.iter().map(|g| col(table, g)).collect();

    let mut categories: Vec<String> = Vec::new();
    let mut keys: Vec<Vec<Value>> = Vec::new();
    let mut sums: Vec<Vec<f64>> = Vec::new();
    let mut index: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    let mut errors = Vec::new();

    for row in 0..table.len() {
        let v = match number_at(table, row, val) {
            Ok(Some(v)) => v,
            Ok(None) => {
                errors.push(DataError::MissingValue {
                    row,
                    column: value_col.to_string(),
                });
                continue;
            }
            Err(e) => {
                errors.push(e);
                continue;
            }
        };
        let name = table.cell(row, cat).key();
        let ci = match categories.iter().position(|c| *c == name) {
            Some(i) => i,
            None => {
                categories.push(name);
                categories.len() - 1
            }
        };
        let key_text: Vec<String> = groups.iter().map(|&g| table.cell(row, g).key()).collect();
        let gi = *index.entry(key_text).or_insert_with(|| {
            keys.push(groups.iter().map(|&g| table.cell(row, g).clone()).collect());
            sums.push(Vec::new());
            keys.len() - 1
        });
        let s = &mut sums[gi];
        if s.len() <= ci {
            s.resize(ci + 1, 0.0);
        }
        s[ci] += v;
    }
    if !errors.is_empty() {
        return Err(errors);
    }

    let mut columns: Vec<String> = group_cols.to_vec();
    columns.extend(categories.iter().cloned());
    let rows = keys
        .into_iter()
        .zip(sums)
        .map(|(mut key, s)| {
            key.extend(
                (0..categories.len()).map(|i| Value::Number(s.get(i).copied().unwrap_or(0.0))),
            );
            key
        })
        .collect();
    DataTable::new(columns, rows, table.source()).map_err(|_| {
        // A category named like a group column.
        alloc::vec![DataError::NonNumeric {
            row: 0,
            column: category_col.to_string(),
            text: "category collides with a group column".to_string(),
        }]
    })
}
