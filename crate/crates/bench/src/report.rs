use actw_core::VariantConfig;

/// Outcome of one (input, variant) run.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub compressed_bytes: u64,
    pub space_saving_pct: f64,
    pub seconds: f64,
}

pub type CellResult = Result<Cell, String>;

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub name: String,
    pub merge: bool,
    /// `None` when the input could not be read.
    pub original_bytes: Option<u64>,
    /// One entry per variant, in report order.
    pub cells: Vec<CellResult>,
}

impl Row {
    pub fn display_name(&self) -> String {
        if self.merge {
            format!("merge:{}", self.name)
        } else {
            self.name.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub variants: Vec<VariantConfig>,
    pub rows: Vec<Row>,
}

impl BenchReport {
    /// The same report with all wall times zeroed, for byte-stable output.
    pub fn without_timings(mut self) -> Self {
        for cell in self.rows.iter_mut().flat_map(|r| r.cells.iter_mut()).flatten() {
            cell.seconds = 0.0;
        }
        self
    }

    pub fn row(&self, name: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.name == name)
    }

    /// Space saving in percent for a row and a variant index.
    pub fn saving(&self, row: &str, variant: usize) -> Option<f64> {
        self.row(row)?
            .cells
            .get(variant)?
            .as_ref()
            .ok()
            .map(|c| c.space_saving_pct)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

pub const CSV_HEADER: [&str; 6] = [
    "file",
    "variant",
    "original_bytes",
    "compressed_bytes",
    "space_saving_pct",
    "seconds",
];

pub fn render(report: &BenchReport, format: Format) -> String {
    match format {
        Format::Csv => render_csv(report),
        Format::Markdown => render_markdown(report),
    }
}

// Failed cells keep the six-column layout: the cause goes in
// `compressed_bytes` as `failed: <cause>` and the numeric fields stay empty.
fn render_csv(report: &BenchReport) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for row in &report.rows {
        let original = row.original_bytes.map(|n| n.to_string()).unwrap_or_default();
        for (config, cell) in report.variants.iter().zip(&row.cells) {
            let record = match cell {
                Ok(c) => [
                    row.display_name(),
                    config.label(),
                    original.clone(),
                    c.compressed_bytes.to_string(),
                    format!("{:.2}", c.space_saving_pct),
                    format!("{:.3}", c.seconds),
                ],
                Err(cause) => [
                    row.display_name(),
                    config.label(),
                    original.clone(),
                    format!("failed: {cause}"),
                    String::new(),
                    String::new(),
                ],
            };
            writer.write_record(&record).expect("in-memory write");
        }
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn render_markdown(report: &BenchReport) -> String {
    let mut table: Vec<Vec<String>> = Vec::with_capacity(report.rows.len() + 1);
    let mut header = vec!["File".to_string(), "Bytes".to_string()];
    header.extend(report.variants.iter().map(VariantConfig::label));
    table.push(header);
    for row in &report.rows {
        let mut line = vec![
            row.display_name(),
            row.original_bytes.map_or("-".into(), |n| n.to_string()),
        ];
        line.extend(row.cells.iter().map(|cell| match cell {
            Ok(c) => format!("{:.2}", c.space_saving_pct),
            Err(_) => "failed".to_string(),
        }));
        table.push(line);
    }

    let columns = table[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0).max(3))
        .collect();

    let mut out = String::new();
    let mut push_row = |cells: &[String]| {
        out.push('|');
        for (c, cell) in cells.iter().enumerate() {
            if c == 0 {
                out.push_str(&format!(" {:<w$} |", cell, w = widths[c]));
            } else {
                out.push_str(&format!(" {:>w$} |", cell, w = widths[c]));
            }
        }
        out.push('\n');
    };
    push_row(&table[0]);
    let separator: Vec<String> = widths
        .iter()
        .enumerate()
        .map(|(c, &w)| {
            if c == 0 {
                "-".repeat(w)
            } else {
                format!("{}:", "-".repeat(w - 1))
            }
        })
        .collect();
    push_row(&separator);
    for row in &table[1..] {
        push_row(row);
    }
    out
}
