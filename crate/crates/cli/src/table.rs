use std::fmt::Display;

/// Two-column ASCII table with a title line.
pub struct Table {
    title: String,
    rows: Vec<(String, String)>,
}

impl Table {
    pub fn new(title: String) -> Self {
        Table { title, rows: Vec::new() }
    }

    pub fn row(&mut self, label: &str, value: impl Display) {
        self.rows.push((label.to_string(), value.to_string()));
    }

    pub fn render(&self) -> String {
        let lw = self.rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let vw = self.rows.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let width = (lw + vw + 7).max(self.title.len() + 4);
        let vw = width - lw - 7;
        let rule = format!("+{}+{}+\n", "-".repeat(lw + 2), "-".repeat(vw + 2));
        let mut out = format!("+{}+\n| {:<w$} |\n", "-".repeat(width - 2), self.title, w = width - 4);
        out.push_str(&rule);
        for (l, v) in &self.rows {
            out.push_str(&format!("| {l:<lw$} | {v:<vw$} |\n"));
        }
        out.push_str(&rule);
        out
    }

    pub fn print(&self) {
        print!("{}", self.render());
    }
}
