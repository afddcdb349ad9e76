//! Reports rendered either for people or as `key=value` lines.

#[derive(Clone, Debug, PartialEq, Eq)]
enum Line {
    Heading(String),
    Entry(String, String),
    Note(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<Line>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn heading(&mut self, s: impl Into<String>) {
        self.lines.push(Line::Heading(s.into()));
    }

    pub fn entry(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.lines.push(Line::Entry(key.into(), value.into()));
    }

    /// Free text shown only in the human rendering.
    pub fn note(&mut self, s: impl Into<String>) {
        self.lines.push(Line::Note(s.into()));
    }

    /// Value of the first entry with `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find_map(|l| match l {
            Line::Entry(k, v) if k == key => Some(v.as_str()),
            _ => None,
        })
    }

    /// One `key=value` per line, in insertion order.
    pub fn machine(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            if let Line::Entry(k, v) = l {
                s.push_str(k);
                s.push('=');
                s.push_str(v);
                s.push('\n');
            }
        }
        s
    }

    pub fn human(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            match l {
                Line::Heading(h) => {
                    if !s.is_empty() {
                        s.push('\n');
                    }
                    s.push_str(h);
                    s.push('\n');
                }
                Line::Entry(k, v) => {
                    s.push_str("  ");
                    s.push_str(k);
                    s.push_str(" = ");
                    s.push_str(v);
                    s.push('\n');
                }
                Line::Note(n) => {
                    s.push_str("  ");
                    s.push_str(n);
                    s.push('\n');
                }
            }
        }
        s
    }
}
