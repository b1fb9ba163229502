use clap::ValueEnum;

pub const EXIT_HOLDS: u8 = 0;
pub const EXIT_REFUTED: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Records,
}

/// Output of one command in both formats.
#[derive(Debug, Default)]
pub struct Report {
    pub code: u8,
    pub text: Vec<String>,
    pub records: Vec<String>,
}

impl Report {
    pub fn new(code: u8) -> Self {
        Report { code, ..Report::default() }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.text.push(s.into());
        self
    }

    pub fn record(&mut self, s: impl Into<String>) -> &mut Self {
        self.records.push(s.into());
        self
    }

    /// Same line in both formats.
    pub fn both(&mut self, s: impl Into<String>) -> &mut Self {
        let s = s.into();
        self.text.push(s.clone());
        self.records.push(s);
        self
    }

    pub fn print(&self, format: Format) {
        let lines = match format {
            Format::Text => &self.text,
            Format::Records => &self.records,
        };
        for l in lines {
            println!("{l}");
        }
    }
}
