use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Tsv,
    Json,
}

/// A command result that knows how to print itself.
pub trait Render: Serialize {
    fn text(&self) -> String;

    fn tsv(&self) -> String {
        self.text()
    }
}

pub fn emit<R: Render>(format: Format, value: &R) -> anyhow::Result<()> {
    let mut out = match format {
        Format::Json => serde_json::to_string_pretty(value)?,
        Format::Tsv => value.tsv(),
        Format::Text => value.text(),
    };
    if !out.ends_with('\n') {
        out.push('\n');
    }
    print!("{out}");
    Ok(())
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}
