use indexmap::IndexMap;

use super::ast::Definition;
use super::error::ParseError;
use super::parser::parse_definitions;
use super::render::render;

/// Program text with line endings normalized to LF.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SourceText(String);

impl SourceText {
    pub fn new(text: impl AsRef<str>) -> Self {
        SourceText(text.as_ref().replace("\r\n", "\n").replace('\r', "\n"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for SourceText {
    fn from(s: &str) -> Self {
        SourceText::new(s)
    }
}

impl From<String> for SourceText {
    fn from(s: String) -> Self {
        SourceText::new(s)
    }
}

impl std::fmt::Display for SourceText {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    /// The definition's own text, as `lookup` returns it.
    pub source: SourceText,
    pub definition: Definition,
}

/// The dictionary of named definitions that programs can read through
/// `lookup`. Insertion order is preserved.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DefinitionTable {
    entries: IndexMap<String, TableEntry>,
}

impl DefinitionTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(src: impl Into<SourceText>) -> Result<Self, ParseError> {
        let mut table = Self::new();
        table.add_source(src)?;
        Ok(table)
    }

    /// Parses `src` and appends its definitions. On error the table is
    /// left unchanged. Returns the names that were added.
    pub fn add_source(&mut self, src: impl Into<SourceText>) -> Result<Vec<String>, ParseError> {
        let src = src.into();
        let parsed = parse_definitions(src.as_str())?;
        if let Some(clash) = parsed
            .iter()
            .find(|p| self.entries.contains_key(&p.definition.name))
        {
            return Err(ParseError::Duplicate {
                pos: clash.pos,
                name: clash.definition.name.clone(),
            });
        }
        let mut names = Vec::with_capacity(parsed.len());
        for p in parsed {
            names.push(p.definition.name.clone());
            self.entries.insert(
                p.definition.name.clone(),
                TableEntry {
                    source: SourceText(p.text),
                    definition: p.definition,
                },
            );
        }
        Ok(names)
    }

    /// A copy of this table with `src` appended.
    pub fn with_source(&self, src: impl Into<SourceText>) -> Result<Self, ParseError> {
        let mut t = self.clone();
        t.add_source(src)?;
        Ok(t)
    }

    pub fn get(&self, name: &str) -> Option<&Definition> {
        self.entries.get(name).map(|e| &e.definition)
    }

    pub fn entry(&self, name: &str) -> Option<&TableEntry> {
        self.entries.get(name)
    }

    pub fn source(&self, name: &str) -> Option<&str> {
        self.entries.get(name).map(|e| e.source.as_str())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.get_index_of(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn definitions(&self) -> impl Iterator<Item = &Definition> {
        self.entries.values().map(|e| &e.definition)
    }

    pub fn entries(&self) -> impl Iterator<Item = &TableEntry> {
        self.entries.values()
    }

    /// Canonical text of the whole table, one blank line between
    /// definitions.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, d) in self.definitions().enumerate() {
            if i > 0 {
                out.push_str("\n\n");
            }
            out.push_str(&render(d));
        }
        out.push('\n');
        out
    }
}
