//! The line-oriented spec format.
//!
//! ```text
//! # comments run to the end of the line
//! field: Q
//!
//! algebra dual
//!   dim 2
//!   unit 1 0
//!   constants 1 0  0 1
//!   constants 0 1  0 0
//! end
//!
//! bialgebroid U
//!   constructor enveloping
//!   algebra dual
//! end
//! ```
//!
//! A file is a sequence of top-level `field` lines and blocks. A block opens
//! with `<kind> <name>` and closes with `end`. Every line inside is a key
//! followed by tokens. `=` and `;` are tokens of their own, keys may carry a
//! trailing colon, and values may be wrapped in double quotes. Numbers stay
//! as text here and are read in the selected field by the loader.

use std::fmt;

/// A token with its 1-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tok {
    pub text: String,
    pub line: usize,
    pub col: usize,
}

/// One `key args...` line of a block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: Tok,
    pub args: Vec<Tok>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Bialgebroid,
    Coefficients,
    Task,
}

impl Kind {
    fn from_keyword(s: &str) -> Option<Kind> {
        match s {
            "algebra" => Some(Kind::Algebra),
            "bialgebroid" => Some(Kind::Bialgebroid),
            "coefficients" => Some(Kind::Coefficients),
            "task" => Some(Kind::Task),
            _ => None,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Bialgebroid => "bialgebroid",
            Kind::Coefficients => "coefficients",
            Kind::Task => "task",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: Kind,
    pub name: Tok,
    pub entries: Vec<Entry>,
}

impl Block {
    /// `algebra dual`, used to name the block in messages.
    pub fn title(&self) -> String {
        format!("{} {}", self.kind.keyword(), self.name.text)
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key.text == key)
    }

    pub fn all(&self, key: &str) -> Vec<&Entry> {
        self.entries.iter().filter(|e| e.key.text == key).collect()
    }
}

/// A parsed spec file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub field: Option<Tok>,
    pub blocks: Vec<Block>,
}

impl Document {
    pub fn find(&self, kind: Kind, name: &str) -> Option<&Block> {
        self.blocks
            .iter()
            .find(|b| b.kind == kind && b.name.text == name)
    }

    pub fn of_kind(&self, kind: Kind) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(move |b| b.kind == kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

fn error(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

/// Splits one line into tokens, dropping comments.
fn tokenize(line: &str, lineno: usize) -> Result<Vec<Tok>, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let col = i + 1;
        if c == '=' || c == ';' {
            toks.push(Tok {
                text: c.to_string(),
                line: lineno,
                col,
            });
            i += 1;
        } else if c == '"' {
            let close = chars[i + 1..]
                .iter()
                .position(|&d| d == '"')
                .ok_or_else(|| error(lineno, col, "unterminated string"))?;
            let text: String = chars[i + 1..i + 1 + close].iter().collect();
            toks.push(Tok {
                text,
                line: lineno,
                col,
            });
            i += close + 2;
        } else {
            let start = i;
            while i < chars.len()
                && !chars[i].is_whitespace()
                && !matches!(chars[i], '=' | ';' | '#' | '"')
            {
                i += 1;
            }
            toks.push(Tok {
                text: chars[start..i].iter().collect(),
                line: lineno,
                col,
            });
        }
    }
    Ok(toks)
}

fn strip_colon(mut t: Tok) -> Tok {
    if t.text.len() > 1 && t.text.ends_with(':') {
        t.text.pop();
    }
    t
}

pub fn parse(src: &str) -> Result<Document, ParseError> {
    let mut doc = Document::default();
    let mut open: Option<Block> = None;
    for (k, line) in src.lines().enumerate() {
        let lineno = k + 1;
        let mut toks = tokenize(line, lineno)?.into_iter();
        let Some(first) = toks.next() else { continue };
        let first = strip_colon(first);
        let rest: Vec<Tok> = toks.collect();
        if let Some(block) = open.as_mut() {
            if first.text == "end" {
                if let Some(extra) = rest.first() {
                    return Err(error(extra.line, extra.col, "unexpected token after `end`"));
                }
                doc.blocks.push(open.take().expect("a block is open"));
            } else {
                block.entries.push(Entry {
                    key: first,
                    args: rest,
                });
            }
            continue;
        }
        if first.text == "field" {
            let [value] = rest.as_slice() else {
                return Err(error(first.line, first.col, "expected `field <name>`"));
            };
            if let Some(prev) = &doc.field {
                return Err(error(
                    value.line,
                    value.col,
                    format!("field already set on line {}", prev.line),
                ));
            }
            doc.field = Some(value.clone());
            continue;
        }
        let Some(kind) = Kind::from_keyword(&first.text) else {
            return Err(error(
                first.line,
                first.col,
                format!("unknown keyword `{}`", first.text),
            ));
        };
        let name = match (kind, rest.as_slice()) {
            (Kind::Task, []) => Tok {
                text: "task".into(),
                line: first.line,
                col: first.col,
            },
            (_, [name]) => name.clone(),
            (_, []) => {
                return Err(error(
                    first.line,
                    first.col + first.text.len(),
                    format!("`{}` needs a name", kind.keyword()),
                ))
            }
            (_, [_, extra, ..]) => {
                return Err(error(
                    extra.line,
                    extra.col,
                    "unexpected token after the block name",
                ))
            }
        };
        if let Some(prev) = doc.find(kind, &name.text) {
            return Err(error(
                name.line,
                name.col,
                format!(
                    "`{} {}` is already defined on line {}",
                    kind.keyword(),
                    name.text,
                    prev.name.line
                ),
            ));
        }
        open = Some(Block {
            kind,
            name,
            entries: Vec::new(),
        });
    }
    if let Some(block) = open {
        let last = src.lines().count().max(1);
        return Err(error(
            last,
            1,
            format!(
                "block `{}` opened on line {} is missing `end`",
                block.title(),
                block.name.line
            ),
        ));
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_blocks_and_positions() {
        let doc = parse("field: \"F(7)\"\n\nalgebra a # one-dimensional\n  dim 1\n  unit 1\n  constants 1\nend\n").unwrap();
        assert_eq!(doc.field.as_ref().unwrap().text, "F(7)");
        let a = doc.find(Kind::Algebra, "a").unwrap();
        assert_eq!(a.entries.len(), 3);
        let dim = a.get("dim").unwrap();
        assert_eq!((dim.key.line, dim.key.col), (4, 3));
        assert_eq!(dim.args[0].text, "1");
    }

    #[test]
    fn separators_split_tokens() {
        let toks = tokenize("coproduct 1 = 1 1 0;1 0 1", 3).unwrap();
        let texts: Vec<&str> = toks.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(
            texts,
            ["coproduct", "1", "=", "1", "1", "0", ";", "1", "0", "1"]
        );
        assert_eq!(toks[6].col, 20);
    }

    #[test]
    fn anonymous_task_blocks() {
        let doc = parse("task\n  seed 3\nend\n").unwrap();
        assert_eq!(doc.blocks[0].kind, Kind::Task);
        assert_eq!(doc.blocks[0].name.text, "task");
    }

    #[test]
    fn reports_unknown_keywords_with_position() {
        let e = parse("field Q\n  algebr x\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert!(e.message.contains("algebr"));
    }

    #[test]
    fn reports_unclosed_blocks() {
        let e = parse("algebra a\n  dim 1\n").unwrap_err();
        assert!(e.message.contains("algebra a"), "{e}");
    }

    #[test]
    fn rejects_duplicates_and_bad_strings() {
        let e = parse("algebra a\nend\nalgebra a\nend\n").unwrap_err();
        assert_eq!((e.line, e.col), (3, 9));
        let e = parse("field \"Q\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 7));
        let e = parse("field Q\nfield Q\n").unwrap_err();
        assert!(e.message.contains("line 1"));
    }
}
