//! Plain-text design files.
//!
//! ```text
//! # optional comment lines
//! 60 6 30
//! 1 2 3 4 5 6 # base 1
//! 1 2 3 7 8 9 # recomb 1 1 1
//! ```
//!
//! The header is `n k b`; then `b` block lines of `k` ascending 1-based
//! members separated by single spaces. A block line may end with a
//! structure annotation `# base i` or `# recomb m u v`. Lines starting with
//! `#` and blank lines are ignored. Canonical output never contains them.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use duocover_core::{Block, BlockError, BlockTag, DesignFamily, ElementId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("missing header line 'n k b'")]
    MissingHeader,
    #[error("header must be three integers 'n k b', got '{0}'")]
    BadHeader(String),
    #[error("block size {k} must be between 1 and n = {n}")]
    Dimensions { n: u32, k: u32 },
    #[error("'{0}' is not a positive integer")]
    BadInteger(String),
    #[error("expected {expected} members, found {found}")]
    MemberCount { expected: u32, found: usize },
    #[error("member {element} outside [1, {n}]")]
    OutOfRange { element: ElementId, n: u32 },
    #[error("duplicate member {0}")]
    Duplicate(ElementId),
    #[error("members not ascending at {0}")]
    Unsorted(ElementId),
    #[error("header declares {declared} blocks, file has {found}")]
    CountMismatch { declared: usize, found: usize },
    #[error("malformed structure annotation '{0}'")]
    BadAnnotation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, thiserror::Error)]
pub enum DesignFileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

/// Canonical text for `family`, newline-terminated.
pub fn write_design(family: &DesignFamily) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", family.n(), family.k(), family.len()).unwrap();
    for (block, tag) in family.blocks().iter().zip(family.tags()) {
        match tag {
            Some(tag) => writeln!(out, "{block} # {tag}").unwrap(),
            None => writeln!(out, "{block}").unwrap(),
        }
    }
    out
}

fn parse_u32(token: &str) -> Result<u32, ParseErrorKind> {
    token.parse().map_err(|_| ParseErrorKind::BadInteger(token.to_string()))
}

fn parse_annotation(text: &str) -> Result<BlockTag, ParseErrorKind> {
    let bad = || ParseErrorKind::BadAnnotation(text.trim().to_string());
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let num = |t: &str| t.parse::<u32>().ok().filter(|&v| v >= 1).ok_or_else(bad);
    let half = |t: &str| match t {
        "1" => Ok(1u8),
        "2" => Ok(2u8),
        _ => Err(bad()),
    };
    match tokens.as_slice() {
        ["base", i] => Ok(BlockTag::Base { index: num(i)? }),
        ["recomb", m, u, v] => Ok(BlockTag::Recombined { pair: num(m)?, left_half: half(u)?, right_half: half(v)? }),
        _ => Err(bad()),
    }
}

pub fn read_design(text: &str) -> Result<DesignFamily, ParseError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(ParseError { line: 1, kind: ParseErrorKind::MissingHeader })?;
    let at = |line: usize| move |kind: ParseErrorKind| ParseError { line, kind };
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, k, b] = fields.as_slice() else {
        return Err(at(header_line)(ParseErrorKind::BadHeader(header.to_string())));
    };
    let bad_header = |_| at(header_line)(ParseErrorKind::BadHeader(header.to_string()));
    let (n, k) = (n.parse::<u32>().map_err(bad_header)?, k.parse::<u32>().map_err(bad_header)?);
    let declared = b.parse::<usize>().map_err(bad_header)?;
    if k == 0 || k > n {
        return Err(at(header_line)(ParseErrorKind::Dimensions { n, k }));
    }

    let mut blocks = Vec::with_capacity(declared);
    let mut tags = Vec::with_capacity(declared);
    for (line, content) in lines {
        let err = at(line);
        if blocks.len() == declared {
            return Err(err(ParseErrorKind::CountMismatch { declared, found: declared + 1 }));
        }
        let (members, annotation) = match content.split_once('#') {
            Some((m, a)) => (m, Some(a)),
            None => (content, None),
        };
        let members = members.split_whitespace().map(parse_u32).collect::<Result<Vec<_>, _>>().map_err(err)?;
        if members.len() != k as usize {
            return Err(err(ParseErrorKind::MemberCount { expected: k, found: members.len() }));
        }
        let block = Block::new(members.clone()).map_err(|e| {
            err(match e {
                BlockError::ZeroElement => ParseErrorKind::OutOfRange { element: 0, n },
                BlockError::Duplicate(e) => ParseErrorKind::Duplicate(e),
                BlockError::Unsorted(e) => ParseErrorKind::Unsorted(e),
            })
        })?;
        if let Some(&element) = members.iter().find(|&&e| e > n) {
            return Err(err(ParseErrorKind::OutOfRange { element, n }));
        }
        let tag = annotation.map(parse_annotation).transpose().map_err(err)?;
        blocks.push(block);
        tags.push(tag);
    }
    if blocks.len() != declared {
        return Err(at(header_line)(ParseErrorKind::CountMismatch { declared, found: blocks.len() }));
    }
    Ok(DesignFamily::with_tags(n, k, blocks, tags).expect("lines validated against the header"))
}

pub fn read_design_file(path: &Path) -> Result<DesignFamily, DesignFileError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| DesignFileError::Io { path: name.clone(), source })?;
    read_design(&text).map_err(|source| DesignFileError::Parse { path: name, source })
}

pub fn write_design_file(path: &Path, family: &DesignFamily) -> Result<(), DesignFileError> {
    fs::write(path, write_design(family))
        .map_err(|source| DesignFileError::Io { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use duocover_core::{build_family, ConstructionParams};

    fn sixty() -> DesignFamily {
        build_family(&ConstructionParams::new(6, 10).unwrap())
    }

    fn kind(text: &str) -> (usize, ParseErrorKind) {
        let e = read_design(text).unwrap_err();
        (e.line, e.kind)
    }

    #[test]
    fn sixty_family_header_and_first_lines() {
        let text = write_design(&sixty());
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("60 6 30"));
        assert_eq!(lines.next(), Some("1 2 3 4 5 6 # base 1"));
        assert_eq!(text.lines().nth(11), Some("1 2 3 7 8 9 # recomb 1 1 1"));
        assert!(text.ends_with("52 53 54 58 59 60 # recomb 5 2 2\n"));
        assert_eq!(read_design(&text).unwrap(), sixty());
    }

    #[test]
    fn empty_family() {
        let f = DesignFamily::new(5, 2, vec![]).unwrap();
        assert_eq!(write_design(&f), "5 2 0\n");
        assert_eq!(read_design("5 2 0\n").unwrap(), f);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let f = read_design("# a design\n\n3 2 1\n# inner\n1 3\n").unwrap();
        assert_eq!(f.blocks()[0].members(), &[1, 3]);
        assert!(!f.has_structure());
    }

    #[test]
    fn line_errors() {
        assert_eq!(kind("6 6 1\n1 2 2 4 5 6\n"), (2, ParseErrorKind::Duplicate(2)));
        assert_eq!(kind("6 3 1\n1 3 2\n"), (2, ParseErrorKind::Unsorted(2)));
        assert_eq!(kind("6 3 1\n1 2 7\n"), (2, ParseErrorKind::OutOfRange { element: 7, n: 6 }));
        assert_eq!(kind("6 3 1\n0 1 2\n"), (2, ParseErrorKind::OutOfRange { element: 0, n: 6 }));
        assert_eq!(kind("6 3 1\n1 2\n"), (2, ParseErrorKind::MemberCount { expected: 3, found: 2 }));
        assert_eq!(kind("6 3 1\n1 x 3\n"), (2, ParseErrorKind::BadInteger("x".into())));
        assert_eq!(kind("6 3 2\n1 2 3\n"), (1, ParseErrorKind::CountMismatch { declared: 2, found: 1 }));
        assert_eq!(kind("6 3 1\n1 2 3\n4 5 6\n"), (3, ParseErrorKind::CountMismatch { declared: 1, found: 2 }));
        assert_eq!(kind("6 3 1\n1 2 3 # recomb 1 3 1\n"), (2, ParseErrorKind::BadAnnotation("recomb 1 3 1".into())));
        assert_eq!(kind("6 3 1\n1 2 3 # base 0\n"), (2, ParseErrorKind::BadAnnotation("base 0".into())));
        assert_eq!(kind(""), (1, ParseErrorKind::MissingHeader));
        assert_eq!(kind("6 3\n"), (1, ParseErrorKind::BadHeader("6 3".into())));
        assert_eq!(kind("3 4 0\n"), (1, ParseErrorKind::Dimensions { n: 3, k: 4 }));
    }

    #[test]
    fn sixty_count_mismatch() {
        let text = write_design(&sixty());
        let truncated: String = text.lines().take(30).map(|l| format!("{l}\n")).collect();
        assert_eq!(kind(&truncated), (1, ParseErrorKind::CountMismatch { declared: 30, found: 29 }));
    }
}
