//! Labels for conjugacy classes, irreducible characters and nilpotent orbits.
//!
//! Text grammar: partitions are comma lists (`2,1`), bipartitions
//! `a,b;c,d` (an empty side is `-`), split labels carry a trailing `+`/`-`,
//! exceptional names are bare tokens, and product labels join their factors
//! with ` x `. The empty product (a torus) prints as `()`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::partition::{parse_parts, Partition};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// Type A class, character or orbit.
    Part(Partition),
    /// Type B/C signed cycle type `(λ;μ)` or character `(α;β)`; type D
    /// non-split classes and characters (the latter with `α > β`).
    Bi(Partition, Partition),
    /// Type D split class `(λ;∅)±` or split character `(α;α)±`.
    SplitBi(Partition, Partition, Sign),
    /// Very even type D orbit.
    Tagged(Partition, Sign),
    /// Exceptional name.
    Named(String),
}

fn side(p: &[u32]) -> String {
    if p.is_empty() {
        "-".to_string()
    } else {
        crate::partition::parts_display(p)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Part(p) => write!(f, "{}", side(p)),
            Label::Bi(a, b) => write!(f, "{};{}", side(a), side(b)),
            Label::SplitBi(a, b, s) => write!(f, "{};{}{}", side(a), side(b), s.symbol()),
            Label::Tagged(p, s) => write!(f, "{}{}", side(p), s.symbol()),
            Label::Named(n) => write!(f, "{n}"),
        }
    }
}

fn strip_sign(s: &str) -> (&str, Option<Sign>) {
    // a trailing '-' is a sign only when it follows a digit
    if let Some(rest) = s.strip_suffix('+') {
        return (rest, Some(Sign::Plus));
    }
    if let Some(rest) = s.strip_suffix('-') {
        if rest.ends_with(|c: char| c.is_ascii_digit() || c == '-') {
            return (rest, Some(Sign::Minus));
        }
    }
    (s, None)
}

impl Label {
    /// Parse a single factor label.
    pub fn parse(s: &str) -> Result<Label> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty label".into()));
        }
        let numeric = s.chars().all(|c| c.is_ascii_digit() || ",;+-[] ".contains(c));
        if !numeric {
            return Ok(Label::Named(s.to_string()));
        }
        let (body, sign) = strip_sign(s);
        if let Some((a, b)) = body.split_once(';') {
            let (a, b) = (parse_parts(a)?, parse_parts(b)?);
            return Ok(match sign {
                Some(sg) => Label::SplitBi(a, b, sg),
                None => Label::Bi(a, b),
            });
        }
        let p = parse_parts(body)?;
        Ok(match sign {
            Some(sg) => Label::Tagged(p, sg),
            None => Label::Part(p),
        })
    }

    pub fn partition(&self) -> Option<&Partition> {
        match self {
            Label::Part(p) | Label::Tagged(p, _) => Some(p),
            _ => None,
        }
    }
}

/// A label for a product of Weyl groups / reductive factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProdLabel(pub Vec<Label>);

impl ProdLabel {
    pub fn single(l: Label) -> Self {
        ProdLabel(alloc::vec![l])
    }

    pub fn parse(s: &str) -> Result<ProdLabel> {
        let s = s.trim();
        if s == "()" || s.is_empty() {
            return Ok(ProdLabel(Vec::new()));
        }
        s.split(" x ").map(Label::parse).collect::<Result<Vec<_>>>().map(ProdLabel)
    }

    pub fn factors(&self) -> &[Label] {
        &self.0
    }
}

impl fmt::Display for ProdLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("{l}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn display_and_parse() {
        let cases = [
            Label::Part(vec![2, 1]),
            Label::Part(vec![]),
            Label::Bi(vec![1], vec![1]),
            Label::Bi(vec![], vec![2]),
            Label::SplitBi(vec![2], vec![], Sign::Minus),
            Label::Tagged(vec![2, 2], Sign::Plus),
            Label::Named("G2(a1)".into()),
            Label::Named("A1+~A1".into()),
        ];
        for c in cases {
            let s = format!("{c}");
            assert_eq!(Label::parse(&s).unwrap(), c, "{s}");
        }
        let p = ProdLabel(vec![Label::Part(vec![2]), Label::Bi(vec![1], vec![])]);
        assert_eq!(format!("{p}"), "2 x 1;-");
        assert_eq!(ProdLabel::parse("2 x 1;-").unwrap(), p);
        assert_eq!(ProdLabel::parse("()").unwrap(), ProdLabel::default());
    }
}
