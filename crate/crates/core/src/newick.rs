//! Newick-style text for the four tree families.
//!
//! ```text
//! Tree := Node ';'?
//! Node := Leaf | '(' Node ',' Node ')' ( '_' rank )?
//! ```
//!
//! Leaf labels are non-empty and may not contain whitespace or any of
//! `(),;_:[]`. Unlabeled trees write leaves as `*` (`•` is accepted on
//! input). Rank subscripts are only valid, and then mandatory, in histories.
//! Branch lengths and comments are syntax errors.

use std::fmt;

use thiserror::Error;

use crate::tree::{BinaryTree, History, LabeledTopology, OrderedShape, Shape};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum NewickError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("node at byte {pos} has {count} children; only binary trees are supported")]
    Arity { pos: usize, count: usize },
    #[error("duplicate leaf label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid rank at node #{node}: {message}")]
    Rank { node: usize, message: String },
}

/// Which family a piece of Newick text describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Labeled,
    Shape,
    Ordered,
    History,
}

/// A parsed tree of any family.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyTree {
    Labeled(LabeledTopology),
    Shape(Shape),
    Ordered(OrderedShape),
    History(History),
}

impl AnyTree {
    pub fn style(&self) -> Style {
        match self {
            AnyTree::Labeled(_) => Style::Labeled,
            AnyTree::Shape(_) => Style::Shape,
            AnyTree::Ordered(_) => Style::Ordered,
            AnyTree::History(_) => Style::History,
        }
    }

    pub fn shape(&self) -> Shape {
        match self {
            AnyTree::Labeled(t) => t.shape(),
            AnyTree::Shape(t) => t.clone(),
            AnyTree::Ordered(t) => t.shape(),
            AnyTree::History(t) => t.shape(),
        }
    }
}

impl fmt::Display for AnyTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyTree::Labeled(t) => t.fmt(f),
            AnyTree::Shape(t) => t.fmt(f),
            AnyTree::Ordered(t) => t.fmt(f),
            AnyTree::History(t) => t.fmt(f),
        }
    }
}

/// Deterministic Newick text. Shapes list children in canonical order;
/// ordered shapes and histories keep their plane order; labeled topologies
/// keep the order they were built with.
pub fn serialize(tree: &AnyTree) -> String {
    tree.to_string()
}

pub fn parse(text: &str, style: Style) -> Result<AnyTree, NewickError> {
    Ok(match style {
        Style::Labeled => AnyTree::Labeled(parse_labeled(text)?),
        Style::Shape => AnyTree::Shape(parse_shape(text)?),
        Style::Ordered => AnyTree::Ordered(parse_ordered(text)?),
        Style::History => AnyTree::History(parse_history(text)?),
    })
}

/// Guesses the family from the text: rank subscripts mean a history, `*`/`•`
/// leaves mean a shape, anything else a labeled topology.
pub fn parse_auto(text: &str) -> Result<AnyTree, NewickError> {
    let raw = Parser::new(text).parse_tree()?;
    if raw.has_rank() {
        parse(text, Style::History)
    } else if raw.all_unlabeled() {
        parse(text, Style::Shape)
    } else {
        parse(text, Style::Labeled)
    }
}

pub fn parse_labeled(text: &str) -> Result<LabeledTopology, NewickError> {
    let raw = Parser::new(text).parse_tree()?;
    raw.reject_ranks()?;
    fn build(raw: &Raw) -> Result<LabeledTopology, NewickError> {
        match raw {
            Raw::Leaf { label, .. } => Ok(LabeledTopology::leaf(label.clone())),
            Raw::Internal { left, right, .. } => LabeledTopology::join(build(left)?, build(right)?),
        }
    }
    build(&raw)
}

/// Parses an unlabeled tree and returns its canonical shape.
pub fn parse_shape(text: &str) -> Result<Shape, NewickError> {
    Ok(parse_ordered(text)?.shape())
}

/// Parses an unlabeled tree keeping its plane order.
pub fn parse_ordered(text: &str) -> Result<OrderedShape, NewickError> {
    let raw = Parser::new(text).parse_tree()?;
    raw.reject_ranks()?;
    raw.require_unlabeled()?;
    Ok(raw.to_ordered())
}

pub fn parse_history(text: &str) -> Result<History, NewickError> {
    let raw = Parser::new(text).parse_tree()?;
    raw.require_unlabeled()?;
    let mut ranks = Vec::new();
    let mut positions = Vec::new();
    raw.collect_ranks(&mut ranks, &mut positions)?;
    History::new(raw.to_ordered(), ranks).map_err(|e| match e {
        NewickError::Rank { node, message } => NewickError::Rank {
            node,
            message: format!("{message} (byte {})", positions[node]),
        },
        other => other,
    })
}

#[derive(Debug)]
enum Raw {
    Leaf {
        label: String,
        pos: usize,
    },
    Internal {
        left: Box<Raw>,
        right: Box<Raw>,
        rank: Option<usize>,
        pos: usize,
    },
}

impl Raw {
    fn has_rank(&self) -> bool {
        match self {
            Raw::Leaf { .. } => false,
            Raw::Internal {
                left, right, rank, ..
            } => rank.is_some() || left.has_rank() || right.has_rank(),
        }
    }

    fn all_unlabeled(&self) -> bool {
        match self {
            Raw::Leaf { label, .. } => is_unlabeled_leaf(label),
            Raw::Internal { left, right, .. } => left.all_unlabeled() && right.all_unlabeled(),
        }
    }

    fn reject_ranks(&self) -> Result<(), NewickError> {
        match self {
            Raw::Leaf { .. } => Ok(()),
            Raw::Internal {
                left,
                right,
                rank,
                pos,
            } => {
                if rank.is_some() {
                    return Err(NewickError::Syntax {
                        pos: *pos,
                        message: "rank subscripts are only allowed in histories".into(),
                    });
                }
                left.reject_ranks()?;
                right.reject_ranks()
            }
        }
    }

    fn require_unlabeled(&self) -> Result<(), NewickError> {
        match self {
            Raw::Leaf { label, pos } if !is_unlabeled_leaf(label) => Err(NewickError::Syntax {
                pos: *pos,
                message: format!("expected `*` or `•` for an unlabeled leaf, found `{label}`"),
            }),
            Raw::Leaf { .. } => Ok(()),
            Raw::Internal { left, right, .. } => {
                left.require_unlabeled()?;
                right.require_unlabeled()
            }
        }
    }

    fn collect_ranks(
        &self,
        ranks: &mut Vec<usize>,
        positions: &mut Vec<usize>,
    ) -> Result<(), NewickError> {
        match self {
            Raw::Leaf { pos, .. } => {
                ranks.push(0);
                positions.push(*pos);
                Ok(())
            }
            Raw::Internal {
                left,
                right,
                rank,
                pos,
            } => {
                let Some(rank) = rank else {
                    return Err(NewickError::Rank {
                        node: ranks.len(),
                        message: format!("internal node at byte {pos} has no `_rank` subscript"),
                    });
                };
                ranks.push(*rank);
                positions.push(*pos);
                left.collect_ranks(ranks, positions)?;
                right.collect_ranks(ranks, positions)
            }
        }
    }

    fn to_ordered(&self) -> OrderedShape {
        match self {
            Raw::Leaf { .. } => OrderedShape::leaf(),
            Raw::Internal { left, right, .. } => {
                OrderedShape::join(left.to_ordered(), right.to_ordered())
            }
        }
    }
}

fn is_unlabeled_leaf(label: &str) -> bool {
    label == "*" || label == "•"
}

fn is_label_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '(' | ')' | ',' | ';' | '_' | ':' | '[' | ']')
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, NewickError> {
        Err(NewickError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn describe(c: Option<char>) -> String {
        c.map_or_else(|| "end of input".to_string(), |c| format!("`{c}`"))
    }

    fn parse_tree(mut self) -> Result<Raw, NewickError> {
        let node = self.parse_node()?;
        if self.peek() == Some(';') {
            self.pos += 1;
        }
        match self.peek() {
            None => Ok(node),
            c => self.error(format!("unexpected {} after tree", Self::describe(c))),
        }
    }

    fn parse_node(&mut self) -> Result<Raw, NewickError> {
        match self.peek() {
            Some('(') => self.parse_internal(),
            Some(c) if is_label_char(c) => Ok(self.parse_leaf()),
            c => self.error(format!(
                "expected `(` or a leaf label, found {}",
                Self::describe(c)
            )),
        }
    }

    fn parse_leaf(&mut self) -> Raw {
        let start = self.pos;
        let len = self
            .rest()
            .char_indices()
            .find(|(_, c)| !is_label_char(*c))
            .map_or(self.rest().len(), |(i, _)| i);
        self.pos += len;
        Raw::Leaf {
            label: self.text[start..self.pos].to_string(),
            pos: start,
        }
    }

    fn parse_internal(&mut self) -> Result<Raw, NewickError> {
        let open = self.pos;
        self.pos += 1;
        let mut children = vec![self.parse_node()?];
        loop {
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    children.push(self.parse_node()?);
                }
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                c => {
                    return self.error(format!("expected `,` or `)`, found {}", Self::describe(c)))
                }
            }
        }
        if children.len() != 2 {
            return Err(NewickError::Arity {
                pos: open,
                count: children.len(),
            });
        }
        let rank = if self.peek() == Some('_') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.rest().chars().take_while(char::is_ascii_digit).count();
            if digits == 0 {
                return self.error("expected a rank after `_`");
            }
            let value = self.rest()[..digits]
                .parse::<usize>()
                .or_else(|_| self.error("rank does not fit in an integer"))?;
            self.pos += digits;
            Some(value)
        } else {
            None
        };
        let right = children.pop().unwrap();
        let left = children.pop().unwrap();
        Ok(Raw::Internal {
            left: Box::new(left),
            right: Box::new(right),
            rank,
            pos: open,
        })
    }
}
