//! Fixed-width bit patterns.
//!
//! Line `i` of a gate or circuit is bit `i` of [`BitPattern::value`], so line 0
//! (the topmost input, `A` for the TSG gate) is the least significant bit.
//! Bitstrings are written with line 0 leftmost, which is how truth tables are
//! conventionally printed with `A` as the first column.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_WIDTH: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitPattern {
    width: u8,
    value: u32,
}

impl BitPattern {
    pub fn new(width: usize, value: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::BadWidth(width));
        }
        if value >> width != 0 {
            return Err(Error::ValueOverflow { width, value });
        }
        Ok(Self {
            width: width as u8,
            value,
        })
    }

    /// Builds a pattern from line values, line 0 first.
    pub fn from_lines(lines: &[bool]) -> Result<Self> {
        let value = lines
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << i));
        Self::new(lines.len(), value)
    }

    /// Parses a bitstring with line 0 leftmost.
    pub fn parse(bits: &str) -> Result<Self> {
        let lines = parse_bitstring(bits)?;
        Self::from_lines(&lines)
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn line(self, i: usize) -> bool {
        debug_assert!(i < self.width());
        (self.value >> i) & 1 == 1
    }

    pub fn lines(self) -> Vec<bool> {
        (0..self.width()).map(|i| self.line(i)).collect()
    }
}

impl fmt::Display for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bitstring(&self.lines()))
    }
}

/// Parses `0`/`1` characters into line values, leftmost character first.
pub fn parse_bitstring(bits: &str) -> Result<Vec<bool>> {
    bits.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::BadBitstring(bits.to_string())),
        })
        .collect()
}

pub fn bitstring(lines: &[bool]) -> String {
    lines.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Line values of `value` for lines `0..width`.
pub(crate) fn lines_of(value: u64, width: usize) -> Vec<bool> {
    (0..width).map(|i| (value >> i) & 1 == 1).collect()
}
