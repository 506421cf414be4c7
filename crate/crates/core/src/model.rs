//! Shared vocabulary for the evaluation pipeline: block geometry, grid
//! configuration, trial indexing, and evaluation-wide constants.

use serde::{Deserialize, Serialize};

/// The three block shapes a generator may drop. Names follow the
/// `b<width><height>` convention: `b11` is the unit square, `b13` a
/// vertical bar, `b31` a horizontal bar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockType {
    B11,
    B13,
    B31,
}

impl BlockType {
    /// Fixed geometry table, in grid cells. All widths are odd so a
    /// center column exists exactly.
    pub fn dimensions(self) -> (u32, u32) {
        match self {
            BlockType::B11 => (1, 1),
            BlockType::B13 => (1, 3),
            BlockType::B31 => (3, 1),
        }
    }

    pub fn width(self) -> u32 {
        self.dimensions().0
    }

    pub fn height(self) -> u32 {
        self.dimensions().1
    }

    /// The lowercase literal used in `drop_block()` calls.
    pub fn literal(self) -> &'static str {
        match self {
            BlockType::B11 => "b11",
            BlockType::B13 => "b13",
            BlockType::B31 => "b31",
        }
    }

    pub fn from_literal(s: &str) -> Option<Self> {
        match s {
            "b11" => Some(BlockType::B11),
            "b13" => Some(BlockType::B13),
            "b31" => Some(BlockType::B31),
            _ => None,
        }
    }
}

/// One `drop_block(block_type, x_position)` call. `x_position` is the
/// center column of the dropped block; range checking happens at settle
/// time, not at parse time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropCall {
    pub block_type: BlockType,
    pub x_position: i64,
}

impl DropCall {
    pub fn new(block_type: BlockType, x_position: i64) -> Self {
        Self {
            block_type,
            x_position,
        }
    }

    /// Leftmost and rightmost columns covered by this call. Widths are
    /// odd, so the span is symmetric around `x_position`.
    pub fn occupied_columns(&self) -> (i64, i64) {
        let half = (self.block_type.width() as i64 - 1) / 2;
        (self.x_position - half, self.x_position + half)
    }
}

/// Grid extents for settling, in cells. Column 0 is the left edge, row 0
/// rests on the ground.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridConfig {
    pub width: u32,
    pub height: u32,
}

impl GridConfig {
    pub fn new(width: u32, height: u32) -> Self {
        assert!(width >= 3 && height >= 3, "grid must be at least 3x3");
        Self { width, height }
    }
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            width: 20,
            height: 16,
        }
    }
}

/// A block at rest: its shape plus the cell of its bottom-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacedBlock {
    pub block_type: BlockType,
    pub left_col: u32,
    pub bottom_row: u32,
}

impl PlacedBlock {
    /// Row just above the block's top cell.
    pub fn top(&self) -> u32 {
        self.bottom_row + self.block_type.height()
    }

    /// Column just past the block's rightmost cell.
    pub fn right(&self) -> u32 {
        self.left_col + self.block_type.width()
    }

    /// All cells (col, row) covered by the block.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (self.left_col..self.right())
            .flat_map(move |c| (self.bottom_row..self.top()).map(move |r| (c, r)))
    }
}

/// A settled structure: grid extents plus blocks in drop order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub grid: GridConfig,
    pub blocks: Vec<PlacedBlock>,
}

impl Level {
    pub fn empty(grid: GridConfig) -> Self {
        Self {
            grid,
            blocks: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Number of target characters in the default alphabet.
pub const DEFAULT_CHARACTER_COUNT: usize = 26;

/// Evaluation-wide dimensions: trials per (character, program), the
/// target alphabet, and the program count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationConfig {
    /// Trials per (character, program). Diversity needs at least one pair.
    pub trials: usize,
    /// Ordered target characters; index 0 is the first character.
    pub alphabet: Vec<char>,
}

impl EvaluationConfig {
    pub fn new(trials: usize, alphabet: Vec<char>) -> Self {
        assert!(trials >= 2, "diversity needs at least two trials");
        assert!(!alphabet.is_empty(), "alphabet must be nonempty");
        Self { trials, alphabet }
    }

    /// Uppercase A-Z with the given trial count.
    pub fn uppercase(trials: usize) -> Self {
        Self::new(trials, ('A'..='Z').collect())
    }

    /// Character count C.
    pub fn character_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn character_at(&self, index: usize) -> Option<char> {
        self.alphabet.get(index).copied()
    }

    pub fn index_of(&self, ch: char) -> Option<usize> {
        self.alphabet.iter().position(|&c| c == ch)
    }
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        Self::uppercase(10)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_table() {
        assert_eq!(BlockType::B11.dimensions(), (1, 1));
        assert_eq!(BlockType::B13.dimensions(), (1, 3));
        assert_eq!(BlockType::B31.dimensions(), (3, 1));
    }

    #[test]
    fn occupied_columns_center_semantics() {
        assert_eq!(DropCall::new(BlockType::B11, 5).occupied_columns(), (5, 5));
        assert_eq!(DropCall::new(BlockType::B31, 5).occupied_columns(), (4, 6));
        assert_eq!(DropCall::new(BlockType::B13, 0).occupied_columns(), (0, 0));
    }

    #[test]
    fn occupied_columns_span_equals_width() {
        for bt in [BlockType::B11, BlockType::B13, BlockType::B31] {
            for x in -3..8 {
                let (l, r) = DropCall::new(bt, x).occupied_columns();
                assert_eq!((r - l + 1) as u32, bt.width());
                assert_eq!(l + r, 2 * x, "span centered on x_position");
            }
        }
    }

    #[test]
    fn alphabet_roundtrip() {
        let cfg = EvaluationConfig::default();
        assert_eq!(cfg.character_count(), DEFAULT_CHARACTER_COUNT);
        for (i, &ch) in cfg.alphabet.clone().iter().enumerate() {
            assert_eq!(cfg.character_at(i), Some(ch));
            assert_eq!(cfg.index_of(ch), Some(i));
        }
        assert_eq!(cfg.index_of('a'), None);
    }

    #[test]
    fn literal_roundtrip() {
        for bt in [BlockType::B11, BlockType::B13, BlockType::B31] {
            assert_eq!(BlockType::from_literal(bt.literal()), Some(bt));
        }
        assert_eq!(BlockType::from_literal("b33"), None);
    }
}
