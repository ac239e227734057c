use thiserror::Error;

use crate::graph::EdgeId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has no edges")]
    Empty,
    #[error("edge {0} has no color")]
    Uncolored(EdgeId),
    #[error("color {0} is never used")]
    UnusedColor(u32),
}

/// Total map from edge ids to colors `1..=k` in which every color is used.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    k: u32,
    colors: Vec<u32>,
}

impl EdgeColoring {
    /// `colors[e]` is the color of edge `e`; zero means uncolored.
    pub fn from_colors(colors: Vec<u32>) -> Result<Self, ColoringError> {
        let k = *colors.iter().max().ok_or(ColoringError::Empty)?;
        if let Some(e) = colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::Uncolored(e));
        }
        let mut used = vec![false; k as usize + 1];
        for &c in &colors {
            used[c as usize] = true;
        }
        if let Some(c) = (1..=k).find(|&c| !used[c as usize]) {
            return Err(ColoringError::UnusedColor(c));
        }
        Ok(EdgeColoring { k, colors })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn color(&self, e: EdgeId) -> u32 {
        self.colors[e]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_gaps_and_zeros() {
        assert_eq!(EdgeColoring::from_colors(vec![]), Err(ColoringError::Empty));
        assert_eq!(
            EdgeColoring::from_colors(vec![1, 0, 2]),
            Err(ColoringError::Uncolored(1))
        );
        assert_eq!(
            EdgeColoring::from_colors(vec![1, 3]),
            Err(ColoringError::UnusedColor(2))
        );
        let c = EdgeColoring::from_colors(vec![2, 1, 2]).unwrap();
        assert_eq!(c.k(), 2);
        assert_eq!(c.color(2), 2);
    }
}
