//! Latin squares: validation, the named families, and the symbol permutations
//! `L(s)` that the spectral code is built from.

mod group;
mod random;
mod text;

pub use group::{group_table, GroupKind, GroupSpec, TableMode};
pub use random::random_latin_square;
pub use text::{parse_square, read_square, write_square};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order stored densely.
pub const ORDER_CAP: usize = 4096;

/// Where a square came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Cyclic,
    GroupDivision,
    GroupMultiplication,
    /// The paired construction on `{0..r-1} x {0,1}`; carries `r`.
    PairedExample { r: usize },
    Random { seed: u64 },
    User,
}

/// A validated `n x n` Latin square over the symbols `0..n`.
///
/// Alongside the cells we keep the two inverse tables (row, symbol) -> column
/// and (column, symbol) -> row, which exist exactly because the square is Latin.
#[derive(Debug, Clone)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<u16>,
    col_of: Vec<u16>,
    row_of: Vec<u16>,
    tag: FamilyTag,
}

impl PartialEq for LatinSquare {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.cells == other.cells
    }
}

impl Eq for LatinSquare {}

impl LatinSquare {
    /// Validates a row-major cell array of length `order * order`.
    pub fn from_flat(order: usize, cells: &[usize], tag: FamilyTag) -> Result<Self> {
        if order == 0 {
            return Err(Error::OrderTooSmall { min: 1, got: 0 });
        }
        if order > ORDER_CAP {
            return Err(Error::OrderCapExceeded {
                order,
                cap: ORDER_CAP,
            });
        }
        if cells.len() != order * order {
            return Err(Error::DimensionMismatch {
                expected: order,
                row: cells.len() / order,
                found: cells.len() % order,
            });
        }
        let n = order;
        for (idx, &s) in cells.iter().enumerate() {
            if s >= n {
                return Err(Error::SymbolOutOfRange {
                    row: idx / n,
                    col: idx % n,
                    symbol: s,
                    order: n,
                });
            }
        }

        let mut col_of = vec![u16::MAX; n * n];
        for i in 0..n {
            for j in 0..n {
                let s = cells[i * n + j];
                let slot = &mut col_of[i * n + s];
                if *slot != u16::MAX {
                    return Err(Error::DuplicateInRow {
                        row: i,
                        symbol: s,
                        first: *slot as usize,
                        second: j,
                    });
                }
                *slot = j as u16;
            }
        }
        let mut row_of = vec![u16::MAX; n * n];
        for j in 0..n {
            for i in 0..n {
                let s = cells[i * n + j];
                let slot = &mut row_of[j * n + s];
                if *slot != u16::MAX {
                    return Err(Error::DuplicateInColumn {
                        col: j,
                        symbol: s,
                        first: *slot as usize,
                        second: i,
                    });
                }
                *slot = i as u16;
            }
        }

        Ok(Self {
            order: n,
            cells: cells.iter().map(|&s| s as u16).collect(),
            col_of,
            row_of,
            tag,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn tag(&self) -> &FamilyTag {
        &self.tag
    }

    /// Symbol in row `i`, column `j`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.order + j] as usize
    }

    /// The unique column `j` with `L[i][j] == s`.
    #[inline]
    pub fn column_of(&self, row: usize, symbol: usize) -> usize {
        self.col_of[row * self.order + symbol] as usize
    }

    /// The unique row `i` with `L[i][j] == s`.
    #[inline]
    pub fn row_of(&self, col: usize, symbol: usize) -> usize {
        self.row_of[col * self.order + symbol] as usize
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u16]> {
        self.cells.chunks(self.order)
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.rows()
            .map(|r| r.iter().map(|&s| s as usize).collect())
            .collect()
    }

    pub(crate) fn with_tag(mut self, tag: FamilyTag) -> Self {
        self.tag = tag;
        self
    }

    /// Positions of `symbol`: the permutation matrix `L(s)` in map form.
    pub fn symbol_permutation(&self, symbol: usize) -> Result<SymbolPermutation> {
        let n = self.order;
        if symbol >= n {
            return Err(Error::SymbolIndex { symbol, order: n });
        }
        let row_map: Vec<usize> = (0..n).map(|i| self.column_of(i, symbol)).collect();
        let col_map: Vec<usize> = (0..n).map(|j| self.row_of(j, symbol)).collect();
        Ok(SymbolPermutation {
            symbol,
            row_map,
            col_map,
        })
    }
}

/// `row_map[i]` is the column holding `symbol` in row `i`; `col_map` is its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolPermutation {
    pub symbol: usize,
    pub row_map: Vec<usize>,
    pub col_map: Vec<usize>,
}

/// Checks both permutation conditions on a nested array.
pub fn validate_latin(cells: &[Vec<usize>]) -> Result<LatinSquare> {
    let n = cells.len();
    if n == 0 {
        return Err(Error::OrderTooSmall { min: 1, got: 0 });
    }
    if let Some((row, r)) = cells.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            row,
            found: r.len(),
        });
    }
    let flat: Vec<usize> = cells.iter().flatten().copied().collect();
    LatinSquare::from_flat(n, &flat, FamilyTag::User)
}

/// `L[x][y] = (x - y) mod n`: the division table of the cyclic group.
pub fn cyclic_difference_table(n: usize) -> Result<LatinSquare> {
    if n == 0 {
        return Err(Error::OrderTooSmall { min: 1, got: 0 });
    }
    if n > ORDER_CAP {
        return Err(Error::OrderCapExceeded {
            order: n,
            cap: ORDER_CAP,
        });
    }
    let cells: Vec<usize> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x + n - y) % n))
        .collect();
    LatinSquare::from_flat(n, &cells, FamilyTag::Cyclic)
}

/// Vertex index of `(x, half)` in the paired square of parameter `r`.
#[inline]
pub fn paired_index(r: usize, x: usize, half: usize) -> usize {
    half * r + x
}

/// The order-`2r` square on `{0..r-1} x {0,1}` whose graphs pair `(x,0)` with
/// `(x,1)`: both have the same neighbours outside the pair, for every symbol set.
///
/// Vertices are ordered `(0,0), .., (r-1,0), (0,1), .., (r-1,1)`.
pub fn paired_example_square(r: usize) -> Result<LatinSquare> {
    if r < 2 {
        return Err(Error::OrderTooSmall { min: 2, got: r });
    }
    let n = 2 * r;
    if n > ORDER_CAP {
        return Err(Error::OrderCapExceeded {
            order: n,
            cap: ORDER_CAP,
        });
    }
    let mut cells = vec![0usize; n * n];
    for a in 0..2 {
        for x in 0..r {
            for c in 0..2 {
                for y in 0..r {
                    // Same half: shift by r when x > y; different halves: when x <= y.
                    let shifted = if a == c { x > y } else { x <= y };
                    let v = (x + y + if shifted { r } else { 0 }) % n;
                    cells[paired_index(r, x, a) * n + paired_index(r, y, c)] = v;
                }
            }
        }
    }
    LatinSquare::from_flat(n, &cells, FamilyTag::PairedExample { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(rows: &[&[usize]]) -> Result<LatinSquare> {
        validate_latin(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn validates_small_squares() {
        assert!(square(&[&[0, 2, 1], &[1, 0, 2], &[2, 1, 0]]).is_ok());
        assert!(square(&[&[0, 1], &[1, 0]]).is_ok());
    }

    #[test]
    fn reports_first_column_violation() {
        match square(&[&[0, 1], &[0, 1]]) {
            Err(Error::DuplicateInColumn {
                col: 0, symbol: 0, ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_shape_and_range_errors() {
        assert!(matches!(
            square(&[&[0, 1], &[1]]),
            Err(Error::DimensionMismatch { row: 1, .. })
        ));
        assert!(matches!(
            square(&[&[0, 2], &[1, 0]]),
            Err(Error::SymbolOutOfRange {
                row: 0,
                col: 1,
                symbol: 2,
                ..
            })
        ));
        assert!(matches!(
            square(&[&[0, 0], &[1, 1]]),
            Err(Error::DuplicateInRow { row: 0, .. })
        ));
        assert!(matches!(
            validate_latin(&[]),
            Err(Error::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn cyclic_table() {
        let l = cyclic_difference_table(3).unwrap();
        assert_eq!(l.to_rows(), vec![vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]]);
        assert_eq!(cyclic_difference_table(1).unwrap().to_rows(), vec![vec![0]]);
        let l = cyclic_difference_table(17).unwrap();
        assert!((0..17).all(|i| l.get(i, i) == 0));
        assert!(cyclic_difference_table(0).is_err());
    }

    #[test]
    fn paired_square_order_four() {
        let l = paired_example_square(2).unwrap();
        assert_eq!(
            l.to_rows(),
            vec![
                vec![0, 1, 2, 3],
                vec![3, 2, 1, 0],
                vec![2, 3, 0, 1],
                vec![1, 0, 3, 2]
            ]
        );
        assert_eq!(l.tag(), &FamilyTag::PairedExample { r: 2 });
        assert!(paired_example_square(1).is_err());
    }

    #[test]
    fn paired_squares_are_latin() {
        for r in 2..=20 {
            let l = paired_example_square(r).unwrap();
            assert!(validate_latin(&l.to_rows()).is_ok(), "r = {r}");
        }
    }

    #[test]
    fn symbol_permutation_of_cyclic_three() {
        let l = cyclic_difference_table(3).unwrap();
        let p = l.symbol_permutation(1).unwrap();
        assert_eq!(p.row_map, vec![2, 0, 1]);
        for (i, &j) in p.row_map.iter().enumerate() {
            assert_eq!(p.col_map[j], i);
        }
        // symbol 0 sits on the diagonal
        assert_eq!(l.symbol_permutation(0).unwrap().row_map, vec![0, 1, 2]);
        assert!(matches!(
            l.symbol_permutation(3),
            Err(Error::SymbolIndex { .. })
        ));
    }

    #[test]
    fn symbols_partition_the_cells() {
        let l = paired_example_square(5).unwrap();
        let n = l.order();
        let mut seen = vec![false; n * n];
        for s in 0..n {
            let p = l.symbol_permutation(s).unwrap();
            for (i, &j) in p.row_map.iter().enumerate() {
                assert!(!seen[i * n + j]);
                seen[i * n + j] = true;
            }
        }
        assert!(seen.into_iter().all(|b| b));
    }
}
