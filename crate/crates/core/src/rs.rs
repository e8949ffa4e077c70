//! Robinson-Schensted row insertion specialised to words over `{1, 2}`.
//!
//! The insertion tableau of a `{1, 2}`-word keeps every `1` in row 1 and
//! only `2`s in row 2, so its shape and the number of inserted `1`s fix it.

use crate::dims::ProblemDims;
use crate::error::{input, Result};
use crate::label::BasisLabel;
use crate::tableau::{Row, Tableau, TwoRowShape};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RsState {
    pub shape: TwoRowShape,
    /// Number of `1`s inserted so far; they fill the start of row 1.
    pub m: usize,
}

impl RsState {
    pub fn initial() -> Self {
        Self { shape: TwoRowShape { p: 0, q: 0 }, m: 0 }
    }

    /// Number of `2`s currently sitting in row 1 of the insertion tableau.
    pub fn twos_in_first_row(&self) -> usize {
        self.shape.p - self.m
    }
}

/// Inserts one letter; returns the new state and the row where the recording tableau grows.
pub fn rs_step(state: RsState, letter: Letter) -> (RsState, Row) {
    let RsState { shape, m } = state;
    match letter {
        Letter::Two => (RsState { shape: TwoRowShape { p: shape.p + 1, q: shape.q }, m }, Row::One),
        Letter::One if state.twos_in_first_row() > 0 => {
            // the leftmost 2 of row 1 is bumped to the end of row 2
            (RsState { shape: TwoRowShape { p: shape.p, q: shape.q + 1 }, m: m + 1 }, Row::Two)
        }
        Letter::One => (RsState { shape: TwoRowShape { p: shape.p + 1, q: shape.q }, m: m + 1 }, Row::One),
    }
}

/// Labels `(Q_i, x[i..])` for `i = 0..=n`, where `Q_i` records the insertion of `x[..i]`.
pub fn rs_path(x: &Word, dims: ProblemDims) -> Result<Vec<BasisLabel>> {
    if x.len() != dims.n() || x.ones() != dims.k() {
        return input(format!("word {x} is not a point of {dims}"));
    }
    let mut state = RsState::initial();
    let mut rows = Vec::with_capacity(x.len());
    let mut path = Vec::with_capacity(x.len() + 1);
    path.push(BasisLabel::new(Tableau::empty(), x.clone()));
    for (i, &letter) in x.letters().iter().enumerate() {
        let (next, row) = rs_step(state, letter);
        state = next;
        rows.push(row);
        let tab = Tableau::new(rows.clone())?;
        path.push(BasisLabel::new(tab, x.suffix(x.len() - i - 1)));
    }
    Ok(path)
}
