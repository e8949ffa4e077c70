//! Two-row Young diagrams and standard tableaux stored as row sequences.

use std::fmt;
use std::str::FromStr;

use crate::dims::binomial;
use crate::error::{input, Error, Result};
use crate::word::{parse_letters, write_letters, Letter};

/// Row of a two-row diagram. `Letter::One` is the top row.
pub type Row = Letter;

/// Young diagram `(p, q)` with `p >= q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoRowShape {
    pub p: usize,
    pub q: usize,
}

impl TwoRowShape {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if q > p {
            return input(format!("({p}, {q}) is not a Young diagram"));
        }
        Ok(Self { p, q })
    }

    pub fn size(&self) -> usize {
        self.p + self.q
    }

    /// Content (column minus row) of the box that would be added to `row`.
    pub fn next_content(&self, row: Row) -> i64 {
        match row {
            Row::One => self.p as i64,
            Row::Two => self.q as i64 - 1,
        }
    }

    /// Shape after adding a box to `row`, if that is still a diagram.
    pub fn grow(&self, row: Row) -> Option<TwoRowShape> {
        match row {
            Row::One => Some(TwoRowShape { p: self.p + 1, q: self.q }),
            Row::Two => (self.q < self.p).then_some(TwoRowShape { p: self.p, q: self.q + 1 }),
        }
    }

    /// Number of standard tableaux, `C(p+q, q) - C(p+q, q-1)`.
    pub fn syt_count(&self) -> u64 {
        let n = self.size();
        let lower = if self.q == 0 { 0 } else { binomial(n, self.q - 1) };
        binomial(n, self.q) - lower
    }
}

impl fmt::Display for TwoRowShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 0 {
            write!(f, "({})", self.p)
        } else {
            write!(f, "({},{})", self.p, self.q)
        }
    }
}

/// Standard tableau of at most two rows: entry `j` records the row of box `j + 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau(Vec<Row>);

impl Tableau {
    /// Validates that every prefix is a diagram.
    pub fn new(rows: Vec<Row>) -> Result<Self> {
        let mut shape = TwoRowShape { p: 0, q: 0 };
        for (j, &r) in rows.iter().enumerate() {
            shape = shape
                .grow(r)
                .ok_or_else(|| Error::Input(format!("box {} cannot go to row 2 of {shape}", j + 1)))?;
        }
        Ok(Tableau(rows))
    }

    pub fn empty() -> Self {
        Tableau(Vec::new())
    }

    /// The single-row tableau with `len` boxes.
    pub fn single_row(len: usize) -> Self {
        Tableau(vec![Row::One; len])
    }

    pub fn rows(&self) -> &[Row] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn shape(&self) -> TwoRowShape {
        let q = self.0.iter().filter(|&&r| r == Row::Two).count();
        TwoRowShape { p: self.0.len() - q, q }
    }

    /// Tableau with one more box in `row`, if valid.
    pub fn extend(&self, row: Row) -> Option<Tableau> {
        self.shape().grow(row).map(|_| {
            let mut v = self.0.clone();
            v.push(row);
            Tableau(v)
        })
    }

    /// Restriction to the first `len - 1` boxes.
    pub fn parent(&self) -> Option<Tableau> {
        self.0.split_last().map(|(_, rest)| Tableau(rest.to_vec()))
    }

    pub fn last_row(&self) -> Option<Row> {
        self.0.last().copied()
    }

    /// Contents of boxes `1..=len` in insertion order.
    pub fn contents(&self) -> Vec<i64> {
        let mut shape = TwoRowShape { p: 0, q: 0 };
        self.0
            .iter()
            .map(|&r| {
                let c = shape.next_content(r);
                shape = shape.grow(r).expect("validated tableau");
                c
            })
            .collect()
    }

    /// Rebuilds a tableau from its content sequence. Returns `None` when the
    /// sequence is not the content sequence of a two-row standard tableau.
    pub fn from_contents(contents: &[i64]) -> Option<Tableau> {
        let mut shape = TwoRowShape { p: 0, q: 0 };
        let mut rows = Vec::with_capacity(contents.len());
        for &c in contents {
            let row = if c == shape.next_content(Row::One) {
                Row::One
            } else if c == shape.next_content(Row::Two) {
                Row::Two
            } else {
                return None;
            };
            shape = shape.grow(row)?;
            rows.push(row);
        }
        Some(Tableau(rows))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(&self.0, f)
    }
}

impl FromStr for Tableau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Tableau::new(parse_letters(s)?)
    }
}

/// Row-2 lengths `a` of the shapes `(i - a, a)` occurring in functions on `J(i, r)`.
pub fn admissible_shapes(i: usize, r: usize) -> Result<Vec<usize>> {
    if r > i {
        return input(format!("r = {r} exceeds i = {i}"));
    }
    Ok((0..=r.min(i - r)).collect())
}

/// All standard tableaux of `shape`, lexicographic in their row sequences.
pub fn enumerate_tableaux(shape: TwoRowShape) -> Vec<Tableau> {
    fn rec(shape: TwoRowShape, cur: &mut Vec<Row>, p: usize, q: usize, out: &mut Vec<Tableau>) {
        if p == shape.p && q == shape.q {
            out.push(Tableau(cur.clone()));
            return;
        }
        if p < shape.p {
            cur.push(Row::One);
            rec(shape, cur, p + 1, q, out);
            cur.pop();
        }
        if q < shape.q && q < p {
            cur.push(Row::Two);
            rec(shape, cur, p, q + 1, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(shape.syt_count() as usize);
    rec(shape, &mut Vec::with_capacity(shape.size()), 0, 0, &mut out);
    out
}

/// All standard tableaux with `len` boxes and at most `max_q` boxes in row 2,
/// lexicographic in their row sequences (shapes interleave).
pub fn enumerate_tableaux_upto(len: usize, max_q: usize) -> Vec<Tableau> {
    fn rec(len: usize, max_q: usize, cur: &mut Vec<Row>, p: usize, q: usize, out: &mut Vec<Tableau>) {
        if p + q == len {
            out.push(Tableau(cur.clone()));
            return;
        }
        cur.push(Row::One);
        rec(len, max_q, cur, p + 1, q, out);
        cur.pop();
        if q < max_q && q < p {
            cur.push(Row::Two);
            rec(len, max_q, cur, p, q + 1, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, max_q, &mut Vec::with_capacity(len), 0, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[Tableau]) -> Vec<String> {
        v.iter().map(|t| t.to_string()).collect()
    }

    /// Brute force: every `{1,2}` sequence of the right length whose prefixes are diagrams.
    fn brute_syt(p: usize, q: usize) -> Vec<String> {
        let len = p + q;
        let mut out = Vec::new();
        for bits in 0..1u32 << len {
            let s: String = (0..len).map(|j| if bits >> (len - 1 - j) & 1 == 0 { '1' } else { '2' }).collect();
            let mut ones = 0usize;
            let mut twos = 0usize;
            let mut ok = true;
            for c in s.chars() {
                if c == '1' { ones += 1 } else { twos += 1 }
                if twos > ones {
                    ok = false;
                }
            }
            if ok && ones == p && twos == q {
                out.push(s);
            }
        }
        out
    }

    #[test]
    fn tableau_examples() {
        assert_eq!(names(&enumerate_tableaux(TwoRowShape::new(3, 1).unwrap())), ["1112", "1121", "1211"]);
        assert_eq!(names(&enumerate_tableaux(TwoRowShape::new(2, 2).unwrap())), ["1122", "1212"]);
        assert_eq!(names(&enumerate_tableaux(TwoRowShape::new(5, 0).unwrap())), ["11111"]);
    }

    #[test]
    fn syt_counts_match_brute_force() {
        for len in 0..=12 {
            for q in 0..=len / 2 {
                let shape = TwoRowShape::new(len - q, q).unwrap();
                let brute = brute_syt(len - q, q);
                assert_eq!(shape.syt_count() as usize, brute.len(), "shape {shape}");
                assert_eq!(names(&enumerate_tableaux(shape)), brute);
            }
        }
    }

    #[test]
    fn admissible_shape_rule() {
        assert_eq!(admissible_shapes(4, 2).unwrap(), [0, 1, 2]);
        assert_eq!(admissible_shapes(5, 0).unwrap(), [0]);
        assert_eq!(admissible_shapes(3, 2).unwrap(), [0, 1]);
        assert!(admissible_shapes(2, 3).is_err());
    }

    #[test]
    fn parse_and_validate() {
        assert!("1211".parse::<Tableau>().is_ok());
        assert!("21".parse::<Tableau>().is_err());
        assert!("1221".parse::<Tableau>().is_err());
        assert!("13".parse::<Tableau>().is_err());
        assert_eq!("1211".parse::<Tableau>().unwrap().shape(), TwoRowShape { p: 3, q: 1 });
    }

    #[test]
    fn contents_round_trip() {
        let t: Tableau = "1121".parse().unwrap();
        assert_eq!(t.contents(), vec![0, 1, -1, 2]);
        for len in 0..=10 {
            for t in enumerate_tableaux_upto(len, len) {
                assert_eq!(Tableau::from_contents(&t.contents()), Some(t));
            }
        }
        assert_eq!(Tableau::from_contents(&[0, 5]), None);
    }

    #[test]
    fn interleaved_enumeration_is_sorted() {
        let all = enumerate_tableaux_upto(6, 2);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        let expected: u64 = (0..=2).map(|q| TwoRowShape::new(6 - q, q).unwrap().syt_count()).sum();
        assert_eq!(all.len() as u64, expected);
    }
}
