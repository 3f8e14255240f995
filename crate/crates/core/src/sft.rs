//! Vertex shifts of finite type and their combinatorics.
//!
//! An [`Sft`] is an ordered alphabet together with a 0/1 transition matrix
//! having no zero rows or columns, presenting the set of bi-infinite symbol
//! sequences whose consecutive pairs the matrix allows. Symbols are referred
//! to by index internally; names are strings and only matter at the JSON
//! boundary.

use crate::code::OneBlockCode;
use crate::error::SftError;
use crate::limits::Limits;
use crate::Result;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// A shift of finite type presented by a 0/1 transition matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sft {
    symbols: Vec<String>,
    matrix: Vec<Vec<u8>>,
}

/// An admissible finite word, stored as symbol indices into a specific
/// [`Sft`]'s alphabet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub syms: Vec<u16>,
}

impl Word {
    pub fn new(syms: Vec<u16>) -> Self {
        Word { syms }
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    /// Validate admissibility in `sft`.
    pub fn validate(&self, sft: &Sft) -> Result<()> {
        if self.syms.is_empty() {
            return Err(SftError::EmptyWord);
        }
        for &s in &self.syms {
            if s as usize >= sft.len() {
                return Err(SftError::UnknownSymbol(format!("#{s}")));
            }
        }
        for w in self.syms.windows(2) {
            if !sft.allows(w[0], w[1]) {
                return Err(SftError::BadTransition {
                    from: sft.symbol(w[0]).to_string(),
                    to: sft.symbol(w[1]).to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn names(&self, sft: &Sft) -> Vec<String> {
        self.syms.iter().map(|&s| sft.symbol(s).to_string()).collect()
    }
}

/// Primitivity verdict with an exact certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixingCertificate {
    /// The least `n` with every entry of `A^n` positive.
    Primitive { index: u32 },
    /// An entry of `A^power` that vanishes at the Wielandt bound, beyond
    /// which a primitive matrix would have to be strictly positive.
    NotPrimitive {
        power: u32,
        zero_entry: (String, String),
    },
}

impl Sft {
    /// Validate and build an SFT from named symbols and a 0/1 matrix.
    pub fn new<S: Into<String>>(alphabet: Vec<S>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let symbols: Vec<String> = alphabet.into_iter().map(Into::into).collect();
        let n = symbols.len();
        {
            let mut seen = BTreeSet::new();
            for s in &symbols {
                if !seen.insert(s.clone()) {
                    return Err(SftError::DuplicateSymbol(s.clone()));
                }
            }
        }
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(SftError::MatrixShape {
                rows: matrix.len(),
                cols: matrix.first().map_or(0, |r| r.len()),
                alphabet: n,
            });
        }
        let mut m = vec![vec![0u8; n]; n];
        for (i, row) in matrix.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m[i][j] = 1,
                    other => {
                        return Err(SftError::NonBinaryEntry {
                            row: i,
                            col: j,
                            value: other,
                        })
                    }
                }
            }
        }
        for i in 0..n {
            let row_zero = (0..n).all(|j| m[i][j] == 0);
            let col_zero = (0..n).all(|j| m[j][i] == 0);
            if row_zero || col_zero {
                return Err(SftError::ZeroRowOrColumn(symbols[i].clone()));
            }
        }
        if n == 0 {
            return Err(SftError::EmptyShift);
        }
        Ok(Sft { symbols, matrix: m })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, i: u16) -> &str {
        &self.symbols[i as usize]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Result<u16> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|i| i as u16)
            .ok_or_else(|| SftError::UnknownSymbol(name.to_string()))
    }

    pub fn allows(&self, i: u16, j: u16) -> bool {
        self.matrix[i as usize][j as usize] == 1
    }

    pub fn matrix(&self) -> &Vec<Vec<u8>> {
        &self.matrix
    }

    pub fn out_neighbors(&self, i: u16) -> impl Iterator<Item = u16> + '_ {
        let row = &self.matrix[i as usize];
        (0..self.len() as u16).filter(move |&j| row[j as usize] == 1)
    }

    pub fn in_neighbors(&self, j: u16) -> impl Iterator<Item = u16> + '_ {
        let n = self.len() as u16;
        (0..n).filter(move |&i| self.matrix[i as usize][j as usize] == 1)
    }

    fn reach_closure(&self, start: u16, forward: bool) -> Vec<bool> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start as usize] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n as u16 {
                let edge = if forward {
                    self.allows(u, v)
                } else {
                    self.allows(v, u)
                };
                if edge && !seen[v as usize] {
                    seen[v as usize] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Whether the transition digraph is strongly connected.
    pub fn is_irreducible(&self) -> bool {
        let fwd = self.reach_closure(0, true);
        let bwd = self.reach_closure(0, false);
        fwd.iter().all(|&b| b) && bwd.iter().all(|&b| b)
    }

    /// Gcd of all cycle lengths; requires irreducibility.
    pub fn period(&self) -> Result<u32> {
        if !self.is_irreducible() {
            return Err(SftError::NotIrreducible);
        }
        // BFS levels from vertex 0; gcd of level(u) + 1 - level(v) over edges.
        let n = self.len();
        let mut level = vec![i64::MIN; n];
        level[0] = 0;
        let mut queue = std::collections::VecDeque::from([0u16]);
        while let Some(u) = queue.pop_front() {
            for v in self.out_neighbors(u) {
                if level[v as usize] == i64::MIN {
                    level[v as usize] = level[u as usize] + 1;
                    queue.push_back(v);
                }
            }
        }
        let mut g: i64 = 0;
        for i in 0..n as u16 {
            for j in self.out_neighbors(i) {
                let d = level[i as usize] + 1 - level[j as usize];
                g = gcd_i64(g, d.abs());
            }
        }
        debug_assert!(g > 0);
        Ok(g as u32)
    }

    /// Primitivity test with certificate: either the least `n` such that
    /// `A^n` is strictly positive, or a vanishing entry at the Wielandt
    /// bound `(k-1)^2 + 1`.
    pub fn is_mixing(&self) -> (bool, MixingCertificate) {
        let n = self.len();
        let wielandt = ((n as u32 - 1) * (n as u32 - 1)) + 1;
        let mut power: Vec<Vec<bool>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&v| v == 1).collect())
            .collect();
        let base = power.clone();
        for exp in 1..=wielandt {
            if power.iter().all(|r| r.iter().all(|&b| b)) {
                return (true, MixingCertificate::Primitive { index: exp });
            }
            if exp < wielandt {
                power = bool_mat_mul(&power, &base);
            }
        }
        let mut zero = (0u16, 0u16);
        'find: for i in 0..n {
            for j in 0..n {
                if !power[i][j] {
                    zero = (i as u16, j as u16);
                    break 'find;
                }
            }
        }
        (
            false,
            MixingCertificate::NotPrimitive {
                power: wielandt,
                zero_entry: (
                    self.symbol(zero.0).to_string(),
                    self.symbol(zero.1).to_string(),
                ),
            },
        )
    }

    /// Exact number of admissible `n`-words: the entrywise sum of `A^(n-1)`.
    pub fn count_words(&self, n: u32) -> BigUint {
        assert!(n >= 1);
        let size = self.len();
        let mut vec: Vec<BigUint> = vec![BigUint::one(); size];
        for _ in 1..n {
            let mut next = vec![BigUint::zero(); size];
            for i in 0..size {
                if vec[i].is_zero() {
                    continue;
                }
                for j in 0..size {
                    if self.matrix[i][j] == 1 {
                        next[j] += &vec[i];
                    }
                }
            }
            vec = next;
        }
        vec.into_iter().sum()
    }

    /// Enumerate all admissible `n`-words, refusing (but still counting) when
    /// the exact count exceeds the enumeration cap.
    pub fn words(&self, n: u32, limits: &Limits) -> Result<Vec<Word>> {
        assert!(n >= 1);
        let count = self.count_words(n);
        if count > BigUint::from(limits.max_enumeration) {
            return Err(SftError::EnumerationLimit {
                count,
                cap: limits.max_enumeration,
            });
        }
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n as usize);
        for s in 0..self.len() as u16 {
            current.push(s);
            self.extend_words(n, &mut current, &mut out);
            current.pop();
        }
        debug_assert_eq!(BigUint::from(out.len() as u64), count);
        Ok(out)
    }

    fn extend_words(&self, n: u32, current: &mut Vec<u16>, out: &mut Vec<Word>) {
        if current.len() == n as usize {
            out.push(Word::new(current.clone()));
            return;
        }
        let last = *current.last().unwrap();
        for next in self.out_neighbors(last) {
            current.push(next);
            self.extend_words(n, current, out);
            current.pop();
        }
    }

    /// Remove a symbol, then iteratively delete symbols whose row or column
    /// becomes all-zero, so the result is again a valid presentation of the
    /// same subshift.
    pub fn forbid_symbol(&self, name: &str) -> Result<Sft> {
        let idx = self.index_of(name)?;
        let mut alive: Vec<bool> = (0..self.len()).map(|i| i as u16 != idx).collect();
        loop {
            let mut changed = false;
            for i in 0..self.len() {
                if !alive[i] {
                    continue;
                }
                let row_dead = (0..self.len())
                    .all(|j| !alive[j] || self.matrix[i][j] == 0);
                let col_dead = (0..self.len())
                    .all(|j| !alive[j] || self.matrix[j][i] == 0);
                if row_dead || col_dead {
                    alive[i] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&i| alive[i]).collect();
        if keep.is_empty() {
            return Err(SftError::EmptyShift);
        }
        let symbols: Vec<String> = keep.iter().map(|&i| self.symbols[i].clone()).collect();
        let matrix: Vec<Vec<i64>> = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.matrix[i][j] as i64).collect())
            .collect();
        Sft::new(symbols, matrix)
    }

    /// The `m`-block presentation together with the one-block conjugacy back
    /// to `self` (reading the first coordinate of each block).
    pub fn higher_block(&self, m: u32, limits: &Limits) -> Result<(Sft, OneBlockCode)> {
        assert!(m >= 1);
        if m == 1 {
            let code = OneBlockCode::identity(self.clone());
            return Ok((self.clone(), code));
        }
        let blocks = self.words(m, limits)?;
        let names = self.block_names(&blocks);
        let k = blocks.len();
        let mut matrix = vec![vec![0i64; k]; k];
        for (i, w) in blocks.iter().enumerate() {
            for (j, v) in blocks.iter().enumerate() {
                // overlap: w[1..] == v[..m-1] and the concatenation stays
                // admissible, which the overlap plus v's own validity gives.
                if w.syms[1..] == v.syms[..(m as usize - 1)] {
                    matrix[i][j] = 1;
                }
            }
        }
        let block_sft = Sft::new(names, matrix)?;
        let phi: Vec<u16> = blocks.iter().map(|w| w.syms[0]).collect();
        let code = OneBlockCode::new(block_sft.clone(), self.clone(), phi)?;
        Ok((block_sft, code))
    }

    /// Presentation of the power shift `(X, sigma^m)`: symbols are the
    /// `m`-words, with transition `w -> w'` when `ww'` is admissible.
    pub fn power_shift(&self, m: u32, limits: &Limits) -> Result<Sft> {
        assert!(m >= 1);
        if m == 1 {
            return Ok(self.clone());
        }
        let blocks = self.words(m, limits)?;
        let names = self.block_names(&blocks);
        let k = blocks.len();
        let mut matrix = vec![vec![0i64; k]; k];
        for (i, w) in blocks.iter().enumerate() {
            for (j, v) in blocks.iter().enumerate() {
                if self.allows(*w.syms.last().unwrap(), v.syms[0]) {
                    matrix[i][j] = 1;
                }
            }
        }
        Sft::new(names, matrix)
    }

    /// Transposed presentation (the shift read backwards).
    pub fn reverse(&self) -> Sft {
        let n = self.len();
        let matrix: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| self.matrix[j][i] as i64).collect())
            .collect();
        Sft::new(self.symbols.clone(), matrix).expect("transpose of a valid Sft is valid")
    }

    /// Names for block symbols: plain concatenation when unambiguous,
    /// `|`-joined otherwise.
    fn block_names(&self, blocks: &[Word]) -> Vec<String> {
        let single_char = self.symbols.iter().all(|s| s.chars().count() == 1);
        blocks
            .iter()
            .map(|w| {
                let parts = w.names(self);
                if single_char {
                    parts.concat()
                } else {
                    parts.join("|")
                }
            })
            .collect()
    }
}

impl fmt::Display for Sft {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sft{{{}}}", self.symbols.join(","))
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd_i64(b, a % b)
    }
}

fn bool_mat_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] {
                for j in 0..n {
                    if b[k][j] {
                        out[i][j] = true;
                    }
                }
            }
        }
    }
    out
}

/// The golden-mean shift on `{1, 2}` (self-loop on 1, edges 1->2->1).
pub fn golden_mean() -> Sft {
    Sft::new(vec!["1", "2"], vec![vec![1, 1], vec![1, 0]]).unwrap()
}

/// A two-symbol presentation with all transitions allowed (conjugate to the
/// full 2-shift).
pub fn full_two() -> Sft {
    Sft::new(vec!["1", "2"], vec![vec![1, 1], vec![1, 1]]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rejects_bad_matrices() {
        assert!(matches!(
            Sft::new(vec!["1", "2"], vec![vec![1, 1], vec![0, 0]]),
            Err(SftError::ZeroRowOrColumn(s)) if s == "2"
        ));
        assert!(matches!(
            Sft::new(vec!["1", "1"], vec![vec![1, 1], vec![1, 0]]),
            Err(SftError::DuplicateSymbol(_))
        ));
        assert!(matches!(
            Sft::new(vec!["1", "2"], vec![vec![1, 2], vec![1, 0]]),
            Err(SftError::NonBinaryEntry { .. })
        ));
        assert!(matches!(
            Sft::new(vec!["1", "2"], vec![vec![1, 1]]),
            Err(SftError::MatrixShape { .. })
        ));
        assert!(golden_mean().is_irreducible());
    }

    #[test]
    fn period_of_cycles() {
        let two_cycle = Sft::new(vec!["a", "b"], vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(two_cycle.period().unwrap(), 2);
        assert_eq!(golden_mean().period().unwrap(), 1);
        let three_cycle = Sft::new(
            vec!["a", "b", "c"],
            vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]],
        )
        .unwrap();
        assert_eq!(three_cycle.period().unwrap(), 3);
    }

    #[test]
    fn mixing_certificates() {
        let (mix, cert) = golden_mean().is_mixing();
        assert!(mix);
        assert_eq!(cert, MixingCertificate::Primitive { index: 2 });
        let (mix, cert) = full_two().is_mixing();
        assert!(mix);
        assert_eq!(cert, MixingCertificate::Primitive { index: 1 });
        let two_cycle = Sft::new(vec!["a", "b"], vec![vec![0, 1], vec![1, 0]]).unwrap();
        let (mix, cert) = two_cycle.is_mixing();
        assert!(!mix);
        assert!(matches!(cert, MixingCertificate::NotPrimitive { .. }));
    }

    #[test]
    fn word_counts_are_fibonacci_for_golden_mean() {
        let gm = golden_mean();
        // |W_n| = F_{n+2}: 2, 3, 5, 8, 13, ...
        let expected = [2u64, 3, 5, 8, 13, 21, 34];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(gm.count_words(i as u32 + 1), BigUint::from(e));
        }
        let limits = Limits::default();
        assert_eq!(gm.words(5, &limits).unwrap().len(), 13);
        let tight = Limits {
            max_enumeration: 3,
            ..Limits::default()
        };
        assert!(matches!(
            gm.words(5, &tight),
            Err(SftError::EnumerationLimit { count, cap: 3 }) if count == BigUint::from(13u32)
        ));
    }

    #[test]
    fn forbid_symbol_cascades() {
        let gm = golden_mean();
        // removing 1 leaves 2 with no self-loop: cascade empties the shift
        assert!(matches!(gm.forbid_symbol("1"), Err(SftError::EmptyShift)));
        let fixed = gm.forbid_symbol("2").unwrap();
        assert_eq!(fixed.len(), 1);
        assert_eq!(fixed.symbol(0), "1");
        assert!(fixed.allows(0, 0));
        let f2 = full_two().forbid_symbol("2").unwrap();
        assert_eq!(f2.len(), 1);
    }

    #[test]
    fn higher_block_of_golden_mean() {
        let gm = golden_mean();
        let limits = Limits::default();
        let (b2, code) = gm.higher_block(2, &limits).unwrap();
        assert_eq!(b2.len(), 3);
        let names: Vec<&str> = b2.symbols().iter().map(|s| s.as_str()).collect();
        assert_eq!(names, vec!["11", "12", "21"]);
        // decoding map sends each block to its first symbol
        assert_eq!(code.codomain(), &gm);
        let (same, ident) = gm.higher_block(1, &limits).unwrap();
        assert_eq!(same, gm);
        assert!(ident.is_identity());
    }

    #[test]
    fn power_shift_and_reverse() {
        let gm = golden_mean();
        let limits = Limits::default();
        let p1 = gm.power_shift(1, &limits).unwrap();
        assert_eq!(p1, gm);
        let p2 = gm.power_shift(2, &limits).unwrap();
        assert_eq!(p2.len(), 3);
        assert_eq!(gm.reverse().reverse(), gm);
        // golden mean matrix is symmetric
        assert_eq!(gm.reverse(), gm);
    }

    #[test]
    fn reversed_words_are_words_of_reverse() {
        let asym = Sft::new(
            vec!["a", "b", "c"],
            vec![vec![1, 1, 0], vec![0, 0, 1], vec![1, 0, 0]],
        )
        .unwrap();
        let limits = Limits::default();
        for n in 1..=6u32 {
            let mut fwd: Vec<Vec<u16>> = asym
                .words(n, &limits)
                .unwrap()
                .into_iter()
                .map(|w| {
                    let mut s = w.syms;
                    s.reverse();
                    s
                })
                .collect();
            let mut rev: Vec<Vec<u16>> = asym
                .reverse()
                .words(n, &limits)
                .unwrap()
                .into_iter()
                .map(|w| w.syms)
                .collect();
            fwd.sort();
            rev.sort();
            assert_eq!(fwd, rev);
        }
    }
}
