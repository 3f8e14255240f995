//! Finitely presented bi-infinite points: periodic far left, arbitrary
//! center, periodic far right.
//!
//! The presentation places the center at presentation indices `0..m`, the
//! right cycle at indices `>= m` and the left cycle at negative indices;
//! `phase` is the presentation index of coordinate 0, so the symbol at
//! coordinate `n` is read at presentation index `phase + n`. Equality is
//! decided exactly by comparing coordinates over a window long enough that
//! periodicity propagates the agreement to the whole line.

use crate::error::SftError;
use crate::sft::Sft;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicPoint {
    pub left_cycle: Vec<u16>,
    pub center: Vec<u16>,
    pub right_cycle: Vec<u16>,
    pub phase: i64,
}

impl EventuallyPeriodicPoint {
    pub fn new(left_cycle: Vec<u16>, center: Vec<u16>, right_cycle: Vec<u16>, phase: i64) -> Self {
        EventuallyPeriodicPoint {
            left_cycle,
            center,
            right_cycle,
            phase,
        }
    }

    /// The constant point `...sss...`.
    pub fn constant(sym: u16) -> Self {
        EventuallyPeriodicPoint::new(vec![sym], vec![], vec![sym], 0)
    }

    /// Purely periodic point repeating `cycle`, with coordinate 0 at the
    /// start of the cycle.
    pub fn periodic(cycle: Vec<u16>) -> Self {
        EventuallyPeriodicPoint::new(cycle.clone(), vec![], cycle, 0)
    }

    /// Validate against the transitions of `sft`.
    pub fn validate(&self, sft: &Sft) -> Result<()> {
        if self.left_cycle.is_empty() || self.right_cycle.is_empty() {
            return Err(SftError::PointMismatch(
                "left and right cycles must be nonempty".into(),
            ));
        }
        let all = self
            .left_cycle
            .iter()
            .chain(self.center.iter())
            .chain(self.right_cycle.iter());
        for &s in all {
            if s as usize >= sft.len() {
                return Err(SftError::UnknownSymbol(format!("#{s}")));
            }
        }
        let check = |a: u16, b: u16| -> Result<()> {
            if sft.allows(a, b) {
                Ok(())
            } else {
                Err(SftError::BadTransition {
                    from: sft.symbol(a).to_string(),
                    to: sft.symbol(b).to_string(),
                })
            }
        };
        for w in self.left_cycle.windows(2) {
            check(w[0], w[1])?;
        }
        check(
            *self.left_cycle.last().unwrap(),
            self.left_cycle[0],
        )?;
        for w in self.right_cycle.windows(2) {
            check(w[0], w[1])?;
        }
        check(
            *self.right_cycle.last().unwrap(),
            self.right_cycle[0],
        )?;
        for w in self.center.windows(2) {
            check(w[0], w[1])?;
        }
        // seams: presentation index -1 holds the last left-cycle symbol
        let left_last = *self.left_cycle.last().unwrap();
        match self.center.first() {
            Some(&c0) => {
                check(left_last, c0)?;
                check(*self.center.last().unwrap(), self.right_cycle[0])?;
            }
            None => check(left_last, self.right_cycle[0])?,
        }
        Ok(())
    }

    fn present(&self, p: i64) -> u16 {
        let m = self.center.len() as i64;
        if p < 0 {
            let pl = self.left_cycle.len() as i64;
            self.left_cycle[(((p % pl) + pl) % pl) as usize]
        } else if p < m {
            self.center[p as usize]
        } else {
            let pr = self.right_cycle.len() as i64;
            self.right_cycle[(((p - m) % pr) % pr) as usize]
        }
    }

    /// Symbol at coordinate `n`.
    pub fn get(&self, n: i64) -> u16 {
        self.present(self.phase + n)
    }

    /// Coordinates of the center in absolute terms: `[start, end)`.
    pub fn center_span(&self) -> (i64, i64) {
        (-self.phase, self.center.len() as i64 - self.phase)
    }

    /// The shifted point: `shift(x, k)_n = x_{n+k}`.
    pub fn shifted(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.phase += k;
        out
    }

    /// The reversed point `n -> x_{-n}` (a point of the reversed shift).
    pub fn reversed(&self) -> Self {
        let mut left: Vec<u16> = self.right_cycle.clone();
        left.reverse();
        let mut center: Vec<u16> = self.center.clone();
        center.reverse();
        let mut right: Vec<u16> = self.left_cycle.clone();
        right.reverse();
        let phase = self.center.len() as i64 - 1 - self.phase;
        EventuallyPeriodicPoint::new(left, center, right, phase)
    }

    /// Window of symbols over coordinates `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<u16> {
        (lo..=hi).map(|n| self.get(n)).collect()
    }

    /// Exact equality as bi-infinite sequences.
    pub fn same_point(&self, other: &Self) -> bool {
        let (a_start, a_end) = self.center_span();
        let (b_start, b_end) = other.center_span();
        let left_l = lcm_i64(self.left_cycle.len() as i64, other.left_cycle.len() as i64);
        let right_l = lcm_i64(
            self.right_cycle.len() as i64,
            other.right_cycle.len() as i64,
        );
        let lo = a_start.min(b_start) - 2 * left_l;
        let hi = a_end.max(b_end) + 2 * right_l;
        (lo..=hi).all(|n| self.get(n) == other.get(n))
    }

    /// Does `sym` occur in the right cycle (equivalently, infinitely often in
    /// every forward tail)?
    pub fn right_cycle_contains(&self, sym: u16) -> bool {
        self.right_cycle.contains(&sym)
    }

    /// First coordinate `n >= from` with `x_n == sym`, searching the center
    /// and one full right period; `None` when `sym` never occurs there.
    pub fn first_occurrence_at_or_after(&self, from: i64, sym: u16) -> Option<i64> {
        let (_, c_end) = self.center_span();
        let horizon = c_end.max(from) + self.right_cycle.len() as i64;
        (from..=horizon).find(|&n| self.get(n) == sym)
    }

    /// Rename all symbols through a map (used when transporting a point
    /// through a one-block code).
    pub fn map_symbols(&self, f: impl Fn(u16) -> u16) -> Self {
        EventuallyPeriodicPoint::new(
            self.left_cycle.iter().map(|&s| f(s)).collect(),
            self.center.iter().map(|&s| f(s)).collect(),
            self.right_cycle.iter().map(|&s| f(s)).collect(),
            self.phase,
        )
    }

    pub fn names(&self, sft: &Sft) -> (Vec<String>, Vec<String>, Vec<String>) {
        let tr = |v: &Vec<u16>| -> Vec<String> {
            v.iter().map(|&s| sft.symbol(s).to_string()).collect()
        };
        (tr(&self.left_cycle), tr(&self.center), tr(&self.right_cycle))
    }
}

fn lcm_i64(a: i64, b: i64) -> i64 {
    a / gcd_i64(a, b) * b
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd_i64(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::golden_mean;
    use proptest::prelude::*;

    fn sample_point() -> EventuallyPeriodicPoint {
        // ...(1 2)(1 2) 1 1 (1 1 2)...
        EventuallyPeriodicPoint::new(vec![0, 1], vec![0, 0], vec![0, 0, 1], 0)
    }

    #[test]
    fn validates_against_golden_mean() {
        let gm = golden_mean();
        sample_point().validate(&gm).unwrap();
        // 2->2 is forbidden
        let bad = EventuallyPeriodicPoint::new(vec![1], vec![], vec![1], 0);
        assert!(bad.validate(&gm).is_err());
    }

    #[test]
    fn coordinates_read_as_expected() {
        let x = sample_point();
        assert_eq!(x.get(0), 0);
        assert_eq!(x.get(1), 0);
        assert_eq!(x.get(2), 0); // right cycle starts 1 1 2
        assert_eq!(x.get(4), 1);
        assert_eq!(x.get(-1), 1); // left cycle ...1 2|
        assert_eq!(x.get(-2), 0);
    }

    #[test]
    fn shift_is_a_group_action() {
        let x = sample_point();
        for k in -5i64..=5 {
            for j in -5i64..=5 {
                let a = x.shifted(k).shifted(j);
                let b = x.shifted(k + j);
                for n in -10..=10 {
                    assert_eq!(a.get(n), b.get(n));
                }
            }
        }
        assert!(x.shifted(3).shifted(-3).same_point(&x));
    }

    #[test]
    fn reversal_mirrors_coordinates() {
        let x = sample_point();
        let r = x.reversed();
        for n in -12..=12 {
            assert_eq!(r.get(n), x.get(-n));
        }
        let rr = r.reversed();
        assert!(rr.same_point(&x));
    }

    #[test]
    fn same_point_identifies_presentations() {
        // the fixed point presented two ways
        let a = EventuallyPeriodicPoint::constant(0);
        let b = EventuallyPeriodicPoint::new(vec![0, 0], vec![0], vec![0, 0, 0], 5);
        assert!(a.same_point(&b));
        let c = EventuallyPeriodicPoint::new(vec![0], vec![1], vec![0], 0);
        assert!(!a.same_point(&c));
    }

    proptest! {
        #[test]
        fn shift_action_law(k in -6i64..6, j in -6i64..6) {
            let x = sample_point();
            let lhs = x.shifted(k).shifted(j);
            let rhs = x.shifted(k + j);
            for n in -8..=8 {
                prop_assert_eq!(lhs.get(n), rhs.get(n));
            }
        }

        #[test]
        fn shifted_reads_with_offset(k in -8i64..8) {
            let x = sample_point();
            let y = x.shifted(k);
            for n in -8..=8 {
                prop_assert_eq!(y.get(n), x.get(n + k));
            }
        }
    }
}
