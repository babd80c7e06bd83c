//! Exact balls in `H(Z)` stored as integer interval sets over each
//! abelianization cell `(a, b)`.

use crate::error::{Error, Result};

/// A generator family `{(a, b, c) : lo ≤ c ≤ hi}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellStep {
    pub a: i64,
    pub b: i64,
    pub lo: i64,
    pub hi: i64,
}

impl CellStep {
    pub fn point(a: i64, b: i64, c: i64) -> Self {
        CellStep { a, b, lo: c, hi: c }
    }
}

/// `Sⁿ` for a set `S` containing the identity, grown one factor at a time
/// by right multiplication.
#[derive(Debug, Clone)]
pub struct IntervalBall {
    steps: Vec<CellStep>,
    step_a: i64,
    step_b: i64,
    power: usize,
    half_a: i64,
    half_b: i64,
    cells: Vec<Vec<(i64, i64)>>,
    budget: u64,
}

fn merge(v: &mut Vec<(i64, i64)>) {
    if v.len() < 2 {
        return;
    }
    v.sort_unstable();
    let mut out: Vec<(i64, i64)> = Vec::with_capacity(v.len());
    for &(lo, hi) in v.iter() {
        match out.last_mut() {
            Some(last) if lo <= last.1 + 1 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    *v = out;
}

impl IntervalBall {
    /// Starts at `S⁰ = {id}`; `steps` must contain the identity.
    pub fn new(steps: Vec<CellStep>, budget: u64) -> Result<Self> {
        if !steps.iter().any(|s| s.a == 0 && s.b == 0 && s.lo <= 0 && 0 <= s.hi) {
            return Err(Error::usage("the step set must contain the identity"));
        }
        if steps.iter().any(|s| s.lo > s.hi) {
            return Err(Error::usage("empty generator interval"));
        }
        let step_a = steps.iter().map(|s| s.a.abs()).max().unwrap_or(0);
        let step_b = steps.iter().map(|s| s.b.abs()).max().unwrap_or(0);
        Ok(IntervalBall {
            steps,
            step_a,
            step_b,
            power: 0,
            half_a: 0,
            half_b: 0,
            cells: vec![vec![(0, 0)]],
            budget,
        })
    }

    /// `S̄` for the standard generators `x, y` of `H(Z)`.
    pub fn standard() -> Self {
        Self::from_generators(&[(1, 0, 0), (0, 1, 0)], u64::MAX).expect("identity present")
    }

    /// `S̄ = S ∪ {id} ∪ S⁻¹` for explicit generators.
    pub fn from_generators(gens: &[(i64, i64, i64)], budget: u64) -> Result<Self> {
        let mut steps = vec![CellStep::point(0, 0, 0)];
        for &(a, b, c) in gens {
            steps.push(CellStep::point(a, b, c));
            steps.push(CellStep::point(-a, -b, -c + a * b));
        }
        steps.sort_unstable_by_key(|s| (s.a, s.b, s.lo));
        steps.dedup();
        Self::new(steps, budget)
    }

    pub fn power(&self) -> usize {
        self.power
    }

    fn width(&self) -> usize {
        (2 * self.half_b + 1) as usize
    }

    fn slot(&self, a: i64, b: i64) -> Option<usize> {
        if a.abs() > self.half_a || b.abs() > self.half_b {
            return None;
        }
        Some((a + self.half_a) as usize * self.width() + (b + self.half_b) as usize)
    }

    /// Replaces `Sⁿ` by `Sⁿ⁺¹`.
    pub fn grow(&mut self) -> Result<()> {
        let half_a = self.half_a + self.step_a;
        let half_b = self.half_b + self.step_b;
        let width = (2 * half_b + 1) as usize;
        let mut next: Vec<Vec<(i64, i64)>> = vec![Vec::new(); (2 * half_a + 1) as usize * width];
        let mut stored: u64 = 0;
        for (i, set) in self.cells.iter().enumerate() {
            if set.is_empty() {
                continue;
            }
            let a = (i / self.width()) as i64 - self.half_a;
            let b = (i % self.width()) as i64 - self.half_b;
            for s in &self.steps {
                let shift = a * s.b;
                let slot = (a + s.a + half_a) as usize * width + (b + s.b + half_b) as usize;
                let target = &mut next[slot];
                target.extend(set.iter().map(|&(lo, hi)| (lo + shift + s.lo, hi + shift + s.hi)));
            }
        }
        for v in next.iter_mut() {
            merge(v);
            stored += v.len() as u64;
        }
        if stored > self.budget {
            return Err(Error::resource("interval cells of the ball", self.budget));
        }
        self.cells = next;
        self.half_a = half_a;
        self.half_b = half_b;
        self.power += 1;
        Ok(())
    }

    pub fn grow_to(&mut self, n: usize) -> Result<()> {
        while self.power < n {
            self.grow()?;
        }
        Ok(())
    }

    pub fn size(&self) -> u128 {
        self.cells
            .iter()
            .flatten()
            .map(|&(lo, hi)| (hi - lo + 1) as u128)
            .sum()
    }

    /// The corner entries over `(a, b)`, as disjoint sorted intervals.
    pub fn fiber(&self, a: i64, b: i64) -> &[(i64, i64)] {
        self.slot(a, b).map_or(&[], |i| &self.cells[i])
    }

    pub fn contains(&self, a: i64, b: i64, c: i64) -> bool {
        self.fiber(a, b).iter().any(|&(lo, hi)| lo <= c && c <= hi)
    }

    /// Non-empty cells in `(a, b)` order.
    pub fn cells(&self) -> impl Iterator<Item = ((i64, i64), &[(i64, i64)])> {
        let w = self.width();
        let (ha, hb) = (self.half_a, self.half_b);
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(move |(i, v)| (((i / w) as i64 - ha, (i % w) as i64 - hb), v.as_slice()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::ConcreteGroup;

    #[test]
    fn matches_breadth_first_search() {
        let g = ConcreteGroup::heisenberg_z();
        let mut ball = IntervalBall::standard();
        for r in 0..=8 {
            ball.grow_to(r).unwrap();
            let bfs = g.ball(r, 1_000_000).unwrap();
            assert_eq!(ball.size(), bfs.len() as u128, "radius {r}");
            assert!(bfs.iter().all(|e| ball.contains(e[0], e[1], e[2])));
        }
    }

    #[test]
    fn nonstandard_generators() {
        let gens = [(2, 1, 3), (0, 1, -1), (1, 0, 0)];
        let g = ConcreteGroup::new(
            crate::groups::GroupKind::HeisenbergZ,
            gens.iter().map(|&(a, b, c)| vec![a, b, c]).collect(),
        )
        .unwrap();
        let mut ball = IntervalBall::from_generators(&gens, u64::MAX).unwrap();
        ball.grow_to(5).unwrap();
        assert_eq!(ball.size(), g.ball(5, 1_000_000).unwrap().len() as u128);
    }

    #[test]
    fn box_generators_count() {
        let n: i64 = 2;
        let steps = (-n..=n)
            .flat_map(|a| (-n..=n).map(move |b| CellStep { a, b, lo: -n * n * n, hi: n * n * n }))
            .collect();
        let mut ball = IntervalBall::new(steps, u64::MAX).unwrap();
        ball.grow().unwrap();
        assert_eq!(ball.size(), 425);
        assert!(matches!(IntervalBall::new(vec![CellStep::point(1, 0, 0)], 10), Err(Error::Usage(_))));
        let mut t = IntervalBall::from_generators(&[(1, 0, 0), (0, 1, 0)], 10).unwrap();
        assert!(matches!(t.grow_to(10), Err(Error::Resource { .. })));
    }
}
