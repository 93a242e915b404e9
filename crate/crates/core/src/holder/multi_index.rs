use std::fmt;

/// Exponents of a partial derivative `D^alpha`, one per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zero(d: usize) -> Self {
        Self(vec![0; d])
    }

    /// `k e_j` in `d` coordinates.
    pub fn axis(d: usize, j: usize, k: u32) -> Self {
        let mut e = vec![0; d];
        e[j] = k;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|alpha|`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `alpha! = prod alpha_k!`.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&a| factorial(a)).product()
    }

    /// Coordinates with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().copied().enumerate().filter(|(_, a)| *a > 0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

pub fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// `binom(n, k)` in exact integer arithmetic.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of multi-indices in `d` variables with `|alpha| <= r`:
/// `(d+r)! / (d! r!)`.
pub fn taylor_coefficient_count(d: usize, r: u32) -> u64 {
    binomial(d as u64 + u64::from(r), u64::from(r))
}

/// All multi-indices with `|alpha| = order` in `d` variables, lexicographically
/// descending in the first coordinate.
pub fn multi_indices_of_order(d: usize, order: u32) -> Vec<MultiIndex> {
    fn fill(prefix: &mut Vec<u32>, left: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
        if left == 1 {
            prefix.push(remaining);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=remaining).rev() {
            prefix.push(a);
            fill(prefix, left - 1, remaining - a, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    fill(&mut Vec::with_capacity(d), d, order, &mut out);
    out
}

/// All multi-indices with `|alpha| <= r`, graded by order.
pub fn multi_indices_up_to(d: usize, r: u32) -> Vec<MultiIndex> {
    (0..=r).flat_map(|k| multi_indices_of_order(d, k)).collect()
}
