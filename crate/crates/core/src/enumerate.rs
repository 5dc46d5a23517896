//! Word-level subset enumeration helpers.

/// All subsets of `set`, in increasing integer order, starting with 0.
pub fn subsets_of(set: u64) -> impl Iterator<Item = u64> {
    let mut sub = 0u64;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = sub;
        sub = sub.wrapping_sub(set) & set;
        done = sub == 0;
        Some(out)
    })
}

/// All `size`-element subsets of `{0, ..., n-1}` in increasing integer order
/// (Gosper's hack). Requires `n <= 63`.
pub fn k_subsets(n: usize, size: usize) -> impl Iterator<Item = u64> {
    assert!(n <= 63, "k_subsets supports n <= 63");
    let limit = 1u64 << n;
    let mut cur = if size > n {
        limit
    } else if size == 0 {
        0
    } else {
        (1u64 << size) - 1
    };
    let mut zero_pending = size == 0;
    std::iter::from_fn(move || {
        if zero_pending {
            zero_pending = false;
            return Some(0);
        }
        if size == 0 || cur >= limit {
            return None;
        }
        let out = cur;
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        cur = (((r ^ cur) >> 2) / c) | r;
        Some(out)
    })
}

/// The positions of the set bits of `mask`, ascending.
pub fn bit_positions(mask: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}

/// Order-preserving compression of a word onto the positions of a fixed support.
///
/// Maps bit `positions[i]` of the input to bit `i` of the output. Because the
/// mapping is monotone, integer order is preserved on subsets of the support.
#[derive(Debug, Clone)]
pub struct Compressor {
    positions: Vec<u32>,
}

impl Compressor {
    pub fn new(support: u64) -> Self {
        Compressor {
            positions: bit_positions(support),
        }
    }

    pub fn width(&self) -> usize {
        self.positions.len()
    }

    pub fn compress(&self, x: u64) -> u64 {
        self.positions
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &p)| acc | (((x >> p) & 1) << i))
    }

    pub fn expand(&self, y: u64) -> u64 {
        self.positions
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &p)| acc | (((y >> i) & 1) << p))
    }
}

/// Binomial coefficient in `u128`; exact for every argument used in this crate.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of multisets of size `n` drawn from `m` kinds.
pub fn multisets(m: u64, n: u64) -> u128 {
    if n == 0 {
        1
    } else if m == 0 {
        0
    } else {
        binomial(m + n - 1, n)
    }
}
