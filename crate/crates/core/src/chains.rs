//! Chains representing zero, their α-sequences, and the blow-down calculus on
//! integer chains.

use std::fmt;

use crate::lattice::cf_eval;
use crate::scalar::{int, Scalar};
use crate::{Error, Result};

/// A chain `k = (k_2, …, k_{e-1})` with `[k] = 0`, together with
/// `α = (α_1, …, α_e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroChain {
    k: Vec<i64>,
    alpha: Vec<i64>,
}

impl ZeroChain {
    pub fn new(k: Vec<i64>) -> Result<Self> {
        let alpha = alpha_seq(&k).ok_or_else(|| Error::InvalidInput(format!("{k:?} has a negative α entry")))?;
        let last = *alpha.last().unwrap();
        if last != 0 {
            return Err(Error::InvalidInput(format!("{k:?} does not represent zero (α_e = {last})")));
        }
        if k.len() > 1 && alpha[1..alpha.len() - 1].contains(&0) {
            return Err(Error::InvalidInput(format!("{k:?}: continued fraction is undefined")));
        }
        Ok(ZeroChain { k, alpha })
    }

    pub fn chain(&self) -> &[i64] {
        &self.k
    }

    /// `(α_1, …, α_e)`.
    pub fn alphas(&self) -> &[i64] {
        &self.alpha
    }

    /// `k_i` for `2 <= i <= e-1`.
    pub fn k(&self, i: usize) -> i64 {
        self.k[i - 2]
    }

    /// `α_i` for `1 <= i <= e`.
    pub fn alpha(&self, i: usize) -> i64 {
        self.alpha[i - 1]
    }

    pub fn e(&self) -> usize {
        self.k.len() + 2
    }

    pub fn is_rdp_chain(&self) -> bool {
        self.k == rdp_chain(self.e())
    }
}

impl fmt::Display for ZeroChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_chain(&self.k))
    }
}

pub fn fmt_chain(c: &[i64]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// `α_1 = 0`, `α_2 = 1`, `α_{i+1} = k_i α_i − α_{i-1}`; `None` as soon as an
/// entry is negative.
pub fn alpha_seq(k: &[i64]) -> Option<Vec<i64>> {
    let mut alpha = vec![0i64, 1];
    for &ki in k {
        let n = alpha.len();
        let next = ki.checked_mul(alpha[n - 1])?.checked_sub(alpha[n - 2])?;
        if next < 0 {
            return None;
        }
        alpha.push(next);
    }
    Some(alpha)
}

/// All zero chains bounded entrywise by `a` (with entries at least 1), in
/// lexicographic order.
pub fn enumerate_k(a: &[i64]) -> Vec<ZeroChain> {
    let m = a.len();
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let mut k = Vec::with_capacity(m);
    let mut alpha = vec![0i64, 1];
    dfs(a, &mut k, &mut alpha, &mut out);
    out
}

fn dfs(a: &[i64], k: &mut Vec<i64>, alpha: &mut Vec<i64>, out: &mut Vec<ZeroChain>) {
    let i = k.len();
    let (prev, cur) = (alpha[i], alpha[i + 1]);
    let last = i + 1 == a.len();
    for ki in 1..=a[i] {
        let next = ki * cur - prev;
        if last {
            if next == 0 {
                k.push(ki);
                alpha.push(0);
                out.push(ZeroChain { k: k.clone(), alpha: alpha.clone() });
                k.pop();
                alpha.pop();
            }
        } else if next >= 1 {
            k.push(ki);
            alpha.push(next);
            dfs(a, k, alpha, out);
            k.pop();
            alpha.pop();
        }
    }
}

/// `(1,2,…,2,1)` of length `e-2`; `(1,1)` for `e = 4` and `(0)` for `e = 3`.
pub fn rdp_chain(e: usize) -> Vec<i64> {
    assert!(e >= 3, "rdp_chain needs e >= 3");
    match e {
        3 => vec![0],
        4 => vec![1, 1],
        _ => {
            let mut c = vec![2; e - 2];
            c[0] = 1;
            c[e - 3] = 1;
            c
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NormalForm {
    Smooth,
    Singular(Vec<i64>),
    Invalid,
}

impl NormalForm {
    pub fn is_smooth(&self) -> bool {
        matches!(self, NormalForm::Smooth)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::Smooth => write!(f, "smooth"),
            NormalForm::Singular(c) => write!(f, "{}", fmt_chain(c)),
            NormalForm::Invalid => write!(f, "invalid"),
        }
    }
}

/// One elimination step of the blow-down, recorded so it can be undone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlowOp {
    /// An interior `1` at this position was removed.
    Interior(usize),
    Left,
    Right,
}

fn terminal(c: &[i64]) -> Option<NormalForm> {
    if c.is_empty() || c == [1] || c == [1, 1] {
        Some(NormalForm::Smooth)
    } else if c.iter().any(|&x| x < 1) {
        Some(NormalForm::Invalid)
    } else if c.iter().all(|&x| x >= 2) {
        Some(NormalForm::Singular(c.to_vec()))
    } else {
        None
    }
}

fn apply(c: &mut Vec<i64>, pos: usize) -> BlowOp {
    let last = c.len() - 1;
    if pos == 0 {
        c.remove(0);
        c[0] -= 1;
        BlowOp::Left
    } else if pos == last {
        c.pop();
        c[last - 1] -= 1;
        BlowOp::Right
    } else {
        c.remove(pos);
        c[pos - 1] -= 1;
        c[pos] -= 1;
        BlowOp::Interior(pos)
    }
}

/// Blow down, eliminating the position chosen by `pick` among the current
/// entries equal to 1.
pub fn blow_down_by(chain: &[i64], mut pick: impl FnMut(&[usize]) -> usize) -> (NormalForm, Vec<BlowOp>) {
    let mut c = chain.to_vec();
    let mut ops = Vec::new();
    loop {
        if let Some(nf) = terminal(&c) {
            return (nf, ops);
        }
        let ones: Vec<usize> = (0..c.len()).filter(|&j| c[j] == 1).collect();
        let pos = ones[pick(&ones) % ones.len()];
        ops.push(apply(&mut c, pos));
    }
}

/// Blow down with the leftmost `1` eliminated first.
pub fn blow_down(chain: &[i64]) -> NormalForm {
    blow_down_by(chain, |_| 0).0
}

pub fn blow_down_traced(chain: &[i64]) -> (NormalForm, Vec<BlowOp>) {
    blow_down_by(chain, |_| 0)
}

/// Undo one blow-down step.
pub fn blow_up(c: &mut Vec<i64>, op: BlowOp) {
    match op {
        BlowOp::Left => {
            c[0] += 1;
            c.insert(0, 1);
        }
        BlowOp::Right => {
            let last = c.len() - 1;
            c[last] += 1;
            c.push(1);
        }
        BlowOp::Interior(pos) => {
            c.insert(pos, 1);
            c[pos - 1] += 1;
            c[pos + 1] += 1;
        }
    }
}

/// `(n, q)` with `[chain] = n/(n-q)`, for chains with all entries at least 2.
pub fn chain_to_nq<I: Scalar>(chain: &[i64]) -> Result<(I, I)> {
    if chain.is_empty() || chain.iter().any(|&x| x < 2) {
        return Err(Error::Precondition(format!("{} is not a normal-form chain", fmt_chain(chain))));
    }
    let coeffs: Vec<I> = chain.iter().map(|&x| int(x)).collect();
    let v = cf_eval(&coeffs).ok_or_else(|| Error::Internal("normal-form chain with undefined value".into()))?;
    let n = v.numer().clone();
    let q = n.clone() - v.denom().clone();
    Ok((n, q))
}

/// The zero chain `k` with `k_h = 1` obtained by blowing `a` (with `a_h`
/// replaced by 1) down to normal form and blowing the matching RDP chain back
/// up along the same steps.
pub fn special_k(a: &[i64], h: usize) -> Result<ZeroChain> {
    let e = a.len() + 2;
    if h < 2 || h > e - 1 {
        return Err(Error::Precondition(format!("h = {h} is not an interior index for e = {e}")));
    }
    let mut start = a.to_vec();
    start[h - 2] = 1;
    let (nf, ops) = blow_down_traced(&start);
    if nf == NormalForm::Invalid {
        return Err(Error::Precondition(format!("{} blows down to an invalid chain", fmt_chain(&start))));
    }
    // every step removes one entry
    let len = start.len() - ops.len();
    let mut k = rdp_chain(len + 2);
    for op in ops.iter().rev() {
        blow_up(&mut k, *op);
    }
    let bad = || Error::Precondition(format!("no zero chain with k_{h} = 1 below {}", fmt_chain(a)));
    let z = ZeroChain::new(k).map_err(|_| bad())?;
    if z.k(h) != 1 || z.chain().iter().zip(a).any(|(x, y)| x > y) {
        return Err(bad());
    }
    Ok(z)
}
