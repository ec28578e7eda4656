use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileMode {
    Paper,
    Custom,
}

/// Thresholds driving the recursion: terminal capacity `t`, powercut edge
/// bound `p` (also the number of layers), big-component size `q`, high
/// degree `d` and kernel size `h`. Values saturate at `u64::MAX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantsProfile {
    pub s: usize,
    pub t: usize,
    pub p: u64,
    pub q: u64,
    pub d: u64,
    pub h: u64,
    pub mode: ProfileMode,
}

/// Caller-chosen values for a custom profile. `p_bound` is an upper bound
/// on the distinct edges of any powercut the engine will meet on the
/// instance at hand; `p` must cover it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overrides {
    pub t: Option<usize>,
    pub p: u64,
    pub q: u64,
    pub d: u64,
    pub h: u64,
    pub p_bound: u64,
}

fn pow(base: u64, exp: usize) -> u64 {
    (0..exp).fold(1u64, |acc, _| acc.saturating_mul(base))
}

pub fn constants_from(
    s: usize,
    terminal_count: usize,
    mode: ProfileMode,
    overrides: Option<Overrides>,
) -> Result<ConstantsProfile> {
    if s == 0 {
        return Err(Error::InvalidProfile("s must be at least 1".into()));
    }
    let t = (2 * s).max(terminal_count);
    match mode {
        ProfileMode::Paper => {
            let base = s as u64 + 1;
            let p = pow(base, t + 1);
            let q = p.saturating_add(1).saturating_mul(2);
            let d = q.saturating_add(s as u64 - 1);
            let h = p
                .saturating_mul(pow(base, t + 2))
                .saturating_add(1)
                .saturating_mul(2);
            Ok(ConstantsProfile {
                s,
                t,
                p,
                q,
                d,
                h,
                mode,
            })
        }
        ProfileMode::Custom => {
            let o = overrides
                .ok_or_else(|| Error::InvalidProfile("custom mode needs explicit values".into()))?;
            let t = o.t.unwrap_or(t);
            if t < terminal_count {
                return Err(Error::InvalidProfile(format!(
                    "t = {t} is below the terminal count {terminal_count}"
                )));
            }
            if o.p == 0 || o.p < o.p_bound {
                return Err(Error::InvalidProfile(format!(
                    "p = {} does not cover the powercut edge bound {}",
                    o.p, o.p_bound
                )));
            }
            if o.q != 2 * (o.p + 1) {
                return Err(Error::InvalidProfile(format!(
                    "q = {} must equal 2(p+1) = {}",
                    o.q,
                    2 * (o.p + 1)
                )));
            }
            if o.d < o.q + s as u64 - 1 {
                return Err(Error::InvalidProfile(format!(
                    "d = {} is below q+s-1 = {}",
                    o.d,
                    o.q + s as u64 - 1
                )));
            }
            if o.h < o.d {
                return Err(Error::InvalidProfile(format!(
                    "h = {} is below d = {}",
                    o.h, o.d
                )));
            }
            Ok(ConstantsProfile {
                s,
                t,
                p: o.p,
                q: o.q,
                d: o.d,
                h: o.h,
                mode,
            })
        }
    }
}

impl ConstantsProfile {
    pub fn paper(s: usize, terminal_count: usize) -> Result<Self> {
        constants_from(s, terminal_count, ProfileMode::Paper, None)
    }

    /// Smallest sound custom profile: `p` is the exact key-count bound on
    /// powercut edges for `t` terminals, and `h` is sized so that kernel
    /// contraction halves the kernel (local tables carry `t + 1`
    /// terminals).
    pub fn tight(s: usize, terminal_count: usize) -> Result<Self> {
        let t = (2 * s).max(terminal_count);
        let p = crate::powercut::powercut_edge_bound(s, t).max(1);
        let q = 2 * (p + 1);
        let d = q + s as u64 - 1;
        let local = crate::powercut::powercut_edge_bound(s, t + 1);
        let h = (2 * (p * local + 1)).max(d);
        constants_from(
            s,
            terminal_count,
            ProfileMode::Custom,
            Some(Overrides {
                t: Some(t),
                p,
                q,
                d,
                h,
                p_bound: p,
            }),
        )
    }

    /// Unvalidated thresholds, for exercising layer geometry in isolation.
    /// Solving with such a profile is not guaranteed to be correct.
    pub fn raw(s: usize, t: usize, p: u64, q: u64, d: u64, h: u64) -> Self {
        ConstantsProfile {
            s,
            t,
            p,
            q,
            d,
            h,
            mode: ProfileMode::Custom,
        }
    }

    pub fn layers(&self) -> usize {
        self.p.min(usize::MAX as u64) as usize
    }
}
