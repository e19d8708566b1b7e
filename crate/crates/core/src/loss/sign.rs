//! Sign pattern of a polynomial on the open interval (0, 1).
//!
//! The polynomial is sampled on a dyadic grid of spacing 2^-12; every sign
//! change is bisected down to a bracket of width 2^-30. Integer polynomials
//! are evaluated exactly, so their profiles are free of rounding.

use serde::Serialize;

/// Dyadic resolution of all sample points: `x = num / 2^BITS`.
const BITS: u32 = 31;
const GRID_BITS: u32 = 12;
/// Bracket width 2^-30 < 10^-9.
const ROOT_WIDTH: u64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(v: f64) -> Sign {
        if v > 0.0 {
            Sign::Positive
        } else if v < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// Sign queries needed to profile a polynomial.
pub trait SignEval {
    fn is_zero_poly(&self) -> bool;
    /// Sign at `num / 2^bits`.
    fn sign_at(&self, num: u64, bits: u32) -> Sign;
    /// Sign on `(0, ε)` for small ε.
    fn sign_near_zero(&self) -> Sign;
    /// Sign on `(1 - ε, 1)` for small ε.
    fn sign_near_one(&self) -> Sign;
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SignInterval {
    pub lo: f64,
    pub hi: f64,
    pub sign: Sign,
}

/// An interval of width at most 2^-30 containing a root (degenerate when the
/// root is a grid point).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
}

impl RootBracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignProfile {
    pub intervals: Vec<SignInterval>,
    pub roots: Vec<RootBracket>,
}

fn to_f64(num: u64) -> f64 {
    num as f64 / (1u64 << BITS) as f64
}

impl SignProfile {
    /// The common sign on all of (0, 1), if the polynomial never changes sign
    /// or vanishes there.
    pub fn uniform_sign(&self) -> Option<Sign> {
        match self.intervals.as_slice() {
            [only] if self.roots.is_empty() => Some(only.sign),
            _ => None,
        }
    }

    /// Sign at `s`, or `None` if `s` falls inside a root bracket.
    pub fn sign_at(&self, s: f64) -> Option<Sign> {
        if self.roots.iter().any(|r| (r.lo..=r.hi).contains(&s)) {
            return None;
        }
        self.intervals
            .iter()
            .find(|i| i.lo <= s && s <= i.hi)
            .map(|i| i.sign)
    }
}

/// Profiles `poly` on (0, 1).
pub fn sign_profile<P: SignEval + ?Sized>(poly: &P) -> SignProfile {
    if poly.is_zero_poly() {
        return SignProfile {
            intervals: vec![SignInterval {
                lo: 0.0,
                hi: 1.0,
                sign: Sign::Zero,
            }],
            roots: Vec::new(),
        };
    }
    let one = 1u64 << BITS;
    let step = 1u64 << (BITS - GRID_BITS);
    let sign_at = |x: u64| -> Sign {
        if x == 0 {
            poly.sign_near_zero()
        } else if x == one {
            poly.sign_near_one()
        } else {
            poly.sign_at(x, BITS)
        }
    };

    // (lo, hi) numerators of each root bracket
    let mut roots: Vec<(u64, u64)> = Vec::new();
    let mut prev = (0u64, sign_at(0));
    let mut x = step;
    while x <= one {
        let s = sign_at(x);
        if s == Sign::Zero && x < one {
            roots.push((x, x));
        } else if s != Sign::Zero && prev.1 != Sign::Zero && s != prev.1 {
            let (mut lo, mut hi) = (prev.0, x);
            let lo_sign = prev.1;
            while hi - lo > ROOT_WIDTH {
                let mid = lo + (hi - lo) / 2;
                match sign_at(mid) {
                    Sign::Zero => {
                        lo = mid;
                        hi = mid;
                    }
                    m if m == lo_sign => lo = mid,
                    _ => hi = mid,
                }
            }
            roots.push((lo, hi));
        }
        prev = (x, s);
        x += step;
    }

    let mut intervals = Vec::with_capacity(roots.len() + 1);
    let mut lo = 0u64;
    for &(rlo, rhi) in &roots {
        if rlo > lo {
            intervals.push(SignInterval {
                lo: to_f64(lo),
                hi: to_f64(rlo),
                sign: sign_at(lo + (rlo - lo) / 2),
            });
        }
        lo = rhi;
    }
    if lo < one {
        intervals.push(SignInterval {
            lo: to_f64(lo),
            hi: 1.0,
            sign: sign_at(lo + (one - lo) / 2),
        });
    }
    SignProfile {
        intervals,
        roots: roots
            .into_iter()
            .map(|(a, b)| RootBracket {
                lo: to_f64(a),
                hi: to_f64(b),
            })
            .collect(),
    }
}
