//! Arithmetic in GF(8) = GF(2)[μ]/(μ³ + μ + 1).
//!
//! Elements are stored as 3-bit coordinate vectors in the polynomial basis
//! `{1, μ, μ²}` (bit 0 is the constant term). Multiplication goes through
//! log/antilog tables generated from powers of μ.
//!
//! The trace map `tr x = x + x² + x⁴` lands in GF(2), and `{μ³, μ⁵, μ⁶}` is a
//! self-dual basis: `tr(bᵢ bⱼ) = δᵢⱼ`. Coordinates with respect to this basis
//! are what tie field elements to qubits.

use std::fmt;
use std::ops::{Add, AddAssign, BitXor, Mul};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// Field size `d = pⁿ`.
pub const ORDER: usize = 8;
/// Characteristic `p`.
pub const CHARACTERISTIC: usize = 2;
/// Extension degree `n`.
pub const DEGREE: usize = 3;

/// μ³ reduces to μ + 1.
const REDUCTION: u8 = 0b011;

const fn build_exp() -> [u8; 7] {
    let mut exp = [0u8; 7];
    let mut acc = 1u8;
    let mut k = 0;
    while k < 7 {
        exp[k] = acc;
        // multiply by μ: shift and fold the μ³ term back in
        acc <<= 1;
        if acc & 0b1000 != 0 {
            acc = (acc & 0b111) ^ REDUCTION;
        }
        k += 1;
    }
    exp
}

const fn build_log(exp: &[u8; 7]) -> [u8; 8] {
    // log[0] is unused
    let mut log = [0u8; 8];
    let mut k = 0;
    while k < 7 {
        log[exp[k] as usize] = k as u8;
        k += 1;
    }
    log
}

const EXP: [u8; 7] = build_exp();
const LOG: [u8; 8] = build_log(&EXP);

/// An element of GF(8).
///
/// Ordering follows `0 < 1 < μ < μ² < … < μ⁶`, not the bit pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FieldElement(u8);

/// An element of GF(2), the codomain of the trace.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Bit(u8);

impl Bit {
    pub const ZERO: Bit = Bit(0);
    pub const ONE: Bit = Bit(1);

    pub fn new(value: bool) -> Self {
        Bit(value as u8)
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl BitXor for Bit {
    type Output = Bit;
    fn bitxor(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

impl From<Bit> for u8 {
    fn from(b: Bit) -> u8 {
        b.0
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);
    /// The primitive element μ.
    pub const MU: FieldElement = FieldElement(0b010);

    /// The self-dual basis `(μ³, μ⁵, μ⁶)`, in qubit order.
    pub const SELF_DUAL_BASIS: [FieldElement; 3] = [
        FieldElement(EXP[3]),
        FieldElement(EXP[5]),
        FieldElement(EXP[6]),
    ];

    /// Builds an element from its polynomial-basis bits (`bit 0` = constant term).
    pub fn from_bits(bits: u8) -> Result<Self, Error> {
        if bits < 8 {
            Ok(FieldElement(bits))
        } else {
            Err(Error::InvalidInput(format!(
                "{bits} is not a 3-bit field element"
            )))
        }
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// `μ^k` for any integer `k` (reduced mod 7).
    pub fn mu_pow(k: i64) -> Self {
        FieldElement(EXP[k.rem_euclid(7) as usize])
    }

    /// Exponent `k ∈ 0..7` with `self = μ^k`, or `None` for zero.
    pub fn exponent(self) -> Option<u8> {
        (self.0 != 0).then(|| LOG[self.0 as usize])
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Position in the canonical ordering `0, 1, μ, …, μ⁶`.
    pub fn rank(self) -> usize {
        match self.exponent() {
            None => 0,
            Some(k) => k as usize + 1,
        }
    }

    /// Inverse of [`rank`](Self::rank).
    pub fn from_rank(rank: usize) -> Self {
        assert!(rank < ORDER, "rank {rank} out of range");
        if rank == 0 {
            Self::ZERO
        } else {
            Self::mu_pow(rank as i64 - 1)
        }
    }

    /// All eight elements in canonical order.
    pub fn all() -> impl Iterator<Item = FieldElement> + Clone {
        (0..ORDER).map(Self::from_rank)
    }

    /// The seven nonzero elements, `1, μ, …, μ⁶`.
    pub fn nonzero() -> impl Iterator<Item = FieldElement> + Clone {
        (1..ORDER).map(Self::from_rank)
    }

    pub fn square(self) -> FieldElement {
        self * self
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(self) -> Option<FieldElement> {
        self.exponent().map(|k| Self::mu_pow(-(k as i64)))
    }

    /// `tr x = x + x² + x⁴`.
    pub fn trace(self) -> Bit {
        let x2 = self.square();
        let x4 = x2.square();
        let t = self.0 ^ x2.0 ^ x4.0;
        debug_assert!(t <= 1, "trace left the prime field");
        #[cfg(test)]
        if fault::broken() && self == FieldElement::mu_pow(3) {
            return Bit(t ^ 1);
        }
        Bit(t)
    }

    /// Coordinates `(tr(x μ³), tr(x μ⁵), tr(x μ⁶))` in the self-dual basis.
    pub fn self_dual_coords(self) -> [Bit; 3] {
        Self::SELF_DUAL_BASIS.map(|b| (self * b).trace())
    }

    /// `c₁ μ³ + c₂ μ⁵ + c₃ μ⁶`.
    pub fn from_coords(coords: [Bit; 3]) -> FieldElement {
        coords
            .iter()
            .zip(Self::SELF_DUAL_BASIS)
            .filter(|(c, _)| c.is_one())
            .fold(Self::ZERO, |acc, (_, b)| acc + b)
    }

    /// Text token: `0`, `1`, `m`, `m2`, …, `m6`.
    pub fn token(self) -> &'static str {
        const TOKENS: [&str; 8] = ["0", "1", "m", "m2", "m3", "m4", "m5", "m6"];
        TOKENS[self.rank()]
    }
}

/// Trace of a sum of products, `tr(Σ xᵢ yᵢ)`.
pub fn trace_of_products(terms: &[(FieldElement, FieldElement)]) -> Bit {
    terms
        .iter()
        .fold(FieldElement::ZERO, |acc, &(x, y)| acc + x * y)
        .trace()
}

/// Addition in characteristic 2 is XOR.
impl Add for FieldElement {
    type Output = FieldElement;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElement {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        if self.0 == 0 || rhs.0 == 0 {
            return FieldElement::ZERO;
        }
        let k = (LOG[self.0 as usize] + LOG[rhs.0 as usize]) % 7;
        FieldElement(EXP[k as usize])
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for FieldElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "0" => Ok(Self::ZERO),
            "1" => Ok(Self::ONE),
            "m" | "m1" => Ok(Self::MU),
            t => t
                .strip_prefix('m')
                .and_then(|k| k.parse::<u8>().ok())
                .filter(|k| (2..=6).contains(k))
                .map(|k| Self::mu_pow(k as i64))
                .ok_or_else(|| Error::BadToken(s.to_string())),
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.token())
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Test-only fault switch: flips `tr μ³` on the current thread.
#[cfg(test)]
pub(crate) mod fault {
    use std::cell::Cell;

    thread_local! {
        static BROKEN_TRACE: Cell<bool> = const { Cell::new(false) };
    }

    pub(crate) fn broken() -> bool {
        BROKEN_TRACE.with(|b| b.get())
    }

    pub(crate) fn with_broken_trace<R>(f: impl FnOnce() -> R) -> R {
        BROKEN_TRACE.with(|b| b.set(true));
        let out = f();
        BROKEN_TRACE.with(|b| b.set(false));
        out
    }
}
