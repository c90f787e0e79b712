//! Principal-ideal arithmetic for the coefficient rings `Z` and `Z_n`.
//!
//! Both rings are principal ideal rings, so every ideal is pinned down by a
//! canonical generator and the ideal lattice `L(R)` becomes computable:
//! inclusion is divisibility, meet is `lcm`, join is `gcd`.

use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Coefficient ring: `Z`, `Z_n` (n >= 2), or the zero ring that shows up as
/// the quotient of a ring by itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingSpec {
    Int,
    IntMod(u64),
    Zero,
}

impl RingSpec {
    pub fn int_mod(n: u64) -> Result<RingSpec> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("Z_{n} is not a ring spec; need n >= 2")));
        }
        Ok(RingSpec::IntMod(n))
    }

    pub fn is_zero_ring(&self) -> bool {
        matches!(self, RingSpec::Zero)
    }

    /// Plain-text name: `Z`, `Z_12`, `0`.
    pub fn display_plain(&self) -> String {
        match self {
            RingSpec::Int => "Z".to_string(),
            RingSpec::IntMod(n) => format!("Z_{n}"),
            RingSpec::Zero => "0".to_string(),
        }
    }

    /// The whole ring as an ideal of itself.
    pub fn unit_ideal(&self) -> PrincipalIdeal {
        PrincipalIdeal::new(*self, 1).expect("unit ideal")
    }

    /// The zero ideal.
    pub fn zero_ideal(&self) -> PrincipalIdeal {
        match self {
            RingSpec::Int => PrincipalIdeal::new(*self, 0).expect("zero ideal"),
            RingSpec::IntMod(n) => PrincipalIdeal::new(*self, *n).expect("zero ideal"),
            RingSpec::Zero => PrincipalIdeal::new(*self, 0).expect("zero ideal"),
        }
    }
}

/// An ideal of `Z` or `Z_n`, encoded by its canonical generator.
///
/// For `Z`: `gen = 0` is `{0}`, `gen = 1` is `Z`, `gen = g` is `gZ`.
/// For `Z_n`: `gen` is the positive divisor of `n` generating the ideal,
/// with `gen = n` encoding `{0}` and `gen = 1` encoding `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrincipalIdeal {
    ring: RingSpec,
    gen: u64,
}

impl PrincipalIdeal {
    /// Builds an ideal, normalising the generator to canonical form.
    ///
    /// In `Z_n` the ideal generated by any `g` equals the one generated by
    /// `gcd(g, n)`; `0` normalises to `n`.
    pub fn new(ring: RingSpec, gen: u64) -> Result<PrincipalIdeal> {
        match ring {
            RingSpec::Int => Ok(PrincipalIdeal { ring, gen }),
            RingSpec::IntMod(n) => {
                if n < 2 {
                    return Err(Error::InvalidInput(format!("Z_{n} is not a ring")));
                }
                let g = if gen == 0 { n } else { gen.gcd(&n) };
                Ok(PrincipalIdeal { ring, gen: g })
            }
            RingSpec::Zero => Ok(PrincipalIdeal { ring, gen: 0 }),
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn generator(&self) -> u64 {
        self.gen
    }

    pub fn is_unit_ideal(&self) -> bool {
        match self.ring {
            RingSpec::Int | RingSpec::IntMod(_) => self.gen == 1,
            RingSpec::Zero => true,
        }
    }

    pub fn is_zero_ideal(&self) -> bool {
        match self.ring {
            RingSpec::Int => self.gen == 0,
            RingSpec::IntMod(n) => self.gen == n,
            RingSpec::Zero => true,
        }
    }

    /// Does the ring element `k` lie in this ideal?
    pub fn contains(&self, k: i64) -> bool {
        match self.ring {
            RingSpec::Int => {
                if self.gen == 0 {
                    k == 0
                } else {
                    k.rem_euclid(self.gen as i64) == 0
                }
            }
            RingSpec::IntMod(n) => {
                let r = k.rem_euclid(n as i64) as u64;
                r % self.gen == 0
            }
            RingSpec::Zero => true,
        }
    }

    fn check_same_ring(&self, other: &PrincipalIdeal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.display_plain(),
                other.ring.display_plain(),
            ));
        }
        Ok(())
    }

    /// Plain-text form, e.g. `0Z`, `Z`, `6Z`, `4Z_12`.
    pub fn display_plain(&self) -> String {
        match self.ring {
            RingSpec::Int => {
                if self.gen == 1 {
                    "Z".to_string()
                } else {
                    format!("{}Z", self.gen)
                }
            }
            RingSpec::IntMod(n) => {
                if self.gen == 1 {
                    format!("Z_{n}")
                } else {
                    format!("{}Z_{}", self.gen, n)
                }
            }
            RingSpec::Zero => "0".to_string(),
        }
    }
}

/// Inclusion `a ⊆ b`, i.e. the generator of `b` divides the generator of `a`.
pub fn ideal_leq(a: &PrincipalIdeal, b: &PrincipalIdeal) -> Result<bool> {
    a.check_same_ring(b)?;
    match a.ring {
        RingSpec::Int => Ok(if b.gen == 0 { a.gen == 0 } else { a.gen % b.gen == 0 }),
        RingSpec::IntMod(_) => Ok(a.gen % b.gen == 0),
        RingSpec::Zero => Ok(true),
    }
}

/// Intersection `a ∩ b`, realised as the lcm of the generators.
pub fn ideal_meet(a: &PrincipalIdeal, b: &PrincipalIdeal) -> Result<PrincipalIdeal> {
    a.check_same_ring(b)?;
    match a.ring {
        RingSpec::Int => PrincipalIdeal::new(a.ring, a.gen.lcm(&b.gen)),
        // lcm of two divisors of n divides n, so the result is canonical.
        RingSpec::IntMod(_) => PrincipalIdeal::new(a.ring, a.gen.lcm(&b.gen)),
        RingSpec::Zero => Ok(*a),
    }
}

/// Sum `a + b`, realised as the gcd of the generators.
pub fn ideal_join(a: &PrincipalIdeal, b: &PrincipalIdeal) -> Result<PrincipalIdeal> {
    a.check_same_ring(b)?;
    match a.ring {
        RingSpec::Int | RingSpec::IntMod(_) => PrincipalIdeal::new(a.ring, a.gen.gcd(&b.gen)),
        RingSpec::Zero => Ok(*a),
    }
}

/// The quotient ring `R/I`.
///
/// `Z/0Z = Z`, `Z/nZ = Z_n`, `Z/1Z = 0`; `Z_n/dZ_n = Z_d` for a divisor
/// `d >= 2`, `Z_n/Z_n = 0`, `Z_n/{0} = Z_n`.
pub fn quotient_ring(r: RingSpec, i: &PrincipalIdeal) -> Result<RingSpec> {
    if i.ring != r {
        return Err(Error::RingMismatch(r.display_plain(), i.ring.display_plain()));
    }
    match r {
        RingSpec::Int => match i.gen {
            0 => Ok(RingSpec::Int),
            1 => Ok(RingSpec::Zero),
            n => Ok(RingSpec::IntMod(n)),
        },
        RingSpec::IntMod(n) => match i.gen {
            1 => Ok(RingSpec::Zero),
            d if d == n => Ok(RingSpec::IntMod(n)),
            d => Ok(RingSpec::IntMod(d)),
        },
        RingSpec::Zero => Ok(RingSpec::Zero),
    }
}

// --- serde: `{"ring":"Z","gen":6}` and `{"ring":{"Zn":12},"gen":4}` ---

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RingSpec::Int => ser.serialize_str("Z"),
            RingSpec::IntMod(n) => {
                use serde::ser::SerializeMap;
                let mut m = ser.serialize_map(Some(1))?;
                m.serialize_entry("Zn", n)?;
                m.end()
            }
            RingSpec::Zero => ser.serialize_str("Zero"),
        }
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Name(String),
            Mod { #[serde(rename = "Zn")] n: u64 },
        }
        match Raw::deserialize(de)? {
            Raw::Name(s) if s == "Z" => Ok(RingSpec::Int),
            Raw::Name(s) if s == "Zero" => Ok(RingSpec::Zero),
            Raw::Name(s) => Err(D::Error::custom(format!("unknown ring `{s}` (expected \"Z\" or {{\"Zn\":n}})"))),
            Raw::Mod { n } => {
                if n < 2 {
                    return Err(D::Error::custom(format!("Z_{n} is not a ring; need n >= 2")));
                }
                Ok(RingSpec::IntMod(n))
            }
        }
    }
}

impl Serialize for PrincipalIdeal {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = ser.serialize_map(Some(2))?;
        m.serialize_entry("ring", &self.ring)?;
        m.serialize_entry("gen", &self.gen)?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for PrincipalIdeal {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            ring: RingSpec,
            gen: u64,
        }
        let raw = Raw::deserialize(de)?;
        PrincipalIdeal::new(raw.ring, raw.gen).map_err(D::Error::custom)
    }
}
