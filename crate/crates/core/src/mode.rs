use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The four bosonic modes, in quadrature order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Cavity,
    Magnon1,
    Magnon2,
    Mechanics,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Cavity, Mode::Magnon1, Mode::Magnon2, Mode::Mechanics];

    /// Index of the mode's first quadrature (x or q) in the 8-vector.
    pub fn offset(self) -> usize {
        2 * self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Mode::Cavity => "cavity",
            Mode::Magnon1 => "magnon1",
            Mode::Magnon2 => "magnon2",
            Mode::Mechanics => "mechanics",
        }
    }

    /// Short symbol used in tables: a, m1, m2, b.
    pub fn symbol(self) -> &'static str {
        match self {
            Mode::Cavity => "a",
            Mode::Magnon1 => "m1",
            Mode::Magnon2 => "m2",
            Mode::Mechanics => "b",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cavity" | "a" => Ok(Mode::Cavity),
            "magnon1" | "m1" => Ok(Mode::Magnon1),
            "magnon2" | "m2" => Ok(Mode::Magnon2),
            "mechanics" | "phonon" | "b" => Ok(Mode::Mechanics),
            other => Err(Error::Domain(format!("unknown mode `{other}`"))),
        }
    }
}

/// An ordered pair of distinct modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ModePair(Mode, Mode);

impl ModePair {
    pub fn new(first: Mode, second: Mode) -> Result<Self, Error> {
        if first == second {
            return Err(Error::Domain(format!("mode pair needs two distinct modes, got {first} twice")));
        }
        Ok(Self(first, second))
    }

    pub fn first(self) -> Mode {
        self.0
    }

    pub fn second(self) -> Mode {
        self.1
    }

    pub fn swapped(self) -> Self {
        Self(self.1, self.0)
    }

    /// All six unordered pairs, first mode preceding second in quadrature order.
    pub fn all() -> Vec<ModePair> {
        let mut out = Vec::with_capacity(6);
        for (i, &a) in Mode::ALL.iter().enumerate() {
            for &b in &Mode::ALL[i + 1..] {
                out.push(ModePair(a, b));
            }
        }
        out
    }

    pub fn magnons() -> Self {
        Self(Mode::Magnon1, Mode::Magnon2)
    }
}

impl fmt::Display for ModePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0.symbol(), self.1.symbol())
    }
}

impl FromStr for ModePair {
    type Err = Error;

    /// Accepts `m1-m2`, `magnon1,magnon2`, `a/m1` and similar.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(['-', ',', '/', ' ']).filter(|p| !p.is_empty()).collect();
        match parts.as_slice() {
            [a, b] => ModePair::new(a.parse()?, b.parse()?),
            _ => Err(Error::Domain(format!("cannot parse mode pair `{s}`"))),
        }
    }
}

impl TryFrom<String> for ModePair {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<ModePair> for String {
    fn from(p: ModePair) -> String {
        p.to_string()
    }
}
