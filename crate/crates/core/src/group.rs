use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Classical groups whose character varieties are covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Sl,
    Gl,
    Sp,
    O,
    SoOdd,
    SoEven,
}

impl Group {
    pub const ALL: [Group; 6] = [Group::Sl, Group::Gl, Group::Sp, Group::O, Group::SoOdd, Group::SoEven];

    pub fn as_str(self) -> &'static str {
        match self {
            Group::Sl => "sl",
            Group::Gl => "gl",
            Group::Sp => "sp",
            Group::O => "o",
            Group::SoOdd => "so_odd",
            Group::SoEven => "so_even",
        }
    }

    /// Resolve a family name for matrix size `n`; `so` splits by parity.
    pub fn resolve(name: &str, n: usize) -> Result<Group> {
        let g = match name {
            "so" if n.is_multiple_of(2) => Group::SoEven,
            "so" => Group::SoOdd,
            other => other.parse()?,
        };
        g.check_size(n)?;
        Ok(g)
    }

    pub fn check_size(self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix size must be positive".into()));
        }
        match self {
            Group::Sp | Group::SoEven if n % 2 == 1 => Err(Error::OddSize { group: self.as_str(), n }),
            Group::SoOdd if n.is_multiple_of(2) => {
                Err(Error::InvalidParameter(format!("so_odd needs odd n, got {n}")))
            }
            _ => Ok(()),
        }
    }

    /// Orthogonal groups use the transpose as involution.
    pub fn is_orthogonal(self) -> bool {
        matches!(self, Group::O | Group::SoOdd | Group::SoEven)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Group::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown group {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolve_so() {
        assert_eq!(Group::resolve("so", 4).unwrap(), Group::SoEven);
        assert_eq!(Group::resolve("so", 3).unwrap(), Group::SoOdd);
        assert!(Group::resolve("sp", 3).is_err());
        assert!(Group::resolve("su", 2).is_err());
    }

    #[test]
    fn json_names() {
        assert_eq!(serde_json::to_string(&Group::SoEven).unwrap(), "\"so_even\"");
    }
}
