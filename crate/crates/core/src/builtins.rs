//! Named example bands constructible without an input file.

use thiserror::Error;

use crate::free_band::{build_prop2_band, v_free_band, FreeBandError, Prop2Realization};
use crate::semigroup::FiniteBand;
use crate::variety::{VarietyError, VarietyTable};

#[derive(Debug, Error)]
pub enum BuiltinError {
    #[error("unknown builtin `{name}` (try one of: {})", known_names().join(", "))]
    Unknown { name: String },
    #[error(transparent)]
    FreeBand(#[from] FreeBandError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

/// The fixed builtin names; `fb:k` and `vfree:<label>:<n>` are families.
pub fn known_names() -> Vec<&'static str> {
    vec!["prop2-fb3", "prop2-frb4", "fb:1", "fb:2", "fb:3", "vfree:<label>:<n>"]
}

/// Resolves a builtin name to a labeled finite band with a deterministic
/// element ordering.
pub fn builtin_band(name: &str) -> Result<FiniteBand, BuiltinError> {
    match name {
        "prop2-fb3" => return Ok(build_prop2_band(Prop2Realization::FreeBand3)),
        "prop2-frb4" => return Ok(build_prop2_band(Prop2Realization::FreeRegular4)),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("fb:") {
        let k: usize = rest.parse().map_err(|_| BuiltinError::Unknown {
            name: name.to_string(),
        })?;
        if k == 0 || k > 3 {
            return Err(BuiltinError::Unknown {
                name: name.to_string(),
            });
        }
        // the free band itself: quotient by the empty identity set
        return Ok(v_free_band(k, &[])?.band);
    }
    if let Some(rest) = name.strip_prefix("vfree:") {
        let Some((label, n_text)) = rest.rsplit_once(':') else {
            return Err(BuiltinError::Unknown {
                name: name.to_string(),
            });
        };
        let n: usize = n_text.parse().map_err(|_| BuiltinError::Unknown {
            name: name.to_string(),
        })?;
        let table = VarietyTable::default_table();
        let identities = table.identities(label)?;
        return Ok(v_free_band(n, identities)?.band);
    }
    Err(BuiltinError::Unknown {
        name: name.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prop2_builtins_have_twenty_elements() {
        assert_eq!(builtin_band("prop2-fb3").unwrap().n(), 20);
        assert_eq!(builtin_band("prop2-frb4").unwrap().n(), 20);
    }

    #[test]
    fn free_band_sizes() {
        assert_eq!(builtin_band("fb:1").unwrap().n(), 1);
        assert_eq!(builtin_band("fb:2").unwrap().n(), 6);
        assert_eq!(builtin_band("fb:3").unwrap().n(), 159);
    }

    #[test]
    fn vfree_family() {
        assert_eq!(builtin_band("vfree:LZ:2").unwrap().n(), 2);
        assert_eq!(builtin_band("vfree:SL:3").unwrap().n(), 7);
        assert_eq!(builtin_band("vfree:RB:3").unwrap().n(), 51);
    }

    #[test]
    fn bad_names_are_rejected() {
        for bad in ["nope", "fb:0", "fb:4", "fb:x", "vfree:SL", "vfree:XX:2", "vfree:SL:9"] {
            assert!(builtin_band(bad).is_err(), "{bad} should fail");
        }
    }
}
