//! Shared text formatting for integer combinations.

use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt;

/// Adds `coeff` to `key`, dropping the entry when it reaches zero.
pub(crate) fn add_coefficient<K: Ord>(map: &mut BTreeMap<K, i64>, key: K, coeff: i64) {
    match map.entry(key) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if *o.get() == 0 {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            if coeff != 0 {
                v.insert(coeff);
            }
        }
    }
}

/// Writes `c1*x1 + c2*x2 - …`, omitting unit coefficients; `0` when empty.
pub(crate) fn write_combination(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, i64)>,
) -> fmt::Result {
    let mut first = true;
    for (atom, n) in terms {
        if n == 0 {
            continue;
        }
        let sign = if n < 0 { "-" } else { "+" };
        match (first, n < 0) {
            (true, false) => {}
            (true, true) => f.write_str("-")?,
            (false, _) => write!(f, " {sign} ")?,
        }
        if n.abs() != 1 {
            write!(f, "{}*", n.abs())?;
        }
        f.write_str(&atom)?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
