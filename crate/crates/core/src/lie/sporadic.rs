use crate::error::{Error, Result};

/// Sporadic groups with a nontrivial outer automorphism, paired with an element order
/// `|s|` such that the centralizer of `s` in the automorphic extension stays inside the
/// simple group.
pub const SPORADIC_WITNESS_ORDERS: [(&str, u32); 12] = [
    ("M12", 11),
    ("M22", 11),
    ("J2", 5),
    ("HS", 11),
    ("J3", 19),
    ("McL", 7),
    ("He", 17),
    ("Suz", 13),
    ("O'N", 31),
    ("Fi22", 13),
    ("HN", 19),
    ("Fi24'", 29),
];

fn normalize(name: &str) -> String {
    name.chars()
        .filter(|c| !matches!(c, '\'' | ' ' | '_'))
        .flat_map(char::to_lowercase)
        .collect()
}

/// Prescribed witness order for a sporadic group; names compare case-insensitively and
/// ignore apostrophes (`"ON"` finds `O'N`).
pub fn sporadic_witness_order(name: &str) -> Result<u32> {
    let key = normalize(name);
    SPORADIC_WITNESS_ORDERS
        .iter()
        .find(|(n, _)| normalize(n) == key)
        .map(|&(_, o)| o)
        .ok_or_else(|| Error::UnknownSporadic(name.to_string()))
}
