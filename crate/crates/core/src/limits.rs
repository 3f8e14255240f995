/// Resource caps for operations that enumerate combinatorial objects.
///
/// The caps bound work, never correctness: counting always proceeds through
/// exact matrix powers, and an operation that would materialize more objects
/// than allowed refuses with [`SftError::EnumerationLimit`](crate::SftError)
/// carrying the exact count.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest alphabet accepted by subset-automaton constructions.
    pub max_alphabet: usize,
    /// Largest number of words materialized by an enumeration.
    pub max_enumeration: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_alphabet: 12,
            max_enumeration: 1_000_000,
        }
    }
}

impl Limits {
    /// Unbounded-ish limits for tests that deliberately stress enumeration.
    pub fn generous() -> Self {
        Limits {
            max_alphabet: 24,
            max_enumeration: 20_000_000,
        }
    }
}
