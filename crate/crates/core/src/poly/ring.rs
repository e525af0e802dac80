use std::fmt;
use std::sync::Arc;

use super::PolyError;

/// Ordered list of variable names. Polynomials sharing a ring are compatible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<RingRef, PolyError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(PolyError::InvalidVariableName(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::NameCollision(v.clone()));
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    /// Ring with variables `{prefix}{start}..{prefix}{start+n-1}`.
    pub fn numbered(prefix: &str, start: usize, n: usize) -> RingRef {
        let names: Vec<String> = (start..start + n).map(|i| format!("{prefix}{i}")).collect();
        Ring::new(&names).expect("generated names are valid")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// This ring with `extra` appended; fails on a name collision.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<RingRef, PolyError> {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Ring::new(&vars)
    }

    /// A variable name starting with `stem` that is not yet used.
    pub fn fresh_name(&self, stem: &str) -> String {
        if !self.contains(stem) {
            return stem.to_string();
        }
        (1..)
            .map(|i| format!("{stem}{i}"))
            .find(|n| !self.contains(n))
            .unwrap()
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars.join(","))
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(matches!(Ring::new(&["x", "x"]), Err(PolyError::NameCollision(_))));
        assert!(matches!(Ring::new(&["2x"]), Err(PolyError::InvalidVariableName(_))));
        let r = Ring::new(&["x", "y"]).unwrap();
        assert_eq!(r.index_of("y"), Some(1));
        assert_eq!(r.fresh_name("x"), "x1");
        assert_eq!(r.fresh_name("t"), "t");
    }
}
