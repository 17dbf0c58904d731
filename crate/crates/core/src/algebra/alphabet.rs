use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered list of distinct variable names.
///
/// Names are identifiers `[A-Za-z][A-Za-z0-9_]*`, optionally followed by a
/// bracketed subscript list such as `t[a,x,1]` whose parts are
/// `[A-Za-z0-9_]+`. Cloning is cheap.
#[derive(Clone)]
pub struct Alphabet {
    inner: Arc<Inner>,
}

struct Inner {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Alphabet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if !is_valid_name(n) {
                return Err(Error::InvalidAlphabet(format!("`{n}` is not a valid variable name")));
            }
            if index.insert(n.clone(), i as u32).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Alphabet { inner: Arc::new(Inner { names, index }) })
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn name(&self, i: u32) -> &str {
        &self.inner.names[i as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.inner.index.get(name).copied()
    }

    /// Concatenation of two alphabets (names must stay distinct).
    pub fn concat(&self, other: &Alphabet) -> Result<Alphabet> {
        Alphabet::new(self.names().iter().chain(other.names()).cloned())
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.names == other.inner.names
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

/// Length of the variable name starting at the beginning of `s`, if any.
pub(crate) fn scan_name(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    if b.is_empty() || !b[0].is_ascii_alphabetic() {
        return None;
    }
    let mut i = 1;
    while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
        i += 1;
    }
    if i < b.len() && b[i] == b'[' {
        let mut j = i + 1;
        loop {
            let start = j;
            while j < b.len() && (b[j].is_ascii_alphanumeric() || b[j] == b'_') {
                j += 1;
            }
            if j == start || j >= b.len() {
                return Some(i);
            }
            match b[j] {
                b',' => j += 1,
                b']' => return Some(j + 1),
                _ => return Some(i),
            }
        }
    }
    Some(i)
}

pub fn is_valid_name(s: &str) -> bool {
    scan_name(s) == Some(s.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert!(is_valid_name("x"));
        assert!(is_valid_name("x_1"));
        assert!(is_valid_name("t[1,x,b2]"));
        assert!(is_valid_name("u[3]"));
        assert!(!is_valid_name("1x"));
        assert!(!is_valid_name("t[]"));
        assert!(!is_valid_name("t[a,]"));
        assert!(!is_valid_name("x y"));
        assert!(!is_valid_name(""));
    }

    #[test]
    fn rejects_duplicates() {
        assert!(Alphabet::new(["x", "y", "x"]).is_err());
        let a = Alphabet::new(["x", "y"]).unwrap();
        assert_eq!(a.index_of("y"), Some(1));
        assert_eq!(a, Alphabet::new(["x", "y"]).unwrap());
    }
}
