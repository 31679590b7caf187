use std::fmt;
use std::sync::Arc;

use crate::algebra::field::{is_prime, MAX_CHARACTERISTIC};
use crate::algebra::monomial::{MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};

/// Most variables a user-facing ring may have; the remaining slots up to
/// [`MAX_VARS`] are reserved for auxiliary elimination variables.
pub const MAX_USER_VARS: usize = 8;

/// The ambient ring F_p[vars] with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    p: u32,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// Shared handle to a ring; polynomials carry one of these.
pub type Ring = Arc<RingSpec>;

impl RingSpec {
    pub fn new(p: u64, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        if !is_prime(p) || p > MAX_CHARACTERISTIC as u64 {
            return Err(Error::NotPrime(p));
        }
        if vars.is_empty() || vars.len() > MAX_USER_VARS {
            return Err(Error::TooManyVars(vars.len()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::Invalid(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVar(v.clone()));
            }
        }
        if let MonomialOrder::Elimination(_) = order {
            return Err(Error::BadOrder(order.name()));
        }
        Ok(Arc::new(Self {
            p: p as u32,
            vars,
            order,
        }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same ring with a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Arc::new(Self {
            p: self.p,
            vars: self.vars.clone(),
            order,
        })
    }

    /// Ring with `extra` auxiliary variables adjoined in front, ordered by an
    /// elimination order for them.
    pub(crate) fn with_eliminated_prefix(&self, extra: usize) -> Result<Ring> {
        let n = self.vars.len() + extra;
        if n > MAX_VARS {
            return Err(Error::TooManyVars(n));
        }
        let mut vars: Vec<String> = (0..extra).map(|i| format!("_t{i}")).collect();
        vars.extend(self.vars.iter().cloned());
        Ok(Arc::new(Self {
            p: self.p,
            vars,
            order: MonomialOrder::Elimination(extra as u8),
        }))
    }

    /// Text form understood by the ring-spec parser.
    pub fn to_spec_text(&self) -> String {
        format!(
            "p={}\nvars={}\norder={}\n",
            self.p,
            self.vars.join(" "),
            self.order.name()
        )
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}[{}] ({})",
            self.p,
            self.vars.join(","),
            self.order.name()
        )
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn validation() {
        assert!(RingSpec::new(7, names(&["x0", "x1"]), MonomialOrder::Grevlex).is_ok());
        assert_eq!(
            RingSpec::new(4, names(&["x"]), MonomialOrder::Lex),
            Err(Error::NotPrime(4))
        );
        assert_eq!(
            RingSpec::new(2, names(&["x", "x"]), MonomialOrder::Lex),
            Err(Error::DuplicateVar("x".into()))
        );
        assert!(RingSpec::new(2, names(&["1x"]), MonomialOrder::Lex).is_err());
        assert!(RingSpec::new(2, names(&["a", "b", "c", "d", "e", "f", "g", "h", "i"]), MonomialOrder::Lex).is_err());
    }

    #[test]
    fn elimination_extension() {
        let r = RingSpec::new(3, names(&["x", "y"]), MonomialOrder::Lex).unwrap();
        let ext = r.with_eliminated_prefix(1).unwrap();
        assert_eq!(ext.nvars(), 3);
        assert_eq!(ext.order(), MonomialOrder::Elimination(1));
    }
}
