//! The module expression language.
//!
//! ```text
//! expr := atom | comb '(' args ')'
//! atom := free(n) | bz2(r) | kvm(m) | s3q8 | bq8 | example62
//! comb := susp(s, e) | phi(e) | tensor(e, e) | trunc(r, e) | ufree(e)
//! ```
//!
//! Whitespace is ignored between tokens and integers are decimal.

use std::fmt;

use krull_core::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleExpr {
    /// `F(n)`
    Free(usize),
    /// `H*(BV)` for `V` of rank `r`.
    Bz2(usize),
    /// `H*(S³/Q₈)`
    S3q8,
    /// `H*(BQ₈)`
    Bq8,
    /// `H*(K(ℤ/2, m)) = U(F(m))`
    Kvm(usize),
    /// The pullback of `ΣF(3)` and `Φ²F(1)` over `Σ⁴ℤ/2`.
    Example62,
    Susp(usize, Box<ModuleExpr>),
    Phi(Box<ModuleExpr>),
    Tensor(Box<ModuleExpr>, Box<ModuleExpr>),
    /// Quotient by the submodule of degrees above `r`.
    Trunc(usize, Box<ModuleExpr>),
    /// The free unstable algebra on a module.
    Ufree(Box<ModuleExpr>),
}

const NAMES: [&str; 11] = [
    "bq8", "bz2", "example62", "free", "kvm", "phi", "s3q8", "susp", "tensor", "trunc", "ufree",
];

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ModuleExpr::*;
        match self {
            Free(n) => write!(f, "free({n})"),
            Bz2(r) => write!(f, "bz2({r})"),
            S3q8 => write!(f, "s3q8"),
            Bq8 => write!(f, "bq8"),
            Kvm(m) => write!(f, "kvm({m})"),
            Example62 => write!(f, "example62"),
            Susp(s, e) => write!(f, "susp({s}, {e})"),
            Phi(e) => write!(f, "phi({e})"),
            Tensor(a, b) => write!(f, "tensor({a}, {b})"),
            Trunc(r, e) => write!(f, "trunc({r}, {e})"),
            Ufree(e) => write!(f, "ufree({e})"),
        }
    }
}

/// Canonical text of an expression; `parse(&render(e)) == Ok(e)`.
pub fn render(e: &ModuleExpr) -> String {
    e.to_string()
}

pub fn parse(text: &str) -> Result<ModuleExpr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(ParseError::new(p.pos, &["end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn punct(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            let s = [c];
            Err(ParseError::new(self.pos, &[std::str::from_utf8(&s).expect("ascii")]))
        }
    }

    fn integer(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| ParseError::new(start, &["integer"]))
    }

    fn ident(&mut self) -> Result<&'static str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii word");
        match NAMES.iter().find(|&&n| n == word) {
            Some(&name) => Ok(name),
            None => {
                self.pos = start;
                Err(ParseError::new(start, &NAMES))
            }
        }
    }

    fn expr(&mut self) -> Result<ModuleExpr, ParseError> {
        use ModuleExpr::*;
        let name = self.ident()?;
        let e = match name {
            "s3q8" => return Ok(S3q8),
            "bq8" => return Ok(Bq8),
            "example62" => return Ok(Example62),
            "free" => Free(self.int_arg()?),
            "bz2" => Bz2(self.int_arg()?),
            "kvm" => Kvm(self.int_arg()?),
            "phi" => Phi(self.expr_arg()?),
            "ufree" => Ufree(self.expr_arg()?),
            "susp" | "trunc" => {
                self.punct(b'(')?;
                let n = self.integer()?;
                self.punct(b',')?;
                let e = Box::new(self.expr()?);
                self.punct(b')')?;
                if name == "susp" {
                    Susp(n, e)
                } else {
                    Trunc(n, e)
                }
            }
            "tensor" => {
                self.punct(b'(')?;
                let a = Box::new(self.expr()?);
                self.punct(b',')?;
                let b = Box::new(self.expr()?);
                self.punct(b')')?;
                Tensor(a, b)
            }
            _ => unreachable!("ident only returns known names"),
        };
        Ok(e)
    }

    fn int_arg(&mut self) -> Result<usize, ParseError> {
        self.punct(b'(')?;
        let n = self.integer()?;
        self.punct(b')')?;
        Ok(n)
    }

    fn expr_arg(&mut self) -> Result<Box<ModuleExpr>, ParseError> {
        self.punct(b'(')?;
        let e = self.expr()?;
        self.punct(b')')?;
        Ok(Box::new(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_point_at_the_offending_byte() {
        let e = parse("tensor(free(1) free(1))").unwrap_err();
        assert_eq!(e.offset, 15);
        assert_eq!(e.expected, vec![","]);
        let e = parse("phi(fre(1))").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.expected.iter().any(|s| s == "free"));
        let e = parse("free(x)").unwrap_err();
        assert_eq!((e.offset, e.expected_refs()), (5, vec!["integer"]));
        let e = parse("free(1) x").unwrap_err();
        assert_eq!((e.offset, e.expected_refs()), (8, vec!["end of input"]));
    }
}
