use std::fmt;
use std::str::FromStr;

use super::GerError;

/// An unnormalized Gerstenhaber expression in generators `a_1..a_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Gen(u8),
    Prod(Vec<Expr>),
    Br(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// The right comb `{w_1, {w_2, ... w_p}}`.
    pub fn comb(w: &[u8]) -> Expr {
        let mut e = Expr::Gen(*w.last().expect("nonempty word"));
        for &x in w[..w.len() - 1].iter().rev() {
            e = Expr::Br(Box::new(Expr::Gen(x)), Box::new(e));
        }
        e
    }

    pub fn bracket(a: Expr, b: Expr) -> Expr {
        Expr::Br(Box::new(a), Box::new(b))
    }

    /// The index sequence when this is a right comb of generators.
    pub fn as_comb(&self) -> Option<Vec<u8>> {
        match self {
            Expr::Gen(i) => Some(vec![*i]),
            Expr::Br(a, b) => match **a {
                Expr::Gen(i) => {
                    let mut w = vec![i];
                    w.extend(b.as_comb()?);
                    Some(w)
                }
                _ => None,
            },
            Expr::Prod(fs) if fs.len() == 1 => fs[0].as_comb(),
            Expr::Prod(_) => None,
        }
    }

    /// Generators in order of appearance.
    pub fn generators(&self) -> Vec<u8> {
        let mut out = Vec::new();
        fn rec(e: &Expr, out: &mut Vec<u8>) {
            match e {
                Expr::Gen(i) => out.push(*i),
                Expr::Prod(fs) => fs.iter().for_each(|f| rec(f, out)),
                Expr::Br(a, b) => {
                    rec(a, out);
                    rec(b, out);
                }
            }
        }
        rec(self, &mut out);
        out
    }

    pub fn arity(&self) -> usize {
        self.generators().len()
    }

    /// Degree in Ger: each bracket contributes `-1`.
    pub fn degree_ger(&self) -> i64 {
        match self {
            Expr::Gen(_) => 0,
            Expr::Prod(fs) => fs.iter().map(Expr::degree_ger).sum(),
            Expr::Br(a, b) => a.degree_ger() + b.degree_ger() - 1,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(i) => write!(f, "{i}"),
            Expr::Prod(fs) => {
                for (k, x) in fs.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Expr::Br(a, b) => write!(f, "{{{a},{b}}}"),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(())
        }
    }

    fn product(&mut self) -> Result<Expr, ()> {
        let mut fs = vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            fs.push(self.factor()?);
        }
        Ok(if fs.len() == 1 { fs.pop().expect("one factor") } else { Expr::Prod(fs) })
    }

    fn factor(&mut self) -> Result<Expr, ()> {
        match self.peek() {
            Some(b'{') => {
                self.pos += 1;
                let a = self.product()?;
                self.expect(b',')?;
                let b = self.product()?;
                self.expect(b'}')?;
                Ok(Expr::bracket(a, b))
            }
            Some(b'a') | Some(b'b') => {
                self.pos += 1;
                self.number()
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            _ => Err(()),
        }
    }

    fn number(&mut self) -> Result<Expr, ()> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).map_err(|_| ())?;
        let v: u8 = text.parse().map_err(|_| ())?;
        if v == 0 {
            return Err(());
        }
        Ok(Expr::Gen(v))
    }
}

impl FromStr for Expr {
    type Err = GerError;

    /// Grammar: products joined by `*`, brackets `{x,y}`, generators as
    /// positive integers with an optional `a`/`b` prefix.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let e = p.product().map_err(|_| GerError::MalformedExpression(s.to_string()))?;
        if p.peek().is_some() {
            return Err(GerError::MalformedExpression(s.to_string()));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let e: Expr = "{a2,a3}*a1*{4,5}".parse().unwrap();
        assert_eq!(e.to_string(), "{2,3}*1*{4,5}");
        assert_eq!(e.degree_ger(), -2);
        assert_eq!(e.arity(), 5);
        let c: Expr = "{1,{2,3}}".parse().unwrap();
        assert_eq!(c.as_comb(), Some(vec![1, 2, 3]));
        assert_eq!(Expr::comb(&[1, 2, 3]), c);
        assert!("{1,2".parse::<Expr>().is_err());
        assert!("1**2".parse::<Expr>().is_err());
        assert!("0".parse::<Expr>().is_err());
    }
}
