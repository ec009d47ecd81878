//! Formula parser.
//!
//! ASCII grammar, whitespace-insensitive between tokens:
//!
//! ```text
//! phi ::= "true" | "RAT" | "RAT_" INT | "play_" INT "(" NAME ")"
//!       | "!" phi | phi "&" phi
//!       | "B_" INT phi | "B*_" INT phi | "CB" phi | "CB*" phi
//!       | "SRAT_" INT "^" INT | "WRAT_" INT "^" INT | "CCBR"
//!       | "(" phi ")"
//! ```
//!
//! Unary operators bind tighter than `&`, and `&` associates to the left.
//! Player indices are 1-based. A strategy NAME is taken verbatim: every
//! character between the parentheses, whitespace included. The parser knows
//! nothing about any particular game; see [`Formula::validate_for`] for name
//! and index resolution.
//!
//! [`Formula::validate_for`]: super::Formula::validate_for

use thiserror::Error;

use super::Formula;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos, message: message.into() })
    }

    fn digits(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.fail(start, "expected a number");
        }
        let raw = &self.text[start..start + len];
        let value: u64 = raw
            .parse()
            .map_err(|_| ParseError { pos: start, message: format!("number {raw} is too large") })?;
        self.pos += len;
        Ok(value)
    }

    /// 1-based in the syntax, 0-based in the tree.
    fn player(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let raw = self.digits()?;
        if raw == 0 {
            return self.fail(start, "player indices start at 1");
        }
        Ok((raw - 1) as usize)
    }

    fn level(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let raw = self.digits()?;
        u32::try_from(raw).map_err(|_| ParseError {
            pos: start,
            message: format!("level {raw} is too large"),
        })
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        loop {
            self.skip_ws();
            if self.eat("&") {
                let right = self.unary()?;
                left = Formula::And(Box::new(left), Box::new(right));
            } else {
                return Ok(left);
            }
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        if self.eat("!") {
            return Ok(Formula::Not(Box::new(self.unary()?)));
        }
        if self.eat("B*_") {
            let player = self.player()?;
            return Ok(Formula::CfBelieves(player, Box::new(self.unary()?)));
        }
        if self.eat("B_") {
            let player = self.player()?;
            return Ok(Formula::Believes(player, Box::new(self.unary()?)));
        }
        if self.eat("CB*") {
            return Ok(Formula::CfCommonBelief(Box::new(self.unary()?)));
        }
        // "CCBR" starts with "CC", so matching "CB" here cannot swallow it.
        if self.eat("CB") {
            return Ok(Formula::CommonBelief(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        if self.eat("(") {
            let inner = self.conjunction()?;
            self.skip_ws();
            if !self.eat(")") {
                return self.fail(self.pos, "expected ')'");
            }
            return Ok(inner);
        }
        if self.eat("true") {
            return Ok(Formula::True);
        }
        if self.eat("CCBR") {
            return Ok(Formula::Ccbr);
        }
        if self.eat("SRAT_") {
            let player = self.player()?;
            self.caret()?;
            return Ok(Formula::Srat(player, self.level()?));
        }
        if self.eat("WRAT_") {
            let player = self.player()?;
            self.caret()?;
            return Ok(Formula::Wrat(player, self.level()?));
        }
        // Longest match: "RAT_" before "RAT".
        if self.eat("RAT_") {
            return Ok(Formula::Rat(self.player()?));
        }
        if self.eat("RAT") {
            return Ok(Formula::RatAll);
        }
        if self.eat("play_") {
            let player = self.player()?;
            self.skip_ws();
            if !self.eat("(") {
                return self.fail(self.pos, "expected '(' after the player index");
            }
            let start = self.pos;
            let len = match self.rest().find(')') {
                Some(len) => len,
                None => return self.fail(start, "expected ')' after the strategy name"),
            };
            if len == 0 {
                return self.fail(start, "empty strategy name");
            }
            let name = self.text[start..start + len].to_owned();
            self.pos += len + 1;
            return Ok(Formula::Play(player, name));
        }
        self.fail(self.pos, "expected a formula")
    }

    fn caret(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.eat("^") {
            Ok(())
        } else {
            self.fail(self.pos, "expected '^'")
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser { text, pos: 0 };
    let formula = parser.conjunction()?;
    parser.skip_ws();
    if parser.pos != text.len() {
        return parser.fail(parser.pos, "unexpected trailing input");
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Formula::*;

    fn b(f: Formula) -> Box<Formula> {
        Box::new(f)
    }

    #[test]
    fn parses_atoms() {
        assert_eq!(parse_formula("true").unwrap(), True);
        assert_eq!(parse_formula("RAT").unwrap(), RatAll);
        assert_eq!(parse_formula("RAT_2").unwrap(), Rat(1));
        assert_eq!(parse_formula("play_1(C)").unwrap(), Play(0, "C".to_owned()));
        assert_eq!(parse_formula("CCBR").unwrap(), Ccbr);
        assert_eq!(parse_formula("SRAT_1^2").unwrap(), Srat(0, 2));
        assert_eq!(parse_formula("WRAT_2^0").unwrap(), Wrat(1, 0));
    }

    #[test]
    fn unary_binds_tighter_than_conjunction() {
        assert_eq!(
            parse_formula("!RAT & B_1 true").unwrap(),
            And(b(Not(b(RatAll))), b(Believes(0, b(True))))
        );
        assert_eq!(
            parse_formula("B_1 RAT & true").unwrap(),
            And(b(Believes(0, b(RatAll))), b(True))
        );
    }

    #[test]
    fn conjunction_associates_left() {
        assert_eq!(
            parse_formula("true & RAT & CCBR").unwrap(),
            And(b(And(b(True), b(RatAll))), b(Ccbr))
        );
    }

    #[test]
    fn parentheses_override_precedence() {
        assert_eq!(
            parse_formula("B_1 (RAT & true)").unwrap(),
            Believes(0, b(And(b(RatAll), b(True))))
        );
        assert_eq!(
            parse_formula("!(RAT & RAT_1)").unwrap(),
            Not(b(And(b(RatAll), b(Rat(0)))))
        );
    }

    #[test]
    fn starred_operators_are_distinct() {
        assert_eq!(parse_formula("B*_1 RAT").unwrap(), CfBelieves(0, b(RatAll)));
        assert_eq!(parse_formula("B_1 RAT").unwrap(), Believes(0, b(RatAll)));
        assert_eq!(parse_formula("CB* RAT").unwrap(), CfCommonBelief(b(RatAll)));
        assert_eq!(parse_formula("CB RAT").unwrap(), CommonBelief(b(RatAll)));
        assert_eq!(parse_formula("CB CCBR").unwrap(), CommonBelief(b(Ccbr)));
    }

    #[test]
    fn nested_modalities() {
        assert_eq!(
            parse_formula("B_1 B*_2 !play_2(S)").unwrap(),
            Believes(0, b(CfBelieves(1, b(Not(b(Play(1, "S".to_owned())))))))
        );
    }

    #[test]
    fn strategy_names_are_verbatim() {
        assert_eq!(
            parse_formula("play_1(left arm)").unwrap(),
            Play(0, "left arm".to_owned())
        );
    }

    #[test]
    fn whitespace_between_tokens_is_ignored() {
        assert_eq!(
            parse_formula("  B_1   ( RAT &  !  true ) ").unwrap(),
            Believes(0, b(And(b(RatAll), b(Not(b(True))))))
        );
    }

    #[test]
    fn errors_carry_byte_positions() {
        assert_eq!(parse_formula("").unwrap_err().pos, 0);
        assert_eq!(parse_formula("&RAT").unwrap_err().pos, 0);
        assert_eq!(parse_formula("B_").unwrap_err().pos, 2);
        assert_eq!(
            parse_formula("B_0 true").unwrap_err(),
            ParseError { pos: 2, message: "player indices start at 1".to_owned() }
        );
        assert_eq!(parse_formula("play_1()").unwrap_err().pos, 7);
        assert_eq!(parse_formula("(RAT").unwrap_err().pos, 4);
        assert_eq!(
            parse_formula("RAT )").unwrap_err(),
            ParseError { pos: 4, message: "unexpected trailing input".to_owned() }
        );
        assert_eq!(parse_formula("SRAT_1").unwrap_err().pos, 6);
        assert_eq!(parse_formula("RAT RAT").unwrap_err().pos, 4);
    }

    #[test]
    fn display_round_trips() {
        let formulas = [
            "true",
            "RAT",
            "RAT_2",
            "play_1(C)",
            "CCBR",
            "SRAT_1^3",
            "WRAT_2^0",
            "!RAT & B_1 true & CB* CCBR",
            "B_1 (RAT & true)",
            "!(B*_2 play_2(S) & CB RAT)",
            "B_1 B*_2 !play_2(S)",
            "CB (RAT_1 & RAT_2)",
            "SRAT_1^1 & !B*_1 SRAT_1^1",
        ];
        for text in formulas {
            let parsed = parse_formula(text).unwrap();
            let printed = parsed.to_string();
            assert_eq!(parse_formula(&printed).unwrap(), parsed, "through {printed:?}");
        }
    }
}
