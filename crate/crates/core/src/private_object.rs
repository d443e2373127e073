//! Encryption as true/false statements about a shared private object.
//!
//! A `0` message bit becomes a true statement about the next feature of the
//! object and a `1` becomes a false one. When the object is a pad, the
//! claimed values are exactly the XOR ciphertext.
//!
//! Wire form is one statement per line: `<index> <claimed_value> <rendering>`.
//! Indices are 1-based. The rendering is free text and ignored when parsing.

use std::fmt;
use std::str::FromStr;

use crate::bitcore::BitString;
use crate::error::{Error, Result};

/// Something only the sender and receiver know, exposing independent boolean
/// features `1..=entropy_bits()`.
pub trait PrivateObject {
    fn entropy_bits(&self) -> usize;

    /// Value of feature `index`; `None` outside `1..=entropy_bits()`.
    fn feature(&self, index: usize) -> Option<bool>;

    /// Human-readable claim that feature `index` has `value`.
    fn render(&self, index: usize, value: bool) -> String;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub feature_index: usize,
    pub claimed_value: bool,
    pub rendering: String,
}

impl Statement {
    pub fn is_true_of<O: PrivateObject + ?Sized>(&self, obj: &O) -> Result<bool> {
        obj.feature(self.feature_index)
            .map(|v| v == self.claimed_value)
            .ok_or(Error::FeatureOutOfRange {
                index: self.feature_index,
                entropy: obj.entropy_bits(),
            })
    }
}

// Compares index and claimed value only.
impl PartialEq<(usize, bool)> for Statement {
    fn eq(&self, other: &(usize, bool)) -> bool {
        (self.feature_index, self.claimed_value) == *other
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}",
            self.feature_index,
            u8::from(self.claimed_value),
            self.rendering
        )
    }
}

impl FromStr for Statement {
    type Err = String;

    fn from_str(line: &str) -> Result<Self, String> {
        let mut fields = line.trim_start().splitn(3, ' ');
        let index = fields
            .next()
            .filter(|s| !s.is_empty())
            .ok_or("missing feature index")?;
        let feature_index: usize = index
            .parse()
            .map_err(|_| format!("bad feature index {index:?}"))?;
        let claimed_value = match fields.next() {
            Some("0") => false,
            Some("1") => true,
            Some(other) => return Err(format!("claimed value must be 0 or 1, got {other:?}")),
            None => return Err("missing claimed value".into()),
        };
        Ok(Statement {
            feature_index,
            claimed_value,
            rendering: fields.next().unwrap_or("").trim_end().to_string(),
        })
    }
}

/// Parses the line-oriented wire form. Blank lines are skipped.
pub fn parse_statements(text: &str) -> Result<Vec<Statement>> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            line.parse().map_err(|reason| Error::StatementSyntax {
                line: i + 1,
                reason,
            })
        })
        .collect()
}

pub fn format_statements(stmts: &[Statement]) -> String {
    stmts.iter().map(|s| format!("{s}\n")).collect()
}

/// One statement per message bit, about features `1..=m.len()` in order.
pub fn encode_statements<O: PrivateObject + ?Sized>(
    message: &BitString,
    obj: &O,
) -> Result<Vec<Statement>> {
    let entropy = obj.entropy_bits();
    if message.len() > entropy {
        return Err(Error::MessageExceedsEntropy {
            len: message.len(),
            entropy,
        });
    }
    message
        .iter()
        .enumerate()
        .map(|(i, bit)| {
            let index = i + 1;
            let actual = obj
                .feature(index)
                .ok_or(Error::FeatureOutOfRange { index, entropy })?;
            let claimed_value = actual ^ bit;
            Ok(Statement {
                feature_index: index,
                claimed_value,
                rendering: obj.render(index, claimed_value),
            })
        })
        .collect()
}

/// Bit `j` is 0 when statement `j` holds, 1 when it does not.
///
/// Statements must each refer to a distinct feature.
pub fn verify_statements<O: PrivateObject + ?Sized>(
    stmts: &[Statement],
    obj: &O,
) -> Result<BitString> {
    let mut used = vec![false; obj.entropy_bits() + 1];
    stmts
        .iter()
        .map(|s| {
            let truth = s.is_true_of(obj)?;
            if std::mem::replace(&mut used[s.feature_index], true) {
                return Err(Error::DuplicateFeature {
                    index: s.feature_index,
                });
            }
            Ok(!truth)
        })
        .collect()
}

/// A pad viewed as a private object: feature `i` is pad bit `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OtpObject {
    pad: BitString,
}

pub fn otp_object(pad: BitString) -> Result<OtpObject> {
    if pad.is_empty() {
        return Err(Error::ZeroLengthPad);
    }
    Ok(OtpObject { pad })
}

impl OtpObject {
    pub fn pad(&self) -> &BitString {
        &self.pad
    }
}

impl PrivateObject for OtpObject {
    fn entropy_bits(&self) -> usize {
        self.pad.len()
    }

    fn feature(&self, index: usize) -> Option<bool> {
        index.checked_sub(1).and_then(|i| self.pad.get(i))
    }

    fn render(&self, index: usize, value: bool) -> String {
        format!("bit {index} of the OTP is {}", u8::from(value))
    }
}

/// An object described by a fixed table of yes/no properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureTable {
    features: Vec<(String, bool)>,
}

impl FeatureTable {
    pub fn new<S: Into<String>>(features: impl IntoIterator<Item = (S, bool)>) -> Self {
        Self {
            features: features
                .into_iter()
                .map(|(name, v)| (name.into(), v))
                .collect(),
        }
    }

    /// A made-up creature with ten independent properties.
    pub fn creature() -> Self {
        Self::new([
            ("it has three eyes", true),
            ("it has five legs", true),
            ("it is green", false),
            ("it can fly", true),
            ("it has a tail", false),
            ("it lives underwater", false),
            ("it sleeps during the day", true),
            ("it has fur", false),
            ("it eats stones", true),
            ("it can whistle", true),
        ])
    }
}

impl PrivateObject for FeatureTable {
    fn entropy_bits(&self) -> usize {
        self.features.len()
    }

    fn feature(&self, index: usize) -> Option<bool> {
        index
            .checked_sub(1)
            .and_then(|i| self.features.get(i))
            .map(|&(_, v)| v)
    }

    fn render(&self, index: usize, value: bool) -> String {
        match index.checked_sub(1).and_then(|i| self.features.get(i)) {
            Some((name, _)) if value => name.clone(),
            Some((name, _)) => format!("NOT ({name})"),
            None => format!("feature {index} is {}", u8::from(value)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::otp;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn worked_statements() {
        let obj = otp_object(bits("1011001001")).unwrap();
        let stmts = encode_statements(&bits("0010110101"), &obj).unwrap();
        let claimed: BitString = stmts.iter().map(|s| s.claimed_value).collect();
        assert_eq!(claimed, bits("1001111100"));
        assert_eq!(stmts[0].rendering, "bit 1 of the OTP is 1");
        assert_eq!(stmts[1].rendering, "bit 2 of the OTP is 0");
        assert_eq!(stmts[9].rendering, "bit 10 of the OTP is 0");
        assert!(stmts[0].is_true_of(&obj).unwrap());
        assert!(!stmts[9].is_true_of(&obj).unwrap());
    }

    #[test]
    fn zero_message_is_all_true() {
        let obj = otp_object(bits("1011001001")).unwrap();
        let stmts = encode_statements(&BitString::zeros(10), &obj).unwrap();
        assert!(stmts.iter().all(|s| s.is_true_of(&obj).unwrap()));
        let claimed: BitString = stmts.iter().map(|s| s.claimed_value).collect();
        assert_eq!(&claimed, obj.pad());
    }

    #[test]
    fn single_statement_verification() {
        let obj = otp_object(bits("1011001001")).unwrap();
        let s1 = Statement {
            feature_index: 1,
            claimed_value: true,
            rendering: String::new(),
        };
        let s10 = Statement {
            feature_index: 10,
            claimed_value: false,
            rendering: String::new(),
        };
        assert_eq!(verify_statements(&[s1], &obj).unwrap(), bits("0"));
        assert_eq!(verify_statements(&[s10], &obj).unwrap(), bits("1"));
    }

    #[test]
    fn otp_object_features() {
        let obj = otp_object(bits("1011001001")).unwrap();
        assert_eq!(obj.entropy_bits(), 10);
        assert_eq!(obj.feature(1), Some(true));
        assert_eq!(obj.feature(3), Some(true));
        assert_eq!(obj.feature(0), None);
        assert_eq!(obj.feature(11), None);
        assert_eq!(otp_object(BitString::new()), Err(Error::ZeroLengthPad));
    }

    #[test]
    fn errors() {
        let obj = otp_object(bits("101")).unwrap();
        assert_eq!(
            encode_statements(&bits("0000"), &obj),
            Err(Error::MessageExceedsEntropy { len: 4, entropy: 3 })
        );
        let bad = Statement {
            feature_index: 4,
            claimed_value: true,
            rendering: String::new(),
        };
        assert_eq!(
            verify_statements(&[bad], &obj),
            Err(Error::FeatureOutOfRange {
                index: 4,
                entropy: 3
            })
        );
        let dup = Statement {
            feature_index: 2,
            claimed_value: true,
            rendering: String::new(),
        };
        assert_eq!(
            verify_statements(&[dup.clone(), dup], &obj),
            Err(Error::DuplicateFeature { index: 2 })
        );
    }

    #[test]
    fn creature_roundtrip() {
        let obj = FeatureTable::creature();
        let m = bits("0110010011");
        let stmts = encode_statements(&m, &obj).unwrap();
        assert_eq!(stmts[0].rendering, "it has three eyes");
        assert_eq!(stmts[1].rendering, "NOT (it has five legs)");
        assert_eq!(verify_statements(&stmts, &obj).unwrap(), m);
        // Shorter message than entropy uses a prefix of the features.
        assert_eq!(
            verify_statements(&encode_statements(&bits("1"), &obj).unwrap(), &obj).unwrap(),
            bits("1")
        );
    }

    #[test]
    fn wire_form_roundtrip_ignores_rendering() {
        let obj = otp_object(bits("1011001001")).unwrap();
        let stmts = encode_statements(&bits("0010110101"), &obj).unwrap();
        let text = format_statements(&stmts);
        assert!(text.starts_with("1 1 bit 1 of the OTP is 1\n"));
        let parsed = parse_statements(&text).unwrap();
        assert_eq!(parsed, stmts);

        let bare = parse_statements("1 1\n\n2 0 anything at all\n").unwrap();
        assert!(bare[0] == (1, true) && bare[1] == (2, false));
        assert_eq!(verify_statements(&bare, &obj).unwrap(), bits("00"));
    }

    #[test]
    fn wire_form_errors_name_the_line() {
        for (text, line) in [("1 1 ok\nx 1\n", 2), ("1 2\n", 1), ("3\n", 1)] {
            match parse_statements(text) {
                Err(Error::StatementSyntax { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn claimed_values_equal_xor() {
        let mut src = crate::bitcore::RandomSource::new(19);
        for _ in 0..500 {
            let n = 1 + src.uniform_below(64) as usize;
            let pad = src.random_bits(n);
            let m = src.random_bits(n);
            let stmts = encode_statements(&m, &otp_object(pad.clone()).unwrap()).unwrap();
            let claimed: BitString = stmts.iter().map(|s| s.claimed_value).collect();
            assert_eq!(claimed, otp::encrypt(&m, &pad).unwrap());
        }
    }
}
