//! The plain text form shared by every interface: symbols separated by
//! single spaces, nulls written as `0`, e.g. `1 1 4 2 3 2 4 3`.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("empty symbol list")]
    Empty,
    #[error("token {index} ({token:?}) is not an unsigned integer")]
    BadToken { index: usize, token: String },
}

/// Parses a whitespace-separated symbol list. `0` is allowed (it denotes a
/// null entry); shape rules are enforced by the type constructors, not here.
pub fn parse_symbol_list(input: &str) -> Result<Vec<u32>, TextError> {
    let mut out = Vec::new();
    for (index, token) in input.split_whitespace().enumerate() {
        let value = token.parse::<u32>().map_err(|_| TextError::BadToken {
            index: index + 1,
            token: token.to_string(),
        })?;
        out.push(value);
    }
    if out.is_empty() {
        return Err(TextError::Empty);
    }
    Ok(out)
}

/// Formats a symbol list in the canonical single-space form.
pub fn format_symbol_list(symbols: &[u32]) -> String {
    let mut out = String::new();
    for (i, s) in symbols.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&s.to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_list() {
        assert_eq!(
            parse_symbol_list("1 1 4 2 3 2 4 3").unwrap(),
            vec![1, 1, 4, 2, 3, 2, 4, 3]
        );
    }

    #[test]
    fn parses_nulls_and_extra_whitespace() {
        assert_eq!(
            parse_symbol_list("  2\t3 2 0 3 ").unwrap(),
            vec![2, 3, 2, 0, 3]
        );
    }

    #[test]
    fn rejects_garbage_token() {
        assert_eq!(
            parse_symbol_list("1 x 2"),
            Err(TextError::BadToken {
                index: 2,
                token: "x".to_string()
            })
        );
    }

    #[test]
    fn rejects_empty() {
        assert_eq!(parse_symbol_list("   "), Err(TextError::Empty));
    }

    #[test]
    fn round_trips() {
        let symbols = vec![1, 1, 5, 2, 4, 2, 3, 5, 4, 3];
        assert_eq!(
            parse_symbol_list(&format_symbol_list(&symbols)).unwrap(),
            symbols
        );
    }
}
