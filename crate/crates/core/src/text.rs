//! Tokenization shared by documents and queries.

/// Lowercased alphanumeric runs; any non-alphanumeric character separates tokens.
///
/// No stopword removal and no stemming.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|s| !s.is_empty())
        .flat_map(|s| {
            // Lowercasing can itself produce non-alphanumeric chars (e.g. combining marks).
            let lower = s.to_lowercase();
            if lower.chars().all(char::is_alphanumeric) {
                vec![lower]
            } else {
                lower
                    .split(|c: char| !c.is_alphanumeric())
                    .filter(|t| !t.is_empty())
                    .map(str::to_owned)
                    .collect()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_input() {
        assert!(tokenize("").is_empty());
        assert!(tokenize(" ,.;-- ").is_empty());
    }

    #[test]
    fn punctuation_and_case() {
        assert_eq!(
            tokenize("Hypothermia, intercepted!"),
            vec!["hypothermia", "intercepted"]
        );
        assert_eq!(tokenize("a a B"), vec!["a", "a", "b"]);
        assert_eq!(tokenize("TREC-d45 x^I"), vec!["trec", "d45", "x", "i"]);
    }

    #[test]
    fn unicode_letters_are_kept() {
        assert_eq!(tokenize("Järvelin ΣΑΣ"), vec!["järvelin", "σας"]);
    }

    proptest! {
        #[test]
        fn idempotent_on_own_output(s in "\\PC{0,64}") {
            let once = tokenize(&s);
            let twice = tokenize(&once.join(" "));
            prop_assert_eq!(once, twice);
        }
    }
}
