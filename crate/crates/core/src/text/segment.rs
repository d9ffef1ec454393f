/// Splits `text` into words and the separator runs around them.
///
/// A word is a maximal run of letters and digits, where an apostrophe or
/// hyphen between two such characters stays inside the word (`aren't`,
/// `well-made`). The returned separators always number `words.len() + 1`.
pub fn segment(text: &str) -> (Vec<String>, Vec<String>) {
    let chars: Vec<char> = text.chars().collect();
    let is_joiner = |c: char| matches!(c, '\'' | '\u{2019}' | '-');
    let in_word = |i: usize| {
        let c = chars[i];
        c.is_alphanumeric()
            || (is_joiner(c)
                && i > 0
                && i + 1 < chars.len()
                && chars[i - 1].is_alphanumeric()
                && chars[i + 1].is_alphanumeric())
    };

    let mut words = Vec::new();
    let mut separators = Vec::new();
    let mut current = String::new();
    let mut inside = false;
    for i in 0..chars.len() {
        let w = in_word(i);
        if w != inside {
            if inside {
                words.push(std::mem::take(&mut current));
            } else {
                separators.push(std::mem::take(&mut current));
            }
            inside = w;
        }
        current.push(chars[i]);
    }
    if inside {
        words.push(current);
        separators.push(String::new());
    } else {
        separators.push(current);
    }
    (words, separators)
}

/// Splits on `.`, `!` or `?` followed by whitespace and an upper-case letter.
pub fn split_sentences(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        if matches!(chars[i], '.' | '!' | '?') {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_whitespace() {
                j += 1;
            }
            if j > i + 1 && j < chars.len() && chars[j].is_uppercase() {
                out.push(chars[start..=i].iter().collect::<String>());
                start = j;
                i = j;
                continue;
            }
        }
        i += 1;
    }
    let tail: String = chars[start..].iter().collect();
    if !tail.trim().is_empty() {
        out.push(tail);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rebuild(words: &[String], seps: &[String]) -> String {
        let mut s = seps[0].clone();
        for (w, sep) in words.iter().zip(&seps[1..]) {
            s.push_str(w);
            s.push_str(sep);
        }
        s
    }

    #[test]
    fn sentence_with_period() {
        let (w, s) = segment("The movie was perfect.");
        assert_eq!(w, ["The", "movie", "was", "perfect"]);
        assert_eq!(s, ["", " ", " ", " ", "."]);
    }

    #[test]
    fn contraction_is_one_word() {
        let (w, _) = segment("aren't ok");
        assert_eq!(w, ["aren't", "ok"]);
        let (w, _) = segment("a well-made film -- 'quoted'");
        assert_eq!(w, ["a", "well-made", "film", "quoted"]);
    }

    #[test]
    fn empty_and_punctuation_only() {
        assert_eq!(segment(""), (vec![], vec![String::new()]));
        let (w, s) = segment(" ?! ");
        assert!(w.is_empty());
        assert_eq!(rebuild(&w, &s), " ?! ");
    }

    #[test]
    fn unicode_round_trip() {
        let text = "  Ça va? Très bien—merci!  ";
        let (w, s) = segment(text);
        assert_eq!(rebuild(&w, &s), text);
        assert_eq!(w, ["Ça", "va", "Très", "bien", "merci"]);
    }

    #[test]
    fn sentences() {
        assert_eq!(
            split_sentences("It was good. I liked it! really? Yes"),
            ["It was good.", "I liked it! really?", "Yes"]
        );
        assert!(split_sentences("").is_empty());
    }
}
