//! Bidirectional mapping between Arabic script and the canonical Latin
//! transliteration used everywhere else in the crate.
//!
//! The canonical alphabet has one ASCII symbol per Arabic consonant plus the
//! short vowels `a`/`i`/`u` and the long vowels `A`/`U`/`I`. Colliding
//! letters get case-distinct codes: د→`d` ض→`D`, ت→`t` ط→`T`, ز→`z` ظ→`Z`,
//! س→`s` ص→`S`, ه→`h` ح→`H`. Gemination (shadda) is a doubled consonant
//! (`yacuddu`), sukun emits nothing, and tanween is the word-final digraph
//! `un`/`an`/`in`.
//!
//! Both ا and ى map to `A`, and every hamza carrier (أ إ ؤ ئ ء) maps to `e`,
//! so Arabic→Latin→Arabic is not a round trip; the Latin→Arabic→Latin
//! direction is (see [`to_arabic`] for the conventions that make it so).

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslitError {
    /// Character outside the supported Arabic set (index is in chars).
    #[error("unsupported character {ch:?} at position {position}")]
    UnknownCharacter { ch: char, position: usize },
    /// Symbol outside the canonical Latin alphabet.
    #[error("unknown symbol {ch:?} at position {position}")]
    UnknownSymbol { ch: char, position: usize },
    /// A short vowel with no consonant to attach to.
    #[error("vowel {ch:?} at position {position} has no consonant seat")]
    MisplacedVowel { ch: char, position: usize },
}

/// The 28 consonant codes (hamza `e` included, long-vowel letters `w`/`y`
/// doubling as consonants). Roots draw their radicals from this set.
pub const CONSONANTS: &[char] = &[
    'b', 't', '~', 'j', 'H', 'x', 'd', 'v', 'r', 'z', 's', '^', 'S', 'D', 'T', 'Z', 'c', 'g',
    'f', 'q', 'k', 'l', 'm', 'n', 'h', 'w', 'y', 'e',
];

/// Full canonical alphabet: consonants, `A` (alif), `t`-overlapping ة, and
/// the vowels.
pub fn is_canonical_symbol(ch: char) -> bool {
    is_consonant(ch) || matches!(ch, 'A' | 'U' | 'I' | 'a' | 'i' | 'u')
}

pub fn is_consonant(ch: char) -> bool {
    CONSONANTS.contains(&ch)
}

pub fn is_short_vowel(ch: char) -> bool {
    matches!(ch, 'a' | 'i' | 'u')
}

/// True if every char of `s` is a canonical symbol.
pub fn is_canonical(s: &str) -> bool {
    s.chars().all(is_canonical_symbol)
}

fn letter_code(ch: char) -> Option<char> {
    Some(match ch {
        'ا' => 'A',
        'ب' => 'b',
        'ت' => 't',
        'ث' => '~',
        'ج' => 'j',
        'ح' => 'H',
        'خ' => 'x',
        'د' => 'd',
        'ذ' => 'v',
        'ر' => 'r',
        'ز' => 'z',
        'س' => 's',
        'ش' => '^',
        'ص' => 'S',
        'ض' => 'D',
        'ط' => 'T',
        'ظ' => 'Z',
        'ع' => 'c',
        'غ' => 'g',
        'ف' => 'f',
        'ق' => 'q',
        'ك' => 'k',
        'ل' => 'l',
        'م' => 'm',
        'ن' => 'n',
        'ه' => 'h',
        'و' => 'w',
        'ي' => 'y',
        'ى' => 'A',
        'ة' => 't',
        'ء' | 'أ' | 'إ' | 'ؤ' | 'ئ' => 'e',
        _ => return None,
    })
}

const FATHA: char = '\u{064E}';
const DAMMA: char = '\u{064F}';
const KASRA: char = '\u{0650}';
const SUKUN: char = '\u{0652}';
const SHADDA: char = '\u{0651}';
const TANWEEN_FATH: char = '\u{064B}';
const TANWEEN_DAMM: char = '\u{064C}';
const TANWEEN_KASR: char = '\u{064D}';
const TATWEEL: char = '\u{0640}';

fn is_arabic_letter(ch: char) -> bool {
    letter_code(ch).is_some() || ch == 'آ'
}

fn is_arabic_diacritic(ch: char) -> bool {
    matches!(
        ch,
        FATHA | DAMMA | KASRA | SUKUN | SHADDA | TANWEEN_FATH | TANWEEN_DAMM | TANWEEN_KASR
    )
}

/// Arabic script → canonical Latin.
///
/// fatha→`a`, kasra→`i`, damma→`u`; sukun is dropped; shadda doubles the
/// consonant it sits on; tanween emits `un`/`an`/`in` (a seat alif after
/// tanween fath is silent). A bare vowel letter following its short vowel
/// collapses to the long vowel (`a`+ا→`A`, `u`+و→`U`, `i`+ي→`I`); a vowel
/// letter carrying its own diacritic stays consonantal (كُوَ → `kuwa`). A
/// bare word-initial alif (hamzat wasl) reads as `ea`. Whitespace and
/// punctuation pass through.
pub fn to_latin(text: &str) -> Result<String, TranslitError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(chars.len());
    let mut at_word_start = true;
    // A seat alif directly after tanween fath is silent.
    let mut after_tanween_fath = false;

    for position in 0..chars.len() {
        let ch = chars[position];
        let next = chars.get(position + 1).copied();
        // a following diacritic means the letter is consonantal, not a long vowel
        let next_is_diacritic = next.map(is_arabic_diacritic).unwrap_or(false);
        let word_start = at_word_start;
        let skip_seat_alif = std::mem::take(&mut after_tanween_fath);

        if is_arabic_letter(ch) || is_arabic_diacritic(ch) {
            at_word_start = false;
        } else if ch.is_whitespace() || ch.is_ascii_punctuation() || is_arabic_punctuation(ch) {
            at_word_start = true;
            out.push(ch);
            continue;
        } else if ch == TATWEEL {
            continue;
        } else {
            return Err(TranslitError::UnknownCharacter { ch, position });
        }

        match ch {
            'ا' => {
                if skip_seat_alif {
                    // silent seat of tanween fath
                } else if word_start {
                    out.push('e');
                    let next_is_vowel = matches!(next, Some(FATHA | DAMMA | KASRA));
                    if !next_is_vowel {
                        // hamzat wasl carries an implied fatha
                        out.push('a');
                    }
                } else if out.ends_with('a') {
                    out.pop();
                    out.push('A');
                } else {
                    out.push('A');
                }
            }
            'ى' => {
                if out.ends_with('a') && !word_start {
                    out.pop();
                }
                out.push('A');
            }
            'و' => {
                if out.ends_with('u') && !word_start && !next_is_diacritic {
                    out.pop();
                    out.push('U');
                } else {
                    out.push('w');
                }
            }
            'ي' => {
                if out.ends_with('i') && !word_start && !next_is_diacritic {
                    out.pop();
                    out.push('I');
                } else {
                    out.push('y');
                }
            }
            'آ' => {
                out.push('e');
                out.push('A');
            }
            FATHA => out.push('a'),
            KASRA => out.push('i'),
            DAMMA => out.push('u'),
            SUKUN => {}
            SHADDA => double_previous_consonant(&mut out),
            TANWEEN_DAMM => out.push_str("un"),
            TANWEEN_KASR => out.push_str("in"),
            TANWEEN_FATH => {
                out.push_str("an");
                after_tanween_fath = true;
            }
            _ => {
                // plain consonant letter
                let code = letter_code(ch).expect("letter checked above");
                out.push(code);
            }
        }
    }
    Ok(out)
}

/// Shadda doubles the letter it sits on. Unicode allows both letter+shadda
/// +vowel and letter+vowel+shadda orders; handle both.
fn double_previous_consonant(out: &mut String) {
    let mut chars: Vec<char> = out.chars().collect();
    if let Some(&last) = chars.last() {
        if is_short_vowel(last) && chars.len() >= 2 {
            let cons = chars[chars.len() - 2];
            chars.insert(chars.len() - 1, cons);
        } else {
            chars.push(last);
        }
        *out = chars.into_iter().collect();
    }
}

fn is_arabic_punctuation(ch: char) -> bool {
    matches!(ch, '،' | '؛' | '؟' | '«' | '»')
}

/// Canonical Latin → Arabic script, fully vocalized.
///
/// Inverse of [`to_latin`] under these conventions: `A` emits alif (never
/// alif maqsura); doubled consonants emit shadda; word-final `un`/`an`/`in`
/// is tanween (`an` takes a seat alif except after ء); a consonant closing a
/// syllable (preceded by a vowel, followed by a consonant) takes sukun; `e`
/// seats on أ/إ word-initially and on bare ء elsewhere.
pub fn to_arabic(s: &str) -> Result<String, TranslitError> {
    let mut out = String::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut word_start = true;
    // previous canonical vowel within the word, if the last symbol was one
    let mut prev_vowel: Option<char> = None;
    // position of the current word's end (exclusive), for tanween detection
    let mut word_end = 0;

    while i < chars.len() {
        let ch = chars[i];
        if !is_canonical_symbol(ch) {
            if ch.is_whitespace() || ch.is_ascii_punctuation() || is_arabic_punctuation(ch) {
                out.push(ch);
                word_start = true;
                prev_vowel = None;
                i += 1;
                continue;
            }
            return Err(TranslitError::UnknownSymbol { ch, position: i });
        }
        if word_start {
            word_end = chars[i..]
                .iter()
                .position(|&c| !is_canonical_symbol(c))
                .map(|p| i + p)
                .unwrap_or(chars.len());
        }

        match ch {
            'a' | 'i' | 'u' => {
                if word_start || prev_vowel.is_some() {
                    return Err(TranslitError::MisplacedVowel { ch, position: i });
                }
                // word-final short vowel + n is tanween
                if i + 2 == word_end && chars[i + 1] == 'n' {
                    let last_letter = out.chars().last();
                    match ch {
                        'u' => out.push(TANWEEN_DAMM),
                        'i' => out.push(TANWEEN_KASR),
                        'a' => {
                            out.push(TANWEEN_FATH);
                            if last_letter != Some('ء') && last_letter != Some('ة') {
                                out.push('ا');
                            }
                        }
                        _ => unreachable!(),
                    }
                    i += 2;
                    prev_vowel = Some(ch);
                    word_start = false;
                    continue;
                }
                out.push(match ch {
                    'a' => FATHA,
                    'i' => KASRA,
                    'u' => DAMMA,
                    _ => unreachable!(),
                });
                prev_vowel = Some(ch);
            }
            'A' => {
                if word_start {
                    out.push('ا');
                } else {
                    out.push(FATHA);
                    out.push('ا');
                }
                prev_vowel = Some('A');
            }
            'U' => {
                if !word_start {
                    out.push(DAMMA);
                }
                out.push('و');
                prev_vowel = Some('U');
            }
            'I' => {
                if !word_start {
                    out.push(KASRA);
                }
                out.push('ي');
                prev_vowel = Some('I');
            }
            _ => {
                // consonant
                let geminate = i + 1 < word_end && chars[i + 1] == ch;
                let letter = consonant_letter(ch, word_start, chars.get(i + 1).copied());
                out.push_str(&letter);
                let mut next = i + 1;
                if geminate {
                    out.push(SHADDA);
                    next += 1;
                }
                // closing a syllable: preceded by a vowel, followed by another
                // consonant. A word-final w/y after its matching short vowel
                // also needs sukun or it would read back as a long vowel.
                let followed_by_consonant = next < word_end && is_consonant(chars[next]);
                let ambiguous_final = next == word_end
                    && ((ch == 'w' && prev_vowel == Some('u'))
                        || (ch == 'y' && prev_vowel == Some('i')));
                if prev_vowel.is_some() && (followed_by_consonant || ambiguous_final) && !geminate
                {
                    out.push(SUKUN);
                }
                prev_vowel = None;
                i = next;
                word_start = false;
                continue;
            }
        }
        i += 1;
        word_start = false;
    }
    Ok(out)
}

fn consonant_letter(code: char, word_start: bool, next: Option<char>) -> String {
    match code {
        'e' => {
            if word_start {
                match next {
                    Some('i') => "إ".to_string(),
                    _ => "أ".to_string(),
                }
            } else {
                "ء".to_string()
            }
        }
        'b' => "ب".into(),
        't' => "ت".into(),
        '~' => "ث".into(),
        'j' => "ج".into(),
        'H' => "ح".into(),
        'x' => "خ".into(),
        'd' => "د".into(),
        'v' => "ذ".into(),
        'r' => "ر".into(),
        'z' => "ز".into(),
        's' => "س".into(),
        '^' => "ش".into(),
        'S' => "ص".into(),
        'D' => "ض".into(),
        'T' => "ط".into(),
        'Z' => "ظ".into(),
        'c' => "ع".into(),
        'g' => "غ".into(),
        'f' => "ف".into(),
        'q' => "ق".into(),
        'k' => "ك".into(),
        'l' => "ل".into(),
        'm' => "م".into(),
        'n' => "ن".into(),
        'h' => "ه".into(),
        'w' => "و".into(),
        'y' => "ي".into(),
        _ => unreachable!("not a consonant code: {code:?}"),
    }
}

/// True if the text contains any Arabic-script codepoint.
pub fn contains_arabic(text: &str) -> bool {
    text.chars().any(|c| ('\u{0600}'..='\u{06FF}').contains(&c))
}
