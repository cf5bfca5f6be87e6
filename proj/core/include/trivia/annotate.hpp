#pragma once

#include <string>
#include <string_view>

#include "trivia/corpus.hpp"

namespace trivia {

/// Shallow, deterministic annotator used when no annotation file is given.
///
/// - Tokens come from trivia::tokenize on the normalized text.
/// - POS: a closed-class lexicon, a bundled superlative list plus an "-est"
///   suffix rule (JJS), "most"/"least" before an open-class word (RBS),
///   "-ed"/"-ly"/"-ing" suffix rules, NNP for capitalized words and NN
///   otherwise.
/// - Lemma: lowercase, a small irregular table, then suffix stripping.
/// - NER: currency amounts and "<number> million|billion" are MONEY;
///   capitalized runs that spell an attribute value of `entity` are tagged
///   PERSON over exactly that span; any other capitalized run that does not
///   start the sentence is PERSON.
/// - Parse: the first finite-verb candidate is ROOT and every other token
///   attaches to it. The last nominal before the root is its nsubj.
///
/// Throws EmptyInput when `raw` has no tokens.
AnnotatedSentence fallback_annotate(std::string_view raw,
                                    const EntityRecord& entity,
                                    std::string sentence_id = {});

}  // namespace trivia
