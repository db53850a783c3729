// stylo/features.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STYLO_FEATURES_HPP
#define STYLO_FEATURES_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/postag.hpp"
#include "stylo/preprocess.hpp"

namespace stylo {

enum class FeatureGroup : std::uint8_t {
  char_count,
  char_unigram,
  char_ngram,
  word,
  sentence,
  pos,
};

std::string_view feature_group_name(FeatureGroup group);

struct FeatureDescriptor {
  int id = 0;
  FeatureGroup group = FeatureGroup::char_count;
  std::string name;
};

inline constexpr int kCharCountDim = 9;
inline constexpr int kCharUnigramDim = 122;  // 26 + 26 + 26 + 10 + 1 + 33
inline constexpr int kWordDim = 14;
inline constexpr int kSentenceDim = 15;
inline constexpr int kPosDim = 13;

/// Ordered top-V character n-grams learned from a training corpus
/// (lowercased, whitespace removed, windows never cross tweet boundaries).
/// Entries are sorted by descending count, ties lexicographically ascending.
struct NgramDictionary {
  int n = 2;
  std::vector<std::pair<std::string, std::uint64_t>> entries;

  std::size_t size() const { return entries.size(); }
  std::uint64_t content_hash() const;

  /// Text format: header `n=<n> size=<V>`, then `gram<TAB>count` lines.
  void save(const std::string& path) const;
  static NgramDictionary load(const std::string& path);
};

NgramDictionary build_ngram_dictionary(std::span<const NormalizedTweet> texts, int n,
                                       std::size_t max_size);

/// Fixed-layout descriptor list for a feature vector. The layout hash is a
/// checksum over the ordered descriptors (n-gram descriptors carry their
/// gram, so it also pins dictionary contents).
class FeatureRegistry {
 public:
  FeatureRegistry() = default;
  explicit FeatureRegistry(std::vector<FeatureDescriptor> descriptors);

  const std::vector<FeatureDescriptor>& descriptors() const { return descriptors_; }
  std::size_t size() const { return descriptors_.size(); }
  std::uint64_t layout_hash() const { return layout_hash_; }

  std::vector<int> ids_in_group(FeatureGroup group) const;
  std::optional<int> find(std::string_view name) const;

  /// CSV manifest: id,group,name plus a layout_hash header comment.
  void save_manifest(const std::string& path) const;

 private:
  std::vector<FeatureDescriptor> descriptors_;
  std::uint64_t layout_hash_ = 0;
};

struct RegistryConfig {
  bool char_counts = true;
  bool char_unigrams = true;
  bool unigram_space_bin = true;  // drop to get the 121-dim uni-gram family
  bool word = true;
  bool sentence = true;
  bool pos = true;
};

/// Canonical family order: char_count, char_unigram, char_ngram (dictionaries
/// in ascending n), word, sentence, pos.
FeatureRegistry build_registry(const RegistryConfig& config,
                               std::span<const NgramDictionary> dicts);

/// The feature-selection search space: 9 counts + 121 uni-grams (no white
/// space bin) + V bi-grams + 14 word + 15 sentence + 13 POS. With V=500 the
/// total is 672.
FeatureRegistry build_selection_registry(const NgramDictionary& bigram_dict);

/// Registry id lists for the named combinations used throughout:
///   all, charcounts, charcounts8, unigrams, unigrams99, ngrams, word,
///   sentence, pos.
/// charcounts8 = upper/lower alphabet, digit and special counts + 4 tag
/// counts; unigrams99 = cased alphabet + digit + special bins + 4 tag counts.
std::vector<int> named_subset(const FeatureRegistry& registry, std::string_view name);

std::vector<std::string> named_subset_names();

struct FeatureVector {
  std::vector<double> values;
  std::uint64_t registry_hash = 0;
};

// --- per-family extraction (tag-stripped text; meta tags never count) ---

/// alphabets, uppercase, lowercase, vowels, uppercase vowels, lowercase
/// vowels, digits, white spaces, special characters.
std::array<double, kCharCountDim> extract_char_counts(const NormalizedTweet& t);

/// Per-character relative frequencies over the tag-stripped text:
/// case-independent a-z, uppercase A-Z, lowercase a-z, digits, white space,
/// 33 specials. 0/0 -> 0.
std::array<double, kCharUnigramDim> extract_char_unigrams(const NormalizedTweet& t,
                                                          bool normalized = true);

/// Dictionary-gram occurrences / total windows (0/0 -> 0).
std::vector<double> extract_ngram_freq(const NormalizedTweet& t,
                                       const NgramDictionary& dict,
                                       bool normalized = true);

/// 4 tag counts, word count W, average word length L, W/L, short/long word
/// fractions, unique words, capitalized/uppercase/lowercase/othercase words.
std::array<double, kWordDim> extract_word_features(const NormalizedTweet& t,
                                                   std::span<const Token> tokens);

/// Sentence count, punctuation symbols, mean words/characters per sentence,
/// upper/lower-start sentence counts, 9 frequency bins for , - . : ; < > ? !
std::array<double, kSentenceDim> extract_sentence_features(const NormalizedTweet& t,
                                                           std::span<const Token> tokens,
                                                           bool normalized = true);

/// Relative frequency of the 13 tags over the token count.
std::array<double, kPosDim> extract_pos_unigrams(std::span<const PosTag> tags,
                                                 bool normalized = true);

struct ExtractOptions {
  // Frequency families divide by per-tweet totals by default; raw mode keeps
  // plain counts for sensitivity checks.
  bool normalized_frequencies = true;
};

namespace detail {
struct NgramIndexSet;  // prebuilt gram -> slot lookup tables
}

/// Extracts a full FeatureVector in registry order. Dictionaries must match
/// the registry's n-gram descriptors exactly. The POS histogram is computed
/// over non-meta-tag tokens so inserted tags only move the 4 tag counts.
class FeatureExtractor {
 public:
  FeatureExtractor(FeatureRegistry registry, std::vector<NgramDictionary> dicts,
                   PosTagger tagger, ExtractOptions options = {});

  FeatureVector extract(const NormalizedTweet& t) const;

  const FeatureRegistry& registry() const { return registry_; }
  const std::vector<NgramDictionary>& dictionaries() const { return dicts_; }
  const PosTagger& tagger() const { return tagger_; }

 private:
  struct Slot {
    FeatureGroup group;
    int family_index;  // which n-gram dictionary, for char_ngram
    int offset;        // index within the family vector
  };

  FeatureRegistry registry_;
  std::vector<NgramDictionary> dicts_;
  PosTagger tagger_;
  ExtractOptions options_;
  std::vector<Slot> slots_;
  std::array<bool, 6> family_needed_{};
  std::shared_ptr<const detail::NgramIndexSet> gram_indexes_;
};

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace stylo

#endif  // STYLO_FEATURES_HPP
