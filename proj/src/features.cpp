// stylo/features.cpp
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

#include "stylo/features.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "stylo/text.hpp"

namespace stylo {

namespace {

struct SvHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};
struct SvEq {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const { return a == b; }
};

}  // namespace

namespace detail {
struct NgramIndexSet {
  std::vector<std::unordered_map<std::string, int, SvHash, SvEq>> indexes;
};
}  // namespace detail

namespace {

using GramIndex = std::unordered_map<std::string, int, SvHash, SvEq>;

constexpr std::array<std::string_view, kCharCountDim> kCharCountNames = {
    "count:alphabets",        "count:uppercase",
    "count:lowercase",        "count:vowels",
    "count:uppercase_vowels", "count:lowercase_vowels",
    "count:digits",           "count:spaces",
    "count:specials",
};

constexpr std::array<std::string_view, kWordDim> kWordNames = {
    "word:urltag_count",      "word:usertag_count", "word:trendtag_count",
    "word:quotetag_count",    "word:words",         "word:avg_word_len",
    "word:word_len_ratio",    "word:short_word_frac", "word:long_word_frac",
    "word:unique_words",      "word:capitalized_words", "word:uppercase_words",
    "word:lowercase_words",   "word:othercase_words",
};

// The nine sentence-separation symbols whose frequencies are measured.
constexpr std::array<char32_t, 9> kSentenceSymbols = {U',', U'-', U'.', U':', U';',
                                                      U'<', U'>', U'?', U'!'};

std::string hex2(char32_t c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%02x", static_cast<unsigned>(c));
  return buf;
}

std::string unigram_name(int offset) {
  if (offset < 26) return std::string("uni:alpha:") + static_cast<char>('a' + offset);
  if (offset < 52) return std::string("uni:upper:") + static_cast<char>('A' + offset - 26);
  if (offset < 78) return std::string("uni:lower:") + static_cast<char>('a' + offset - 52);
  if (offset < 88) return std::string("uni:digit:") + static_cast<char>('0' + offset - 78);
  if (offset == 88) return "uni:space";
  return "uni:special:" + hex2(special_at(offset - 89));
}

std::string sentence_name(int offset) {
  static constexpr std::array<std::string_view, 6> head = {
      "sent:sentences",          "sent:punct_symbols", "sent:words_per_sentence",
      "sent:chars_per_sentence", "sent:upper_start",   "sent:lower_start",
  };
  if (offset < 6) return std::string(head[offset]);
  return "sent:freq:" + hex2(kSentenceSymbols[offset - 6]);
}

std::string pos_name(int offset) {
  return "pos:" + std::string(pos_tag_name(static_cast<PosTag>(offset)));
}

std::string ngram_feature_name(int n, std::string_view gram) {
  return std::to_string(n) + "gram:" + std::string(gram);
}

void require_not_deleted(const NormalizedTweet& t, const char* op) {
  if (t.deleted)
    throw std::invalid_argument(std::string(op) + ": tweet was deleted by normalization");
}

bool is_sentence_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

struct SentenceStats {
  std::size_t count = 0;
  std::size_t upper_start = 0;
  std::size_t lower_start = 0;
};

SentenceStats segment_sentences(const std::vector<char32_t>& cps) {
  SentenceStats stats;
  bool has_content = false;
  bool classified = false;
  auto flush = [&] {
    if (has_content) ++stats.count;
    has_content = false;
    classified = false;
  };
  for (char32_t c : cps) {
    if (is_sentence_terminator(c)) {
      flush();
      continue;
    }
    if (!is_space_char(c)) {
      has_content = true;
      if (!classified) {
        classified = true;
        if (is_ascii_upper(c))
          ++stats.upper_start;
        else if (is_ascii_lower(c))
          ++stats.lower_start;
      }
    }
  }
  flush();
  return stats;
}

GramIndex make_gram_index(const NgramDictionary& dict) {
  GramIndex index;
  index.reserve(dict.entries.size());
  for (std::size_t i = 0; i < dict.entries.size(); ++i)
    index.emplace(dict.entries[i].first, static_cast<int>(i));
  return index;
}

/// Count dictionary-gram hits over sliding code-point windows of width n.
/// Returns the total window count.
std::size_t count_ngram_hits(std::string_view folded, int n, const GramIndex& index,
                             std::vector<double>& out) {
  std::vector<std::size_t> offsets;  // byte offset of each code point, plus end
  offsets.reserve(folded.size() + 1);
  std::size_t pos = 0;
  while (pos < folded.size()) {
    offsets.push_back(pos);
    decode_utf8(folded, pos);
  }
  offsets.push_back(folded.size());
  const std::size_t cp_count = offsets.size() - 1;
  if (cp_count < static_cast<std::size_t>(n)) return 0;
  const std::size_t windows = cp_count - static_cast<std::size_t>(n) + 1;
  for (std::size_t i = 0; i < windows; ++i) {
    std::string_view gram = folded.substr(offsets[i], offsets[i + n] - offsets[i]);
    if (auto it = index.find(gram); it != index.end()) out[it->second] += 1.0;
  }
  return windows;
}

}  // namespace

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string_view feature_group_name(FeatureGroup group) {
  switch (group) {
    case FeatureGroup::char_count: return "char_count";
    case FeatureGroup::char_unigram: return "char_unigram";
    case FeatureGroup::char_ngram: return "char_ngram";
    case FeatureGroup::word: return "word";
    case FeatureGroup::sentence: return "sentence";
    case FeatureGroup::pos: return "pos";
  }
  return "?";
}

// --- NgramDictionary ---

std::uint64_t NgramDictionary::content_hash() const {
  std::uint64_t h = fnv1a("ngramdict");
  h = fnv1a(std::to_string(n), h);
  for (const auto& [gram, count] : entries) {
    h = fnv1a(gram, h);
    h = fnv1a(std::to_string(count), h);
  }
  return h;
}

void NgramDictionary::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dictionary: " + path);
  out << "n=" << n << " size=" << entries.size() << '\n';
  for (const auto& [gram, count] : entries) out << gram << '\t' << count << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

NgramDictionary NgramDictionary::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dictionary: " + path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error(path + ": empty dictionary file");
  NgramDictionary dict;
  std::size_t declared = 0;
  if (std::sscanf(header.c_str(), "n=%d size=%zu", &dict.n, &declared) != 2)
    throw std::runtime_error(path + ": bad dictionary header '" + header + "'");
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": missing tab");
    dict.entries.emplace_back(line.substr(0, tab),
                              std::strtoull(line.c_str() + tab + 1, nullptr, 10));
  }
  if (dict.entries.size() != declared)
    throw std::runtime_error(path + ": header size " + std::to_string(declared) +
                             " != " + std::to_string(dict.entries.size()) + " entries");
  return dict;
}

NgramDictionary build_ngram_dictionary(std::span<const NormalizedTweet> texts, int n,
                                       std::size_t max_size) {
  if (n < 2 || n > 6) throw std::invalid_argument("n-gram order must be in 2..6");
  if (max_size < 1) throw std::invalid_argument("dictionary size must be >= 1");
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const NormalizedTweet& t : texts) {
    if (t.deleted) continue;
    std::string folded = fold_for_ngrams(strip_tags(t.text));
    auto cps = decode_all(folded);
    if (cps.size() < static_cast<std::size_t>(n)) continue;
    for (std::size_t i = 0; i + n <= cps.size(); ++i) {
      std::string gram;
      for (int k = 0; k < n; ++k) append_utf8(gram, cps[i + k]);
      ++counts[gram];
    }
  }
  NgramDictionary dict;
  dict.n = n;
  if (counts.empty()) {
    std::cerr << "warning: no " << n << "-grams in training texts, dictionary is empty\n";
    return dict;
  }
  dict.entries.assign(counts.begin(), counts.end());
  std::sort(dict.entries.begin(), dict.entries.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  if (dict.entries.size() > max_size) dict.entries.resize(max_size);
  return dict;
}

// --- FeatureRegistry ---

FeatureRegistry::FeatureRegistry(std::vector<FeatureDescriptor> descriptors)
    : descriptors_(std::move(descriptors)) {
  std::uint64_t h = fnv1a("registry");
  for (std::size_t i = 0; i < descriptors_.size(); ++i) {
    if (descriptors_[i].id != static_cast<int>(i))
      throw std::invalid_argument("registry ids must be contiguous from 0");
    h = fnv1a(feature_group_name(descriptors_[i].group), h);
    h = fnv1a(descriptors_[i].name, h);
  }
  layout_hash_ = h;
}

std::vector<int> FeatureRegistry::ids_in_group(FeatureGroup group) const {
  std::vector<int> ids;
  for (const auto& d : descriptors_)
    if (d.group == group) ids.push_back(d.id);
  return ids;
}

std::optional<int> FeatureRegistry::find(std::string_view name) const {
  for (const auto& d : descriptors_)
    if (d.name == name) return d.id;
  return std::nullopt;
}

void FeatureRegistry::save_manifest(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write registry manifest: " + path);
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(layout_hash_));
  out << "# layout_hash=" << hash << '\n';
  out << "id,group,name\n";
  for (const auto& d : descriptors_) {
    std::string name = d.name;
    // minimal CSV escaping; names may contain commas (n-grams)
    if (name.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : name) {
        if (c == '"') quoted.push_back('"');
        quoted.push_back(c);
      }
      quoted.push_back('"');
      name = quoted;
    }
    out << d.id << ',' << feature_group_name(d.group) << ',' << name << '\n';
  }
}

FeatureRegistry build_registry(const RegistryConfig& config,
                               std::span<const NgramDictionary> dicts) {
  std::vector<FeatureDescriptor> descriptors;
  int id = 0;
  auto add = [&](FeatureGroup group, std::string name) {
    descriptors.push_back({id++, group, std::move(name)});
  };
  if (config.char_counts)
    for (auto name : kCharCountNames) add(FeatureGroup::char_count, std::string(name));
  if (config.char_unigrams) {
    for (int i = 0; i < kCharUnigramDim; ++i) {
      if (i == 88 && !config.unigram_space_bin) continue;
      add(FeatureGroup::char_unigram, unigram_name(i));
    }
  }
  std::vector<const NgramDictionary*> ordered;
  for (const auto& d : dicts) ordered.push_back(&d);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->n < b->n; });
  for (const auto* dict : ordered)
    for (const auto& [gram, _] : dict->entries)
      add(FeatureGroup::char_ngram, ngram_feature_name(dict->n, gram));
  if (config.word)
    for (auto name : kWordNames) add(FeatureGroup::word, std::string(name));
  if (config.sentence)
    for (int i = 0; i < kSentenceDim; ++i) add(FeatureGroup::sentence, sentence_name(i));
  if (config.pos)
    for (int i = 0; i < kPosDim; ++i) add(FeatureGroup::pos, pos_name(i));
  return FeatureRegistry(std::move(descriptors));
}

FeatureRegistry build_selection_registry(const NgramDictionary& bigram_dict) {
  RegistryConfig config;
  config.unigram_space_bin = false;
  return build_registry(config, std::span(&bigram_dict, 1));
}

std::vector<std::string> named_subset_names() {
  return {"all",       "charcounts", "charcounts8", "unigrams", "unigrams99",
          "ngrams",    "word",       "sentence",    "pos"};
}

std::vector<int> named_subset(const FeatureRegistry& registry, std::string_view name) {
  auto group_ids = [&](FeatureGroup g) {
    auto ids = registry.ids_in_group(g);
    if (ids.empty())
      throw std::invalid_argument("subset '" + std::string(name) +
                                  "': registry has no such features");
    return ids;
  };
  if (name == "all") {
    std::vector<int> ids(registry.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    return ids;
  }
  if (name == "charcounts") return group_ids(FeatureGroup::char_count);
  if (name == "unigrams") return group_ids(FeatureGroup::char_unigram);
  if (name == "ngrams") return group_ids(FeatureGroup::char_ngram);
  if (name == "word") return group_ids(FeatureGroup::word);
  if (name == "sentence") return group_ids(FeatureGroup::sentence);
  if (name == "pos") return group_ids(FeatureGroup::pos);

  auto require = [&](const std::string& feature) {
    auto id = registry.find(feature);
    if (!id)
      throw std::invalid_argument("subset '" + std::string(name) + "': registry lacks " +
                                  feature);
    return *id;
  };
  std::vector<int> ids;
  if (name == "charcounts8") {
    for (auto f : {"count:uppercase", "count:lowercase", "count:digits", "count:specials",
                   "word:urltag_count", "word:usertag_count", "word:trendtag_count",
                   "word:quotetag_count"})
      ids.push_back(require(f));
  } else if (name == "unigrams99") {
    for (const auto& d : registry.descriptors()) {
      if (d.name.starts_with("uni:upper:") || d.name.starts_with("uni:lower:") ||
          d.name.starts_with("uni:digit:") || d.name.starts_with("uni:special:"))
        ids.push_back(d.id);
    }
    if (ids.size() != 95)
      throw std::invalid_argument("subset 'unigrams99': registry lacks cased uni-grams");
    for (auto f : {"word:urltag_count", "word:usertag_count", "word:trendtag_count",
                   "word:quotetag_count"})
      ids.push_back(require(f));
  } else {
    throw std::invalid_argument("unknown feature subset: " + std::string(name));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

// --- per-family extraction ---

std::array<double, kCharCountDim> extract_char_counts(const NormalizedTweet& t) {
  require_not_deleted(t, "extract_char_counts");
  std::array<double, kCharCountDim> out{};
  std::string stripped = strip_tags(t.text);
  std::size_t pos = 0;
  while (pos < stripped.size()) {
    char32_t c = decode_utf8(stripped, pos);
    if (is_ascii_letter(c)) {
      ++out[0];
      if (is_ascii_upper(c)) ++out[1];
      else ++out[2];
      if (is_vowel(c)) {
        ++out[3];
        if (is_ascii_upper(c)) ++out[4];
        else ++out[5];
      }
    } else if (is_ascii_digit(c)) {
      ++out[6];
    } else if (is_space_char(c)) {
      ++out[7];
    } else if (is_special_char(c)) {
      ++out[8];
    }
  }
  return out;
}

std::array<double, kCharUnigramDim> extract_char_unigrams(const NormalizedTweet& t,
                                                          bool normalized) {
  require_not_deleted(t, "extract_char_unigrams");
  std::array<double, kCharUnigramDim> out{};
  std::string stripped = strip_tags(t.text);
  std::size_t pos = 0, total = 0;
  while (pos < stripped.size()) {
    char32_t c = decode_utf8(stripped, pos);
    ++total;
    if (is_ascii_letter(c)) {
      out[ascii_lower(c) - U'a'] += 1.0;  // case-independent bin
      if (is_ascii_upper(c))
        out[26 + (c - U'A')] += 1.0;
      else
        out[52 + (c - U'a')] += 1.0;
    } else if (is_ascii_digit(c)) {
      out[78 + (c - U'0')] += 1.0;
    } else if (is_space_char(c)) {
      out[88] += 1.0;
    } else if (int s = special_index(c); s >= 0) {
      out[89 + s] += 1.0;
    }
  }
  if (normalized && total > 0)
    for (double& v : out) v /= static_cast<double>(total);
  return out;
}

std::vector<double> extract_ngram_freq(const NormalizedTweet& t,
                                       const NgramDictionary& dict, bool normalized) {
  require_not_deleted(t, "extract_ngram_freq");
  std::vector<double> out(dict.size(), 0.0);
  GramIndex index = make_gram_index(dict);
  std::string folded = fold_for_ngrams(strip_tags(t.text));
  std::size_t windows = count_ngram_hits(folded, dict.n, index, out);
  if (normalized && windows > 0)
    for (double& v : out) v /= static_cast<double>(windows);
  return out;
}

std::array<double, kWordDim> extract_word_features(const NormalizedTweet& t,
                                                   std::span<const Token> tokens) {
  require_not_deleted(t, "extract_word_features");
  std::array<double, kWordDim> out{};
  out[0] = t.url_count;
  out[1] = t.mention_count;
  out[2] = t.hashtag_count;
  out[3] = t.quote_count;

  std::size_t words = 0, length_sum = 0, short_words = 0, long_words = 0;
  std::size_t capitalized = 0, uppercase = 0, lowercase = 0, othercase = 0;
  std::set<std::string> unique;
  for (const Token& token : tokens) {
    if (token.kind != TokenKind::word) continue;
    ++words;
    auto cps = decode_all(token.surface);
    length_sum += cps.size();
    if (cps.size() <= 3) ++short_words;
    if (cps.size() > 6) ++long_words;

    std::string folded;
    for (char32_t c : cps) append_utf8(folded, ascii_lower(c));
    unique.insert(std::move(folded));

    std::size_t letters = 0, upper_letters = 0, lower_letters = 0;
    for (char32_t c : cps) {
      if (is_ascii_letter(c)) {
        ++letters;
        if (is_ascii_upper(c)) ++upper_letters;
        else ++lower_letters;
      }
    }
    if (letters == 0) {
      ++othercase;
    } else if (upper_letters == letters && letters >= 2) {
      ++uppercase;
    } else if (is_ascii_upper(cps.front()) && lower_letters == letters - 1) {
      ++capitalized;
    } else if (lower_letters == letters) {
      ++lowercase;
    } else {
      ++othercase;
    }
  }
  out[4] = static_cast<double>(words);
  double avg_len = words ? static_cast<double>(length_sum) / words : 0.0;
  out[5] = avg_len;
  out[6] = avg_len > 0.0 ? static_cast<double>(words) / avg_len : 0.0;
  out[7] = words ? static_cast<double>(short_words) / words : 0.0;
  out[8] = words ? static_cast<double>(long_words) / words : 0.0;
  out[9] = static_cast<double>(unique.size());
  out[10] = static_cast<double>(capitalized);
  out[11] = static_cast<double>(uppercase);
  out[12] = static_cast<double>(lowercase);
  out[13] = static_cast<double>(othercase);
  return out;
}

std::array<double, kSentenceDim> extract_sentence_features(const NormalizedTweet& t,
                                                           std::span<const Token> tokens,
                                                           bool normalized) {
  require_not_deleted(t, "extract_sentence_features");
  std::array<double, kSentenceDim> out{};
  std::string stripped = strip_tags(t.text);
  auto cps = decode_all(stripped);
  SentenceStats stats = segment_sentences(cps);

  std::size_t words = 0;
  for (const Token& token : tokens)
    if (token.kind == TokenKind::word) ++words;

  std::array<std::size_t, 9> symbol_counts{};
  std::size_t punct = 0;
  for (char32_t c : cps) {
    for (std::size_t i = 0; i < kSentenceSymbols.size(); ++i) {
      if (c == kSentenceSymbols[i]) {
        ++symbol_counts[i];
        ++punct;
        break;
      }
    }
  }
  const double total = static_cast<double>(cps.size());
  out[0] = static_cast<double>(stats.count);
  out[1] = static_cast<double>(punct);
  out[2] = stats.count ? static_cast<double>(words) / stats.count : 0.0;
  out[3] = stats.count ? total / stats.count : 0.0;
  out[4] = static_cast<double>(stats.upper_start);
  out[5] = static_cast<double>(stats.lower_start);
  for (std::size_t i = 0; i < 9; ++i) {
    out[6 + i] = static_cast<double>(symbol_counts[i]);
    if (normalized && total > 0) out[6 + i] /= total;
  }
  return out;
}

std::array<double, kPosDim> extract_pos_unigrams(std::span<const PosTag> tags,
                                                 bool normalized) {
  std::array<double, kPosDim> out{};
  for (PosTag tag : tags) out[static_cast<std::size_t>(tag)] += 1.0;
  if (normalized && !tags.empty())
    for (double& v : out) v /= static_cast<double>(tags.size());
  return out;
}

// --- FeatureExtractor ---

FeatureExtractor::FeatureExtractor(FeatureRegistry registry,
                                   std::vector<NgramDictionary> dicts, PosTagger tagger,
                                   ExtractOptions options)
    : registry_(std::move(registry)),
      dicts_(std::move(dicts)),
      tagger_(std::move(tagger)),
      options_(options) {
  // Resolve every descriptor to a (family, offset) slot up front.
  std::unordered_map<std::string, Slot> static_slots;
  for (int i = 0; i < kCharCountDim; ++i)
    static_slots[std::string(kCharCountNames[i])] = {FeatureGroup::char_count, 0, i};
  for (int i = 0; i < kCharUnigramDim; ++i)
    static_slots[unigram_name(i)] = {FeatureGroup::char_unigram, 0, i};
  for (int i = 0; i < kWordDim; ++i)
    static_slots[std::string(kWordNames[i])] = {FeatureGroup::word, 0, i};
  for (int i = 0; i < kSentenceDim; ++i)
    static_slots[sentence_name(i)] = {FeatureGroup::sentence, 0, i};
  for (int i = 0; i < kPosDim; ++i)
    static_slots[pos_name(i)] = {FeatureGroup::pos, 0, i};

  auto index_set = std::make_shared<detail::NgramIndexSet>();
  index_set->indexes.reserve(dicts_.size());
  for (const auto& dict : dicts_) index_set->indexes.push_back(make_gram_index(dict));
  gram_indexes_ = index_set;
  const auto& gram_indexes = index_set->indexes;

  slots_.reserve(registry_.size());
  for (const auto& d : registry_.descriptors()) {
    if (d.group == FeatureGroup::char_ngram) {
      std::size_t colon = d.name.find("gram:");
      if (colon == std::string::npos)
        throw std::invalid_argument("bad n-gram descriptor name: " + d.name);
      int n = std::atoi(d.name.c_str());
      std::string_view gram = std::string_view(d.name).substr(colon + 5);
      int family = -1;
      for (std::size_t i = 0; i < dicts_.size(); ++i)
        if (dicts_[i].n == n) family = static_cast<int>(i);
      if (family < 0)
        throw std::invalid_argument("registry/dictionary mismatch: no dictionary for " +
                                    d.name);
      auto it = gram_indexes[family].find(gram);
      if (it == gram_indexes[family].end())
        throw std::invalid_argument("registry/dictionary mismatch: dictionary lacks " +
                                    d.name);
      slots_.push_back({FeatureGroup::char_ngram, family, it->second});
    } else {
      auto it = static_slots.find(d.name);
      if (it == static_slots.end() || it->second.group != d.group)
        throw std::invalid_argument("unknown feature descriptor: " + d.name);
      slots_.push_back(it->second);
    }
    family_needed_[static_cast<std::size_t>(slots_.back().group)] = true;
  }
}

FeatureVector FeatureExtractor::extract(const NormalizedTweet& t) const {
  require_not_deleted(t, "extract");
  const bool norm = options_.normalized_frequencies;

  std::array<double, kCharCountDim> counts{};
  std::array<double, kCharUnigramDim> unigrams{};
  std::array<double, kWordDim> word{};
  std::array<double, kSentenceDim> sentence{};
  std::array<double, kPosDim> pos{};
  std::vector<std::vector<double>> ngrams(dicts_.size());

  auto needed = [&](FeatureGroup g) { return family_needed_[static_cast<std::size_t>(g)]; };

  if (needed(FeatureGroup::char_count)) counts = extract_char_counts(t);
  if (needed(FeatureGroup::char_unigram)) unigrams = extract_char_unigrams(t, norm);
  if (needed(FeatureGroup::char_ngram)) {
    std::string folded = fold_for_ngrams(strip_tags(t.text));
    for (std::size_t i = 0; i < dicts_.size(); ++i) {
      ngrams[i].assign(dicts_[i].size(), 0.0);
      std::size_t windows =
          count_ngram_hits(folded, dicts_[i].n, gram_indexes_->indexes[i], ngrams[i]);
      if (norm && windows > 0)
        for (double& v : ngrams[i]) v /= static_cast<double>(windows);
    }
  }
  if (needed(FeatureGroup::word) || needed(FeatureGroup::sentence) ||
      needed(FeatureGroup::pos)) {
    std::vector<Token> tokens = tokenize(t.text);
    if (needed(FeatureGroup::word)) word = extract_word_features(t, tokens);
    if (needed(FeatureGroup::sentence)) sentence = extract_sentence_features(t, tokens, norm);
    if (needed(FeatureGroup::pos)) {
      // Meta-tag tokens are excluded: tags must only move the 4 tag counts.
      std::vector<Token> content;
      content.reserve(tokens.size());
      for (auto& tok : tokens)
        if (tok.kind != TokenKind::metatag) content.push_back(std::move(tok));
      auto tags = tagger_.tag_all(content);
      pos = extract_pos_unigrams(tags, norm);
    }
  }

  FeatureVector out;
  out.registry_hash = registry_.layout_hash();
  out.values.resize(slots_.size());
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const Slot& slot = slots_[i];
    switch (slot.group) {
      case FeatureGroup::char_count: out.values[i] = counts[slot.offset]; break;
      case FeatureGroup::char_unigram: out.values[i] = unigrams[slot.offset]; break;
      case FeatureGroup::char_ngram:
        out.values[i] = ngrams[slot.family_index][slot.offset];
        break;
      case FeatureGroup::word: out.values[i] = word[slot.offset]; break;
      case FeatureGroup::sentence: out.values[i] = sentence[slot.offset]; break;
      case FeatureGroup::pos: out.values[i] = pos[slot.offset]; break;
    }
  }
  return out;
}

}  // namespace stylo
