#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bshadow {

// Index of a generator symbol. The index order IS the ShortLex symbol order.
using Gen = int8_t;
constexpr Gen kNoGen = -1;

using Word = std::vector<Gen>;

/**
 * Symmetric generating alphabet: every symbol carries a declared formal
 * inverse inside the same symbol list. Symbols are single characters so
 * relators and boundary points can be written as plain strings.
 */
class GeneratorAlphabet {
 public:
  // symbols in ShortLex order; inverse_of[i] = index of the inverse of symbol i
  GeneratorAlphabet(std::vector<std::string> symbols, std::vector<int> inverse_of);

  // convenience: lowercase generator + uppercase inverse, interleaved order
  // ("ab" -> a, A, b, B)
  static GeneratorAlphabet lower_upper(std::string_view generators);

  int size() const { return static_cast<int>(symbols_.size()); }
  Gen inverse(Gen g) const { return inverse_[g]; }
  const std::string& name(Gen g) const { return symbols_[g]; }
  std::optional<Gen> find(std::string_view name) const;

  Word parse(std::string_view text) const;  // throws MalformedInput
  std::string spell(const Word& w) const;

  Word invert(const Word& w) const;
  // free reduction: cancel adjacent formal inverses
  Word reduce(Word w) const;
  bool is_reduced(const Word& w) const;

  // ShortLex order on words (length first, then symbol index)
  bool shortlex_less(const Word& a, const Word& b) const;

 private:
  std::vector<std::string> symbols_;
  std::vector<Gen> inverse_;
  int char_index_[256];
};

}  // namespace bshadow
