#include "bshadow/alphabet.hpp"

#include <algorithm>

#include "bshadow/errors.hpp"

namespace bshadow {

GeneratorAlphabet::GeneratorAlphabet(std::vector<std::string> symbols,
                                     std::vector<int> inverse_of)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty() || symbols_.size() > 30)
    throw MalformedInput("alphabet must have between 1 and 30 symbols");
  if (inverse_of.size() != symbols_.size())
    throw MalformedInput("inverse table size does not match symbol count");
  std::fill(std::begin(char_index_), std::end(char_index_), -1);
  for (size_t i = 0; i < symbols_.size(); ++i) {
    const std::string& s = symbols_[i];
    if (s.size() != 1)
      throw MalformedInput("alphabet symbols must be single characters: '" + s + "'");
    unsigned char c = static_cast<unsigned char>(s[0]);
    if (char_index_[c] != -1)
      throw MalformedInput("duplicate alphabet symbol: '" + s + "'");
    char_index_[c] = static_cast<int>(i);
  }
  inverse_.resize(symbols_.size());
  for (size_t i = 0; i < symbols_.size(); ++i) {
    int j = inverse_of[i];
    if (j < 0 || j >= static_cast<int>(symbols_.size()) || j == static_cast<int>(i))
      throw MalformedInput("bad inverse index for symbol '" + symbols_[i] + "'");
    inverse_[i] = static_cast<Gen>(j);
  }
  for (size_t i = 0; i < symbols_.size(); ++i)
    if (inverse_[inverse_[i]] != static_cast<Gen>(i))
      throw MalformedInput("inverse table is not an involution");
}

GeneratorAlphabet GeneratorAlphabet::lower_upper(std::string_view generators) {
  std::vector<std::string> symbols;
  std::vector<int> inverse_of;
  for (char c : generators) {
    symbols.push_back(std::string(1, c));
    symbols.push_back(std::string(1, static_cast<char>(c - 'a' + 'A')));
    int n = static_cast<int>(symbols.size());
    inverse_of.push_back(n - 1);
    inverse_of.push_back(n - 2);
  }
  return GeneratorAlphabet(std::move(symbols), std::move(inverse_of));
}

std::optional<Gen> GeneratorAlphabet::find(std::string_view name) const {
  if (name.size() != 1) return std::nullopt;
  int i = char_index_[static_cast<unsigned char>(name[0])];
  if (i < 0) return std::nullopt;
  return static_cast<Gen>(i);
}

Word GeneratorAlphabet::parse(std::string_view text) const {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    int i = char_index_[static_cast<unsigned char>(c)];
    if (i < 0)
      throw MalformedInput(std::string("unknown symbol '") + c + "' in word \"" +
                           std::string(text) + "\"");
    w.push_back(static_cast<Gen>(i));
  }
  return w;
}

std::string GeneratorAlphabet::spell(const Word& w) const {
  std::string s;
  s.reserve(w.size());
  for (Gen g : w) s += symbols_[g];
  return s;
}

Word GeneratorAlphabet::invert(const Word& w) const {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(inverse_[*it]);
  return r;
}

Word GeneratorAlphabet::reduce(Word w) const {
  Word out;
  out.reserve(w.size());
  for (Gen g : w) {
    if (!out.empty() && out.back() == inverse_[g])
      out.pop_back();
    else
      out.push_back(g);
  }
  return out;
}

bool GeneratorAlphabet::is_reduced(const Word& w) const {
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] == inverse_[w[i - 1]]) return false;
  return true;
}

bool GeneratorAlphabet::shortlex_less(const Word& a, const Word& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace bshadow
