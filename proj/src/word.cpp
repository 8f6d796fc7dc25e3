#include "finram/word.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "finram/error.hpp"

namespace finram {

Alphabet::Alphabet(std::vector<std::vector<Letter>> levels)
    : levels_(std::move(levels)) {
  if (levels_.empty()) throw DomainError("alphabet needs at least one level");
  for (auto& level : levels_) {
    if (level.empty()) throw DomainError("alphabet level is empty");
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
  }
  if (!std::binary_search(levels_[0].begin(), levels_[0].end(), kZeroLetter)) {
    throw DomainError("zero letter must belong to L_0");
  }
  for (std::size_t n = 1; n < levels_.size(); ++n) {
    if (!std::includes(levels_[n].begin(), levels_[n].end(),
                       levels_[n - 1].begin(), levels_[n - 1].end())) {
      throw DomainError("alphabet levels must form an inclusion chain");
    }
  }
}

Alphabet Alphabet::bitstrings(int max_level) {
  if (max_level < 0 || max_level > 20) {
    throw DomainError("bitstring alphabet level must lie in [0, 20]");
  }
  std::vector<std::vector<Letter>> levels;
  for (int n = 0; n <= max_level; ++n) {
    std::vector<Letter> level;
    for (std::uint64_t b = 0; b < (std::uint64_t{2} << n); ++b) level.push_back({b});
    levels.push_back(std::move(level));
  }
  return Alphabet(std::move(levels));
}

std::span<Letter const> Alphabet::level(int n) const {
  if (n < 0) throw DomainError("negative alphabet level");
  return levels_[static_cast<std::size_t>(std::min(n, max_level()))];
}

bool Alphabet::contains(int n, Letter letter) const {
  auto lv = level(n);
  return std::binary_search(lv.begin(), lv.end(), letter);
}

Word::Word(int k, Mode mode, std::vector<Symbol> symbols)
    : k_(k), mode_(mode), symbols_(std::move(symbols)) {
  if (k_ < 1) throw DomainError("word bound k must be positive");
  if (symbols_.empty()) throw DomainError("words are nonempty");
  for (auto const& s : symbols_) {
    if (!s.is_variable()) continue;
    if (std::abs(s.var) > k_) {
      throw DomainError("variable v_" + std::to_string(s.var) + " exceeds bound k="
                        + std::to_string(k_));
    }
    if (s.var < 0 && mode_ == Mode::Unsigned) {
      throw DomainError("negative variable in unsigned mode");
    }
  }
}

std::strong_ordering operator<=>(Word const& a, Word const& b) {
  if (auto c = a.symbols_.size() <=> b.symbols_.size(); c != 0) return c;
  if (auto c = a.symbols_ <=> b.symbols_; c != 0) return c;
  if (auto c = a.k_ <=> b.k_; c != 0) return c;
  return a.mode_ <=> b.mode_;
}

std::size_t WordHash::operator()(Word const& w) const noexcept {
  std::size_t h = static_cast<std::size_t>(w.k()) * 0x100000001B3ull
                  ^ static_cast<std::size_t>(w.mode());
  for (auto const& s : w.symbols()) {
    std::size_t v = s.is_variable() ? static_cast<std::size_t>(s.var + 1024)
                                    : static_cast<std::size_t>(s.letter.bits) << 12;
    h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t substitution_arity(int k, Mode mode) {
  return static_cast<std::size_t>(mode == Mode::Signed ? 2 * k : k);
}

std::size_t substitution_slot(int k, Mode mode, int var) {
  if (mode == Mode::Unsigned) return static_cast<std::size_t>(var - 1);
  return static_cast<std::size_t>(var > 0 ? k + var - 1 : k + var);
}

std::vector<int> Decomposition::support() const {
  std::vector<int> out;
  out.reserve(segments.size());
  for (auto const& s : segments) out.push_back(s.generator);
  return out;
}

namespace {

int max_var(Word const& w) {
  int m = 0;
  for (auto const& s : w.symbols()) m = std::max(m, std::abs(s.var));
  return m;
}

}  // namespace

WordSequence::WordSequence(std::vector<Word> words, std::vector<int> grades)
    : words_(std::move(words)), grades_(std::move(grades)) {
  if (words_.empty()) throw DomainError("word sequence is empty");
  if (grades_.empty()) {
    grades_.resize(words_.size());
    std::iota(grades_.begin(), grades_.end(), 0);
  }
  if (grades_.size() != words_.size()) {
    throw DomainError("grade list length differs from word count");
  }
  std::size_t total = 0;
  for (std::size_t n = 0; n < words_.size(); ++n) {
    auto const& w = words_[n];
    if (w.k() != k() || w.mode() != mode()) {
      throw DomainError("sequence words must share k and mode");
    }
    if (max_var(w) != k()) {
      throw DomainError("word " + std::to_string(n) + " is not a v_"
                        + std::to_string(k()) + "-variable word");
    }
    if (n > 0 && w.size() <= total) {
      throw DomainError("sequence is not rapidly increasing at word "
                        + std::to_string(n));
    }
    if (grades_[n] < 0 || (n > 0 && grades_[n] <= grades_[n - 1])) {
      throw DomainError("grades must be nonnegative and strictly increasing");
    }
    total += w.size();
  }
}

std::string to_string(Word const& w) {
  std::string out;
  for (auto const& s : w.symbols()) {
    if (!out.empty()) out += ' ';
    if (s.is_variable()) {
      out += "v" + std::to_string(s.var);
    } else if (s.letter.bits == 0) {
      out += '0';
    } else {
      for (int i = 0; i <= s.letter.level(); ++i) out += s.letter.bit(i) ? '1' : '0';
    }
  }
  return out;
}

}  // namespace finram
