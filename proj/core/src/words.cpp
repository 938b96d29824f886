#include "magnus/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "magnus/checked.hpp"
#include "magnus/errors.hpp"

namespace magnus {

Alphabet::Alphabet(int n) : rank(n) {
  if (n < 1) throw ValidationError("alphabet rank must be at least 1");
}

Word Word::generator_power(int index, std::int64_t exponent) {
  Word w;
  const int sign = exponent < 0 ? -1 : 1;
  const std::uint64_t count = exponent < 0 ? static_cast<std::uint64_t>(-(exponent + 1)) + 1
                                           : static_cast<std::uint64_t>(exponent);
  w.letters_.assign(count, Letter{index, sign});
  return w;
}

Word& Word::operator*=(const Word& rhs) {
  letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return *this;
}

Word Word::prefix(std::size_t n) const {
  n = std::min(n, letters_.size());
  return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)));
}

bool Word::is_reduced() const {
  for (std::size_t i = 1; i < letters_.size(); ++i)
    if (letters_[i - 1].cancels(letters_[i])) return false;
  return true;
}

int Word::max_index() const {
  int m = 0;
  for (const auto& l : letters_) m = std::max(m, l.index);
  return m;
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  Word out;
  std::size_t pos = 0;
  const std::size_t n = text.size();
  while (true) {
    while (pos < n && is_space(text[pos])) ++pos;
    if (pos == n) break;
    const std::size_t token_start = pos;

    if (text[pos] == '1' && (pos + 1 == n || is_space(text[pos + 1]))) {
      ++pos;
      continue;
    }
    if (text[pos] != 'x' && text[pos] != 'X')
      throw ParseError("expected generator token 'x<k>' or 'X<k>'", pos);
    const int base_sign = text[pos] == 'x' ? 1 : -1;
    ++pos;

    const std::size_t digits_start = pos;
    while (pos < n && is_digit(text[pos])) ++pos;
    if (pos == digits_start) throw ParseError("missing generator index", pos);
    int index = 0;
    auto [iptr, iec] = std::from_chars(text.data() + digits_start, text.data() + pos, index);
    if (iec != std::errc()) throw ParseError("generator index too large", digits_start);
    (void)iptr;
    if (!alphabet.contains(index))
      throw ValidationError("generator index " + std::to_string(index) + " out of range 1.." +
                            std::to_string(alphabet.rank) + " at position " + std::to_string(token_start));

    std::int64_t exponent = 1;
    if (pos < n && text[pos] == '^') {
      ++pos;
      const std::size_t exp_start = pos;
      if (pos < n && (text[pos] == '-' || text[pos] == '+')) ++pos;
      const std::size_t exp_digits = pos;
      while (pos < n && is_digit(text[pos])) ++pos;
      if (pos == exp_digits) throw ParseError("missing exponent after '^'", exp_digits);
      const char* first = text.data() + exp_start + (text[exp_start] == '+' ? 1 : 0);
      auto [eptr, eec] = std::from_chars(first, text.data() + pos, exponent);
      if (eec != std::errc()) throw ParseError("exponent out of range", exp_start);
      (void)eptr;
    }
    if (pos < n && !is_space(text[pos])) throw ParseError("unexpected character", pos);

    out *= Word::generator_power(index, checked_mul(exponent, base_sign));
  }
  return out;
}

std::string format_word(const Word& w) {
  std::ostringstream os;
  const auto& ls = w.letters();
  std::size_t i = 0;
  bool first = true;
  while (i < ls.size()) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    if (!first) os << ' ';
    first = false;
    os << (ls[i].sign > 0 ? 'x' : 'X') << ls[i].index;
    if (j - i > 1) os << '^' << (j - i);
    i = j;
  }
  return os.str();
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const auto& l : w) {
    if (!stack.empty() && stack.back().cancels(l))
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(std::move(stack));
}

Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->inverse());
  return Word(std::move(out));
}

Word power(const Word& w, std::int64_t k) {
  const Word base = free_reduce(k < 0 ? invert(w) : w);
  if (base.empty() || k == 0) return {};
  const std::uint64_t count = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  // base = t c t^-1 with c cyclically reduced, so base^k = t c^k t^-1 reduced.
  const auto [t, core] = cyclic_reduce(base);
  std::vector<Letter> out(t.letters());
  out.reserve(t.size() * 2 + core.size() * count);
  for (std::uint64_t i = 0; i < count; ++i) out.insert(out.end(), core.begin(), core.end());
  const Word tinv = invert(t);
  out.insert(out.end(), tinv.begin(), tinv.end());
  return Word(std::move(out));
}

Word commutator(const Word& a, const Word& b) { return free_reduce(a * b * invert(a) * invert(b)); }

Word conjugate(const Word& w, const Word& c) { return free_reduce(invert(c) * w * c); }

CyclicDecomposition cyclic_reduce(const Word& reduced) {
  const auto& ls = reduced.letters();
  std::size_t lo = 0;
  std::size_t hi = ls.size();
  while (hi - lo >= 2 && ls[lo].cancels(ls[hi - 1])) {
    ++lo;
    --hi;
  }
  CyclicDecomposition d;
  d.conjugator = Word(std::vector<Letter>(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(lo)));
  d.core = Word(std::vector<Letter>(ls.begin() + static_cast<std::ptrdiff_t>(lo),
                                    ls.begin() + static_cast<std::ptrdiff_t>(hi)));
  return d;
}

std::vector<std::int64_t> exponent_sums(const Word& w, int rank) {
  std::vector<std::int64_t> sums(static_cast<std::size_t>(rank), 0);
  for (const auto& l : w) {
    if (l.index < 1 || l.index > rank) throw ValidationError("generator index out of range");
    auto& s = sums[static_cast<std::size_t>(l.index - 1)];
    s = checked_add(s, l.sign);
  }
  return sums;
}

}  // namespace magnus
