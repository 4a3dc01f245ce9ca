#include <cctype>
#include <charconv>
#include <string>

#include "lcfn/lcfn.hpp"

namespace lcfn {

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

LcfnD parse_literal(std::string_view text, GeneratorPtr generator) {
  std::size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  const auto fail = [&](const std::string& what) -> LcfnD {
    throw Error(ErrorCode::SyntaxError, "bad literal '" + std::string(text) + "': " + what + " at offset " +
                                            std::to_string(pos),
                pos);
  };

  double r = 0.0;
  double q = 0.0;
  bool any_term = false;
  skip_ws();
  if (pos == text.size()) return fail("empty literal");

  while (pos < text.size()) {
    double sign = 1.0;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1.0 : 1.0;
      ++pos;
      skip_ws();
    } else if (any_term) {
      return fail("expected '+' or '-'");
    }

    double magnitude = 1.0;
    bool has_number = false;
    if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
      const auto res = std::from_chars(text.data() + pos, text.data() + text.size(), magnitude);
      if (res.ec != std::errc()) return fail("malformed number");
      pos = static_cast<std::size_t>(res.ptr - text.data());
      has_number = true;
      skip_ws();
    }

    bool is_noise = false;
    if (pos < text.size() && text[pos] == '*') {
      if (!has_number) return fail("'*' without a coefficient");
      ++pos;
      skip_ws();
      if (pos >= text.size() || text[pos] != 'A') return fail("expected 'A' after '*'");
    }
    if (pos < text.size() && text[pos] == 'A') {
      is_noise = true;
      ++pos;
      skip_ws();
    }
    if (!has_number && !is_noise) return fail("expected a number or 'A'");

    (is_noise ? q : r) += sign * magnitude;
    any_term = true;
  }
  return LcfnD(r, q, std::move(generator));
}

std::string format_literal(const LcfnD& b) {
  if (b.q() == 0.0) return shortest(b.r());
  if (b.r() == 0.0) return shortest(b.q()) + "A";
  std::string out = shortest(b.r());
  if (b.q() >= 0.0) out += "+";
  return out + shortest(b.q()) + "A";
}

}  // namespace lcfn
