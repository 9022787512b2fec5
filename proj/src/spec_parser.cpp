#include "walg/spec_parser.hpp"

#include <array>
#include <cctype>
#include <map>

#include "walg/arith.hpp"
#include "walg/error.hpp"

namespace walg {

namespace {

struct FamilySyntax {
  const char* token;
  Family family;
  const char* weight_key;  // "q" or "k"
  const char* mode_key;    // "m" or "r"
};

// Longer tokens first so that "Wtt" is not read as "Wt".
constexpr std::array<FamilySyntax, 9> kSyntax{{
    {"Wtt", Family::wtilde2, "q", "m"},
    {"Wt", Family::wtilde, "q", "m"},
    {"Vhat", Family::vhat, "q", "m"},
    {"Ghat", Family::ghat, "q", "r"},
    {"G+", Family::gplus, "q", "r"},
    {"G-", Family::gminus, "q", "r"},
    {"H", Family::h, "k", "m"},
    {"w", Family::w, "q", "m"},
    {"v", Family::v, "q", "m"},
}};

const FamilySyntax& syntax_for(Family f) {
  for (const auto& s : kSyntax) {
    if (s.family == f) return s;
  }
  throw DomainError("family has no text form");
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, 1, static_cast<int>(pos_) + 1);
  }
  [[noreturn]] void fail_at(const std::string& what, std::size_t pos) const {
    throw ParseError(what, 1, static_cast<int>(pos) + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }
  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a field name");
    return std::string(text_.substr(start, pos_ - start));
  }
  HalfInt value() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
      ++pos_;
    }
    const std::string lit(text_.substr(start, pos_ - start));
    if (lit.empty() || lit == "-" || lit == "+") fail_at("expected a number", start);
    Rational r;
    try {
      r = Rational::parse(lit);
    } catch (const ParseError&) {
      fail_at("malformed number '" + lit + "'", start);
    } catch (const DomainError&) {
      fail_at("malformed number '" + lit + "'", start);
    }
    if (!(r * Rational(2)).is_integer()) {
      fail_at("'" + lit + "' is not an integer or half-integer", start);
    }
    return HalfInt::from_rational(r);
  }
  std::size_t pos() const noexcept { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GeneratorMode GeneratorSpec::as_mode() const {
  if (!mode) throw DomainError("generator spec has no mode");
  return GeneratorMode{label, *mode};
}

std::string family_token(Family f) { return syntax_for(f).token; }

GeneratorSpec parse_generator(std::string_view text) {
  Cursor cur(text);
  const FamilySyntax* syn = nullptr;
  for (const auto& s : kSyntax) {
    if (cur.consume(s.token)) {
      syn = &s;
      break;
    }
  }
  if (!syn) cur.fail("unknown generator family");
  cur.expect('[');
  std::map<std::string, HalfInt> fields;
  bool first = true;
  while (true) {
    cur.skip_space();
    if (cur.consume("]")) {
      if (first) cur.fail_at("empty field list", cur.pos() - 1);
      break;
    }
    if (!first) cur.expect(',');
    first = false;
    cur.skip_space();
    const std::size_t key_pos = cur.pos();
    const std::string key = cur.identifier();
    if (key != syn->weight_key && key != "s" && key != syn->mode_key) {
      cur.fail_at("unknown field '" + key + "' for " + syn->token, key_pos);
    }
    if (fields.count(key)) cur.fail_at("duplicate field '" + key + "'", key_pos);
    cur.expect('=');
    fields[key] = cur.value();
  }
  if (!cur.done()) cur.fail("unexpected trailing input");

  auto weight = fields.find(syn->weight_key);
  if (weight == fields.end()) {
    throw ParseError(std::string("missing field '") + syn->weight_key + "'", 1,
                     static_cast<int>(text.size()));
  }
  GeneratorSpec spec;
  spec.label.family = syn->family;
  spec.label.q = weight->second;
  if (auto s = fields.find("s"); s != fields.end()) spec.label.s = s->second;
  if (syn->family == Family::h && !spec.label.s) {
    throw ParseError("missing field 's'", 1, static_cast<int>(text.size()));
  }
  if (auto m = fields.find(syn->mode_key); m != fields.end()) spec.mode = m->second;
  return spec;
}

std::string print_generator(const GeneratorSpec& spec) {
  const FamilySyntax& syn = syntax_for(spec.label.family);
  std::string out = std::string(syn.token) + "[" + syn.weight_key + "=" + spec.label.q.to_string();
  if (spec.label.s) out += ",s=" + spec.label.s->to_string();
  if (spec.mode) out += std::string(",") + syn.mode_key + "=" + spec.mode->to_string();
  return out + "]";
}

}  // namespace walg
