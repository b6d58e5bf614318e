#include "odometer/semigroup.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace odometer {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::InvalidDigit: return "InvalidDigit";
    case ErrorKind::InvalidWord: return "InvalidWord";
    case ErrorKind::InvalidVertex: return "InvalidVertex";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorKind::MissingParam: return "MissingParam";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::BadParam: return "BadParam";
    case ErrorKind::NoCarryTarget: return "NoCarryTarget";
    case ErrorKind::AddressCycleAllN: return "AddressCycleAllN";
    case ErrorKind::RankNotOne: return "RankNotOne";
    case ErrorKind::WindowTooLarge: return "WindowTooLarge";
    case ErrorKind::DepthExceedsMargin: return "DepthExceedsMargin";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::PresentationError: return "PresentationError";
  }
  return "Error";
}

namespace {

void check_rank(int n) {
  if (n < 1) throw Error(ErrorKind::BadRank, "rank must be >= 1, got " + std::to_string(n));
}

void check_digit(Digit d, int n) {
  if (d < 1 || d > n) {
    throw Error(ErrorKind::InvalidDigit,
                "digit " + std::to_string(d) + " outside [1," + std::to_string(n) + "]");
  }
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw Error(ErrorKind::Overflow, "w-power exceeds 64 bits");
  }
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw Error(ErrorKind::Overflow, "left-form exponent exceeds 64 bits");
  }
  return a * b;
}

}  // namespace

// ---------------------------------------------------------------------------
// GeneratorWord

GeneratorWord::GeneratorWord(int n, std::vector<Letter> letters)
    : n_(n), letters_(std::move(letters)) {
  check_rank(n_);
  for (const auto& l : letters_) {
    if (!l.is_w()) check_digit(l.digit, n_);
  }
}

GeneratorWord GeneratorWord::concat(const GeneratorWord& other) const {
  if (other.n_ != n_) throw Error(ErrorKind::RankMismatch, "concatenating words of different rank");
  auto letters = letters_;
  letters.insert(letters.end(), other.letters_.begin(), other.letters_.end());
  return GeneratorWord(n_, std::move(letters));
}

GeneratorWord GeneratorWord::parse(std::string_view text, int n) {
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "w") {
      letters.push_back(Letter::w());
      continue;
    }
    if (tok.size() >= 2 && tok[0] == 'v') {
      Digit d = 0;
      bool ok = true;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(tok[i])) || d > 100000) {
          ok = false;
          break;
        }
        d = d * 10 + (tok[i] - '0');
      }
      if (ok) {
        check_digit(d, n);
        letters.push_back(Letter::v(d));
        continue;
      }
    }
    throw Error(ErrorKind::InvalidWord, "unrecognised token '" + tok + "'");
  }
  return GeneratorWord(n, std::move(letters));
}

std::string GeneratorWord::str() const {
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    out += l.is_w() ? std::string("w") : "v" + std::to_string(l.digit);
  }
  return out;
}

// ---------------------------------------------------------------------------
// OdometerElement

OdometerElement::OdometerElement(int n, DigitWord mu, std::uint64_t power)
    : n_(n), mu_(std::move(mu)), power_(power) {
  check_rank(n_);
  for (Digit d : mu_) check_digit(d, n_);
}

std::string digits_str(const DigitWord& mu) {
  std::string out = "[";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(mu[i]);
  }
  return out + "]";
}

std::string OdometerElement::str() const {
  return "v" + digits_str(mu_) + " w^" + std::to_string(power_);
}

std::string OdometerElement::key() const {
  return "v" + digits_str(mu_) + "w^" + std::to_string(power_);
}

OdometerElement OdometerElement::parse_key(std::string_view text, int n) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  auto fail = [&]() -> OdometerElement {
    throw Error(ErrorKind::InvalidVertex, "not a normal-form key: '" + std::string(text) + "'");
  };
  if (s.size() < 6 || s[0] != 'v' || s[1] != '[') return fail();
  auto close = s.find(']');
  if (close == std::string::npos) return fail();
  DigitWord mu;
  std::string body = s.substr(2, close - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto comma = body.find(',', pos);
    std::string part = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (part.empty() || part.size() > 6) return fail();
    for (char c : part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
    }
    mu.push_back(std::stoi(part));
    if (comma == std::string::npos) break;
    pos = comma + 1;
    if (pos == body.size()) return fail();
  }
  std::string rest = s.substr(close + 1);
  if (rest.size() < 3 || rest[0] != 'w' || rest[1] != '^') return fail();
  std::string num = rest.substr(2);
  if (num.size() > 19) return fail();
  for (char c : num) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
  }
  for (Digit d : mu) {
    if (d < 1 || d > n) return fail();
  }
  return OdometerElement(n, std::move(mu), std::stoull(num));
}

GeneratorWord OdometerElement::to_word() const {
  std::vector<Letter> letters;
  for (Digit d : mu_) letters.push_back(Letter::v(d));
  for (std::uint64_t i = 0; i < power_; ++i) letters.push_back(Letter::w());
  return GeneratorWord(n_, std::move(letters));
}

std::string LeftForm::str() const {
  return "w^" + std::to_string(p) + " v1^" + std::to_string(q);
}

// ---------------------------------------------------------------------------
// Odometer arithmetic

AddOneResult add_one(const DigitWord& mu, int n) {
  check_rank(n);
  for (Digit d : mu) check_digit(d, n);
  AddOneResult out{mu, 1};
  for (auto& d : out.digits) {
    if (d != n) {
      ++d;
      out.carry = 0;
      break;
    }
    d = 1;
  }
  return out;
}

AddResult add_count(const DigitWord& mu, std::uint64_t count, int n) {
  check_rank(n);
  AddResult out{mu, count};
  const auto base = static_cast<std::uint64_t>(n);
  for (auto& d : out.digits) {
    check_digit(d, n);
    if (out.carry == 0) continue;
    // digit value (d - 1) plus incoming carry, in base n.
    std::uint64_t value = static_cast<std::uint64_t>(d - 1) + out.carry;
    if (value < out.carry) throw Error(ErrorKind::Overflow, "carry overflow");
    d = static_cast<Digit>(value % base) + 1;
    out.carry = value / base;
  }
  return out;
}

bool subtract_one(DigitWord& mu, int n) {
  for (auto& d : mu) {
    if (d != 1) {
      --d;
      return true;
    }
    d = n;
  }
  // mu was all ones (or empty); restore.
  for (auto& d : mu) d = 1;
  return false;
}

OdometerElement reduce(const GeneratorWord& word) {
  const int n = word.rank();
  std::vector<Letter> s = word.letters();
  for (;;) {
    std::size_t i = 0;
    while (i + 1 < s.size() && !(s[i].is_w() && !s[i + 1].is_w())) ++i;
    if (i + 1 >= s.size()) break;
    const Digit k = s[i + 1].digit;
    if (k < n) {
      // w v_k -> v_{k+1}
      s[i] = Letter::v(k + 1);
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    } else {
      // w v_n -> v_1 w
      s[i] = Letter::v(1);
      s[i + 1] = Letter::w();
    }
  }
  DigitWord mu;
  std::uint64_t power = 0;
  for (const auto& l : s) {
    if (l.is_w()) {
      ++power;
    } else {
      mu.push_back(l.digit);
    }
  }
  return OdometerElement(n, std::move(mu), power);
}

OdometerElement multiply(const OdometerElement& x, const OdometerElement& y) {
  if (x.rank() != y.rank()) {
    throw Error(ErrorKind::RankMismatch, "multiplying elements of O_" + std::to_string(x.rank()) +
                                             " and O_" + std::to_string(y.rank()));
  }
  // v_mu w^N v_nu w^M = v_mu v_nu' w^(carry + M), where w^N v_nu = v_nu' w^carry.
  auto moved = add_count(y.mu(), x.power(), x.rank());
  DigitWord mu = x.mu();
  mu.insert(mu.end(), moved.digits.begin(), moved.digits.end());
  return OdometerElement(x.rank(), std::move(mu), checked_add(moved.carry, y.power()));
}

LeftForm to_left_form(const OdometerElement& x) {
  // v_k w^P = w^(k-1) v_1 w^P = w^(k-1 + nP) v_1, applied right to left.
  std::uint64_t p = x.power();
  const auto n = static_cast<std::uint64_t>(x.rank());
  for (auto it = x.mu().rbegin(); it != x.mu().rend(); ++it) {
    p = checked_add(checked_mul(p, n), static_cast<std::uint64_t>(*it - 1));
  }
  return {p, x.mu().size()};
}

OdometerElement from_left_form(const LeftForm& form, int n) {
  auto moved = add_count(DigitWord(form.q, 1), form.p, n);
  return OdometerElement(n, std::move(moved.digits), moved.carry);
}

}  // namespace odometer
