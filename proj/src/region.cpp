#include "odometer/region.hpp"

#include <cctype>
#include <charconv>

#include "odometer/error.hpp"
#include "odometer/semigroup.hpp"

namespace odometer {

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

std::optional<long long> to_ll(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// "(r,t)" -> (r, t)
std::optional<std::pair<long long, long long>> parse_pair(const std::string& key) {
  if (key.size() < 5 || key.front() != '(' || key.back() != ')') return std::nullopt;
  auto comma = key.find(',');
  if (comma == std::string::npos) return std::nullopt;
  auto r = to_ll(std::string_view(key).substr(1, comma - 1));
  auto t = to_ll(std::string_view(key).substr(comma + 1, key.size() - comma - 2));
  if (!r || !t) return std::nullopt;
  return std::make_pair(*r, *t);
}

}  // namespace

Region Region::all() { return Region{}; }

Region Region::finite(std::set<std::string> keys) {
  Region r;
  r.kind_ = Kind::Finite;
  r.keys_ = std::move(keys);
  return r;
}

Region Region::parse(std::string_view spec_text, int n) {
  const std::string spec = strip(spec_text);
  if (spec == "all") return all();
  if (!spec.empty() && spec.front() == '{') {
    if (spec.back() != '}') throw Error(ErrorKind::SyntaxError, "unterminated key set in region");
    std::set<std::string> keys;
    // Keys may contain commas inside parentheses or brackets.
    std::string cur;
    int nest = 0;
    for (std::size_t i = 1; i + 1 < spec.size(); ++i) {
      char c = spec[i];
      if (c == '(' || c == '[') ++nest;
      if (c == ')' || c == ']') --nest;
      if (c == ',' && nest == 0) {
        if (!cur.empty()) keys.insert(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) keys.insert(cur);
    return finite(std::move(keys));
  }

  Region r;
  r.kind_ = Kind::Predicate;
  r.n_ = n;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    auto amp = spec.find('&', pos);
    std::string atom = spec.substr(pos, amp == std::string::npos ? std::string::npos : amp - pos);
    std::size_t i = 0;
    while (i < atom.size() && std::isalpha(static_cast<unsigned char>(atom[i]))) ++i;
    std::string field = atom.substr(0, i);
    static const std::vector<std::pair<std::string, Op>> ops = {
        {"==", Op::Eq}, {"!=", Op::Ne}, {"<=", Op::Le}, {">=", Op::Ge}, {"<", Op::Lt}, {">", Op::Gt}};
    std::optional<Op> op;
    std::size_t op_len = 0;
    for (const auto& [tok, o] : ops) {
      if (atom.compare(i, tok.size(), tok) == 0) {
        op = o;
        op_len = tok.size();
        break;
      }
    }
    static const std::set<std::string> fields = {"r", "t", "len", "N", "p", "q", "m", "wlen"};
    auto value = op ? to_ll(std::string_view(atom).substr(i + op_len)) : std::nullopt;
    if (!fields.count(field) || !op || !value) {
      throw Error(ErrorKind::SyntaxError, "bad region atom '" + atom + "'");
    }
    r.atoms_.push_back({field, *op, *value});
    if (amp == std::string::npos) break;
    pos = amp + 1;
  }
  return r;
}

std::optional<long long> Region::field_value(const std::string& key, const std::string& field) const {
  if (field == "r" || field == "t") {
    auto pr = parse_pair(key);
    if (!pr) return std::nullopt;
    return field == "r" ? pr->first : pr->second;
  }
  if (field == "len" || field == "N" || field == "p" || field == "q") {
    if (key.rfind("v[", 0) != 0) return std::nullopt;
    try {
      auto x = OdometerElement::parse_key(key, n_);
      if (field == "len") return static_cast<long long>(x.mu().size());
      if (field == "N") return static_cast<long long>(x.power());
      auto lf = to_left_form(x);
      return static_cast<long long>(field == "p" ? lf.p : lf.q);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  if (field == "m") {
    if (key.size() < 4 || key[0] != 'g') return std::nullopt;
    auto colon = key.find(':');
    if (colon == std::string::npos) return std::nullopt;
    return to_ll(std::string_view(key).substr(1, colon - 1));
  }
  if (field == "wlen") {
    if (key == "e") return 0;
    for (char c : key) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    }
    return static_cast<long long>(key.size());
  }
  return std::nullopt;
}

bool Region::contains(const std::string& key) const {
  switch (kind_) {
    case Kind::All: return true;
    case Kind::Finite: return keys_.count(key) > 0;
    case Kind::Predicate: break;
  }
  for (const auto& a : atoms_) {
    auto v = field_value(key, a.field);
    if (!v) return false;
    bool ok = false;
    switch (a.op) {
      case Op::Eq: ok = *v == a.value; break;
      case Op::Ne: ok = *v != a.value; break;
      case Op::Lt: ok = *v < a.value; break;
      case Op::Le: ok = *v <= a.value; break;
      case Op::Gt: ok = *v > a.value; break;
      case Op::Ge: ok = *v >= a.value; break;
    }
    if (!ok) return false;
  }
  return true;
}

std::string Region::str() const {
  if (kind_ == Kind::All) return "all";
  if (kind_ == Kind::Finite) {
    std::string out = "{";
    bool first = true;
    for (const auto& k : keys_) {
      if (!first) out += ',';
      out += k;
      first = false;
    }
    return out + "}";
  }
  std::string out;
  for (const auto& a : atoms_) {
    if (!out.empty()) out += '&';
    out += a.field;
    switch (a.op) {
      case Op::Eq: out += "=="; break;
      case Op::Ne: out += "!="; break;
      case Op::Lt: out += "<"; break;
      case Op::Le: out += "<="; break;
      case Op::Gt: out += ">"; break;
      case Op::Ge: out += ">="; break;
    }
    out += std::to_string(a.value);
  }
  return out;
}

}  // namespace odometer
