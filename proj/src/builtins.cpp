#include "odometer/builtins.hpp"

#include <charconv>
#include <limits>

#include "odometer/error.hpp"
#include "odometer/semigroup.hpp"

namespace odometer {

namespace {

void require_rank(const std::string& name, int n, int lo, int hi) {
  if (n < lo || n > hi) {
    throw Error(ErrorKind::BadRank, name + " needs n in [" + std::to_string(lo) + "," + std::to_string(hi) +
                                        "], got " + std::to_string(n));
  }
}

const std::string& require_param(const BuiltinParams& params, const std::string& name, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorKind::MissingParam, name + " needs parameter '" + key + "'");
  return it->second;
}

// Word keys over the digits 1..n (n <= 9); "e" is the empty word.
bool parse_word(const VertexKey& key, int n, std::string& word) {
  if (key == "e") {
    word.clear();
    return true;
  }
  if (key.empty()) return false;
  for (char c : key) {
    if (c < '1' || c > '0' + n) return false;
  }
  word = key;
  return true;
}

VertexKey word_key(const std::string& word) { return word.empty() ? "e" : word; }

char digit_char(int k) { return static_cast<char>('0' + k); }

// ---------------------------------------------------------------------------

class LeftRegular : public AtomicRep {
 public:
  explicit LeftRegular(int n) : AtomicRep(n) {}

  Step w_of(const VertexKey& v) const override {
    return Step::arrow(multiply(OdometerElement::w(rank()), parse(v)).key());
  }
  Step v_of(int k, const VertexKey& v) const override {
    check_digit(k);
    return Step::arrow(multiply(OdometerElement::v(rank(), k), parse(v)).key());
  }
  Step w_back(const VertexKey& v) const override {
    auto x = parse(v);
    DigitWord mu = x.mu();
    if (subtract_one(mu, rank())) return Step::arrow(OdometerElement(rank(), mu, x.power()).key());
    // v_1^m w^N = w v_n^m w^(N-1)
    if (x.power() == 0) return Step::zero();
    return Step::arrow(OdometerElement(rank(), DigitWord(mu.size(), rank()), x.power() - 1).key());
  }
  Step v_back(int k, const VertexKey& v) const override {
    check_digit(k);
    auto x = parse(v);
    if (x.mu().empty() || x.mu().front() != k) return Step::zero();
    return Step::arrow(OdometerElement(rank(), DigitWord(x.mu().begin() + 1, x.mu().end()), x.power()).key());
  }
  bool contains(const VertexKey& v) const override {
    try {
      OdometerElement::parse_key(v, rank());
      return true;
    } catch (const Error&) {
      return false;
    }
  }
  std::vector<VertexKey> seeds() const override { return {OdometerElement::identity(rank()).key()}; }
  std::string describe() const override { return "left_regular_on n=" + std::to_string(rank()); }

 private:
  OdometerElement parse(const VertexKey& v) const { return OdometerElement::parse_key(v, rank()); }
  void check_digit(int k) const {
    if (k < 1 || k > rank()) throw Error(ErrorKind::InvalidDigit, "digit " + std::to_string(k) + " out of range");
  }
};

// ---------------------------------------------------------------------------

class WordRep : public AtomicRep {
 public:
  using AtomicRep::AtomicRep;

 protected:
  std::string word(const VertexKey& v) const {
    std::string w;
    if (!parse_word(v, rank(), w)) throw Error(ErrorKind::InvalidVertex, "bad word key '" + v + "'");
    return w;
  }
  void check_digit(int k) const {
    if (k < 1 || k > rank()) throw Error(ErrorKind::InvalidDigit, "digit " + std::to_string(k) + " out of range");
  }
};

class FnUnitary : public WordRep {
 public:
  FnUnitary(int n, Phase lambda) : WordRep(n), lambda_(lambda) {}

  Step w_of(const VertexKey& v) const override {
    std::string s = word(v);
    for (char& c : s) {
      if (c != digit_char(rank())) {
        ++c;
        return Step::arrow(word_key(s));
      }
      c = '1';
    }
    return Step::arrow(word_key(s), lambda_);
  }
  Step w_back(const VertexKey& v) const override {
    std::string s = word(v);
    for (char& c : s) {
      if (c != '1') {
        --c;
        return Step::arrow(word_key(s));
      }
      c = digit_char(rank());
    }
    return Step::arrow(word_key(s), lambda_.conj());
  }
  Step v_of(int k, const VertexKey& v) const override {
    check_digit(k);
    return Step::arrow(digit_char(k) + word(v));
  }
  Step v_back(int k, const VertexKey& v) const override {
    check_digit(k);
    std::string s = word(v);
    if (s.empty() || s.front() != digit_char(k)) return Step::zero();
    return Step::arrow(word_key(s.substr(1)));
  }
  bool contains(const VertexKey& v) const override {
    std::string s;
    return parse_word(v, rank(), s);
  }
  std::vector<VertexKey> seeds() const override { return {"e"}; }
  std::string describe() const override {
    return "left_regular_fn_unitary n=" + std::to_string(rank()) + " lambda=" + lambda_.str();
  }

 private:
  Phase lambda_;
};

// V-structure of the binary (n-ary) tree with a V_1 loop at the root; W is
// induced from it.
class SuTree : public WordRep {
 public:
  using WordRep::WordRep;

  Step v_of(int k, const VertexKey& v) const override {
    check_digit(k);
    std::string s = word(v);
    if (s.empty() && k == 1) return Step::arrow("e");
    return Step::arrow(digit_char(k) + s);
  }
  Step v_back(int k, const VertexKey& v) const override {
    check_digit(k);
    std::string s = word(v);
    if (s.empty()) return k == 1 ? Step::arrow("e") : Step::zero();
    if (s.front() != digit_char(k)) return Step::zero();
    return Step::arrow(word_key(s.substr(1)));
  }
  Step w_of(const VertexKey& v) const override { return induce_w(*this, v, nullptr); }
  Step w_back(const VertexKey& v) const override { return induce_w_back(*this, v, nullptr); }
  bool contains(const VertexKey& v) const override {
    std::string s;
    return parse_word(v, rank(), s) && (s.empty() || s.back() != '1');
  }
  std::vector<VertexKey> seeds() const override { return {"e"}; }
  std::string describe() const override { return "su_tree n=" + std::to_string(rank()); }
};

// ---------------------------------------------------------------------------

class WeakShift : public AtomicRep {
 public:
  explicit WeakShift(int n, bool slocinski) : AtomicRep(n), slocinski_(slocinski) {
    add_hint({HintKind::VBackwardTotal, Region::parse("t>=0", n), "vback-upper"});
    add_hint({HintKind::WBackwardTotal, Region::parse("r>=0", n), "wback-right"});
  }

  Step w_of(const VertexKey& v) const override {
    auto [r, t] = coords(v);
    return Step::arrow(key(r, checked_add(t, 1)));
  }
  Step v_of(int k, const VertexKey& v) const override {
    check_digit(k);
    auto [r, t] = coords(v);
    if (t > limit() / rank() || t < -limit() / rank()) throw Error(ErrorKind::Overflow, "coordinate overflow");
    return Step::arrow(key(checked_add(r, 1), t * rank() + k - 1));
  }
  Step w_back(const VertexKey& v) const override {
    auto [r, t] = coords(v);
    if (!valid(r, t - 1)) return Step::zero();
    return Step::arrow(key(r, t - 1));
  }
  Step v_back(int k, const VertexKey& v) const override {
    check_digit(k);
    auto [r, t] = coords(v);
    long long rem = t % rank();
    if (rem < 0) rem += rank();
    if (rem != k - 1) return Step::zero();
    long long t0 = (t - rem) / rank();
    if (!valid(r - 1, t0)) return Step::zero();
    return Step::arrow(key(r - 1, t0));
  }
  bool contains(const VertexKey& v) const override {
    auto c = parse(v);
    return c && valid(c->first, c->second);
  }
  std::vector<VertexKey> seeds() const override { return {"(0,0)"}; }
  std::string describe() const override {
    return slocinski_ ? std::string("slocinski") : "weak_shift n=" + std::to_string(rank());
  }

 private:
  static long long limit() { return std::numeric_limits<long long>::max() / 4; }
  static long long checked_add(long long a, long long b) {
    if (a > limit() || a < -limit()) throw Error(ErrorKind::Overflow, "coordinate overflow");
    return a + b;
  }
  static bool valid(long long r, long long t) { return r >= 0 || t >= 0; }
  static VertexKey key(long long r, long long t) {
    return "(" + std::to_string(r) + "," + std::to_string(t) + ")";
  }
  static std::optional<std::pair<long long, long long>> parse(const VertexKey& v) {
    if (v.size() < 5 || v.front() != '(' || v.back() != ')') return std::nullopt;
    auto comma = v.find(',');
    if (comma == std::string::npos) return std::nullopt;
    long long r = 0, t = 0;
    const char* b = v.data();
    auto [p1, e1] = std::from_chars(b + 1, b + comma, r);
    auto [p2, e2] = std::from_chars(b + comma + 1, b + v.size() - 1, t);
    if (e1 != std::errc() || e2 != std::errc() || p1 != b + comma || p2 != b + v.size() - 1) return std::nullopt;
    return std::make_pair(r, t);
  }
  std::pair<long long, long long> coords(const VertexKey& v) const {
    auto c = parse(v);
    if (!c || !valid(c->first, c->second)) throw Error(ErrorKind::InvalidVertex, "bad vertex '" + v + "'");
    return *c;
  }
  void check_digit(int k) const {
    if (k < 1 || k > rank()) throw Error(ErrorKind::InvalidDigit, "digit " + std::to_string(k) + " out of range");
  }

  bool slocinski_;
};

// ---------------------------------------------------------------------------

struct Stream {
  bool thue_morse = true;
  std::string word;  // periodic digits

  static Stream parse(const std::string& text, int n) {
    Stream s;
    if (text == "thue_morse") return s;
    const std::string prefix = "periodic(";
    if (text.rfind(prefix, 0) != 0 || text.back() != ')' || text.size() <= prefix.size() + 1) {
      throw Error(ErrorKind::BadParam, "unknown stream '" + text + "'");
    }
    s.thue_morse = false;
    s.word = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    bool all_n = true;
    for (char c : s.word) {
      if (c < '1' || c > '0' + n) throw Error(ErrorKind::BadParam, "stream digit out of range in '" + text + "'");
      if (c != '0' + n) all_n = false;
    }
    // n^infinity has no carry target and no wandering vector to absorb it.
    if (all_n) throw Error(ErrorKind::BadParam, "stream '" + text + "' consists of the top digit only");
    return s;
  }

  int digit(std::uint64_t m, int n) const {
    if (!thue_morse) return word[(m - 1) % word.size()] - '0';
    std::uint64_t x = m - 1;
    std::uint64_t sum = 0;
    while (x > 0) {
      sum += x % static_cast<std::uint64_t>(n);
      x /= static_cast<std::uint64_t>(n);
    }
    return static_cast<int>(sum % static_cast<std::uint64_t>(n)) + 1;
  }

  bool has(std::string_view digits) const {
    if (thue_morse) return true;
    return word.find_first_of(digits) != std::string::npos;
  }

  std::string str() const { return thue_morse ? "thue_morse" : "periodic(" + word + ")"; }
};

// Chain g_0 <- g_1 <- g_2 ... with V_{k_m} g_m = g_{m-1}, plus the free
// forest above it.  Key "g<m>:<word>" is V_word g_m with m minimal.
class Inductive : public WordRep {
 public:
  Inductive(int n, Stream stream) : WordRep(n), stream_(std::move(stream)) {
    add_hint({HintKind::VBackwardTotal, Region::all(), "vback-all"});
    std::string not_top;
    for (int k = 2; k <= n; ++k) not_one_ += digit_char(k);
    for (int k = 1; k < n; ++k) not_top += digit_char(k);
    if (stream_.has(not_one_) && stream_.has(not_top)) {
      add_hint({HintKind::WvBackwardTotal, Region::all(), "wvback-all"});
      add_hint({HintKind::WBackwardTotal, Region::all(), "wback-all"});
    }
  }

  Step v_of(int k, const VertexKey& v) const override {
    check_digit(k);
    auto [s, m] = split(v);
    return Step::arrow(canonical(digit_char(k) + s, m));
  }
  Step v_back(int k, const VertexKey& v) const override {
    check_digit(k);
    auto [s, m] = split(v);
    if (!s.empty()) {
      if (s.front() != digit_char(k)) return Step::zero();
      return Step::arrow(key(s.substr(1), m));
    }
    if (m == std::numeric_limits<std::uint64_t>::max()) throw Error(ErrorKind::Overflow, "chain index overflow");
    if (stream_.digit(m + 1, rank()) != k) return Step::zero();
    return Step::arrow(key("", m + 1));
  }
  Step w_of(const VertexKey& v) const override { return induce_w(*this, v, nullptr); }
  Step w_back(const VertexKey& v) const override {
    // With a stream of 1s only, subtracting one from s 1 1 1 ... borrows
    // forever unless s has a digit above 1.
    if (!stream_.has(not_one_)) {
      if (split(v).first.find_first_not_of('1') == std::string::npos) return Step::zero();
    }
    return induce_w_back(*this, v, nullptr);
  }
  bool contains(const VertexKey& v) const override {
    try {
      auto [s, m] = split(v);
      return key(s, m) == v;
    } catch (const Error&) {
      return false;
    }
  }
  std::vector<VertexKey> seeds() const override { return {"g0:e"}; }
  std::string describe() const override {
    return "inductive n=" + std::to_string(rank()) + " stream=" + stream_.str();
  }

 private:
  static VertexKey key(const std::string& s, std::uint64_t m) {
    return "g" + std::to_string(m) + ":" + word_key(s);
  }

  VertexKey canonical(std::string s, std::uint64_t m) const {
    while (m > 0 && !s.empty() && s.back() - '0' == stream_.digit(m, rank())) {
      s.pop_back();
      --m;
    }
    return key(s, m);
  }

  std::pair<std::string, std::uint64_t> split(const VertexKey& v) const {
    auto colon = v.find(':');
    std::uint64_t m = 0;
    if (v.size() < 4 || v[0] != 'g' || colon == std::string::npos) {
      throw Error(ErrorKind::InvalidVertex, "bad vertex '" + v + "'");
    }
    auto [p, ec] = std::from_chars(v.data() + 1, v.data() + colon, m);
    std::string s;
    if (ec != std::errc() || p != v.data() + colon || !parse_word(v.substr(colon + 1), rank(), s)) {
      throw Error(ErrorKind::InvalidVertex, "bad vertex '" + v + "'");
    }
    return {s, m};
  }

  Stream stream_;
  std::string not_one_;
};

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"left_regular_on", "left_regular_fn_unitary", "su_tree",
                                                 "weak_shift",      "inductive",               "slocinski"};
  return names;
}

int stream_digit(const std::string& stream, int n, std::uint64_t m) {
  if (m == 0) throw Error(ErrorKind::BadParam, "stream digits start at m = 1");
  return Stream::parse(stream, n).digit(m, n);
}

RepPtr make_builtin(const std::string& name, int n, const BuiltinParams& params) {
  if (name == "left_regular_on") {
    require_rank(name, n, 1, 64);
    return std::make_shared<LeftRegular>(n);
  }
  if (name == "left_regular_fn_unitary") {
    require_rank(name, n, 1, 9);
    return std::make_shared<FnUnitary>(n, Phase::parse(require_param(params, name, "lambda")));
  }
  if (name == "su_tree") {
    require_rank(name, n, 2, 9);
    return std::make_shared<SuTree>(n);
  }
  if (name == "weak_shift") {
    require_rank(name, n, 1, 64);
    return std::make_shared<WeakShift>(n, false);
  }
  if (name == "slocinski") {
    require_rank(name, n, 1, 1);
    return std::make_shared<WeakShift>(1, true);
  }
  if (name == "inductive") {
    require_rank(name, n, 2, 9);
    return std::make_shared<Inductive>(n, Stream::parse(require_param(params, name, "stream"), n));
  }
  throw Error(ErrorKind::UnknownBuiltin, "unknown builtin '" + name + "'");
}

}  // namespace odometer
