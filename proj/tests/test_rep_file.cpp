#include <doctest.h>

#include <set>

#include "families.hpp"
#include "odometer/classifier.hpp"
#include "odometer/dot.hpp"
#include "odometer/error.hpp"
#include "odometer/rep_file.hpp"

using namespace odometer;

namespace {

Error parse_error(const std::string& text) {
  try {
    parse_rep_file(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorKind::SyntaxError, "");
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("a minimal file") {
  auto rep = parse_rep_file("odometer 2\nvertex a\nvertex b\narrow w a b\n");
  CHECK(rep->rank() == 2);
  CHECK(rep->w_of("a") == Step::arrow("b"));
  CHECK(rep->w_back("b") == Step::arrow("a"));
  CHECK(rep->w_back("a").is_zero());
  CHECK(rep->w_of("b").is_unexplored());
  CHECK(rep->v_of(1, "a").is_unexplored());
  CHECK(rep->contains("a"));
  CHECK_FALSE(rep->contains("c"));
  CHECK(rep->seeds() == std::vector<VertexKey>{"a", "b"});
  REQUIRE(rep->finite_vertices());
  CHECK(rep->finite_vertices()->size() == 2);
}

TEST_CASE("phases, comments, boundary and hints") {
  auto rep = parse_rep_file(
      "# a unitary pair on one vertex\n"
      "odometer 1\n"
      "\n"
      "vertex x   # the only vertex\n"
      "vertex y\n"
      "boundary y\n"
      "arrow w x x 1/2\n"
      "arrow v1 x x 1/3\n"
      "hint VBackwardTotal {x}\n");
  CHECK(rep->w_of("x") == Step::arrow("x", Phase(1, 2)));
  CHECK(rep->v_back(1, "x") == Step::arrow("x", Phase(2, 3)));
  CHECK(rep->w_back("y").is_unexplored());
  REQUIRE(rep->hints().size() == 1);
  CHECK(rep->hints()[0].kind == HintKind::VBackwardTotal);
  CHECK(verify_relations(*rep, {"x"}, 3).pass);
  CHECK(classify(rep, "x", 8).resolved == ComponentId::UU);
}

TEST_CASE("builtin lines delegate") {
  auto rep = parse_rep_file("builtin weak_shift 2\n");
  CHECK(rep->v_back(1, "(0,0)") == Step::arrow("(-1,0)"));
  auto in = parse_rep_file("# chain\nbuiltin inductive 2 stream=periodic(12)\n");
  CHECK(in->seeds() == std::vector<VertexKey>{"g0:e"});
  CHECK(parse_rep_file("odometer 2\nbuiltin weak_shift 2\n")->rank() == 2);
  CHECK(parse_error("odometer 2\nvertex a\nbuiltin weak_shift 2\n").kind() == ErrorKind::SyntaxError);
  CHECK(parse_error("builtin weak_shift 2\nvertex a\n").kind() == ErrorKind::SyntaxError);
  CHECK(parse_error("odometer 3\nbuiltin weak_shift 2\n").kind() == ErrorKind::PresentationError);
  auto m = parse_error("builtin inductive 2\n");
  CHECK(m.kind() == ErrorKind::MissingParam);
  CHECK(std::string(m.what()).find("line 1") != std::string::npos);
}

TEST_CASE("presentation errors name the line") {
  struct Case {
    std::string text;
    ErrorKind kind;
    std::string line;
    std::string fragment;
  };
  const std::vector<Case> cases{
      {"odometer 2\nvertex a\nvertex b\nvertex c\narrow v1 a c\narrow v2 b c\n", ErrorKind::PresentationError, "line 6",
       "overlapping ranges at 'c'"},
      {"odometer 2\nvertex a\narrow w a zz\n", ErrorKind::PresentationError, "line 3", "undeclared vertex 'zz'"},
      {"odometer 2\nvertex a\nvertex b\narrow w a b\narrow w a a\n", ErrorKind::PresentationError, "line 5", "duplicate"},
      {"odometer 2\nvertex a\nvertex b\narrow w a b\narrow w b b\n", ErrorKind::PresentationError, "line 5", "into 'b'"},
      {"odometer 2\nvertex a\narrow v3 a a\n", ErrorKind::PresentationError, "line 3", "out of range"},
      {"odometer 2\nvertex a\nvertex a\n", ErrorKind::PresentationError, "line 3", "duplicate vertex"},
      {"odometer 2\nvertex a\nfrobnicate a\n", ErrorKind::SyntaxError, "line 3", "unknown directive"},
      {"vertex a\n", ErrorKind::SyntaxError, "line 1", "header"},
      {"odometer 2\nvertex a\narrow u a a\n", ErrorKind::SyntaxError, "line 3", "unknown generator"},
      {"odometer 2\nvertex a\narrow w a a 1/0\n", ErrorKind::SyntaxError, "line 3", ""},
      {"odometer x\n", ErrorKind::SyntaxError, "line 1", "integer"},
      {"odometer 2\nvertex a\nhint Sideways {a}\n", ErrorKind::SyntaxError, "line 3", ""},
      {"odometer 2\nboundary q\n", ErrorKind::PresentationError, "line 2", "undeclared vertex 'q'"},
  };
  for (const auto& c : cases) {
    auto e = parse_error(c.text);
    std::string what = e.what();
    CHECK_MESSAGE(e.kind() == c.kind, c.text);
    CHECK_MESSAGE(what.find(c.line) != std::string::npos, what);
    CHECK_MESSAGE(what.find(c.fragment) != std::string::npos, what);
  }
  CHECK(parse_error("").kind() == ErrorKind::SyntaxError);
}

TEST_CASE("emitted patches round trip") {
  for (const auto& f : families::all()) {
    auto rep = f.make();
    const int radius = 3;
    auto text = emit_patch(*rep, rep->seeds(), radius);
    auto back = parse_rep_file(text);
    CHECK(back->rank() == rep->rank());
    auto ex = explore(*rep, rep->seeds(), radius);
    CHECK(back->finite_vertices()->size() == ex.order.size());
    for (const auto& v : ex.order) {
      REQUIRE(back->contains(v));
      for (int g = 0; g <= f.n; ++g) {
        auto s = families::forward(*rep, g, v);
        auto t = families::forward(*back, g, v);
        if (ex.distance.at(v) < radius) {
          CHECK_MESSAGE(t == s, f.name << " " << v);
        } else if (t.is_arrow()) {
          CHECK(t == s);
        }
        auto b = families::backward(*back, g, v);
        if (!b.is_unexplored()) CHECK(b == families::backward(*rep, g, v));
      }
    }
    // The patch is a faithful finite piece: its relations hold inside.
    CHECK_MESSAGE(verify_relations(*back, rep->seeds(), radius).pass, f.name);
    // Emitting again gives the same file apart from the description line.
    auto again = emit_patch(*back, rep->seeds(), radius);
    CHECK(again.substr(again.find('\n')) == text.substr(text.find('\n')));
  }
}

TEST_CASE("emitted phases survive") {
  auto fu = make_builtin("left_regular_fn_unitary", 2, {{"lambda", "1/3"}});
  auto back = parse_rep_file(emit_patch(*fu, {"e"}, 2));
  CHECK(back->w_of("e") == Step::arrow("e", Phase(1, 3)));
  CHECK(back->w_of("2") == Step::arrow("1", Phase(1, 3)));
}

TEST_CASE("DOT rendering") {
  auto lr = make_builtin("left_regular_on", 2);
  auto dot = render_dot(*lr, lr->seeds(), 2);
  CHECK(dot.rfind("digraph", 0) == 0);
  auto ex = explore(*lr, lr->seeds(), 2);
  std::size_t w = 0, v1 = 0, v2 = 0;
  std::set<VertexKey> in(ex.order.begin(), ex.order.end());
  for (const auto& v : ex.order) {
    if (in.count(lr->w_of(v).target)) ++w;
    if (in.count(lr->v_of(1, v).target)) ++v1;
    if (in.count(lr->v_of(2, v).target)) ++v2;
  }
  CHECK(count(dot, "style=dashed") == w);
  CHECK(count(dot, "label=\"1\"") == v1);
  CHECK(count(dot, "label=\"2\"") == v2);
  CHECK(count(dot, "phase=") == 0);

  auto fu = make_builtin("left_regular_fn_unitary", 2, {{"lambda", "1/3"}});
  auto fd = render_dot(*fu, {"e"}, 1);
  CHECK(count(fd, "phase=\"1/3\"") >= 1);
  CHECK(count(fd, "\"e\"") >= 1);
}
