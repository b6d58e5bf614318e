// odometer: check, classify, and cross-validate atomic representations of O_n.
//
// Exit status: 0 pass / conclusive, 1 usage error, 2 violations or
// disagreements, 3 some result unknown.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "odometer/builtins.hpp"
#include "odometer/classifier.hpp"
#include "odometer/dot.hpp"
#include "odometer/error.hpp"
#include "odometer/oracle.hpp"
#include "odometer/rep_file.hpp"
#include "odometer/report_json.hpp"
#include "odometer/semigroup.hpp"

using namespace odometer;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kViolation = 2;
constexpr int kUnknown = 3;

RepPtr load(const std::string& path) {
  if (path == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return parse_rep_file(buf.str());
  }
  return load_rep_file(path);
}

// Splits on commas outside parentheses and brackets, so "(0,0),(1,2)" and
// "v[2,1]w^0,v[]w^1" split into their keys.
std::vector<std::string> split_keys(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int nest = 0;
  for (char c : text) {
    if (c == '(' || c == '[') ++nest;
    if (c == ')' || c == ']') --nest;
    if (c == ',' && nest == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::SyntaxError, "cannot write '" + path + "'");
  out << text;
}

std::string table(const std::vector<Classification>& rows) {
  std::ostringstream out;
  bool ss = !rows.empty() && rows.front().verdicts.count(ComponentId::SS);
  out << std::left << std::setw(20) << "vertex";
  for (const char* c : {"uu", "us", "su", "ws"}) out << std::setw(9) << c;
  if (ss) out << std::setw(9) << "ss";
  out << "resolved\n";
  for (const auto& r : rows) {
    out << std::setw(20) << r.vertex;
    for (const auto& [id, verdict] : r.verdicts) out << std::setw(9) << to_string(verdict.status);
    out << (r.resolved ? to_string(*r.resolved) : "-") << '\n';
  }
  return out.str();
}

struct Options {
  std::string file;
  int depth = 8;
  std::string vertices;
  std::size_t budget = 64;
  std::string format = "json";
  std::string nica = "auto";
  int radius = 6;
  int proj_depth = 4;
  double tol = 1e-6;
  bool compare = false;
  std::string export_op;
  std::string export_out = "-";
  std::string name;
  int n = 0;
  std::vector<std::string> params;
  std::string emit = "-";
  std::string word;
  std::string dot = "-";
};

int run_check(const Options& o) {
  auto rep = load(o.file);
  auto seeds = rep->seeds();
  auto rel = verify_relations(*rep, seeds, o.depth);
  auto nc = is_nica_covariant(*rep, seeds, o.depth);
  auto hints = validate_hints(*rep, seeds, o.depth);
  json j = {{"representation", rep->describe()},
            {"depth", o.depth},
            {"relations", to_json(rel)},
            {"nica_covariant", to_json(nc)},
            {"hints", to_json(hints)}};
  std::cout << j.dump(2) << '\n';
  return rel.pass && hints.pass ? kOk : kViolation;
}

int run_classify(const Options& o) {
  auto rep = load(o.file);
  auto vertices = o.vertices.empty() ? rep->seeds() : split_keys(o.vertices);
  if (o.format != "json" && o.format != "table") throw CLI::ValidationError("--format", "must be json or table");
  std::optional<bool> nica;
  if (o.nica == "yes") {
    nica = true;
  } else if (o.nica == "no") {
    nica = false;
  } else {
    std::vector<VertexKey> seeds = rep->seeds();
    seeds.insert(seeds.end(), vertices.begin(), vertices.end());
    nica = is_nica_covariant(*rep, seeds, 6).pass;
  }
  Session session(rep, {o.budget, nica});
  std::vector<Classification> rows;
  bool unresolved = false;
  for (const auto& v : vertices) {
    rows.push_back(session.classify(v));
    unresolved = unresolved || !rows.back().resolved;
  }
  if (o.format == "table") {
    std::cout << table(rows);
  } else {
    json out = json::array();
    for (const auto& r : rows) out.push_back(to_json(r));
    std::cout << out.dump(2) << '\n';
  }
  return unresolved ? kUnknown : kOk;
}

int run_oracle(const Options& o) {
  auto rep = load(o.file);
  auto seeds = rep->seeds();
  auto win = build_window(*rep, seeds, o.radius);
  auto numeric = check_relations_numeric(win, 1e-12);
  json j = {{"window", {{"vertices", win.size()}, {"radius", o.radius}}}, {"numeric", to_json(numeric)}};
  int status = numeric.pass ? kOk : kViolation;
  if (o.compare) {
    auto agreement = compare_with_classifier(rep, seeds, o.radius, o.proj_depth, o.tol);
    j["agreement"] = to_json(agreement);
    if (!agreement.disagreements.empty()) status = kViolation;
  }
  if (!o.export_op.empty()) {
    int g = 0;
    if (o.export_op != "W" && o.export_op != "w") {
      if (o.export_op.size() < 2 || (o.export_op[0] != 'V' && o.export_op[0] != 'v')) {
        throw CLI::ValidationError("--export", "expected W or V<k>");
      }
      g = std::stoi(o.export_op.substr(1));
      if (g < 1 || g > rep->rank()) throw CLI::ValidationError("--export", "digit out of range");
    }
    write_text(o.export_out, export_dense(win.dense(g)));
    if (o.export_out == "-") return status;
  }
  std::cout << j.dump(2) << '\n';
  return status;
}

int run_builtin(const Options& o) {
  BuiltinParams params;
  for (const auto& p : o.params) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--param", "expected key=value, got '" + p + "'");
    params[p.substr(0, eq)] = p.substr(eq + 1);
  }
  auto rep = make_builtin(o.name, o.n, params);
  write_text(o.emit, emit_patch(*rep, rep->seeds(), o.radius));
  return kOk;
}

int run_normal_form(const Options& o) {
  auto x = reduce(GeneratorWord::parse(o.word, o.n));
  std::cout << x.str() << '\n' << to_left_form(x).str() << '\n';
  return kOk;
}

int run_render(const Options& o) {
  auto rep = load(o.file);
  write_text(o.dot, render_dot(*rep, rep->seeds(), o.radius));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wold decomposition of atomic representations of the odometer semigroup"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "verify the relations and Nica-covariance of a representation");
  check->add_option("file", o.file, "representation file ('-' for stdin)")->required();
  check->add_option("--depth", o.depth, "exploration depth")->check(CLI::NonNegativeNumber);

  auto* classify = app.add_subcommand("classify", "classify vertices into Wold components");
  classify->add_option("file", o.file, "representation file ('-' for stdin)")->required();
  classify->add_option("--vertices", o.vertices, "comma separated vertex keys (default: the seeds)");
  classify->add_option("--budget", o.budget, "steps per orbit walk")->check(CLI::PositiveNumber);
  classify->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  classify->add_option("--nica", o.nica, "report H_ss: auto, yes or no")->check(CLI::IsMember({"auto", "yes", "no"}));

  auto* oracle = app.add_subcommand("oracle", "numeric relation check and classifier cross-validation");
  oracle->add_option("file", o.file, "representation file ('-' for stdin)")->required();
  oracle->add_option("--radius", o.radius, "window radius")->check(CLI::Range(2, 64));
  oracle->add_option("--depth", o.proj_depth, "projection depth")->check(CLI::Range(1, 16));
  oracle->add_option("--tol", o.tol, "projection tolerance")->check(CLI::PositiveNumber);
  oracle->add_flag("--compare", o.compare, "compare projections with the classifier");
  oracle->add_option("--export", o.export_op, "export W or V<k> as a dense matrix");
  oracle->add_option("--out", o.export_out, "export destination ('-' for stdout)");

  auto* builtin = app.add_subcommand("builtin", "emit a finite patch of a builtin representation");
  builtin->add_option("name", o.name, "builtin name")->required()->check(CLI::IsMember(builtin_names()));
  builtin->add_option("--n", o.n, "rank")->required();
  builtin->add_option("--param", o.params, "key=value parameter (repeatable)");
  builtin->add_option("--emit", o.emit, "output file ('-' for stdout)");
  builtin->add_option("--radius", o.radius, "patch radius")->check(CLI::NonNegativeNumber);

  auto* normal = app.add_subcommand("normal-form", "print both normal forms of a word");
  normal->add_option("word", o.word, "tokens w, v1..vN separated by spaces")->required();
  normal->add_option("--n", o.n, "rank")->required();

  auto* render = app.add_subcommand("render", "render a patch as Graphviz DOT");
  render->add_option("file", o.file, "representation file ('-' for stdin)")->required();
  render->add_option("--dot", o.dot, "output file ('-' for stdout)");
  render->add_option("--radius", o.radius, "patch radius")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return run_check(o);
    if (*classify) return run_classify(o);
    if (*oracle) return run_oracle(o);
    if (*builtin) return run_builtin(o);
    if (*normal) return run_normal_form(o);
    if (*render) return run_render(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::PresentationError:
      case ErrorKind::PreconditionFailed: return kViolation;
      default: return kUsage;
    }
  }
  return kUsage;
}
