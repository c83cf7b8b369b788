#include "obtool/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "ob/diagrams.hpp"
#include "ob/expr.hpp"
#include "ob/quotients.hpp"
#include "ob/reps.hpp"
#include "ob/rewrite.hpp"
#include "ob/symfun.hpp"
#include "ob/verify.hpp"
#include "obtool/json_io.hpp"

namespace obtool {

namespace {

constexpr const char* kGrammar = R"(Expressions:
  expr    := term (('+' | '-') term)*
  term    := compose ('*' compose)*      tensor product
  compose := unary ('.' unary)*          f . g is f after g
  atom    := generator | 1[word] | D<k> | number | p/q | (expr)
Compose '.' binds tighter than tensor '*'; both associate to the left, so
"s . s * 1[^]" is "(s . s) * 1[^]".
Generators: c c' (cups), d d' (caps), s s' t t' (crossings), x x' (dots).
Words use '^' (up), 'v' (down) and '0' (empty), e.g. "^^v".
Lists (--delta, --lambda, --m) are comma separated, e.g. --lambda 2,3,2,1,1.)";

constexpr const char* kModes = R"(Modes:
  ob   undotted category; --delta sets the loop value
  aob  affine category; --delta d1,d2,... specializes bubbles D1,D2,...
  gob  graded affine category; --delta sets the undotted loop value
  obf  cyclotomic quotient; --f is required, --delta gives D1..Dl)";

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string mode = "ob";
  std::string rank_mode = "obf";
  std::optional<std::string> f;
  std::optional<std::string> delta;
  std::optional<std::string> lambda;
  std::optional<std::string> m;
  std::optional<std::uint32_t> max_dots;
  std::optional<std::uint32_t> max_degree;
  std::uint64_t seed = 0;
  bool json = false;
  std::string suite = "all";
  std::vector<std::string> positional;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (out.empty() || std::any_of(out.begin(), out.end(), [](const std::string& s) {
        return s.find_first_not_of(" \t") == std::string::npos;
      }))
    throw UsageError("empty entry in list '" + text + "'");
  return out;
}

std::vector<ob::Scalar> scalar_list(const std::string& text) {
  std::vector<ob::Scalar> out;
  for (const auto& s : split_list(text)) out.push_back(ob::parse_scalar(s));
  return out;
}

ob::Pyramid pyramid_from(const std::string& text) {
  std::vector<std::uint32_t> heights;
  for (const auto& s : split_list(text)) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || v < 1) throw UsageError("--lambda entries must be positive integers, got '" + s + "'");
    heights.push_back(static_cast<std::uint32_t>(v));
  }
  return ob::Pyramid(std::move(heights));
}

void reject(bool present, const std::string& flag, const std::string& why) {
  if (present) throw UsageError(flag + " " + why);
}

// Engine, bubble handling and cyclotomic reduction selected by --mode.
class Setting {
 public:
  explicit Setting(const Options& o) : mode_(o.mode) {
    if (mode_ != "obf") reject(o.f.has_value(), "--f", "only applies to --mode obf");
    if (mode_ == "ob") {
      engine_ = std::make_unique<ob::Engine>(ob::EngineMode::filtered());
      if (o.delta) {
        const auto v = scalar_list(*o.delta);
        if (v.size() != 1) throw UsageError("--mode ob takes a single loop value in --delta");
        values_ = std::map<std::uint32_t, ob::Scalar>{{1, v[0]}};
      }
    } else if (mode_ == "aob") {
      engine_ = std::make_unique<ob::Engine>(ob::EngineMode::filtered());
      if (o.delta) {
        std::map<std::uint32_t, ob::Scalar> values;
        const auto v = scalar_list(*o.delta);
        for (std::size_t k = 0; k < v.size(); ++k) values.emplace(static_cast<std::uint32_t>(k + 1), v[k]);
        values_ = std::move(values);
      }
    } else if (mode_ == "gob") {
      if (o.delta) {
        const auto v = scalar_list(*o.delta);
        if (v.size() != 1) throw UsageError("--mode gob takes a single loop value in --delta; dotted bubbles vanish");
        engine_ = std::make_unique<ob::Engine>(ob::EngineMode::graded_delta(v[0]));
      } else {
        engine_ = std::make_unique<ob::Engine>(ob::EngineMode::graded());
      }
    } else if (mode_ == "obf") {
      if (!o.f) throw UsageError("--mode obf requires --f <monic polynomial in u>");
      std::optional<std::vector<ob::Scalar>> deltas;
      if (o.delta) deltas = scalar_list(*o.delta);
      engine_ = std::make_unique<ob::Engine>(ob::EngineMode::filtered());
      reducer_.emplace(*engine_, ob::CyclotomicData(ob::parse_monic(*o.f), std::move(deltas)));
    } else {
      throw UsageError("unknown mode '" + mode_ + "'");
    }
  }

  const std::string& mode() const { return mode_; }
  const ob::Engine& engine() const { return *engine_; }
  bool undotted() const { return mode_ == "ob"; }
  const ob::CyclotomicData* cyclotomic() const { return reducer_ ? &reducer_->data() : nullptr; }

  ob::Morphism evaluate(const std::string& text) const {
    const ob::ParsedExpression e = ob::parse_expression(text);
    if (undotted())
      for (const auto& [c, w] : e.terms)
        if (w.dot_count() > 0) throw UsageError("dots (x, x') are not available in --mode ob; use aob, gob or obf");
    if (e.terms.empty()) return ob::Morphism(e.source, e.target);
    return finish(engine_->normalize(e.terms));
  }

  ob::Morphism finish(const ob::Morphism& m) const {
    if (reducer_) return reducer_->reduce(m);
    if (values_) return ob::specialize(m, ob::SpecializationMap::values(*values_));
    return m;
  }

 private:
  std::string mode_;
  std::unique_ptr<ob::Engine> engine_;
  std::optional<ob::CyclotomicReducer> reducer_;
  std::optional<std::map<std::uint32_t, ob::Scalar>> values_;
};

ob::BasisBounds bounds_for(const Options& o, const Setting& s) {
  ob::BasisBounds b;
  if (s.mode() == "ob") {
    reject(o.max_dots.has_value() || o.max_degree.has_value(), "--max-dots/--max-degree",
           "do not apply to --mode ob, which has no dots");
    b.max_dots_per_strand = 0;
  } else if (s.mode() == "obf") {
    reject(o.max_dots.has_value() || o.max_degree.has_value(), "--max-dots/--max-degree",
           "do not apply to --mode obf; the quotient allows at most l-1 dots per strand");
    b.max_dots_per_strand = s.cyclotomic()->level() - 1;
  } else {
    if (!o.max_dots && !o.max_degree)
      throw UsageError("--mode " + s.mode() + " has infinite-dimensional hom spaces; give --max-dots or --max-degree");
    b.max_dots_per_strand = o.max_dots;
    b.max_total_degree = o.max_degree;
  }
  return b;
}

ob::Word word_arg(const std::string& text) {
  try {
    return ob::Word::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("bad word '" + text + "': " + e.what());
  }
}

std::string element_name(std::size_t i) { return "e" + std::to_string(i); }

// ---------------------------------------------------------------- commands

int cmd_normalize(const Options& o, std::ostream& out) {
  const Setting s(o);
  const ob::Morphism m = s.evaluate(o.positional.at(0));
  if (o.json) {
    Json doc = document("normalize");
    doc["mode"] = s.mode();
    doc["expression"] = o.positional[0];
    doc["result"] = morphism_json(m);
    out << dump(doc);
  } else {
    out << m.source().to_string() << " -> " << m.target().to_string() << "\n" << m.to_string() << "\n";
  }
  return kExitOk;
}

int cmd_compose(const Options& o, std::ostream& out) {
  const Setting s(o);
  const ob::Morphism f = s.evaluate(o.positional.at(0));
  const ob::Morphism g = s.evaluate(o.positional.at(1));
  if (g.target() != f.source())
    throw UsageError("cannot compose: second argument ends at " + g.target().to_string() +
                     " but the first starts at " + f.source().to_string());
  const ob::Morphism m = s.finish(s.engine().compose(f, g));
  if (o.json) {
    Json doc = document("compose");
    doc["mode"] = s.mode();
    doc["left"] = o.positional[0];
    doc["right"] = o.positional[1];
    doc["result"] = morphism_json(m);
    out << dump(doc);
  } else {
    out << m.source().to_string() << " -> " << m.target().to_string() << "\n" << m.to_string() << "\n";
  }
  return kExitOk;
}

int cmd_basis(const Options& o, std::ostream& out, bool count_only) {
  const Setting s(o);
  const ob::Word a = word_arg(o.positional.at(0));
  const ob::Word b = word_arg(o.positional.at(1));
  const auto basis = ob::enumerate_normal_basis(a, b, bounds_for(o, s));
  if (o.json) {
    Json doc = document(count_only ? "dims" : "basis");
    doc["mode"] = s.mode();
    doc["source"] = a.to_string();
    doc["target"] = b.to_string();
    doc["dimension"] = basis.size();
    if (!count_only) doc["basis"] = basis_json(basis);
    out << dump(doc);
    return kExitOk;
  }
  if (count_only) {
    out << basis.size() << "\n";
    return kExitOk;
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out << element_name(i) << " ";
    if (!basis[i].bubbles.is_one()) out << ob::Scalar::monomial(basis[i].bubbles).to_string() << " ";
    out << basis[i].diagram.to_string() << "\n";
  }
  return kExitOk;
}

std::string product_text(const ob::StructureTable& t, const ob::Morphism& m) {
  std::string s;
  for (const auto& [d, c] : m.terms()) {
    std::vector<std::pair<ob::Monomial, ob::Scalar>> parts;
    if (t.kind == ob::AlgebraKind::Affine) {
      for (auto& [mono, rest] : c.collect(ob::SymbolKind::Delta)) parts.emplace_back(mono, rest);
    } else {
      parts.emplace_back(ob::Monomial{}, c);
    }
    for (const auto& [mono, coef] : parts) {
      if (!s.empty()) s += " + ";
      s += "(" + coef.to_string() + ")";
      if (!mono.is_one()) s += ob::Scalar::monomial(mono).to_string() + " ";
      const auto k = t.index_of(d, mono);
      s += k ? element_name(*k) : d.to_string();
    }
  }
  return s.empty() ? "0" : s;
}

std::uint32_t count_arg(const std::string& text, const char* what) {
  std::size_t used = 0;
  long v = -1;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v < 0) throw UsageError(std::string(what) + " must be a nonnegative integer, got '" + text + "'");
  return static_cast<std::uint32_t>(v);
}

int cmd_structconst(const Options& o, std::ostream& out) {
  const std::uint32_t r = count_arg(o.positional.at(0), "r");
  const std::uint32_t sdown = count_arg(o.positional.at(1), "s");
  const Setting s(o);
  ob::AlgebraSpec spec;
  if (s.mode() == "ob") {
    spec.kind = ob::AlgebraKind::Ob;
    if (o.delta) spec.delta = scalar_list(*o.delta).at(0);
  } else if (s.mode() == "obf") {
    spec.kind = ob::AlgebraKind::Cyclotomic;
    spec.cyclotomic = *s.cyclotomic();
  } else if (s.mode() == "aob") {
    reject(o.delta.has_value(), "--delta", "is not supported by structconst --mode aob; bubbles are basis factors there");
    spec.kind = ob::AlgebraKind::Affine;
    spec.bounds = bounds_for(o, s);
  } else {
    throw UsageError("structconst supports --mode ob, aob and obf");
  }
  const ob::StructureTable t = ob::walled_brauer_algebra(r, sdown, spec);
  if (o.json) {
    Json doc = document("structconst");
    doc["mode"] = s.mode();
    doc["r"] = r;
    doc["s"] = sdown;
    doc["table"] = structure_json(t);
    out << dump(doc);
    return kExitOk;
  }
  out << "word " << t.word.to_string() << ", dimension " << t.basis.size() << "\n";
  for (std::size_t i = 0; i < t.basis.size(); ++i) {
    out << element_name(i) << " ";
    if (!t.basis[i].bubbles.is_one()) out << ob::Scalar::monomial(t.basis[i].bubbles).to_string() << " ";
    out << t.basis[i].diagram.to_string() << "\n";
  }
  for (std::size_t i = 0; i < t.products.size(); ++i)
    for (std::size_t j = 0; j < t.products[i].size(); ++j)
      out << element_name(i) << " . " << element_name(j) << " = " << product_text(t, t.products[i][j]) << "\n";
  return kExitOk;
}

void print_reports(const std::string& command, const std::vector<ob::CheckReport>& reports, bool json,
                   std::ostream& out) {
  if (json) {
    Json doc = document(command);
    Json list = Json::array();
    for (const auto& r : reports) list.push_back(report_json(r, false));
    doc["checks"] = list;
    doc["passed"] = ob::all_passed(reports);
    out << dump(doc);
    return;
  }
  for (const auto& r : reports) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) out << ": " << r.detail;
    out << "\n";
    if (!r.passed && !r.witness.empty()) out << "  witness: " << r.witness << "\n";
  }
  const auto passed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  out << passed << "/" << reports.size() << " checks passed\n";
}

int cmd_rank(const Options& o, std::ostream& out) {
  reject(o.f.has_value(), "--f", "is not accepted by rank; f is the product of (u - m_i) over --m");
  reject(o.delta.has_value(), "--delta", "is not accepted by rank; bubble values follow from --m");
  reject(o.rank_mode != "obf", "--mode", "must be obf for rank");
  if (!o.m) throw UsageError("rank requires --m m1,...,ml (numbers or symbols like m1)");
  const ob::Word a = word_arg(o.positional.at(0));
  const ob::Word b = word_arg(o.positional.at(1));
  const ob::Pyramid p = pyramid_from(o.lambda.value_or("2,2"));
  const std::vector<ob::Scalar> m = scalar_list(*o.m);
  const ob::CyclotomicData cd(ob::poly_from_roots(m));
  const ob::CheckReport r = ob::basis_theorem_check(a, b, cd, p, m);
  print_reports("rank", {r}, o.json, out);
  return r.passed ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const Options& o, std::ostream& out) {
  reject(o.f.has_value() || o.delta.has_value() || o.m.has_value(), "--f/--delta/--m",
         "do not apply to verify; suites choose their own parameters from --seed");
  ob::SuiteOptions options;
  if (o.lambda) options.pyramid = pyramid_from(*o.lambda);
  options.seed = o.seed;
  const auto& names = ob::suite_names();
  if (o.suite != "all" && std::find(names.begin(), names.end(), o.suite) == names.end()) {
    std::string known = "all";
    for (const auto& n : names) known += ", " + n;
    throw UsageError("unknown suite '" + o.suite + "' (known: " + known + ")");
  }
  const auto reports = ob::run_suite(o.suite, options);
  print_reports("verify", reports, o.json, out);
  return ob::all_passed(reports) ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- wiring

void add_mode_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.mode, "Category: ob, aob, gob or obf")
      ->check(CLI::IsMember({"ob", "aob", "gob", "obf"}))
      ->capture_default_str();
  cmd->add_option("--f", o.f, "Monic polynomial in u for --mode obf, e.g. \"u^2-1\"");
  cmd->add_option("--delta", o.delta, "Bubble values, comma separated");
}

void add_bound_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--max-dots", o.max_dots, "Maximum dots per strand (aob, gob)");
  cmd->add_option("--max-degree", o.max_degree, "Maximum total dot degree (aob, gob)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Oriented Brauer categories: normal forms, bases and structure constants", "obtool");
  app.require_subcommand(1);
  app.footer(std::string(kModes) + "\n\n" + kGrammar);
  Options o;
  bool* json = &o.json;

  auto* normalize = app.add_subcommand("normalize", "Normal form of a morphism expression");
  normalize->add_option("expr", o.positional, "Morphism expression")->required()->expected(1);
  add_mode_flags(normalize, o);

  auto* compose = app.add_subcommand("compose", "Normal form of F . G");
  compose->add_option("exprs", o.positional, "F G")->required()->expected(2);
  add_mode_flags(compose, o);

  auto* basis = app.add_subcommand("basis", "Normal basis of Hom(A, B)");
  basis->add_option("words", o.positional, "A B")->required()->expected(2);
  add_mode_flags(basis, o);
  add_bound_flags(basis, o);

  auto* dims = app.add_subcommand("dims", "Dimension of Hom(A, B)");
  dims->add_option("words", o.positional, "A B")->required()->expected(2);
  add_mode_flags(dims, o);
  add_bound_flags(dims, o);

  auto* structconst = app.add_subcommand("structconst", "Structure constants of End(^^..^vv..v) with r up, s down");
  structconst->add_option("counts", o.positional, "R S")->required()->expected(2);
  add_mode_flags(structconst, o);
  add_bound_flags(structconst, o);

  auto* rank = app.add_subcommand("rank", "Rank check of the cyclotomic basis of Hom(A, B) in a tensor representation");
  rank->add_option("words", o.positional, "A B")->required()->expected(2);
  rank->add_option("--mode", o.rank_mode, "Must be obf")->capture_default_str();
  rank->add_option("--f", o.f, "Not accepted; f is the product of (u - m_i)");
  rank->add_option("--delta", o.delta, "Not accepted");
  rank->add_option("--lambda", o.lambda, "Pyramid column heights (default 2,2)");
  rank->add_option("--m", o.m, "Roots m1,...,ml of f");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  std::string suites = "all";
  for (const auto& n : ob::suite_names()) suites += ", " + n;
  verify->add_option("--suite", o.suite, "Suite: " + suites)->capture_default_str();
  verify->add_option("--lambda", o.lambda, "Pyramid for the relation suite (default 2,3,2,1,1)");
  verify->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  verify->add_option("--f", o.f, "Not accepted");
  verify->add_option("--delta", o.delta, "Not accepted");
  verify->add_option("--m", o.m, "Not accepted");

  for (auto* cmd : {normalize, compose, basis, dims, structconst, rank, verify})
    cmd->add_flag("--json", *json, "Emit canonical JSON");
  // A seed only matters to verify; other commands are deterministic.
  for (auto* cmd : {normalize, compose, basis, dims, structconst, rank})
    cmd->add_option("--seed", o.seed, "Ignored; accepted for uniform scripting");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (normalize->parsed()) return cmd_normalize(o, out);
    if (compose->parsed()) return cmd_compose(o, out);
    if (basis->parsed()) return cmd_basis(o, out, false);
    if (dims->parsed()) return cmd_basis(o, out, true);
    if (structconst->parsed()) return cmd_structconst(o, out);
    if (rank->parsed()) return cmd_rank(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace obtool
