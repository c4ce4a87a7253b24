#include "bslimits/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <optional>
#include <sstream>
#include <vector>

#include "bslimits/britton.hpp"
#include "bslimits/errors.hpp"
#include "bslimits/limit_engine.hpp"
#include "bslimits/limit_tree.hpp"
#include "bslimits/marked_space.hpp"
#include "bslimits/quotients.hpp"

namespace bslimits::cli {

namespace {

using nlohmann::json;

class UsageError : public Error {
 public:
  using Error::Error;
};

mpz_class parse_integer(const std::string& what, const std::string& text) {
  mpz_class out;
  std::string s = text;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty() || out.set_str(s, 10) != 0) {
    throw UsageError("invalid integer for " + what + ": '" + text + "'");
  }
  return out;
}

std::int64_t to_int64(const std::string& what, const mpz_class& x) {
  if (!x.fits_slong_p()) throw UsageError(what + " is out of range");
  return x.get_si();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return parts;
}

/// One printed result.
struct Record {
  std::string command;
  json inputs = json::object();
  std::optional<bool> verdict;
  json value;
  std::optional<unsigned> precision_used;
  std::optional<mpz_class> validity_bound;
  std::string text;
};

struct Options {
  bool json_output = false;
  std::size_t length = 10;
  unsigned exp_bound = 0;
  unsigned workers = 1;

  std::string m, n, xi, eta, word, cls, seq, g1, g2, c;
  unsigned prec = 0;
  unsigned prec_eta = 0;
  unsigned level = 0;
  std::int64_t d = 1;
  std::uint64_t bound = 0;
  unsigned count = 0;
  unsigned k_max = 1;
  unsigned exp_max = 1;
  std::int64_t m1 = 0, d1 = 0, k1 = 0, m2 = 0, d2 = 0, k2 = 0;
};

class Runner {
 public:
  Runner(std::ostream& out) : out_(out) {}

  Options opt;

  void emit(const Record& r) {
    if (!opt.json_output) {
      out_ << r.text << "\n";
      return;
    }
    json j;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    if (r.verdict) {
      j["verdict"] = *r.verdict;
    } else {
      j["value"] = r.value;
    }
    j["precision_used"] =
        r.precision_used ? json(*r.precision_used) : json(nullptr);
    j["validity_bound"] =
        r.validity_bound ? json(r.validity_bound->get_str()) : json(nullptr);
    out_ << j.dump() << "\n";
  }

  Word word() const { return parse_word(opt.word); }

  BsParams bs() const {
    return BsParams(parse_integer("--m", opt.m), parse_integer("--n", opt.n));
  }

  std::int64_t M() const { return to_int64("--m", parse_integer("--m", opt.m)); }

  MAdicResidue residue(const std::string& value, unsigned prec) const {
    if (prec < 1) throw UsageError("--prec must be at least 1");
    return MAdicResidue(M(), prec, parse_integer("residue", value));
  }

  LimitParams limit() const { return LimitParams(M(), residue(opt.xi, opt.prec)); }

  json limit_inputs() const {
    return {{"m", opt.m}, {"xi", opt.xi}, {"prec", opt.prec}};
  }

  // -- commands ----------------------------------------------------------

  void reduce() {
    const Word r = britton_reduce(word(), bs());
    emit({"reduce", {{"m", opt.m}, {"n", opt.n}, {"word", opt.word}}, {},
          to_string(r), {}, {}, to_string(r)});
  }

  void trivial() {
    const bool t = is_trivial_bs(word(), bs());
    emit({"trivial", {{"m", opt.m}, {"n", opt.n}, {"word", opt.word}}, t, {},
          {}, {}, t ? "true" : "false"});
  }

  void limit_trivial() {
    const LimitDecision dec = decide_limit(word(), limit());
    json in = limit_inputs();
    in["word"] = opt.word;
    emit({"limit-trivial", in, dec.trivial, {}, dec.level, dec.validity_bound,
          dec.trivial ? "true" : "false"});
  }

  void stab() {
    const auto result = stabilizer(word(), limit());
    json in = limit_inputs();
    in["word"] = opt.word;
    Record r{"stab", in};
    if (!result) {
      r.value = nullptr;
      r.text = "none";
    } else {
      json k = json::array();
      for (const auto& x : result->exponent.coefficients()) k.push_back(x.get_str());
      r.value = {{"k", k}};
      r.precision_used = result->context.level();
      r.text = "k = " + to_string(result->exponent);
    }
    emit(r);
  }

  void lamp() {
    const auto x = lamplighter_image(word());
    emit({"lamp", {{"word", opt.word}}, {}, to_string(x), {}, {}, to_string(x)});
  }

  void gamma() {
    const auto f = gamma_image(word(), bs());
    emit({"gamma", {{"m", opt.m}, {"n", opt.n}, {"word", opt.word}}, {},
          to_string(f), {}, {}, to_string(f)});
  }

  GroupOracle oracle(const std::string& spec) const {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const auto args = colon == std::string::npos
                          ? std::vector<std::string>{}
                          : split(spec.substr(colon + 1), ',');
    auto want = [&](std::size_t k) {
      if (args.size() != k) {
        throw UsageError("group '" + spec + "' needs " + std::to_string(k) +
                         " parameters");
      }
    };
    if (kind == "bs") {
      want(2);
      return GroupOracle::baumslag_solitar(parse_integer("m", args[0]),
                                           parse_integer("n", args[1]));
    }
    if (kind == "gamma") {
      want(2);
      return GroupOracle::affine(parse_integer("m", args[0]),
                                 parse_integer("n", args[1]));
    }
    if (kind == "limit") {
      want(3);
      const std::int64_t Mv = to_int64("M", parse_integer("M", args[0]));
      const std::int64_t K = to_int64("prec", parse_integer("prec", args[2]));
      if (K < 1) throw UsageError("limit precision must be at least 1");
      return GroupOracle::limit(
          Mv, MAdicResidue(Mv, static_cast<unsigned>(K),
                           parse_integer("xi", args[1])));
    }
    if (kind == "lamp") {
      want(0);
      return GroupOracle::lamplighter();
    }
    throw UsageError("unknown group '" + spec +
                     "' (bs:m,n | limit:M,xi,prec | lamp | gamma:m,n)");
  }

  void distance() {
    const GroupOracle a = oracle(opt.g1);
    const GroupOracle b = oracle(opt.g2);
    SearchOptions so;
    so.max_length = opt.length;
    if (opt.exp_bound > 0) so.exponent_bound = opt.exp_bound;
    so.workers = opt.workers;
    const auto hit = discriminating_word(a, b, so);
    json in = {{"g1", opt.g1}, {"g2", opt.g2}, {"length", opt.length},
               {"exp_bound", opt.exp_bound}};
    Record r{"distance", in};
    if (!hit) {
      r.value = nullptr;
      r.text = "none up to length " + std::to_string(opt.length);
      if (!so.exponent_bound) {
        r.text += " (distance <= e^-" + std::to_string(opt.length + 1) + ")";
      }
    } else {
      r.value = {{"word", to_string(hit->word)},
                 {"length", hit->length.get_str()},
                 {"trivial_in", hit->trivial_in_first ? "g1" : "g2"}};
      r.text = "word = " + to_string(hit->word) +
               "\nlength = " + hit->length.get_str() +
               "\ntrivial in = " + (hit->trivial_in_first ? a.name() : b.name());
    }
    emit(r);
  }

  void classify() {
    const unsigned pe = opt.prec_eta ? opt.prec_eta : opt.prec;
    const auto c = classify_equal(M(), residue(opt.xi, opt.prec),
                                  residue(opt.eta, pe));
    json in = limit_inputs();
    in["eta"] = opt.eta;
    in["prec_eta"] = pe;
    emit({"classify", in, {}, to_string(c), std::min(opt.prec, pe), {},
          to_string(c)});
  }

  void converge() {
    if (opt.prec < 1) throw UsageError("--prec must be at least 1");
    std::vector<mpz_class> seq;
    for (const auto& s : split(opt.seq, ',')) seq.push_back(parse_integer("--seq", s));
    const auto v = check_convergence(M(), seq, opt.prec);
    Record r{"converge", {{"m", opt.m}, {"seq", opt.seq}, {"prec", opt.prec}}};
    r.precision_used = opt.prec;
    if (v.consistent) {
      r.text = "ConsistentWithConvergence";
      r.value = {{"verdict", r.text}};
    } else {
      r.text = "DivergenceWitness(" + std::to_string(v.witness->first) + ", " +
               std::to_string(v.witness->second) + "): " + v.reason;
      r.value = {{"verdict", "DivergenceWitness"},
                 {"witness", {v.witness->first, v.witness->second}},
                 {"reason", v.reason}};
    }
    emit(r);
  }

  void tree_path() {
    const LimitTree tree(limit());
    json list = json::array();
    std::string text;
    for (const auto& v : tree.path_of(word())) {
      const auto h = LimitTree::height(v);
      list.push_back({{"vertex", to_string(v.rep)}, {"height", h}});
      if (!text.empty()) text += "\n";
      text += std::to_string(h) + "\t" + (v.rep.empty() ? "v0" : to_string(v.rep) + " v0");
    }
    json in = limit_inputs();
    in["word"] = opt.word;
    emit({"tree path", in, {}, list, {}, {}, text});
  }

  void print_edges(const std::string& command, const LimitTree& tree,
                   const std::vector<EdgeHandle>& edges) {
    json list = json::array();
    std::string text;
    for (const auto& e : edges) {
      const auto t = LimitTree::terminal(e);
      list.push_back({{"edge", to_string(e.rep)},
                      {"terminal", to_string(t.rep)}});
      if (!text.empty()) text += "\n";
      text += "[" + to_string(e.rep) + "] -> " + to_string(t.rep) + " v0";
    }
    (void)tree;
    json in = limit_inputs();
    in["word"] = opt.word;
    if (command == "tree in") in["bound"] = opt.bound;
    emit({command, in, {}, list, {}, {}, text});
  }

  void tree_out() {
    const LimitTree tree(limit());
    print_edges("tree out", tree, tree.neighbors_out({word()}));
  }

  void tree_in() {
    const LimitTree tree(limit());
    print_edges("tree in", tree, tree.neighbors_in({word()}, opt.bound));
  }

  void relator_check() {
    const LimitTree tree(limit());
    const Word w = word();
    const bool ok = tree.is_relator(w);
    json in = limit_inputs();
    in["word"] = opt.word;
    Record r{"relator check", in, ok};
    r.text = ok ? "true\nrelator = " + to_string(make_relator(w)) : "false";
    emit(r);
  }

  void relator_enum() {
    const LimitTree tree(limit());
    json list = json::array();
    std::string text;
    for (const auto& w : tree.enumerate_relators(opt.k_max, opt.exp_max)) {
      const Word rel = make_relator(w);
      list.push_back({{"word", to_string(w)}, {"relator", to_string(rel)}});
      if (!text.empty()) text += "\n";
      text += to_string(w) + "\t" + to_string(rel);
    }
    json in = limit_inputs();
    in["k_max"] = opt.k_max;
    in["exp_max"] = opt.exp_max;
    emit({"relator enum", in, {}, list, {}, {}, text});
  }

  void witness_neq() {
    const Word w = witness_lemneqd(opt.m1, opt.d1, opt.k1, opt.m2, opt.d2, opt.k2);
    json in = {{"m1", opt.m1}, {"d1", opt.d1}, {"k1", opt.k1},
               {"m2", opt.m2}, {"d2", opt.d2}, {"k2", opt.k2}};
    emit({"witness neq", in, {},
          {{"word", to_string(w)}, {"length", length(w).get_str()}}, {}, {},
          to_string(w)});
  }

  void witness_congruence() {
    const Word w = make_congruence_witness(M(), parse_integer("--c", opt.c), opt.level);
    emit({"witness congruence", {{"m", opt.m}, {"c", opt.c}, {"level", opt.level}},
          {}, {{"word", to_string(w)}, {"length", length(w).get_str()}}, {}, {},
          to_string(w)});
  }

  void witness_seq() {
    const auto seq = build_separating_sequence(M(), residue(opt.xi, opt.prec),
                                               opt.count);
    json list = json::array();
    std::string text;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      list.push_back(seq[i].get_str());
      if (i) text += ", ";
      text += seq[i].get_str();
    }
    json in = limit_inputs();
    in["count"] = opt.count;
    emit({"witness seq", in, {}, list, opt.prec, {}, "[" + text + "]"});
  }

  void rs_table() {
    const std::int64_t m1 = M();
    if (opt.d < 1) throw UsageError("--d must be positive");
    const auto ctx = EngineContext::from_class(
        m1, opt.d, parse_integer("--class", opt.cls), opt.level);
    const RsTable& t = ctx.rs();
    auto list = [](auto first, auto last) {
      std::string s = "[";
      for (auto it = first; it != last; ++it) {
        if (it != first) s += ", ";
        s += it->get_str();
      }
      return s + "]";
    };
    json r = json::array(), s = json::array(), P = json::array();
    for (unsigned i = 1; i <= t.level; ++i) r.push_back(t.r[i].get_str());
    for (const auto& x : t.s) s.push_back(x.get_str());
    std::string text = "r = " + list(t.r.begin() + 1, t.r.end()) +
                       "\ns = " + list(t.s.begin(), t.s.end());
    for (unsigned i = 0; i <= t.level; ++i) {
      json p = json::array();
      for (const auto& q : t.polynomials[i]) p.push_back(q.get_str());
      P.push_back(p);
      text += "\nP" + std::to_string(i) + " = " +
              list(t.polynomials[i].begin(), t.polynomials[i].end());
    }
    emit({"rs-table",
          {{"m", opt.m}, {"class", opt.cls}, {"level", opt.level}, {"d", opt.d}},
          {},
          {{"n", t.n.get_str()}, {"r", r}, {"s", s}, {"P", P}},
          opt.level, {}, text});
  }

 private:
  std::ostream& out_;
};

}  // namespace

int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err) {
  Runner runner(out);
  Options& o = runner.opt;
  std::function<void()> action;

  CLI::App app{"Word problems in Baumslag-Solitar groups and their limits",
               "bs-limits"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file with defaults for length, "
                                 "exp-bound and workers");
  app.add_flag("--json", o.json_output, "One JSON object per result");
  app.add_option("--length", o.length, "Search length L")->capture_default_str();
  app.add_option("--exp-bound", o.exp_bound,
                 "Search b-runs in [-E, E] (a-length <= L) instead")
      ->capture_default_str();
  app.add_option("--workers", o.workers, "Worker threads for distance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto add_word = [&](CLI::App* sub) {
    sub->add_option("--word", o.word, "Word, e.g. \"a b^2 A B^3\"")->required();
  };
  auto add_bs = [&](CLI::App* sub) {
    sub->add_option("--m", o.m, "m")->required();
    sub->add_option("--n", o.n, "n")->required();
  };
  auto add_limit = [&](CLI::App* sub) {
    sub->add_option("--m", o.m, "M")->required();
    sub->add_option("--xi", o.xi, "xi = C mod M^K")->required();
    sub->add_option("--prec", o.prec, "K")->required();
  };
  auto bind = [&](CLI::App* sub, void (Runner::*fn)()) {
    sub->callback([&, fn] { action = [&, fn] { (runner.*fn)(); }; });
  };

  auto* reduce = app.add_subcommand("reduce", "Britton reduction in BS(m, n)");
  add_bs(reduce);
  add_word(reduce);
  bind(reduce, &Runner::reduce);

  auto* trivial = app.add_subcommand("trivial", "Word problem in BS(m, n)");
  add_bs(trivial);
  add_word(trivial);
  bind(trivial, &Runner::trivial);

  auto* lt = app.add_subcommand("limit-trivial", "Word problem in the limit");
  add_limit(lt);
  add_word(lt);
  bind(lt, &Runner::limit_trivial);

  auto* stab = app.add_subcommand("stab", "Stabilizer exponent of v0");
  add_limit(stab);
  add_word(stab);
  bind(stab, &Runner::stab);

  auto* lamp = app.add_subcommand("lamp", "Image in Z wr Z");
  add_word(lamp);
  bind(lamp, &Runner::lamp);

  auto* gamma = app.add_subcommand("gamma", "Image in Gamma(m, n)");
  add_bs(gamma);
  add_word(gamma);
  bind(gamma, &Runner::gamma);

  auto* dist = app.add_subcommand("distance", "Discriminating-word search");
  dist->add_option("--g1", o.g1, "bs:m,n | limit:M,xi,prec | lamp | gamma:m,n")
      ->required();
  dist->add_option("--g2", o.g2, "second group")->required();
  bind(dist, &Runner::distance);

  auto* cls = app.add_subcommand("classify", "Compare two limits");
  add_limit(cls);
  cls->add_option("--eta", o.eta, "second residue")->required();
  cls->add_option("--prec-eta", o.prec_eta, "precision of eta (default --prec)");
  bind(cls, &Runner::classify);

  auto* conv = app.add_subcommand("converge", "Convergence criterion");
  conv->add_option("--m", o.m, "M")->required();
  conv->add_option("--seq", o.seq, "comma separated integers")->required();
  conv->add_option("--prec", o.prec, "precision")->required();
  bind(conv, &Runner::converge);

  auto* tree = app.add_subcommand("tree", "Limit tree exploration");
  tree->require_subcommand(1);
  auto* path = tree->add_subcommand("path", "Path of a word from v0");
  add_limit(path);
  add_word(path);
  bind(path, &Runner::tree_path);
  auto* out_edges = tree->add_subcommand("out", "Outgoing edges of a vertex");
  add_limit(out_edges);
  add_word(out_edges);
  bind(out_edges, &Runner::tree_out);
  auto* in_edges = tree->add_subcommand("in", "Incoming edges of a vertex");
  add_limit(in_edges);
  add_word(in_edges);
  in_edges->add_option("--bound", o.bound, "|mu| <= B")->required();
  bind(in_edges, &Runner::tree_in);

  auto* rel = app.add_subcommand("relator", "Relators of the limit");
  rel->require_subcommand(1);
  auto* check = rel->add_subcommand("check", "Relator shape and stabilizer");
  add_limit(check);
  add_word(check);
  bind(check, &Runner::relator_check);
  auto* en = rel->add_subcommand("enum", "Enumerate relators on a grid");
  add_limit(en);
  en->add_option("--k-max", o.k_max, "k <= K")->check(CLI::PositiveNumber);
  en->add_option("--exp-max", o.exp_max, "|e_i| <= E");
  bind(en, &Runner::relator_enum);

  auto* wit = app.add_subcommand("witness", "Explicit witness words");
  wit->require_subcommand(1);
  auto* neq = wit->add_subcommand("neq", "r bar(r) separating two BS groups");
  for (auto [name, ref] : {std::pair{"--m1", &o.m1}, {"--d1", &o.d1},
                           {"--k1", &o.k1}, {"--m2", &o.m2}, {"--d2", &o.d2},
                           {"--k2", &o.k2}}) {
    neq->add_option(name, *ref, std::string(name).substr(2))->required();
  }
  bind(neq, &Runner::witness_neq);
  auto* cong = wit->add_subcommand("congruence", "Congruence witness");
  cong->add_option("--m", o.m, "M")->required();
  cong->add_option("--c", o.c, "c")->required();
  cong->add_option("--level", o.level, "t")->required()->check(CLI::PositiveNumber);
  bind(cong, &Runner::witness_congruence);
  auto* seq = wit->add_subcommand("seq", "Separating sequence");
  add_limit(seq);
  seq->add_option("--count", o.count, "number of terms")->required();
  bind(seq, &Runner::witness_seq);

  auto* rs = app.add_subcommand("rs-table", "Remainders, quotients, P_i");
  rs->add_option("--m", o.m, "m1")->required();
  rs->add_option("--class", o.cls, "class c")->required();
  rs->add_option("--level", o.level, "t")->required();
  rs->add_option("--d", o.d, "d")->capture_default_str();
  bind(rs, &Runner::rs_table);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    action();
    return kOk;
  } catch (const InsufficientPrecision& e) {
    err << "error: " << e.what() << "\nminimal sufficient precision: "
        << e.needed() << "\n";
    return kPrecision;
  } catch (const InternalInvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const InsufficientLevel& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace bslimits::cli
