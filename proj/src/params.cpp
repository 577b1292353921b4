#include "maxdicut/params.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

namespace maxdicut {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ParamError(msg);
}

// (2d)^a for a = 0..k as exact integers; throws if any would overflow.
std::vector<std::uint64_t> exact_tree_sizes(std::uint64_t d, int k) {
  const std::uint64_t base = 2 * d;
  std::vector<std::uint64_t> out(static_cast<std::size_t>(k) + 1);
  out[0] = 1;
  for (int a = 1; a <= k; ++a) {
    if (out[a - 1] > std::numeric_limits<std::uint64_t>::max() / base)
      throw ParamError("tree size (2d)^" + std::to_string(a) +
                       " overflows; reduce d or k");
    out[a] = out[a - 1] * base;
  }
  return out;
}

void validate_practical(ParamSet& p) {
  require(p.k >= 1, "k must be at least 1");
  require(p.alpha > 0.0 && p.alpha < 1.0, "alpha must lie in (0, 1)");
  if (p.k >= 2)
    require(p.alpha < 1.0 / (p.k - 1),
            "alpha must be below 1/(k-1) = " + format_double(1.0 / (p.k - 1)));
  require(p.d >= 1, "d must be at least 1");
  require(p.vertex_sample_prob >= 0.0 && p.vertex_sample_prob <= 1.0,
          "vertex_sample_prob must lie in [0, 1]");
  require(p.edge_sample_prob >= 0.0 && p.edge_sample_prob <= 1.0,
          "edge_sample_prob must lie in [0, 1]");
  require(p.eval_reservoir_size >= 1, "eval_reservoir_size must be at least 1");
  require(p.thresholds.size() == static_cast<std::size_t>(p.k),
          "need exactly one threshold per color (" + std::to_string(p.k) + ")");
  for (double t : p.thresholds)
    require(t >= 0.0, "thresholds must be non-negative (or +inf)");
  require(p.delta.size() == static_cast<std::size_t>(p.k) + 2,
          "delta needs k+2 entries (indices 0..k+1)");
  for (std::size_t a = 0; a < p.delta.size(); ++a) {
    require(p.delta[a] > 0.0 && p.delta[a] < 1.0, "delta entries must lie in (0, 1)");
    if (a > 0)
      require(p.delta[a - 1] < p.delta[a], "delta must be strictly increasing");
  }
  p.sigma.resize(p.delta.size());
  for (std::size_t a = 0; a < p.delta.size(); ++a) p.sigma[a] = p.delta[a] * p.delta[a];
  p.q = std::exp2(-static_cast<double>(p.k + 1));
  p.c = 0.0;
  p.tree_sizes_ = exact_tree_sizes(p.d, p.k);
  p.executable = true;
}

}  // namespace

double ParamSet::log2_n() const {
  require(mode == Mode::theory, "log accessors are theory-mode only");
  return std::log2(static_cast<double>(n));
}

double ParamSet::log2_q() const {
  require(mode == Mode::theory, "log accessors are theory-mode only");
  return -static_cast<double>(k + 1);
}

double ParamSet::log2_d() const {
  require(mode == Mode::theory, "log accessors are theory-mode only");
  // d = epsilon^(-4^(k+3)); log2 = 4^(k+3) * log2(1/epsilon). The power of 4
  // overflows to +inf for very small epsilon; that is acceptable (the set is
  // far beyond executable either way and the structure stays constructible).
  return std::exp2(2.0 * (k + 3)) * std::log2(1.0 / epsilon);
}

double ParamSet::log2_2d() const { return 1.0 + log2_d(); }

double ParamSet::log2_delta(int a) const {
  require(mode == Mode::theory, "log accessors are theory-mode only");
  require(a >= 0 && a <= k + 1, "delta index out of range");
  return std::exp2(2.0 * (k + 2 - a)) * std::log2(epsilon);
}

double ParamSet::logn_d() const { return log2_d() / log2_n(); }

double ParamSet::logn_2d() const { return log2_2d() / log2_n(); }

double ParamSet::logn_tree_size(int a) const {
  require(a >= 0 && a <= k, "tree size index out of range");
  if (a == 0) return 0.0;
  return static_cast<double>(a) * logn_2d();
}

double ParamSet::logn_q_over_10() const {
  return (log2_q() - std::log2(10.0)) / log2_n();
}

double ParamSet::logn_c_tree(int a) const {
  require(a >= 0 && a <= k, "tree size index out of range");
  // c * (2d)^a = (q/10) * (2d)^(a-k); at a == k the product is exactly q/10 —
  // keep that identity free of rounding (and of 0*inf) by special-casing.
  if (a == k) return logn_q_over_10();
  return logn_q_over_10() + static_cast<double>(a - k) * logn_2d();
}

double ParamSet::logn_c() const { return logn_c_tree(0); }

double ParamSet::logn_threshold(int a) const {
  require(mode == Mode::theory, "log accessors are theory-mode only");
  require(a >= 1 && a <= k, "threshold index out of range");
  // q * 2^a = 2^(a-k-1), computed directly so it survives q underflow.
  return std::exp2(static_cast<double>(a - k - 1));
}

bool operator==(const ParamSet& a, const ParamSet& b) {
  return a.mode == b.mode && a.epsilon == b.epsilon && a.n == b.n &&
         a.executability_bound == b.executability_bound && a.k == b.k &&
         a.alpha == b.alpha && a.d == b.d && a.delta == b.delta && a.sigma == b.sigma &&
         a.q == b.q && a.c == b.c && a.vertex_sample_prob == b.vertex_sample_prob &&
         a.edge_sample_prob == b.edge_sample_prob &&
         a.eval_reservoir_size == b.eval_reservoir_size &&
         a.thresholds == b.thresholds && a.executable == b.executable &&
         a.tree_sizes_ == b.tree_sizes_;
}

ParamSet practical_params(int k, double alpha, std::uint64_t d,
                          double vertex_sample_prob, double edge_sample_prob,
                          std::uint64_t eval_reservoir_size,
                          std::vector<double> thresholds, double eps_equiv) {
  require(eps_equiv > 0.0 && eps_equiv < 1.0, "eps_equiv must lie in (0, 1)");
  ParamSet p;
  p.mode = ParamSet::Mode::practical;
  p.k = k;
  p.alpha = alpha;
  p.d = d;
  p.vertex_sample_prob = vertex_sample_prob;
  p.edge_sample_prob = edge_sample_prob;
  p.eval_reservoir_size = eval_reservoir_size;
  p.thresholds = std::move(thresholds);
  if (k >= 1) {
    p.delta.resize(static_cast<std::size_t>(k) + 2);
    for (int a = 0; a <= k + 1; ++a)
      p.delta[a] = std::pow(eps_equiv, static_cast<double>(k + 2 - a));
  }
  validate_practical(p);
  return p;
}

ParamSet derive_theory_params(double epsilon, std::uint64_t n,
                              double executability_bound) {
  require(epsilon > 0.0 && epsilon <= 0.1, "epsilon must lie in (0, 0.1]");
  require(n >= 2, "n must be at least 2");
  require(executability_bound > 0.0, "executability bound must be positive");

  ParamSet p;
  p.mode = ParamSet::Mode::theory;
  p.epsilon = epsilon;
  p.n = n;
  p.executability_bound = executability_bound;
  // ceil(1/eps^2), with a nudge so values that are exact integers in real
  // arithmetic (eps = 0.1 -> 100) do not round up from float noise.
  p.k = static_cast<int>(std::ceil(1.0 / (epsilon * epsilon) - 1e-9));
  p.alpha = std::pow(epsilon, 4.0);
  p.q = std::exp2(-static_cast<double>(p.k + 1));  // may underflow to 0; log2_q stays exact

  p.delta.resize(static_cast<std::size_t>(p.k) + 2);
  p.sigma.resize(p.delta.size());
  for (int a = 0; a <= p.k + 1; ++a) {
    p.delta[a] = std::exp2(p.log2_delta(a));
    p.sigma[a] = std::exp2(2.0 * p.log2_delta(a));
  }

  const double log2_bound = std::log2(executability_bound);
  const double l2d = p.log2_d();
  const double l2_tree_k = static_cast<double>(p.k) * (1.0 + l2d);
  p.executable = l2d <= log2_bound && l2_tree_k <= log2_bound;
  if (p.executable) {
    p.d = static_cast<std::uint64_t>(std::ceil(std::exp2(l2d)));
    p.tree_sizes_ = exact_tree_sizes(p.d, p.k);
  } else {
    // Native d / tree sizes are meaningless at theory scale; leave them empty
    // so accidental use traps, and expose magnitudes via the log accessors.
    p.d = 0;
    p.tree_sizes_.clear();
  }

  p.c = std::exp2(p.logn_c() * p.log2_n());  // underflows to 0 at theory scale
  p.vertex_sample_prob = std::exp2(-p.c * p.log2_n());
  p.edge_sample_prob = p.vertex_sample_prob;
  const double res = std::exp2((1.0 - p.c) * p.log2_n());
  p.eval_reservoir_size =
      res >= static_cast<double>(std::numeric_limits<std::uint64_t>::max())
          ? std::numeric_limits<std::uint64_t>::max()
          : static_cast<std::uint64_t>(std::llround(res));

  p.thresholds.resize(static_cast<std::size_t>(p.k));
  for (int a = 1; a <= p.k; ++a)
    p.thresholds[a - 1] = std::exp2(p.logn_threshold(a) * p.log2_n());
  return p;
}

namespace {

std::string join_doubles(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += format_double(xs[i]);
  }
  return out;
}

std::vector<double> split_doubles(const std::string& text, std::size_t line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                    : comma - start);
    out.push_back(parse_double(tok, line));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string base_n_exp(double exp) {
  return "{base:\"n\",exp:" + format_double(exp) + "}";
}

}  // namespace

std::string serialize_params(const ParamSet& p) {
  std::ostringstream out;
  if (p.mode == ParamSet::Mode::theory) {
    out << "mode=theory\n";
    out << "epsilon=" << format_double(p.epsilon) << "\n";
    out << "n=" << p.n << "\n";
    out << "executability_bound=" << format_double(p.executability_bound) << "\n";
    // Derived values, informational only (re-derived from the keys above on
    // parse). Out-of-native-range magnitudes are shown as base-n exponents.
    out << "# k=" << p.k << "\n";
    out << "# alpha=" << format_double(p.alpha) << "\n";
    out << "# q=" << format_double(p.q) << " (log2 " << format_double(p.log2_q())
        << ")\n";
    out << "# d=" << base_n_exp(p.logn_d()) << "\n";
    out << "# tree_size_k=" << base_n_exp(p.logn_tree_size(p.k)) << "\n";
    out << "# c=" << base_n_exp(p.logn_c()) << "\n";
    out << "# vertex_sample_prob=" << base_n_exp(-p.c) << "\n";
    out << "# eval_reservoir_size=" << base_n_exp(1.0 - p.c) << "\n";
    out << "# executable=" << (p.executable ? "true" : "false") << "\n";
  } else {
    out << "mode=practical\n";
    out << "k=" << p.k << "\n";
    out << "alpha=" << format_double(p.alpha) << "\n";
    out << "d=" << p.d << "\n";
    out << "vertex_sample_prob=" << format_double(p.vertex_sample_prob) << "\n";
    out << "edge_sample_prob=" << format_double(p.edge_sample_prob) << "\n";
    out << "eval_reservoir_size=" << p.eval_reservoir_size << "\n";
    out << "thresholds=" << join_doubles(p.thresholds) << "\n";
    out << "delta=" << join_doubles(p.delta) << "\n";
  }
  return out.str();
}

ParamSet parse_params(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  struct KV {
    std::string value;
    std::size_t line;
  };
  std::vector<std::pair<std::string, KV>> kvs;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::size_t eq = line.find('=', start);
    if (eq == std::string::npos) throw FormatError("expected key=value", lineno);
    std::string key = line.substr(start, eq - start);
    std::string value = line.substr(eq + 1);
    while (!value.empty() && (value.back() == '\r' || value.back() == ' '))
      value.pop_back();
    for (const auto& [k, v] : kvs)
      if (k == key) throw FormatError("duplicate key '" + key + "'", lineno);
    kvs.emplace_back(key, KV{value, lineno});
  }
  auto take = [&](const std::string& key) -> const KV* {
    for (const auto& [k, v] : kvs)
      if (k == key) return &v;
    return nullptr;
  };
  auto need = [&](const std::string& key) -> const KV& {
    const KV* kv = take(key);
    if (!kv) throw FormatError("missing required key '" + key + "'");
    return *kv;
  };
  auto parse_u64 = [](const KV& kv) {
    std::uint64_t value = 0;
    auto [p, ec] =
        std::from_chars(kv.value.data(), kv.value.data() + kv.value.size(), value);
    if (ec != std::errc() || p != kv.value.data() + kv.value.size())
      throw FormatError("expected a non-negative integer, got '" + kv.value + "'",
                        kv.line);
    return value;
  };

  const std::string mode_val = need("mode").value;
  if (mode_val == "theory") {
    static const char* allowed[] = {"mode", "epsilon", "n", "executability_bound"};
    for (const auto& [k, v] : kvs) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) throw FormatError("unknown key '" + k + "' in theory mode", v.line);
    }
    double eps = parse_double(need("epsilon").value, need("epsilon").line);
    std::uint64_t n = parse_u64(need("n"));
    double bound = take("executability_bound")
                       ? parse_double(take("executability_bound")->value,
                                      take("executability_bound")->line)
                       : 0x1p40;
    return derive_theory_params(eps, n, bound);
  }
  if (mode_val != "practical")
    throw FormatError("mode must be 'practical' or 'theory', got '" + mode_val + "'");

  static const char* allowed[] = {"mode",
                                  "k",
                                  "alpha",
                                  "d",
                                  "vertex_sample_prob",
                                  "edge_sample_prob",
                                  "eval_reservoir_size",
                                  "thresholds",
                                  "delta"};
  for (const auto& [k, v] : kvs) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw FormatError("unknown key '" + k + "' in practical mode", v.line);
  }
  ParamSet p;
  p.mode = ParamSet::Mode::practical;
  std::uint64_t k64 = parse_u64(need("k"));
  if (k64 == 0 || k64 > 1u << 20) throw FormatError("k out of range", need("k").line);
  p.k = static_cast<int>(k64);
  p.alpha = parse_double(need("alpha").value, need("alpha").line);
  p.d = parse_u64(need("d"));
  p.vertex_sample_prob =
      parse_double(need("vertex_sample_prob").value, need("vertex_sample_prob").line);
  p.edge_sample_prob =
      parse_double(need("edge_sample_prob").value, need("edge_sample_prob").line);
  p.eval_reservoir_size = parse_u64(need("eval_reservoir_size"));
  p.thresholds = split_doubles(need("thresholds").value, need("thresholds").line);
  p.delta = split_doubles(need("delta").value, need("delta").line);
  try {
    validate_practical(p);
  } catch (const ParamError& e) {
    throw FormatError(std::string("invalid parameter file: ") + e.what());
  }
  return p;
}

ParamSet load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return parse_params(in);
}

}  // namespace maxdicut
