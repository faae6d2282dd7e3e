#include "orlicz/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace orlicz::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t size_from_json(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw InputError(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << origin << ": JSON syntax error at line " << line << ", column " << col;
    throw InputError(msg.str());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw InputError("expected a number or \"inf\", got " + j.dump());
}

json number_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

OrliczFunction function_from_json(const json& j) {
  const json& kind_j = field(j, "kind");
  if (!kind_j.is_string()) throw InputError("\"kind\" must be a string");
  const std::string kind = kind_j.get<std::string>();
  try {
    if (kind == "power") return OrliczFunction::power(number_from_json(field(j, "p")));
    if (kind == "power_scaled") {
      return OrliczFunction::power_scaled(number_from_json(field(j, "c")), number_from_json(field(j, "p")));
    }
    if (kind == "exp_minus_one") return OrliczFunction::exp_minus_one();
    if (kind == "t_log1p") return OrliczFunction::t_log1p();
    if (kind == "piecewise_linear") {
      std::vector<Knot> knots;
      const json& ks = field(j, "knots");
      if (!ks.is_array()) throw InputError("\"knots\" must be an array");
      for (const json& k : ks) {
        if (!k.is_array() || k.size() != 2) throw InputError("each knot must be [t, value]");
        knots.push_back({number_from_json(k[0]), number_from_json(k[1])});
      }
      if (j.contains("cutoff")) return OrliczFunction::piecewise_linear_cutoff(knots, number_from_json(j["cutoff"]));
      return OrliczFunction::piecewise_linear(knots, number_from_json(field(j, "final_slope")));
    }
    if (kind == "compose") {
      return compose(function_from_json(field(j, "outer")), function_from_json(field(j, "inner"))).function;
    }
    if (kind == "conjugate") {
      const bool numeric = j.contains("method") && j["method"] == "numeric";
      return conjugate(function_from_json(field(j, "of")),
                       numeric ? ConjugateMethod::numeric : ConjugateMethod::automatic);
    }
    if (kind == "hscale") {
      return OrliczFunction::hscale(number_from_json(field(j, "a")), function_from_json(field(j, "of")));
    }
  } catch (const std::logic_error& e) {
    throw InputError(std::string("invalid ") + kind + ": " + e.what());
  }
  throw InputError("unknown function kind \"" + kind + "\"");
}

json function_to_json(const OrliczFunction& phi) {
  switch (phi.kind()) {
    case NodeKind::power:
      return {{"kind", "power"}, {"p", phi.as_power()->p}};
    case NodeKind::power_scaled:
      return {{"kind", "power_scaled"}, {"c", phi.as_power_scaled()->c}, {"p", phi.as_power_scaled()->p}};
    case NodeKind::exp_minus_one:
      return {{"kind", "exp_minus_one"}};
    case NodeKind::t_log1p:
      return {{"kind", "t_log1p"}};
    case NodeKind::piecewise_linear: {
      const auto* pl = phi.as_piecewise_linear();
      json knots = json::array();
      for (const Knot& k : pl->knots) knots.push_back({number_to_json(k.t), number_to_json(k.value)});
      json out{{"kind", "piecewise_linear"}, {"knots", knots}};
      if (pl->cutoff) {
        out["cutoff"] = number_to_json(*pl->cutoff);
      } else {
        out["final_slope"] = number_to_json(pl->final_slope);
      }
      return out;
    }
    case NodeKind::compose:
      return {{"kind", "compose"},
              {"outer", function_to_json(phi.as_compose()->outer)},
              {"inner", function_to_json(phi.as_compose()->inner)}};
    case NodeKind::conjugate:
      return {{"kind", "conjugate"}, {"of", function_to_json(phi.as_conjugate()->of)}};
    case NodeKind::hscale:
      return {{"kind", "hscale"}, {"a", phi.as_hscale()->a}, {"of", function_to_json(phi.as_hscale()->of)}};
  }
  return {};
}

AlgebraElement element_from_json(const json& j) {
  if (!j.is_object()) throw InputError("element must be a JSON object");
  try {
    if (j.contains("diag")) {
      const auto values = vector_from_json(j["diag"]);
      const auto weights = j.contains("weights") ? vector_from_json(j["weights"]) : std::vector<double>(values.size(), 1.0);
      if (weights.size() != values.size()) throw InputError("\"weights\" and \"diag\" differ in length");
      return AlgebraElement::diagonal(BlockAlgebra::commutative(weights), values);
    }
    const json& blocks_j = field(field(j, "algebra"), "blocks");
    if (!blocks_j.is_array()) throw InputError("\"blocks\" must be an array");
    std::vector<Block> blocks;
    for (const json& b : blocks_j) {
      blocks.push_back({size_from_json(field(b, "dim"), "dim"), number_from_json(field(b, "weight"))});
    }
    const BlockAlgebra alg(std::move(blocks));

    const json& mats_j = field(j, "mats");
    if (!mats_j.is_array() || mats_j.size() != alg.size()) throw InputError("\"mats\" needs one matrix per block");
    std::vector<Matrix> mats;
    for (std::size_t b = 0; b < alg.size(); ++b) {
      const std::size_t d = alg.blocks()[b].dim;
      const json& m = mats_j[b];
      if (!m.is_array() || m.size() != d) throw InputError("block " + std::to_string(b) + " needs " + std::to_string(d) + " rows");
      Matrix mat(d, d);
      for (std::size_t r = 0; r < d; ++r) {
        if (!m[r].is_array() || m[r].size() != d) {
          throw InputError("block " + std::to_string(b) + " row " + std::to_string(r) + " needs " + std::to_string(d) + " entries");
        }
        for (std::size_t c = 0; c < d; ++c) mat(r, c) = number_from_json(m[r][c]);
      }
      mats.push_back(std::move(mat));
    }
    return AlgebraElement(alg, std::move(mats));
  } catch (const std::logic_error& e) {
    throw InputError(std::string("invalid element: ") + e.what());
  }
}

json element_to_json(const AlgebraElement& x) {
  json blocks = json::array();
  for (const Block& b : x.algebra().blocks()) blocks.push_back({{"dim", b.dim}, {"weight", b.weight}});
  json mats = json::array();
  for (const Matrix& m : x.mats()) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(number_to_json(m(r, c)));
      rows.push_back(row);
    }
    mats.push_back(rows);
  }
  return {{"algebra", {{"blocks", blocks}}}, {"mats", mats}};
}

std::vector<double> vector_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object()) {
    if (j.contains("values")) {
      arr = &j["values"];
    } else if (j.contains("weights")) {
      arr = &j["weights"];
    }
  }
  if (!arr->is_array()) throw InputError("expected an array of numbers");
  std::vector<double> out;
  for (const json& v : *arr) out.push_back(number_from_json(v));
  return out;
}

ConstantWitness witness_from_string(const std::string& s) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
      throw InputError("constants must be four comma-separated numbers M,alpha,beta,gamma");
    }
    v.push_back(x);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (v.size() != 4) throw InputError("constants must be four comma-separated numbers M,alpha,beta,gamma");
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InputError("constants must be positive and finite");
  }
  return {v[0], v[1], v[2], v[3]};
}

json witness_to_json(const ConstantWitness& w) {
  return {{"M", w.M}, {"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}};
}

json step_function_to_json(const StepFunction& m) {
  json out = json::array();
  double t = 0.0;
  for (const Step& s : m.steps()) {
    out.push_back({{"t_start", t}, {"t_end", t + s.length}, {"value", s.value}});
    t += s.length;
  }
  return out;
}

void write_rearrangement_csv(std::ostream& os, const StepFunction& m) {
  os << "t_start,t_end,value\n";
  double t = 0.0;
  for (const Step& s : m.steps()) {
    os << format_number(t) << ',' << format_number(t + s.length) << ',' << format_number(s.value) << '\n';
    t += s.length;
  }
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace orlicz::io
