#include "pgex/instance_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "pgex/random.hpp"

namespace pgex {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_vector(std::ostream& out, const char* name, std::span<const double> v) {
  out << name << ' ' << v.size() << '\n';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << format_real(v[i]);
  out << '\n';
}

void write_matrix(std::ostream& out, const DenseMatrix& m) {
  out << "A " << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? " " : "") << format_real(r[j]);
    out << '\n';
  }
}

double parse_real(const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0' || errno == ERANGE) throw FormatError("bad real '" + token + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0' || errno == ERANGE) throw FormatError("bad integer '" + token + "'");
  return v;
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string line() {
    std::string s;
    if (!std::getline(in_, s)) throw FormatError("unexpected end of instance data");
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
  }

  std::vector<std::string> tokens() {
    std::istringstream ss(line());
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
  }

  Vector reals(std::size_t expected) {
    const auto toks = tokens();
    if (toks.size() != expected) {
      throw FormatError("expected " + std::to_string(expected) + " values, found " + std::to_string(toks.size()));
    }
    Vector out;
    out.reserve(expected);
    for (const auto& t : toks) out.push_back(parse_real(t));
    return out;
  }

 private:
  std::istream& in_;
};

}  // namespace

void write_instance(std::ostream& out, const ProblemInstance& inst) {
  out << "pgex-instance 1\n";
  out << "family=" << family_name(inst) << '\n';
  out << "generator_version=" << kGeneratorVersion << '\n';
  std::visit(
      [&out](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        out << "seed=" << i.seed << '\n';
        if constexpr (std::is_same_v<T, SimplexQpInstance>) {
          out << "n=" << i.A.rows() << '\n';
          out << "s=" << format_real(i.simplex_sum) << '\n';
        } else {
          out << "m=" << i.A.rows() << '\n';
          out << "n=" << i.A.cols() << '\n';
          out << "lambda=" << format_real(i.lambda) << '\n';
          if constexpr (std::is_same_v<T, LogisticInstance>) out << "shift=" << format_real(i.shift) << '\n';
        }
        write_matrix(out, i.A);
        write_vector(out, "b", i.b);
        if constexpr (!std::is_same_v<T, SimplexQpInstance>) {
          if (!i.planted.empty()) write_vector(out, "planted", i.planted);
        }
      },
      inst);
  out << "end\n";
}

ProblemInstance read_instance(std::istream& in) {
  Reader reader(in);
  if (reader.line() != "pgex-instance 1") throw FormatError("missing 'pgex-instance 1' header");

  std::map<std::string, std::string> header;
  std::vector<std::string> section;
  for (;;) {
    const std::string l = reader.line();
    if (l.empty() || l.front() == '#') continue;
    const auto eq = l.find('=');
    if (eq == std::string::npos) {
      std::istringstream ss(l);
      for (std::string t; ss >> t;) section.push_back(t);
      break;
    }
    header[l.substr(0, eq)] = l.substr(eq + 1);
  }
  const auto require = [&header](const char* key) -> const std::string& {
    const auto it = header.find(key);
    if (it == header.end()) throw FormatError(std::string("missing header key '") + key + "'");
    return it->second;
  };

  if (section.size() != 3 || section[0] != "A") throw FormatError("expected 'A <rows> <cols>'");
  const std::size_t rows = parse_uint(section[1]);
  const std::size_t cols = parse_uint(section[2]);
  std::vector<double> entries;
  entries.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Vector r = reader.reals(cols);
    entries.insert(entries.end(), r.begin(), r.end());
  }
  DenseMatrix A(rows, cols, std::move(entries));

  std::map<std::string, Vector> vectors;
  for (;;) {
    const auto toks = reader.tokens();
    if (toks.size() == 1 && toks[0] == "end") break;
    if (toks.size() != 2) throw FormatError("expected '<name> <len>' or 'end'");
    vectors[toks[0]] = reader.reals(parse_uint(toks[1]));
  }
  if (!vectors.count("b")) throw FormatError("missing vector b");

  const std::string& family = require("family");
  const std::uint64_t seed = parse_uint(require("seed"));
  if (family == "lasso" || family == "logistic") {
    if (parse_uint(require("m")) != rows || parse_uint(require("n")) != cols) {
      throw FormatError("header dimensions disagree with matrix A");
    }
    const double lambda = parse_real(require("lambda"));
    Vector planted = vectors.count("planted") ? vectors["planted"] : Vector{};
    if (family == "lasso") {
      return LassoInstance{std::move(A), vectors["b"], lambda, seed, std::move(planted)};
    }
    const double shift = header.count("shift") ? parse_real(header["shift"]) : 0.0;
    return LogisticInstance{std::move(A), vectors["b"], lambda, seed, std::move(planted), shift};
  }
  if (family == "qp") {
    if (parse_uint(require("n")) != rows || rows != cols) throw FormatError("header dimensions disagree with matrix A");
    return SimplexQpInstance{std::move(A), vectors["b"], parse_real(require("s")), seed};
  }
  throw FormatError("unknown family '" + family + "'");
}

void save_instance(const std::string& path, const ProblemInstance& inst) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_instance(out, inst);
  if (!out) throw Error("write to '" + path + "' failed");
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open instance file '" + path + "'");
  return read_instance(in);
}

}  // namespace pgex
