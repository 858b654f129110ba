#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "plcurv/complex.hpp"

namespace plcurv {

namespace {

// Tokenizer that strips '#' comments; tokens are whitespace-separated.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  std::string next() {
    std::string tok;
    while (tok.empty()) {
      int c = in_.get();
      if (c == EOF) throw std::runtime_error("PLC: unexpected end of input");
      if (c == '#') {
        while (c != EOF && c != '\n') c = in_.get();
        continue;
      }
      if (std::isspace(c)) continue;
      tok.push_back(static_cast<char>(c));
      while (true) {
        c = in_.get();
        if (c == EOF || std::isspace(c) || c == '#') {
          if (c == '#') in_.unget();
          break;
        }
        tok.push_back(static_cast<char>(c));
      }
    }
    return tok;
  }

  long next_long() {
    std::string t = next();
    size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(t, &pos);
    } catch (const std::exception&) {
      throw std::runtime_error("PLC: expected integer, got '" + t + "'");
    }
    if (pos != t.size()) throw std::runtime_error("PLC: expected integer, got '" + t + "'");
    return v;
  }

  double next_double() {
    std::string t = next();
    size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(t, &pos);
    } catch (const std::exception&) {
      throw std::runtime_error("PLC: expected number, got '" + t + "'");
    }
    if (pos != t.size()) throw std::runtime_error("PLC: expected number, got '" + t + "'");
    return v;
  }

 private:
  std::istream& in_;
};

}  // namespace

EmbeddedComplex read_plc(std::istream& in) {
  TokenReader tok(in);
  if (tok.next() != "PLC") throw std::runtime_error("PLC: missing magic");
  long version = tok.next_long();
  if (version != 1) throw std::runtime_error("PLC: unsupported version");
  long n = tok.next_long();
  if (n < 0 || n > 16) throw std::runtime_error("PLC: bad ambient dimension");

  if (tok.next() != "VERTICES") throw std::runtime_error("PLC: expected VERTICES");
  long m = tok.next_long();
  if (m < 0) throw std::runtime_error("PLC: negative vertex count");
  std::vector<Vector> vertices;
  vertices.reserve(m);
  for (long i = 0; i < m; ++i) {
    Vector v(n);
    for (long j = 0; j < n; ++j) v[j] = tok.next_double();
    vertices.push_back(std::move(v));
  }

  if (tok.next() != "SIMPLICES") throw std::runtime_error("PLC: expected SIMPLICES");
  long s = tok.next_long();
  if (s < 0) throw std::runtime_error("PLC: negative simplex count");
  std::vector<std::vector<int>> maximal;
  maximal.reserve(s);
  for (long i = 0; i < s; ++i) {
    long k = tok.next_long();
    if (k < 0 || k > n) throw std::runtime_error("PLC: bad simplex dimension");
    std::vector<int> simplex(k + 1);
    for (long j = 0; j <= k; ++j) {
      long idx = tok.next_long();
      if (idx < 0 || idx >= m) throw std::runtime_error("PLC: vertex index out of range");
      simplex[j] = static_cast<int>(idx);
    }
    maximal.push_back(std::move(simplex));
  }
  return close_under_faces(static_cast<int>(n), std::move(vertices), maximal);
}

void write_plc(std::ostream& out, const EmbeddedComplex& x) {
  out << "PLC 1 " << x.ambient_dim() << "\n";
  out << "VERTICES " << x.vertex_count() << "\n";
  out << std::setprecision(17);
  for (int i = 0; i < x.vertex_count(); ++i) {
    const Vector& v = x.vertex(i);
    for (int j = 0; j < x.ambient_dim(); ++j) {
      if (j) out << ' ';
      out << v[j];
    }
    out << "\n";
  }
  auto maximal = x.maximal_simplices();  // already sorted lexicographically
  out << "SIMPLICES " << maximal.size() << "\n";
  for (const auto& s : maximal) {
    out << (s.size() - 1);
    for (int i : s) out << ' ' << i;
    out << "\n";
  }
}

EmbeddedComplex read_plc_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_plc(in);
}

void write_plc_file(const std::string& path, const EmbeddedComplex& x) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_plc(out, x);
}

}  // namespace plcurv
