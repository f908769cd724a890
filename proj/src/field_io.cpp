#include "fplap/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace fplap {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_checkpoint(std::ostream& os, const Field& f) {
  const Params& p = f.params();
  os << "# fplap-field v1\n";
  os << "s=" << fmt17(p.s) << "\n";
  os << "p=" << fmt17(p.p) << "\n";
  os << "N=" << p.N << "\n";
  os << "R=" << fmt17(f.grid().R) << "\n";
  os << "n=" << f.grid().n << "\n";
  os << "tail_C=" << fmt17(f.tail().C) << "\n";
  os << "tail_q=" << fmt17(f.tail().q) << "\n";
  os << "time=" << fmt17(f.time()) << "\n";
  os << "time_kind=" << to_string(f.kind()) << "\n";
  for (int i = 0; i < f.size(); ++i)
    os << fmt17(f.grid().x(i)) << "," << fmt17(f[i]) << "\n";
}

void write_checkpoint(const std::string& path, const Field& f) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot write " + path);
  write_checkpoint(os, f);
}

namespace {

double parse_double(const std::string& s, const std::string& what) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ValidationError("checkpoint: bad number for " + what + ": '" + s + "'");
  }
  if (pos != s.size()) throw ValidationError("checkpoint: trailing junk in " + what);
  return v;
}

std::string header_value(std::istream& is, const std::string& key) {
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("checkpoint: missing " + key);
  const std::string pre = key + "=";
  if (line.rfind(pre, 0) != 0)
    throw ValidationError("checkpoint: expected '" + pre + "...', got '" + line + "'");
  return line.substr(pre.size());
}

}  // namespace

Field read_checkpoint(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "# fplap-field v1")
    throw ValidationError("checkpoint: bad magic line");
  const double s = parse_double(header_value(is, "s"), "s");
  const double p = parse_double(header_value(is, "p"), "p");
  const double N = parse_double(header_value(is, "N"), "N");
  const double R = parse_double(header_value(is, "R"), "R");
  const double n = parse_double(header_value(is, "n"), "n");
  TailModel tail;
  tail.C = parse_double(header_value(is, "tail_C"), "tail_C");
  tail.q = parse_double(header_value(is, "tail_q"), "tail_q");
  const double t = parse_double(header_value(is, "time"), "time");
  const std::string kind_s = header_value(is, "time_kind");
  TimeKind kind;
  if (kind_s == "physical") kind = TimeKind::physical;
  else if (kind_s == "rescaled") kind = TimeKind::rescaled;
  else throw ValidationError("checkpoint: unknown time_kind '" + kind_s + "'");
  if (n != std::floor(n) || N != std::floor(N)) throw ValidationError("checkpoint: n, N must be integers");
  const Grid grid(R, int(n));
  Eigen::VectorXd v(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    if (!std::getline(is, line))
      throw ValidationError("checkpoint: expected " + std::to_string(grid.n) + " rows, got " +
                            std::to_string(i));
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError("checkpoint: row without comma");
    const double x = parse_double(line.substr(0, comma), "x");
    if (std::abs(x - grid.x(i)) > 1e-9 * grid.R)
      throw ValidationError("checkpoint: node " + std::to_string(i) + " off the grid");
    v[i] = parse_double(line.substr(comma + 1), "value");
  }
  while (std::getline(is, line))
    if (!line.empty()) throw ValidationError("checkpoint: extra rows after n values");
  const bool nonneg = v.minCoeff() >= 0.0 && tail.C >= 0.0;
  return Field(Params(s, p, int(N)), grid, v, tail, t, kind, nonneg);
}

Field read_checkpoint(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open " + path);
  return read_checkpoint(is);
}

}  // namespace fplap
