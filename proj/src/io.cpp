#include "minent/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace minent {

void write_coupling_csv(const Coupling& P, std::ostream& out) {
  const std::size_t n = P.size();
  char buf[40];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", P(i, j));
      out << buf << (j + 1 < n ? "," : "\n");
    }
  }
}

void write_coupling_csv(const Coupling& P, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_coupling_csv(P, f);
}

Coupling read_coupling_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty coupling CSV");
  const std::size_t n = rows.size();
  std::vector<double> m;
  m.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw std::runtime_error("coupling CSV is not square");
    m.insert(m.end(), row.begin(), row.end());
  }
  return Coupling(n, std::move(m));
}

Coupling read_coupling_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_coupling_csv(f);
}

}  // namespace minent
