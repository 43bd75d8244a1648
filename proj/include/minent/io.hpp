#pragma once

#include <iosfwd>
#include <string>

#include "minent/coupling.hpp"

namespace minent {

// Row-major headerless CSV, full round-trip precision (17 significant
// digits).
void write_coupling_csv(const Coupling& P, std::ostream& out);
void write_coupling_csv(const Coupling& P, const std::string& path);

Coupling read_coupling_csv(std::istream& in);
Coupling read_coupling_csv(const std::string& path);

}  // namespace minent
